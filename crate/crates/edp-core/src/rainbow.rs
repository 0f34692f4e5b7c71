//! Rainbow colorings, the graph `G_k`, and Graham-ratio witnesses.
//!
//! In `G_k` two distinct positive integers `r, s` are adjacent iff both
//! `r/gcd(r,s) <= k` and `s/gcd(r,s) <= k`. Every HAP of length at most `k`
//! induces a clique, so a proper `k`-coloring of `G_k` on `{1..n}` makes
//! every `A(s,k')` with `k' <= k` inside the range rainbow, and splitting
//! the color classes in half turns a rainbow coloring into a perfectly
//! balanced two-coloring.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::signs::{Coloring, Sign, SignSequence};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Adjacency in `G_k`; self-loops excluded.
pub fn gk_adjacent(r: u64, s: u64, k: u64) -> bool {
    assert!(r >= 1 && s >= 1);
    if r == s {
        return false;
    }
    let g = gcd(r, s);
    r / g <= k && s / g <= k
}

/// `G_k` restricted to `{1..n}`, as adjacency lists.
#[derive(Clone, Debug)]
pub struct GkGraph {
    k: u64,
    n: u64,
    adj: Vec<Vec<u32>>, // adj[v-1], ascending
}

impl GkGraph {
    /// Direct pairwise construction below 5000 vertices, divisor-driven
    /// enumeration above; the two agree (tested) and the crossover only
    /// trades build time.
    pub fn build(n: u64, k: u64) -> Self {
        assert!(n >= 1 && k >= 1);
        if n <= 5000 {
            Self::build_pairwise(n, k)
        } else {
            Self::build_divisors(n, k)
        }
    }

    pub(crate) fn build_pairwise(n: u64, k: u64) -> Self {
        let mut adj = vec![Vec::new(); n as usize];
        for r in 1..=n {
            for s in (r + 1)..=n {
                if gk_adjacent(r, s, k) {
                    adj[r as usize - 1].push(s as u32);
                    adj[s as usize - 1].push(r as u32);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        GkGraph { k, n, adj }
    }

    /// Neighbors of `v` are exactly `(v/a) * b` for divisors `a <= k` of `v`
    /// and `b <= k` coprime to `a`: then `gcd(v, w) = v/a` and both ratio
    /// conditions hold, and every adjacent pair arises this way with
    /// `a = v/gcd`.
    pub(crate) fn build_divisors(n: u64, k: u64) -> Self {
        let mut adj = vec![Vec::new(); n as usize];
        for v in 1..=n {
            let list = &mut adj[v as usize - 1];
            for a in 1..=k.min(v) {
                if v % a != 0 {
                    continue;
                }
                let g = v / a;
                for b in 1..=k {
                    if gcd(a, b) != 1 {
                        continue;
                    }
                    let w = g * b;
                    if w != v && w <= n {
                        list.push(w as u32);
                    }
                }
            }
            list.sort_unstable();
            list.dedup();
        }
        GkGraph { k, n, adj }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn neighbors(&self, v: u64) -> &[u32] {
        &self.adj[v as usize - 1]
    }
}

/// A total coloring of `{1..n}` with colors `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KColoring {
    k: u64,
    colors: Vec<u32>, // colors[v-1]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RainbowError {
    ColorOutOfRange { vertex: u64, color: u32, k: u64 },
    /// Graham witness input error.
    TooFewValues(usize),
    DuplicateValue(u64),
}

impl fmt::Display for RainbowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RainbowError::ColorOutOfRange { vertex, color, k } => {
                write!(f, "vertex {vertex} has color {color} outside 0..{k}")
            }
            RainbowError::TooFewValues(n) => write!(f, "need at least 2 values, got {n}"),
            RainbowError::DuplicateValue(v) => write!(f, "duplicate value {v}"),
        }
    }
}

impl core::error::Error for RainbowError {}

impl KColoring {
    pub fn new(k: u64, colors: Vec<u32>) -> Result<Self, RainbowError> {
        for (i, &c) in colors.iter().enumerate() {
            if c as u64 >= k {
                return Err(RainbowError::ColorOutOfRange {
                    vertex: i as u64 + 1,
                    color: c,
                    k,
                });
            }
        }
        Ok(KColoring { k, colors })
    }

    /// Colors `1..=n` by `f`.
    pub fn from_fn(k: u64, n: u64, f: impl Fn(u64) -> u32) -> Result<Self, RainbowError> {
        Self::new(k, (1..=n).map(f).collect())
    }

    /// The 2-coloring by parity of the 2-adic valuation; rainbow on every
    /// `A(s,2)` since the valuation of `2s` exceeds that of `s` by one.
    pub fn dyadic_valuation(n: u64) -> Self {
        Self::from_fn(2, n, |m| (m.trailing_zeros() % 2) as u32).expect("colors in 0..2")
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn len(&self) -> u64 {
        self.colors.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color_of(&self, v: u64) -> Option<u32> {
        if v == 0 {
            return None;
        }
        self.colors.get(v as usize - 1).copied()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }
}

/// Two progression elements sharing a color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RainbowViolation {
    pub step: u64,
    pub first: u64,
    pub second: u64,
    pub color: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RainbowReport {
    pub ok: bool,
    pub violation: Option<RainbowViolation>,
}

/// Checks that every `A(s,k)` with `s*k <= n` sees `k` pairwise distinct
/// colors under the coloring.
pub fn verify_rainbow(coloring: &KColoring, n: u64) -> RainbowReport {
    assert!(coloring.len() >= n, "coloring must be total on 1..={n}");
    let k = coloring.k;
    let mut seen: Vec<u64> = vec![0; k as usize]; // element that used the color
    for s in 1..=n / k {
        for slot in seen.iter_mut() {
            *slot = 0;
        }
        for j in 1..=k {
            let v = j * s;
            let c = coloring.color_of(v).unwrap();
            let prev = seen[c as usize];
            if prev != 0 {
                return RainbowReport {
                    ok: false,
                    violation: Some(RainbowViolation {
                        step: s,
                        first: prev,
                        second: v,
                        color: c,
                    }),
                };
            }
            seen[c as usize] = v;
        }
    }
    RainbowReport { ok: true, violation: None }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RainbowSearch {
    Found(KColoring),
    /// No proper k-coloring of `G_k` on `{1..n}` exists.
    Exhausted,
    BudgetExceeded,
}

/// Outcome plus the number of assignment attempts spent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowSearchReport {
    pub outcome: RainbowSearch,
    pub nodes: u64,
}

enum OrderPolicy {
    /// Least-used color first, ties by color index.
    LeastUsed,
    /// A fixed preference permutation (seeded restart mode).
    Fixed(Vec<u32>),
}

struct ColorSearch<'a> {
    graph: &'a GkGraph,
    colors: Vec<u32>,
    usage: Vec<u64>,
    nodes: u64,
    budget: u64,
    policy: OrderPolicy,
}

impl ColorSearch<'_> {
    fn assign(&mut self, v: u64) -> Result<bool, ()> {
        if v > self.graph.n() {
            return Ok(true);
        }
        let mut forbidden = 0u128;
        for &w in self.graph.neighbors(v) {
            if (w as u64) < v {
                forbidden |= 1u128 << self.colors[w as usize - 1];
            }
        }
        let order: Vec<u32> = match &self.policy {
            OrderPolicy::LeastUsed => {
                let mut order: Vec<u32> = (0..self.graph.k() as u32).collect();
                order.sort_by_key(|&c| (self.usage[c as usize], c));
                order
            }
            OrderPolicy::Fixed(perm) => perm.clone(),
        };
        for c in order {
            if forbidden & (1u128 << c) != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            self.colors[v as usize - 1] = c;
            self.usage[c as usize] += 1;
            match self.assign(v + 1) {
                Ok(true) => return Ok(true),
                Ok(false) => {
                    self.usage[c as usize] -= 1;
                    self.colors[v as usize - 1] = u32::MAX;
                }
                Err(()) => return Err(()),
            }
        }
        Ok(false)
    }
}

fn run_search(graph: &GkGraph, node_budget: u64, policy: OrderPolicy) -> RainbowSearchReport {
    let k = graph.k();
    assert!(k <= 128, "color mask limited to 128 colors");
    let mut search = ColorSearch {
        graph,
        colors: vec![u32::MAX; graph.n() as usize],
        usage: vec![0; k as usize],
        nodes: 0,
        budget: node_budget,
        policy,
    };
    let outcome = match search.assign(1) {
        Ok(true) => {
            RainbowSearch::Found(KColoring::new(k, search.colors).expect("colors in range"))
        }
        Ok(false) => RainbowSearch::Exhausted,
        Err(()) => RainbowSearch::BudgetExceeded,
    };
    RainbowSearchReport { outcome, nodes: search.nodes }
}

/// Backtracking proper k-coloring of `G_k` on `{1..n}`: vertices ascending,
/// least-used color first (ties by color index). Deterministic; any found
/// coloring is rainbow on every contained HAP of length up to `k`.
pub fn search_rainbow(k: u64, n: u64, node_budget: u64) -> RainbowSearchReport {
    assert!(k >= 1 && n >= k);
    let graph = GkGraph::build(n, k);
    run_search(&graph, node_budget, OrderPolicy::LeastUsed)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Restart mode: each restart runs the same backtracking with a seeded
/// random color-preference permutation. Deterministic for a fixed seed. An
/// exhausted restart is a proof and ends the search; otherwise the first
/// coloring found wins.
pub fn search_rainbow_seeded(
    k: u64,
    n: u64,
    budget_per_restart: u64,
    restarts: u64,
    seed: u64,
) -> RainbowSearchReport {
    assert!(k >= 1 && n >= k && restarts >= 1);
    let graph = GkGraph::build(n, k);
    let mut state = seed;
    let mut total_nodes = 0u64;
    for _ in 0..restarts {
        let mut perm: Vec<u32> = (0..k as u32).collect();
        for i in (1..perm.len()).rev() {
            let j = (splitmix64(&mut state) % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        let report = run_search(&graph, budget_per_restart, OrderPolicy::Fixed(perm));
        total_nodes += report.nodes;
        match report.outcome {
            RainbowSearch::BudgetExceeded => continue,
            outcome => return RainbowSearchReport { outcome, nodes: total_nodes },
        }
    }
    RainbowSearchReport { outcome: RainbowSearch::BudgetExceeded, nodes: total_nodes }
}

/// Splits the `k` colors into two halves: colors below `ceil(k/2)` map to
/// +1, the rest to -1. A rainbow coloring becomes perfectly balanced on
/// every `A(s,k)` because each HAP sees every color exactly once.
pub fn split_to_balanced(coloring: &KColoring) -> Coloring {
    let threshold = coloring.k.div_ceil(2) as u32;
    let signs: Vec<Sign> = coloring
        .colors
        .iter()
        .map(|&c| if c < threshold { Sign::Plus } else { Sign::Minus })
        .collect();
    Coloring::TableBacked(SignSequence::new(1, signs))
}

/// A pair maximizing `a / gcd(a, b)` over ordered pairs of distinct values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrahamWitness {
    /// `(numerator, partner)`: the maximizing ordered pair.
    pub pair: (u64, u64),
    /// `pair.0 / gcd(pair.0, pair.1)`; always an integer.
    pub ratio: u64,
    /// Whether `ratio >= n` (Graham's inequality; a false flag indicates an
    /// implementation bug, not a counterexample).
    pub meets_bound: bool,
}

pub fn graham_witness(values: &[u64]) -> Result<GrahamWitness, RainbowError> {
    if values.len() < 2 {
        return Err(RainbowError::TooFewValues(values.len()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(RainbowError::DuplicateValue(w[0]));
        }
    }
    assert!(sorted[0] >= 1, "values must be positive");
    let mut best: Option<GrahamWitness> = None;
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            let (a, b) = (sorted[i], sorted[j]);
            // b > a, so b/g is the larger of the two ordered ratios
            let ratio = b / gcd(a, b);
            if best.map_or(true, |w| ratio > w.ratio) {
                best = Some(GrahamWitness { pair: (b, a), ratio, meets_bound: false });
            }
        }
    }
    let mut witness = best.expect("at least one pair");
    witness.meets_bound = witness.ratio >= values.len() as u64;
    Ok(witness)
}
