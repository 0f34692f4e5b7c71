//! HAP sums, balance predicates, and discrepancy scans.
//!
//! The scan enumerates progressions by step `s` and sweeps the length with a
//! running sum, so a full scan up to `n` costs O(n log n) sign lookups
//! rather than O(n^2).

use alloc::vec;
use alloc::vec::Vec;

use crate::signs::{sieve_signs, Coloring, EvalError, Sign, SignSequence};

/// The homogeneous arithmetic progression `{s, 2s, ..., ks}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hap {
    pub step: u64,
    pub len: u64,
}

impl Hap {
    pub fn new(step: u64, len: u64) -> Self {
        assert!(step >= 1 && len >= 1);
        Hap { step, len }
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        let s = self.step;
        (1..=self.len).map(move |j| j * s)
    }
}

/// Which steps a scan considers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepFilter {
    All,
    Odd,
    Explicit(Vec<u64>),
}

impl StepFilter {
    /// Admitted steps up to `n`, ascending.
    pub fn steps_up_to(&self, n: u64) -> Vec<u64> {
        match self {
            StepFilter::All => (1..=n).collect(),
            StepFilter::Odd => (1..=n).step_by(2).collect(),
            StepFilter::Explicit(list) => {
                let mut v: Vec<u64> = list.iter().copied().filter(|&s| s >= 1 && s <= n).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }
}

/// Which lengths a scan considers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthFilter {
    All,
    Singleton(u64),
    /// Lengths whose ternary digits avoid 1.
    Base3NoOnes,
    Explicit(Vec<u64>),
}

impl LengthFilter {
    /// Membership mask over `1..=n` (index k-1 for length k).
    fn mask_up_to(&self, n: u64) -> Vec<bool> {
        let n = n as usize;
        match self {
            LengthFilter::All => vec![true; n],
            LengthFilter::Singleton(k) => {
                let mut m = vec![false; n];
                if *k >= 1 && *k as usize <= n {
                    m[*k as usize - 1] = true;
                }
                m
            }
            LengthFilter::Base3NoOnes => {
                // free[k] = free[k/3] and k % 3 != 1
                let mut m = vec![false; n + 1];
                if n >= 1 {
                    m[0] = true; // index for k = 0 used only by the recurrence
                }
                for k in 1..=n {
                    m[k] = k % 3 != 1 && m[k / 3];
                }
                m.remove(0);
                m
            }
            LengthFilter::Explicit(list) => {
                let mut m = vec![false; n];
                for &k in list {
                    if k >= 1 && k as usize <= n {
                        m[k as usize - 1] = true;
                    }
                }
                m
            }
        }
    }
}

/// Restrictions on the HAP family a scan measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutePairSpec {
    pub steps: StepFilter,
    pub lengths: LengthFilter,
}

impl CutePairSpec {
    pub fn all() -> Self {
        CutePairSpec { steps: StepFilter::All, lengths: LengthFilter::All }
    }
}

/// Result of a discrepancy scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub max_abs_sum: u64,
    /// A progression attaining the maximum: smallest step, then smallest
    /// length, among maximizers. `None` when no progression was admitted.
    pub witness: Option<Hap>,
    /// Number of (step, length) pairs examined.
    pub scanned: u64,
}

impl BalanceReport {
    pub fn empty() -> Self {
        BalanceReport { max_abs_sum: 0, witness: None, scanned: 0 }
    }
}

/// Sum of the coloring over the progression.
pub fn hap_sum(c: &Coloring, hap: Hap) -> Result<i64, EvalError> {
    let mut sum = 0i64;
    for m in hap.elements() {
        sum += c.eval(m)?.value();
    }
    Ok(sum)
}

/// Whether the color counts on the progression differ by at most `h`.
pub fn is_h_balanced(c: &Coloring, hap: Hap, h: u64) -> Result<bool, EvalError> {
    Ok(hap_sum(c, hap)?.unsigned_abs() <= h)
}

/// `c(s) * sum_{j<=k} c(js)`; the h-majority condition is `result <= h`,
/// the strict majority condition is `result <= 0`.
pub fn majority_value(c: &Coloring, hap: Hap) -> Result<i64, EvalError> {
    Ok(c.eval(hap.step)?.value() * hap_sum(c, hap)?)
}

/// All `k <= n` whose ternary digits are in {0, 2}, ascending.
pub fn base3_no_ones_up_to(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    LengthFilter::Base3NoOnes
        .mask_up_to(n)
        .iter()
        .enumerate()
        .filter_map(|(i, &ok)| ok.then_some(i as u64 + 1))
        .collect()
}

/// Materializes a dense table of the coloring's signs over `1..=n`.
/// Table-backed colorings must already cover the range.
pub fn sign_table(c: &Coloring, n: u64) -> SignSequence {
    assert!(n >= 1);
    match c {
        Coloring::Multiplicative(a) => sieve_signs(a, n),
        Coloring::Alternating => {
            let signs = (1..=n).map(|m| if m % 2 == 1 { Sign::Plus } else { Sign::Minus });
            SignSequence::new(1, signs.collect())
        }
        Coloring::TableBacked(t) => {
            assert!(
                t.start() == 1 && t.len() >= n,
                "table-backed coloring must cover 1..={n}"
            );
            SignSequence::new(1, t.signs()[..n as usize].to_vec())
        }
    }
}

/// Maximum of `|hap_sum|` over all admitted `(s, k)` with `s * k <= n`.
pub fn scan_max_discrepancy(c: &Coloring, n: u64, spec: &CutePairSpec) -> BalanceReport {
    assert!(n >= 1);
    let signs = sign_table(c, n);
    let steps = spec.steps.steps_up_to(n);
    scan_steps(&signs, &steps, &spec.lengths, n)
}

/// Scan granule over an explicit ascending list of steps; the building block
/// for parallel drivers. `signs` must cover `1..=n` starting at 1.
pub fn scan_steps(
    signs: &SignSequence,
    steps: &[u64],
    lengths: &LengthFilter,
    n: u64,
) -> BalanceReport {
    assert!(signs.start() == 1 && signs.len() >= n);
    let table = signs.signs();
    let max_len = steps.iter().map(|&s| n / s).max().unwrap_or(0);
    let admit = lengths.mask_up_to(max_len.max(1));
    let mut best = BalanceReport::empty();
    for &s in steps {
        debug_assert!(s >= 1 && s <= n);
        let mut running = 0i64;
        let kmax = n / s;
        for k in 1..=kmax {
            running += table[(k * s - 1) as usize].value();
            if !admit[(k - 1) as usize] {
                continue;
            }
            best.scanned += 1;
            let val = running.unsigned_abs();
            // steps and lengths ascend, so the first hit is the lex-least witness
            if val > best.max_abs_sum || best.witness.is_none() {
                best.max_abs_sum = val;
                best.witness = Some(Hap { step: s, len: k });
            }
        }
    }
    best
}

/// Combines scan granules; deterministic regardless of split boundaries.
pub fn merge_reports(a: BalanceReport, b: BalanceReport) -> BalanceReport {
    let scanned = a.scanned + b.scanned;
    let pick = |r: BalanceReport| BalanceReport { scanned, ..r };
    match (a.witness, b.witness) {
        (None, _) => pick(b),
        (_, None) => pick(a),
        (Some(wa), Some(wb)) => {
            if a.max_abs_sum > b.max_abs_sum {
                pick(a)
            } else if b.max_abs_sum > a.max_abs_sum {
                pick(b)
            } else if (wa.step, wa.len) <= (wb.step, wb.len) {
                pick(a)
            } else {
                pick(b)
            }
        }
    }
}
