//! For a fixed `k`, builds a completely multiplicative coloring whose
//! restriction to `{1..k}` is perfectly balanced, extends it to all of the
//! positive integers, and verifies the balance of every `A(s,k)`.
//!
//! The construction starts from the Borwein–Choi–Coons coloring, whose
//! prefix sum at `k` equals the number of ternary 1-digits of `k`, and
//! switches `floor(S/2)` plus-signed primes in `(k/2, k]` to minus. Each
//! such prime has exactly one multiple in `{1..k}` (itself), so every switch
//! lowers the prefix sum by exactly 2 and multiplicativity is untouched.

use alloc::vec;
use alloc::vec::Vec;

use crate::discrepancy::{scan_steps, BalanceReport, LengthFilter};
use crate::primes::PrimeTable;
use crate::signs::{
    count_ones_base3, sieve_signs_with, DefaultRule, PrimeAssignment, Sign,
};

/// A perfectly balanced multiplicative coloring of `{1..k}`, recorded as a
/// set of switches against the Borwein–Choi–Coons base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedConstruction {
    pub k: u64,
    /// Prefix sum of the base coloring at `k` (count of ternary 1-digits).
    pub initial_sum: u64,
    /// Primes whose sign was flipped, descending. On the greedy path these
    /// all lie in `(k/2, k]` and had base sign +1.
    pub switched: Vec<u64>,
    /// Prefix sum at `k` after the switches; always 0 or 1.
    pub final_prefix_sum: i64,
    /// True when the greedy supply was short and an exhaustive search over
    /// prime signs produced the coloring instead (never observed).
    pub via_fallback: bool,
}

/// Why no balanced construction was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Infeasible {
    /// Supply of switchable primes was short and `k` is too large for the
    /// exhaustive fallback.
    FallbackTooLarge { k: u64, supply: u64, demand: u64 },
    /// The exhaustive fallback ran to completion without finding a balanced
    /// assignment. Never observed; would be a publishable finding.
    Exhausted { k: u64 },
}

impl core::fmt::Display for Infeasible {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Infeasible::FallbackTooLarge { k, supply, demand } => write!(
                f,
                "k = {k}: supply {supply} < demand {demand} and k exceeds the fallback range"
            ),
            Infeasible::Exhausted { k } => {
                write!(f, "k = {k}: exhaustive search found no balanced assignment")
            }
        }
    }
}

impl core::error::Error for Infeasible {}

/// Prefix sum of the base coloring at `k`: the number of ternary 1-digits.
pub fn initial_sum(k: u64) -> u64 {
    count_ones_base3(k) as u64
}

/// Supply of base-sign-+1 primes in `(k/2, k]` against the demand
/// `floor(initial_sum / 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeasibilityMargin {
    pub supply: u64,
    pub demand: u64,
}

impl FeasibilityMargin {
    pub fn margin(&self) -> i64 {
        self.supply as i64 - self.demand as i64
    }
}

pub fn feasibility_margin(k: u64, table: &PrimeTable) -> FeasibilityMargin {
    assert!(k >= 2 && table.limit() >= k);
    let supply = switch_candidates(k, table).len() as u64;
    FeasibilityMargin { supply, demand: initial_sum(k) / 2 }
}

/// Plus-signed base primes in `(k/2, k]`, those ≡ 1 (mod 3) first, each
/// group descending. (The only +1 prime not ≡ 1 (mod 3) is 3 itself.)
fn switch_candidates(k: u64, table: &PrimeTable) -> Vec<u64> {
    let range = table.primes_in(k / 2, k);
    let mut res1: Vec<u64> = range.iter().copied().filter(|&p| p % 3 == 1).collect();
    res1.reverse();
    if range.contains(&3) {
        res1.push(3);
    }
    res1
}

/// Largest `k` the exhaustive fallback will attempt (2^pi(k) assignments).
const FALLBACK_PRIME_CAP: usize = 20;

pub fn construct_balanced(k: u64) -> Result<BalancedConstruction, Infeasible> {
    let table = PrimeTable::sieve(k.max(2));
    construct_balanced_with(k, &table)
}

/// As [`construct_balanced`], reusing a prime table covering `k`.
pub fn construct_balanced_with(
    k: u64,
    table: &PrimeTable,
) -> Result<BalancedConstruction, Infeasible> {
    assert!(k >= 1);
    assert!(table.limit() >= k.max(2));
    let s = initial_sum(k);
    let demand = (s / 2) as usize;
    if demand == 0 {
        return Ok(BalancedConstruction {
            k,
            initial_sum: s,
            switched: Vec::new(),
            final_prefix_sum: s as i64,
            via_fallback: false,
        });
    }
    let candidates = switch_candidates(k, table);
    if candidates.len() >= demand {
        let switched: Vec<u64> = candidates[..demand].to_vec();
        return Ok(BalancedConstruction {
            k,
            initial_sum: s,
            switched,
            final_prefix_sum: (s - 2 * demand as u64) as i64,
            via_fallback: false,
        });
    }
    fallback_exhaustive(k, s, table)
}

/// Exhaustive search over sign assignments of all primes <= k for a prefix
/// sum in {0, 1}. Encodes each n <= k by the parity vector of its prime
/// exponents, so a candidate flip set evaluates in one popcount per element.
fn fallback_exhaustive(
    k: u64,
    s: u64,
    table: &PrimeTable,
) -> Result<BalancedConstruction, Infeasible> {
    let primes: Vec<u64> = table.primes_in(0, k).to_vec();
    if primes.len() > FALLBACK_PRIME_CAP {
        let supply = switch_candidates(k, table).len() as u64;
        return Err(Infeasible::FallbackTooLarge { k, supply, demand: s / 2 });
    }
    let base = PrimeAssignment::bcc();
    // parity vector and base sign of every n in 1..=k
    let mut parity = vec![0u32; k as usize + 1];
    let mut base_sign = vec![Sign::Plus; k as usize + 1];
    for n in 2..=k {
        let mut m = n;
        let mut par = 0u32;
        let mut sign = Sign::Plus;
        for (i, &p) in primes.iter().enumerate() {
            if p * p > m {
                break;
            }
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e % 2 == 1 {
                par ^= 1 << i;
            }
            sign = sign * base.sign_of_prime(p).pow(e);
        }
        if m > 1 {
            let i = primes.binary_search(&m).expect("cofactor is a prime <= k");
            par ^= 1 << i;
            sign = sign * base.sign_of_prime(m);
        }
        parity[n as usize] = par;
        base_sign[n as usize] = sign;
    }
    for mask in 0u32..(1u32 << primes.len()) {
        let mut sum = 0i64;
        for n in 1..=k as usize {
            let flips = (mask & parity[n]).count_ones();
            let v = base_sign[n].value();
            sum += if flips % 2 == 1 { -v } else { v };
        }
        if sum == 0 || sum == 1 {
            let mut switched: Vec<u64> = primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            switched.reverse();
            return Ok(BalancedConstruction {
                k,
                initial_sum: s,
                switched,
                final_prefix_sum: sum,
                via_fallback: true,
            });
        }
    }
    Err(Infeasible::Exhausted { k })
}

impl BalancedConstruction {
    /// Extends the balanced prefix to a multiplicative coloring of all
    /// positive integers: primes <= k keep their (possibly switched) signs,
    /// primes above k get -1, composites follow multiplicativity.
    pub fn extend(&self) -> PrimeAssignment {
        let table = PrimeTable::sieve(self.k.max(2));
        self.extend_with(&table)
    }

    /// As [`extend`](Self::extend), reusing a prime table covering `k`.
    pub fn extend_with(&self, table: &PrimeTable) -> PrimeAssignment {
        assert!(table.limit() >= self.k.max(2));
        let base = PrimeAssignment::bcc();
        let mut assignment = PrimeAssignment::new(DefaultRule::AllMinus);
        for &p in table.primes_in(0, self.k) {
            let mut sign = base.sign_of_prime(p);
            if self.switched.contains(&p) {
                sign = sign.flip();
            }
            assignment.set_override(p, sign).expect("table yields primes");
        }
        assignment
    }
}

/// Scans every `A(s,k)` with `s*k <= n` under the extended coloring built
/// for `k`. The theorem asserts the maximum is at most 1; a larger value
/// would falsify the implementation, not the theorem.
pub fn verify_theorem1(k: u64, n: u64) -> Result<BalanceReport, Infeasible> {
    assert!(n >= k);
    let table = PrimeTable::sieve_with_spf(n.max(2));
    let construction = construct_balanced_with(k, &table)?;
    Ok(verify_construction(&construction, n, &table))
}

/// Scan for a prepared construction; `table` must carry spf up to `n`.
pub fn verify_construction(
    construction: &BalancedConstruction,
    n: u64,
    table: &PrimeTable,
) -> BalanceReport {
    assert!(n >= construction.k);
    let assignment = construction.extend_with(table);
    let signs = sieve_signs_with(&assignment, n, table);
    let steps: Vec<u64> = (1..=n / construction.k).collect();
    scan_steps(&signs, &steps, &LengthFilter::Singleton(construction.k), n)
}
