//! Prime generation and the residue-class counting functions
//! `theta(x;3,1)` and `f(x)`.
//!
//! `theta(x;3,1)` is the Chebyshev-type sum of `ln p` over primes `p <= x`
//! with `p ≡ 1 (mod 3)`; `f(x)` counts primes `p ≡ 1 (mod 3)` in the open
//! interval `(x, 2x)`. Both come with empirical checks of the bounds
//! `0.49x <= theta(x;3,1) <= 0.51x` and `f(x) >= 0.47 x / ln(2x)`, which are
//! only claimed for `x >= 17377`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Smallest `x` for which the theta and `f` bounds are claimed to hold.
pub const BOUND_THRESHOLD: u64 = 17377;

/// Primes up to a fixed limit, optionally with a smallest-prime-factor table.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    spf: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimesError {
    /// The table does not cover the requested range.
    TableTooSmall { needed: u64, limit: u64 },
    /// `x` is below the validity threshold of the bound being checked.
    BelowThreshold { x: u64, threshold: u64 },
}

impl fmt::Display for PrimesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimesError::TableTooSmall { needed, limit } => {
                write!(f, "prime table covers {limit} but {needed} is required")
            }
            PrimesError::BelowThreshold { x, threshold } => {
                write!(f, "x = {x} is below the validity threshold {threshold}")
            }
        }
    }
}

impl core::error::Error for PrimesError {}

impl PrimeTable {
    /// Sieve of Eratosthenes up to `limit` (inclusive). Prime list only.
    pub fn sieve(limit: u64) -> Self {
        assert!(limit >= 2, "prime table limit must be at least 2");
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut i = 2usize;
        while i * i <= n {
            if !composite[i] {
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        let primes = (2..=n).filter(|&m| !composite[m]).map(|m| m as u64).collect();
        PrimeTable { limit, primes, spf: None }
    }

    /// Linear sieve up to `limit`, additionally recording the smallest prime
    /// factor of every integer in `2..=limit`.
    pub fn sieve_with_spf(limit: u64) -> Self {
        assert!(limit >= 2, "prime table limit must be at least 2");
        assert!(limit <= u32::MAX as u64, "spf table limited to u32 range");
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u64> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            for &p in &primes {
                let p = p as usize;
                if p > spf[i] as usize || i * p > n {
                    break;
                }
                spf[i * p] = p as u32;
            }
        }
        PrimeTable { limit, primes, spf: Some(spf) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Smallest prime factor of `n`, if the table records one. `None` for
    /// `n < 2` or `n > limit`, or when the table was built without spf.
    pub fn spf_of(&self, n: u64) -> Option<u64> {
        let spf = self.spf.as_ref()?;
        if n < 2 || n > self.limit {
            return None;
        }
        Some(spf[n as usize] as u64)
    }

    pub fn has_spf(&self) -> bool {
        self.spf.is_some()
    }

    /// Primality test for `n <= limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} beyond table limit {}", self.limit);
        if let Some(spf) = &self.spf {
            n >= 2 && spf[n as usize] as u64 == n
        } else {
            self.primes.binary_search(&n).is_ok()
        }
    }

    /// Primes `p` with `lo < p <= hi`, as a slice of the table.
    pub fn primes_in(&self, lo_exclusive: u64, hi_inclusive: u64) -> &[u64] {
        let lo = self.primes.partition_point(|&p| p <= lo_exclusive);
        let hi = self.primes.partition_point(|&p| p <= hi_inclusive);
        &self.primes[lo..hi]
    }
}

/// Deterministic trial-division primality test. Intended for point queries
/// (override validation, witness checks), not bulk work.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// `theta(x;3,1)` together with the number of log-terms summed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValue {
    pub x: u64,
    pub theta: f64,
    /// Count of primes `p <= x` with `p ≡ 1 (mod 3)`.
    pub terms: u64,
}

/// Sum of `ln p` over primes `p <= x` with `p ≡ 1 (mod 3)`, accumulated with
/// Neumaier compensation (relative error well below 1e-6 at all usable x).
pub fn theta_3_1(x: u64, table: &PrimeTable) -> Result<ThetaValue, PrimesError> {
    if table.limit < x {
        return Err(PrimesError::TableTooSmall { needed: x, limit: table.limit });
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut terms = 0u64;
    for &p in table.primes_in(0, x) {
        if p % 3 != 1 {
            continue;
        }
        terms += 1;
        let term = libm::log(p as f64);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    Ok(ThetaValue { x, theta: sum + comp, terms })
}

/// Number of primes `p ≡ 1 (mod 3)` in the open interval `(x, 2x)`.
pub fn count_f(x: u64, table: &PrimeTable) -> Result<u64, PrimesError> {
    let needed = 2 * x;
    if table.limit < needed {
        return Err(PrimesError::TableTooSmall { needed, limit: table.limit });
    }
    // primes_in is (lo, hi]; drop 2x itself if it happens to be prime.
    let count = table
        .primes_in(x, 2 * x)
        .iter()
        .filter(|&&p| p < 2 * x && p % 3 == 1)
        .count();
    Ok(count as u64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McCurleyReport {
    pub x: u64,
    pub theta: f64,
    pub lower: f64,
    pub upper: f64,
    /// `theta / x`.
    pub ratio: f64,
    pub pass: bool,
}

/// Checks `0.49x <= theta(x;3,1) <= 0.51x`. Only valid for `x >= 17377`.
pub fn check_mccurley(x: u64, table: &PrimeTable) -> Result<McCurleyReport, PrimesError> {
    if x < BOUND_THRESHOLD {
        return Err(PrimesError::BelowThreshold { x, threshold: BOUND_THRESHOLD });
    }
    let theta = theta_3_1(x, table)?.theta;
    let lower = 0.49 * x as f64;
    let upper = 0.51 * x as f64;
    Ok(McCurleyReport {
        x,
        theta,
        lower,
        upper,
        ratio: theta / x as f64,
        pass: lower <= theta && theta <= upper,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FBoundReport {
    pub x: u64,
    pub count: u64,
    pub bound: f64,
    pub pass: bool,
}

/// Checks `f(x) >= 0.47 x / ln(2x)`. Only valid for `x >= 17377`; requires a
/// table covering `2x`.
pub fn check_f_bound(x: u64, table: &PrimeTable) -> Result<FBoundReport, PrimesError> {
    if x < BOUND_THRESHOLD {
        return Err(PrimesError::BelowThreshold { x, threshold: BOUND_THRESHOLD });
    }
    let count = count_f(x, table)?;
    let bound = 0.47 * x as f64 / libm::log(2.0 * x as f64);
    Ok(FBoundReport { x, count, bound, pass: count as f64 >= bound })
}
