//! Two-valued colorings of the positive integers.
//!
//! A *multiplicative coloring* is a completely multiplicative function with
//! values in {+1, -1}; it is determined by its values on primes. Prime signs
//! are stored as a finite override map on top of a default rule, so every
//! coloring used in an experiment is serializable and replayable.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Mul, Neg};

use crate::primes::{self, PrimeTable};

/// One of the two colors, as the number +1 or -1.
#[repr(i8)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus = 1,
    Minus = -1,
}

impl Sign {
    pub const fn value(self) -> i64 {
        self as i8 as i64
    }

    pub const fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `self` raised to the `e`-th power.
    pub const fn pow(self, e: u32) -> Sign {
        if e % 2 == 0 {
            Sign::Plus
        } else {
            self
        }
    }

    pub const fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Sign given to primes that carry no explicit override.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefaultRule {
    /// Every prime gets -1 (the Liouville function when unoverridden).
    AllMinus,
    /// +1 when `p ≡ 1 (mod 3)` or `p = 3`, -1 when `p ≡ 2 (mod 3)`
    /// (the Borwein–Choi–Coons coloring when unoverridden).
    ResidueMod3,
    /// Every prime gets +1.
    ConstantPlus,
}

impl DefaultRule {
    pub fn sign_of_prime(self, p: u64) -> Sign {
        match self {
            DefaultRule::AllMinus => Sign::Minus,
            DefaultRule::ConstantPlus => Sign::Plus,
            DefaultRule::ResidueMod3 => {
                if p == 3 || p % 3 == 1 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignsError {
    /// An override key is not prime.
    NotPrime(u64),
    /// The prime table passed to a segmented sieve does not cover sqrt(hi).
    IncompletePrimeTable { needed: u64, limit: u64 },
    /// Empty or inverted segment bounds.
    BadSegment { lo: u64, hi: u64 },
}

impl fmt::Display for SignsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignsError::NotPrime(n) => write!(f, "{n} is not prime"),
            SignsError::IncompletePrimeTable { needed, limit } => {
                write!(f, "prime table covers {limit} but primes up to {needed} are required")
            }
            SignsError::BadSegment { lo, hi } => write!(f, "bad segment [{lo}, {hi}]"),
        }
    }
}

impl core::error::Error for SignsError {}

/// A completely multiplicative ±1 coloring, given by its prime signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeAssignment {
    overrides: BTreeMap<u64, Sign>,
    default_rule: DefaultRule,
}

impl PrimeAssignment {
    pub fn new(default_rule: DefaultRule) -> Self {
        PrimeAssignment { overrides: BTreeMap::new(), default_rule }
    }

    /// The Liouville function: every prime sign is -1.
    pub fn liouville() -> Self {
        Self::new(DefaultRule::AllMinus)
    }

    /// The Borwein–Choi–Coons coloring `b`: `b(3) = +1`,
    /// `b(p) = +1` iff `p ≡ 1 (mod 3)` otherwise.
    pub fn bcc() -> Self {
        Self::new(DefaultRule::ResidueMod3)
    }

    /// Adds (or replaces) the sign of one prime. Rejects composite keys.
    pub fn set_override(&mut self, p: u64, sign: Sign) -> Result<(), SignsError> {
        if !primes::is_prime(p) {
            return Err(SignsError::NotPrime(p));
        }
        self.overrides.insert(p, sign);
        Ok(())
    }

    pub fn with_override(mut self, p: u64, sign: Sign) -> Result<Self, SignsError> {
        self.set_override(p, sign)?;
        Ok(self)
    }

    pub fn default_rule(&self) -> DefaultRule {
        self.default_rule
    }

    pub fn overrides(&self) -> impl Iterator<Item = (u64, Sign)> + '_ {
        self.overrides.iter().map(|(&p, &s)| (p, s))
    }

    /// Sign of the prime `p` under this assignment. `p` is assumed prime.
    pub fn sign_of_prime(&self, p: u64) -> Sign {
        if self.overrides.is_empty() {
            return self.default_rule.sign_of_prime(p);
        }
        match self.overrides.get(&p) {
            Some(&s) => s,
            None => self.default_rule.sign_of_prime(p),
        }
    }

    /// Evaluates the coloring at `n >= 1` by trial-division factorization.
    pub fn eval(&self, n: u64) -> Sign {
        assert!(n >= 1, "colorings are defined on positive integers");
        let mut m = n;
        let mut sign = Sign::Plus; // empty product: f(1) = +1
        let divide_out = |m: &mut u64, p: u64, sign: &mut Sign| {
            let mut e = 0u32;
            while *m % p == 0 {
                *m /= p;
                e += 1;
            }
            if e > 0 {
                *sign = *sign * self.sign_of_prime(p).pow(e);
            }
        };
        divide_out(&mut m, 2, &mut sign);
        divide_out(&mut m, 3, &mut sign);
        let mut d = 5u64;
        while d * d <= m {
            divide_out(&mut m, d, &mut sign);
            divide_out(&mut m, d + 2, &mut sign);
            d += 6;
        }
        if m > 1 {
            sign = sign * self.sign_of_prime(m);
        }
        sign
    }
}

/// A dense table of signs for `start ..= start + len - 1`.
///
/// `prefix_before` is the sum of all signs below `start` when the producer
/// knows it (always 0 when `start = 1`); segments cut out of a longer stream
/// carry the stream's running sum so that absolute prefix sums remain
/// available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSequence {
    start: u64,
    signs: Vec<Sign>,
    prefix_before: i64,
}

impl SignSequence {
    pub fn new(start: u64, signs: Vec<Sign>) -> Self {
        assert!(start >= 1);
        SignSequence { start, signs, prefix_before: 0 }
    }

    pub fn with_prefix_context(mut self, prefix_before: i64) -> Self {
        self.prefix_before = prefix_before;
        self
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.signs.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Last covered integer, or `start - 1` when empty.
    pub fn end(&self) -> u64 {
        self.start + self.len() - 1
    }

    pub fn prefix_before(&self) -> i64 {
        self.prefix_before
    }

    pub fn sign_at(&self, n: u64) -> Option<Sign> {
        if n < self.start {
            return None;
        }
        self.signs.get((n - self.start) as usize).copied()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `(n, sum of signs start..=n, plus prefix context)` for every covered n.
    pub fn prefix_sums(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        let mut sum = self.prefix_before;
        self.signs.iter().enumerate().map(move |(i, s)| {
            sum += s.value();
            (self.start + i as u64, sum)
        })
    }

    pub fn prefix_sum_at(&self, n: u64) -> Option<i64> {
        if n < self.start || n > self.end() {
            return None;
        }
        let upto = (n - self.start) as usize;
        let mut sum = self.prefix_before;
        for s in &self.signs[..=upto] {
            sum += s.value();
        }
        Some(sum)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// A table-backed coloring was asked outside its range.
    OutOfRange { n: u64, start: u64, end: u64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::OutOfRange { n, start, end } => {
                write!(f, "{n} outside table range {start}..={end}")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// A coloring of the positive integers.
#[derive(Clone, Debug)]
pub enum Coloring {
    Multiplicative(PrimeAssignment),
    /// +1 on odd, -1 on even integers. Deliberately not multiplicative
    /// (the sign of 4 is -1, not (+1)^2... the sign of 2 squared).
    Alternating,
    /// Answers only inside the table range.
    TableBacked(SignSequence),
}

impl Coloring {
    pub fn liouville() -> Self {
        Coloring::Multiplicative(PrimeAssignment::liouville())
    }

    pub fn bcc() -> Self {
        Coloring::Multiplicative(PrimeAssignment::bcc())
    }

    pub fn eval(&self, n: u64) -> Result<Sign, EvalError> {
        assert!(n >= 1, "colorings are defined on positive integers");
        match self {
            Coloring::Multiplicative(a) => Ok(a.eval(n)),
            Coloring::Alternating => Ok(if n % 2 == 1 { Sign::Plus } else { Sign::Minus }),
            Coloring::TableBacked(t) => t.sign_at(n).ok_or(EvalError::OutOfRange {
                n,
                start: t.start(),
                end: t.end(),
            }),
        }
    }
}

/// Number of digits equal to 1 in the ternary expansion of `k >= 1`.
pub fn count_ones_base3(k: u64) -> u32 {
    assert!(k >= 1);
    let mut k = k;
    let mut ones = 0;
    while k > 0 {
        if k % 3 == 1 {
            ones += 1;
        }
        k /= 3;
    }
    ones
}

/// Smallest `m >= 0` with `3^m >= k`, i.e. the exact value of `ceil(log3 k)`
/// for `k >= 1`, computed in integers.
pub fn ceil_log3(k: u64) -> u32 {
    assert!(k >= 1);
    let mut m = 0;
    let mut pow = 1u64;
    while pow < k {
        pow = pow.saturating_mul(3);
        m += 1;
    }
    m
}

/// Dense sign table for `1..=n` via a smallest-prime-factor sieve: O(n)
/// evaluations instead of per-element factorization.
pub fn sieve_signs(assignment: &PrimeAssignment, n: u64) -> SignSequence {
    assert!(n >= 1);
    if n == 1 {
        return SignSequence::new(1, vec![Sign::Plus]);
    }
    let table = PrimeTable::sieve_with_spf(n);
    sieve_signs_with(assignment, n, &table)
}

/// As [`sieve_signs`], reusing a prepared spf table (must cover `n`).
pub fn sieve_signs_with(assignment: &PrimeAssignment, n: u64, table: &PrimeTable) -> SignSequence {
    assert!(n >= 1);
    assert!(table.limit() >= n && table.has_spf(), "spf table covering {n} required");
    let len = n as usize;
    let mut signs = vec![Sign::Plus; len];
    for m in 2..=len {
        let p = table.spf_of(m as u64).unwrap();
        let rest = signs[m / p as usize - 1];
        signs[m - 1] = rest * assignment.sign_of_prime(p);
    }
    SignSequence::new(1, signs)
}

/// Signs for `lo..=hi` without materializing anything below `lo`.
///
/// Works over the primes up to `sqrt(hi)`: each prime power marks its
/// multiples, multiplying out the smooth part; whatever cofactor remains is
/// a single prime above `sqrt(hi)` and is looked up directly. Matches
/// [`sieve_signs`] slices exactly; memory proportional to the segment.
pub fn sieve_segment(
    assignment: &PrimeAssignment,
    lo: u64,
    hi: u64,
    table: &PrimeTable,
) -> Result<SignSequence, SignsError> {
    if lo < 1 || lo > hi {
        return Err(SignsError::BadSegment { lo, hi });
    }
    let root = hi.isqrt();
    if table.limit() < root {
        return Err(SignsError::IncompletePrimeTable { needed: root, limit: table.limit() });
    }
    let len = (hi - lo + 1) as usize;
    let mut smooth = vec![1u64; len];
    let mut signs = vec![Sign::Plus; len];
    sieve_segment_into(assignment, lo, hi, table, &mut smooth, &mut signs);
    Ok(SignSequence::new(lo, signs))
}

/// Segment kernel with caller-owned buffers, for streaming scans that reuse
/// allocations. Buffers are resized to the segment length.
pub(crate) fn sieve_segment_into(
    assignment: &PrimeAssignment,
    lo: u64,
    hi: u64,
    table: &PrimeTable,
    smooth: &mut Vec<u64>,
    signs: &mut Vec<Sign>,
) {
    let len = (hi - lo + 1) as usize;
    smooth.clear();
    smooth.resize(len, 1u64);
    signs.clear();
    signs.resize(len, Sign::Plus);
    let root = hi.isqrt();
    for &p in table.primes_in(0, root) {
        let sp = assignment.sign_of_prime(p);
        // every power level contributes one factor of p and one sign factor,
        // so an element with multiplicity e collects sp^e and p^e in total
        let mut q = p;
        loop {
            let first = lo.div_ceil(q) * q;
            let mut m = first;
            while m <= hi {
                let idx = (m - lo) as usize;
                smooth[idx] *= p;
                signs[idx] = signs[idx] * sp;
                m += q;
            }
            if q > hi / p {
                break;
            }
            q *= p;
        }
    }
    for idx in 0..len {
        let n = lo + idx as u64;
        let cofactor = n / smooth[idx];
        if cofactor > 1 {
            // single prime above sqrt(hi)
            signs[idx] = signs[idx] * assignment.sign_of_prime(cofactor);
        }
    }
}
