//! The greedy retro-switching coloring.
//!
//! Integers are colored one at a time, keeping the coloring completely
//! multiplicative and every prefix perfectly balanced. Odd steps are free:
//! a composite gets its forced sign, a prime gets -1 (configurable). Even
//! steps are forced by multiplicativity; when the prefix sum reaches ±2 the
//! largest prime in `(j/2, j]` carrying the over-represented sign is
//! switched, which repairs the balance and (since such a prime has no other
//! multiple below j) cannot disturb multiplicativity or earlier composites.
//!
//! A prime `p` is switchable only while the step `j` satisfies `j < 2p`, so
//! after running to `n` the signs of `1..n/2` are frozen; that frozen prefix
//! is the sequence `R(n)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Bound;

use crate::primes::PrimeTable;
use crate::signs::{Sign, SignSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwitchRecord {
    /// Step at which the switch happened.
    pub step: u64,
    pub prime: u64,
    pub new_sign: Sign,
}

/// No prime in `(j/2, j]` carries the over-represented sign; the run cannot
/// continue. Never observed (the conjecture is that it never happens).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoSwitchablePrime {
    pub step: u64,
    /// Sum after the forced assignment, always ±2.
    pub excess: i64,
}

impl fmt::Display for NoSwitchablePrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no switchable prime at step {} (excess {})", self.step, self.excess)
    }
}

impl core::error::Error for NoSwitchablePrime {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    pub step: u64,
    /// Sign given to the new integer (before any repair switch).
    pub assigned: Sign,
    pub switched: Option<SwitchRecord>,
}

/// The evolving state of the greedy run.
pub struct RejmerState {
    limit: u64,
    case1_sign: Sign,
    table: PrimeTable,
    signs: Vec<Sign>, // index 0 unused
    current: u64,
    running_sum: i64,
    switch_log: Vec<SwitchRecord>,
    plus_primes: BTreeSet<u64>,
    minus_primes: BTreeSet<u64>,
}

impl RejmerState {
    /// Prepares a run of at most `limit` steps. `case1_sign` is the color
    /// given to a fresh odd prime; the classical run uses -1.
    pub fn new(limit: u64, case1_sign: Sign) -> Self {
        assert!(limit >= 2);
        let table = PrimeTable::sieve_with_spf(limit);
        let mut signs = Vec::with_capacity(limit as usize + 1);
        signs.push(Sign::Plus); // dummy index 0
        signs.push(Sign::Plus); // c(1) = +1
        RejmerState {
            limit,
            case1_sign,
            table,
            signs,
            current: 1,
            running_sum: 1,
            switch_log: Vec::new(),
            plus_primes: BTreeSet::new(),
            minus_primes: BTreeSet::new(),
        }
    }

    pub fn current_step(&self) -> u64 {
        self.current
    }

    pub fn running_sum(&self) -> i64 {
        self.running_sum
    }

    pub fn sign_at(&self, n: u64) -> Option<Sign> {
        if n == 0 || n > self.current {
            return None;
        }
        Some(self.signs[n as usize])
    }

    pub fn switch_log(&self) -> &[SwitchRecord] {
        &self.switch_log
    }

    fn set_of(&mut self, sign: Sign) -> &mut BTreeSet<u64> {
        match sign {
            Sign::Plus => &mut self.plus_primes,
            Sign::Minus => &mut self.minus_primes,
        }
    }

    /// Colors the next integer, repairing balance if needed.
    pub fn step(&mut self) -> Result<StepOutcome, NoSwitchablePrime> {
        let j = self.current + 1;
        assert!(j <= self.limit, "run limit reached");
        let assigned = if j == 2 {
            Sign::Minus // prescribed start
        } else if j % 2 == 1 {
            match self.table.spf_of(j) {
                Some(p) if p == j => self.case1_sign,
                Some(p) => self.signs[(j / p) as usize] * self.signs[p as usize],
                None => unreachable!(),
            }
        } else {
            let p = self.table.spf_of(j).expect("even j >= 4 is composite");
            self.signs[(j / p) as usize] * self.signs[p as usize]
        };
        if self.table.is_prime(j) {
            self.set_of(assigned).insert(j);
        }
        self.signs.push(assigned);
        self.current = j;
        self.running_sum += assigned.value();

        let mut switched = None;
        if self.running_sum.abs() == 2 {
            debug_assert_eq!(j % 2, 0);
            let excess = if self.running_sum > 0 { Sign::Plus } else { Sign::Minus };
            let candidate = self
                .set_of(excess)
                .range((Bound::Excluded(j / 2), Bound::Included(j)))
                .next_back()
                .copied();
            let Some(p) = candidate else {
                return Err(NoSwitchablePrime { step: j, excess: self.running_sum });
            };
            self.set_of(excess).remove(&p);
            self.set_of(excess.flip()).insert(p);
            self.signs[p as usize] = excess.flip();
            self.running_sum -= 2 * excess.value();
            let record = SwitchRecord { step: j, prime: p, new_sign: excess.flip() };
            self.switch_log.push(record);
            switched = Some(record);
        }
        debug_assert!(self.running_sum.abs() <= 1);
        debug_assert!(j % 2 == 1 || self.running_sum == 0);
        Ok(StepOutcome { step: j, assigned, switched })
    }

    /// Signs assigned so far, as a table over `1..=current`.
    pub fn to_sign_sequence(&self) -> SignSequence {
        SignSequence::new(1, self.signs[1..].to_vec())
    }
}

/// Everything a completed (or halted) run reports.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub requested: u64,
    /// Signs for `1..=requested` (shorter if the run halted).
    pub final_signs: SignSequence,
    pub switch_log: Vec<SwitchRecord>,
    pub halted_at: Option<u64>,
    /// Largest |prefix sum| observed immediately after a completed step;
    /// by construction at most 1.
    pub post_step_max_abs: i64,
    /// Largest |prefix sum| of the *final* table over every prefix. Retro
    /// switches can disturb historical prefixes, so this may exceed 1; the
    /// run measures it instead of assuming either reading.
    pub final_prefix_max_abs: i64,
}

impl RunReport {
    /// The frozen half of the final coloring: signs for `1..=requested/2`.
    /// `None` if the run halted early.
    pub fn r_sequence(&self) -> Option<SignSequence> {
        if self.halted_at.is_some() {
            return None;
        }
        let half = self.requested / 2;
        Some(SignSequence::new(1, self.final_signs.signs()[..half as usize].to_vec()))
    }
}

pub fn run(n: u64) -> RunReport {
    run_with(n, Sign::Minus)
}

pub fn run_with(n: u64, case1_sign: Sign) -> RunReport {
    let mut state = RejmerState::new(n, case1_sign);
    let mut post_step_max_abs = 1i64; // after step 1 the sum is +1
    let mut halted_at = None;
    while state.current_step() < n {
        match state.step() {
            Ok(_) => {
                post_step_max_abs = post_step_max_abs.max(state.running_sum().abs());
            }
            Err(halt) => {
                halted_at = Some(halt.step);
                break;
            }
        }
    }
    let final_signs = state.to_sign_sequence();
    let final_prefix_max_abs =
        final_signs.prefix_sums().map(|(_, s)| s.abs()).max().unwrap_or(0);
    RunReport {
        requested: n,
        final_signs,
        switch_log: state.switch_log,
        halted_at,
        post_step_max_abs,
        final_prefix_max_abs,
    }
}

/// Primes `p <= n/2` whose frozen sign disagrees with the Liouville function
/// (that is, `R(p) = +1`), ascending.
pub fn liouville_disagreements(report: &RunReport) -> Vec<u64> {
    let Some(r) = report.r_sequence() else {
        return Vec::new();
    };
    if r.len() < 2 {
        return Vec::new();
    }
    let table = PrimeTable::sieve(r.len());
    table
        .primes()
        .iter()
        .copied()
        .filter(|&p| r.sign_at(p) == Some(Sign::Plus))
        .collect()
}
