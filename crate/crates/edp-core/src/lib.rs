//! Colorings of the positive integers, homogeneous arithmetic progressions,
//! and the search machinery built on top of them.
//!
//! A *homogeneous arithmetic progression* (HAP) is a set
//! `A(s,k) = {s, 2s, ..., ks}`. The crate provides:
//!
//! * [`signs`] — two-valued (±1) colorings, completely multiplicative ones
//!   represented by their prime signs, and fast bulk evaluation (dense and
//!   segmented sieves);
//! * [`primes`] — prime tables and the residue-class counting functions
//!   `theta(x;3,1)` and `f(x)` together with their empirical bound checks;
//! * [`discrepancy`] — HAP sums, balance predicates, and whole-range
//!   discrepancy scans;
//! * [`theorem1`] — construction of a completely multiplicative coloring
//!   that is perfectly balanced on every `A(s,k)` for a fixed `k`;
//! * [`rejmer`] — the greedy retro-switching algorithm and its limit
//!   sequence `R(n)`;
//! * [`search`] — partial-sum scans of Liouville-like colorings and the
//!   bounded-partial-sum backtracking search;
//! * [`rainbow`] — the graph `G_k`, rainbow `k`-colorings, and Graham-ratio
//!   witnesses.
//!
//! The crate is `no_std`-compatible (`alloc` required); disable the default
//! `std` feature for embedded use. All algorithms are deterministic.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod discrepancy;
pub mod primes;
pub mod rainbow;
pub mod rejmer;
pub mod search;
pub mod signs;
pub mod theorem1;

pub use discrepancy::{BalanceReport, CutePairSpec, Hap};
pub use primes::PrimeTable;
pub use signs::{Coloring, DefaultRule, PrimeAssignment, Sign, SignSequence};
