//! Property tests for the coloring and scan invariants.

use edp_core::discrepancy::{hap_sum, Hap};
use edp_core::primes::PrimeTable;
use edp_core::signs::{sieve_segment, sieve_signs, Coloring, PrimeAssignment, Sign};
use proptest::prelude::*;

fn sample_assignments() -> Vec<PrimeAssignment> {
    vec![
        PrimeAssignment::liouville(),
        PrimeAssignment::bcc(),
        PrimeAssignment::liouville().with_override(2, Sign::Plus).unwrap(),
        PrimeAssignment::bcc()
            .with_override(5, Sign::Plus)
            .unwrap()
            .with_override(13, Sign::Minus)
            .unwrap(),
    ]
}

proptest! {
    #[test]
    fn eval_is_completely_multiplicative(a in 1u64..=1000, b in 1u64..=100) {
        for assignment in sample_assignments() {
            prop_assert_eq!(
                assignment.eval(a * b),
                assignment.eval(a) * assignment.eval(b)
            );
        }
    }

    #[test]
    fn hap_sums_scale_by_the_step_sign(s in 1u64..=320, k in 1u64..=320) {
        // (c(s), c(2s), ..., c(ks)) = c(s) (c(1), ..., c(k))
        for assignment in sample_assignments() {
            let c = Coloring::Multiplicative(assignment.clone());
            let scaled = hap_sum(&c, Hap::new(s, k)).unwrap();
            let base = hap_sum(&c, Hap::new(1, k)).unwrap();
            prop_assert_eq!(scaled, assignment.eval(s).value() * base);
        }
    }

    #[test]
    fn hap_sum_parity_matches_length(s in 1u64..=64, k in 1u64..=512) {
        for c in [Coloring::liouville(), Coloring::bcc(), Coloring::Alternating] {
            let sum = hap_sum(&c, Hap::new(s, k)).unwrap();
            prop_assert_eq!(sum.rem_euclid(2) as u64, k % 2);
            prop_assert!(sum.unsigned_abs() <= k);
        }
    }

    #[test]
    fn segment_windows_match_dense_table(lo in 1u64..=9_000, len in 0u64..=900) {
        let hi = lo + len;
        let table = PrimeTable::sieve(100); // covers sqrt(9900)
        for assignment in sample_assignments() {
            let dense = sieve_signs(&assignment, hi);
            let seg = sieve_segment(&assignment, lo, hi, &table).unwrap();
            for n in lo..=hi {
                prop_assert_eq!(seg.sign_at(n), dense.sign_at(n));
            }
        }
    }

    #[test]
    fn segment_point_queries_match_eval(n in 1u64..=1_000_000u64) {
        let table = PrimeTable::sieve(1000);
        let assignment = PrimeAssignment::liouville();
        let seg = sieve_segment(&assignment, n, n, &table).unwrap();
        prop_assert_eq!(seg.sign_at(n).unwrap(), assignment.eval(n));
    }

    #[test]
    fn prefix_sums_step_by_one(n in 2u64..=2_000) {
        let signs = sieve_signs(&PrimeAssignment::bcc(), n);
        let sums: Vec<i64> = signs.prefix_sums().map(|(_, s)| s).collect();
        for w in sums.windows(2) {
            prop_assert_eq!((w[1] - w[0]).abs(), 1);
        }
    }
}

#[test]
fn multiplicativity_exhaustive_small_range() {
    for assignment in sample_assignments() {
        let table = sieve_signs(&assignment, 90_000);
        for a in 1u64..=300 {
            for b in a..=300 {
                assert_eq!(
                    table.sign_at(a * b).unwrap(),
                    table.sign_at(a).unwrap() * table.sign_at(b).unwrap(),
                    "a = {a}, b = {b}"
                );
            }
        }
    }
}
