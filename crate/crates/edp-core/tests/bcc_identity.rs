//! The Borwein–Choi–Coons identity and bound, checked exactly over a
//! full range: the prefix sum of the coloring at k equals the number of
//! ternary 1-digits of k, and stays within [0, ceil(log3 k) + 1].

use edp_core::signs::{ceil_log3, count_ones_base3, sieve_signs, PrimeAssignment};

#[test]
fn prefix_sums_count_ternary_ones_up_to_1e6() {
    let signs = sieve_signs(&PrimeAssignment::bcc(), 1_000_000);
    for (k, sum) in signs.prefix_sums() {
        assert_eq!(sum, count_ones_base3(k) as i64, "k = {k}");
    }
}

#[test]
fn prefix_sums_stay_within_log_bound_up_to_1e6() {
    let signs = sieve_signs(&PrimeAssignment::bcc(), 1_000_000);
    for (k, sum) in signs.prefix_sums() {
        assert!(sum >= 0, "k = {k}");
        assert!(sum <= ceil_log3(k) as i64 + 1, "k = {k}");
    }
}

#[test]
fn count_ones_base3_by_repeated_division() {
    // independent digit oracle
    for k in 1u64..=100_000 {
        let mut m = k;
        let mut ones = 0;
        while m > 0 {
            if m % 3 == 1 {
                ones += 1;
            }
            m /= 3;
        }
        assert_eq!(count_ones_base3(k), ones);
    }
}
