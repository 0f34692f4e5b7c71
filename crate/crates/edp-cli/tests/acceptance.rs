//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Time budgets are asserted where the criterion states one.
//!
//! The full Polya scan to the first positive partial sum takes ~20 s and is
//! gated behind `--ignored` (see `criterion_05_full_polya_counterexample`);
//! the desk-scale suite covers the 10^7 prefix.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use edp_core::discrepancy::{scan_max_discrepancy, CutePairSpec, LengthFilter, StepFilter};
use edp_core::primes::{check_f_bound, check_mccurley, PrimeTable};
use edp_core::rainbow::{
    graham_witness, search_rainbow, split_to_balanced, verify_rainbow, KColoring, RainbowSearch,
};
use edp_core::rejmer::{self, RejmerState, SwitchRecord};
use edp_core::search::{
    bounded_sum_search, min_h, polya_scan, BoundedSumQuery, MinHOutcome, Mode, SearchOutcome,
};
use edp_core::signs::{
    ceil_log3, count_ones_base3, sieve_signs, sieve_signs_with, Coloring, PrimeAssignment, Sign,
};
use edp_core::theorem1::{construct_balanced_with, verify_construction};

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn report(criterion: &str, detail: String) {
    println!("[{criterion}] PASS {detail}");
}

#[test]
fn criterion_01_bcc_identity_to_1e6() {
    let start = Instant::now();
    let signs = sieve_signs(&PrimeAssignment::bcc(), 1_000_000);
    let mut violations = 0u64;
    for (k, sum) in signs.prefix_sums() {
        if sum != count_ones_base3(k) as i64 {
            violations += 1;
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(violations, 0, "BCC identity violated");
    assert!(elapsed.as_secs_f64() < 10.0, "budget 10 s, took {elapsed:?}");
    report("criterion 1", format!("BCC identity, 10^6 values, 0 violations, {elapsed:?}"));
}

#[test]
fn criterion_02_bcc_bounds_to_1e6() {
    let signs = sieve_signs(&PrimeAssignment::bcc(), 1_000_000);
    for (k, sum) in signs.prefix_sums() {
        assert!(sum >= 0, "negative prefix sum at {k}");
        assert!(sum <= ceil_log3(k) as i64 + 1, "bound exceeded at {k}");
    }
    report("criterion 2", "BCC prefix sums within [0, ceil(log3 k) + 1] up to 10^6".into());
}

#[test]
fn criterion_03_theorem1_construction() {
    let start = Instant::now();

    // every k <= 20000, with direct-summation cross-check
    let table = PrimeTable::sieve_with_spf(20_000);
    for k in 1..=20_000u64 {
        let c = construct_balanced_with(k, &table).unwrap_or_else(|e| panic!("k = {k}: {e}"));
        assert!(
            c.final_prefix_sum == 0 || c.final_prefix_sum == 1,
            "k = {k}: final sum {}",
            c.final_prefix_sum
        );
        let direct = sieve_signs_with(&c.extend_with(&table), k, &table)
            .prefix_sum_at(k)
            .unwrap();
        assert_eq!(direct, c.final_prefix_sum, "k = {k}: direct summation disagrees");
    }

    // 200 random k <= 10^6
    let big = PrimeTable::sieve_with_spf(1_000_000);
    let mut rng = 0x0314_1592_6535u64;
    for _ in 0..200 {
        let k = splitmix64(&mut rng) % 1_000_000 + 1;
        let c = construct_balanced_with(k, &big).unwrap_or_else(|e| panic!("k = {k}: {e}"));
        assert!(
            c.final_prefix_sum == 0 || c.final_prefix_sum == 1,
            "k = {k}: final sum {}",
            c.final_prefix_sum
        );
    }

    // 50 random k <= 10^4, scanned over every A(s,k) with s*k <= 10^6
    let mut worst = 0u64;
    for _ in 0..50 {
        let k = splitmix64(&mut rng) % 10_000 + 1;
        let c = construct_balanced_with(k, &big).unwrap_or_else(|e| panic!("k = {k}: {e}"));
        let max = verify_construction(&c, 1_000_000, &big).max_abs_sum;
        assert!(max <= 1, "k = {k}: |HAP sum| reached {max}");
        worst = worst.max(max);
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "budget 2 min, took {elapsed:?}");
    report(
        "criterion 3",
        format!("20000 + 200 constructions balanced; 50 verified scans, max |sum| = {worst}, {elapsed:?}"),
    );
}

#[test]
fn criterion_04_rejmer_fidelity() {
    let start = Instant::now();

    // step-16 walkthrough: 13 carries the wrong sign, so 11 is switched
    let mut state = RejmerState::new(16, Sign::Minus);
    let mut last = None;
    while state.current_step() < 16 {
        last = Some(state.step().expect("no halt this early"));
    }
    let fix = last.unwrap().switched.expect("step 16 repairs the balance");
    assert_eq!(fix, SwitchRecord { step: 16, prime: 11, new_sign: Sign::Minus });
    let mut pre: Vec<Sign> = state.to_sign_sequence().signs().to_vec();
    pre[10] = Sign::Plus; // undo the fix to recover the pre-fix table
    let rendered: String =
        pre.iter().map(|s| if *s == Sign::Plus { '+' } else { '-' }).collect();
    assert_eq!(rendered, "+--+-+--+++--+++");
    assert_eq!(pre.iter().filter(|&&s| s == Sign::Plus).count(), 9);

    // run to 10^6 with per-step balance checks
    let mut state = RejmerState::new(1_000_000, Sign::Minus);
    while state.current_step() < 1_000_000 {
        state.step().expect("halt would refute the run");
        let sum = state.running_sum();
        assert!(sum.abs() <= 1);
        if state.current_step() % 2 == 0 {
            assert_eq!(sum, 0, "even step {} unbalanced", state.current_step());
        }
    }

    // frozen prefix against the Liouville function
    let run = rejmer::run(1_000_000);
    assert!(run.halted_at.is_none());
    let r = run.r_sequence().unwrap();
    let liouville = sieve_signs(&PrimeAssignment::liouville(), 101);
    for n in 1..=40u64 {
        assert_eq!(r.sign_at(n), liouville.sign_at(n), "R({n}) != lambda({n})");
    }
    assert_eq!(r.sign_at(41), Some(Sign::Plus));
    assert_eq!(r.sign_at(97), Some(Sign::Plus));
    assert_eq!(r.sign_at(101), Some(Sign::Plus));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "budget 1 min, took {elapsed:?}");
    report(
        "criterion 4",
        format!(
            "step-16 table, c(11) switch, R = lambda below 41, R(41) = R(97) = R(101) = +1, 10^6 steps balanced, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_05_polya_prefix_clean_to_1e7() {
    let start = Instant::now();
    let scan = polya_scan(10_000_000, 1 << 20);
    assert_eq!(scan.first_violation, None, "no violation expected below 10^7");
    assert_eq!(scan.max_sum, 1);
    assert_eq!(scan.argmax, 1);
    report(
        "criterion 5",
        format!(
            "Liouville sums stay nonpositive beyond n = 1 up to 10^7 (min {} at {}), {:?}; full run behind --ignored",
            scan.min_sum,
            scan.argmin,
            start.elapsed()
        ),
    );
}

/// The long half of criterion 5 (~20 s): the first positive partial sum is
/// exactly the known counterexample. Run with `cargo test -- --ignored`.
#[test]
#[ignore = "long-running full scan; enable explicitly"]
fn criterion_05_full_polya_counterexample() {
    let start = Instant::now();
    let scan = polya_scan(906_150_257, 1 << 20);
    assert_eq!(scan.first_violation, Some(906_150_257));
    report(
        "criterion 5 (full)",
        format!("first positive partial sum at n = 906150257, {:?}", start.elapsed()),
    );
}

#[test]
fn criterion_06_bounded_sum_oracle_equivalence() {
    // independent oracle: enumerate all prime-sign vectors
    fn brute_force_sat(n: u64, h: i64, mode: Mode, table: &PrimeTable) -> bool {
        let primes: Vec<u64> = table.primes_in(0, n).to_vec();
        'vectors: for mask in 0u32..(1 << primes.len()) {
            let mut signs = vec![Sign::Plus; n as usize + 1];
            let mut sum = 0i64;
            for m in 1..=n {
                if m >= 2 {
                    let p = table.spf_of(m).unwrap();
                    signs[m as usize] = if p == m {
                        let i = primes.binary_search(&p).unwrap();
                        if mask & (1 << i) != 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    } else {
                        signs[(m / p) as usize] * signs[p as usize]
                    };
                }
                sum += signs[m as usize].value();
                let ok = match mode {
                    Mode::UpperOnly => sum <= h,
                    Mode::TwoSided => sum.abs() <= h,
                };
                if !ok {
                    continue 'vectors;
                }
            }
            return true;
        }
        false
    }

    let table = PrimeTable::sieve_with_spf(30);
    let mut agreements = 0u64;
    for mode in [Mode::UpperOnly, Mode::TwoSided] {
        for h in 1..=2i64 {
            for n in 1..=30u64 {
                let outcome = bounded_sum_search(&BoundedSumQuery::new(n, h, mode), 100_000_000);
                let sat = brute_force_sat(n, h, mode, &table);
                match outcome {
                    SearchOutcome::Assignment(w) => {
                        assert!(sat, "n={n} h={h} {mode:?}: oracle disagrees");
                        let ok = sieve_signs(&w, n).prefix_sums().all(|(_, sum)| match mode {
                            Mode::UpperOnly => sum <= h,
                            Mode::TwoSided => sum.abs() <= h,
                        });
                        assert!(ok, "n={n} h={h} {mode:?}: witness violates constraint");
                    }
                    SearchOutcome::Unsatisfiable => {
                        assert!(!sat, "n={n} h={h} {mode:?}: oracle found a witness");
                    }
                    SearchOutcome::BudgetExceeded => panic!("budget cannot bind here"),
                }
                agreements += 1;
            }
        }
    }
    let MinHOutcome::Known { h, .. } = min_h(10, Mode::UpperOnly, 1_000_000) else {
        panic!("min_h(10) must resolve");
    };
    assert_eq!(h, 1);
    report(
        "criterion 6",
        format!("{agreements} search/enumeration agreements; min_h(10, upper) = 1"),
    );
}

#[test]
fn criterion_07_mccurley_and_f_bound_grid() {
    let start = Instant::now();
    let table = PrimeTable::sieve(20_000_000);
    let lo = 17_377f64;
    let hi = 10_000_000f64;
    let points = 33;
    let ratio = (hi / lo).powf(1.0 / (points - 1) as f64);
    let mut xs = BTreeSet::new();
    for i in 0..points {
        xs.insert((lo * ratio.powi(i)).round() as u64);
    }
    assert!(xs.len() >= 30);
    assert!(xs.contains(&17_377) && xs.contains(&10_000_000));
    for &x in &xs {
        let m = check_mccurley(x, &table).unwrap();
        assert!(m.pass, "theta bound fails at x = {x}: ratio {}", m.ratio);
        let f = check_f_bound(x, &table).unwrap();
        assert!(f.pass, "f bound fails at x = {x}: {} < {}", f.count, f.bound);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "budget 30 s, took {elapsed:?}");
    report(
        "criterion 7",
        format!("both bounds hold at {} geometric points in [17377, 10^7], {elapsed:?}", xs.len()),
    );
}

#[test]
fn criterion_08_cute_pairs() {
    let odd_alternating = scan_max_discrepancy(
        &Coloring::Alternating,
        100_000,
        &CutePairSpec { steps: StepFilter::Odd, lengths: LengthFilter::All },
    );
    assert_eq!(odd_alternating.max_abs_sum, 1, "odd-step alternating scan");

    let bcc_base3 = scan_max_discrepancy(
        &Coloring::bcc(),
        100_000,
        &CutePairSpec { steps: StepFilter::All, lengths: LengthFilter::Base3NoOnes },
    );
    assert_eq!(bcc_base3.max_abs_sum, 0, "BCC on ternary-1-free lengths");
    report(
        "criterion 8",
        format!(
            "alternating/odd max = 1 over {} HAPs; BCC/base3free max = 0 over {} HAPs",
            odd_alternating.scanned, bcc_base3.scanned
        ),
    );
}

#[test]
fn criterion_09_rainbow_machinery() {
    // verifier accepts the 2-adic valuation coloring and rejects the
    // constant coloring with the right witness
    let dyadic = KColoring::dyadic_valuation(1000);
    assert!(verify_rainbow(&dyadic, 1000).ok);
    let constant = KColoring::from_fn(2, 1000, |_| 0).unwrap();
    let rejected = verify_rainbow(&constant, 1000);
    assert!(!rejected.ok);
    let v = rejected.violation.unwrap();
    assert_eq!((v.step, v.first, v.second), (1, 1, 2));

    // search succeeds where a coloring is known to exist
    let search = search_rainbow(2, 100, 10_000_000);
    let RainbowSearch::Found(found) = search.outcome else {
        panic!("k = 2 search must succeed");
    };
    assert!(verify_rainbow(&found, 100).ok);

    // splitting any verified rainbow coloring balances its HAPs
    for coloring in [&dyadic, &found] {
        let n = coloring.len();
        let split = split_to_balanced(coloring);
        let scan = scan_max_discrepancy(
            &split,
            n,
            &CutePairSpec {
                steps: StepFilter::All,
                lengths: LengthFilter::Singleton(coloring.k()),
            },
        );
        assert!(scan.max_abs_sum <= 1, "split coloring unbalanced");
    }

    // Graham's inequality on random sets, against an all-pairs oracle
    let mut rng = 0x6a7e_5eedu64;
    for trial in 0..1000 {
        let size = (splitmix64(&mut rng) % 11 + 2) as usize;
        let mut values = BTreeSet::new();
        while values.len() < size {
            values.insert(splitmix64(&mut rng) % 1_000_000 + 1);
        }
        let values: Vec<u64> = values.into_iter().collect();
        let witness = graham_witness(&values).unwrap();
        let mut oracle = 0u64;
        for &a in &values {
            for &b in &values {
                if a != b {
                    oracle = oracle.max(a / edp_core::rainbow::gcd(a, b));
                }
            }
        }
        assert_eq!(witness.ratio, oracle, "trial {trial}");
        assert!(witness.meets_bound, "trial {trial}: ratio {} < n {}", witness.ratio, size);
        assert!(oracle >= size as u64);
    }
    report(
        "criterion 9",
        "verifier, k=2 search, split balance, and 1000 Graham witnesses all check out".into(),
    );
}

#[test]
fn criterion_10_byte_identical_reruns() {
    use common::run_edp;
    use edp_cli::manifest::{sha256_hex, RunManifest};

    let dir = tempfile::tempdir().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["scan", "--coloring", "bcc", "--limit", "20000"],
        vec!["scan", "--coloring", "alternating", "--limit", "20000", "--steps", "odd"],
        vec!["theorem1", "--k", "97", "--verify-limit", "100000"],
        vec!["rejmer", "--steps", "100000"],
        vec!["polya", "--limit", "1000000"],
        vec!["flip", "--primes", "2,3", "--limit", "100000"],
        vec!["minh", "--horizon", "40", "--mode", "upper"],
        vec!["rainbow", "--k", "2", "--limit", "100"],
        vec!["graham", "--range", "1..500"],
        vec!["primes", "--check", "fbound", "--x", "20000"],
        vec!["bcc-check", "--limit", "100000"],
    ];
    for (i, args) in invocations.iter().enumerate() {
        let mut outputs = Vec::new();
        for (run, threads) in [(0, "1"), (1, "4"), (2, "3")] {
            let path = dir.path().join(format!("manifest_{i}_{run}.json"));
            let mut full = args.clone();
            full.extend_from_slice(&["--threads", threads, "--manifest"]);
            let path_str = path.to_str().unwrap().to_owned();
            full.push(&path_str);
            let out = run_edp(&full);
            assert!(
                out.status.code() == Some(0),
                "{args:?} failed: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            let manifest: RunManifest =
                serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert_eq!(
                manifest.output_sha256,
                sha256_hex(&out.stdout),
                "{args:?}: manifest does not verify its output"
            );
            outputs.push(out.stdout);
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}: differs between runs/threads");
        assert_eq!(outputs[0], outputs[2], "{args:?}: differs between runs/threads");
    }
    report(
        "criterion 10",
        format!("{} invocations byte-identical across reruns and thread counts", invocations.len()),
    );
}
