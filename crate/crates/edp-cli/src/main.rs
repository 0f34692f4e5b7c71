//! `edp` — a workbench for discrepancy experiments on homogeneous
//! arithmetic progressions.
//!
//! Every subcommand prints one JSON document (or CSV where noted) to
//! standard output and is deterministic: identical invocations produce
//! identical bytes regardless of `--threads`. Exit codes: 0 success,
//! 1 verification failure, 2 usage error, 3 budget exhausted.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use edp_core::discrepancy::{sign_table, LengthFilter, StepFilter};
use edp_core::primes::{check_f_bound, check_mccurley, PrimeTable};
use edp_core::rainbow::{
    graham_witness, search_rainbow, search_rainbow_seeded, split_to_balanced, verify_rainbow,
    RainbowSearch,
};
use edp_core::rejmer;
use edp_core::search::{
    flip_experiment, min_h, polya_scan, MinHOutcome, Mode, ScanResult, DEFAULT_NODE_BUDGET,
    DEFAULT_SEGMENT,
};
use edp_core::signs::{ceil_log3, count_ones_base3, sieve_signs_with, Sign};
use edp_core::theorem1;

use edp_cli::coloring_file::{self, AssignmentDto};
use edp_cli::manifest::RunManifest;
use edp_cli::parallel::scan_steps_parallel;
use edp_cli::report::*;
use edp_cli::signs_file;

/// Scans above this size must be requested explicitly with `--full`.
const FULL_SCAN_GATE: u64 = 100_000_000;

#[derive(Parser)]
#[command(name = "edp", version, about = "Discrepancy experiments on homogeneous arithmetic progressions")]
struct Cli {
    /// Worker threads for scans (default: EDP_THREADS or 1); results do not
    /// depend on the value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write a run manifest (parameters + output digest) to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StepsArg {
    All,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Upper,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Mccurley,
    Fbound,
}

#[derive(Subcommand)]
enum Command {
    /// Scan |HAP sum| over a family of progressions
    Scan {
        /// Builtin name (liouville, bcc, alternating), an EDPSIGNS file, or
        /// an assignment JSON file
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        limit: u64,
        #[arg(long, value_enum, default_value_t = StepsArg::All)]
        steps: StepsArg,
        /// all, k=<K>, or base3free
        #[arg(long, default_value = "all")]
        lengths: String,
        /// Emit one CSV row per step with its maximal |partial sum|
        #[arg(long)]
        csv: bool,
    },
    /// Build and verify the balanced multiplicative coloring for a fixed k
    Theorem1 {
        #[arg(long)]
        k: u64,
        /// Scan every A(s,k) with s*k up to this bound
        #[arg(long)]
        verify_limit: Option<u64>,
        /// Write the extended coloring's signs as EDPSIGNS v1
        #[arg(long)]
        emit_signs: Option<PathBuf>,
    },
    /// Run the greedy retro-switching coloring
    Rejmer {
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        emit_signs: Option<PathBuf>,
        /// Write the switch log as CSV (step, prime, new_sign)
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SignArg::Minus)]
        case1_sign: SignArg,
    },
    /// Partial sums of the Liouville function
    Polya {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        segment: Option<u64>,
        /// Confirm a long scan (required above 10^8)
        #[arg(long)]
        full: bool,
    },
    /// Partial sums of Liouville with chosen primes flipped to +1
    Flip {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        segment: Option<u64>,
        #[arg(long)]
        full: bool,
    },
    /// Least h with a multiplicative coloring of bounded partial sums
    Minh {
        #[arg(long)]
        horizon: u64,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Search for a rainbow k-coloring (proper coloring of G_k)
    Rainbow {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        budget: Option<u64>,
        /// Write the found coloring as `n color` lines
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Seeded random-restart mode (excluded from acceptance runs)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        restarts: u64,
    },
    /// Maximal a/gcd(a,b) pair over a set of distinct integers
    Graham {
        /// File of whitespace-separated integers
        #[arg(long, conflicts_with = "range")]
        values: Option<PathBuf>,
        /// Inclusive range a..b
        #[arg(long)]
        range: Option<String>,
    },
    /// Empirical checks of the theta(x;3,1) and f(x) bounds
    Primes {
        #[arg(long, value_enum)]
        check: CheckArg,
        #[arg(long)]
        x: u64,
    },
    /// Verify the ternary-digit identity and bound of the BCC coloring
    BccCheck {
        #[arg(long)]
        limit: u64,
    },
}

/// A run that produced output; `code` distinguishes verified success (0),
/// verification failure (1), and budget exhaustion (3).
struct Outcome {
    payload: String,
    code: u8,
    subcommand: &'static str,
    params: BTreeMap<String, String>,
}

struct UsageError(String);

type RunResult = Result<Outcome, UsageError>;

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn params_of<const N: usize>(entries: [(&str, String); N]) -> BTreeMap<String, String> {
    entries.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

fn parse_lengths(spec: &str) -> Result<(LengthFilter, String), UsageError> {
    match spec {
        "all" => Ok((LengthFilter::All, "all".into())),
        "base3free" => Ok((LengthFilter::Base3NoOnes, "base3free".into())),
        other => {
            let Some(k) = other.strip_prefix("k=") else {
                return usage(format!("bad --lengths {other:?}: expected all, k=<K>, or base3free"));
            };
            let k: u64 = match k.parse() {
                Ok(k) if k >= 1 => k,
                _ => return usage(format!("bad --lengths {other:?}")),
            };
            Ok((LengthFilter::Singleton(k), format!("k={k}")))
        }
    }
}

fn run_scan(
    coloring_spec: &str,
    limit: u64,
    steps: StepsArg,
    lengths_spec: &str,
    csv: bool,
    threads: usize,
) -> RunResult {
    if limit < 1 {
        return usage("--limit must be at least 1");
    }
    let coloring = coloring_file::load_coloring(coloring_spec).map_err(UsageError)?;
    let (lengths, lengths_name) = parse_lengths(lengths_spec)?;
    if let edp_core::signs::Coloring::TableBacked(t) = &coloring {
        if t.start() != 1 || t.len() < limit {
            return usage(format!(
                "sign table covers {}..={} but the scan needs 1..={limit}",
                t.start(),
                t.end()
            ));
        }
    }
    let step_filter = match steps {
        StepsArg::All => StepFilter::All,
        StepsArg::Odd => StepFilter::Odd,
    };
    let table = sign_table(&coloring, limit);
    let step_list = step_filter.steps_up_to(limit);
    let params = params_of([
        ("coloring", coloring_spec.to_owned()),
        ("limit", limit.to_string()),
        ("steps", format!("{steps:?}").to_lowercase()),
        ("lengths", lengths_name.clone()),
        ("csv", csv.to_string()),
    ]);
    let payload = if csv {
        let mut out = String::from("step,max_abs_sum\n");
        for &s in &step_list {
            let report = scan_steps_parallel(&table, &[s], &lengths, limit, 1);
            out.push_str(&format!("{s},{}\n", report.max_abs_sum));
        }
        out.pop(); // trailing newline added once by the printer
        out
    } else {
        let report = scan_steps_parallel(&table, &step_list, &lengths, limit, threads);
        json(&ScanReport {
            coloring: coloring_spec.to_owned(),
            limit,
            steps: format!("{steps:?}").to_lowercase(),
            lengths: lengths_name,
            report: report.into(),
        })
    };
    Ok(Outcome { payload, code: 0, subcommand: "scan", params })
}

fn run_theorem1(
    k: u64,
    verify_limit: Option<u64>,
    emit_signs: Option<&PathBuf>,
    threads: usize,
) -> RunResult {
    if k < 1 {
        return usage("--k must be at least 1");
    }
    if let Some(n) = verify_limit {
        if n < k {
            return usage("--verify-limit must be at least k");
        }
    }
    let table_limit = verify_limit.unwrap_or(k).max(2);
    let table = PrimeTable::sieve_with_spf(table_limit);
    let construction = match theorem1::construct_balanced_with(k, &table) {
        Ok(c) => c,
        Err(infeasible) => {
            // would be a publishable finding; reported as a verification failure
            let payload = json(&serde_json::json!({
                "k": k,
                "infeasible": infeasible.to_string(),
            }));
            let params = params_of([("k", k.to_string())]);
            return Ok(Outcome { payload, code: 1, subcommand: "theorem1", params });
        }
    };
    let margin = if k >= 2 {
        theorem1::feasibility_margin(k, &table)
    } else {
        theorem1::FeasibilityMargin { supply: 0, demand: 0 }
    };
    let assignment = construction.extend_with(&table);
    let mut verified_max = None;
    if let Some(n) = verify_limit {
        let signs = sieve_signs_with(&assignment, n, &table);
        let steps: Vec<u64> = (1..=n / k).collect();
        let report = scan_steps_parallel(&signs, &steps, &LengthFilter::Singleton(k), n, threads);
        verified_max = Some(report.max_abs_sum);
    }
    if let Some(path) = emit_signs {
        let signs = sieve_signs_with(&assignment, table_limit, &table);
        let file = File::create(path)
            .map_err(|e| UsageError(format!("cannot create {}: {e}", path.display())))?;
        signs_file::write_signs(BufWriter::new(file), &signs)
            .map_err(|e| UsageError(e.to_string()))?;
    }
    let balanced = construction.final_prefix_sum == 0 || construction.final_prefix_sum == 1;
    let pass = balanced && verified_max.is_none_or(|m| m <= 1);
    let report = Theorem1Report {
        k,
        initial_sum: construction.initial_sum,
        flips: construction.switched.clone(),
        final_sum: construction.final_prefix_sum,
        via_fallback: construction.via_fallback,
        supply: margin.supply,
        demand: margin.demand,
        verify_limit,
        verified_max,
        pass,
    };
    let params = params_of([
        ("k", k.to_string()),
        ("verify_limit", verify_limit.map_or("none".into(), |n| n.to_string())),
        ("emit_signs", emit_signs.map_or("none".into(), |p| p.display().to_string())),
    ]);
    Ok(Outcome {
        payload: json(&report),
        code: if pass { 0 } else { 1 },
        subcommand: "theorem1",
        params,
    })
}

fn run_rejmer(
    steps: u64,
    emit_signs: Option<&PathBuf>,
    log: Option<&PathBuf>,
    case1_sign: SignArg,
) -> RunResult {
    if steps < 2 {
        return usage("--steps must be at least 2");
    }
    let sign = match case1_sign {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    };
    let report = rejmer::run_with(steps, sign);
    if let Some(path) = emit_signs {
        let file = File::create(path)
            .map_err(|e| UsageError(format!("cannot create {}: {e}", path.display())))?;
        signs_file::write_signs(BufWriter::new(file), &report.final_signs)
            .map_err(|e| UsageError(e.to_string()))?;
    }
    if let Some(path) = log {
        let write_log = || -> std::io::Result<()> {
            let mut w = BufWriter::new(File::create(path)?);
            writeln!(w, "step,prime,new_sign")?;
            for r in &report.switch_log {
                writeln!(w, "{},{},{}", r.step, r.prime, r.new_sign.value())?;
            }
            w.flush()
        };
        write_log()
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    let dto = RejmerReport {
        steps,
        case1_sign: if sign == Sign::Plus { "plus".into() } else { "minus".into() },
        halted_at: report.halted_at,
        switches: report.switch_log.len() as u64,
        post_step_max_abs: report.post_step_max_abs,
        final_prefix_max_abs: report.final_prefix_max_abs,
    };
    let params = params_of([
        ("steps", steps.to_string()),
        ("case1_sign", dto.case1_sign.clone()),
        ("emit_signs", emit_signs.map_or("none".into(), |p| p.display().to_string())),
        ("log", log.map_or("none".into(), |p| p.display().to_string())),
    ]);
    // a halt would refute the conjecture the run probes; flag it loudly
    let code = if report.halted_at.is_some() || report.post_step_max_abs > 1 { 1 } else { 0 };
    Ok(Outcome { payload: json(&dto), code, subcommand: "rejmer", params })
}

fn gate_full_scan(limit: u64, full: bool) -> Result<(), UsageError> {
    if limit > FULL_SCAN_GATE && !full {
        return usage(format!(
            "--limit {limit} exceeds {FULL_SCAN_GATE}; pass --full to confirm the long scan"
        ));
    }
    Ok(())
}

fn scan_params(limit: u64, segment: u64, full: bool) -> BTreeMap<String, String> {
    params_of([
        ("limit", limit.to_string()),
        ("segment", segment.to_string()),
        ("full", full.to_string()),
    ])
}

fn run_polya(limit: u64, segment: Option<u64>, full: bool) -> RunResult {
    if limit < 2 {
        return usage("--limit must be at least 2");
    }
    let segment = segment.unwrap_or(DEFAULT_SEGMENT);
    if segment < 1 {
        return usage("--segment must be positive");
    }
    gate_full_scan(limit, full)?;
    let r: ScanResult = polya_scan(limit, segment);
    let dto = PolyaReport {
        limit,
        segment,
        first_violation: r.first_violation,
        max_sum: r.max_sum,
        argmax: r.argmax,
        min_sum: r.min_sum,
        argmin: r.argmin,
    };
    Ok(Outcome {
        payload: json(&dto),
        code: 0,
        subcommand: "polya",
        params: scan_params(limit, segment, full),
    })
}

fn run_flip(primes: &[u64], limit: u64, segment: Option<u64>, full: bool) -> RunResult {
    if limit < 2 {
        return usage("--limit must be at least 2");
    }
    let segment = segment.unwrap_or(DEFAULT_SEGMENT);
    gate_full_scan(limit, full)?;
    let r = match flip_experiment(primes, limit, segment) {
        Ok(r) => r,
        Err(e) => return usage(e.to_string()),
    };
    let mut flips = primes.to_vec();
    flips.sort_unstable();
    flips.dedup();
    let dto = FlipReport {
        flips: flips.clone(),
        limit,
        segment,
        first_violation: r.first_violation,
        max_sum: r.max_sum,
        argmax: r.argmax,
        min_sum: r.min_sum,
        argmin: r.argmin,
    };
    let mut params = scan_params(limit, segment, full);
    params.insert(
        "primes".into(),
        flips.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
    );
    Ok(Outcome { payload: json(&dto), code: 0, subcommand: "flip", params })
}

fn run_minh(horizon: u64, mode: ModeArg, budget: Option<u64>) -> RunResult {
    if horizon < 1 {
        return usage("--horizon must be at least 1");
    }
    let budget = budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let core_mode = match mode {
        ModeArg::Upper => Mode::UpperOnly,
        ModeArg::Two => Mode::TwoSided,
    };
    let mode_name = match mode {
        ModeArg::Upper => "upper",
        ModeArg::Two => "two",
    };
    let (status, h, witness, code) = match min_h(horizon, core_mode, budget) {
        MinHOutcome::Known { h, witness } => {
            ("known", h, Some(AssignmentDto::from_core(&witness)), 0u8)
        }
        MinHOutcome::UnknownAtBudget { h } => ("unknown_at_budget", h, None, 3u8),
    };
    let dto = MinhReport {
        horizon,
        mode: mode_name.into(),
        budget,
        status: status.into(),
        h,
        witness,
    };
    let params = params_of([
        ("horizon", horizon.to_string()),
        ("mode", mode_name.into()),
        ("budget", budget.to_string()),
    ]);
    Ok(Outcome { payload: json(&dto), code, subcommand: "minh", params })
}

fn run_rainbow(
    k: u64,
    limit: u64,
    budget: Option<u64>,
    emit: Option<&PathBuf>,
    seed: Option<u64>,
    restarts: u64,
    threads: usize,
) -> RunResult {
    if k < 1 || limit < k {
        return usage("--limit must be at least --k, both positive");
    }
    if k > 128 {
        return usage("--k is limited to 128");
    }
    let budget = budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let report = match seed {
        None => search_rainbow(k, limit, budget),
        Some(seed) => search_rainbow_seeded(k, limit, budget, restarts.max(1), seed),
    };
    let (status, coloring) = match report.outcome {
        RainbowSearch::Found(c) => ("found", Some(c)),
        RainbowSearch::Exhausted => ("exhausted", None),
        RainbowSearch::BudgetExceeded => ("budget_exceeded", None),
    };
    let mut verified = None;
    let mut split_max_abs = None;
    if let Some(c) = &coloring {
        verified = Some(verify_rainbow(c, limit).ok);
        let split = split_to_balanced(c);
        let table = sign_table(&split, limit);
        let steps: Vec<u64> = (1..=limit / k).collect();
        let scan = scan_steps_parallel(&table, &steps, &LengthFilter::Singleton(k), limit, threads);
        split_max_abs = Some(scan.max_abs_sum);
        if let Some(path) = emit {
            let file = File::create(path)
                .map_err(|e| UsageError(format!("cannot create {}: {e}", path.display())))?;
            coloring_file::write_kcoloring(file, c).map_err(|e| UsageError(e.to_string()))?;
        }
    }
    let code = match (status, verified) {
        (_, Some(false)) => 1, // found coloring failing its own verifier: a bug
        ("budget_exceeded", _) => 3,
        _ => 0,
    };
    let dto = RainbowRunReport {
        k,
        limit,
        budget,
        status: status.into(),
        nodes: report.nodes,
        verified,
        split_max_abs,
    };
    let params = params_of([
        ("k", k.to_string()),
        ("limit", limit.to_string()),
        ("budget", budget.to_string()),
        ("seed", seed.map_or("none".into(), |s| s.to_string())),
        ("restarts", restarts.to_string()),
        ("emit", emit.map_or("none".into(), |p| p.display().to_string())),
    ]);
    Ok(Outcome { payload: json(&dto), code, subcommand: "rainbow", params })
}

fn run_graham(values: Option<&PathBuf>, range: Option<&str>) -> RunResult {
    let values: Vec<u64> = match (values, range) {
        (Some(path), None) => {
            let mut text = String::new();
            File::open(path)
                .and_then(|mut f| f.read_to_string(&mut text))
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            let mut parsed = Vec::new();
            for tok in text.split_whitespace() {
                match tok.parse() {
                    Ok(v) => parsed.push(v),
                    Err(_) => return usage(format!("bad value {tok:?} in {}", path.display())),
                }
            }
            parsed
        }
        (None, Some(range)) => {
            let Some((a, b)) = range.split_once("..") else {
                return usage(format!("bad --range {range:?}: expected a..b"));
            };
            let (a, b): (u64, u64) = match (a.parse(), b.parse()) {
                (Ok(a), Ok(b)) if a >= 1 && a <= b => (a, b),
                _ => return usage(format!("bad --range {range:?}")),
            };
            (a..=b).collect()
        }
        _ => return usage("exactly one of --values or --range is required"),
    };
    let witness = match graham_witness(&values) {
        Ok(w) => w,
        Err(e) => return usage(e.to_string()),
    };
    let dto = GrahamReport {
        n: values.len() as u64,
        pair: [witness.pair.0, witness.pair.1],
        ratio: witness.ratio,
        meets_bound: witness.meets_bound,
    };
    let params = params_of([
        ("values", values.len().to_string()),
        ("range", range.unwrap_or("none").to_owned()),
    ]);
    // the inequality is a theorem; a failure flags an implementation bug
    let code = if witness.meets_bound { 0 } else { 1 };
    Ok(Outcome { payload: json(&dto), code, subcommand: "graham", params })
}

fn run_primes(check: CheckArg, x: u64) -> RunResult {
    let params = params_of([
        ("check", format!("{check:?}").to_lowercase()),
        ("x", x.to_string()),
    ]);
    let (dto, pass) = match check {
        CheckArg::Mccurley => {
            let table = PrimeTable::sieve(x.max(2));
            let r = match check_mccurley(x, &table) {
                Ok(r) => r,
                Err(e) => return usage(e.to_string()),
            };
            (
                PrimesReport {
                    x,
                    check: "mccurley".into(),
                    theta: r.theta,
                    lower: r.lower,
                    upper: Some(r.upper),
                    pass: r.pass,
                },
                r.pass,
            )
        }
        CheckArg::Fbound => {
            let table = PrimeTable::sieve((2 * x).max(2));
            let r = match check_f_bound(x, &table) {
                Ok(r) => r,
                Err(e) => return usage(e.to_string()),
            };
            (
                PrimesReport {
                    x,
                    check: "fbound".into(),
                    theta: r.count as f64,
                    lower: r.bound,
                    upper: None,
                    pass: r.pass,
                },
                r.pass,
            )
        }
    };
    Ok(Outcome {
        payload: json(&dto),
        code: if pass { 0 } else { 1 },
        subcommand: "primes",
        params,
    })
}

fn run_bcc_check(limit: u64) -> RunResult {
    if limit < 1 {
        return usage("--limit must be at least 1");
    }
    let table = PrimeTable::sieve_with_spf(limit.max(2));
    let signs = sieve_signs_with(&edp_core::signs::PrimeAssignment::bcc(), limit, &table);
    let mut violations = 0u64;
    let mut bound_violations = 0u64;
    let mut max_prefix = i64::MIN;
    for (k, sum) in signs.prefix_sums() {
        if sum != count_ones_base3(k) as i64 {
            violations += 1;
        }
        if sum < 0 || sum > ceil_log3(k) as i64 + 1 {
            bound_violations += 1;
        }
        max_prefix = max_prefix.max(sum);
    }
    let dto = BccCheckReport {
        limit,
        checked: limit,
        violations,
        bound_violations,
        max_prefix_sum: max_prefix,
    };
    let params = params_of([("limit", limit.to_string())]);
    let code = if violations == 0 && bound_violations == 0 { 0 } else { 1 };
    Ok(Outcome { payload: json(&dto), code, subcommand: "bcc-check", params })
}

fn dispatch(command: &Command, threads: usize) -> RunResult {
    match command {
        Command::Scan { coloring, limit, steps, lengths, csv } => {
            run_scan(coloring, *limit, *steps, lengths, *csv, threads)
        }
        Command::Theorem1 { k, verify_limit, emit_signs } => {
            run_theorem1(*k, *verify_limit, emit_signs.as_ref(), threads)
        }
        Command::Rejmer { steps, emit_signs, log, case1_sign } => {
            run_rejmer(*steps, emit_signs.as_ref(), log.as_ref(), *case1_sign)
        }
        Command::Polya { limit, segment, full } => run_polya(*limit, *segment, *full),
        Command::Flip { primes, limit, segment, full } => {
            run_flip(primes, *limit, *segment, *full)
        }
        Command::Minh { horizon, mode, budget } => run_minh(*horizon, *mode, *budget),
        Command::Rainbow { k, limit, budget, emit, seed, restarts } => {
            run_rainbow(*k, *limit, *budget, emit.as_ref(), *seed, *restarts, threads)
        }
        Command::Graham { values, range } => run_graham(values.as_ref(), range.as_deref()),
        Command::Primes { check, x } => run_primes(*check, *x),
        Command::BccCheck { limit } => run_bcc_check(*limit),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| std::env::var("EDP_THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1);
    let start = Instant::now();
    match dispatch(&cli.command, threads) {
        Ok(outcome) => {
            let mut bytes = outcome.payload.into_bytes();
            bytes.push(b'\n');
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(&bytes).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if let Some(path) = &cli.manifest {
                let mut params = outcome.params;
                params.insert("threads".into(), threads.to_string());
                let manifest = RunManifest::new(
                    outcome.subcommand,
                    params,
                    start.elapsed().as_millis() as u64,
                    &bytes,
                );
                let written = File::create(path).and_then(|f| {
                    let mut w = BufWriter::new(f);
                    serde_json::to_writer_pretty(&mut w, &manifest)?;
                    w.write_all(b"\n")?;
                    w.flush()
                });
                if let Err(e) = written {
                    eprintln!("error: cannot write manifest {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
