//! Threaded discrepancy scan: steps are split into contiguous chunks, each
//! scanned independently, and the chunk reports merged with the
//! deterministic tie-break. The result is identical for every thread count.

use edp_core::discrepancy::{merge_reports, scan_steps, BalanceReport, LengthFilter};
use edp_core::signs::SignSequence;

pub fn scan_steps_parallel(
    signs: &SignSequence,
    steps: &[u64],
    lengths: &LengthFilter,
    n: u64,
    threads: usize,
) -> BalanceReport {
    let threads = threads.max(1);
    if threads == 1 || steps.len() < 2 * threads {
        return scan_steps(signs, steps, lengths, n);
    }
    let chunk = steps.len().div_ceil(threads);
    let reports: Vec<BalanceReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = steps
            .chunks(chunk)
            .map(|part| scope.spawn(move || scan_steps(signs, part, lengths, n)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    reports.into_iter().fold(BalanceReport::empty(), merge_reports)
}
