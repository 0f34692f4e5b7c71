//! JSON report bodies, one per subcommand. Field order is declaration
//! order, so serialized output is byte-stable; every shape has a schema
//! under `schemas/`.

use serde::Serialize;

use edp_core::discrepancy::{BalanceReport, Hap};

use crate::coloring_file::AssignmentDto;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HapDto {
    pub step: u64,
    pub len: u64,
}

impl From<Hap> for HapDto {
    fn from(h: Hap) -> Self {
        HapDto { step: h.step, len: h.len }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BalanceReportDto {
    pub max_abs_sum: u64,
    pub witness: Option<HapDto>,
    pub scanned: u64,
}

impl From<BalanceReport> for BalanceReportDto {
    fn from(r: BalanceReport) -> Self {
        BalanceReportDto {
            max_abs_sum: r.max_abs_sum,
            witness: r.witness.map(HapDto::from),
            scanned: r.scanned,
        }
    }
}

#[derive(Serialize)]
pub struct ScanReport {
    pub coloring: String,
    pub limit: u64,
    pub steps: String,
    pub lengths: String,
    pub report: BalanceReportDto,
}

#[derive(Serialize)]
pub struct Theorem1Report {
    pub k: u64,
    pub initial_sum: u64,
    pub flips: Vec<u64>,
    pub final_sum: i64,
    pub via_fallback: bool,
    pub supply: u64,
    pub demand: u64,
    pub verify_limit: Option<u64>,
    pub verified_max: Option<u64>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct RejmerReport {
    pub steps: u64,
    pub case1_sign: String,
    pub halted_at: Option<u64>,
    pub switches: u64,
    pub post_step_max_abs: i64,
    pub final_prefix_max_abs: i64,
}

#[derive(Serialize)]
pub struct PolyaReport {
    pub limit: u64,
    pub segment: u64,
    pub first_violation: Option<u64>,
    pub max_sum: i64,
    pub argmax: u64,
    pub min_sum: i64,
    pub argmin: u64,
}

#[derive(Serialize)]
pub struct FlipReport {
    pub flips: Vec<u64>,
    pub limit: u64,
    pub segment: u64,
    pub first_violation: Option<u64>,
    pub max_sum: i64,
    pub argmax: u64,
    pub min_sum: i64,
    pub argmin: u64,
}

#[derive(Serialize)]
pub struct MinhReport {
    pub horizon: u64,
    pub mode: String,
    pub budget: u64,
    pub status: String,
    pub h: i64,
    pub witness: Option<AssignmentDto>,
}

#[derive(Serialize)]
pub struct RainbowRunReport {
    pub k: u64,
    pub limit: u64,
    pub budget: u64,
    pub status: String,
    pub nodes: u64,
    pub verified: Option<bool>,
    pub split_max_abs: Option<u64>,
}

#[derive(Serialize)]
pub struct GrahamReport {
    pub n: u64,
    pub pair: [u64; 2],
    pub ratio: u64,
    pub meets_bound: bool,
}

#[derive(Serialize)]
pub struct PrimesReport {
    pub x: u64,
    pub check: String,
    /// theta(x;3,1) for the mccurley check; the prime count f(x) for fbound.
    pub theta: f64,
    pub lower: f64,
    pub upper: Option<f64>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct BccCheckReport {
    pub limit: u64,
    pub checked: u64,
    pub violations: u64,
    pub bound_violations: u64,
    pub max_prefix_sum: i64,
}
