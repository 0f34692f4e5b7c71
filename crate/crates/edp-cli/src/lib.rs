//! IO companion to `edp-core`: file formats, JSON reports, run manifests,
//! and the threaded scan driver behind the `edp` binary.

pub mod coloring_file;
pub mod manifest;
pub mod parallel;
pub mod report;
pub mod signs_file;
