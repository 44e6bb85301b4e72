//! Harness library behind the zerosum-lab CLI: verify suites, conjecture
//! and open-problem scans, result cache, and report writers.

pub mod cache;
pub mod report;
pub mod scan;
pub mod suites;
