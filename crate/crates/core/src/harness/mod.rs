//! Corpora, scans and reports.

pub mod enumerate;
pub mod generate;
pub mod report;
pub mod scan;
pub mod store;

pub use enumerate::{enumerate_all, enumerate_forms, enumerate_unsigned};
pub use generate::{generate, rng_for};
pub use report::{render, ReportFormat};
pub use scan::{run_scan, run_scan_with_threads, CheckName, Corpus, ExtremalRecord, ScanSpec};
pub use store::{run_scan_checkpointed, CorpusIndex};
