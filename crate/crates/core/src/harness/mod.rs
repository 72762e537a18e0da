//! Sweeps over graph streams: enumeration, conjecture checks, construction
//! suites, report emission and the persistent invariant cache.

pub mod cache;
pub mod conjecture;
pub mod enumerate;
pub mod report;
pub mod suite;

use thiserror::Error;

pub use cache::{Bundle, InvariantCache, CACHE_ENV};
pub use conjecture::{
    check_conjectures, ConjectureReport, SweepOptions, SweepStats, SweepSummary, Which,
};
pub use enumerate::{enumerate_labeled_graphs, LabeledGraphs, EXHAUSTIVE_MAX_N};
pub use report::{emit_report, ReportFormat, ReportWriter, CSV_HEADER};
pub use suite::{run_construction_suite, SuiteFailure, SuiteSummary};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("exhaustive enumeration supports n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("method {0} is not a construction")]
    NotAConstruction(crate::cover::Method),
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, HarnessError> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?)
}
