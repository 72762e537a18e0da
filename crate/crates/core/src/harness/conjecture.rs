use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{lcc_exact, Method};
use crate::graph::Graph;
use crate::invariants::chromatic_number;

use super::cache::{Bundle, InvariantCache};
use super::{thread_pool, HarnessError};

/// Graphs handed to the worker pool per batch.
const CHUNK: usize = 4096;

/// One graph's check of `lcc(G) + lcc(co-G) <= n` and `lcc(G) + χ(G) <= n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub graph6: String,
    pub n: usize,
    pub lcc: usize,
    pub lcc_complement: usize,
    pub chi: usize,
    pub conj1_lhs: usize,
    pub conj1_holds: bool,
    pub conj2_lhs: usize,
    pub conj2_holds: bool,
    pub equality1: bool,
    pub equality2: bool,
    pub method: Method,
    /// `lcc(G + K_1) == lcc(G)`, when the cross-check was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma: Option<bool>,
}

impl ConjectureReport {
    pub fn new(graph6: String, n: usize, lcc: usize, lcc_complement: usize, chi: usize) -> Self {
        let conj1_lhs = lcc + lcc_complement;
        let conj2_lhs = lcc + chi;
        ConjectureReport {
            graph6,
            n,
            lcc,
            lcc_complement,
            chi,
            conj1_lhs,
            conj1_holds: conj1_lhs <= n,
            conj2_lhs,
            conj2_holds: conj2_lhs <= n + 1,
            equality1: conj1_lhs == n,
            equality2: conj2_lhs == n + 1,
            method: Method::Exact,
            lemma: None,
        }
    }

    /// Whether the derived fields agree with `lcc`, `lcc_complement` and `chi`.
    pub fn is_consistent(&self) -> bool {
        let fresh = ConjectureReport {
            lemma: self.lemma,
            method: self.method,
            ..ConjectureReport::new(
                self.graph6.clone(),
                self.n,
                self.lcc,
                self.lcc_complement,
                self.chi,
            )
        };
        fresh == *self
    }

    pub fn violates(&self, which: Which) -> bool {
        (which.first() && !self.conj1_holds) || (which.second() && !self.conj2_holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Which {
    One,
    Two,
    #[default]
    Both,
}

impl Which {
    pub fn first(self) -> bool {
        matches!(self, Which::One | Which::Both)
    }

    pub fn second(self) -> bool {
        matches!(self, Which::Two | Which::Both)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Also check `lcc(G + K_1) == lcc(G)`.
    pub lemma: bool,
    /// Stop after the batch holding the first violation.
    pub stop_on_violation: bool,
    pub which: Which,
}

/// Totals over a sweep. Identical across runs and thread counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub total: u64,
    pub conj1_violations: u64,
    pub conj2_violations: u64,
    pub equality1: u64,
    pub equality2: u64,
    pub lemma_failures: u64,
    pub errors: u64,
    /// graph6 strings of violating graphs, in stream order.
    pub counterexamples: Vec<String>,
}

impl SweepSummary {
    pub fn record(&mut self, r: &ConjectureReport, which: Which) {
        self.total += 1;
        if which.first() {
            self.conj1_violations += u64::from(!r.conj1_holds);
            self.equality1 += u64::from(r.equality1);
        }
        if which.second() {
            self.conj2_violations += u64::from(!r.conj2_holds);
            self.equality2 += u64::from(r.equality2);
        }
        self.lemma_failures += u64::from(r.lemma == Some(false));
        if r.violates(which) {
            self.counterexamples.push(r.graph6.clone());
        }
    }

    pub fn violations(&self) -> u64 {
        self.conj1_violations + self.conj2_violations
    }
}

/// Instrumentation; depends on cache state, so kept out of reports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    /// Invariant computations caused by cache misses (or every graph,
    /// without a cache). Audit recomputations are not counted.
    pub solver_invocations: u64,
    pub cache_hits: u64,
    pub audits: u64,
    pub audit_failures: u64,
}

struct Counters {
    solver: AtomicU64,
    hits: AtomicU64,
    audits: AtomicU64,
    audit_failures: AtomicU64,
    salt: u64,
}

impl Counters {
    fn bundle(&self, cache: &InvariantCache, g: &Graph) -> Result<Bundle, HarnessError> {
        let key = g.to_graph6()?;
        if let Some(b) = cache.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            if self.audit_pick(&key) {
                self.audits.fetch_add(1, Ordering::Relaxed);
                let fresh = Bundle::compute(g);
                if fresh != b {
                    log::error!("cache audit mismatch for {key}: cached {b:?}, fresh {fresh:?}");
                    self.audit_failures.fetch_add(1, Ordering::Relaxed);
                    return Ok(fresh);
                }
            }
            return Ok(b);
        }
        self.solver.fetch_add(1, Ordering::Relaxed);
        let b = Bundle::compute(g);
        cache.put(&key, b)?;
        Ok(b)
    }

    fn audit_pick(&self, key: &str) -> bool {
        let mut h = DefaultHasher::new();
        self.salt.hash(&mut h);
        key.hash(&mut h);
        h.finish().is_multiple_of(100)
    }

    fn lcc(&self, cache: Option<&InvariantCache>, g: &Graph) -> Result<usize, HarnessError> {
        match cache {
            Some(c) => Ok(self.bundle(c, g)?.lcc),
            None => {
                self.solver.fetch_add(1, Ordering::Relaxed);
                Ok(lcc_exact(g).0)
            }
        }
    }
}

fn check_one(
    g: &Graph,
    opts: &SweepOptions,
    cache: Option<&InvariantCache>,
    counters: &Counters,
) -> Result<ConjectureReport, HarnessError> {
    let graph6 = g.to_graph6()?;
    let co = g.complement();
    let (lcc, chi) = match cache {
        Some(c) => {
            let b = counters.bundle(c, g)?;
            (b.lcc, b.chi)
        }
        None => {
            counters.solver.fetch_add(1, Ordering::Relaxed);
            (lcc_exact(g).0, chromatic_number(g).0)
        }
    };
    let lcc_complement = counters.lcc(cache, &co)?;
    let mut report = ConjectureReport::new(graph6, g.order(), lcc, lcc_complement, chi);
    if opts.lemma {
        let h = g.disjoint_union_with_isolated()?;
        report.lemma = Some(counters.lcc(cache, &h)? == lcc);
    }
    Ok(report)
}

/// Checks both conjectures on every graph of `source`, passing reports to
/// `sink` in stream order.
///
/// Graphs are processed in parallel batches; a graph whose check fails is
/// logged and counted in `errors` rather than aborting the sweep.
pub fn check_conjectures<I, F>(
    source: I,
    opts: &SweepOptions,
    cache: Option<&InvariantCache>,
    mut sink: F,
) -> Result<(SweepSummary, SweepStats), HarnessError>
where
    I: IntoIterator<Item = Graph>,
    F: FnMut(&ConjectureReport) -> Result<(), HarnessError>,
{
    let pool = thread_pool(opts.threads)?;
    let counters = Counters {
        solver: AtomicU64::new(0),
        hits: AtomicU64::new(0),
        audits: AtomicU64::new(0),
        audit_failures: AtomicU64::new(0),
        salt: rand::random(),
    };
    let mut summary = SweepSummary::default();
    let mut source = source.into_iter();
    loop {
        let batch: Vec<Graph> = source.by_ref().take(CHUNK).collect();
        if batch.is_empty() {
            break;
        }
        let results: Vec<_> = pool.install(|| {
            batch
                .par_iter()
                .map(|g| check_one(g, opts, cache, &counters))
                .collect()
        });
        for result in results {
            match result {
                Ok(report) => {
                    summary.record(&report, opts.which);
                    sink(&report)?;
                }
                Err(e) => {
                    log::warn!("graph skipped: {e}");
                    summary.errors += 1;
                }
            }
        }
        if opts.stop_on_violation && summary.violations() > 0 {
            break;
        }
    }
    if let Some(c) = cache {
        c.flush()?;
    }
    let stats = SweepStats {
        solver_invocations: counters.solver.into_inner(),
        cache_hits: counters.hits.into_inner(),
        audits: counters.audits.into_inner(),
        audit_failures: counters.audit_failures.into_inner(),
    };
    Ok((summary, stats))
}
