use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    cover_alpha2, cover_claw_free, cover_local_alpha, cover_max_clique, ConstructionError,
};
use crate::cover::{CoverCertificate, Method};
use crate::graph::Graph;

use super::{thread_pool, HarnessError};

const CHUNK: usize = 4096;

/// A graph meeting the precondition whose certificate did not verify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteFailure {
    pub graph6: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub method: Method,
    pub total: u64,
    /// Graphs meeting the precondition.
    pub applied: u64,
    /// Applied graphs whose certificate verdict is true.
    pub verified: u64,
    pub failures: Vec<SuiteFailure>,
    /// Skip reason to count.
    pub skipped: BTreeMap<&'static str, u64>,
}

enum Outcome {
    Certified(CoverCertificate),
    Skipped(&'static str),
    Failed(String),
}

fn apply(g: &Graph, method: Method) -> Outcome {
    let result = match method {
        Method::Alpha2 => cover_alpha2(g),
        Method::MaxClique => Ok(cover_max_clique(g)),
        Method::LocalAlpha => Ok(cover_local_alpha(g)),
        Method::ClawFree => cover_claw_free(g),
        Method::Exact => unreachable!("rejected before the sweep"),
    };
    match result {
        Ok(cert) => Outcome::Certified(cert),
        Err(ConstructionError::AlphaNotTwo(_)) => Outcome::Skipped("alpha_not_2"),
        Err(ConstructionError::NotClawFree(_)) => Outcome::Skipped("not_claw_free"),
        Err(e) => Outcome::Failed(e.to_string()),
    }
}

/// Applies the construction `method` to every graph of `source` meeting its
/// precondition and checks each certificate.
pub fn run_construction_suite<I>(
    source: I,
    method: Method,
    threads: usize,
) -> Result<SuiteSummary, HarnessError>
where
    I: IntoIterator<Item = Graph>,
{
    if method == Method::Exact {
        return Err(HarnessError::NotAConstruction(method));
    }
    let pool = thread_pool(threads)?;
    let mut summary = SuiteSummary {
        method,
        total: 0,
        applied: 0,
        verified: 0,
        failures: Vec::new(),
        skipped: BTreeMap::new(),
    };
    let mut source = source.into_iter();
    loop {
        let batch: Vec<Graph> = source.by_ref().take(CHUNK).collect();
        if batch.is_empty() {
            break;
        }
        let outcomes: Vec<Outcome> =
            pool.install(|| batch.par_iter().map(|g| apply(g, method)).collect());
        for (g, outcome) in batch.iter().zip(outcomes) {
            summary.total += 1;
            let reason = match outcome {
                Outcome::Skipped(why) => {
                    *summary.skipped.entry(why).or_default() += 1;
                    continue;
                }
                Outcome::Certified(cert) if cert.verdict => {
                    summary.applied += 1;
                    summary.verified += 1;
                    continue;
                }
                Outcome::Certified(cert) => match cert.error {
                    Some(e) => e.to_string(),
                    None => format!("bound not met: valencies {:?}", cert.cover.valency()),
                },
                Outcome::Failed(reason) => reason,
            };
            summary.applied += 1;
            summary.failures.push(SuiteFailure {
                graph6: g.to_graph6().unwrap_or_else(|_| format!("{g:?}")),
                reason,
            });
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::enumerate_labeled_graphs;
    use crate::invariants::{independence_number, is_claw_free};

    #[test]
    fn every_construction_on_five_vertices() {
        for method in Method::CONSTRUCTIONS {
            let s =
                run_construction_suite(enumerate_labeled_graphs(5).unwrap(), method, 2).unwrap();
            assert_eq!(s.total, 1024);
            assert!(s.failures.is_empty(), "{method}: {:?}", s.failures);
            assert_eq!(s.applied, s.verified);
            assert_eq!(s.applied + s.skipped.values().sum::<u64>(), s.total);
        }
    }

    #[test]
    fn preconditions_select_graphs() {
        let all: Vec<Graph> = enumerate_labeled_graphs(5).unwrap().collect();
        let alpha2 = all.iter().filter(|g| independence_number(g).0 == 2).count() as u64;
        let claw_free = all.iter().filter(|g| is_claw_free(g)).count() as u64;
        let s = run_construction_suite(all.clone(), Method::Alpha2, 1).unwrap();
        assert_eq!(s.applied, alpha2);
        let s = run_construction_suite(all.clone(), Method::ClawFree, 1).unwrap();
        assert_eq!(s.applied, claw_free);
        let s = run_construction_suite(all, Method::MaxClique, 1).unwrap();
        assert_eq!(s.applied, 1024);
    }

    #[test]
    fn exact_is_rejected() {
        assert!(matches!(
            run_construction_suite(Vec::new(), Method::Exact, 1),
            Err(HarnessError::NotAConstruction(Method::Exact))
        ));
    }
}
