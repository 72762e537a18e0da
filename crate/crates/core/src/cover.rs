//! Clique covers and clique partitions of edge sets, their validation, and
//! the exact solvers for the local clique cover number (`lcc`), the sigma
//! clique partition number (`scp`) and the clique partition number (`cp`).

use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::invariants::{clique_number, local_alphas, max_independent_in};

/// Largest order accepted by [`scp_exact`] and [`cp_exact`].
pub const PARTITION_SOLVER_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("clique {clique} is empty")]
    EmptyClique { clique: usize },
    #[error("clique {clique} contains vertex {vertex} outside the graph")]
    VertexOutOfRange { clique: usize, vertex: usize },
    #[error("clique {clique} contains non-adjacent pair ({u}, {v})")]
    NotAClique { clique: usize, u: usize, v: usize },
    #[error("edge ({u}, {v}) is not covered")]
    UncoveredEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) lies in more than one part")]
    EdgeCoveredTwice { u: usize, v: usize },
    #[error("stored valency of vertex {vertex} is {stored}, recomputed {actual}")]
    ValencyMismatch {
        vertex: usize,
        stored: usize,
        actual: usize,
    },
    #[error("cover built for {cover} vertices, graph has {graph}")]
    OrderMismatch { cover: usize, graph: usize },
    #[error("exact partition solver limited to n <= {max}, got n = {n}")]
    SizeGuard { n: usize, max: usize },
}

/// A family of cliques covering the edges of a graph, with valencies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCover {
    n: usize,
    cliques: Vec<VertexSet>,
    valency: Vec<usize>,
}

impl CliqueCover {
    pub fn new(n: usize) -> Self {
        CliqueCover {
            n,
            cliques: Vec::new(),
            valency: vec![0; n],
        }
    }

    pub fn from_cliques(n: usize, cliques: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut cover = CliqueCover::new(n);
        for c in cliques {
            cover.push(c);
        }
        cover
    }

    /// Covers every edge by its own `K_2`.
    pub fn edges_of(g: &Graph) -> Self {
        CliqueCover::from_cliques(
            g.order(),
            g.edges().map(|(u, v)| VertexSet::singleton(u).with(v)),
        )
    }

    pub fn push(&mut self, clique: VertexSet) {
        for v in clique & VertexSet::full(self.n) {
            self.valency[v] += 1;
        }
        self.cliques.push(clique);
    }

    /// Replaces clique `i`, keeping the valencies in step.
    pub fn replace(&mut self, i: usize, clique: VertexSet) {
        let full = VertexSet::full(self.n);
        for v in self.cliques[i] & full {
            self.valency[v] -= 1;
        }
        for v in clique & full {
            self.valency[v] += 1;
        }
        self.cliques[i] = clique;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn valency(&self) -> &[usize] {
        &self.valency
    }

    pub fn max_valency(&self) -> usize {
        self.valency.iter().copied().max().unwrap_or(0)
    }

    /// Adjacency masks of the edges lying in at least one clique.
    pub fn covered(&self) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for &c in &self.cliques {
            for v in c & VertexSet::full(self.n) {
                adj[v] |= c.without(v);
            }
        }
        adj
    }

    /// Rewrites vertex labels through `map` into a cover on `n` vertices.
    pub fn relabel(&self, n: usize, map: &[usize]) -> CliqueCover {
        CliqueCover::from_cliques(
            n,
            self.cliques
                .iter()
                .map(|c| c.iter().map(|v| map[v]).collect()),
        )
    }
}

impl Serialize for CliqueCover {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.cliques.iter())
    }
}

/// Per-vertex valencies recomputed by [`validate_cover`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverCheck {
    pub max_valency: usize,
    pub per_vertex: Vec<usize>,
}

fn check_cliques(g: &Graph, cliques: &[VertexSet]) -> Result<Vec<usize>, CoverError> {
    let n = g.order();
    let full = g.vertices();
    let mut valency = vec![0; n];
    for (i, &c) in cliques.iter().enumerate() {
        if c.is_empty() {
            return Err(CoverError::EmptyClique { clique: i });
        }
        if let Some(vertex) = (c - full).first() {
            return Err(CoverError::VertexOutOfRange { clique: i, vertex });
        }
        for u in c {
            if let Some(v) = (c.without(u) - g.neighbors(u)).first() {
                let (u, v) = (u.min(v), u.max(v));
                return Err(CoverError::NotAClique { clique: i, u, v });
            }
            valency[u] += 1;
        }
    }
    Ok(valency)
}

/// Checks that every clique is a clique of `g` and every edge is covered,
/// and recomputes the valencies from scratch.
pub fn validate_cover(g: &Graph, cover: &CliqueCover) -> Result<CoverCheck, CoverError> {
    if cover.order() != g.order() {
        return Err(CoverError::OrderMismatch {
            cover: cover.order(),
            graph: g.order(),
        });
    }
    let per_vertex = check_cliques(g, cover.cliques())?;
    for (u, v) in g.edges() {
        if !cover
            .cliques()
            .iter()
            .any(|c| c.contains(u) && c.contains(v))
        {
            return Err(CoverError::UncoveredEdge { u, v });
        }
    }
    for (vertex, (&stored, &actual)) in cover.valency().iter().zip(&per_vertex).enumerate() {
        if stored != actual {
            return Err(CoverError::ValencyMismatch {
                vertex,
                stored,
                actual,
            });
        }
    }
    Ok(CoverCheck {
        max_valency: per_vertex.iter().copied().max().unwrap_or(0),
        per_vertex,
    })
}

/// A family of cliques in which every edge lies in exactly one member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePartition {
    n: usize,
    cliques: Vec<VertexSet>,
}

impl CliquePartition {
    pub fn new(n: usize, cliques: Vec<VertexSet>) -> Self {
        CliquePartition { n, cliques }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    /// Number of parts.
    pub fn count(&self) -> usize {
        self.cliques.len()
    }

    /// Sum of part sizes.
    pub fn sigma(&self) -> usize {
        self.cliques.iter().map(|c| c.len()).sum()
    }
}

impl Serialize for CliquePartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.cliques.iter())
    }
}

pub fn validate_partition(g: &Graph, partition: &CliquePartition) -> Result<(), CoverError> {
    if partition.order() != g.order() {
        return Err(CoverError::OrderMismatch {
            cover: partition.order(),
            graph: g.order(),
        });
    }
    check_cliques(g, partition.cliques())?;
    for (u, v) in g.edges() {
        let hits = partition
            .cliques()
            .iter()
            .filter(|c| c.contains(u) && c.contains(v))
            .count();
        match hits {
            0 => return Err(CoverError::UncoveredEdge { u, v }),
            1 => {}
            _ => return Err(CoverError::EdgeCoveredTwice { u, v }),
        }
    }
    Ok(())
}

/// All cliques of `G[pool]`, including the empty one, largest first and
/// lexicographic by bit pattern within a size.
fn cliques_within(g: &Graph, pool: VertexSet) -> Vec<VertexSet> {
    fn rec(g: &Graph, cand: VertexSet, cur: VertexSet, out: &mut Vec<VertexSet>) {
        out.push(cur);
        for v in cand {
            let rest = cand - VertexSet::full(v + 1);
            rec(g, rest & g.neighbors(v), cur.with(v), out);
        }
    }
    let mut out = Vec::new();
    rec(g, pool, VertexSet::EMPTY, &mut out);
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

struct LccSearch<'a> {
    g: &'a Graph,
    k: usize,
    uncovered: Vec<VertexSet>,
    valency: Vec<usize>,
    chosen: Vec<VertexSet>,
}

impl LccSearch<'_> {
    fn run(&mut self) -> bool {
        let n = self.g.order();
        let Some(u) = (0..n).find(|&u| !self.uncovered[u].is_empty()) else {
            return true;
        };
        let v = self.uncovered[u].first().expect("nonempty");

        // every vertex with an open edge needs one new clique per vertex of
        // an independent set among its uncovered neighbors
        for w in 0..n {
            let open = self.uncovered[w];
            if open.is_empty() {
                continue;
            }
            if self.valency[w] >= self.k {
                return false;
            }
            if open.len() > 1 && self.valency[w] + max_independent_in(self.g, open).len() > self.k {
                return false;
            }
        }

        let saturated: VertexSet = (0..n).filter(|&w| self.valency[w] >= self.k).collect();
        let pool = (self.g.neighbors(u) & self.g.neighbors(v)) - saturated;
        let base = VertexSet::singleton(u).with(v);
        for extra in cliques_within(self.g, pool) {
            let clique = base | extra;
            // a vertex meeting no uncovered edge inside the clique only
            // raises its own valency
            if extra
                .iter()
                .any(|w| (self.uncovered[w] & clique).is_empty())
            {
                continue;
            }
            let saved: Vec<(usize, VertexSet)> =
                clique.iter().map(|w| (w, self.uncovered[w])).collect();
            for w in clique {
                self.valency[w] += 1;
                self.uncovered[w] = self.uncovered[w] - clique;
            }
            self.chosen.push(clique);
            if self.run() {
                return true;
            }
            self.chosen.pop();
            for (w, s) in saved {
                self.valency[w] -= 1;
                self.uncovered[w] = s;
            }
        }
        false
    }
}

/// Decides whether `g` has a clique cover with every valency at most `k`,
/// returning a witness when it does.
///
/// Branches on the lexicographically first uncovered edge `(u, v)` over
/// every clique of `G[N(u) ∩ N(v)]` extended by `{u, v}`.
pub fn lcc_decide(g: &Graph, k: usize) -> Option<CliqueCover> {
    let mut search = LccSearch {
        g,
        k,
        uncovered: (0..g.order()).map(|v| g.neighbors(v)).collect(),
        valency: vec![0; g.order()],
        chosen: Vec::new(),
    };
    if search.run() {
        Some(CliqueCover::from_cliques(g.order(), search.chosen))
    } else {
        None
    }
}

/// Lower bound `max(α_L(G), ⌈Δ/(ω−1)⌉)` used to seed [`lcc_exact`].
pub fn lcc_lower_bound(g: &Graph) -> usize {
    let alpha_l = local_alphas(g).into_iter().max().unwrap_or(0);
    let (omega, _) = clique_number(g);
    let ratio = if omega >= 2 {
        g.max_degree().div_ceil(omega - 1)
    } else {
        0
    };
    alpha_l.max(ratio)
}

/// `lcc(G)` with a witness cover attaining it.
pub fn lcc_exact(g: &Graph) -> (usize, CliqueCover) {
    let delta = g.max_degree();
    for k in lcc_lower_bound(g)..delta {
        if let Some(cover) = lcc_decide(g, k) {
            return (k, cover);
        }
    }
    (delta, CliqueCover::edges_of(g))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PartitionCost {
    Sigma,
    Count,
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    cost: PartitionCost,
    omega: usize,
    uncovered: Vec<VertexSet>,
    remaining: usize,
    chosen: Vec<VertexSet>,
    spent: usize,
    best: usize,
    best_parts: Vec<VertexSet>,
}

impl PartitionSearch<'_> {
    fn lower_bound(&self) -> usize {
        if self.remaining == 0 {
            return 0;
        }
        let w = self.omega.max(2);
        match self.cost {
            // a part of size s covers s(s-1)/2 edges at cost s
            PartitionCost::Sigma => (2 * self.remaining).div_ceil(w - 1),
            PartitionCost::Count => self.remaining.div_ceil(w * (w - 1) / 2),
        }
    }

    fn run(&mut self) {
        if self.spent + self.lower_bound() >= self.best {
            return;
        }
        let n = self.g.order();
        let Some(u) = (0..n).find(|&u| !self.uncovered[u].is_empty()) else {
            self.best = self.spent;
            self.best_parts = self.chosen.clone();
            return;
        };
        let v = self.uncovered[u].first().expect("nonempty");
        // parts must avoid edges that are already used, so grow cliques in
        // the graph of uncovered edges
        let pool = self.uncovered[u] & self.uncovered[v];
        let open = UncoveredView(&self.uncovered);
        let base = VertexSet::singleton(u).with(v);
        let candidates = open.cliques_within(pool);
        for extra in candidates {
            let clique = base | extra;
            let size = clique.len();
            let saved: Vec<(usize, VertexSet)> =
                clique.iter().map(|w| (w, self.uncovered[w])).collect();
            for w in clique {
                self.uncovered[w] = self.uncovered[w] - clique;
            }
            let step = match self.cost {
                PartitionCost::Sigma => size,
                PartitionCost::Count => 1,
            };
            self.remaining -= size * (size - 1) / 2;
            self.spent += step;
            self.chosen.push(clique);
            self.run();
            self.chosen.pop();
            self.spent -= step;
            self.remaining += size * (size - 1) / 2;
            for (w, s) in saved {
                self.uncovered[w] = s;
            }
        }
    }
}

struct UncoveredView<'a>(&'a [VertexSet]);

impl UncoveredView<'_> {
    fn cliques_within(&self, pool: VertexSet) -> Vec<VertexSet> {
        fn rec(adj: &[VertexSet], cand: VertexSet, cur: VertexSet, out: &mut Vec<VertexSet>) {
            out.push(cur);
            for v in cand {
                let rest = cand - VertexSet::full(v + 1);
                rec(adj, rest & adj[v], cur.with(v), out);
            }
        }
        let mut out = Vec::new();
        rec(self.0, pool, VertexSet::EMPTY, &mut out);
        out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        out
    }
}

fn partition_exact(g: &Graph, cost: PartitionCost) -> Result<(usize, CliquePartition), CoverError> {
    let n = g.order();
    if n > PARTITION_SOLVER_MAX_N {
        return Err(CoverError::SizeGuard {
            n,
            max: PARTITION_SOLVER_MAX_N,
        });
    }
    let m = g.edge_count();
    let edges: Vec<VertexSet> = g
        .edges()
        .map(|(u, v)| VertexSet::singleton(u).with(v))
        .collect();
    let trivial = match cost {
        PartitionCost::Sigma => 2 * m,
        PartitionCost::Count => m,
    };
    let mut search = PartitionSearch {
        g,
        cost,
        omega: clique_number(g).0,
        uncovered: (0..n).map(|v| g.neighbors(v)).collect(),
        remaining: m,
        chosen: Vec::new(),
        spent: 0,
        best: trivial,
        best_parts: edges,
    };
    search.run();
    Ok((search.best, CliquePartition::new(n, search.best_parts)))
}

/// `scp(G)`: the minimum total size of a clique partition of `E(G)`.
pub fn scp_exact(g: &Graph) -> Result<(usize, CliquePartition), CoverError> {
    partition_exact(g, PartitionCost::Sigma)
}

/// `cp(G)`: the minimum number of parts of a clique partition of `E(G)`.
pub fn cp_exact(g: &Graph) -> Result<(usize, CliquePartition), CoverError> {
    partition_exact(g, PartitionCost::Count)
}

/// Which construction (or solver) produced a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Alpha2,
    MaxClique,
    LocalAlpha,
    ClawFree,
    Exact,
}

impl Method {
    pub const CONSTRUCTIONS: [Method; 4] = [
        Method::Alpha2,
        Method::MaxClique,
        Method::LocalAlpha,
        Method::ClawFree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Alpha2 => "alpha2",
            Method::MaxClique => "max_clique",
            Method::LocalAlpha => "local_alpha",
            Method::ClawFree => "claw_free",
            Method::Exact => "exact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The bound a certificate claims for its cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimedBound {
    /// Every valency is at most `limit`.
    MaxValency { limit: usize },
    /// Every non-isolated `v` has `val(v) + n / α_G(v) <= n + 1`.
    LocalAlpha { n: usize, local_alpha: Vec<usize> },
}

impl ClaimedBound {
    pub fn local_alpha(g: &Graph) -> Self {
        ClaimedBound::LocalAlpha {
            n: g.order(),
            local_alpha: local_alphas(g),
        }
    }

    /// Whether vertex `v` with valency `val` meets the bound, in exact
    /// rationals.
    pub fn vertex_ok(&self, v: usize, val: usize) -> bool {
        match self {
            ClaimedBound::MaxValency { limit } => val <= *limit,
            ClaimedBound::LocalAlpha { n, local_alpha } => {
                let a = local_alpha[v];
                a == 0
                    || Ratio::from_integer(val as i64) + Ratio::new(*n as i64, a as i64)
                        <= Ratio::from_integer(*n as i64 + 1)
            }
        }
    }

    pub fn is_met(&self, val: &[usize]) -> bool {
        val.iter().enumerate().all(|(v, &x)| self.vertex_ok(v, x))
    }

    /// Vertices violating the bound.
    pub fn violations(&self, val: &[usize]) -> Vec<usize> {
        (0..val.len())
            .filter(|&v| !self.vertex_ok(v, val[v]))
            .collect()
    }
}

/// A cover together with the bound it claims and the checked verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub method: Method,
    pub bound: ClaimedBound,
    pub cover: CliqueCover,
    /// Failure reason when the cover does not validate.
    pub error: Option<CoverError>,
    pub verdict: bool,
}

impl CoverCertificate {
    /// Validates `cover` against `g` and evaluates `bound` on the
    /// recomputed valencies.
    pub fn certify(g: &Graph, method: Method, bound: ClaimedBound, cover: CliqueCover) -> Self {
        let (verdict, error) = match validate_cover(g, &cover) {
            Ok(check) => (bound.is_met(&check.per_vertex), None),
            Err(e) => (false, Some(e)),
        };
        CoverCertificate {
            method,
            bound,
            cover,
            error,
            verdict,
        }
    }
}

impl Serialize for CoverCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CoverCertificate", 7)?;
        s.serialize_field("method", &self.method)?;
        s.serialize_field("bound", &self.bound)?;
        s.serialize_field("max_valency", &self.cover.max_valency())?;
        s.serialize_field("valency", self.cover.valency())?;
        s.serialize_field("cliques", &self.cover)?;
        s.serialize_field("verdict", &self.verdict)?;
        s.serialize_field("error", &self.error.as_ref().map(|e| e.to_string()))?;
        s.end()
    }
}
