//! Explicit clique-cover constructions, each returned as a certificate that
//! carries the valency bound it is meant to achieve.
//!
//! | method        | precondition  | claimed bound                                   |
//! |---------------|---------------|-------------------------------------------------|
//! | `alpha2`      | `α(G) = 2`    | every valency `<= δ(G) + 1`                     |
//! | `max_clique`  | none          | every valency `<= n + 1 - ω(G)`                 |
//! | `local_alpha` | none          | `val(v) + n / α_G(v) <= n + 1`, `v` non-isolated |
//! | `claw_free`   | claw-free     | every valency `<= n + 1 - χ(G)`                 |

use serde::Serialize;
use thiserror::Error;

use crate::cover::{lcc_exact, ClaimedBound, CliqueCover, CoverCertificate, Method};
use crate::graph::{Graph, VertexSet};
use crate::invariants::{
    chromatic_number, clique_number, find_claw, independence_number, max_independent_in,
    maximum_matching_in, vertex_clique_partition, Claw,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("construction requires independence number 2, graph has {0}")]
    AlphaNotTwo(usize),
    #[error("graph is not claw-free: center {} with leaves {:?}", .0.center, .0.leaves)]
    NotClawFree(Claw),
    #[error("split pair requires alpha = 2 and chi > max(omega, 2); got alpha {alpha}, chi {chi}, omega {omega}")]
    SplitPrecondition {
        alpha: usize,
        chi: usize,
        omega: usize,
    },
    #[error("theorem gap: no adjacent pair leaves chromatic number >= {needed} after removal")]
    TheoremGap { needed: usize },
}

/// An adjacent pair whose removal drops the chromatic number by at most one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitPair {
    pub u1: usize,
    pub u2: usize,
    /// `χ(G - {u1, u2})`.
    pub chi_remainder: usize,
}

/// Appends every edge not covered by `cliques` as a `K_2`.
fn with_leftover_edges(g: &Graph, cliques: Vec<VertexSet>) -> CliqueCover {
    let mut cover = CliqueCover::from_cliques(g.order(), cliques);
    let covered = cover.covered();
    for (u, v) in g.edges() {
        if !covered[u].contains(v) {
            cover.push(VertexSet::singleton(u).with(v));
        }
    }
    cover
}

/// Cover for graphs with `α(G) = 2` whose valencies stay within `δ(G) + 1`.
///
/// With `v` the first vertex of minimum degree and `K` its non-neighbors
/// (a clique, as `α = 2`): one clique `(N(u) ∩ K) + u` per neighbor `u` of
/// `v`, the clique `K`, then the remaining edges as `K_2`s. Cliques with a
/// single vertex are dropped.
pub fn cover_alpha2(g: &Graph) -> Result<CoverCertificate, ConstructionError> {
    let (alpha, _) = independence_number(g);
    if alpha != 2 {
        return Err(ConstructionError::AlphaNotTwo(alpha));
    }
    let delta = g.min_degree();
    let v = (0..g.order())
        .find(|&v| g.degree(v) == delta)
        .expect("alpha = 2 implies n >= 2");
    let k = g.vertices() - g.closed_neighbors(v);
    debug_assert!(g.is_clique(k));
    let mut cliques: Vec<VertexSet> = g
        .neighbors(v)
        .iter()
        .map(|u| (g.neighbors(u) & k).with(u))
        .filter(|c| c.len() >= 2)
        .collect();
    if k.len() >= 2 {
        cliques.push(k);
    }
    let cover = with_leftover_edges(g, cliques);
    Ok(CoverCertificate::certify(
        g,
        Method::Alpha2,
        ClaimedBound::MaxValency { limit: delta + 1 },
        cover,
    ))
}

/// Cover built around a maximum clique `K`: `(N(v) ∩ K) + v` for every
/// `v` outside `K`, then `K`, then leftover edges.
pub fn cover_max_clique(g: &Graph) -> CoverCertificate {
    let n = g.order();
    let (omega, k) = clique_number(g);
    let mut cliques: Vec<VertexSet> = (g.vertices() - k)
        .iter()
        .map(|v| (g.neighbors(v) & k).with(v))
        .filter(|c| c.len() >= 2)
        .collect();
    if k.len() >= 2 {
        cliques.push(k);
    }
    let cover = with_leftover_edges(g, cliques);
    CoverCertificate::certify(
        g,
        Method::MaxClique,
        ClaimedBound::MaxValency {
            limit: n + 1 - omega,
        },
        cover,
    )
}

/// Cover in which every non-isolated `v` has `val(v) + n / α_G(v) <= n + 1`.
///
/// Recursive: remove the first edge `xy`, cover `G - {x, y}`, then patch the
/// cover around `x` and `y`.
pub fn cover_local_alpha(g: &Graph) -> CoverCertificate {
    let cliques = local_alpha_rec(g, g.vertices());
    CoverCertificate::certify(
        g,
        Method::LocalAlpha,
        ClaimedBound::local_alpha(g),
        CliqueCover::from_cliques(g.order(), cliques),
    )
}

fn maximal_cliques_within(g: &Graph, active: VertexSet) -> Vec<VertexSet> {
    fn rec(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        for v in p {
            rec(g, r.with(v), p & g.neighbors(v), x & g.neighbors(v), out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    rec(g, VertexSet::EMPTY, active, VertexSet::EMPTY, &mut out);
    out.retain(|c| c.len() >= 2);
    out.sort();
    out
}

/// Cliques of a good cover of `G[active]`, in original labels.
fn local_alpha_rec(g: &Graph, active: VertexSet) -> Vec<VertexSet> {
    let nb = |v: usize| g.neighbors(v) & active;
    let Some(x) = active.iter().find(|&v| !nb(v).is_empty()) else {
        return Vec::new();
    };
    if active.len() <= 3 {
        return maximal_cliques_within(g, active);
    }
    let y = nb(x).first().expect("x has a neighbor");
    let rest = active.without(x).without(y);
    let mut cover = local_alpha_rec(g, rest);

    let alpha = |v: usize| max_independent_in(g, nb(v)).len();
    let (nx, ny) = (nb(x), nb(y));
    let n1 = nx - ny.with(y);
    let n2 = ny - nx.with(x);
    let n12 = nx & ny;

    // Step 1: a vertex u with α_G(u) = 1 sits in exactly one clique of the
    // smaller cover, namely its closed neighborhood there; grow it to N_G[u].
    for u in n1 | n2 | n12 {
        let inner = g.neighbors(u) & rest;
        if inner.is_empty() || alpha(u) != 1 {
            continue;
        }
        let target = nb(u).with(u);
        match cover.iter().position(|&c| c == inner.with(u)) {
            Some(i) => cover[i] = target,
            None if cover.contains(&target) => {}
            None => cover.push(target),
        }
    }

    // Step 2
    let (ax, ay) = (alpha(x), alpha(y));
    if ax == 1 || ay == 1 {
        let closed = if ax == 1 { nx.with(x) } else { ny.with(y) };
        if !cover.contains(&closed) {
            cover.push(closed);
        }
    }

    // Step 3: cover the remaining edges at x, y by a maximum matching of
    // the uncovered neighbors plus singletons, each part joined to x, y or both.
    let reach = |cover: &[VertexSet], w: usize| -> VertexSet {
        cover
            .iter()
            .filter(|c| c.contains(w))
            .fold(VertexSet::EMPTY, |acc, &c| acc | c)
    };
    let (cx, cy) = (reach(&cover, x), reach(&cover, y));
    let n1_open = n1 - cx;
    let n2_open = n2 - cy;
    let n12_open = n12 - (cx & cy);
    let hub_x = VertexSet::singleton(x);
    let hub_y = VertexSet::singleton(y);
    for (open, hub) in [
        (n1_open, hub_x),
        (n2_open, hub_y),
        (n12_open, hub_x | hub_y),
    ] {
        cover.extend(matching_parts(g, open).into_iter().map(|p| p | hub));
    }

    // Step 4
    if !cover.iter().any(|c| c.contains(x) && c.contains(y)) {
        cover.push(hub_x | hub_y);
    }
    cover
}

/// Splits `s` into the edges of a maximum matching of `G[s]` and the
/// unmatched vertices as singletons.
fn matching_parts(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let mut parts = Vec::new();
    let mut left = s;
    for (u, v) in maximum_matching_in(g, s) {
        parts.push(VertexSet::singleton(u).with(v));
        left = left.without(u).without(v);
    }
    parts.extend(left.iter().map(VertexSet::singleton));
    parts
}

/// First adjacent pair `(u1, u2)` in edge order with
/// `χ(G - {u1, u2}) >= χ(G) - 1`, for graphs with `α = 2` and
/// `χ > max(ω, 2)`.
pub fn find_split_pair(g: &Graph) -> Result<SplitPair, ConstructionError> {
    let (alpha, _) = independence_number(g);
    let (chi, _) = chromatic_number(g);
    let (omega, _) = clique_number(g);
    if alpha != 2 || chi <= omega.max(2) {
        return Err(ConstructionError::SplitPrecondition { alpha, chi, omega });
    }
    split_pair_unchecked(g, chi)
}

fn split_pair_unchecked(g: &Graph, chi: usize) -> Result<SplitPair, ConstructionError> {
    for (u1, u2) in g.edges() {
        let (rest, _) = g.remove_vertices(VertexSet::singleton(u1).with(u2));
        let (chi_remainder, _) = chromatic_number(&rest);
        if chi_remainder + 1 >= chi {
            return Ok(SplitPair {
                u1,
                u2,
                chi_remainder,
            });
        }
    }
    Err(ConstructionError::TheoremGap { needed: chi - 1 })
}

/// Cover of a claw-free graph with every valency at most `n + 1 - χ(G)`.
pub fn cover_claw_free(g: &Graph) -> Result<CoverCertificate, ConstructionError> {
    if let Some(claw) = find_claw(g) {
        return Err(ConstructionError::NotClawFree(claw));
    }
    let (chi, _) = chromatic_number(g);
    let cover = claw_free_rec(g)?;
    Ok(CoverCertificate::certify(
        g,
        Method::ClawFree,
        ClaimedBound::MaxValency {
            limit: g.order() + 1 - chi,
        },
        cover,
    ))
}

fn first_independent_triple(g: &Graph) -> Option<VertexSet> {
    let n = g.order();
    for a in 0..n {
        let after_a = g.vertices() - VertexSet::full(a + 1) - g.neighbors(a);
        for b in after_a {
            let after_b = after_a - VertexSet::full(b + 1) - g.neighbors(b);
            if let Some(c) = after_b.first() {
                return Some(VertexSet::singleton(a).with(b).with(c));
            }
        }
    }
    None
}

fn claw_free_rec(g: &Graph) -> Result<CliqueCover, ConstructionError> {
    let n = g.order();
    if g.edge_count() == 0 {
        return Ok(CliqueCover::new(n));
    }
    if n <= 4 {
        return Ok(lcc_exact(g).1);
    }
    let (alpha, _) = independence_number(g);
    if alpha == 1 {
        return Ok(CliqueCover::from_cliques(n, [g.vertices()]));
    }
    if alpha >= 3 {
        let t = first_independent_triple(g).expect("alpha >= 3");
        let (rest, map) = g.remove_vertices(t);
        let mut cover = claw_free_rec(&rest)?.relabel(n, &map);
        let before = cover.valency().to_vec();
        for u in t {
            for part in vertex_clique_partition(g, g.neighbors(u)) {
                cover.push(part.with(u));
            }
        }
        for x in g.vertices() - t {
            let gained = cover.valency()[x] - before[x];
            let hits = (g.neighbors(x) & t).len();
            assert!(
                gained <= hits && hits <= 2,
                "vertex {x} gained {gained} from {hits} triple neighbors"
            );
        }
        return Ok(cover);
    }

    let (chi, _) = chromatic_number(g);
    let (omega, _) = clique_number(g);
    if chi == omega {
        return Ok(cover_max_clique(g).cover);
    }
    let SplitPair { u1, u2, .. } = split_pair_unchecked(g, chi)?;
    let pair = VertexSet::singleton(u1).with(u2);
    let (rest, map) = g.remove_vertices(pair);
    let mut cover = claw_free_rec(&rest)?.relabel(n, &map);
    let n1 = g.neighbors(u1) - g.closed_neighbors(u2);
    let n2 = g.neighbors(u2) - g.closed_neighbors(u1);
    let n12 = g.neighbors(u1) & g.neighbors(u2);
    for (side, hub) in [(n1, u1), (n2, u2)] {
        if !side.is_empty() {
            debug_assert!(g.is_clique(side), "claw-free side must be a clique");
            cover.push(side.with(hub));
        }
    }
    if n12.is_empty() {
        cover.push(pair);
    } else {
        for part in vertex_clique_partition(g, n12) {
            cover.push(part | pair);
        }
    }
    Ok(cover)
}
