//! Exact classical invariants: independence, clique and chromatic numbers,
//! local independence, claw detection, clique partitions of vertex sets and
//! maximum matchings. All routines are exponential and meant for small graphs.

use std::collections::HashMap;

use serde::Serialize;

use crate::graph::{Graph, GraphError, VertexSet};

/// A maximum independent set of `G[cand]`.
///
/// Branches on a vertex of highest degree inside the candidate set
/// (lowest index on ties), pruning when the remaining candidates cannot
/// beat the incumbent.
pub fn max_independent_in(g: &Graph, cand: VertexSet) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    independent_rec(g, cand, VertexSet::EMPTY, &mut best);
    best
}

fn independent_rec(g: &Graph, mut cand: VertexSet, chosen: VertexSet, best: &mut VertexSet) {
    // vertices with no neighbor among the candidates can always be taken
    let mut chosen = chosen;
    loop {
        let free: VertexSet = cand
            .iter()
            .filter(|&v| (g.neighbors(v) & cand).is_empty())
            .collect();
        if free.is_empty() {
            break;
        }
        chosen |= free;
        cand = cand - free;
    }
    if chosen.len() + cand.len() <= best.len() {
        return;
    }
    if cand.is_empty() {
        *best = chosen;
        return;
    }
    // greedy coloring bound: an independent set meets each clique of a
    // clique cover at most once
    if chosen.len() + clique_cover_bound(g, cand) <= best.len() {
        return;
    }
    let mut pivot = usize::MAX;
    let mut pivot_deg = 0;
    for v in cand {
        let d = (g.neighbors(v) & cand).len();
        if pivot == usize::MAX || d > pivot_deg {
            pivot = v;
            pivot_deg = d;
        }
    }
    independent_rec(
        g,
        cand - g.closed_neighbors(pivot),
        chosen.with(pivot),
        best,
    );
    independent_rec(g, cand.without(pivot), chosen, best);
}

/// Number of cliques in a greedy clique cover of `cand`; an upper bound on
/// the independence number of `G[cand]`.
fn clique_cover_bound(g: &Graph, cand: VertexSet) -> usize {
    let mut rest = cand;
    let mut count = 0;
    while let Some(v) = rest.first() {
        let mut clique = VertexSet::singleton(v);
        let mut pool = g.neighbors(v) & rest;
        while let Some(u) = pool.first() {
            clique.insert(u);
            pool &= g.neighbors(u);
        }
        rest = rest - clique;
        count += 1;
    }
    count
}

/// A maximum clique of `G[cand]`.
pub fn max_clique_in(g: &Graph, cand: VertexSet) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    clique_rec(g, cand, VertexSet::EMPTY, &mut best);
    best
}

fn clique_rec(g: &Graph, cand: VertexSet, chosen: VertexSet, best: &mut VertexSet) {
    if chosen.len() + cand.len() <= best.len() {
        return;
    }
    if cand.is_empty() {
        *best = chosen;
        return;
    }
    let mut pivot = usize::MAX;
    let mut pivot_deg = 0;
    for v in cand {
        let d = (g.neighbors(v) & cand).len();
        if pivot == usize::MAX || d > pivot_deg {
            pivot = v;
            pivot_deg = d;
        }
    }
    clique_rec(g, cand & g.neighbors(pivot), chosen.with(pivot), best);
    clique_rec(g, cand.without(pivot), chosen, best);
}

/// `α(G)` with a witness set.
pub fn independence_number(g: &Graph) -> (usize, VertexSet) {
    let s = max_independent_in(g, g.vertices());
    (s.len(), s)
}

/// `ω(G)` with a witness clique.
pub fn clique_number(g: &Graph) -> (usize, VertexSet) {
    let s = max_clique_in(g, g.vertices());
    (s.len(), s)
}

/// A proper coloring: `colors[v]` in `0..count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub count: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut classes = vec![VertexSet::EMPTY; self.count];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].insert(v);
        }
        classes
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.order()
            && self.colors.iter().all(|&c| c < self.count)
            && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

/// `χ(G)` with an optimal coloring.
///
/// Tries `k = ω, ω+1, ..` with an exact backtracking search, stopping early
/// at the size of a greedy coloring.
pub fn chromatic_number(g: &Graph) -> (usize, Coloring) {
    let n = g.order();
    if n == 0 {
        return (
            0,
            Coloring {
                count: 0,
                colors: vec![],
            },
        );
    }
    let greedy = greedy_coloring(g);
    let (omega, _) = clique_number(g);
    for k in omega..greedy.count {
        if let Some(colors) = k_coloring(g, k) {
            return (k, Coloring { count: k, colors });
        }
    }
    (greedy.count, greedy)
}

fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![usize::MAX; n];
    let mut count = 0;
    for v in order {
        let used: u64 = g
            .neighbors(v)
            .iter()
            .filter(|&u| colors[u] != usize::MAX)
            .fold(0, |acc, u| acc | 1 << colors[u]);
        let c = (!used).trailing_zeros() as usize;
        colors[v] = c;
        count = count.max(c + 1);
    }
    Coloring { count, colors }
}

/// Proper coloring with at most `k` colors, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.order();
    if n == 0 {
        return Some(vec![]);
    }
    if k == 0 {
        return None;
    }
    let mut colors = vec![usize::MAX; n];
    let mut forbidden = vec![0u64; n];
    if color_rec(g, k, &mut colors, &mut forbidden, 0, 0) {
        Some(colors)
    } else {
        None
    }
}

// DSATUR-style branching: color the uncolored vertex with the most distinct
// neighbor colors, trying only colors 0..=used to break color symmetry.
fn color_rec(
    g: &Graph,
    k: usize,
    colors: &mut [usize],
    forbidden: &mut [u64],
    colored: usize,
    used: usize,
) -> bool {
    let n = g.order();
    if colored == n {
        return true;
    }
    let mut pick = usize::MAX;
    let mut best = (0u32, 0usize);
    for v in 0..n {
        if colors[v] != usize::MAX {
            continue;
        }
        let key = (forbidden[v].count_ones(), g.degree(v));
        if pick == usize::MAX || key > best {
            pick = v;
            best = key;
        }
    }
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if forbidden[pick] >> c & 1 == 1 {
            continue;
        }
        colors[pick] = c;
        let touched: Vec<(usize, u64)> = g
            .neighbors(pick)
            .iter()
            .map(|u| (u, forbidden[u]))
            .collect();
        for u in g.neighbors(pick) {
            forbidden[u] |= 1 << c;
        }
        if color_rec(g, k, colors, forbidden, colored + 1, used.max(c + 1)) {
            return true;
        }
        for (u, f) in touched {
            forbidden[u] = f;
        }
        colors[pick] = usize::MAX;
    }
    false
}

/// `α_G(v)`: independence number of the subgraph induced by `N(v)`.
pub fn local_alpha(g: &Graph, v: usize) -> Result<usize, GraphError> {
    if v >= g.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.order(),
        });
    }
    Ok(max_independent_in(g, g.neighbors(v)).len())
}

/// `α_G(v)` for every vertex.
pub fn local_alphas(g: &Graph) -> Vec<usize> {
    (0..g.order())
        .map(|v| max_independent_in(g, g.neighbors(v)).len())
        .collect()
}

/// `α_L(G) = max_v α_G(v)`; 0 for edgeless graphs.
pub fn local_independence_number(g: &Graph) -> usize {
    local_alphas(g).into_iter().max().unwrap_or(0)
}

/// An induced `K_{1,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Claw {
    pub center: usize,
    pub leaves: [usize; 3],
}

/// Lexicographically first induced claw, ordered by center then leaves.
pub fn find_claw(g: &Graph) -> Option<Claw> {
    for center in 0..g.order() {
        let nb = g.neighbors(center);
        for a in nb {
            let after_a = nb - VertexSet::full(a + 1) - g.neighbors(a);
            for b in after_a {
                let after_b = after_a - VertexSet::full(b + 1) - g.neighbors(b);
                if let Some(c) = after_b.first() {
                    return Some(Claw {
                        center,
                        leaves: [a, b, c],
                    });
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> bool {
    find_claw(g).is_none()
}

/// Partitions `s` into the minimum number of cliques of `g`, i.e.
/// `χ` of the complement of `G[s]` parts, via an exact coloring of that
/// complement. Parts are ordered by color index.
pub fn vertex_clique_partition(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let (sub, map) = g.induced_subgraph(s);
    let (_, coloring) = chromatic_number(&sub.complement());
    coloring
        .classes()
        .into_iter()
        .map(|class| class.iter().map(|i| map[i]).collect())
        .collect()
}

/// A maximum-cardinality matching of `g`, edges as `(u, v)` with `u < v`.
///
/// Exhaustive recursion on the lowest unmatched vertex, memoized on the
/// set of vertices still available. Intended for graphs of at most a few
/// dozen vertices (in practice: neighborhoods of small graphs).
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    maximum_matching_in(g, g.vertices())
}

/// Maximum matching of `G[s]`, in original labels.
pub fn maximum_matching_in(g: &Graph, s: VertexSet) -> Vec<(usize, usize)> {
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    let mut rest = s;
    while let Some(v) = rest.first() {
        let (_, choice) = matching_rec(g, rest, &mut memo);
        match choice {
            Some(u) => {
                out.push((v, u));
                rest = rest.without(v).without(u);
            }
            None => rest = rest.without(v),
        }
    }
    out
}

// Returns (size of a maximum matching of G[s], partner of min(s) in one).
fn matching_rec(
    g: &Graph,
    s: VertexSet,
    memo: &mut HashMap<VertexSet, (usize, Option<usize>)>,
) -> (usize, Option<usize>) {
    let Some(v) = s.first() else {
        return (0, None);
    };
    if let Some(&hit) = memo.get(&s) {
        return hit;
    }
    let rest = s.without(v);
    let mut best = (matching_rec(g, rest, memo).0, None);
    for u in g.neighbors(v) & rest {
        let size = 1 + matching_rec(g, rest.without(u), memo).0;
        if size > best.0 {
            best = (size, Some(u));
        }
        // a matching cannot exceed half the remaining vertices
        if best.0 == s.len() / 2 {
            break;
        }
    }
    memo.insert(s, best);
    best
}
