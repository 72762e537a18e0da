//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the solvers under test; graphs are only read through `has_edge`.

#![allow(dead_code)]

use lcc_core::Graph;

/// Every labeled graph on `0..=5` vertices in edge-mask order, as encoded by
/// networkx (`tests/data/labeled_n0_5.g6`).
pub const FIXTURE: &str = include_str!("../data/labeled_n0_5.g6");

pub fn fixture_graph6() -> impl Iterator<Item = &'static str> {
    FIXTURE.lines()
}

pub fn fixture_graphs() -> impl Iterator<Item = Graph> {
    fixture_graph6().map(|s| Graph::parse_graph6(s).expect("fixture parses"))
}

/// Labeled graphs on `n` vertices, bit `e` of the mask being the `e`-th pair
/// `(i, j)`, `i < j`, in lexicographic order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0..1u64 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(e, _)| mask >> e & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edge_list(n, &edges).unwrap()
    })
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u32 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

fn all_pairs(vs: &[usize], pred: impl Fn(usize, usize) -> bool) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| pred(u, v)))
}

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    all_pairs(vs, |u, v| g.has_edge(u, v))
}

pub fn brute_alpha(g: &Graph) -> usize {
    subsets(g.order())
        .filter(|s| all_pairs(s, |u, v| !g.has_edge(u, v)))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

pub fn brute_omega(g: &Graph) -> usize {
    subsets(g.order())
        .filter(|s| is_clique(g, s))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// Smallest `k` admitting a proper coloring, by plain backtracking in
/// vertex order.
pub fn brute_chi(g: &Graph) -> usize {
    fn color(g: &Graph, v: usize, k: usize, c: &mut Vec<usize>) -> bool {
        if v == g.order() {
            return true;
        }
        for x in 0..k {
            if (0..v).all(|u| !g.has_edge(u, v) || c[u] != x) {
                c[v] = x;
                if color(g, v + 1, k, c) {
                    return true;
                }
            }
        }
        false
    }
    let n = g.order();
    (0..=n).find(|&k| color(g, 0, k, &mut vec![0; n])).unwrap()
}

pub fn max_degree(g: &Graph) -> usize {
    let n = g.order();
    (0..n)
        .map(|u| (0..n).filter(|&v| g.has_edge(u, v)).count())
        .max()
        .unwrap_or(0)
}

pub fn is_triangle_free(g: &Graph) -> bool {
    let n = g.order();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            (b + 1..n).all(|c| !(g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)))
        })
    })
}

/// Whether `g` is `K_{a,b}` with `a = floor(n/2)` and `b = ceil(n/2)`.
pub fn is_balanced_complete_bipartite(g: &Graph) -> bool {
    let n = g.order();
    subsets(n).filter(|s| s.len() == n / 2).any(|s| {
        (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == (s.contains(&u) != s.contains(&v))))
    })
}

/// All cliques on at least two vertices, as vertex lists.
fn cliques(g: &Graph) -> Vec<Vec<usize>> {
    subsets(g.order())
        .filter(|s| s.len() >= 2 && is_clique(g, s))
        .collect()
}

fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| g.has_edge(u, v))
        .collect()
}

/// `lcc(G)` by include/exclude search over every clique of `G`.
pub fn oracle_lcc(g: &Graph) -> usize {
    let cl = cliques(g);
    let edges = edge_list(g);
    // For each edge, the largest index of a clique containing it.
    let last: Vec<usize> = edges
        .iter()
        .map(|&(u, v)| {
            cl.iter()
                .rposition(|c| c.contains(&u) && c.contains(&v))
                .unwrap()
        })
        .collect();

    fn feasible(
        i: usize,
        k: usize,
        cl: &[Vec<usize>],
        edges: &[(usize, usize)],
        last: &[usize],
        val: &mut Vec<usize>,
        covered: &mut Vec<usize>,
    ) -> bool {
        if edges
            .iter()
            .enumerate()
            .any(|(e, _)| covered[e] == 0 && last[e] < i)
        {
            return false;
        }
        if covered.iter().all(|&c| c > 0) {
            return true;
        }
        if i == cl.len() {
            return false;
        }
        let c = &cl[i];
        if c.iter().all(|&v| val[v] < k) {
            for &v in c {
                val[v] += 1;
            }
            let hit: Vec<usize> = (0..edges.len())
                .filter(|&e| c.contains(&edges[e].0) && c.contains(&edges[e].1))
                .collect();
            for &e in &hit {
                covered[e] += 1;
            }
            let ok = feasible(i + 1, k, cl, edges, last, val, covered);
            for &e in &hit {
                covered[e] -= 1;
            }
            for &v in c {
                val[v] -= 1;
            }
            if ok {
                return true;
            }
        }
        feasible(i + 1, k, cl, edges, last, val, covered)
    }

    (0..)
        .find(|&k| {
            let mut val = vec![0; g.order()];
            let mut covered = vec![0; edges.len()];
            feasible(0, k, &cl, &edges, &last, &mut val, &mut covered)
        })
        .unwrap()
}

/// `(scp, cp)` of `G`: minimum total size and minimum count over all clique
/// partitions, by exhaustive search.
pub fn oracle_partition(g: &Graph) -> (usize, usize) {
    let cl = cliques(g);
    let edges = edge_list(g);
    let mask_of = |c: &Vec<usize>| -> u64 {
        edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| c.contains(&u) && c.contains(&v))
            .fold(0, |m, (e, _)| m | 1 << e)
    };
    let masks: Vec<(u64, usize)> = cl.iter().map(|c| (mask_of(c), c.len())).collect();
    let full = if edges.is_empty() {
        0
    } else {
        u64::MAX >> (64 - edges.len())
    };

    fn rec(
        left: u64,
        masks: &[(u64, usize)],
        sigma: usize,
        count: usize,
        best: &mut (usize, usize),
    ) {
        if left == 0 {
            best.0 = best.0.min(sigma);
            best.1 = best.1.min(count);
            return;
        }
        let e = left.trailing_zeros();
        for &(m, size) in masks {
            if m >> e & 1 == 1 && m & !left == 0 {
                rec(left & !m, masks, sigma + size, count + 1, best);
            }
        }
    }

    let mut best = (usize::MAX, usize::MAX);
    rec(full, &masks, 0, 0, &mut best);
    best
}
