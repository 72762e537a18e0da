use proptest::prelude::*;

use lcc_core::constructions::{cover_alpha2, cover_claw_free, cover_local_alpha, cover_max_clique};
use lcc_core::cover::{lcc_exact, lcc_lower_bound, validate_cover};
use lcc_core::graph::Graph;
use lcc_core::ng_bounds::{cp_ng_bound, scp_ng_bound};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
                let edges: Vec<_> = pairs
                    .zip(bits)
                    .filter(|(_, b)| *b)
                    .map(|(p, _)| p)
                    .collect();
                Graph::from_edge_list(n, &edges).unwrap()
            },
        )
    })
}

/// Line graph of `h`: claw-free by construction.
fn line_graph(h: &Graph) -> Graph {
    let e: Vec<(usize, usize)> = h.edges().collect();
    let mut edges = Vec::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let (a, b) = (e[i], e[j]);
            if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(e.len(), &edges).unwrap()
}

/// Drops edges of `g` closing a triangle with earlier kept edges.
fn triangle_free_part(g: &Graph) -> Graph {
    let mut kept: Vec<(usize, usize)> = Vec::new();
    for (u, v) in g.edges() {
        let h = Graph::from_edge_list(g.order(), &kept).unwrap();
        if (h.neighbors(u) & h.neighbors(v)).is_empty() {
            kept.push((u, v));
        }
    }
    Graph::from_edge_list(g.order(), &kept).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_and_edge_list_roundtrip(g in graph(20)) {
        let g6 = g.to_graph6().unwrap();
        prop_assert_eq!(&Graph::parse_graph6(&g6).unwrap(), &g);
        prop_assert_eq!(&Graph::parse_edge_list(&g.to_edge_list()).unwrap(), &g);
        prop_assert_eq!(&g.complement().complement(), &g);
    }

    #[test]
    fn exact_lcc_is_witnessed_and_bracketed(g in graph(8)) {
        let (k, cover) = lcc_exact(&g);
        let check = validate_cover(&g, &cover).unwrap();
        prop_assert_eq!(check.max_valency, k);
        prop_assert!(lcc_lower_bound(&g) <= k);
        prop_assert!(k <= g.max_degree());
        let h = g.disjoint_union_with_isolated().unwrap();
        prop_assert_eq!(lcc_exact(&h).0, k);
    }

    #[test]
    fn general_constructions_verify(g in graph(9)) {
        let k = lcc_exact(&g).0;
        for cert in [cover_max_clique(&g), cover_local_alpha(&g)] {
            prop_assert!(cert.verdict, "{} on {}", cert.method, g.to_graph6().unwrap());
            prop_assert!(k <= cert.cover.max_valency());
        }
    }

    #[test]
    fn claw_free_construction_on_line_graphs(h in graph(6)) {
        let g = line_graph(&h);
        let cert = cover_claw_free(&g).unwrap();
        prop_assert!(cert.verdict, "{}", g.to_graph6().unwrap());
    }

    #[test]
    fn alpha2_construction_on_co_triangle_free(g in graph(10)) {
        let g = triangle_free_part(&g).complement();
        if let Ok(cert) = cover_alpha2(&g) {
            prop_assert!(cert.verdict, "{}", g.to_graph6().unwrap());
        }
    }

    #[test]
    fn ng_accounting(g in graph(30)) {
        let n = g.order();
        let scp = scp_ng_bound(&g);
        let cp = cp_ng_bound(&g);
        let k = scp.packing.k();
        prop_assert!(scp.packing.is_valid_for(&g));
        prop_assert_eq!(scp.bound, n * n.saturating_sub(1) - 3 * k);
        prop_assert_eq!(cp.bound, n * n.saturating_sub(1) / 2 - 2 * k);
        prop_assert!(scp.validate(&g).is_ok());
        prop_assert!(cp.validate(&g).is_ok());
    }
}
