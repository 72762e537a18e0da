//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines always reach the output.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use lcc_core::constructions::{cover_alpha2, cover_claw_free, cover_local_alpha, cover_max_clique};
use lcc_core::cover::{lcc_exact, scp_exact, validate_cover, CliqueCover, Method};
use lcc_core::graph::Graph;
use lcc_core::harness::{
    check_conjectures, enumerate_labeled_graphs, run_construction_suite, SweepOptions,
};
use lcc_core::invariants::chromatic_number;
use lcc_core::ng_bounds::{
    check_alpha_chi_bound, check_ratio_bound, cp_ng_bound, scp_ng_bound, BoundError, Color,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lcc_bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lcc"));
    cmd.env_remove("LCC_CACHE");
    cmd
}

fn check_csv(stdout: &str, total: usize) -> Result<(), String> {
    let mut lines = stdout.lines();
    ensure!(
        lines.next() == Some("graph6,n,lcc,lcc_complement,chi,conj1_lhs,conj1_holds,conj2_lhs,conj2_holds,equality2"),
        "bad header"
    );
    let records: Vec<&str> = stdout
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    ensure!(
        records.len() == total,
        "{} records, expected {total}",
        records.len()
    );
    for r in records {
        let f: Vec<&str> = r.split(',').collect();
        let num = |i: usize| f[i].parse::<usize>().unwrap();
        let (n, lcc, co, chi) = (num(1), num(2), num(3), num(4));
        ensure!(
            num(5) == lcc + co && num(7) == lcc + chi,
            "lhs not derivable: {r}"
        );
        ensure!(
            f[6] == (lcc + co <= n).to_string(),
            "conj1_holds inconsistent: {r}"
        );
        ensure!(
            f[8] == (lcc + chi <= n + 1).to_string(),
            "conj2_holds inconsistent: {r}"
        );
        ensure!(
            f[9] == (lcc + chi == n + 1).to_string(),
            "equality2 inconsistent: {r}"
        );
        ensure!(f[6] == "true" && f[8] == "true", "COUNTEREXAMPLE {}", f[0]);
    }
    Ok(())
}

fn c1_sweep() -> Outcome {
    let start = Instant::now();
    let out = lcc_bin()
        .args(["check", "--conjecture", "both", "--n", "6", "--exhaustive"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(out.status.success(), "exit status {}", out.status);
    let stdout = String::from_utf8(out.stdout).unwrap();
    check_csv(&stdout, 32768)?;
    let footer = stdout.lines().last().unwrap_or_default();
    ensure!(
        footer.starts_with("# summary total=32768 conj1_violations=0 conj2_violations=0 "),
        "footer {footer}"
    );
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!("32768 graphs, 0 violations, {:.2?}", elapsed))
}

fn c2_oracle() -> Outcome {
    let start = Instant::now();
    let mut from_enum = (0..=5).flat_map(|n| enumerate_labeled_graphs(n).unwrap());
    let mut count = 0;
    for (g6, g) in fixture_graph6().zip(fixture_graphs()) {
        ensure!(g.to_graph6().unwrap() == g6, "graph6 mismatch for {g6}");
        ensure!(
            from_enum.next().as_ref() == Some(&g),
            "enumeration order differs at {g6}"
        );
        let (k, cover) = lcc_exact(&g);
        let expected = oracle_lcc(&g);
        ensure!(k == expected, "{g6}: lcc_exact {k}, oracle {expected}");
        let check = validate_cover(&g, &cover).map_err(|e| format!("{g6}: {e}"))?;
        ensure!(
            check.max_valency == k,
            "{g6}: witness valency {}",
            check.max_valency
        );
        count += 1;
    }
    ensure!(count == 1100, "fixture has {count} graphs");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("{count} graphs agree, {:.2?}", elapsed))
}

fn c3_triangle_free() -> Outcome {
    let mut count = 0;
    for n in 0..=6 {
        for g in labeled_graphs(n).filter(is_triangle_free) {
            let k = lcc_exact(&g).0;
            ensure!(
                k == max_degree(&g),
                "{}: lcc {k}, max degree {}",
                g.to_graph6().unwrap(),
                max_degree(&g)
            );
            count += 1;
        }
    }
    Ok(format!("{count} triangle-free graphs"))
}

/// Cover validity and valencies recomputed from scratch.
fn valencies(g: &Graph, cover: &CliqueCover) -> Result<Vec<usize>, String> {
    let n = g.order();
    let cliques: Vec<Vec<usize>> = cover.cliques().iter().map(|c| c.to_vec()).collect();
    for c in &cliques {
        ensure!(c.len() >= 2 && is_clique(g, c), "{c:?} is not a clique");
    }
    for u in 0..n {
        for v in u + 1..n {
            ensure!(
                !g.has_edge(u, v) || cliques.iter().any(|c| c.contains(&u) && c.contains(&v)),
                "edge {u}{v} uncovered"
            );
        }
    }
    Ok((0..n)
        .map(|v| cliques.iter().filter(|c| c.contains(&v)).count())
        .collect())
}

fn is_claw_free_oracle(g: &Graph) -> bool {
    let n = g.order();
    (0..n).all(|c| {
        let nb: Vec<usize> = (0..n).filter(|&v| g.has_edge(c, v)).collect();
        subsets(nb.len()).filter(|s| s.len() == 3).all(|s| {
            let t: Vec<usize> = s.iter().map(|&i| nb[i]).collect();
            is_clique(g, &t[..2]) || is_clique(g, &t[1..]) || is_clique(g, &[t[0], t[2]])
        })
    })
}

fn local_alpha_oracle(g: &Graph, v: usize) -> usize {
    let nb: Vec<usize> = (0..g.order()).filter(|&u| g.has_edge(u, v)).collect();
    subsets(nb.len())
        .filter(|s| (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !g.has_edge(nb[s[i]], nb[s[j]]))))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

fn c4_constructions() -> Outcome {
    // n <= 6: every certificate re-checked against brute-force invariants.
    let mut applied = [0usize; 4];
    for n in 0..=6 {
        for g in labeled_graphs(n) {
            let g6 = g.to_graph6().unwrap();
            let alpha = brute_alpha(&g);
            let delta = (0..n)
                .map(|v| (0..n).filter(|&u| g.has_edge(u, v)).count())
                .min()
                .unwrap_or(0);
            match cover_alpha2(&g) {
                Ok(cert) => {
                    ensure!(alpha == 2, "{g6}: alpha2 applied with alpha {alpha}");
                    let val =
                        valencies(&g, &cert.cover).map_err(|e| format!("{g6} alpha2: {e}"))?;
                    ensure!(
                        val.iter().all(|&x| x <= delta + 1),
                        "{g6} alpha2: {val:?} > delta+1"
                    );
                    ensure!(cert.verdict, "{g6} alpha2 verdict false");
                    applied[0] += 1;
                }
                Err(_) => ensure!(alpha != 2, "{g6}: alpha2 refused"),
            }
            let cert = cover_max_clique(&g);
            let limit = n + 1 - brute_omega(&g).max(1);
            let val = valencies(&g, &cert.cover).map_err(|e| format!("{g6} max_clique: {e}"))?;
            ensure!(
                val.iter().all(|&x| x <= limit) && cert.verdict,
                "{g6} max_clique: {val:?}"
            );
            applied[1] += 1;

            let cert = cover_local_alpha(&g);
            let val = valencies(&g, &cert.cover).map_err(|e| format!("{g6} local_alpha: {e}"))?;
            for (v, &x) in val.iter().enumerate() {
                let a = local_alpha_oracle(&g, v);
                // val + n/a <= n + 1, cleared of denominators.
                ensure!(
                    a == 0 || x * a + n <= (n + 1) * a,
                    "{g6} local_alpha: vertex {v} val {x} a {a}"
                );
            }
            ensure!(cert.verdict, "{g6} local_alpha verdict false");
            applied[2] += 1;

            match cover_claw_free(&g) {
                Ok(cert) => {
                    ensure!(
                        is_claw_free_oracle(&g),
                        "{g6}: claw_free applied to a graph with a claw"
                    );
                    let chi = brute_chi(&g);
                    let val =
                        valencies(&g, &cert.cover).map_err(|e| format!("{g6} claw_free: {e}"))?;
                    ensure!(
                        val.iter().all(|&x| x + chi <= n + 1),
                        "{g6} claw_free: {val:?} chi {chi}"
                    );
                    ensure!(cert.verdict, "{g6} claw_free verdict false");
                    applied[3] += 1;
                }
                Err(e) => ensure!(!is_claw_free_oracle(&g), "{g6}: claw_free failed: {e}"),
            }
        }
    }
    // n = 7 through the suite driver.
    for method in Method::CONSTRUCTIONS {
        let s = run_construction_suite(enumerate_labeled_graphs(7).unwrap(), method, 0)
            .map_err(|e| e.to_string())?;
        ensure!(
            s.failures.is_empty(),
            "{method} n=7: {:?}",
            &s.failures[..s.failures.len().min(3)]
        );
        ensure!(
            s.applied == s.verified,
            "{method} n=7: {} of {} verified",
            s.verified,
            s.applied
        );
    }
    Ok(format!(
        "n<=6 applied alpha2 {} max_clique {} local_alpha {} claw_free {}; n=7 all verified",
        applied[0], applied[1], applied[2], applied[3]
    ))
}

fn without_edges(n: usize, removed: &[(usize, usize)]) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|e| !removed.contains(e))
        .collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

fn c5_equality() -> Outcome {
    for n in 4..=8 {
        let family = [
            ("K_n", without_edges(n, &[])),
            ("K_n-K_2", without_edges(n, &[(0, 1)])),
            ("K_n-K_1,2", without_edges(n, &[(0, 1), (0, 2)])),
        ];
        for (name, g) in family {
            let lcc = lcc_exact(&g).0;
            let chi = chromatic_number(&g).0;
            ensure!(
                lcc + chi == n + 1,
                "{name} n={n}: lcc {lcc} + chi {chi} != {}",
                n + 1
            );
            ensure!(
                chi == brute_chi(&g),
                "{name} n={n}: chi disagrees with oracle"
            );
            if n <= 5 {
                ensure!(
                    lcc == oracle_lcc(&g),
                    "{name} n={n}: lcc disagrees with oracle"
                );
            }
        }
    }
    let graphs: Vec<Graph> = (4..=8).map(|n| without_edges(n, &[(0, 1)])).collect();
    let mut flags = Vec::new();
    check_conjectures(graphs, &SweepOptions::default(), None, |r| {
        flags.push(r.equality2);
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    ensure!(flags.iter().all(|&f| f), "report equality2 flags {flags:?}");
    Ok("K_n, K_n-K_2, K_n-K_1,2 for n=4..8".into())
}

fn c6_scp() -> Outcome {
    let mut equalities = 0;
    for g in fixture_graphs() {
        let n = g.order();
        let g6 = g.to_graph6().unwrap();
        let s = scp_exact(&g).map_err(|e| e.to_string())?.0;
        let (oracle, _) = oracle_partition(&g);
        ensure!(s == oracle, "{g6}: scp_exact {s}, oracle {oracle}");
        ensure!(s <= n * n / 2, "{g6}: scp {s} > n^2/2");
        let balanced = is_balanced_complete_bipartite(&g);
        ensure!(
            (s == n * n / 2) == balanced,
            "{g6}: scp {s}, balanced complete bipartite {balanced}"
        );
        equalities += usize::from(balanced);
    }
    let k22 = scp_exact(&Graph::complete_bipartite(2, 2).unwrap())
        .unwrap()
        .0;
    let k33 = scp_exact(&Graph::complete_bipartite(3, 3).unwrap())
        .unwrap()
        .0;
    ensure!(
        k22 == 8 && k33 == 18,
        "scp(K_2,2) = {k22}, scp(K_3,3) = {k33}"
    );
    Ok(format!(
        "1100 graphs, {equalities} equality cases, K_2,2=8, K_3,3=18"
    ))
}

fn random_graph(rng: &mut StdRng, n: usize) -> Graph {
    let p: f64 = rng.random_range(0.05..0.95);
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

fn c7_ng_accounting() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x1cc);
    for i in 0..200 {
        let n = [10, 20, 40][i % 3];
        let g = random_graph(&mut rng, n);
        let scp = scp_ng_bound(&g);
        let cp = cp_ng_bound(&g);
        let k = scp.packing.k();
        let mut used = std::collections::HashSet::new();
        for &([a, b, c], color) in &scp.packing.triangles {
            let want = color == Color::Original;
            for (u, v) in [(a, b), (a, c), (b, c)] {
                ensure!(
                    g.has_edge(u, v) == want,
                    "triangle {a}{b}{c} not monochromatic"
                );
                ensure!(used.insert((u, v)), "triangles share edge {u}{v}");
            }
        }
        ensure!(
            scp.bound == n * (n - 1) - 3 * k,
            "n={n}: sigma {} != n(n-1)-3k, k={k}",
            scp.bound
        );
        ensure!(cp.packing.k() == k, "packings differ");
        ensure!(
            cp.bound == n * (n - 1) / 2 - 2 * k,
            "n={n}: count {} != C(n,2)-2k",
            cp.bound
        );
        scp.validate(&g)
            .map_err(|e| format!("scp partition: {e}"))?;
        cp.validate(&g).map_err(|e| format!("cp partition: {e}"))?;
    }
    for g in fixture_graphs() {
        let (s, c) = oracle_partition(&g);
        let (sc, cc) = oracle_partition(&g.complement());
        ensure!(
            scp_ng_bound(&g).bound >= s + sc,
            "{}: realized scp below exact",
            g.to_graph6().unwrap()
        );
        ensure!(
            cp_ng_bound(&g).bound >= c + cc,
            "{}: realized cp below exact",
            g.to_graph6().unwrap()
        );
    }
    Ok("200 random graphs exact identities; n<=5 realized >= exact".into())
}

fn c8_lemma() -> Outcome {
    for g in fixture_graphs() {
        let n = g.order();
        let h = g.disjoint_union_with_isolated().unwrap();
        ensure!(
            h.order() == n + 1 && (0..n).all(|v| !h.has_edge(v, n)),
            "bad union"
        );
        ensure!(
            (0..n).all(|u| (0..n).all(|v| h.has_edge(u, v) == g.has_edge(u, v))),
            "bad union"
        );
        let (a, b) = (lcc_exact(&g).0, lcc_exact(&h).0);
        ensure!(
            a == b,
            "{}: lcc {a}, with isolated vertex {b}",
            g.to_graph6().unwrap()
        );
    }
    Ok("1100 graphs".into())
}

fn c9_propositions() -> Outcome {
    let mut count = 0;
    for n in 0..=6 {
        for g in labeled_graphs(n) {
            let g6 = g.to_graph6().unwrap();
            let (alpha, omega, chi, delta) = (
                brute_alpha(&g),
                brute_omega(&g),
                brute_chi(&g),
                max_degree(&g),
            );
            match check_ratio_bound(&g) {
                Err(BoundError::Edgeless) => ensure!(omega < 2, "{g6}: ratio refused"),
                Err(e) => return Err(format!("{g6}: {e}")),
                Ok(r) => {
                    let lhs = delta + chi * (omega - 1);
                    let rhs = (n + 1) * (omega - 1);
                    let complete = (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v)));
                    let star = n >= 2
                        && (0..n).any(|c| {
                            (0..n)
                                .all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == (u == c || v == c)))
                        });
                    ensure!(lhs <= rhs, "{g6}: ratio bound fails");
                    ensure!(
                        (lhs == rhs) == (complete || star),
                        "{g6}: ratio equality characterization"
                    );
                    ensure!(
                        r.verdict && r.equality == (lhs == rhs),
                        "{g6}: ratio record {r:?}"
                    );
                }
            }
            let r = check_alpha_chi_bound(&g);
            let centers = (0..n).any(|c| {
                let nb: Vec<usize> = (0..n).filter(|&v| g.has_edge(c, v)).collect();
                let rest: Vec<usize> = (0..n).filter(|&v| !g.has_edge(c, v)).collect();
                is_clique(&g, &nb)
                    && rest
                        .iter()
                        .all(|&u| rest.iter().all(|&v| !g.has_edge(u, v)))
            });
            ensure!(alpha + chi <= n + 1, "{g6}: alpha + chi bound fails");
            ensure!(
                (alpha + chi == n + 1) == centers,
                "{g6}: alpha-chi equality characterization"
            );
            ensure!(
                r.verdict && r.equality == (alpha + chi == n + 1),
                "{g6}: alpha-chi record {r:?}"
            );
            count += 1;
        }
    }
    Ok(format!("{count} graphs"))
}

fn c10_determinism() -> Outcome {
    let mut detail = Vec::new();
    for format in ["csv", "json-lines"] {
        let run = |threads: &str| {
            lcc_bin()
                .args([
                    "--threads",
                    threads,
                    "check",
                    "--n",
                    "6",
                    "--exhaustive",
                    "--format",
                    format,
                ])
                .output()
                .map(|o| o.stdout)
                .map_err(|e| e.to_string())
        };
        let (one, four) = (run("1")?, run("4")?);
        ensure!(!one.is_empty() && one == four, "{format}: outputs differ");
        detail.push(format!("{format} {} bytes", one.len()));
    }
    Ok(format!("threads 1 vs 4 identical ({})", detail.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("conjecture sweep n=6", c1_sweep),
        ("oracle agreement n<=5", c2_oracle),
        ("triangle-free lcc = max degree n<=6", c3_triangle_free),
        ("construction certificates n<=7", c4_constructions),
        ("equality witnesses n=4..8", c5_equality),
        ("scp <= n^2/2 n<=5", c6_scp),
        ("NG accounting identities", c7_ng_accounting),
        ("isolated vertex keeps lcc n<=5", c8_lemma),
        ("proposition checkers n<=6", c9_propositions),
        ("sweep determinism across threads", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2}: PASS  {name} ({detail}) [{:.1?}]",
                i + 1,
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
