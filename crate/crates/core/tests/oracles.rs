//! Cross-checks against independent implementations: brute-force word
//! manipulation, petgraph's VF2, and graph6 strings frozen from networkx.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use starcodes::codes::build_sigma;
use starcodes::decomp::decompose;
use starcodes::iso::{find_isomorphism, verify_witness, IsoOutcome, SimpleGraph};
use starcodes::stargraph::implicit_census;
use starcodes::StarGraph;

/// All distinct arrangements of `k` symbols each repeated `ell` times, in
/// lexicographic order, built by sorting a set of strings.
fn brute_words(k: usize, ell: usize) -> Vec<String> {
    fn go(counts: &mut Vec<usize>, prefix: &mut String, out: &mut BTreeSet<String>) {
        if counts.iter().all(|&c| c == 0) {
            out.insert(prefix.clone());
            return;
        }
        for s in 0..counts.len() {
            if counts[s] > 0 {
                counts[s] -= 1;
                prefix.push(char::from(b'0' + s as u8));
                go(counts, prefix, out);
                prefix.pop();
                counts[s] += 1;
            }
        }
    }
    let mut out = BTreeSet::new();
    go(&mut vec![ell; k], &mut String::new(), &mut out);
    out.into_iter().collect()
}

fn petgraph_of(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> UnGraph<(), ()> {
    let mut g = UnGraph::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (u, v) in edges {
        g.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    g
}

#[test]
fn adjacency_matches_string_swaps() {
    for (k, ell) in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (2, 3), (3, 3), (2, 4)] {
        let words = brute_words(k, ell);
        let g = StarGraph::build(k, ell).unwrap();
        assert_eq!(g.n(), words.len());
        let index: BTreeMap<&str, usize> =
            words.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
        for (v, w) in words.iter().enumerate() {
            assert_eq!(g.word(v).to_string(), *w);
            let b = w.as_bytes();
            let mut expected = Vec::new();
            for j in 1..b.len() {
                if b[j] != b[0] {
                    let mut x = b.to_vec();
                    x.swap(0, j);
                    expected.push((index[std::str::from_utf8(&x).unwrap()], j));
                }
            }
            let got: Vec<(usize, usize)> = g.neighbors(v).collect();
            assert_eq!(got, expected, "ST^{ell}_{k} vertex {w}");
        }
    }
}

#[test]
fn graph6_matches_networkx() {
    let frozen = [
        (2, 2, "EEh_"),
        (3, 1, "EQYO"),
        (2, 3, "S???????EOS_c_WOIC@__BO?I_?K_?B_?"),
        (4, 1, "W??CA?_C?O?_G_COOCA?_@A?GC?QC?KA@?G__@C?`?OCA?_"),
    ];
    for (k, ell, g6) in frozen {
        assert_eq!(StarGraph::build(k, ell).unwrap().to_graph6(), g6, "ST^{ell}_{k}");
    }
}

#[test]
fn girth_matches_networkx() {
    for (k, ell) in [(2, 2), (3, 1), (2, 3), (4, 1), (3, 2)] {
        assert_eq!(StarGraph::build(k, ell).unwrap().girth().length, Some(6), "ST^{ell}_{k}");
    }
}

#[test]
fn implicit_census_agrees_with_explicit_graph() {
    for (k, ell) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2), (2, 4)] {
        let g = StarGraph::build(k, ell).unwrap();
        let c = implicit_census(k, ell).unwrap();
        assert_eq!(c.vertices, g.n() as u64);
        let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
        for v in 0..g.n() {
            *hist.entry(g.neighbors(v).len()).or_default() += 1;
        }
        assert_eq!(c.degree_histogram, hist);
        assert!(c.regular && c.violations == 0);
    }
}

#[test]
fn sigma_sizes_follow_counting_formula() {
    for (k, ell) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (2, 4), (3, 4)] {
        let n = StarGraph::build(k, ell).unwrap().n();
        for i in 1..k * ell {
            let s = build_sigma(i, k, ell).unwrap();
            assert_eq!(s.len() * (k * ell - 1), n * (ell - 1), "Sigma_{i} of ST^{ell}_{k}");
        }
    }
}

#[test]
fn decomposition_components_agree_with_vf2() {
    for (k, ell, i) in [(3, 2, 5), (3, 2, 1), (3, 3, 8), (3, 3, 2), (4, 2, 7)] {
        let g = StarGraph::build(k, ell).unwrap();
        let reference = StarGraph::build(k - 1, ell).unwrap();
        let ref_pg = petgraph_of(reference.n(), reference.edges().map(|e| (e.u, e.v)));
        let d = decompose(&g, i).unwrap();
        assert!(d.census.all_isomorphic);
        for c in &d.components {
            let local: BTreeMap<usize, usize> = c.iter().enumerate().map(|(a, &v)| (v, a)).collect();
            let edges = g
                .edges()
                .filter(|e| e.color != i && local.contains_key(&e.u) && local.contains_key(&e.v))
                .map(|e| (local[&e.u], local[&e.v]));
            assert!(is_isomorphic(&petgraph_of(c.len(), edges), &ref_pg));
        }
    }
}

#[test]
fn iso_engine_agrees_with_vf2_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut isomorphic_pairs = 0;
    for round in 0..400 {
        let n = rng.random_range(1..10);
        let p = rng.random_range(0.2..0.7);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(p))
            .collect();
        let a = SimpleGraph::from_edges(n, edges.iter().copied());
        let other: Vec<(usize, usize)> = if round % 2 == 0 {
            // Relabelled copy.
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect()
        } else {
            // Same edge count, otherwise random.
            let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let mut pick = all.clone();
            for i in (1..pick.len()).rev() {
                pick.swap(i, rng.random_range(0..=i));
            }
            pick.truncate(edges.len());
            pick
        };
        let b = SimpleGraph::from_edges(n, other.iter().copied());
        let vf2 = is_isomorphic(&petgraph_of(n, edges.clone()), &petgraph_of(n, other.clone()));
        match find_isomorphism(&a, &b) {
            IsoOutcome::Isomorphic(map) => {
                assert!(vf2, "round {round}: engine found a map VF2 rejects");
                verify_witness(&a, &b, &map).unwrap();
                isomorphic_pairs += 1;
            }
            IsoOutcome::Distinguished(why) => assert!(!vf2, "round {round}: missed ({why})"),
        }
    }
    assert!(isomorphic_pairs >= 200);
}
