use proptest::prelude::*;

use liec::coloring::{color_degree, format_coloring, parse_coloring, permute_colors};
use liec::generators::gen_random_cactus;
use liec::{
    cactus_liec, classify, is_cactus, is_liec, parse_edge_list, to_edge_list, verify_liec, Graph,
};

fn cactus() -> impl Strategy<Value = Graph> {
    (0usize..5, 0usize..25, any::<u64>())
        .prop_map(|(c, extra, seed)| gen_random_cactus(1 + 2 * c + extra, c, seed).unwrap())
}

/// The same graph with vertex ids permuted and edges listed in another order.
fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let mut edges: Vec<(usize, usize)> =
        g.edges().iter().map(|&(u, v)| (perm[v], perm[u])).collect();
    edges.reverse();
    Graph::new(g.n(), edges).unwrap()
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed | 1;
    for i in (1..n).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        perm.swap(i, (s % (i as u64 + 1)) as usize);
    }
    perm
}

/// Every cycle of a small graph as an edge set, by brute force.
fn cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(
        g: &Graph,
        start: usize,
        v: usize,
        seen: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &(w, e) in g.incident(v) {
            if path.contains(&e) {
                continue;
            }
            if w == start && path.len() >= 2 {
                let mut c = path.clone();
                c.push(e);
                c.sort_unstable();
                if !out.contains(&c) {
                    out.push(c);
                }
            } else if w > start && !seen[w] {
                seen[w] = true;
                path.push(e);
                extend(g, start, w, seen, path, out);
                path.pop();
                seen[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        extend(g, s, s, &mut seen, &mut Vec::new(), &mut out);
    }
    out
}

/// Edges as unordered label pairs, in edge order.
fn label_pairs(g: &Graph) -> Vec<(u64, u64)> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (g.label(u), g.label(v));
            (a.min(b), a.max(b))
        })
        .collect()
}

fn small_connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..7, proptest::collection::vec((0usize..7, 0usize..7), 0..9)).prop_filter_map(
        "connected simple graph",
        |(n, extra)| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
            for (a, b) in extra {
                let (a, b) = (a % n, b % n);
                if a != b && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
                    edges.push((a, b));
                }
            }
            (edges.len() <= 8).then(|| Graph::new(n, edges).unwrap())
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solver_output_survives_renaming_colors(g in cactus(), seed in any::<u64>()) {
        prop_assume!(classify(&g).unwrap().class.is_colorable() && g.m() > 0);
        let col = cactus_liec(&g).unwrap();
        prop_assert!(is_liec(&g, &col));
        let mapping: Vec<u8> = shuffled(4, seed).into_iter().map(|c| c as u8 + 1).collect();
        let renamed = permute_colors(&col, &mapping).unwrap();
        prop_assert!(is_liec(&g, &renamed));
    }

    #[test]
    fn verification_ignores_vertex_names(g in cactus(), seed in any::<u64>()) {
        prop_assume!(g.m() > 0);
        let perm = shuffled(g.n(), seed);
        let h = relabel(&g, &perm);
        let colors: Vec<u8> = (0..g.m()).map(|e| (e % 3) as u8 + 1).collect();
        let col = liec::EdgeColoring::new(&g, colors.clone()).unwrap();
        let mut moved = colors;
        moved.reverse();
        let hcol = liec::EdgeColoring::new(&h, moved).unwrap();
        prop_assert_eq!(
            verify_liec(&g, &col).violations.len(),
            verify_liec(&h, &hcol).violations.len()
        );
        prop_assert_eq!(classify(&g).unwrap().class, classify(&h).unwrap().class);
    }

    #[test]
    fn color_degrees_add_up(g in cactus()) {
        prop_assume!(classify(&g).unwrap().class.is_colorable() && g.m() > 0);
        let col = cactus_liec(&g).unwrap();
        for v in 0..g.n() {
            let total: usize = (1..=4).map(|c| color_degree(&g, &col, v, c)).sum();
            prop_assert_eq!(total, g.degree(v));
        }
    }

    #[test]
    fn edge_lists_and_colorings_round_trip(g in cactus()) {
        // an edge list cannot carry an isolated vertex
        prop_assume!(g.m() > 0);
        let h = parse_edge_list(&to_edge_list(&g)).unwrap();
        prop_assert_eq!(label_pairs(&h), label_pairs(&g));
        let col = liec::EdgeColoring::new(&g, (0..g.m()).map(|e| (e % 4) as u8 + 1).collect())
            .unwrap();
        let back = parse_coloring(&g, &format_coloring(&g, &col)).unwrap();
        prop_assert_eq!(back, col);
    }

    #[test]
    fn cactus_test_matches_cycle_enumeration(g in small_connected_graph()) {
        let cs = cycles(&g);
        let disjoint = cs.iter().enumerate().all(|(i, a)| {
            cs[i + 1..].iter().all(|b| a.iter().all(|e| !b.contains(e)))
        });
        prop_assert_eq!(is_cactus(&g).unwrap(), disjoint);
    }
}
