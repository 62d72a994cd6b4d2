use liec::generators::{enumerate_cacti, gen_butterfly, gen_random_unicyclic};
use liec::oracle::{exact_chi_irr_with, OracleConfig};
use liec::unicyclic::unicyclic_liec_with;
use liec::{exact_chi_irr, is_colorable, is_liec, tree_liec, unicyclic_liec, Graph};

fn exact(g: &Graph) -> Option<usize> {
    exact_chi_irr(g, 5).unwrap()
}

#[test]
fn unicyclic_solver_is_optimal_on_small_graphs() {
    let mut seen = 0;
    for g in enumerate_cacti(10).into_iter().filter(|g| g.m() == g.n()) {
        let want = exact(&g);
        match unicyclic_liec(&g) {
            Ok(col) => {
                assert!(is_liec(&g, &col));
                assert_eq!(Some(col.num_colors()), want, "{:?}", g.edges());
                seen += 1;
            }
            Err(_) => assert_eq!(want, None, "{:?}", g.edges()),
        }
    }
    assert!(seen > 300);
}

#[test]
fn unicyclic_solver_on_random_graphs() {
    let mut colored = 0;
    for seed in 0..600 {
        let g = gen_random_unicyclic(3 + (seed as usize * 7) % 38, seed).unwrap();
        if !is_colorable(&g).unwrap() {
            assert!(unicyclic_liec(&g).is_err());
            continue;
        }
        let col = unicyclic_liec(&g).unwrap();
        assert!(is_liec(&g, &col) && col.num_colors() <= 3);
        if g.m() <= 12 {
            assert_eq!(Some(col.num_colors()), exact(&g));
        }
        colored += 1;
        if colored == 300 {
            break;
        }
    }
    assert_eq!(colored, 300);
}

#[test]
fn one_color_fewer_than_the_optimum_is_infeasible() {
    for g in enumerate_cacti(8).into_iter().filter(|g| g.m() == g.n()) {
        if let Some(k) = exact(&g) {
            assert!(unicyclic_liec_with(&g, k).unwrap().is_some());
            if k > 1 {
                assert!(unicyclic_liec_with(&g, k - 1).unwrap().is_none());
            }
        }
    }
}

#[test]
fn tree_solver_against_oracle() {
    for t in enumerate_cacti(10).into_iter().filter(|g| g.is_tree() && g.m() > 0) {
        let want = exact(&t);
        match tree_liec(&t) {
            Ok(col) => {
                let k = want.expect("oracle finds a coloring");
                assert!(is_liec(&t, &col));
                assert!(k <= col.num_colors() && col.num_colors() <= 3);
            }
            Err(_) => assert_eq!(want, None),
        }
    }
}

#[test]
fn oracle_witness_and_relabeling() {
    for g in enumerate_cacti(8).into_iter().filter(|g| g.m() > 0) {
        let found = exact_chi_irr_with(&g, 5, &OracleConfig::default()).unwrap();
        let mut edges = g.edges().to_vec();
        edges.reverse();
        let flipped: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| (g.n() - 1 - v, g.n() - 1 - u)).collect();
        let h = Graph::new(g.n(), flipped).unwrap();
        assert_eq!(found.as_ref().map(|r| r.0), exact(&h));
        if let Some((k, col)) = found {
            assert!(is_liec(&g, &col));
            assert_eq!(col.num_colors(), k);
        }
    }
}

#[test]
fn two_triangles_at_a_vertex_need_three_colors() {
    assert_eq!(exact(&gen_butterfly()), Some(3));
}
