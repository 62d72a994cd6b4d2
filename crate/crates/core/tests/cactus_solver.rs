use std::collections::BTreeSet;

use liec::cactus::{cactus_liec_traced, end_grapes, Step};
use liec::generators::{enumerate_cacti, gen_bowtie, gen_grape, gen_random_cactus};
use liec::{cactus_liec, cactus_liec_components, is_colorable, is_liec, Error, Graph};

fn kind(s: &Step) -> &'static str {
    match s {
        Step::Tree => "tree",
        Step::Unicyclic => "unicyclic",
        Step::Grape => "grape",
        Step::OddPath => "odd path",
        Step::ManyCycles { .. } => "many cycles",
        Step::OneCycle => "one cycle",
        Step::Berry => "berry",
    }
}

fn check(g: &Graph, kinds: &mut BTreeSet<&'static str>) {
    let (col, trace) = cactus_liec_traced(g).unwrap_or_else(|e| panic!("{e} for {:?}", g.edges()));
    assert!(is_liec(g, &col), "{:?}", g.edges());
    assert!(col.num_colors() <= 4);
    kinds.extend(trace.iter().map(kind));
}

#[test]
fn every_small_cactus_and_every_reduction_step() {
    let mut kinds = BTreeSet::new();
    for g in enumerate_cacti(11) {
        if g.m() > 0 && is_colorable(&g).unwrap() {
            check(&g, &mut kinds);
        }
    }
    for seed in 0..1500u64 {
        let cycles = 2 + (seed % 9) as usize;
        let n = 1 + 2 * cycles + (seed % 50) as usize;
        let g = gen_random_cactus(n, cycles, seed).unwrap();
        if is_colorable(&g).unwrap() {
            check(&g, &mut kinds);
        }
    }
    assert_eq!(kinds.len(), 7, "{kinds:?}");
}

#[test]
fn end_grapes_satisfy_their_definition() {
    for g in enumerate_cacti(10) {
        let cycles = g.cycle_rank();
        for eg in end_grapes(&g).unwrap() {
            assert!(eg.validate(&g), "{:?} at {}", g.edges(), eg.root);
            let rest = eg.root_component_edges(&g);
            let h = g.edge_subgraph(&rest).graph;
            assert!(h.cycle_rank() < cycles, "{:?} {:?} {}", g.edges(), eg, h.cycle_rank());
        }
    }
}

#[test]
fn bowtie_needs_four_and_grapes_need_at_most_three() {
    let b = gen_bowtie();
    assert_eq!(cactus_liec(&b).unwrap().num_colors(), 4);
    for lengths in [vec![4, 4], vec![3, 4, 5], vec![6, 6, 6, 6], vec![3, 3, 3]] {
        for tail in 0..4 {
            let g = gen_grape(&lengths, tail).unwrap();
            if !is_colorable(&g).unwrap() {
                continue;
            }
            let col = cactus_liec(&g).unwrap();
            assert!(is_liec(&g, &col) && col.num_colors() <= 3, "{lengths:?} {tail}");
        }
    }
}

#[test]
fn large_cactus() {
    let g = gen_random_cactus(600, 80, 11).unwrap();
    let col = cactus_liec(&g).unwrap();
    assert!(is_liec(&g, &col) && col.num_colors() <= 4);
}

#[test]
fn components_are_solved_separately() {
    let g = Graph::new(9, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (7, 8)]).unwrap();
    assert_eq!(cactus_liec(&g).unwrap_err(), Error::Disconnected);
    assert!(matches!(cactus_liec_components(&g), Err(Error::NonColorable(_))));
    let h = g.without_edges(&[6]).unwrap();
    let col = cactus_liec_components(&h).unwrap();
    assert!(is_liec(&h, &col));
}
