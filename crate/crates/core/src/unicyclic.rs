//! Colorings of unicyclic graphs with at most three colors.
//!
//! Exact search: the pendant trees are summarized by their degree tables and
//! a dynamic program walks once around the cycle, carrying the color of the
//! last cycle edge and the degree of its tail in that color. Trying 1, 2 and
//! 3 colors in turn returns a coloring with the fewest colors.

use std::collections::BTreeMap;

use crate::blocks::{cycle_order, decompose_blocks, BlockKind};
use crate::classify::classify;
use crate::coloring::{is_liec, Color, EdgeColoring};
use crate::dp::{assign_children, degrees, local_options, PendantDp};
use crate::error::{internal, Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

/// A liec of a colorable unicyclic graph using the fewest colors (at most 3).
pub fn unicyclic_liec(g: &Graph) -> Result<EdgeColoring> {
    g.require_connected()?;
    if g.m() != g.n() {
        return Err(Error::InvalidInput("graph is not unicyclic".into()));
    }
    let class = classify(g)?.class;
    if !class.is_colorable() {
        return Err(Error::NonColorable(class));
    }
    for k in 1..=3 {
        if let Some(col) = unicyclic_liec_with(g, k)? {
            return Ok(col);
        }
    }
    Err(internal("colorable unicyclic graph without a 3-liec"))
}

/// Exact search for a liec of a unicyclic graph with at most `k` colors.
pub fn unicyclic_liec_with(g: &Graph, k: usize) -> Result<Option<EdgeColoring>> {
    g.require_connected()?;
    if g.m() != g.n() {
        return Err(Error::InvalidInput("graph is not unicyclic".into()));
    }
    if k == 0 || k > Color::MAX as usize {
        return Err(Error::InvalidInput(format!("bad color count {k}")));
    }
    let bt = decompose_blocks(g)?;
    let block = bt
        .blocks
        .iter()
        .find(|b| b.kind == BlockKind::Cycle)
        .ok_or_else(|| internal("unicyclic graph without a cycle block"))?;
    let order = cycle_order(g, block, block.vertices[0]);
    let search = CycleSearch::new(g, &order, k);
    let Some(col) = search.run() else {
        return Ok(None);
    };
    if !is_liec(g, &col) {
        return Err(internal("cycle search produced an invalid coloring"));
    }
    Ok(Some(col.compact()))
}

type State = (usize, usize);
type Option2 = (Vec<usize>, Vec<usize>);

struct CycleSearch<'g> {
    g: &'g Graph,
    k: usize,
    order: Vec<Vertex>,
    cycle_edges: Vec<EdgeId>,
    hanging: Vec<Vec<(Vertex, EdgeId)>>,
    dp: PendantDp<'g>,
}

impl<'g> CycleSearch<'g> {
    fn new(g: &'g Graph, order: &[Vertex], k: usize) -> Self {
        let len = order.len();
        let mut on_cycle = vec![false; g.n()];
        for &v in order {
            on_cycle[v] = true;
        }
        let cycle_edges = (0..len)
            .map(|i| g.edge_id(order[i], order[(i + 1) % len]).expect("cycle edge"))
            .collect();
        let mut dp = PendantDp::new(g, k);
        let mut hanging = Vec::with_capacity(len);
        for &c in order {
            let kids: Vec<(Vertex, EdgeId)> = g
                .incident(c)
                .iter()
                .copied()
                .filter(|&(y, _)| !on_cycle[y])
                .collect();
            for &(y, _) in &kids {
                dp.compute(y, c);
            }
            hanging.push(kids);
        }
        CycleSearch {
            g,
            k,
            order: order.to_vec(),
            cycle_edges,
            hanging,
            dp,
        }
    }

    fn sets(&self, i: usize) -> Vec<&[usize]> {
        self.hanging[i]
            .iter()
            .map(|&(y, _)| self.dp.feasible(y))
            .collect()
    }

    fn options(&self, i: usize, incoming: usize, outgoing: usize) -> Vec<Option2> {
        local_options(self.k, &[incoming, outgoing], &self.sets(i))
    }

    /// Cycle edge `i` joins `order[i]` and `order[i + 1]`. Edge 0 is fixed to
    /// color 0 and the closing edge to color 0 or 1, which covers every
    /// coloring up to renaming.
    fn run(&self) -> Option<EdgeColoring> {
        let len = self.order.len();
        let k = self.k;
        for closing in 0..k.min(2) {
            for start in self.options(0, closing, 0) {
                let (ref key0, _) = start;
                // layers[i]: state after vertex i -> (previous state, option)
                let mut layers: Vec<BTreeMap<State, (State, Option2)>> = Vec::with_capacity(len);
                let mut first = BTreeMap::new();
                first.insert((0, key0[1]), ((closing, key0[0]), start.clone()));
                layers.push(first);
                for i in 1..len {
                    let mut next: BTreeMap<State, (State, Option2)> = BTreeMap::new();
                    let outs: Vec<usize> = if i == len - 1 {
                        vec![closing]
                    } else {
                        (0..k).collect()
                    };
                    let mut cache: BTreeMap<(usize, usize), Vec<Option2>> = BTreeMap::new();
                    for &(incoming, t) in layers[i - 1].keys() {
                        for &out in &outs {
                            let opts = cache
                                .entry((incoming, out))
                                .or_insert_with(|| self.options(i, incoming, out));
                            for opt in opts.iter() {
                                if opt.0[0] == t {
                                    continue;
                                }
                                next.entry((out, opt.0[1]))
                                    .or_insert(((incoming, t), opt.clone()));
                            }
                        }
                    }
                    if next.is_empty() {
                        break;
                    }
                    layers.push(next);
                }
                if layers.len() < len {
                    continue;
                }
                let closing_degree_at_start = key0[0];
                let end = layers[len - 1]
                    .keys()
                    .find(|&&(c, t)| c == closing && t != closing_degree_at_start)
                    .copied();
                if let Some(end) = end {
                    return Some(self.build(&layers, end));
                }
            }
        }
        None
    }

    fn build(&self, layers: &[BTreeMap<State, (State, Option2)>], end: State) -> EdgeColoring {
        let len = self.order.len();
        let base: Vec<Color> = (1..=self.k as Color).collect();
        let mut out = vec![0 as Color; self.g.m()];
        let mut state = end;
        for i in (0..len).rev() {
            let (prev, (_, counts)) = &layers[i][&state];
            let (incoming, outgoing) = (prev.0, state.0);
            out[self.cycle_edges[i]] = base[outgoing];
            let fixed = [incoming, outgoing];
            let sets = self.sets(i);
            let colors = assign_children(&fixed, &sets, counts);
            let deg = degrees(counts, &fixed);
            for ((&(y, e), &c), set) in self.hanging[i].iter().zip(&colors).zip(&sets) {
                out[e] = base[c];
                let t = *set.iter().find(|&&s| s != deg[c]).expect("feasible child");
                let mut perm = base.clone();
                perm.swap(0, c);
                self.dp.color_subtree(y, t, &perm, &mut out);
            }
            state = *prev;
        }
        EdgeColoring::from_vec_unchecked(out)
    }
}
