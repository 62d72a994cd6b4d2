//! Colorings of cactus graphs with at most four colors.
//!
//! Induction on the number of cycles. Trees and unicyclic graphs are solved
//! directly, grapes (all cycles through one vertex) by removing one edge per
//! cycle at the root. Otherwise an end-grape, a grape hanging off the rest of
//! the graph at a single vertex `u`, is split off: its tree part is colored
//! with colors 1-3 keeping color 3 away from `u` and the berry neighbors,
//! the rest is colored recursively, and the two are glued after renaming the
//! colors at `u`.
//!
//! Every graph met during the reduction is a subgraph of the input, so the
//! solver keeps one color per input edge and records at which depth each
//! edge was colored. Unwinding renames the colors of everything deeper.

use std::collections::BTreeSet;

use crate::blocks::{decompose_blocks, is_cactus, BlockKind, BlockTree};
use crate::classify::{classify, is_colorable, ColorabilityClass};
use crate::coloring::{complete_bijection, is_liec, Color, EdgeColoring, A, B, C, D};
use crate::error::{internal, Error, Result};
use crate::graph::{EdgeId, Graph, Subgraph, Vertex};
use crate::tree::{tree_liec, tree_liec_avoiding};
use crate::unicyclic::unicyclic_liec;

/// A grape hanging off the rest of a cactus at its root `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndGrape {
    pub root: Vertex,
    /// The two cycle neighbors `(v, w)` of the root in each unicyclic berry,
    /// `v < w`, ordered by `v`.
    pub cyclic_berries: Vec<(Vertex, Vertex)>,
    /// The root's neighbor in each acyclic berry, ascending.
    pub acyclic_berries: Vec<Vertex>,
    /// The edges `u v_i`, one per cycle.
    pub e_u: Vec<EdgeId>,
    /// One edge, or two edges of a common cycle, joining the root to the
    /// root component.
    pub exit_edges: Vec<EdgeId>,
    /// All edges of the grape, ascending.
    pub edges: Vec<EdgeId>,
}

impl EndGrape {
    pub fn p(&self) -> usize {
        self.cyclic_berries.len()
    }

    pub fn q(&self) -> usize {
        self.acyclic_berries.len()
    }

    /// Neighbors of the root in the root component, in exit edge order.
    pub fn exit_neighbors(&self, g: &Graph) -> Vec<Vertex> {
        self.exit_edges.iter().map(|&e| g.other(e, self.root)).collect()
    }

    /// Edges of `g` outside the grape.
    pub fn root_component_edges(&self, g: &Graph) -> Vec<EdgeId> {
        let mut inside = vec![false; g.m()];
        for &e in &self.edges {
            inside[e] = true;
        }
        (0..g.m()).filter(|&e| !inside[e]).collect()
    }

    /// Re-checks the defining properties against `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let u = self.root;
        let mut in_grape = vec![false; g.m()];
        for &e in &self.edges {
            in_grape[e] = true;
        }
        let grape = g.edge_subgraph(&self.edges);
        let rest = g.edge_subgraph(&self.root_component_edges(g));
        let Some(lu) = grape.local_vertex(u) else {
            return false;
        };
        // u is the only shared vertex
        let shared = grape
            .vertex_map
            .iter()
            .filter(|&&x| rest.local_vertex(x).is_some())
            .count();
        if shared != 1 || rest.local_vertex(u).is_none() {
            return false;
        }
        if !grape.graph.is_connected() || !rest.graph.is_connected() {
            return false;
        }
        // every cycle of the grape passes through u
        let Ok(bt) = decompose_blocks(&grape.graph) else {
            return false;
        };
        if bt.cycle_count() != self.p() || bt.cycles().any(|(_, b)| !b.contains(lu)) {
            return false;
        }
        if self.p() == 0 || grape.graph.degree(lu) != 2 * self.p() + self.q() {
            return false;
        }
        // exit edges: one bridge, or two edges of one cycle
        let mut exits: Vec<EdgeId> = g
            .incident(u)
            .iter()
            .filter(|&&(_, e)| !in_grape[e])
            .map(|&(_, e)| e)
            .collect();
        exits.sort_unstable();
        let mut sorted_exits = self.exit_edges.clone();
        sorted_exits.sort_unstable();
        if exits != sorted_exits {
            return false;
        }
        let Ok(gbt) = decompose_blocks(g) else {
            return false;
        };
        let block_of = edge_blocks(g, &gbt);
        match exits.as_slice() {
            [e] => gbt.blocks[block_of[*e]].kind == BlockKind::Bridge,
            [e, f] => {
                block_of[*e] == block_of[*f] && gbt.blocks[block_of[*e]].kind == BlockKind::Cycle
            }
            _ => false,
        }
    }
}

fn edge_blocks(g: &Graph, bt: &BlockTree) -> Vec<usize> {
    let mut block_of = vec![0; g.m()];
    for (b, block) in bt.blocks.iter().enumerate() {
        for &e in &block.edges {
            block_of[e] = b;
        }
    }
    block_of
}

/// Cycle counts of the branches at every cut vertex, from the block-cut tree
/// rooted at block 0.
struct Branches<'a> {
    bt: &'a BlockTree,
    parent_block: Vec<usize>,
    sub_block: Vec<usize>,
    sub_vertex: Vec<usize>,
    total: usize,
}

impl<'a> Branches<'a> {
    fn new(g: &Graph, bt: &'a BlockTree) -> Self {
        let nb = bt.blocks.len();
        let mut parent_block = vec![usize::MAX; g.n()];
        let mut parent_cut = vec![usize::MAX; nb];
        let mut sub_block = vec![0; nb];
        let mut sub_vertex = vec![0; g.n()];
        #[derive(Clone, Copy)]
        enum Node {
            Block(usize),
            Cut(Vertex),
        }
        let mut order = Vec::new();
        if nb > 0 {
            let mut stack = vec![Node::Block(0)];
            while let Some(node) = stack.pop() {
                order.push(node);
                match node {
                    Node::Block(b) => {
                        for &v in &bt.blocks[b].vertices {
                            if bt.is_cut_vertex(v) && v != parent_cut[b] {
                                parent_block[v] = b;
                                stack.push(Node::Cut(v));
                            }
                        }
                    }
                    Node::Cut(v) => {
                        for &b in &bt.vertex_blocks[v] {
                            if b != parent_block[v] {
                                parent_cut[b] = v;
                                stack.push(Node::Block(b));
                            }
                        }
                    }
                }
            }
        }
        for &node in order.iter().rev() {
            match node {
                Node::Block(b) => {
                    let own = usize::from(bt.blocks[b].kind == BlockKind::Cycle);
                    sub_block[b] += own;
                    if parent_cut[b] != usize::MAX {
                        sub_vertex[parent_cut[b]] += sub_block[b];
                    }
                }
                Node::Cut(v) => sub_block[parent_block[v]] += sub_vertex[v],
            }
        }
        Branches {
            bt,
            parent_block,
            sub_block,
            sub_vertex,
            total: bt.cycle_count(),
        }
    }

    /// Cycles in the branch at cut vertex `u` that starts with block `b`.
    fn cycles(&self, u: Vertex, b: usize) -> usize {
        if b == self.parent_block[u] {
            self.total - self.sub_vertex[u]
        } else {
            self.sub_block[b]
        }
    }

    /// A branch is a berry when its only cycle, if any, is its first block.
    fn is_berry(&self, u: Vertex, b: usize) -> bool {
        self.cycles(u, b) == usize::from(self.bt.blocks[b].kind == BlockKind::Cycle)
    }
}

fn require_cactus(g: &Graph) -> Result<BlockTree> {
    let bt = decompose_blocks(g)?;
    if bt.blocks.iter().any(|b| b.kind == BlockKind::Other) {
        return Err(Error::NotCactus);
    }
    Ok(bt)
}

/// The common vertex of all cycles of a cactus with at least two cycles,
/// if there is one.
fn grape_root(bt: &BlockTree) -> Option<Vertex> {
    let mut cycles = bt.cycles().map(|(_, b)| b);
    let first = cycles.next()?;
    let mut common: Vec<Vertex> = first.vertices.clone();
    for block in cycles {
        common.retain(|&v| block.contains(v));
    }
    common.first().copied()
}

/// Whether `g` is a cactus whose cycles, at least one, all share a vertex.
pub fn is_grape(g: &Graph) -> Result<bool> {
    Ok(grape_root(&require_cactus(g)?).is_some())
}

/// Every end-grape of a connected cactus, by increasing root. A grape has
/// none.
pub fn end_grapes(g: &Graph) -> Result<Vec<EndGrape>> {
    let bt = require_cactus(g)?;
    let br = Branches::new(g, &bt);
    let mut out = Vec::new();
    for u in 0..g.n() {
        if !bt.is_cut_vertex(u) {
            continue;
        }
        let blocks = &bt.vertex_blocks[u];
        let non_berries: Vec<usize> = blocks
            .iter()
            .copied()
            .filter(|&b| !br.is_berry(u, b))
            .collect();
        let [root_block] = non_berries.as_slice() else {
            continue;
        };
        let has_cycle = blocks
            .iter()
            .any(|&b| b != *root_block && bt.blocks[b].kind == BlockKind::Cycle);
        if has_cycle {
            out.push(materialize(g, &bt, u, *root_block));
        }
    }
    Ok(out)
}

/// An end-grape of a connected cactus with at least two cycles that is not
/// itself a grape: the one with the smallest root.
pub fn find_end_grape(g: &Graph) -> Result<EndGrape> {
    g.require_connected()?;
    let bt = require_cactus(g)?;
    if bt.cycle_count() < 2 {
        return Err(Error::InvalidInput(
            "end-grapes need at least two cycles".into(),
        ));
    }
    if grape_root(&bt).is_some() {
        return Err(Error::NotApplicable("the graph is a grape".into()));
    }
    end_grapes(g)?
        .into_iter()
        .next()
        .ok_or_else(|| internal("cactus without an end-grape"))
}

fn materialize(g: &Graph, bt: &BlockTree, u: Vertex, root_block: usize) -> EndGrape {
    let block_of = edge_blocks(g, bt);
    let mut cyclic_berries = Vec::new();
    let mut acyclic_berries = Vec::new();
    let mut exit_edges = Vec::new();
    for &b in &bt.vertex_blocks[u] {
        let at_u: Vec<(Vertex, EdgeId)> = g
            .incident(u)
            .iter()
            .copied()
            .filter(|&(_, e)| block_of[e] == b)
            .collect();
        if b == root_block {
            exit_edges = at_u.iter().map(|&(_, e)| e).collect();
        } else if let [(x, _), (y, _)] = at_u.as_slice() {
            cyclic_berries.push(((*x).min(*y), (*x).max(*y)));
        } else {
            acyclic_berries.push(at_u[0].0);
        }
    }
    cyclic_berries.sort_unstable();
    acyclic_berries.sort_unstable();
    let e_u = cyclic_berries
        .iter()
        .map(|&(v, _)| g.edge_id(u, v).expect("berry edge"))
        .collect();
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    let mut edges = Vec::new();
    let mut stack = Vec::new();
    for &(x, e) in g.incident(u) {
        if block_of[e] != root_block {
            edges.push(e);
            if !seen[x] {
                seen[x] = true;
                stack.push(x);
            }
        }
    }
    while let Some(x) = stack.pop() {
        for &(y, e) in g.incident(x) {
            if y == u {
                continue;
            }
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
            if x < y {
                edges.push(e);
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    EndGrape {
        root: u,
        cyclic_berries,
        acyclic_berries,
        e_u,
        exit_edges,
        edges,
    }
}

/// Walks a path from `start` through `next` until a vertex of degree 1.
fn walk(t: &Graph, start: Vertex, next: Vertex) -> Vec<Vertex> {
    let mut path = vec![start, next];
    loop {
        let cur = path[path.len() - 1];
        let prev = path[path.len() - 2];
        match t.neighbors(cur).find(|&y| y != prev) {
            Some(y) if t.degree(cur) == 2 => path.push(y),
            _ => return path,
        }
    }
}

/// For an odd path `t` and a vertex `u` on it: the neighbor `z` of `u` such
/// that removing `uz` leaves even paths, and those paths, the one through
/// `u` (if any) starting at `u`.
fn split_odd_path(t: &Graph, u: Vertex) -> (Vertex, Vec<Vec<Vertex>>) {
    let nbrs: Vec<Vertex> = t.neighbors(u).collect();
    match nbrs.as_slice() {
        [z] => {
            let rest = if t.degree(*z) > 1 {
                let next = t.neighbors(*z).find(|&y| y != u).expect("path continues");
                vec![walk(t, *z, next)]
            } else {
                Vec::new()
            };
            (*z, rest)
        }
        [x, y] => {
            let side_x = walk(t, u, *x);
            let (z, other) = if (side_x.len() - 1) % 2 == 1 {
                (*x, *y)
            } else {
                (*y, *x)
            };
            let mut paths = vec![walk(t, u, other)];
            if t.degree(z) > 1 {
                let next = t.neighbors(z).find(|&w| w != u).expect("path continues");
                paths.push(walk(t, z, next));
            }
            (z, paths)
        }
        _ => unreachable!("vertex of a path has one or two neighbors"),
    }
}

/// Colors an even path in consecutive monochromatic pairs, the first pair in
/// `first` and then alternating with `second`.
fn color_pairs(
    t: &Graph,
    path: &[Vertex],
    first: Color,
    second: Color,
    out: &mut [Color],
    edge_map: &[EdgeId],
) {
    for (j, w) in path.windows(2).enumerate() {
        let e = t.edge_id(w[0], w[1]).expect("path edge");
        out[edge_map[e]] = if (j / 2) % 2 == 0 { first } else { second };
    }
}

/// A liec of a grape with at least two cycles, using at most four colors,
/// and three when removing one edge per cycle at the root leaves an odd
/// path.
pub fn grape_liec(g: &Graph) -> Result<EdgeColoring> {
    g.require_connected()?;
    let bt = require_cactus(g)?;
    if bt.cycle_count() < 2 {
        return Err(Error::NotApplicable(
            "a grape needs at least two cycles here".into(),
        ));
    }
    let u = grape_root(&bt).ok_or_else(|| Error::NotApplicable("not a grape".into()))?;
    let class = classify(g)?.class;
    if !class.is_colorable() {
        return Err(Error::NonColorable(class));
    }
    let e_u: Vec<EdgeId> = bt
        .cycles()
        .map(|(_, block)| {
            let v = g
                .neighbors(u)
                .filter(|&x| block.contains(x))
                .min()
                .expect("root lies on every cycle");
            g.edge_id(u, v).expect("cycle edge")
        })
        .collect();
    let mut out = vec![0 as Color; g.m()];
    let t_edges: Vec<EdgeId> = (0..g.m()).filter(|e| !e_u.contains(e)).collect();
    let t = g.edge_subgraph(&t_edges);
    if is_colorable(&t.graph)? {
        let col = tree_liec(&t.graph)?;
        for (local, &e) in t.edge_map.iter().enumerate() {
            out[e] = col.get(local);
        }
        for &e in &e_u {
            out[e] = D;
        }
    } else {
        let tu = t.local_vertex(u).expect("root in tree");
        let (z, paths) = split_odd_path(&t.graph, tu);
        for path in &paths {
            color_pairs(&t.graph, path, A, B, &mut out, &t.edge_map);
        }
        for &e in &e_u {
            out[e] = C;
        }
        let uz = t.graph.edge_id(tu, z).expect("tree edge");
        out[t.edge_map[uz]] = C;
    }
    let col = EdgeColoring::from_vec_unchecked(out);
    if !is_liec(g, &col) {
        return Err(internal("grape coloring is not locally irregular"));
    }
    Ok(col.compact())
}

/// The reduction for an end-grape made of one non-colorable triangular berry
/// `u v w` with a single exit edge: the rest of the graph is the component
/// of `G - v` containing `u`, and the remaining tree `T` (the path `u v w`
/// with the even path hanging at `v`) is colored with colors 2 and 3 so that
/// `u` and `w` only see color 3.
#[derive(Clone, Debug)]
pub struct BerryReduction {
    /// The component of `G - v` containing `u`, with maps into `G`.
    pub reduced: Subgraph,
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
    /// Edges of `T` in `G` and their colors.
    pub tree_edges: Vec<EdgeId>,
    pub tree_colors: Vec<Color>,
}

/// Whether `eg` is a single non-colorable triangular berry with one exit
/// edge.
pub fn is_reducible_berry(g: &Graph, eg: &EndGrape) -> Result<bool> {
    if eg.p() != 1 || eg.q() != 0 || eg.exit_edges.len() != 1 {
        return Ok(false);
    }
    let (v, w) = eg.cyclic_berries[0];
    if !g.has_edge(v, w) {
        return Ok(false);
    }
    let berry = g.edge_subgraph(&eg.edges);
    Ok(!is_colorable(&berry.graph)?)
}

pub fn reduce_noncolorable_berry(g: &Graph, eg: &EndGrape) -> Result<BerryReduction> {
    if !is_reducible_berry(g, eg)? {
        return Err(Error::InvalidInput(
            "end-grape is not a single non-colorable triangular berry with one exit edge".into(),
        ));
    }
    let u = eg.root;
    let (v, w) = eg.cyclic_berries[0];
    let mut tree_edges = vec![
        g.edge_id(u, v).expect("triangle edge"),
        g.edge_id(v, w).expect("triangle edge"),
    ];
    let mut tree_colors = vec![C, C];
    if let Some(x) = g.neighbors(v).find(|&x| x != u && x != w) {
        let path = walk(g, v, x);
        for (j, pair) in path.windows(2).enumerate() {
            tree_edges.push(g.edge_id(pair[0], pair[1]).expect("path edge"));
            tree_colors.push(if (j / 2) % 2 == 0 { B } else { C });
        }
    }
    let mut in_tree = vec![false; g.m()];
    for &e in &tree_edges {
        in_tree[e] = true;
    }
    let rest: Vec<EdgeId> = (0..g.m()).filter(|&e| !in_tree[e]).collect();
    Ok(BerryReduction {
        reduced: g.edge_subgraph(&rest),
        u,
        v,
        w,
        tree_edges,
        tree_colors,
    })
}

/// One step of the reduction, in the order taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Tree,
    Unicyclic,
    Grape,
    /// The grape minus one edge per cycle is an odd path.
    OddPath,
    /// At least two cycles in the end-grape; `repaired` when the edge `u v1`
    /// had to move to color 4.
    ManyCycles { repaired: bool },
    /// One cycle in the end-grape, glued through the edge `u v1`.
    OneCycle,
    /// A non-colorable triangular berry was split off.
    Berry,
}

/// A liec of a colorable cactus with at most four colors.
pub fn cactus_liec(g: &Graph) -> Result<EdgeColoring> {
    Ok(cactus_liec_traced(g)?.0)
}

/// [`cactus_liec`] applied to each component with at least one edge. Each
/// component is colored with `1..=k` for its own `k`.
pub fn cactus_liec_components(g: &Graph) -> Result<EdgeColoring> {
    let mut out = vec![0 as Color; g.m()];
    for comp in g.components() {
        let sub = g.induced(&comp);
        if sub.graph.m() == 0 {
            continue;
        }
        let col = cactus_liec(&sub.graph)?;
        for (local, &e) in sub.edge_map.iter().enumerate() {
            out[e] = col.get(local);
        }
    }
    Ok(EdgeColoring::from_vec_unchecked(out))
}

/// [`cactus_liec`] together with the reduction steps: descent order first,
/// then the base case.
pub fn cactus_liec_traced(g: &Graph) -> Result<(EdgeColoring, Vec<Step>)> {
    g.require_connected()?;
    if !is_cactus(g)? {
        return Err(Error::NotCactus);
    }
    let class = classify(g)?.class;
    if !class.is_colorable() {
        return Err(Error::NonColorable(class));
    }
    let mut solver = Solver {
        g,
        colors: vec![0; g.m()],
        depth: vec![UNSET; g.m()],
        trace: Vec::new(),
    };
    let mut frames = Vec::new();
    while let Some(frame) = solver.step(frames.len())? {
        frames.push(frame);
    }
    while let Some(frame) = frames.pop() {
        solver.glue(frames.len(), frame)?;
    }
    let col = EdgeColoring::from_vec_unchecked(solver.colors);
    if !is_liec(g, &col) {
        return Err(internal("glued cactus coloring is not locally irregular"));
    }
    if col.num_colors() > 4 {
        return Err(internal("cactus coloring uses more than four colors"));
    }
    Ok((col.compact(), solver.trace))
}

const UNSET: usize = usize::MAX;

/// What to do with the colors of the deeper levels when unwinding. Vertex
/// and edge ids refer to the input graph.
#[derive(Debug)]
enum Frame {
    /// The grape side sees colors 1 and 3 at `u`; move the rest to {2, 4}.
    OddPath { u: Vertex },
    /// The grape side sees colors 1, 2 and `p` edges of color 3 at `u`.
    ManyCycles {
        step: usize,
        u: Vertex,
        p: usize,
        exits: Vec<EdgeId>,
        uv1: EdgeId,
    },
    /// The deeper level contains `u v1`; move its colors at `u` to {3, 4}.
    OneCycle { u: Vertex },
    /// The deeper level must see one color at `u` and at most one more at
    /// `w`; they become 1 and 2.
    Berry { u: Vertex, w: Vertex },
}

struct Solver<'g> {
    g: &'g Graph,
    colors: Vec<Color>,
    depth: Vec<usize>,
    trace: Vec<Step>,
}

impl<'g> Solver<'g> {
    fn write(&mut self, level: usize, sub: &Subgraph, col: &EdgeColoring) {
        for (local, &e) in sub.edge_map.iter().enumerate() {
            self.colors[e] = col.get(local);
            self.depth[e] = level;
        }
    }

    fn set(&mut self, level: usize, e: EdgeId, c: Color) {
        self.colors[e] = c;
        self.depth[e] = level;
    }

    /// Colors the next part of the remaining graph. Returns the glue step,
    /// or `None` once the remainder was solved directly.
    fn step(&mut self, level: usize) -> Result<Option<Frame>> {
        let g = self.g;
        let remaining: Vec<EdgeId> = (0..g.m()).filter(|&e| self.depth[e] == UNSET).collect();
        let sub = g.edge_subgraph(&remaining);
        let lg = &sub.graph;
        if level > 0 && !is_colorable(lg)? {
            return Err(internal("reduction produced a non-colorable graph"));
        }
        let bt = decompose_blocks(lg)?;
        let direct = match bt.cycle_count() {
            0 => Some((Step::Tree, tree_liec(lg)?)),
            1 => Some((Step::Unicyclic, unicyclic_liec(lg)?)),
            _ if grape_root(&bt).is_some() => Some((Step::Grape, grape_liec(lg)?)),
            _ => None,
        };
        if let Some((kind, col)) = direct {
            self.trace.push(kind);
            self.write(level, &sub, &col);
            return Ok(None);
        }

        let eg = find_end_grape(lg)?;
        let to_g = |e: EdgeId| sub.edge_map[e];
        let u = sub.vertex_map[eg.root];
        let root_component: Vec<EdgeId> = eg.root_component_edges(lg).into_iter().map(to_g).collect();
        if !is_colorable(&g.edge_subgraph(&root_component).graph)? {
            return self.berry(level, &sub).map(Some);
        }
        let e_u: Vec<EdgeId> = eg.e_u.iter().map(|&e| to_g(e)).collect();
        let t_edges: Vec<EdgeId> = eg
            .edges
            .iter()
            .map(|&e| to_g(e))
            .filter(|e| !e_u.contains(e))
            .collect();
        let t = g.edge_subgraph(&t_edges);
        let tu = t.local_vertex(u).expect("root lies in the grape tree");

        if !is_colorable(&t.graph)? {
            let (z, paths) = split_odd_path(&t.graph, tu);
            let mut part = vec![0 as Color; g.m()];
            for path in &paths {
                color_pairs(&t.graph, path, A, B, &mut part, &t.edge_map);
            }
            for &e in &t.edge_map {
                self.set(level, e, part[e]);
            }
            for &e in &e_u {
                self.set(level, e, C);
            }
            let uz = t.edge_map[t.graph.edge_id(tu, z).expect("tree edge")];
            self.set(level, uz, C);
            self.trace.push(Step::OddPath);
            return Ok(Some(Frame::OddPath { u }));
        }

        let vs: Vec<Vertex> = eg
            .cyclic_berries
            .iter()
            .map(|&(v, _)| sub.vertex_map[v])
            .collect();
        if eg.p() >= 2 {
            let mut avoid = vec![tu];
            avoid.extend(vs.iter().map(|&v| t.local_vertex(v).expect("berry vertex")));
            let col = tree_liec_avoiding(&t.graph, &avoid)?;
            self.write(level, &t, &col);
            for &e in &e_u {
                self.set(level, e, C);
            }
            self.trace.push(Step::ManyCycles { repaired: false });
            return Ok(Some(Frame::ManyCycles {
                step: self.trace.len() - 1,
                u,
                p: eg.p(),
                exits: eg.exit_edges.iter().map(|&e| to_g(e)).collect(),
                uv1: e_u[0],
            }));
        }

        let mut widened = root_component;
        widened.push(e_u[0]);
        if !is_colorable(&g.edge_subgraph(&widened).graph)? {
            return self.berry(level, &sub).map(Some);
        }
        let v1 = t.local_vertex(vs[0]).expect("berry vertex");
        let col = tree_liec_avoiding(&t.graph, &[tu, v1])?;
        self.write(level, &t, &col);
        self.trace.push(Step::OneCycle);
        Ok(Some(Frame::OneCycle { u }))
    }

    fn berry(&mut self, level: usize, sub: &Subgraph) -> Result<Frame> {
        let lg = &sub.graph;
        let mut found = None;
        for eg in end_grapes(lg)? {
            if is_reducible_berry(lg, &eg)? {
                found = Some(eg);
                break;
            }
        }
        let eg = found.ok_or_else(|| {
            internal("no single non-colorable triangular berry to reduce")
        })?;
        let red = reduce_noncolorable_berry(lg, &eg)?;
        for (&e, &c) in red.tree_edges.iter().zip(&red.tree_colors) {
            self.set(level, sub.edge_map[e], c);
        }
        self.trace.push(Step::Berry);
        Ok(Frame::Berry {
            u: sub.vertex_map[red.u],
            w: sub.vertex_map[red.w],
        })
    }

    /// Colors at `v` on edges colored deeper than `level`.
    fn deeper_colors(&self, level: usize, v: Vertex) -> Vec<Color> {
        let set: BTreeSet<Color> = self
            .g
            .incident(v)
            .iter()
            .filter(|&&(_, e)| self.depth[e] > level)
            .map(|&(_, e)| self.colors[e])
            .collect();
        set.into_iter().collect()
    }

    fn deeper_degree(&self, level: usize, v: Vertex, c: Color) -> usize {
        self.g
            .incident(v)
            .iter()
            .filter(|&&(_, e)| self.depth[e] > level && self.colors[e] == c)
            .count()
    }

    fn rename(&mut self, level: usize, pairs: &[(Color, Color)]) -> Result<()> {
        let mapping = complete_bijection(4, pairs)?;
        for e in 0..self.g.m() {
            if self.depth[e] > level {
                self.colors[e] = mapping[self.colors[e] as usize - 1];
            }
        }
        Ok(())
    }

    fn glue(&mut self, level: usize, frame: Frame) -> Result<()> {
        match frame {
            Frame::OddPath { u } => {
                let at_u = self.deeper_colors(level, u);
                let targets = [B, D];
                let pairs: Vec<(Color, Color)> = at_u.iter().copied().zip(targets).collect();
                self.rename(level, &pairs)
            }
            Frame::ManyCycles {
                step,
                u,
                p,
                exits,
                uv1,
            } => {
                let at_u = self.deeper_colors(level, u);
                if at_u.len() == 1 {
                    return self.rename(level, &[(at_u[0], D)]);
                }
                let g = self.g;
                let (e1, e2) = (exits[0], exits[1]);
                let (c1, c2) = (self.colors[e1], self.colors[e2]);
                let d1 = self.deeper_degree(level, g.other(e1, u), c1);
                let d2 = self.deeper_degree(level, g.other(e2, u), c2);
                if d1 != p + 1 {
                    self.rename(level, &[(c1, C), (c2, D)])
                } else if d2 != p + 1 {
                    self.rename(level, &[(c2, C), (c1, D)])
                } else {
                    self.rename(level, &[(c1, C), (c2, D)])?;
                    self.colors[uv1] = D;
                    self.trace[step] = Step::ManyCycles { repaired: true };
                    Ok(())
                }
            }
            Frame::OneCycle { u } => {
                let at_u = self.deeper_colors(level, u);
                if at_u.len() > 2 {
                    return Err(internal("root sees three colors after adding the berry edge"));
                }
                let pairs: Vec<(Color, Color)> = at_u.iter().copied().zip([C, D]).collect();
                self.rename(level, &pairs)
            }
            Frame::Berry { u, w } => {
                let at_u = self.deeper_colors(level, u);
                let [x] = at_u.as_slice() else {
                    return Err(internal("berry root is not monochromatic"));
                };
                let mut pairs = vec![(*x, A)];
                let at_w = self.deeper_colors(level, w);
                let others: Vec<Color> = at_w.iter().copied().filter(|c| c != x).collect();
                match others.as_slice() {
                    [] => {}
                    [y] => pairs.push((*y, B)),
                    _ => return Err(internal("berry vertex sees too many colors")),
                }
                self.rename(level, &pairs)
            }
        }
    }
}

/// Classification of the remaining part after removing an end-grape, for
/// diagnostics.
pub fn root_component_class(g: &Graph, eg: &EndGrape) -> Result<ColorabilityClass> {
    let rest = g.edge_subgraph(&eg.root_component_edges(g));
    Ok(classify(&rest.graph)?.class)
}
