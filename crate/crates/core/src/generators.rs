//! Seeded graph generators and exhaustive cactus enumeration for test
//! corpora. Every random generator is deterministic in its seed.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks::{cycle_order, decompose_blocks, BlockKind, BlockTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Default cap on the random path lengths used by [`gen_t_member`].
pub const DEFAULT_MAX_LEN: usize = 6;

/// The bow-tie: two adjacent vertices, each carrying two triangles. It is
/// colorable but needs four colors, and it is the only cactus with at most
/// 14 edges that does.
pub fn gen_bowtie() -> Graph {
    Graph::from_edges(&[
        (0, 1),
        (0, 2),
        (2, 3),
        (0, 3),
        (0, 4),
        (4, 5),
        (0, 5),
        (1, 6),
        (6, 7),
        (1, 7),
        (1, 8),
        (8, 9),
        (1, 9),
    ])
    .expect("static graph")
}

/// Two triangles sharing a vertex.
pub fn gen_butterfly() -> Graph {
    Graph::from_edges(&[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).expect("static graph")
}

/// A grape: cycles of the given lengths all through vertex 0, plus a pendant
/// path of `tail` edges at vertex 0.
pub fn gen_grape(cycle_lengths: &[usize], tail: usize) -> Result<Graph> {
    let mut b = Builder::new();
    for &len in cycle_lengths {
        if len < 3 {
            return Err(Error::InvalidInput(format!("cycle length {len} < 3")));
        }
        b.cycle(0, len);
    }
    b.path(0, tail);
    b.finish()
}

/// A member of the non-colorable triangle family: start from a triangle and
/// apply `steps` random growth moves. Each move picks a triangle vertex of
/// degree 2 and attaches either a pendant path of even length or a new
/// triangle through a path of odd length. Path lengths are at most
/// [`DEFAULT_MAX_LEN`]. Stops early when no triangle vertex of degree 2 is
/// left.
pub fn gen_t_member(seed: u64, steps: usize) -> Graph {
    gen_t_member_with(seed, steps, DEFAULT_MAX_LEN)
}

pub fn gen_t_member_with(seed: u64, steps: usize, max_len: usize) -> Graph {
    let max_len = max_len.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new();
    b.cycle(0, 3);
    let mut tri_vertices: Vec<Vertex> = vec![0, 1, 2];
    for _ in 0..steps {
        let open: Vec<Vertex> = tri_vertices
            .iter()
            .copied()
            .filter(|&v| b.degree(v) == 2)
            .collect();
        let Some(&v) = open.choose(&mut rng) else {
            break;
        };
        if rng.gen_bool(0.5) {
            let len = 2 * rng.gen_range(1..=max_len / 2);
            apply_pendant(&mut b, v, len);
        } else {
            let len = 2 * rng.gen_range(0..=(max_len - 1) / 2) + 1;
            let start = b.n;
            apply_triangle(&mut b, v, len);
            tri_vertices.extend(start + len - 1..start + len + 2);
        }
    }
    b.finish().expect("family members are simple graphs")
}

/// Growth move: an even path hanging at `v`.
fn apply_pendant(b: &mut Builder, v: Vertex, len: usize) {
    b.path(v, len);
}

/// Growth move: a path of odd length from `v` ending in a new triangle.
fn apply_triangle(b: &mut Builder, v: Vertex, len: usize) {
    let end = b.path(v, len);
    b.cycle(end, 3);
}

/// A random tree on `n` vertices: each new vertex attaches to a uniformly
/// chosen earlier one, then ids are shuffled.
pub fn gen_random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    relabel(n, &edges, &mut rng)
}

/// A random connected cactus with `n` vertices and exactly `cycles` cycles.
/// Cycle lengths are at least 3; each cycle and each remaining vertex is
/// attached at a uniformly chosen existing vertex, in random order.
pub fn gen_random_cactus(n: usize, cycles: usize, seed: u64) -> Result<Graph> {
    if n == 0 || n < 1 + 2 * cycles {
        return Err(Error::InvalidInput(format!(
            "{cycles} cycles need at least {} vertices, got {n}",
            1 + 2 * cycles
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spare = n - 1 - 2 * cycles;
    let mut ops: Vec<usize> = Vec::new();
    for _ in 0..cycles {
        let extra = rng.gen_range(0..=spare.min(4));
        spare -= extra;
        ops.push(3 + extra);
    }
    ops.extend(std::iter::repeat(1).take(spare));
    ops.shuffle(&mut rng);
    let mut b = Builder::new();
    for len in ops {
        let at = rng.gen_range(0..b.n);
        if len == 1 {
            b.path(at, 1);
        } else {
            b.cycle(at, len);
        }
    }
    debug_assert_eq!(b.n, n);
    Ok(relabel(n, &b.edges, &mut rng))
}

/// A random unicyclic graph on `n >= 3` vertices.
pub fn gen_random_unicyclic(n: usize, seed: u64) -> Result<Graph> {
    gen_random_cactus(n, 1, seed)
}

fn relabel(n: usize, edges: &[(Vertex, Vertex)], rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let mut mapped: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    mapped.shuffle(rng);
    Graph::new(n, mapped).expect("relabeling keeps the graph simple")
}

struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    deg: Vec<usize>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            n: 1,
            edges: Vec::new(),
            deg: vec![0],
        }
    }

    fn vertex(&mut self) -> Vertex {
        self.n += 1;
        self.deg.push(0);
        self.n - 1
    }

    fn edge(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((u, v));
        self.deg[u] += 1;
        self.deg[v] += 1;
    }

    fn degree(&self, v: Vertex) -> usize {
        self.deg[v]
    }

    /// Hangs a path of `len` new edges at `v`; returns its far end.
    fn path(&mut self, v: Vertex, len: usize) -> Vertex {
        let mut cur = v;
        for _ in 0..len {
            let next = self.vertex();
            self.edge(cur, next);
            cur = next;
        }
        cur
    }

    /// Grafts a cycle of `len` edges through `v` using new vertices.
    fn cycle(&mut self, v: Vertex, len: usize) {
        let end = self.path(v, len - 1);
        self.edge(end, v);
    }

    fn finish(self) -> Result<Graph> {
        Graph::new(self.n, self.edges)
    }
}

/// Isomorphism-invariant code of a connected cactus.
pub fn cactus_code(g: &Graph) -> Result<String> {
    let bt = decompose_blocks(g)?;
    if bt.blocks.iter().any(|b| b.kind == BlockKind::Other) {
        return Err(Error::NotCactus);
    }
    Ok((0..g.n())
        .map(|r| encode(g, &bt, r, None))
        .min()
        .unwrap_or_default())
}

fn encode(g: &Graph, bt: &BlockTree, v: Vertex, via: Option<usize>) -> String {
    let mut parts: Vec<String> = Vec::new();
    for &b in &bt.vertex_blocks[v] {
        if Some(b) == via {
            continue;
        }
        let block = &bt.blocks[b];
        match block.kind {
            BlockKind::Bridge => {
                let (x, y) = g.edge(block.edges[0]);
                let w = if x == v { y } else { x };
                parts.push(format!("b{}", encode(g, bt, w, Some(b))));
            }
            _ => {
                let order = cycle_order(g, block, v);
                let seq: Vec<String> = order[1..].iter().map(|&x| encode(g, bt, x, Some(b))).collect();
                let fwd = seq.concat();
                let rev: String = seq.iter().rev().map(String::as_str).collect();
                parts.push(format!("c({})", fwd.min(rev)));
            }
        }
    }
    parts.sort();
    format!("({})", parts.concat())
}

/// All connected cacti with `1..=max_edges` edges up to isomorphism, ordered
/// by edge count and then by canonical code.
pub fn enumerate_cacti(max_edges: usize) -> Vec<Graph> {
    let mut levels: Vec<BTreeMap<String, Graph>> = vec![BTreeMap::new(); max_edges + 1];
    let single = Graph::new(1, []).expect("single vertex");
    levels[0].insert(cactus_code(&single).expect("cactus"), single);
    for m in 0..max_edges {
        let current: Vec<Graph> = levels[m].values().cloned().collect();
        for g in current {
            for v in 0..g.n() {
                let mut grown = vec![(g.n() + 1, 1)];
                grown.extend((3..=max_edges - m).map(|len| (g.n() + len - 1, len)));
                for (n2, len) in grown {
                    if m + len > max_edges {
                        continue;
                    }
                    let mut edges = g.edges().to_vec();
                    if len == 1 {
                        edges.push((v, g.n()));
                    } else {
                        let mut prev = v;
                        for x in g.n()..n2 {
                            edges.push((prev, x));
                            prev = x;
                        }
                        edges.push((prev, v));
                    }
                    let h = Graph::new(n2, edges).expect("augmentation is simple");
                    let code = cactus_code(&h).expect("augmentation is a cactus");
                    levels[m + len].entry(code).or_insert(h);
                }
            }
        }
    }
    levels
        .into_iter()
        .skip(1)
        .flat_map(|level| level.into_values())
        .collect()
}
