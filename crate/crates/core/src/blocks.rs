//! Block (biconnected component) decomposition and cactus recognition.

use crate::error::Result;
use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Bridge,
    Cycle,
    /// 2-connected but not a cycle; never present in a cactus.
    Other,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<Vertex>,
    pub kind: BlockKind,
}

impl Block {
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    /// For every vertex, the blocks containing it (sorted).
    pub vertex_blocks: Vec<Vec<usize>>,
}

impl BlockTree {
    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.vertex_blocks[v].len() >= 2
    }

    pub fn cycles(&self) -> impl Iterator<Item = (usize, &Block)> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.kind == BlockKind::Cycle)
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().count()
    }
}

/// Splits the edges of a connected graph into blocks with an iterative
/// lowpoint DFS. Bridges come out as single-edge blocks.
pub fn decompose_blocks(g: &Graph) -> Result<BlockTree> {
    g.require_connected()?;
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks = Vec::new();

    // (vertex, next adjacency index, edge to parent)
    let mut stack: Vec<(Vertex, usize, Option<EdgeId>)> = Vec::new();
    if n > 0 {
        disc[0] = time;
        low[0] = time;
        time += 1;
        stack.push((0, 0, None));
    }
    while let Some(top) = stack.last_mut() {
        let (v, i, parent_edge) = *top;
        let incident = g.incident(v);
        if i < incident.len() {
            top.1 += 1;
            let (w, e) = incident[i];
            if Some(e) == parent_edge {
                continue;
            }
            if disc[w] == usize::MAX {
                edge_stack.push(e);
                disc[w] = time;
                low[w] = time;
                time += 1;
                stack.push((w, 0, Some(e)));
            } else if disc[w] < disc[v] {
                edge_stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let (Some(&(p, _, _)), Some(pe)) = (stack.last(), parent_edge) {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    blocks.push(make_block(g, edges));
                }
            }
        }
    }

    let mut vertex_blocks = vec![Vec::new(); n];
    for (b, block) in blocks.iter().enumerate() {
        for &v in &block.vertices {
            vertex_blocks[v].push(b);
        }
    }
    let cut_vertices = (0..n).filter(|&v| vertex_blocks[v].len() >= 2).collect();
    Ok(BlockTree {
        blocks,
        cut_vertices,
        vertex_blocks,
    })
}

fn make_block(g: &Graph, mut edges: Vec<EdgeId>) -> Block {
    edges.sort_unstable();
    let mut vertices: Vec<Vertex> = edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.edge(e);
            [u, v]
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    let kind = if edges.len() == 1 {
        BlockKind::Bridge
    } else if edges.len() == vertices.len() {
        BlockKind::Cycle
    } else {
        BlockKind::Other
    };
    Block {
        edges,
        vertices,
        kind,
    }
}

/// A connected graph is a cactus when its cycles are pairwise edge-disjoint,
/// i.e. every block is a bridge or a cycle.
pub fn is_cactus(g: &Graph) -> Result<bool> {
    let bt = decompose_blocks(g)?;
    Ok(bt.blocks.iter().all(|b| b.kind != BlockKind::Other))
}

/// Vertices of a cycle block in cyclic order, starting at `start` and
/// continuing toward its smaller neighbor inside the block.
pub fn cycle_order(g: &Graph, block: &Block, start: Vertex) -> Vec<Vertex> {
    let in_block = |e: EdgeId| block.edges.binary_search(&e).is_ok();
    let next = |v: Vertex, prev: Option<Vertex>| -> Vertex {
        g.incident(v)
            .iter()
            .filter(|&&(w, e)| in_block(e) && Some(w) != prev)
            .map(|&(w, _)| w)
            .next()
            .expect("cycle vertex has two block neighbors")
    };
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let nxt = next(cur, prev);
        if nxt == start {
            break;
        }
        order.push(nxt);
        prev = Some(cur);
        cur = nxt;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn bowtie5() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap()
    }

    #[test]
    fn triangle_is_one_block() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]).unwrap();
        let bt = decompose_blocks(&g).unwrap();
        assert_eq!(bt.blocks.len(), 1);
        assert_eq!(bt.blocks[0].edges.len(), 3);
        assert_eq!(bt.blocks[0].kind, BlockKind::Cycle);
        assert!(bt.cut_vertices.is_empty());
    }

    #[test]
    fn two_triangles_share_a_cut_vertex() {
        let bt = decompose_blocks(&bowtie5()).unwrap();
        assert_eq!(bt.blocks.len(), 2);
        assert!(bt.blocks.iter().all(|b| b.edges.len() == 3));
        assert_eq!(bt.cut_vertices, vec![0]);
    }

    #[test]
    fn path_blocks_are_bridges() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bt = decompose_blocks(&g).unwrap();
        assert_eq!(bt.blocks.len(), 3);
        assert!(bt.blocks.iter().all(|b| b.kind == BlockKind::Bridge));
        assert_eq!(bt.cut_vertices, vec![1, 2]);
    }

    #[test]
    fn cactus_recognition() {
        assert!(is_cactus(&bowtie5()).unwrap());
        let k4 = Graph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!is_cactus(&k4).unwrap());
        let tree = Graph::from_edges(&[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert!(is_cactus(&tree).unwrap());
        let split = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(decompose_blocks(&split).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn cycle_order_walks_the_block() {
        let g = Graph::from_edges(&[(0, 3), (3, 1), (1, 2), (2, 0), (2, 4)]).unwrap();
        let bt = decompose_blocks(&g).unwrap();
        let (_, cyc) = bt.cycles().next().unwrap();
        assert_eq!(cycle_order(&g, cyc, 0), vec![0, 2, 1, 3]);
    }
}
