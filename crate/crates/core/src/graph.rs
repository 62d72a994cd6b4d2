//! Simple undirected graphs with dense vertex ids.
//!
//! Vertices are `0..n`. Edges are stored normalized as `(min, max)` and are
//! addressed by their insertion index, which every coloring in the crate uses
//! as its key. Each graph also carries the external label of every vertex so
//! that subgraphs and parsed inputs can be written back in the caller's
//! numbering.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug)]
pub struct Graph {
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    index: HashMap<(Vertex, Vertex), EdgeId>,
    labels: Vec<u64>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges && self.labels == other.labels
    }
}

impl Eq for Graph {}

fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Rejects self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
            labels: (0..n as u64).collect(),
        };
        for (u, v) in edges {
            g.push_edge(u, v)?;
        }
        g.sort_adjacency();
        Ok(g)
    }

    /// Builds a graph whose vertex count is one more than the largest endpoint.
    pub fn from_edges(edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Graph::new(n, edges.iter().copied())
    }

    fn push_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at {u}")));
        }
        let key = norm(u, v);
        if self.index.contains_key(&key) {
            return Err(Error::InvalidInput(format!("duplicate edge ({u}, {v})")));
        }
        let id = self.edges.len();
        self.edges.push(key);
        self.index.insert(key, id);
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
        Ok(id)
    }

    fn sort_adjacency(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.index.get(&norm(u, v)).copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.index.contains_key(&norm(u, v))
    }

    /// Neighbors of `v` with the connecting edge id, sorted by neighbor.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn label(&self, v: Vertex) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn other(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Connected components as sorted vertex lists; isolated vertices are
    /// their own component.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut verts = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        verts.push(y);
                        queue.push_back(y);
                    }
                }
            }
            verts.sort_unstable();
            out.push(verts);
        }
        out
    }

    /// The empty graph and the single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Cyclomatic number; for a connected cactus this is the number of cycles.
    pub fn cycle_rank(&self) -> usize {
        (self.m() + self.components().len()).saturating_sub(self.n())
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.is_connected() && self.m() + 1 == self.n()
    }

    /// Connected, acyclic and of maximum degree at most two.
    pub fn is_path(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.is_connected() && self.adj.iter().all(|a| a.len() == 2)
    }

    /// Same vertex set with the edges in `removed` deleted. Edge ids of the
    /// result follow the surviving edges in their original order.
    pub fn without_edges(&self, removed: &[EdgeId]) -> Result<Graph> {
        let mut drop = vec![false; self.m()];
        for &e in removed {
            if e >= self.m() {
                return Err(Error::InvalidInput(format!("edge id {e} not in graph")));
            }
            drop[e] = true;
        }
        let kept = self
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| !drop[*e])
            .map(|(_, &uv)| uv);
        Graph::new(self.n(), kept)?.with_labels(self.labels.clone())
    }

    /// Same as [`Graph::without_edges`] but addressed by endpoint pairs.
    pub fn without_edge_pairs(&self, removed: &[(Vertex, Vertex)]) -> Result<Graph> {
        let ids = removed
            .iter()
            .map(|&(u, v)| {
                self.edge_id(u, v)
                    .ok_or_else(|| Error::InvalidInput(format!("edge ({u}, {v}) not in graph")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.without_edges(&ids)
    }

    /// The subgraph formed by the given edges and their endpoints, with
    /// vertices renumbered densely in increasing parent order.
    pub fn edge_subgraph(&self, edge_ids: &[EdgeId]) -> Subgraph {
        let mut verts: Vec<Vertex> = edge_ids
            .iter()
            .flat_map(|&e| {
                let (u, v) = self.edges[e];
                [u, v]
            })
            .collect();
        verts.sort_unstable();
        verts.dedup();
        self.subgraph_on(verts, edge_ids)
    }

    /// The subgraph on `verts` (which must contain every endpoint of
    /// `edge_ids`) with exactly the given edges.
    pub(crate) fn subgraph_on(&self, mut verts: Vec<Vertex>, edge_ids: &[EdgeId]) -> Subgraph {
        verts.sort_unstable();
        verts.dedup();
        let mut local = HashMap::with_capacity(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            local.insert(v, i);
        }
        let mut ids = edge_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let edges = ids.iter().map(|&e| {
            let (u, v) = self.edges[e];
            (local[&u], local[&v])
        });
        let graph = Graph::new(verts.len(), edges)
            .expect("edge subgraph of a simple graph is simple")
            .with_labels(verts.iter().map(|&v| self.labels[v]).collect())
            .expect("label count matches");
        Subgraph {
            graph,
            vertex_map: verts,
            edge_map: ids,
            local,
        }
    }

    /// Induced subgraph on a vertex set.
    pub fn induced(&self, verts: &[Vertex]) -> Subgraph {
        let mut inside = vec![false; self.n()];
        for &v in verts {
            inside[v] = true;
        }
        let ids: Vec<EdgeId> = (0..self.m())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                inside[u] && inside[v]
            })
            .collect();
        self.subgraph_on(verts.to_vec(), &ids)
    }

    /// Breadth-first distances from `s`; unreachable vertices get `None`.
    pub fn distances_from(&self, s: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for &(y, _) in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// A graph cut out of a parent graph, with the maps back into the parent.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// Local vertex id to parent vertex id.
    pub vertex_map: Vec<Vertex>,
    /// Local edge id to parent edge id.
    pub edge_map: Vec<EdgeId>,
    local: HashMap<Vertex, Vertex>,
}

impl Subgraph {
    pub fn local_vertex(&self, parent: Vertex) -> Option<Vertex> {
        self.local.get(&parent).copied()
    }

    pub fn parent_vertex(&self, local: Vertex) -> Vertex {
        self.vertex_map[local]
    }
}

/// Parses the edge-list text format: one edge per line as two non-negative
/// integer labels; `#` comments and blank lines are skipped. Labels are
/// renumbered densely in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut ids: HashMap<u64, Vertex> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(format!(
                "expected two vertex labels, found {} fields",
                fields.len()
            )));
        }
        let mut ends = [0usize; 2];
        for (slot, field) in ends.iter_mut().zip(&fields) {
            let label: u64 = field
                .parse()
                .map_err(|_| parse_err(format!("malformed vertex label {field:?}")))?;
            *slot = *ids.entry(label).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            });
        }
        let [u, v] = ends;
        if u == v {
            return Err(parse_err(format!("self-loop at {}", fields[0])));
        }
        if let Some(prev) = seen.insert(norm(u, v), line_no) {
            return Err(parse_err(format!(
                "duplicate edge {} {} (first on line {prev})",
                fields[0], fields[1]
            )));
        }
        edges.push((u, v));
    }
    Graph::new(labels.len(), edges)?.with_labels(labels)
}

/// Writes the edge list using vertex labels, one edge per line in edge-id
/// order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}
