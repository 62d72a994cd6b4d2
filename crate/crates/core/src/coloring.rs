//! Edge colorings, the local irregularity verifier and the coloring algebra
//! (color degrees, sums over edge-disjoint parts, color permutations).
//!
//! Colors are the integers `1..=k`. Where the construction talks about colors
//! a, b, c and d they are 1, 2, 3 and 4.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::tree::Shrub;

pub type Color = u8;

pub const A: Color = 1;
pub const B: Color = 2;
pub const C: Color = 3;
pub const D: Color = 4;

/// A total map from the edges of a graph (by edge id) to colors `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(g: &Graph, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != g.m() {
            return Err(Error::InvalidInput(format!(
                "coloring has {} entries for {} edges",
                colors.len(),
                g.m()
            )));
        }
        if let Some(e) = colors.iter().position(|&c| c == 0) {
            return Err(Error::InvalidInput(format!("edge {e} has color 0")));
        }
        Ok(EdgeColoring { colors })
    }

    /// Every edge gets the same color.
    pub fn uniform(g: &Graph, c: Color) -> Self {
        EdgeColoring {
            colors: vec![c; g.m()],
        }
    }

    pub(crate) fn from_vec_unchecked(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    pub fn get(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Largest color id used (0 for the empty coloring).
    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn used_colors(&self) -> Vec<Color> {
        let set: BTreeSet<Color> = self.colors.iter().copied().collect();
        set.into_iter().collect()
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        self.used_colors().len()
    }

    /// Relabels the used colors to `1..=k` preserving their order.
    pub fn compact(&self) -> EdgeColoring {
        let used = self.used_colors();
        let mut map = [0 as Color; 256];
        for (i, &c) in used.iter().enumerate() {
            map[c as usize] = i as Color + 1;
        }
        EdgeColoring {
            colors: self.colors.iter().map(|&c| map[c as usize]).collect(),
        }
    }
}

/// Distinct colors on the edges at `v`, ascending.
pub fn colors_at(g: &Graph, col: &EdgeColoring, v: Vertex) -> Vec<Color> {
    let set: BTreeSet<Color> = g.incident(v).iter().map(|&(_, e)| col.get(e)).collect();
    set.into_iter().collect()
}

/// Number of edges at `v` colored `c`.
pub fn color_degree(g: &Graph, col: &EdgeColoring, v: Vertex, c: Color) -> usize {
    g.incident(v)
        .iter()
        .filter(|&&(_, e)| col.get(e) == c)
        .count()
}

/// Per-vertex, per-color degree table.
pub(crate) struct DegreeTable {
    width: usize,
    counts: Vec<u32>,
}

impl DegreeTable {
    pub(crate) fn new(g: &Graph, col: &EdgeColoring) -> Self {
        let width = col.max_color() as usize + 1;
        let mut counts = vec![0u32; g.n() * width];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let c = col.get(e) as usize;
            counts[u * width + c] += 1;
            counts[v * width + c] += 1;
        }
        DegreeTable { width, counts }
    }

    pub(crate) fn get(&self, v: Vertex, c: Color) -> usize {
        let c = c as usize;
        if c >= self.width {
            0
        } else {
            self.counts[v * self.width + c] as usize
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub edge: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reports every edge whose endpoints have equal degree in the edge's color.
pub fn verify_liec(g: &Graph, col: &EdgeColoring) -> VerifyReport {
    assert_eq!(col.len(), g.m(), "coloring does not match the graph");
    let table = DegreeTable::new(g, col);
    let violations = g
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(e, &(u, v))| {
            let c = col.get(e);
            (table.get(u, c) == table.get(v, c)).then_some(Violation {
                edge: e,
                u,
                v,
                color: c,
            })
        })
        .collect();
    VerifyReport { violations }
}

pub fn is_liec(g: &Graph, col: &EdgeColoring) -> bool {
    verify_liec(g, col).is_valid()
}

/// True when the only edge allowed to be locally regular, the root edge, is
/// the only possible violation.
pub fn verify_aliec(shrub: &Shrub, col: &EdgeColoring) -> bool {
    let root_edge = shrub.root_edge();
    verify_liec(shrub.graph(), col)
        .violations
        .iter()
        .all(|v| v.edge == root_edge)
}

/// Combines colorings of edge-disjoint parts into a coloring of `target`.
/// Each part is given as its local-to-target edge map and its coloring.
pub fn sum_colorings<'a, I>(target: &Graph, parts: I) -> Result<EdgeColoring>
where
    I: IntoIterator<Item = (&'a [EdgeId], &'a EdgeColoring)>,
{
    let mut colors = vec![0 as Color; target.m()];
    for (edge_map, col) in parts {
        if edge_map.len() != col.len() {
            return Err(Error::InvalidInput(
                "part coloring does not match its edge map".into(),
            ));
        }
        for (local, &e) in edge_map.iter().enumerate() {
            if e >= target.m() {
                return Err(Error::InvalidInput(format!("edge {e} not in target")));
            }
            if colors[e] != 0 {
                return Err(Error::InvalidInput(format!(
                    "edge {:?} covered by two parts",
                    target.edge(e)
                )));
            }
            colors[e] = col.get(local);
        }
    }
    if let Some(e) = colors.iter().position(|&c| c == 0) {
        return Err(Error::InvalidInput(format!(
            "edge {:?} not covered by any part",
            target.edge(e)
        )));
    }
    Ok(EdgeColoring { colors })
}

/// Applies the bijection `mapping`, where `mapping[i]` is the new color of
/// color `i + 1`. The mapping must be a permutation of `1..=mapping.len()`
/// and cover every color in use.
pub fn permute_colors(col: &EdgeColoring, mapping: &[Color]) -> Result<EdgeColoring> {
    let k = mapping.len();
    let mut seen = vec![false; k + 1];
    for &c in mapping {
        if c == 0 || c as usize > k || seen[c as usize] {
            return Err(Error::InvalidInput(format!(
                "color mapping {mapping:?} is not a bijection on 1..={k}"
            )));
        }
        seen[c as usize] = true;
    }
    if col.max_color() as usize > k {
        return Err(Error::InvalidInput(format!(
            "color mapping covers 1..={k} but color {} is used",
            col.max_color()
        )));
    }
    Ok(EdgeColoring {
        colors: col.colors.iter().map(|&c| mapping[c as usize - 1]).collect(),
    })
}

/// Smallest bijection on `1..=k` extending the partial injective map
/// `fixed`: unconstrained colors go, in increasing order, to the unused
/// targets in increasing order.
pub fn complete_bijection(k: usize, fixed: &[(Color, Color)]) -> Result<Vec<Color>> {
    let mut mapping = vec![0 as Color; k];
    let mut taken = vec![false; k + 1];
    for &(from, to) in fixed {
        let (fi, ti) = (from as usize, to as usize);
        if fi == 0 || fi > k || ti == 0 || ti > k {
            return Err(Error::InvalidInput(format!("color pair ({from}, {to}) out of range")));
        }
        if mapping[fi - 1] != 0 && mapping[fi - 1] != to {
            return Err(Error::InvalidInput(format!("color {from} mapped twice")));
        }
        if taken[ti] && mapping[fi - 1] != to {
            return Err(Error::InvalidInput(format!("target color {to} used twice")));
        }
        mapping[fi - 1] = to;
        taken[ti] = true;
    }
    let mut free = (1..=k as Color).filter(|&c| !taken[c as usize]);
    for slot in mapping.iter_mut().filter(|c| **c == 0) {
        *slot = free.next().expect("counts match");
    }
    Ok(mapping)
}

/// Parses the coloring file format (`u v c` per line, labels as in the edge
/// list) against `g`. Every edge must appear exactly once.
pub fn parse_coloring(g: &Graph, text: &str) -> Result<EdgeColoring> {
    let by_label: HashMap<u64, Vertex> = g
        .labels()
        .iter()
        .enumerate()
        .map(|(v, &l)| (l, v))
        .collect();
    let mut colors = vec![0 as Color; g.m()];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!("expected `u v c`, found {} fields", fields.len())));
        }
        let vertex = |f: &str| -> Result<Vertex> {
            let label: u64 = f
                .parse()
                .map_err(|_| err(format!("malformed vertex label {f:?}")))?;
            by_label
                .get(&label)
                .copied()
                .ok_or_else(|| err(format!("unknown vertex {label}")))
        };
        let (u, v) = (vertex(fields[0])?, vertex(fields[1])?);
        let c: Color = fields[2]
            .parse()
            .ok()
            .filter(|&c: &Color| c >= 1)
            .ok_or_else(|| err(format!("malformed color {:?}", fields[2])))?;
        let e = g
            .edge_id(u, v)
            .ok_or_else(|| err(format!("{} {} is not an edge", fields[0], fields[1])))?;
        if colors[e] != 0 {
            return Err(err(format!("edge {} {} colored twice", fields[0], fields[1])));
        }
        colors[e] = c;
    }
    if let Some(e) = colors.iter().position(|&c| c == 0) {
        let (u, v) = g.edge(e);
        return Err(Error::InvalidInput(format!(
            "edge {} {} has no color",
            g.label(u),
            g.label(v)
        )));
    }
    Ok(EdgeColoring { colors })
}

pub fn format_coloring(g: &Graph, col: &EdgeColoring) -> String {
    let mut out = String::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "{} {} {}", g.label(u), g.label(v), col.get(e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> Graph {
        Graph::from_edges(&[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn color_degree_on_star() {
        let g = star3();
        let col = EdgeColoring::uniform(&g, 1);
        assert_eq!(color_degree(&g, &col, 0, 1), 3);
        assert_eq!(color_degree(&g, &col, 2, 1), 1);
        assert_eq!(color_degree(&g, &col, 0, 2), 0);
        assert!(is_liec(&g, &col));
    }

    #[test]
    fn verifier_small_cases() {
        let e = Graph::from_edges(&[(0, 1)]).unwrap();
        let report = verify_liec(&e, &EdgeColoring::uniform(&e, 1));
        assert_eq!(report.violations.len(), 1);
        let p2 = Graph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert!(is_liec(&p2, &EdgeColoring::uniform(&p2, 1)));
    }

    #[test]
    fn sum_and_errors() {
        let p2 = Graph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        let left = p2.edge_subgraph(&[0]);
        let right = p2.edge_subgraph(&[1]);
        let one = EdgeColoring::uniform(&left.graph, 1);
        let sum = sum_colorings(
            &p2,
            [
                (left.edge_map.as_slice(), &one),
                (right.edge_map.as_slice(), &one),
            ],
        )
        .unwrap();
        assert_eq!(sum, EdgeColoring::uniform(&p2, 1));
        assert!(sum_colorings(&p2, [(left.edge_map.as_slice(), &one)]).is_err());
        assert!(sum_colorings(
            &p2,
            [
                (left.edge_map.as_slice(), &one),
                (left.edge_map.as_slice(), &one)
            ]
        )
        .is_err());
        let empty = Graph::new(0, []).unwrap();
        assert!(sum_colorings(&empty, []).unwrap().is_empty());
    }

    #[test]
    fn permutations() {
        let p4 = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let col = EdgeColoring::new(&p4, vec![1, 1, 2, 2]).unwrap();
        assert_eq!(permute_colors(&col, &[1, 2]).unwrap(), col);
        let swapped = permute_colors(&col, &[2, 1]).unwrap();
        assert_eq!(swapped.as_slice(), &[2, 2, 1, 1]);
        assert!(is_liec(&p4, &swapped));
        assert!(permute_colors(&col, &[1, 1]).is_err());
        assert!(permute_colors(&col, &[1]).is_err());
        // colors {1, 2} at a vertex pushed onto {2, 4}
        let map = complete_bijection(4, &[(1, 2), (2, 4)]).unwrap();
        assert_eq!(map, vec![2, 4, 1, 3]);
        assert_eq!(
            permute_colors(&col, &map).unwrap().as_slice(),
            &[2, 2, 4, 4]
        );
    }

    #[test]
    fn compact_preserves_order() {
        let p4 = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let col = EdgeColoring::new(&p4, vec![4, 4, 2, 2]).unwrap();
        assert_eq!(col.compact().as_slice(), &[2, 2, 1, 1]);
        assert_eq!(col.num_colors(), 2);
    }

    #[test]
    fn coloring_file_roundtrip_and_errors() {
        let g = crate::graph::parse_edge_list("5 9\n9 7\n").unwrap();
        let col = EdgeColoring::new(&g, vec![1, 1]).unwrap();
        let text = format_coloring(&g, &col);
        assert_eq!(text, "5 9 1\n9 7 1\n");
        assert_eq!(parse_coloring(&g, "9 7 1\n5 9 1").unwrap(), col);
        assert!(parse_coloring(&g, "5 9 1").is_err());
        assert!(parse_coloring(&g, "5 9 1\n9 7 1\n7 9 2").is_err());
        assert!(parse_coloring(&g, "5 7 1\n9 7 1").is_err());
        assert!(parse_coloring(&g, "5 9 0\n9 7 1").is_err());
    }
}
