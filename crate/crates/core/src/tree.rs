//! Tree colorings built from shrubs.
//!
//! A shrub is a tree rooted at a leaf. Every shrub has a 2-coloring in which
//! at most the root edge is locally regular (an *almost* locally irregular
//! coloring, aliec). Gluing the aliecs of all shrubs at a vertex `u`, root
//! edges in color 1, gives the shrub-based coloring of a tree; swapping the
//! two colors inside some shrubs usually repairs the edges at `u`. When no
//! such inversion works, `u` has degree 3 or 4 and a third color on one shrub
//! does the job with `u` as the only 3-chromatic vertex.

use crate::classify::ColorabilityClass;
use crate::coloring::{colors_at, is_liec, verify_liec, Color, EdgeColoring, A, B, C};
use crate::dp::PendantDp;
use crate::error::{internal, Error, Result};
use crate::graph::{EdgeId, Graph, Subgraph, Vertex};

/// A tree rooted at one of its leaves.
#[derive(Clone, Debug)]
pub struct Shrub {
    graph: Graph,
    root: Vertex,
}

impl Shrub {
    pub fn new(graph: Graph, root: Vertex) -> Result<Self> {
        if !graph.is_tree() || root >= graph.n() || graph.degree(root) != 1 {
            return Err(Error::InvalidInput(
                "a shrub is a tree rooted at a leaf".into(),
            ));
        }
        Ok(Shrub { graph, root })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn root_edge(&self) -> EdgeId {
        self.graph.incident(self.root)[0].1
    }

    /// The neighbor of the root.
    pub fn top(&self) -> Vertex {
        self.graph.incident(self.root)[0].0
    }
}

/// A 2-coloring of the shrub with the root edge in color 1 in which every
/// edge except possibly the root edge is locally irregular. When a full liec
/// with that property exists it is preferred.
pub fn shrub_2aliec(shrub: &Shrub) -> Result<EdgeColoring> {
    let g = shrub.graph();
    let (root, top) = (shrub.root(), shrub.top());
    let mut dp = PendantDp::new(g, 2);
    dp.compute(top, root);
    let feasible = dp.feasible(top);
    let target = feasible
        .iter()
        .copied()
        .find(|&t| t != 1)
        .or_else(|| feasible.first().copied())
        .ok_or_else(|| internal("shrub without a 2-aliec"))?;
    let mut out = vec![0 as Color; g.m()];
    out[shrub.root_edge()] = A;
    dp.color_subtree(top, target, &[A, B], &mut out);
    Ok(EdgeColoring::from_vec_unchecked(out))
}

/// How a shrub's aliec (colors 1 and 2) is relabeled inside a tree coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShrubRole {
    /// 1 → 1, 2 → 2
    Keep,
    /// 1 → 2, 2 → 1
    Invert,
    /// 1 → 3, 2 → 2
    Rainbow,
}

impl ShrubRole {
    fn apply(self, c: Color) -> Color {
        match (self, c) {
            (ShrubRole::Keep, c) => c,
            (ShrubRole::Invert, A) => B,
            (ShrubRole::Invert, _) => A,
            (ShrubRole::Rainbow, A) => C,
            (ShrubRole::Rainbow, c) => c,
        }
    }
}

#[derive(Clone, Debug)]
struct ShrubPart {
    neighbor: Vertex,
    sub: Subgraph,
    aliec: EdgeColoring,
    /// Degree of the neighbor in color 1 under the aliec.
    top_degree: usize,
}

/// Sum of shrub aliecs around a center vertex, all root edges in color 1.
#[derive(Clone, Debug)]
pub struct ShrubBasedColoring {
    tree: Graph,
    center: Vertex,
    parts: Vec<ShrubPart>,
}

impl ShrubBasedColoring {
    pub fn center(&self) -> Vertex {
        self.center
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn shrub_count(&self) -> usize {
        self.parts.len()
    }

    /// The center's neighbor inside shrub `i`.
    pub fn neighbor(&self, i: usize) -> Vertex {
        self.parts[i].neighbor
    }

    /// Tree vertices of shrub `i`, the center included.
    pub fn shrub_vertices(&self, i: usize) -> &[Vertex] {
        &self.parts[i].sub.vertex_map
    }

    pub fn shrub_edges(&self, i: usize) -> &[EdgeId] {
        &self.parts[i].sub.edge_map
    }

    /// Color-1 degree of each shrub's top vertex, in shrub order.
    pub fn top_degrees(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.top_degree).collect()
    }

    /// The combined coloring with every shrub kept as is.
    pub fn coloring(&self) -> EdgeColoring {
        self.compose(&vec![ShrubRole::Keep; self.parts.len()])
    }

    pub fn compose(&self, roles: &[ShrubRole]) -> EdgeColoring {
        let mut out = vec![0 as Color; self.tree.m()];
        for (part, &role) in self.parts.iter().zip(roles) {
            for (local, &e) in part.sub.edge_map.iter().enumerate() {
                out[e] = role.apply(part.aliec.get(local));
            }
        }
        EdgeColoring::from_vec_unchecked(out)
    }
}

/// Builds the shrub-based coloring of tree `t` at `center`. Shrubs are
/// ordered by the id of the center's neighbor.
pub fn shrub_based_coloring(t: &Graph, center: Vertex) -> Result<ShrubBasedColoring> {
    if !t.is_tree() {
        return Err(Error::InvalidInput("shrub-based coloring needs a tree".into()));
    }
    if center >= t.n() || t.degree(center) == 0 {
        return Err(Error::InvalidInput(format!(
            "center {center} has no incident edge"
        )));
    }
    let mut parts = Vec::new();
    for &(v, e) in t.incident(center) {
        let mut edges = vec![e];
        let mut stack = vec![(v, center)];
        while let Some((x, p)) = stack.pop() {
            for &(y, f) in t.incident(x) {
                if y != p {
                    edges.push(f);
                    stack.push((y, x));
                }
            }
        }
        let sub = t.edge_subgraph(&edges);
        let root = sub.local_vertex(center).expect("center in shrub");
        let shrub = Shrub::new(sub.graph.clone(), root)?;
        let aliec = shrub_2aliec(&shrub)?;
        let top = sub.local_vertex(v).expect("neighbor in shrub");
        let top_degree = crate::coloring::color_degree(&sub.graph, &aliec, top, A);
        parts.push(ShrubPart {
            neighbor: v,
            sub,
            aliec,
            top_degree,
        });
    }
    Ok(ShrubBasedColoring {
        tree: t.clone(),
        center,
        parts,
    })
}

/// Color-1 degrees of the center's neighbors, non-increasing.
pub fn a_sequence(sbc: &ShrubBasedColoring) -> Vec<usize> {
    let mut seq = sbc.top_degrees();
    seq.sort_unstable_by(|a, b| b.cmp(a));
    seq
}

/// The two degree patterns that resist every inversion at a maximum-degree
/// center: degree 3 with sequence 3,2,2 and degree 4 with 4,3,3,2.
pub fn is_resistant_pattern(degree: usize, seq: &[usize]) -> bool {
    matches!((degree, seq), (3, [3, 2, 2]) | (4, [4, 3, 3, 2]))
}

/// Whether inverting the shrubs in `inverted` makes every edge at the center
/// locally irregular, given the shrubs' top degrees.
pub fn inversion_works(top_degrees: &[usize], inverted: &[bool]) -> bool {
    let k = top_degrees.len();
    let m = inverted.iter().filter(|&&b| b).count();
    top_degrees
        .iter()
        .zip(inverted)
        .all(|(&s, &inv)| if inv { s != m } else { s != k - m })
}

/// First inversion subset that works, in increasing bitmask order with
/// shrub `i` as bit `i`. Runs in `O(k^2)` by fixing the subset size: shrubs
/// whose top degree equals the color-1 degree left at the center must be
/// inverted, those equal to the inverted count must not be, and the rest fill
/// from the lowest index.
pub fn first_working_inversion(top_degrees: &[usize]) -> Option<Vec<bool>> {
    let k = top_degrees.len();
    let mut best: Option<Vec<bool>> = None;
    for m in 0..=k {
        let must_in: Vec<bool> = top_degrees.iter().map(|&s| s == k - m).collect();
        let must_out: Vec<bool> = top_degrees.iter().map(|&s| s == m).collect();
        if must_in.iter().zip(&must_out).any(|(&a, &b)| a && b) {
            continue;
        }
        let forced = must_in.iter().filter(|&&b| b).count();
        let free = (0..k).filter(|&i| !must_in[i] && !must_out[i]).count();
        if forced > m || forced + free < m {
            continue;
        }
        let mut set = must_in.clone();
        let mut need = m - forced;
        for i in 0..k {
            if need == 0 {
                break;
            }
            if !must_in[i] && !must_out[i] {
                set[i] = true;
                need -= 1;
            }
        }
        let better = match &best {
            None => true,
            Some(b) => mask_less(&set, b),
        };
        if better {
            best = Some(set);
        }
    }
    best
}

fn mask_less(a: &[bool], b: &[bool]) -> bool {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i];
        }
    }
    false
}

/// Searches the inversions of a shrub-based coloring. Returns the inverted
/// shrub set and the resulting 2-liec, or `None` when the coloring is
/// inversion resistant. For a maximum-degree center of a colorable tree a
/// resistant coloring must show one of the two known patterns; anything
/// else is reported as an internal error.
pub fn search_inversions(sbc: &ShrubBasedColoring) -> Result<Option<(Vec<bool>, EdgeColoring)>> {
    let tops = sbc.top_degrees();
    match first_working_inversion(&tops) {
        Some(set) => {
            let roles: Vec<ShrubRole> = set
                .iter()
                .map(|&inv| if inv { ShrubRole::Invert } else { ShrubRole::Keep })
                .collect();
            let col = sbc.compose(&roles);
            if !is_liec(sbc.tree(), &col) {
                return Err(internal("accepted inversion is not locally irregular"));
            }
            Ok(Some((set, col)))
        }
        None => {
            let t = sbc.tree();
            let d = t.degree(sbc.center());
            let odd_path = t.is_path() && t.m() % 2 == 1;
            if d == t.max_degree() && !odd_path && !is_resistant_pattern(d, &a_sequence(sbc)) {
                return Err(internal(format!(
                    "inversion resistant with degree {d} and a-sequence {:?}",
                    a_sequence(sbc)
                )));
            }
            Ok(None)
        }
    }
}

/// The 3-liec of an inversion-resistant tree: shrub `c_shrub` gets color 3 in
/// place of color 1, the other shrubs are kept or inverted so that every edge
/// at the center is irregular. The center is the only 3-chromatic vertex and
/// color 3 stays inside shrub `c_shrub`.
pub fn rainbow_3liec(sbc: &ShrubBasedColoring, c_shrub: usize) -> Result<EdgeColoring> {
    let d = sbc.shrub_count();
    let tops = sbc.top_degrees();
    if !is_resistant_pattern(d, &a_sequence(sbc)) {
        return Err(Error::InvalidInput(format!(
            "center degree {d} with a-sequence {:?} is not inversion resistant",
            a_sequence(sbc)
        )));
    }
    if c_shrub >= d {
        return Err(Error::InvalidInput(format!("no shrub {c_shrub}")));
    }
    // color 1 keeps d - 2 edges at the center, colors 2 and 3 one each
    let keep_count = d - 2;
    let mut roles = vec![ShrubRole::Invert; d];
    roles[c_shrub] = ShrubRole::Rainbow;
    let mut kept = 0;
    for i in 0..d {
        if i != c_shrub && kept < keep_count && tops[i] != keep_count {
            roles[i] = ShrubRole::Keep;
            kept += 1;
        }
    }
    if kept < keep_count {
        return Err(internal("no shrubs left to keep color 1"));
    }
    let col = sbc.compose(&roles);
    let t = sbc.tree();
    if !is_liec(t, &col) {
        return Err(internal(format!(
            "rainbow coloring with roles {roles:?} is not locally irregular"
        )));
    }
    Ok(col)
}

fn require_colorable_tree(t: &Graph) -> Result<()> {
    if !t.is_tree() {
        return Err(Error::InvalidInput("expected a tree".into()));
    }
    if t.is_path() && t.m() % 2 == 1 {
        return Err(Error::NonColorable(ColorabilityClass::OddPath));
    }
    Ok(())
}

fn max_degree_vertices(t: &Graph) -> Vec<Vertex> {
    let delta = t.max_degree();
    (0..t.n()).filter(|&v| t.degree(v) == delta).collect()
}

/// A liec of a colorable tree with at most 3 colors, and at most 2 when the
/// maximum degree is 5 or more. The center is the smallest-id vertex of
/// maximum degree.
pub fn tree_liec(t: &Graph) -> Result<EdgeColoring> {
    require_colorable_tree(t)?;
    if t.m() == 0 {
        return Ok(EdgeColoring::uniform(t, A));
    }
    let center = max_degree_vertices(t)[0];
    let sbc = shrub_based_coloring(t, center)?;
    if let Some((_, col)) = search_inversions(&sbc)? {
        return Ok(col.compact());
    }
    if t.max_degree() >= 5 {
        return Err(internal("inversion resistant tree with maximum degree >= 5"));
    }
    rainbow_3liec(&sbc, 0)
}

/// A liec of a colorable tree with at most 3 colors in which no vertex of
/// `avoid` is incident to color 3. `avoid` must be independent. The rainbow
/// root is taken among maximum-degree vertices outside `avoid`, and color 3
/// is routed into a shrub that keeps it away from `avoid`.
pub fn tree_liec_avoiding(t: &Graph, avoid: &[Vertex]) -> Result<EdgeColoring> {
    require_colorable_tree(t)?;
    if t.m() == 0 {
        return Ok(EdgeColoring::uniform(t, A));
    }
    let mut in_avoid = vec![false; t.n()];
    for &x in avoid {
        if x >= t.n() {
            return Err(Error::InvalidInput(format!("vertex {x} not in tree")));
        }
        in_avoid[x] = true;
    }
    if t.edges().iter().any(|&(u, v)| in_avoid[u] && in_avoid[v]) {
        return Err(Error::InvalidInput("avoided vertices must be independent".into()));
    }
    let candidates = max_degree_vertices(t);
    let first = shrub_based_coloring(t, candidates[0])?;
    if let Some((_, col)) = search_inversions(&first)? {
        return Ok(col.compact());
    }
    for &z in candidates.iter().filter(|&&z| !in_avoid[z]) {
        let sbc = shrub_based_coloring(t, z)?;
        if let Some((_, col)) = search_inversions(&sbc)? {
            return Ok(col.compact());
        }
        for c_shrub in 0..sbc.shrub_count() {
            let col = rainbow_3liec(&sbc, c_shrub)?;
            if avoid.iter().all(|&x| !colors_at(t, &col, x).contains(&C)) {
                return Ok(col);
            }
        }
    }
    Err(internal(
        "no rainbow root keeps color 3 away from the avoided vertices",
    ))
}

/// Whether any violation exists at the center only; used by tests and the
/// inversion bookkeeping.
pub fn violations_only_at_center(sbc: &ShrubBasedColoring) -> bool {
    let t = sbc.tree();
    verify_liec(t, &sbc.coloring())
        .violations
        .iter()
        .all(|v| v.u == sbc.center() || v.v == sbc.center())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{color_degree, verify_aliec};

    fn g(edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(edges).unwrap()
    }

    /// Center 0 of degree 3; shrub tops get color-1 degrees 3, 2, 2.
    pub(crate) fn resistant_322() -> Graph {
        g(&[
            (0, 1),
            (1, 4),
            (1, 5),
            (4, 6),
            (5, 7),
            (0, 2),
            (2, 8),
            (0, 3),
            (3, 9),
        ])
    }

    #[test]
    fn small_shrubs() {
        let e = Shrub::new(g(&[(0, 1)]), 0).unwrap();
        let col = shrub_2aliec(&e).unwrap();
        assert_eq!(col.as_slice(), &[A]);
        assert!(verify_aliec(&e, &col));
        let p2 = Shrub::new(g(&[(0, 1), (1, 2)]), 0).unwrap();
        let col = shrub_2aliec(&p2).unwrap();
        assert_eq!(col.as_slice(), &[A, A]);
        assert!(is_liec(p2.graph(), &col));
    }

    #[test]
    fn monochromatic_p3_shrub_is_not_an_aliec() {
        let p3 = Shrub::new(g(&[(0, 1), (1, 2), (2, 3)]), 0).unwrap();
        assert!(!verify_aliec(&p3, &EdgeColoring::uniform(p3.graph(), A)));
        assert!(verify_aliec(&p3, &shrub_2aliec(&p3).unwrap()));
    }

    #[test]
    fn shrub_rejects_non_leaf_root() {
        assert!(Shrub::new(g(&[(0, 1), (1, 2)]), 1).is_err());
    }

    #[test]
    fn star_and_spider() {
        let star = g(&[(0, 1), (0, 2), (0, 3)]);
        let sbc = shrub_based_coloring(&star, 0).unwrap();
        assert_eq!(sbc.coloring(), EdgeColoring::uniform(&star, A));
        assert_eq!(a_sequence(&sbc), vec![1, 1, 1]);
        let (set, _) = search_inversions(&sbc).unwrap().unwrap();
        assert_eq!(set, vec![false; 3]);

        let spider = g(&[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        let sbc = shrub_based_coloring(&spider, 0).unwrap();
        assert_eq!(sbc.coloring(), EdgeColoring::uniform(&spider, A));
        assert_eq!(a_sequence(&sbc), vec![2, 2, 2]);
        assert!(is_liec(&spider, &sbc.coloring()));
    }

    #[test]
    fn double_star() {
        let ds = g(&[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        let sbc = shrub_based_coloring(&ds, 0).unwrap();
        assert_eq!(a_sequence(&sbc), vec![3, 1, 1]);
        assert!(violations_only_at_center(&sbc));
        assert!(search_inversions(&sbc).unwrap().is_some());
    }

    #[test]
    fn resistant_pattern_and_rainbow() {
        let t = resistant_322();
        let sbc = shrub_based_coloring(&t, 0).unwrap();
        assert_eq!(a_sequence(&sbc), vec![3, 2, 2]);
        assert!(search_inversions(&sbc).unwrap().is_none());
        for c_shrub in 0..3 {
            let col = rainbow_3liec(&sbc, c_shrub).unwrap();
            assert!(is_liec(&t, &col));
            for v in 0..t.n() {
                let k = colors_at(&t, &col, v).len();
                assert_eq!(k == 3, v == 0);
            }
            for (e, _) in t.edges().iter().enumerate() {
                if col.get(e) == C {
                    assert!(sbc.shrub_edges(c_shrub).contains(&e));
                }
            }
        }
        assert!(rainbow_3liec(&sbc, 3).is_err());
    }

    #[test]
    fn tree_liec_small() {
        assert_eq!(tree_liec(&g(&[(0, 1), (1, 2)])).unwrap().num_colors(), 1);
        assert!(matches!(
            tree_liec(&g(&[(0, 1), (1, 2), (2, 3)])),
            Err(Error::NonColorable(ColorabilityClass::OddPath))
        ));
        let t = resistant_322();
        let col = tree_liec(&t).unwrap();
        assert!(is_liec(&t, &col));
        assert_eq!(col.num_colors(), 3);
    }

    #[test]
    fn avoiding_routes_color_three_away() {
        let t = resistant_322();
        // one leaf per shrub of the center
        let avoid = [6, 8, 9];
        let col = tree_liec_avoiding(&t, &avoid).unwrap();
        assert!(is_liec(&t, &col));
        for &x in &avoid {
            assert_eq!(color_degree(&t, &col, x, C), 0);
        }
        assert!(tree_liec_avoiding(&t, &[0, 1]).is_err());
    }

    #[test]
    fn fast_inversion_search_matches_enumeration() {
        for k in 1..=6usize {
            let mut tops = vec![1usize; k];
            loop {
                let brute = (0u32..1 << k).find_map(|mask| {
                    let set: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
                    inversion_works(&tops, &set).then_some(set)
                });
                assert_eq!(first_working_inversion(&tops), brute, "{tops:?}");
                // next vector in 1..=k+1
                let mut i = 0;
                while i < k && tops[i] == k + 1 {
                    tops[i] = 1;
                    i += 1;
                }
                if i == k {
                    break;
                }
                tops[i] += 1;
            }
        }
    }

    #[test]
    fn resistant_patterns_are_the_only_ones() {
        // top degrees never exceed the center degree at a max-degree center
        for k in 1..=7usize {
            let mut tops = vec![1usize; k];
            loop {
                let mut sorted = tops.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let resistant = first_working_inversion(&tops).is_none();
                if k >= 3 {
                    assert_eq!(resistant, is_resistant_pattern(k, &sorted), "{tops:?}");
                }
                let mut i = 0;
                while i < k && tops[i] == k {
                    tops[i] = 1;
                    i += 1;
                }
                if i == k {
                    break;
                }
                tops[i] += 1;
            }
        }
    }
}
