//! Exact dynamic programs over pendant trees.
//!
//! For a vertex `x` hanging below its parent, the only thing the parent needs
//! to know about the subtree of `x` is the degree of `x` in the color of the
//! parent edge. Colors are interchangeable inside a subtree, so the table of
//! `x` is computed once with the parent edge in local color 0 and reused for
//! every actual color through a color swap.
//!
//! A child `y` whose table allows at least two degrees can always dodge the
//! degree of `x` in whatever color it receives. Only children with a single
//! allowed degree `t` constrain the choice: they must avoid the colors in
//! which `x` ends up with degree exactly `t`.

use std::collections::HashMap;

use crate::coloring::Color;
use crate::graph::{EdgeId, Graph, Vertex};

/// All vectors of `k` non-negative counts summing to `m`, color 0 largest
/// first.
fn for_each_count_vector(k: usize, m: usize, mut f: impl FnMut(&[usize])) {
    let mut counts = vec![0usize; k];
    fn rec(i: usize, left: usize, counts: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if i + 1 == counts.len() {
            counts[i] = left;
            f(counts);
            return;
        }
        for c in (0..=left).rev() {
            counts[i] = c;
            rec(i + 1, left - c, counts, f);
        }
    }
    if k == 0 {
        if m == 0 {
            f(&counts);
        }
        return;
    }
    rec(0, m, &mut counts, &mut f);
}

/// Children with exactly one allowed degree, grouped by that degree.
fn singleton_counts(child_sets: &[&[usize]]) -> HashMap<usize, usize> {
    let mut out = HashMap::new();
    for set in child_sets {
        if set.len() == 1 {
            *out.entry(set[0]).or_insert(0) += 1;
        }
    }
    out
}

pub(crate) fn degrees(counts: &[usize], fixed: &[usize]) -> Vec<usize> {
    let mut d = counts.to_vec();
    for &c in fixed {
        d[c] += 1;
    }
    d
}

/// Hall's condition. The forbidden color sets of different singleton groups
/// are disjoint, so only one group at a time can be short of colors.
fn feasible(counts: &[usize], deg: &[usize], singles: &HashMap<usize, usize>) -> bool {
    let m: usize = counts.iter().sum();
    singles.iter().all(|(&t, &s)| {
        let blocked: usize = (0..counts.len())
            .filter(|&c| deg[c] == t)
            .map(|c| counts[c])
            .sum();
        s <= m - blocked
    })
}

/// Every achievable combination of degrees at `x` in the `fixed` edge
/// colors, given the allowed parent-color degrees of each child. Returns
/// `(degrees in fixed colors, child counts per color)`, one entry per
/// distinct key.
pub(crate) fn local_options(
    k: usize,
    fixed: &[usize],
    child_sets: &[&[usize]],
) -> Vec<(Vec<usize>, Vec<usize>)> {
    if child_sets.iter().any(|s| s.is_empty()) {
        return Vec::new();
    }
    let singles = singleton_counts(child_sets);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for_each_count_vector(k, child_sets.len(), |counts| {
        let deg = degrees(counts, fixed);
        if !feasible(counts, &deg, &singles) {
            return;
        }
        let key: Vec<usize> = fixed.iter().map(|&c| deg[c]).collect();
        if seen.insert(key.clone()) {
            out.push((key, counts.to_vec()));
        }
    });
    out
}

/// Colors the children for a count vector accepted by [`local_options`].
pub(crate) fn assign_children(
    fixed: &[usize],
    child_sets: &[&[usize]],
    counts: &[usize],
) -> Vec<usize> {
    let k = counts.len();
    let deg = degrees(counts, fixed);
    let mut groups: Vec<usize> = Vec::new();
    let mut group_of = vec![usize::MAX; child_sets.len()];
    for (i, set) in child_sets.iter().enumerate() {
        if set.len() == 1 && deg.contains(&set[0]) {
            let g = match groups.iter().position(|&t| t == set[0]) {
                Some(g) => g,
                None => {
                    groups.push(set[0]);
                    groups.len() - 1
                }
            };
            group_of[i] = g;
        }
    }
    let mut demand = vec![0usize; groups.len()];
    for &g in group_of.iter().filter(|&&g| g != usize::MAX) {
        demand[g] += 1;
    }

    // source = 0, groups = 1..=r, colors = r+1..=r+k, sink = r+k+1
    let r = groups.len();
    let nodes = r + k + 2;
    let sink = nodes - 1;
    let mut cap = vec![vec![0usize; nodes]; nodes];
    for g in 0..r {
        cap[0][1 + g] = demand[g];
        for c in 0..k {
            if deg[c] != groups[g] {
                cap[1 + g][1 + r + c] = usize::MAX / 2;
            }
        }
    }
    for c in 0..k {
        cap[1 + r + c][sink] = counts[c];
    }
    let original = cap.clone();
    loop {
        let mut prev = vec![usize::MAX; nodes];
        prev[0] = 0;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for y in 0..nodes {
                if prev[y] == usize::MAX && cap[x][y] > 0 {
                    prev[y] = x;
                    stack.push(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut push = usize::MAX;
        let mut y = sink;
        while y != 0 {
            push = push.min(cap[prev[y]][y]);
            y = prev[y];
        }
        let mut y = sink;
        while y != 0 {
            cap[prev[y]][y] -= push;
            cap[y][prev[y]] += push;
            y = prev[y];
        }
    }
    let mut flow = vec![vec![0usize; k]; r];
    for g in 0..r {
        for c in 0..k {
            let o = original[1 + g][1 + r + c];
            if o > 0 {
                flow[g][c] = o - cap[1 + g][1 + r + c];
            }
        }
    }
    let mut left = counts.to_vec();
    let mut out = vec![usize::MAX; child_sets.len()];
    for (i, &g) in group_of.iter().enumerate() {
        if g == usize::MAX {
            continue;
        }
        let c = (0..k)
            .find(|&c| flow[g][c] > 0)
            .expect("flow covers every constrained child");
        flow[g][c] -= 1;
        left[c] -= 1;
        out[i] = c;
    }
    let mut c = 0;
    for slot in out.iter_mut().filter(|s| **s == usize::MAX) {
        while left[c] == 0 {
            c += 1;
        }
        left[c] -= 1;
        *slot = c;
    }
    out
}

#[derive(Clone, Debug, Default)]
struct Table {
    /// Achievable degrees of the vertex in its parent-edge color, ascending.
    keys: Vec<usize>,
    counts: Vec<Vec<usize>>,
}

/// Tables for subtrees hanging below chosen roots of a graph. The part of the
/// graph below each root must be a tree.
pub(crate) struct PendantDp<'g> {
    g: &'g Graph,
    k: usize,
    parent: Vec<Vertex>,
    tables: Vec<Option<Table>>,
}

impl<'g> PendantDp<'g> {
    pub(crate) fn new(g: &'g Graph, k: usize) -> Self {
        PendantDp {
            g,
            k,
            parent: vec![usize::MAX; g.n()],
            tables: vec![None; g.n()],
        }
    }

    fn children(&self, x: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        let p = self.parent[x];
        self.g.incident(x).iter().copied().filter(move |&(y, _)| y != p)
    }

    /// Fills the tables for the subtree of `root` that hangs away from
    /// `parent`.
    pub(crate) fn compute(&mut self, root: Vertex, parent: Vertex) {
        self.parent[root] = parent;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            let kids: Vec<Vertex> = self.children(x).map(|(y, _)| y).collect();
            for y in kids {
                self.parent[y] = x;
                order.push(y);
            }
        }
        for &x in order.iter().rev() {
            let kid_sets: Vec<&[usize]> = self
                .children(x)
                .map(|(y, _)| self.feasible(y))
                .collect();
            let mut table = Table::default();
            let mut opts = local_options(self.k, &[0], &kid_sets);
            opts.sort_by_key(|(key, _)| key[0]);
            for (key, counts) in opts {
                table.keys.push(key[0]);
                table.counts.push(counts);
            }
            self.tables[x] = Some(table);
        }
    }

    /// Allowed degrees of `x` in its parent-edge color.
    pub(crate) fn feasible(&self, x: Vertex) -> &[usize] {
        self.tables[x]
            .as_ref()
            .map(|t| t.keys.as_slice())
            .expect("table computed")
    }

    /// Writes colors for every edge below `root` into `out` (by edge id),
    /// realizing degree `target` of `root` in its parent-edge color.
    /// `perm[i]` is the actual color of local color `i`; local color 0 is the
    /// color of the parent edge.
    pub(crate) fn color_subtree(
        &self,
        root: Vertex,
        target: usize,
        perm: &[Color],
        out: &mut [Color],
    ) {
        let mut stack = vec![(root, target, perm.to_vec())];
        while let Some((x, t, perm)) = stack.pop() {
            let table = self.tables[x].as_ref().expect("table computed");
            let idx = table
                .keys
                .binary_search(&t)
                .expect("target degree is achievable");
            let counts = &table.counts[idx];
            let kids: Vec<(Vertex, EdgeId)> = self.children(x).collect();
            let kid_sets: Vec<&[usize]> = kids.iter().map(|&(y, _)| self.feasible(y)).collect();
            let colors = assign_children(&[0], &kid_sets, counts);
            let deg = degrees(counts, &[0]);
            for ((&(y, e), &c), set) in kids.iter().zip(&colors).zip(&kid_sets) {
                out[e] = perm[c];
                let ty = *set
                    .iter()
                    .find(|&&s| s != deg[c])
                    .expect("assignment respects singleton children");
                let mut child_perm = perm.clone();
                child_perm.swap(0, c);
                stack.push((y, ty, child_perm));
            }
        }
    }
}
