//! Exhaustive ground truth for small graphs.
//!
//! Edges are colored one at a time in breadth-first order. An edge is checked
//! as soon as both of its endpoints have all their edges colored, and a new
//! color may only be opened after all smaller ones are in use, which removes
//! the color-permutation symmetry.

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Inputs with more edges are refused unless `allow_large` is set.
    pub max_edges: usize,
    pub allow_large: bool,
    /// Abort after this many search nodes.
    pub step_budget: Option<u64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_edges: 12,
            allow_large: false,
            step_budget: None,
        }
    }
}

/// Smallest `k <= kmax` admitting a liec, with the default configuration.
/// The edgeless graph has value 0.
pub fn exact_chi_irr(g: &Graph, kmax: usize) -> Result<Option<usize>> {
    Ok(exact_chi_irr_with(g, kmax, &OracleConfig::default())?.map(|(k, _)| k))
}

/// Smallest `k <= kmax` admitting a liec, together with a witness coloring.
pub fn exact_chi_irr_with(
    g: &Graph,
    kmax: usize,
    config: &OracleConfig,
) -> Result<Option<(usize, EdgeColoring)>> {
    check_budget(g, kmax, config)?;
    if g.m() == 0 {
        return Ok(Some((0, EdgeColoring::uniform(g, 1))));
    }
    let mut search = Search::new(g, config.step_budget);
    for k in 1..=kmax {
        if let Some(col) = search.run(k)? {
            return Ok(Some((k, col)));
        }
    }
    Ok(None)
}

/// Some liec with at most `k` colors, if one exists.
pub fn find_liec(g: &Graph, k: usize, config: &OracleConfig) -> Result<Option<EdgeColoring>> {
    check_budget(g, k, config)?;
    if g.m() == 0 {
        return Ok(Some(EdgeColoring::uniform(g, 1)));
    }
    Search::new(g, config.step_budget).run(k)
}

pub fn is_colorable_exhaustive(g: &Graph, kmax: usize) -> Result<bool> {
    Ok(exact_chi_irr(g, kmax)?.is_some())
}

fn check_budget(g: &Graph, kmax: usize, config: &OracleConfig) -> Result<()> {
    if kmax == 0 || kmax > Color::MAX as usize {
        return Err(Error::InvalidInput(format!("bad color bound {kmax}")));
    }
    if g.m() > config.max_edges && !config.allow_large {
        return Err(Error::EdgeBudgetExceeded {
            edges: g.m(),
            budget: config.max_edges,
        });
    }
    Ok(())
}

struct Search<'g> {
    g: &'g Graph,
    /// Edge ids in search order.
    order: Vec<EdgeId>,
    /// Edges whose endpoints both become complete at each position.
    checks: Vec<Vec<EdgeId>>,
    colors: Vec<Color>,
    /// deg[v * (k + 1) + c]
    deg: Vec<u32>,
    width: usize,
    steps: u64,
    budget: Option<u64>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, budget: Option<u64>) -> Self {
        let order = bfs_edge_order(g);
        let mut pos = vec![0; g.m()];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        let mut last = vec![0usize; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            last[u] = last[u].max(pos[e]);
            last[v] = last[v].max(pos[e]);
        }
        let mut checks = vec![Vec::new(); g.m()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            checks[last[u].max(last[v])].push(e);
        }
        Search {
            g,
            order,
            checks,
            colors: vec![0; g.m()],
            deg: Vec::new(),
            width: 0,
            steps: 0,
            budget,
        }
    }

    fn run(&mut self, k: usize) -> Result<Option<EdgeColoring>> {
        self.width = k + 1;
        self.deg = vec![0; self.g.n() * self.width];
        self.colors.iter_mut().for_each(|c| *c = 0);
        if self.rec(0, 0, k)? {
            Ok(Some(EdgeColoring::from_vec_unchecked(self.colors.clone())))
        } else {
            Ok(None)
        }
    }

    fn rec(&mut self, i: usize, used: usize, k: usize) -> Result<bool> {
        if i == self.order.len() {
            return Ok(true);
        }
        self.steps += 1;
        if let Some(b) = self.budget {
            if self.steps > b {
                return Err(Error::StepBudgetExceeded(b));
            }
        }
        let e = self.order[i];
        let (u, v) = self.g.edge(e);
        let top = (used + 1).min(k);
        for c in 1..=top {
            self.colors[e] = c as Color;
            self.deg[u * self.width + c] += 1;
            self.deg[v * self.width + c] += 1;
            let ok = self.checks[i].iter().all(|&f| {
                let (x, y) = self.g.edge(f);
                let cf = self.colors[f] as usize;
                self.deg[x * self.width + cf] != self.deg[y * self.width + cf]
            });
            if ok && self.rec(i + 1, used.max(c), k)? {
                return Ok(true);
            }
            self.deg[u * self.width + c] -= 1;
            self.deg[v * self.width + c] -= 1;
        }
        self.colors[e] = 0;
        Ok(false)
    }
}

/// Edges in the order they are first met by a breadth-first search from each
/// component's smallest vertex.
fn bfs_edge_order(g: &Graph) -> Vec<EdgeId> {
    let mut seen_v = vec![false; g.n()];
    let mut seen_e = vec![false; g.m()];
    let mut order = Vec::with_capacity(g.m());
    for s in 0..g.n() {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in g.incident(x) {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                if !seen_v[y] {
                    seen_v[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}
