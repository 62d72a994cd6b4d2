//! Structural colorability test. A connected graph has no locally irregular
//! edge coloring exactly when it is an odd path, an odd cycle, or a member of
//! the triangle family: subcubic cacti whose cycles are vertex-disjoint
//! triangles joined by odd paths, with even paths hanging at degree-3
//! triangle vertices.

use std::fmt;

use crate::blocks::{decompose_blocks, BlockKind};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColorabilityClass {
    Colorable,
    OddPath,
    OddCycle,
    TFamily,
}

impl ColorabilityClass {
    pub fn is_colorable(self) -> bool {
        self == ColorabilityClass::Colorable
    }
}

impl fmt::Display for ColorabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ColorabilityClass::Colorable => "Colorable",
            ColorabilityClass::OddPath => "OddPath",
            ColorabilityClass::OddCycle => "OddCycle",
            ColorabilityClass::TFamily => "TFamily",
        };
        f.write_str(s)
    }
}

/// Decomposition of a triangle-family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TFamilyWitness {
    /// Sorted triangle vertex triples, sorted by first vertex.
    pub triangles: Vec<[Vertex; 3]>,
    /// Odd paths between triangle vertices, as vertex sequences.
    pub connectors: Vec<Vec<Vertex>>,
    /// Even paths from a triangle vertex to a leaf, as vertex sequences.
    pub pendants: Vec<Vec<Vertex>>,
}

impl TFamilyWitness {
    pub fn triangle_of(&self, v: Vertex) -> Option<usize> {
        self.triangles.iter().position(|t| t.contains(&v))
    }

    /// Re-checks the witness against `g` from scratch.
    pub fn validate(&self, g: &Graph) -> bool {
        if self.triangles.is_empty() || g.max_degree() > 3 {
            return false;
        }
        let mut tri = vec![false; g.n()];
        let mut used = vec![0usize; g.m()];
        let mut mark = |u: Vertex, v: Vertex| match g.edge_id(u, v) {
            Some(e) => {
                used[e] += 1;
                true
            }
            None => false,
        };
        for t in &self.triangles {
            for &v in t {
                if tri[v] {
                    return false;
                }
                tri[v] = true;
            }
            if !(mark(t[0], t[1]) && mark(t[1], t[2]) && mark(t[0], t[2])) {
                return false;
            }
        }
        for path in self.connectors.iter().chain(&self.pendants) {
            if path.len() < 2 || !path.windows(2).all(|w| mark(w[0], w[1])) {
                return false;
            }
        }
        if used.iter().any(|&u| u != 1) {
            return false;
        }
        let connectors_ok = self.connectors.iter().all(|p| {
            let len = p.len() - 1;
            len % 2 == 1 && tri[p[0]] && tri[p[len]] && p[1..len].iter().all(|&v| !tri[v])
        });
        let pendants_ok = self.pendants.iter().all(|p| {
            let len = p.len() - 1;
            len % 2 == 0
                && tri[p[0]]
                && g.degree(p[0]) == 3
                && g.degree(p[len]) == 1
                && p[1..].iter().all(|&v| !tri[v])
        });
        connectors_ok && pendants_ok && g.is_connected()
    }
}

/// Full verdict with the triangle-family decomposition when applicable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: ColorabilityClass,
    pub witness: Option<TFamilyWitness>,
}

/// Recognizes the triangle family on the block structure: cycle blocks must
/// be vertex-disjoint triangles and the remaining bridges must form odd
/// connectors and even pendant paths. Returns the decomposition on success.
pub fn recognize_t_family(g: &Graph) -> Result<Option<TFamilyWitness>> {
    let bt = decompose_blocks(g)?;
    if g.m() == 0 || g.max_degree() > 3 {
        return Ok(None);
    }
    let mut tri_of: Vec<Option<usize>> = vec![None; g.n()];
    let mut triangles = Vec::new();
    for block in &bt.blocks {
        match block.kind {
            BlockKind::Bridge => {}
            BlockKind::Cycle if block.edges.len() == 3 => {
                let id = triangles.len();
                for &v in &block.vertices {
                    if tri_of[v].is_some() {
                        return Ok(None);
                    }
                    tri_of[v] = Some(id);
                }
                triangles.push([block.vertices[0], block.vertices[1], block.vertices[2]]);
            }
            _ => return Ok(None),
        }
    }
    if triangles.is_empty() {
        return Ok(None);
    }
    if (0..g.n()).any(|v| tri_of[v].is_none() && g.degree(v) > 2) {
        return Ok(None);
    }

    let mut connectors = Vec::new();
    let mut pendants = Vec::new();
    for start in 0..g.n() {
        if tri_of[start].is_none() {
            continue;
        }
        for first in g.neighbors(start) {
            if tri_of[first].is_some() && tri_of[first] == tri_of[start] {
                continue;
            }
            let mut path = vec![start, first];
            while tri_of[*path.last().unwrap()].is_none() && g.degree(*path.last().unwrap()) == 2
            {
                let cur = path[path.len() - 1];
                let prev = path[path.len() - 2];
                let next = g.neighbors(cur).find(|&w| w != prev).unwrap();
                path.push(next);
            }
            let end = *path.last().unwrap();
            let len = path.len() - 1;
            if tri_of[end].is_some() {
                if len % 2 == 0 {
                    return Ok(None);
                }
                if start < end {
                    connectors.push(path);
                }
            } else {
                if len % 2 == 1 {
                    return Ok(None);
                }
                pendants.push(path);
            }
        }
    }
    Ok(Some(TFamilyWitness {
        triangles,
        connectors,
        pendants,
    }))
}

/// Classifies a connected graph. The triangle is reported as `OddCycle`
/// even though it is also the smallest triangle-family member.
pub fn classify(g: &Graph) -> Result<Classification> {
    g.require_connected()?;
    let plain = |class| Classification {
        class,
        witness: None,
    };
    if g.m() == 0 {
        return Ok(plain(ColorabilityClass::Colorable));
    }
    if g.is_path() {
        return Ok(plain(if g.m() % 2 == 1 {
            ColorabilityClass::OddPath
        } else {
            ColorabilityClass::Colorable
        }));
    }
    if g.is_cycle() {
        return Ok(plain(if g.m() % 2 == 1 {
            ColorabilityClass::OddCycle
        } else {
            ColorabilityClass::Colorable
        }));
    }
    Ok(match recognize_t_family(g)? {
        Some(w) => Classification {
            class: ColorabilityClass::TFamily,
            witness: Some(w),
        },
        None => plain(ColorabilityClass::Colorable),
    })
}

pub fn is_colorable(g: &Graph) -> Result<bool> {
    Ok(classify(g)?.class.is_colorable())
}
