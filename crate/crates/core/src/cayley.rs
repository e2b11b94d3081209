//! Finite balls in Cayley graphs, with a disc for every relator loop that
//! fits inside the ball.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::group::{is_trivial_word, words_equal, GroupWord, Letter, Presentation};

pub const CELL_CONVENTION: &str =
    "one cell per (base vertex, relator) whose relator loop from the base stays inside the ball";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyEdge {
    pub source: usize,
    pub generator: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyCell {
    pub base: usize,
    pub relator: usize,
    /// Vertices visited reading the relator from `base`, `base` first.
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyBall {
    pub presentation: Presentation,
    pub radius: usize,
    /// Shortlex-first representatives in discovery order, identity first.
    pub vertices: Vec<GroupWord>,
    /// One edge `u → u·g` for every generator `g` (not its inverse) with
    /// both ends in the ball.
    pub edges: Vec<CayleyEdge>,
    pub cells: Vec<CayleyCell>,
    /// Word length of each vertex.
    pub depth: Vec<usize>,
}

fn letters(pres: &Presentation) -> Vec<Letter> {
    (0..pres.generators.len())
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect()
}

/// Vertex lookup by solver equality. When every relator has zero exponent
/// sums, equal elements share their abelianization, so only vertices in the
/// same bucket need a solver call.
struct Index<'a> {
    pres: &'a Presentation,
    bucketed: bool,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl<'a> Index<'a> {
    fn new(pres: &'a Presentation) -> Self {
        let n = pres.generators.len();
        let bucketed = pres
            .relators
            .iter()
            .all(|r| r.abelianization(n).iter().all(|&s| s == 0));
        Index { pres, bucketed, buckets: HashMap::new() }
    }

    fn key(&self, w: &GroupWord) -> Vec<i64> {
        if self.bucketed {
            w.abelianization(self.pres.generators.len())
        } else {
            Vec::new()
        }
    }

    fn insert(&mut self, w: &GroupWord, i: usize) {
        let key = self.key(w);
        self.buckets.entry(key).or_default().push(i);
    }

    fn find(&self, vertices: &[GroupWord], w: &GroupWord) -> Result<Option<usize>> {
        let Some(candidates) = self.buckets.get(&self.key(w)) else {
            return Ok(None);
        };
        for &i in candidates {
            if words_equal(&vertices[i], w, self.pres)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

fn times(w: &GroupWord, l: Letter) -> GroupWord {
    let mut letters = w.letters.clone();
    letters.push(l);
    GroupWord::new(letters).free_reduce()
}

/// Breadth-first ball of the given radius around the identity. Elements are
/// told apart by the word-problem solver of the presentation.
pub fn cayley_ball(pres: &Presentation, radius: usize) -> Result<CayleyBall> {
    is_trivial_word(&GroupWord::default(), pres)?;
    let alphabet = letters(pres);
    let mut vertices = vec![GroupWord::default()];
    let mut index = Index::new(pres);
    index.insert(&vertices[0], 0);
    let mut depth = vec![0];
    let mut layer = 0..1;
    for d in 1..=radius {
        let start = vertices.len();
        for parent in layer.clone() {
            for &l in &alphabet {
                let w = times(&vertices[parent], l);
                if index.find(&vertices, &w)?.is_none() {
                    index.insert(&w, vertices.len());
                    vertices.push(w);
                    depth.push(d);
                }
            }
        }
        layer = start..vertices.len();
    }

    let mut edges = Vec::new();
    for u in 0..vertices.len() {
        for g in 0..pres.generators.len() {
            let w = times(&vertices[u], Letter::new(g, false));
            if let Some(target) = index.find(&vertices, &w)? {
                edges.push(CayleyEdge { source: u, generator: g, target });
            }
        }
    }

    let mut cells = Vec::new();
    for base in 0..vertices.len() {
        'relators: for (j, r) in pres.relators.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            let mut cycle = vec![base];
            let mut at = base;
            for (i, &l) in r.letters.iter().enumerate() {
                let w = times(&vertices[at], l);
                match index.find(&vertices, &w)? {
                    Some(next) => at = next,
                    None => continue 'relators,
                }
                if i + 1 < r.len() {
                    cycle.push(at);
                }
            }
            debug_assert_eq!(at, base);
            cells.push(CayleyCell { base, relator: j, cycle });
        }
    }

    Ok(CayleyBall {
        presentation: pres.clone(),
        radius,
        vertices,
        edges,
        cells,
        depth,
    })
}

impl CayleyBall {
    pub fn vertex_name(&self, i: usize) -> String {
        self.presentation.format_word(&self.vertices[i])
    }

    /// Edges at `v` in either direction, so interior vertices have one for
    /// each generator and each inverse.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.source == v) + usize::from(e.target == v))
            .sum()
    }

    /// No cycles in the underlying undirected graph.
    pub fn is_tree(&self) -> bool {
        let mut uf = crate::word::UnionFind::new(self.vertices.len());
        for e in &self.edges {
            if uf.find(e.source) == uf.find(e.target) {
                return false;
            }
            uf.union(e.source, e.target);
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Cell {
            base: usize,
            relator: usize,
            cycle: Vec<usize>,
        }
        #[derive(Serialize)]
        struct Doc {
            generators: Vec<String>,
            relators: Vec<String>,
            radius: usize,
            cell_convention: &'static str,
            vertices: Vec<String>,
            edges: Vec<(usize, String, usize)>,
            cells: Vec<Cell>,
        }
        let p = &self.presentation;
        serde_json::to_value(Doc {
            generators: p.generators.clone(),
            relators: p.relators.iter().map(|r| p.format_word(r)).collect(),
            radius: self.radius,
            cell_convention: CELL_CONVENTION,
            vertices: (0..self.vertices.len()).map(|i| self.vertex_name(i)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.source, p.generators[e.generator].clone(), e.target))
                .collect(),
            cells: self
                .cells
                .iter()
                .map(|c| Cell {
                    base: c.base,
                    relator: c.relator,
                    cycle: c.cycle.clone(),
                })
                .collect(),
        })
        .expect("plain data")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cayley {\n");
        let _ = writeln!(out, "  // radius {}", self.radius);
        let _ = writeln!(out, "  // cells: {CELL_CONVENTION}");
        for i in 0..self.vertices.len() {
            let _ = writeln!(out, "  g{i} [label=\"{}\"];", self.vertex_name(i));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  g{} -> g{} [label=\"{}\"];",
                e.source, e.target, self.presentation.generators[e.generator]
            );
        }
        for c in &self.cells {
            let cycle: Vec<String> = c.cycle.iter().map(|v| format!("g{v}")).collect();
            let _ = writeln!(out, "  // cell relator {}: {}", c.relator, cycle.join(" "));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{free_group, surface_group, zxz, GroupKind};

    #[test]
    fn free_rank_two() {
        let b = cayley_ball(&free_group(2), 2).unwrap();
        assert_eq!((b.vertices.len(), b.edges.len(), b.cells.len()), (17, 16, 0));
        assert!(b.is_tree());
        assert_eq!(b.vertex_name(1), "a");
        assert_eq!(b.vertex_name(2), "A");
        assert_eq!(b.degree(0), 4);
    }

    #[test]
    fn integer_lattice() {
        let b = cayley_ball(&zxz(), 2).unwrap();
        assert_eq!(b.vertices.len(), 13);
        assert_eq!(b.cells.len(), 4);
        assert!(b.cells.iter().all(|c| c.cycle.len() == 4));
        assert!(!b.is_tree());
    }

    #[test]
    fn genus_two_radius_one() {
        let b = cayley_ball(&surface_group(2), 1).unwrap();
        assert_eq!(b.vertices.len(), 9);
        assert!(b.to_dot().matches("[label=").count() >= 9);
    }

    #[test]
    fn radius_zero_and_unsupported() {
        for p in [free_group(3), zxz(), surface_group(3)] {
            let b = cayley_ball(&p, 0).unwrap();
            assert_eq!((b.vertices.len(), b.edges.len(), b.cells.len()), (1, 0, 0));
        }
        let unknown = Presentation { kind: GroupKind::Unknown, ..free_group(1) };
        assert!(cayley_ball(&unknown, 1).is_err());
    }

    #[test]
    fn json_shape() {
        let j = cayley_ball(&zxz(), 1).unwrap().to_json();
        assert_eq!(j["vertices"][0], "1");
        assert_eq!(j["cell_convention"], CELL_CONVENTION);
        assert_eq!(j["edges"].as_array().unwrap().len(), 4);
    }
}
