//! Faces, Euler characteristic and genus of the closed surface a ribbon map
//! fills.
//!
//! Faces are the cycles of the face-successor permutation `φ(d) = σ(ι(d))`:
//! after arriving at a vertex along `d`, leave along the successor of the
//! reversed dart. Each face is the boundary of one disc glued in to close the
//! ribbon surface, so `χ = V − m + F`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{standard_labels, Dart, RibbonMap};
use crate::word::{PolygonWord, SignedLabel};

/// One face, listed from its smallest dart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn word(&self, map: &RibbonMap) -> PolygonWord {
        PolygonWord::new(self.darts.iter().map(|&d| SignedLabel::of_dart(map, d)).collect())
    }
}

#[inline]
pub fn face_successor(map: &RibbonMap, d: Dart) -> Dart {
    map.sigma(d.reversed())
}

/// All faces, ordered by their smallest dart.
pub fn trace_faces(map: &RibbonMap) -> Result<Vec<Face>> {
    if map.num_edges() == 0 {
        return Err(Error::EmptyMap);
    }
    let n = map.num_darts();
    let mut seen = vec![false; n];
    let mut faces = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = Dart(start);
        while !seen[d.0] {
            seen[d.0] = true;
            darts.push(d);
            d = face_successor(map, d);
        }
        faces.push(Face { darts });
    }
    Ok(faces)
}

/// Face index of every dart.
pub fn face_of_darts(map: &RibbonMap) -> Vec<usize> {
    let mut out = vec![usize::MAX; map.num_darts()];
    if let Ok(faces) = trace_faces(map) {
        for (i, f) in faces.iter().enumerate() {
            for d in &f.darts {
                out[d.0] = i;
            }
        }
    }
    out
}

/// Number of faces; the edgeless sphere map has one.
pub fn face_count(map: &RibbonMap) -> usize {
    match trace_faces(map) {
        Ok(f) => f.len(),
        Err(_) => 1,
    }
}

pub fn euler_characteristic(map: &RibbonMap) -> i64 {
    map.num_vertices() as i64 - map.num_edges() as i64 + face_count(map) as i64
}

pub fn genus(map: &RibbonMap) -> Result<usize> {
    genus_of_chi(euler_characteristic(map))
}

pub(crate) fn genus_of_chi(chi: i64) -> Result<usize> {
    if chi % 2 != 0 || chi > 2 {
        return Err(Error::InternalInvariantViolation(format!(
            "Euler characteristic {chi} is not that of a closed oriented surface"
        )));
    }
    Ok(((2 - chi) / 2) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    #[serde(rename = "V")]
    pub vertices: usize,
    pub m: usize,
    #[serde(rename = "F")]
    pub faces: usize,
    pub chi: i64,
    pub genus: usize,
    pub face_words: Vec<String>,
}

pub fn report(map: &RibbonMap) -> Result<SurfaceReport> {
    let face_words = match trace_faces(map) {
        Ok(faces) => faces.iter().map(|f| f.word(map).to_string()).collect(),
        Err(_) => vec![String::new()],
    };
    let chi = euler_characteristic(map);
    Ok(SurfaceReport {
        vertices: map.num_vertices(),
        m: map.num_edges(),
        faces: face_count(map),
        chi,
        genus: genus_of_chi(chi)?,
        face_words,
    })
}

/// The petal graph: one vertex carrying `g` pairs of loops `a_i, b_i` whose
/// single face reads `a_1 b_1 ā_1 b̄_1 … a_g b_g ā_g b̄_g`. `g = 0` gives the
/// sphere map.
pub fn petal(g: usize) -> RibbonMap {
    if g == 0 {
        return RibbonMap::sphere();
    }
    let labels = standard_labels(2 * g);
    let mut rotation = Vec::with_capacity(4 * g);
    for i in 0..g {
        let (a, b) = (2 * i, 2 * i + 1);
        rotation.extend([
            Dart::forward(a),
            Dart::backward(b),
            Dart::backward(a),
            Dart::forward(b),
        ]);
    }
    RibbonMap::from_dart_rotations(labels, vec![rotation]).expect("petal rotation is valid")
}
