//! Ribbon graphs (rotation systems) and the closed oriented surfaces they
//! fill.
//!
//! A [`RibbonMap`] stores darts `0..2m`; dart `2k` runs along edge `k`
//! forwards and `2k + 1` backwards. The rotation `σ` lists the darts leaving
//! each vertex in cyclic order. From this the crate computes faces, Euler
//! characteristic and genus ([`surface`]), reduces a map to the normal form
//! `a₁ b₁ ā₁ b̄₁ ⋯` of its surface ([`classify`]), tests isomorphism
//! ([`iso`]), extracts fundamental group presentations and decides homotopy
//! of loops ([`group`]), and builds finite pieces of Cayley complexes
//! ([`cayley`]).
//!
//! ```
//! use ribbon_core::{classify, petal, RibbonMap};
//!
//! let torus = RibbonMap::from_rotation_lists(&["a", "b"], &[vec!["a+", "b-", "a-", "b+"]]).unwrap();
//! assert_eq!(torus, petal(1));
//! assert_eq!(classify(&torus).unwrap().canonical_word.to_string(), "a b A B");
//! ```

pub mod cayley;
pub mod classify;
pub mod error;
pub mod group;
pub mod io;
pub mod iso;
pub mod map;
pub mod surface;
pub mod word;

pub use cayley::{cayley_ball, CayleyBall};
pub use classify::{
    classify, contract_edge, delete_face_merging_edge, normalize, polygon_word, random_filling_map,
    reduce_to_one_vertex_one_face, CanonicalWord, ClassificationResult, Move, MoveTrace,
};
pub use error::{Error, Result};
pub use group::{
    homotopic, is_trivial_word, parse_group_spec, pi1_presentation, surface_group, DiscretePath,
    GroupWord, Presentation,
};
pub use io::{parse_graph, serialize_graph, GraphDocument};
pub use iso::{are_isomorphic, canonical_encoding, DartBijection};
pub use map::{Dart, DartRef, RibbonMap, Sign, ValidationReport};
pub use surface::{euler_characteristic, genus, petal, trace_faces, Face, SurfaceReport};
pub use word::{word_to_map, PolygonWord, SignedLabel};
