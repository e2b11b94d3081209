//! Isomorphism of ribbon maps.
//!
//! An isomorphism is a dart bijection commuting with both the rotation and
//! the edge reversal. Only orientation-preserving isomorphisms count: a map
//! and its mirror image (every rotation reversed) are in general different.

use crate::error::{Error, Result};
use crate::map::{Dart, RibbonMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DartBijection {
    /// `mapping[d]` is the image of dart `d`.
    pub mapping: Vec<Dart>,
}

impl DartBijection {
    pub fn apply(&self, d: Dart) -> Dart {
        self.mapping[d.0]
    }

    /// Checks bijectivity and `β∘σ₁ = σ₂∘β`, `β∘ι₁ = ι₂∘β` on every dart.
    pub fn verify(&self, from: &RibbonMap, to: &RibbonMap) -> bool {
        let n = from.num_darts();
        if self.mapping.len() != n || to.num_darts() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &d in &self.mapping {
            if d.0 >= n || std::mem::replace(&mut hit[d.0], true) {
                return false;
            }
        }
        from.darts().all(|d| {
            let b = self.apply(d);
            self.apply(from.sigma(d)) == to.sigma(b) && self.apply(d.reversed()) == b.reversed()
        })
    }
}

fn relabel_from(map: &RibbonMap, root: Dart) -> Vec<Option<usize>> {
    let n = map.num_darts();
    let mut index = vec![None; n];
    let mut order = Vec::with_capacity(n);
    index[root.0] = Some(0);
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let d = order[head];
        head += 1;
        for next in [map.sigma(d), d.reversed()] {
            if index[next.0].is_none() {
                index[next.0] = Some(order.len());
                order.push(next);
            }
        }
    }
    index
}

fn encoding_from(map: &RibbonMap, root: Dart) -> Vec<u32> {
    let index = relabel_from(map, root);
    let n = map.num_darts();
    let mut inverse = vec![Dart(0); n];
    for d in map.darts() {
        inverse[index[d.0].expect("connected map")] = d;
    }
    let mut out = Vec::with_capacity(2 * n + 1);
    out.push(n as u32);
    for &d in &inverse {
        out.push(index[map.sigma(d).0].expect("connected") as u32);
        out.push(index[d.reversed().0].expect("connected") as u32);
    }
    out
}

/// Smallest breadth-first relabelling over all root darts, following σ then
/// ι. Two maps are isomorphic exactly when their encodings agree.
pub fn canonical_encoding(map: &RibbonMap) -> Result<Vec<u8>> {
    if map.num_edges() == 0 {
        return Err(Error::EmptyMap);
    }
    let best = map
        .darts()
        .map(|root| encoding_from(map, root))
        .min()
        .expect("at least two darts");
    Ok(best.iter().flat_map(|x| x.to_be_bytes()).collect())
}

/// A σ/ι-commuting bijection from `a` to `b`, if one exists.
pub fn are_isomorphic(a: &RibbonMap, b: &RibbonMap) -> Option<DartBijection> {
    if a.num_darts() != b.num_darts() || a.num_vertices() != b.num_vertices() {
        return None;
    }
    if a.num_edges() == 0 {
        return Some(DartBijection { mapping: Vec::new() });
    }
    let n = a.num_darts();
    'roots: for target in b.darts() {
        let mut mapping: Vec<Option<Dart>> = vec![None; n];
        mapping[0] = Some(target);
        let mut stack = vec![Dart(0)];
        while let Some(d) = stack.pop() {
            let image = mapping[d.0].expect("mapped before pushed");
            for (x, y) in [(a.sigma(d), b.sigma(image)), (d.reversed(), image.reversed())] {
                match mapping[x.0] {
                    None => {
                        mapping[x.0] = Some(y);
                        stack.push(x);
                    }
                    Some(z) if z != y => continue 'roots,
                    Some(_) => {}
                }
            }
        }
        let Some(mapping) = mapping.into_iter().collect::<Option<Vec<_>>>() else {
            continue;
        };
        let bijection = DartBijection { mapping };
        if bijection.verify(a, b) {
            return Some(bijection);
        }
    }
    None
}

/// Reverses every rotation.
pub fn mirror(map: &RibbonMap) -> RibbonMap {
    let rotations = map
        .rotations()
        .into_iter()
        .map(|mut r| {
            r.reverse();
            r
        })
        .collect();
    RibbonMap::from_dart_rotations(map.labels().to_vec(), rotations).expect("mirror of a valid map")
}
