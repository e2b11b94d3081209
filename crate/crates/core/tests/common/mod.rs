//! Shared corpora and oracles for the integration tests. The oracles work on
//! the serialized token form of a map and do not reuse library internals.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_core::{random_filling_map, Dart, GraphDocument, RibbonMap};

/// A uniformly random rotation on `2m` darts, retried until connected.
pub fn random_rotation_map(rng: &mut ChaCha8Rng, m: usize) -> RibbonMap {
    let labels: Vec<String> = (0..m).map(|k| format!("x{k}")).collect();
    loop {
        let mut perm: Vec<usize> = (0..2 * m).collect();
        perm.shuffle(rng);
        let mut seen = vec![false; 2 * m];
        let mut rotations = Vec::new();
        for s in 0..2 * m {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                cycle.push(Dart(d));
                d = perm[d];
            }
            rotations.push(cycle);
        }
        if let Ok(map) = RibbonMap::from_dart_rotations(labels.clone(), rotations) {
            return map;
        }
    }
}

/// Mixed corpus: uniformly random rotations with `1 ≤ m ≤ max_m`, and maps
/// grown from petal graphs.
pub fn corpus(count: usize, max_m: usize, seed: u64) -> Vec<RibbonMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                let m = rng.gen_range(1..=max_m);
                random_rotation_map(&mut rng, m)
            } else {
                let g = rng.gen_range(0..=3);
                let budget = max_m.saturating_sub(2 * g);
                let k = rng.gen_range(0..=budget);
                random_filling_map(g, k, rng.gen())
            }
        })
        .collect()
}

fn flip(token: &str) -> String {
    let (label, sign) = token.split_at(token.len() - 1);
    format!("{label}{}", if sign == "+" { "-" } else { "+" })
}

/// `(V, m, F)` computed from the token lists: faces follow
/// "reverse the dart, then take the next token in that vertex's list".
pub fn oracle_counts(map: &RibbonMap) -> (usize, usize, usize) {
    let doc = GraphDocument::from_map(map);
    let m = doc.edges.len();
    if m == 0 {
        return (doc.vertices.len(), 0, 1);
    }
    let mut next: HashMap<String, String> = HashMap::new();
    for v in &doc.vertices {
        let r = &v.rotation;
        for i in 0..r.len() {
            next.insert(r[i].clone(), r[(i + 1) % r.len()].clone());
        }
    }
    let mut unseen: Vec<String> = next.keys().cloned().collect();
    unseen.sort();
    let mut seen = std::collections::HashSet::new();
    let mut faces = 0;
    for t in unseen {
        if seen.contains(&t) {
            continue;
        }
        faces += 1;
        let mut d = t;
        while seen.insert(d.clone()) {
            d = next[&flip(&d)].clone();
        }
    }
    (doc.vertices.len(), m, faces)
}

pub fn oracle_chi(map: &RibbonMap) -> i64 {
    let (v, m, f) = oracle_counts(map);
    v as i64 - m as i64 + f as i64
}

/// Vertex count of the quotient of a polygon with the given boundary
/// letters `(label, inverse)`: corner `i` sits between letters `i − 1` and
/// `i`, and gluing a side to its partner identifies the corners at its ends
/// in reverse.
pub fn oracle_word_vertices(letters: &[(String, bool)]) -> usize {
    let n = letters.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = root(p, p[x]);
            p[x] = r;
            r
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i < j && letters[i].0 == letters[j].0 {
                // side i runs corner i → corner i+1, side j the other way
                let (a, b) = (root(&mut parent, i), root(&mut parent, (j + 1) % n));
                parent[a] = b;
                let (a, b) = (root(&mut parent, (i + 1) % n), root(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&x| root(&mut parent, x) == x).count()
}

/// χ of the closed surface glued from one polygon.
pub fn oracle_word_chi(letters: &[(String, bool)]) -> i64 {
    if letters.is_empty() {
        return 2;
    }
    oracle_word_vertices(letters) as i64 - (letters.len() / 2) as i64 + 1
}
