//! Library results checked against independent oracles.

mod common;

use std::collections::VecDeque;

use common::{corpus, oracle_chi, oracle_counts, oracle_word_chi, random_rotation_map};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_core::classify::{surface_homomorphism, Move};
use ribbon_core::group::{dehn_reduce, free_group, words_equal, zxz, Letter};
use ribbon_core::*;

fn letters_of(w: &PolygonWord) -> Vec<(String, bool)> {
    w.letters().iter().map(|l| (l.label.clone(), l.inverse)).collect()
}

/// A random gluing pattern: `n` labels, each once per sign, shuffled.
fn random_word(rng: &mut ChaCha8Rng, n: usize) -> PolygonWord {
    let mut letters: Vec<SignedLabel> = (0..n)
        .flat_map(|k| [SignedLabel::new(format!("w{k}"), false), SignedLabel::new(format!("w{k}"), true)])
        .collect();
    letters.shuffle(rng);
    PolygonWord::new(letters)
}

#[test]
fn face_counts_match_token_oracle() {
    for m in corpus(400, 12, 11) {
        let (v, e, f) = oracle_counts(&m);
        let faces = trace_faces(&m).map(|f| f.len()).unwrap_or(1);
        assert_eq!((m.num_vertices(), m.num_edges(), faces), (v, e, f));
        assert_eq!(euler_characteristic(&m), oracle_chi(&m));
    }
}

#[test]
fn polygon_euler_characteristic_matches_corner_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let n = rng.gen_range(1..=9);
        let w = random_word(&mut rng, n);
        let chi = oracle_word_chi(&letters_of(&w));
        assert_eq!(w.euler_characteristic(), chi, "{w}");
        assert_eq!(euler_characteristic(&word_to_map(&w).unwrap()), chi, "{w}");
    }
}

#[test]
fn normalize_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..300 {
        let n = rng.gen_range(1..=10);
        let w = random_word(&mut rng, n);
        let chi = oracle_word_chi(&letters_of(&w));
        let (canonical, trace) = normalize(&w).unwrap();
        assert_eq!(canonical.len() as i64, 2 * (2 - chi), "{w}");
        let mut current = w.clone();
        for mv in &trace.moves {
            current = MoveTrace { moves: vec![mv.clone()] }.replay_word(&current).unwrap();
            assert_eq!(oracle_word_chi(&letters_of(&current)), chi, "{mv:?}");
        }
        assert_eq!(current, canonical);
    }
}

#[test]
fn classification_matches_oracle_genus() {
    for m in corpus(200, 14, 12) {
        let r = classify(&m).unwrap();
        assert_eq!(2 - 2 * r.genus as i64, oracle_chi(&m));
        assert_eq!(r.canonical_word.len(), 4 * r.genus);
        let replayed = r.trace.replay(&m).unwrap();
        assert_eq!(replayed.word.as_ref(), r.canonical_word.word());
        let deletions = r.trace.moves.iter().filter(|x| matches!(x, Move::DeleteEdge { .. })).count();
        let contractions = r.trace.moves.iter().filter(|x| matches!(x, Move::ContractEdge { .. })).count();
        let (v, _, f) = oracle_counts(&m);
        assert_eq!(deletions, f - 1);
        assert_eq!(contractions, v - 1);
    }
}

/// Every bijection of a tiny dart set, tried by brute force.
fn brute_force_isomorphic(a: &RibbonMap, b: &RibbonMap) -> bool {
    let n = a.num_darts();
    if n != b.num_darts() {
        return false;
    }
    fn search(a: &RibbonMap, b: &RibbonMap, image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = a.num_darts();
        if image.len() == n {
            return a.darts().all(|d| {
                image[a.sigma(d).0] == b.sigma(Dart(image[d.0])).0 && image[d.0 ^ 1] == image[d.0] ^ 1
            });
        }
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                image.push(t);
                if search(a, b, image, used) {
                    return true;
                }
                image.pop();
                used[t] = false;
            }
        }
        false
    }
    search(a, b, &mut Vec::new(), &mut vec![false; n])
}

#[test]
fn isomorphism_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..150 {
        let m = rng.gen_range(1..=3);
        let a = random_rotation_map(&mut rng, m);
        let b = random_rotation_map(&mut rng, m);
        let expected = brute_force_isomorphic(&a, &b);
        let found = are_isomorphic(&a, &b);
        assert_eq!(found.is_some(), expected);
        assert_eq!(canonical_encoding(&a).unwrap() == canonical_encoding(&b).unwrap(), expected);
        if let Some(beta) = found {
            assert!(beta.verify(&a, &b));
        }
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // first p, then q
    p.iter().map(|&i| q[i]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// A homomorphism `A_g → S_n`: the first two handles cancel
/// (`a₂ = b₁`, `b₂ = a₁`), later generators come in equal pairs.
fn permutation_rep(rng: &mut ChaCha8Rng, g: usize, n: usize) -> Vec<Vec<usize>> {
    let mut random = || {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    };
    let (x, y) = (random(), random());
    let mut images = vec![x.clone(), y.clone(), y, x];
    for _ in 2..g {
        let z = random();
        images.push(z.clone());
        images.push(z);
    }
    images
}

fn evaluate(w: &GroupWord, images: &[Vec<usize>]) -> Vec<usize> {
    let n = images[0].len();
    let mut acc: Vec<usize> = (0..n).collect();
    for l in &w.letters {
        let p = if l.inv { invert(&images[l.gen]) } else { images[l.gen].clone() };
        acc = compose(&acc, &p);
    }
    acc
}

#[test]
fn dehn_agrees_with_finite_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for g in 2..=3 {
        let pres = surface_group(g);
        let reps: Vec<_> = (0..6).map(|_| permutation_rep(&mut rng, g, 6)).collect();
        let identity: Vec<usize> = (0..6).collect();
        for rep in &reps {
            assert_eq!(evaluate(&pres.relators[0], rep), identity);
        }
        for _ in 0..400 {
            let len = rng.gen_range(0..=10);
            let w = GroupWord::new(
                (0..len)
                    .map(|_| Letter::new(rng.gen_range(0..2 * g), rng.gen()))
                    .collect(),
            );
            let trivial = is_trivial_word(&w, &pres).unwrap();
            if trivial {
                assert!(reps.iter().all(|r| evaluate(&w, r) == identity));
            }
            if reps.iter().any(|r| evaluate(&w, r) != identity) {
                assert!(!trivial);
            }
            assert!(dehn_reduce(&w, g).len() <= w.len());
        }
    }
}

#[test]
fn cayley_counts_match_closed_forms() {
    for r in 0..=4 {
        let b = cayley_ball(&free_group(2), r).unwrap();
        assert_eq!(b.vertices.len(), 2 * 3usize.pow(r as u32) - 1);
        assert_eq!(b.edges.len(), b.vertices.len() - 1);
    }
    for r in 0..=6 {
        let b = cayley_ball(&zxz(), r).unwrap();
        assert_eq!(b.vertices.len(), 2 * r * r + 2 * r + 1);
        // unit squares with every corner in the taxicab ball
        let mut squares = 0;
        let r = r as i64;
        for x in -r..=r {
            for y in -r..=r {
                let inside = |x: i64, y: i64| x.abs() + y.abs() <= r;
                if inside(x, y) && inside(x + 1, y) && inside(x, y + 1) && inside(x + 1, y + 1) {
                    squares += 1;
                }
            }
        }
        assert_eq!(b.cells.len(), squares);
    }
}

fn shortest_path(map: &RibbonMap, from: usize, to: usize) -> Vec<Dart> {
    let mut prev: Vec<Option<Dart>> = vec![None; map.num_vertices()];
    let mut seen = vec![false; map.num_vertices()];
    seen[from] = true;
    let mut q = VecDeque::from([from]);
    while let Some(u) = q.pop_front() {
        for &d in map.star(u).unwrap() {
            let w = map.vertex_of(d.reversed());
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some(d);
                q.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while let Some(d) = prev[at] {
        path.push(d);
        at = map.vertex_of(d);
    }
    path.reverse();
    path
}

/// Rank of integer vectors modulo a large prime.
fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    const P: i64 = 1_000_000_007;
    let pow = |mut b: i64, mut e: i64| {
        let mut r = 1;
        b = b.rem_euclid(P);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(P)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = pow(m[rank][c], P - 2);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % P;
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x = (*x - f * y).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn edge_vector(map: &RibbonMap, darts: &[Dart]) -> Vec<i64> {
    let mut v = vec![0; map.num_edges()];
    for d in darts {
        v[d.edge()] += if d.is_forward() { 1 } else { -1 };
    }
    v
}

/// Homology oracle: a loop whose edge vector is outside the span of the face
/// boundaries is not null-homotopic. In genus ≤ 1 the fundamental group is
/// abelian and the converse holds as well.
#[test]
fn homotopy_agrees_with_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (i, map) in corpus(120, 10, 13).into_iter().enumerate() {
        if map.num_edges() == 0 {
            continue;
        }
        let g = genus(&map).unwrap();
        let faces: Vec<Vec<i64>> =
            trace_faces(&map).unwrap().iter().map(|f| edge_vector(&map, &f.darts)).collect();
        let base_rank = rank_mod_p(&faces);
        for _ in 0..5 {
            let mut darts = Vec::new();
            let mut at = 0;
            for _ in 0..rng.gen_range(1..8) {
                let d = *map.star(at).unwrap().choose(&mut rng).unwrap();
                darts.push(d);
                at = map.vertex_of(d.reversed());
            }
            darts.extend(shortest_path(&map, at, 0));
            let lp = DiscretePath::new(&map, 0, darts.clone()).unwrap();
            let mut with = faces.clone();
            with.push(edge_vector(&map, &darts));
            let null_homologous = rank_mod_p(&with) == base_rank;
            let null_homotopic = homotopic(&map, 0, &lp, &DiscretePath::constant(0)).unwrap();
            if !null_homologous {
                assert!(!null_homotopic, "map {i}");
            }
            if g <= 1 {
                assert_eq!(null_homologous, null_homotopic, "map {i}");
            }
        }
    }
}

#[test]
fn face_loops_are_null_homotopic() {
    for map in corpus(60, 10, 14) {
        let Ok(faces) = trace_faces(&map) else { continue };
        for f in faces {
            let start = map.vertex_of(f.darts[0]);
            let to_start = shortest_path(&map, 0, start);
            let mut darts = to_start.clone();
            darts.extend(f.darts.iter().copied());
            darts.extend(to_start.iter().rev().map(|d| d.reversed()));
            let lp = DiscretePath::new(&map, 0, darts).unwrap();
            assert!(homotopic(&map, 0, &lp, &DiscretePath::constant(0)).unwrap());
        }
    }
}

#[test]
fn surface_homomorphism_sends_faces_to_relator_conjugates() {
    for map in corpus(60, 10, 15) {
        let h = surface_homomorphism(&map).unwrap();
        let pres = surface_group(h.genus);
        let Ok(faces) = trace_faces(&map) else { continue };
        for f in faces {
            let mut letters = Vec::new();
            for &d in &f.darts {
                for l in h.dart_image(d) {
                    let gen = h.generators.iter().position(|x| *x == l.label).unwrap();
                    letters.push(Letter::new(gen, l.inverse));
                }
            }
            assert!(words_equal(&GroupWord::new(letters), &GroupWord::default(), &pres).unwrap());
        }
    }
}

