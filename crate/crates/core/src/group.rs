//! Finitely presented groups attached to ribbon maps.
//!
//! The fundamental group of a map is read off a spanning tree: every edge
//! outside the tree is a generator, every face boundary a relator. The word
//! problem is decided for free groups and for the surface groups
//! `A_g = ⟨a₁, b₁, …, a_g, b_g | a₁ b₁ ā₁ b̄₁ ⋯ a_g b_g ā_g b̄_g⟩`: trivially for
//! `g = 0`, by exponent sums for the abelian `g = 1`, and by Dehn's algorithm
//! for `g ≥ 2`, where the relator has small cancellation (pieces of length 1
//! against a relator of length `4g ≥ 8`).

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::classify::surface_homomorphism;
use crate::error::{Error, Result};
use crate::map::{standard_labels, Dart, RibbonMap};
use crate::surface::trace_faces;
use crate::word::{parse_letters, SignedLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

/// Word over generator indices. Not reduced unless stated.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord {
    pub letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord::new(letters)
    }

    /// Deletes adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> GroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last().is_some_and(|&p| p.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord::new(out)
    }

    /// Free reduction followed by stripping cancelling first/last letters.
    pub fn cyclic_reduce(&self) -> GroupWord {
        let w = self.free_reduce();
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w.letters[i].cancels(w.letters[j - 1]) {
            i += 1;
            j -= 1;
        }
        GroupWord::new(w.letters[i..j].to_vec())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    /// Exponent sum of each generator, the image in `ℤ^n`.
    pub fn abelianization(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generators];
        for l in &self.letters {
            sums[l.gen] += if l.inv { -1 } else { 1 };
        }
        sums
    }

    /// Replaces every generator by a word.
    pub fn substitute(&self, images: &[GroupWord]) -> GroupWord {
        let mut letters = Vec::new();
        for l in &self.letters {
            let img = &images[l.gen];
            if l.inv {
                letters.extend(img.inverse().letters);
            } else {
                letters.extend_from_slice(&img.letters);
            }
        }
        GroupWord::new(letters).free_reduce()
    }

    pub fn format(&self, generators: &[String]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| SignedLabel::new(generators[l.gen].clone(), l.inv).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Free,
    /// The standard one-relator surface group `A_genus`.
    Surface { genus: usize },
    /// A group identified with `A_genus` through explicit images of its
    /// generators (in the generators `standard_labels(2 * genus)`).
    SurfaceImage { genus: usize, images: Vec<GroupWord> },
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<GroupWord>,
    pub kind: GroupKind,
}

impl Presentation {
    pub fn genus_hint(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Surface { genus } | GroupKind::SurfaceImage { genus, .. } => Some(genus),
            _ => None,
        }
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let letters = parse_letters(text, &self.generators)?;
        let mut out = Vec::with_capacity(letters.len());
        for l in letters {
            let gen = self
                .generators
                .iter()
                .position(|g| *g == l.label)
                .ok_or_else(|| Error::BadWord {
                    word: text.to_string(),
                    reason: format!("`{}` is not a generator", l.label),
                })?;
            out.push(Letter::new(gen, l.inverse));
        }
        Ok(GroupWord::new(out))
    }

    pub fn format_word(&self, w: &GroupWord) -> String {
        w.format(&self.generators)
    }

    /// Same generator count and, matching generators by position, the same
    /// non-empty relators up to cyclic rotation, in the same order. Empty
    /// relators say nothing and are skipped.
    pub fn same_up_to_renaming(&self, other: &Presentation) -> bool {
        let a: Vec<&GroupWord> = self.relators.iter().filter(|r| !r.is_empty()).collect();
        let b: Vec<&GroupWord> = other.relators.iter().filter(|r| !r.is_empty()).collect();
        self.generators.len() == other.generators.len()
            && a.len() == b.len()
            && a.iter().zip(&b).all(|(r, s)| cyclic_eq(&r.letters, &s.letters))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc<'a> {
            generators: &'a [String],
            relators: Vec<String>,
            genus: Option<usize>,
        }
        serde_json::to_value(Doc {
            generators: &self.generators,
            relators: self.relators.iter().map(|r| self.format_word(r)).collect(),
            genus: self.genus_hint(),
        })
        .expect("plain data")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len()
        && (a.is_empty() || (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i])))
}

pub fn free_group(rank: usize) -> Presentation {
    Presentation {
        generators: standard_labels(rank),
        relators: Vec::new(),
        kind: GroupKind::Free,
    }
}

fn surface_relator(genus: usize) -> GroupWord {
    let mut letters = Vec::with_capacity(4 * genus);
    for i in 0..genus {
        let (a, b) = (2 * i, 2 * i + 1);
        letters.extend([
            Letter::new(a, false),
            Letter::new(b, false),
            Letter::new(a, true),
            Letter::new(b, true),
        ]);
    }
    GroupWord::new(letters)
}

/// `A_g`; the trivial group for `g = 0`.
pub fn surface_group(genus: usize) -> Presentation {
    Presentation {
        generators: standard_labels(2 * genus),
        relators: if genus == 0 { Vec::new() } else { vec![surface_relator(genus)] },
        kind: GroupKind::Surface { genus },
    }
}

/// `⟨a, b | a b A B⟩`, the free abelian group of rank 2.
pub fn zxz() -> Presentation {
    surface_group(1)
}

/// `free:k`, `surface:g` or `zxz`.
pub fn parse_group_spec(spec: &str) -> Result<Presentation> {
    let bad = || Error::BadGroupSpec(spec.to_string());
    let spec_t = spec.trim();
    if spec_t == "zxz" {
        return Ok(zxz());
    }
    let (kind, n) = spec_t.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    match kind.trim() {
        "free" => Ok(free_group(n)),
        "surface" => Ok(surface_group(n)),
        _ => Err(bad()),
    }
}

/// Breadth-first spanning tree from `root`, scanning each star in increasing
/// dart order. `tree[k]` marks tree edges; `parent[v]` is the dart entering
/// `v` from its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    pub tree: Vec<bool>,
    pub parent: Vec<Option<Dart>>,
    /// Vertices in discovery order.
    pub order: Vec<usize>,
}

pub fn spanning_tree(map: &RibbonMap, root: usize) -> Result<SpanningTree> {
    let v = map.num_vertices();
    if root >= v {
        return Err(Error::IndexOutOfRange { index: root, len: v });
    }
    let mut tree = vec![false; map.num_edges()];
    let mut parent = vec![None; v];
    let mut seen = vec![false; v];
    let mut order = vec![root];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mut star = map.star(u)?.to_vec();
        star.sort();
        for d in star {
            let w = map.vertex_of(d.reversed());
            if !seen[w] {
                seen[w] = true;
                tree[d.edge()] = true;
                parent[w] = Some(d);
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    Ok(SpanningTree { root, tree, parent, order })
}

impl SpanningTree {
    /// Generator index of each edge, `None` on tree edges.
    pub fn generator_of_edge(&self) -> Vec<Option<usize>> {
        let mut next = 0;
        self.tree
            .iter()
            .map(|&t| {
                (!t).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    }

    /// Erases tree edges from a dart sequence.
    pub fn project(&self, darts: &[Dart]) -> GroupWord {
        let gens = self.generator_of_edge();
        GroupWord::new(
            darts
                .iter()
                .filter_map(|d| gens[d.edge()].map(|g| Letter::new(g, !d.is_forward())))
                .collect(),
        )
    }
}

/// Ribbon fundamental group at `v0`: non-tree edges as generators, one
/// relator per face (tree edges erased, freely and cyclically reduced,
/// duplicates kept). The edgeless sphere map gives one empty relator for
/// its single face. The presentation also carries the identification of
/// every generator with an element of the standard surface group, found by
/// following the edges through the classification moves.
pub fn pi1_presentation(map: &RibbonMap, v0: usize) -> Result<Presentation> {
    let tree = spanning_tree(map, v0)?;
    let gens = tree.generator_of_edge();
    let generators: Vec<String> = (0..map.num_edges())
        .filter(|&k| gens[k].is_some())
        .map(|k| map.label(k).to_string())
        .collect();
    let relators = match trace_faces(map) {
        Ok(faces) => faces.iter().map(|f| tree.project(&f.darts).cyclic_reduce()).collect(),
        Err(_) => vec![GroupWord::default()],
    };

    let hom = surface_homomorphism(map)?;
    let to_word = |letters: &[SignedLabel]| {
        GroupWord::new(
            letters
                .iter()
                .map(|l| {
                    let gen = hom.generators.iter().position(|g| *g == l.label);
                    Letter::new(gen.expect("image uses standard labels"), l.inverse)
                })
                .collect(),
        )
    };
    // Image of the tree path from v0 to each vertex.
    let mut potential = vec![GroupWord::default(); map.num_vertices()];
    for &v in &tree.order[1..] {
        let d = tree.parent[v].expect("non-root vertex has a parent");
        let u = map.vertex_of(d);
        potential[v] = potential[u].concat(&to_word(&hom.dart_image(d))).free_reduce();
    }
    let images = (0..map.num_edges())
        .filter(|&k| gens[k].is_some())
        .map(|k| {
            let d = Dart::forward(k);
            let (u, w) = map.endpoints(d);
            potential[u]
                .concat(&to_word(&hom.dart_image(d)))
                .concat(&potential[w].inverse())
                .free_reduce()
        })
        .collect();

    Ok(Presentation {
        generators,
        relators,
        kind: GroupKind::SurfaceImage { genus: hom.genus, images },
    })
}

/// Decides whether `word` is the identity of the presented group.
pub fn is_trivial_word(word: &GroupWord, pres: &Presentation) -> Result<bool> {
    if let Some(l) = word.letters.iter().find(|l| l.gen >= pres.generators.len()) {
        return Err(Error::IndexOutOfRange {
            index: l.gen,
            len: pres.generators.len(),
        });
    }
    match &pres.kind {
        GroupKind::Free => Ok(word.free_reduce().is_empty()),
        GroupKind::Surface { genus } => Ok(trivial_in_surface_group(word, *genus)),
        GroupKind::SurfaceImage { genus, images } => {
            Ok(trivial_in_surface_group(&word.substitute(images), *genus))
        }
        GroupKind::Unknown => Err(Error::UnsupportedPresentation(
            "only free groups and surface groups have a word-problem solver".into(),
        )),
    }
}

/// `u = v` in the presented group.
pub fn words_equal(u: &GroupWord, v: &GroupWord, pres: &Presentation) -> Result<bool> {
    is_trivial_word(&u.concat(&v.inverse()), pres)
}

fn trivial_in_surface_group(word: &GroupWord, genus: usize) -> bool {
    match genus {
        0 => true,
        1 => word.abelianization(2).iter().all(|&s| s == 0),
        _ => dehn_reduce(word, genus).is_empty(),
    }
}

/// Dehn's algorithm in `A_g`, `g ≥ 2`, on the cyclic word. Returns the
/// cyclically reduced word once no more than half of any cyclic rotation of
/// the relator or its inverse appears in it.
pub fn dehn_reduce(word: &GroupWord, genus: usize) -> GroupWord {
    let r = surface_relator(genus);
    let n = r.len();
    let mut rotations: Vec<Vec<Letter>> = Vec::with_capacity(2 * n);
    for base in [&r, &r.inverse()] {
        for s in 0..n {
            rotations.push((0..n).map(|i| base.letters[(s + i) % n]).collect());
        }
    }
    let mut w = word.cyclic_reduce().letters;
    'outer: loop {
        let len = w.len();
        for start in 0..len {
            for rot in &rotations {
                let matched = (0..len.min(n))
                    .take_while(|&i| w[(start + i) % len] == rot[i])
                    .count();
                if 2 * matched > n {
                    let mut next: Vec<Letter> = rot[matched..].iter().rev().map(|l| l.inverse()).collect();
                    next.extend((matched..len).map(|i| w[(start + i) % len]));
                    w = GroupWord::new(next).cyclic_reduce().letters;
                    continue 'outer;
                }
            }
        }
        return GroupWord::new(w);
    }
}

/// Consecutive darts, each starting where the previous one ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretePath {
    pub start: usize,
    pub darts: Vec<Dart>,
}

impl DiscretePath {
    pub fn new(map: &RibbonMap, start: usize, darts: Vec<Dart>) -> Result<Self> {
        if start >= map.num_vertices() {
            return Err(Error::IndexOutOfRange {
                index: start,
                len: map.num_vertices(),
            });
        }
        let mut at = start;
        for (i, d) in darts.iter().enumerate() {
            if d.0 >= map.num_darts() {
                return Err(Error::InvalidPath(format!("dart {} does not exist", d.0)));
            }
            let (tail, head) = map.endpoints(*d);
            if tail != at {
                return Err(Error::InvalidPath(format!(
                    "step {i} leaves vertex {tail}, but the path is at vertex {at}"
                )));
            }
            at = head;
        }
        Ok(DiscretePath { start, darts })
    }

    /// Starts at the tail of the first dart.
    pub fn from_darts(map: &RibbonMap, darts: Vec<Dart>) -> Result<Self> {
        let first = darts
            .first()
            .ok_or_else(|| Error::InvalidPath("empty path needs an explicit start vertex".into()))?;
        if first.0 >= map.num_darts() {
            return Err(Error::InvalidPath(format!("dart {} does not exist", first.0)));
        }
        DiscretePath::new(map, map.vertex_of(*first), darts)
    }

    pub fn constant(start: usize) -> Self {
        DiscretePath { start, darts: Vec::new() }
    }

    pub fn end(&self, map: &RibbonMap) -> usize {
        self.darts
            .last()
            .map_or(self.start, |&d| map.vertex_of(d.reversed()))
    }

    pub fn is_loop(&self, map: &RibbonMap) -> bool {
        self.end(map) == self.start
    }

    pub fn inverse(&self, map: &RibbonMap) -> DiscretePath {
        DiscretePath {
            start: self.end(map),
            darts: self.darts.iter().rev().map(|d| d.reversed()).collect(),
        }
    }

    pub fn then(&self, map: &RibbonMap, other: &DiscretePath) -> Result<DiscretePath> {
        if self.end(map) != other.start {
            return Err(Error::EndpointMismatch(format!(
                "first path ends at vertex {}, second starts at vertex {}",
                self.end(map),
                other.start
            )));
        }
        let mut darts = self.darts.clone();
        darts.extend_from_slice(&other.darts);
        Ok(DiscretePath { start: self.start, darts })
    }
}

/// Whether `p1` and `p2`, with common endpoints, are homotopic: the loop
/// `p1 · p̄2` is a product of conjugates of faces.
pub fn homotopic(map: &RibbonMap, v0: usize, p1: &DiscretePath, p2: &DiscretePath) -> Result<bool> {
    if p1.start != p2.start || p1.end(map) != p2.end(map) {
        return Err(Error::EndpointMismatch(format!(
            "paths run {}→{} and {}→{}",
            p1.start,
            p1.end(map),
            p2.start,
            p2.end(map)
        )));
    }
    let pres = pi1_presentation(map, v0)?;
    let tree = spanning_tree(map, v0)?;
    let lp = p1.then(map, &p2.inverse(map))?;
    is_trivial_word(&tree.project(&lp.darts), &pres)
}
