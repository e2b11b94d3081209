//! Classification of the surface filled by a ribbon map.
//!
//! The pipeline first deletes edges that separate two distinct faces until a
//! single face is left, then contracts non-loop edges until a single vertex
//! is left. The remaining map is a polygon with sides glued in pairs; its
//! boundary word is brought to the normal form `x1 y1 X1 Y1 … xg yg Xg Yg`
//! by cut-and-glue rewriting. Every move preserves the Euler characteristic,
//! and every move is recorded so the whole run can be replayed.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{standard_labels, Dart, RibbonMap};
use crate::surface::{self, face_of_darts, face_successor, petal};
use crate::word::{inverse_of, word_to_map, PolygonWord, SignedLabel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rename {
    pub from: String,
    pub to: String,
    /// The new label names the old one traversed backwards.
    pub inverted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    DeleteEdge {
        label: String,
    },
    ContractEdge {
        label: String,
    },
    Cancel {
        label: String,
    },
    /// See [`PolygonWord::cut_glue`].
    CutGlue {
        new_label: String,
        old_label: String,
        start: usize,
        len: usize,
    },
    /// Final rotation and renaming into the standard labels.
    Canonicalize {
        rotate: usize,
        renames: Vec<Rename>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the trace from `map`. The word stage starts at the first word
    /// move, from the polygon word of the map at that point.
    pub fn replay(&self, map: &RibbonMap) -> Result<Replayed> {
        Replayer::new(map, false).run(self)
    }

    /// Replays word moves only.
    pub fn replay_word(&self, word: &PolygonWord) -> Result<PolygonWord> {
        let mut r = Replayer::new(&RibbonMap::sphere(), false);
        r.word = Some(word.clone());
        r.run(self)?
            .word
            .ok_or_else(|| Error::InternalInvariantViolation("word replay lost its word".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replayed {
    pub map: RibbonMap,
    pub word: Option<PolygonWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalWord {
    Sphere,
    Polygon(PolygonWord),
}

impl CanonicalWord {
    pub fn len(&self) -> usize {
        match self {
            CanonicalWord::Sphere => 0,
            CanonicalWord::Polygon(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn word(&self) -> Option<&PolygonWord> {
        match self {
            CanonicalWord::Sphere => None,
            CanonicalWord::Polygon(w) => Some(w),
        }
    }
}

impl std::fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CanonicalWord::Sphere => f.write_str("S0"),
            CanonicalWord::Polygon(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub genus: usize,
    pub canonical_word: CanonicalWord,
    pub trace: MoveTrace,
}

/// Deletes edge `label`, whose two darts must lie in different faces.
pub fn delete_edge(map: &RibbonMap, label: &str) -> Result<RibbonMap> {
    let k = map.edge_index(label)?;
    let faces = face_of_darts(map);
    if faces[2 * k] == faces[2 * k + 1] {
        return Err(Error::PreconditionViolation(format!(
            "both sides of `{label}` lie in the same face"
        )));
    }
    map.without_edge(k, map.rotations())
}

/// Deletes the first edge (by dart index) that separates two faces, merging
/// them. `None` when every edge has the same face on both sides.
pub fn delete_face_merging_edge(map: &RibbonMap) -> Result<Option<(RibbonMap, String)>> {
    if map.num_edges() == 0 {
        return Ok(None);
    }
    let faces = face_of_darts(map);
    let Some(k) = (0..map.num_edges()).find(|&k| faces[2 * k] != faces[2 * k + 1]) else {
        return Ok(None);
    };
    let label = map.label(k).to_string();
    Ok(Some((map.without_edge(k, map.rotations())?, label)))
}

/// Merges the two endpoints of a non-loop edge. At the tail, the edge's dart
/// is replaced by the star of the head read from just after the reversed
/// dart.
pub fn contract_edge(map: &RibbonMap, label: &str) -> Result<RibbonMap> {
    let k = map.edge_index(label)?;
    let e = Dart::forward(k);
    let (u, w) = map.endpoints(e);
    if u == w {
        return Err(Error::LoopNotContractible(label.to_string()));
    }
    let after = |d: Dart| -> Vec<Dart> {
        let mut out = Vec::new();
        let mut x = map.sigma(d);
        while x != d {
            out.push(x);
            x = map.sigma(x);
        }
        out
    };
    let mut merged = after(e);
    merged.extend(after(e.reversed()));
    let mut rotations = map.rotations();
    rotations[u] = merged;
    rotations.remove(w);
    map.without_edge(k, rotations)
}

/// Deletes face-separating edges, then contracts non-loop edges.
pub fn reduce_to_one_vertex_one_face(map: &RibbonMap) -> Result<(RibbonMap, MoveTrace)> {
    let mut trace = MoveTrace::default();
    let mut current = map.clone();
    while let Some((next, label)) = delete_face_merging_edge(&current)? {
        current = next;
        trace.moves.push(Move::DeleteEdge { label });
    }
    while current.num_vertices() > 1 {
        let k = (0..current.num_edges())
            .find(|&k| !current.is_loop(k))
            .ok_or_else(|| {
                Error::InternalInvariantViolation("several vertices but only loops".into())
            })?;
        let label = current.label(k).to_string();
        current = contract_edge(&current, &label)?;
        trace.moves.push(Move::ContractEdge { label });
    }
    Ok((current, trace))
}

/// Boundary word of the single face of a one-vertex one-face map, read from
/// dart 0.
pub fn polygon_word(map: &RibbonMap) -> Result<PolygonWord> {
    if map.num_edges() == 0 {
        return Err(Error::PreconditionViolation("map has no edges".into()));
    }
    let faces = surface::trace_faces(map)?;
    if map.num_vertices() != 1 || faces.len() != 1 {
        return Err(Error::PreconditionViolation(format!(
            "polygon word needs one vertex and one face, map has V={} F={}",
            map.num_vertices(),
            faces.len()
        )));
    }
    Ok(faces[0].word(map))
}

struct FreshNames {
    used: HashSet<String>,
    next: usize,
}

impl FreshNames {
    fn new(word: &PolygonWord) -> Self {
        FreshNames {
            used: word.labels().into_iter().collect(),
            next: 1,
        }
    }

    fn take(&mut self) -> String {
        loop {
            let name = format!("t{}", self.next);
            self.next += 1;
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }
}

fn oracle_chi(word: &PolygonWord) -> Result<i64> {
    Ok(surface::euler_characteristic(&word_to_map(word)?))
}

/// Rewrites a polygon word into the standard form `a b A B c d C D …`.
///
/// Adjacent inverse pairs are cancelled first; while the quotient has more
/// than one vertex class, a cut-and-glue move removes one corner from the
/// smallest class. With a single vertex class every letter is linked with
/// another, and each linked pair is gathered into a contiguous `x y x̄ ȳ`
/// block by two cut-and-glue moves that only rearrange letters outside
/// existing blocks. Every intermediate word is checked against the Euler
/// characteristic of the glued map.
pub fn normalize(word: &PolygonWord) -> Result<(PolygonWord, MoveTrace)> {
    word.validate()?;
    let chi = oracle_chi(word)?;
    let mut trace = MoveTrace::default();
    let mut w = word.clone();
    let mut fresh = FreshNames::new(word);
    let check = |w: &PolygonWord| -> Result<()> {
        let got = oracle_chi(w)?;
        if got != chi {
            return Err(Error::InternalInvariantViolation(format!(
                "rewriting changed χ from {chi} to {got} at `{w}`"
            )));
        }
        Ok(())
    };

    let budget = 4 * word.len() * word.len() + 16;
    let mut steps = 0;
    loop {
        while let Some(i) = w.adjacent_inverse_pair() {
            let label = w.letters()[i].label.clone();
            w = w.cancel_at(i)?;
            check(&w)?;
            trace.moves.push(Move::Cancel { label });
        }
        if w.is_empty() {
            return Ok((w, trace));
        }
        let (count, classes) = w.vertex_classes();
        if count == 1 {
            break;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::InternalInvariantViolation(
                "vertex reduction did not terminate".into(),
            ));
        }
        let n = w.len();
        let mut sizes = vec![0usize; count];
        for &c in &classes {
            sizes[c] += 1;
        }
        let target = (0..count).min_by_key(|&c| (sizes[c], c)).expect("count > 1");
        let corner = (0..n)
            .find(|&i| classes[i] == target && classes[(i + 1) % n] != target)
            .ok_or_else(|| Error::InternalInvariantViolation("no corner to move".into()))?;
        let before = (corner + n - 1) % n;
        let old_label = w.letters()[before].label.clone();
        let new_label = fresh.take();
        w = w.cut_glue(before, 2, &old_label, &new_label)?;
        check(&w)?;
        trace.moves.push(Move::CutGlue {
            new_label,
            old_label,
            start: before,
            len: 2,
        });
    }

    let total = w.labels().len();
    let mut gathered: HashSet<String> = HashSet::new();
    let mut block_starts: Vec<SignedLabel> = Vec::new();
    {
        let n = w.len();
        let l = w.letters();
        for i in 0..n {
            let q = |k: usize| &l[(i + k) % n];
            let fresh_pair = !gathered.contains(&q(0).label) && !gathered.contains(&q(1).label);
            if fresh_pair && q(0).label != q(1).label && q(2).is_inverse_of(q(0)) && q(3).is_inverse_of(q(1)) {
                gathered.insert(q(0).label.clone());
                gathered.insert(q(1).label.clone());
                block_starts.push(q(0).clone());
            }
        }
    }
    while gathered.len() < total {
        let n = w.len();
        let partners = w.partners();
        let a_pos = (0..n)
            .find(|&i| !gathered.contains(&w.letters()[i].label))
            .expect("some letter is not gathered");
        let a_bar = partners[a_pos];
        let arc_len = (a_bar + n - a_pos) % n - 1;
        let in_arc = |p: usize| (p + n - a_pos) % n >= 1 && (p + n - a_pos) % n <= arc_len;
        let b_pos = (1..=arc_len)
            .map(|k| (a_pos + k) % n)
            .find(|&p| !in_arc(partners[p]))
            .ok_or_else(|| {
                Error::InternalInvariantViolation(format!(
                    "`{}` is linked with no other label in `{w}`",
                    w.letters()[a_pos]
                ))
            })?;
        let a_label = w.letters()[a_pos].label.clone();
        let b_label = w.letters()[b_pos].label.clone();

        let c = fresh.take();
        w = w.cut_glue((a_pos + 1) % n, arc_len, &b_label, &c)?;
        check(&w)?;
        trace.moves.push(Move::CutGlue {
            new_label: c.clone(),
            old_label: b_label,
            start: (a_pos + 1) % n,
            len: arc_len,
        });

        let pos = |w: &PolygonWord, inverse: bool| {
            w.letters()
                .iter()
                .position(|l| l.label == c && l.inverse == inverse)
                .expect("fresh label present")
        };
        let (pc, pc_bar) = (pos(&w, false), pos(&w, true));
        let len = (pc + n - pc_bar) % n;
        let e = fresh.take();
        w = w.cut_glue(pc_bar, len, &a_label, &e)?;
        check(&w)?;
        trace.moves.push(Move::CutGlue {
            new_label: e.clone(),
            old_label: a_label,
            start: pc_bar,
            len,
        });
        gathered.insert(c);
        gathered.insert(e.clone());
        block_starts.push(SignedLabel::new(e, false));
    }

    let n = w.len();
    let rotate = (0..n)
        .find(|&i| block_starts.contains(&w.letters()[i]))
        .expect("blocks exist");
    let rotated = w.rotated(rotate);
    let names = standard_labels(total);
    let mut renames = Vec::with_capacity(total);
    for (b, chunk) in rotated.letters().chunks(4).enumerate() {
        let ok = chunk.len() == 4
            && chunk[2].is_inverse_of(&chunk[0])
            && chunk[3].is_inverse_of(&chunk[1]);
        if !ok {
            return Err(Error::InternalInvariantViolation(format!(
                "`{rotated}` is not a product of commutator blocks"
            )));
        }
        renames.push(Rename {
            from: chunk[0].label.clone(),
            to: names[2 * b].clone(),
            inverted: chunk[0].inverse,
        });
        renames.push(Rename {
            from: chunk[1].label.clone(),
            to: names[2 * b + 1].clone(),
            inverted: chunk[1].inverse,
        });
    }
    let canonical = apply_renames(&rotated, &renames);
    check(&canonical)?;
    let trivial = rotate == 0 && renames.iter().all(|r| r.from == r.to && !r.inverted);
    if !trivial {
        trace.moves.push(Move::Canonicalize { rotate, renames });
    }
    Ok((canonical, trace))
}

fn rename_letter(l: &SignedLabel, renames: &[Rename]) -> SignedLabel {
    match renames.iter().find(|r| r.from == l.label) {
        Some(r) => SignedLabel::new(r.to.clone(), l.inverse != r.inverted),
        None => l.clone(),
    }
}

fn apply_renames(w: &PolygonWord, renames: &[Rename]) -> PolygonWord {
    PolygonWord::new(w.letters().iter().map(|l| rename_letter(l, renames)).collect())
}

/// Runs the full pipeline. The genus is cross-checked against the Euler
/// characteristic of the input.
pub fn classify(map: &RibbonMap) -> Result<ClassificationResult> {
    let expected = surface::genus(map)?;
    if map.num_edges() == 0 {
        return Ok(ClassificationResult {
            genus: 0,
            canonical_word: CanonicalWord::Sphere,
            trace: MoveTrace::default(),
        });
    }
    let (reduced, mut trace) = reduce_to_one_vertex_one_face(map)?;
    if reduced.num_edges() == 0 {
        if expected != 0 {
            return Err(Error::InternalInvariantViolation(format!(
                "reduced to the sphere but genus is {expected}"
            )));
        }
        return Ok(ClassificationResult {
            genus: 0,
            canonical_word: CanonicalWord::Sphere,
            trace,
        });
    }
    let word = polygon_word(&reduced)?;
    let (canonical, word_trace) = normalize(&word)?;
    trace.moves.extend(word_trace.moves);
    let genus = canonical.len() / 4;
    if genus != expected || canonical.len() % 4 != 0 {
        return Err(Error::InternalInvariantViolation(format!(
            "normal form `{canonical}` disagrees with genus {expected}"
        )));
    }
    let canonical_word = if canonical.is_empty() {
        CanonicalWord::Sphere
    } else {
        CanonicalWord::Polygon(canonical)
    };
    Ok(ClassificationResult {
        genus,
        canonical_word,
        trace,
    })
}

/// Image of every edge of a map, as a path in the standard one-vertex
/// polygon of its surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceHomomorphism {
    pub genus: usize,
    /// Standard labels `a, b, …` of the normal form, `2 * genus` of them.
    pub generators: Vec<String>,
    /// Indexed by edge; the image of the forward dart.
    pub edge_images: Vec<Vec<SignedLabel>>,
}

impl SurfaceHomomorphism {
    pub fn dart_image(&self, d: Dart) -> Vec<SignedLabel> {
        let img = &self.edge_images[d.edge()];
        if d.is_forward() {
            img.clone()
        } else {
            inverse_of(img)
        }
    }
}

/// Follows every edge of `map` through its classification. Deleting an edge
/// reroutes it around its face, contraction and cancellation collapse an
/// edge to a point, and cut-and-glue expresses the glued side through the
/// new diagonal.
pub fn surface_homomorphism(map: &RibbonMap) -> Result<SurfaceHomomorphism> {
    let result = classify(map)?;
    let mut replayer = Replayer::new(map, true);
    let replayed = replayer.run_in_place(&result.trace)?;
    if let (Some(w), Some(c)) = (&replayed.word, result.canonical_word.word()) {
        if w != c {
            return Err(Error::InternalInvariantViolation("replay diverged".into()));
        }
    }
    Ok(SurfaceHomomorphism {
        genus: result.genus,
        generators: standard_labels(2 * result.genus),
        edge_images: replayer.images.unwrap_or_default(),
    })
}

struct Replayer {
    map: RibbonMap,
    word: Option<PolygonWord>,
    images: Option<Vec<Vec<SignedLabel>>>,
}

impl Replayer {
    fn new(map: &RibbonMap, track: bool) -> Self {
        let images = track.then(|| {
            map.labels()
                .iter()
                .map(|l| vec![SignedLabel::new(l.clone(), false)])
                .collect()
        });
        Replayer {
            map: map.clone(),
            word: None,
            images,
        }
    }

    fn run(mut self, trace: &MoveTrace) -> Result<Replayed> {
        self.run_in_place(trace)
    }

    fn run_in_place(&mut self, trace: &MoveTrace) -> Result<Replayed> {
        for mv in &trace.moves {
            self.step(mv)?;
        }
        if self.word.is_none()
            && self.map.num_edges() > 0
            && self.map.num_vertices() == 1
            && surface::face_count(&self.map) == 1
        {
            self.word = Some(polygon_word(&self.map)?);
        }
        Ok(Replayed {
            map: self.map.clone(),
            word: self.word.clone(),
        })
    }

    fn substitute(&mut self, label: &str, replacement: &[SignedLabel]) {
        let Some(images) = self.images.as_mut() else {
            return;
        };
        let inverse = inverse_of(replacement);
        for img in images.iter_mut() {
            let mut out: Vec<SignedLabel> = Vec::with_capacity(img.len());
            for l in img.iter() {
                let piece: &[SignedLabel] = if l.label != label {
                    std::slice::from_ref(l)
                } else if l.inverse {
                    &inverse
                } else {
                    replacement
                };
                for p in piece {
                    if out.last().is_some_and(|q| q.is_inverse_of(p)) {
                        out.pop();
                    } else {
                        out.push(p.clone());
                    }
                }
            }
            *img = out;
        }
    }

    fn word_mut(&mut self) -> Result<&mut PolygonWord> {
        if self.word.is_none() {
            self.word = Some(polygon_word(&self.map)?);
        }
        Ok(self.word.as_mut().expect("just set"))
    }

    fn step(&mut self, mv: &Move) -> Result<()> {
        match mv {
            Move::DeleteEdge { label } => {
                if self.images.is_some() {
                    let k = self.map.edge_index(label)?;
                    let e = Dart::forward(k);
                    let mut rest = Vec::new();
                    let mut d = face_successor(&self.map, e);
                    while d != e {
                        rest.push(SignedLabel::of_dart(&self.map, d));
                        d = face_successor(&self.map, d);
                    }
                    self.substitute(label, &inverse_of(&rest));
                }
                self.map = delete_edge(&self.map, label)?;
            }
            Move::ContractEdge { label } => {
                self.substitute(label, &[]);
                self.map = contract_edge(&self.map, label)?;
            }
            Move::Cancel { label } => {
                let w = self.word_mut()?;
                let i = w
                    .adjacent_inverse_pair()
                    .filter(|&i| w.letters()[i].label == *label)
                    .or_else(|| {
                        (0..w.len()).find(|&i| {
                            w.letters()[i].label == *label
                                && w.letters()[i].is_inverse_of(&w.letters()[(i + 1) % w.len()])
                        })
                    })
                    .ok_or_else(|| {
                        Error::PreconditionViolation(format!("`{label}` cannot be cancelled"))
                    })?;
                *w = w.cancel_at(i)?;
                self.substitute(label, &[]);
            }
            Move::CutGlue {
                new_label,
                old_label,
                start,
                len,
            } => {
                let w = self.word_mut()?.clone();
                let n = w.len();
                let arc: Vec<SignedLabel> =
                    (0..*len).map(|k| w.letters()[(start + k) % n].clone()).collect();
                let i = arc
                    .iter()
                    .position(|l| l.label == *old_label)
                    .ok_or_else(|| Error::PreconditionViolation("glue label not in cut".into()))?;
                let mut expr: Vec<SignedLabel> = arc[i + 1..].to_vec();
                expr.push(SignedLabel::new(new_label.clone(), false));
                expr.extend_from_slice(&arc[..i]);
                // The glued occurrence equals the inverse of `expr`.
                let replacement = if arc[i].inverse { expr } else { inverse_of(&expr) };
                self.word = Some(w.cut_glue(*start, *len, old_label, new_label)?);
                self.substitute(old_label, &replacement);
            }
            Move::Canonicalize { rotate, renames } => {
                let w = self.word_mut()?.rotated(*rotate);
                self.word = Some(apply_renames(&w, renames));
                if let Some(images) = self.images.as_mut() {
                    for img in images.iter_mut() {
                        *img = img.iter().map(|l| rename_letter(l, renames)).collect();
                    }
                }
            }
        }
        Ok(())
    }
}

/// A random connected map of genus `g`: `k` random inverse reduction moves
/// applied to the petal graph. Each move either inserts an edge across a
/// face, splitting it in two, or splits a vertex in two joined by a new edge.
pub fn random_filling_map(g: usize, k: usize, seed: u64) -> RibbonMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = petal(g);
    let mut taken: HashSet<String> = map.labels().iter().cloned().collect();
    let mut counter = 0;
    for _ in 0..k {
        let label = loop {
            counter += 1;
            let l = format!("e{counter}");
            if taken.insert(l.clone()) {
                break l;
            }
        };
        map = if rng.gen_bool(0.5) {
            insert_edge(&map, label, &mut rng)
        } else {
            split_vertex(&map, label, &mut rng)
        };
    }
    map
}

fn insert_after(rotations: &mut [Vec<Dart>], after: Dart, new: Dart) {
    for rot in rotations.iter_mut() {
        if let Some(p) = rot.iter().position(|&d| d == after) {
            rot.insert(p + 1, new);
            return;
        }
    }
}

fn insert_edge(map: &RibbonMap, label: String, rng: &mut ChaCha8Rng) -> RibbonMap {
    let m = map.num_edges();
    let (fwd, bwd) = (Dart::forward(m), Dart::backward(m));
    let mut labels = map.labels().to_vec();
    labels.push(label);
    let mut rotations = map.rotations();
    match surface::trace_faces(map) {
        Err(_) => rotations[0] = vec![fwd, bwd],
        Ok(faces) => {
            let face = &faces[rng.gen_range(0..faces.len())];
            let p = face.darts[rng.gen_range(0..face.len())];
            let q = face.darts[rng.gen_range(0..face.len())];
            insert_after(&mut rotations, p.reversed(), fwd);
            insert_after(&mut rotations, q.reversed(), bwd);
        }
    }
    RibbonMap::from_dart_rotations(labels, rotations).expect("edge insertion keeps the map valid")
}

fn split_vertex(map: &RibbonMap, label: String, rng: &mut ChaCha8Rng) -> RibbonMap {
    let m = map.num_edges();
    let (fwd, bwd) = (Dart::forward(m), Dart::backward(m));
    let mut labels = map.labels().to_vec();
    labels.push(label);
    let mut rotations = map.rotations();
    let v = rng.gen_range(0..rotations.len());
    let mut rot = std::mem::take(&mut rotations[v]);
    let d = rot.len();
    if d > 0 {
        rot.rotate_left(rng.gen_range(0..d));
    }
    let arc_len = rng.gen_range(0..=d);
    let arc: Vec<Dart> = rot.drain(..arc_len).collect();
    rot.insert(0, fwd);
    let mut other = vec![bwd];
    other.extend(arc);
    rotations[v] = rot;
    rotations.push(other);
    RibbonMap::from_dart_rotations(labels, rotations).expect("vertex split keeps the map valid")
}
