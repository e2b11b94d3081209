//! Signed-label words and the cyclic boundary words of gluing polygons.
//!
//! Text syntax, shared by polygon words, paths and group words: with no
//! whitespace every character is a letter, lowercase for a label and
//! uppercase for its inverse (`abAB`). With whitespace, tokens are labels and
//! a trailing `'` inverts (`a1 b1 a1' b1'`). A single uppercase letter that
//! is not itself a known label always means the inverse of its lowercase.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::map::{is_valid_label, Dart, RibbonMap};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLabel {
    pub label: String,
    pub inverse: bool,
}

impl SignedLabel {
    pub fn new(label: impl Into<String>, inverse: bool) -> Self {
        SignedLabel {
            label: label.into(),
            inverse,
        }
    }

    pub fn of_dart(map: &RibbonMap, d: Dart) -> Self {
        SignedLabel::new(map.label(d.edge()), !d.is_forward())
    }

    pub fn inv(&self) -> Self {
        SignedLabel::new(self.label.clone(), !self.inverse)
    }

    pub fn is_inverse_of(&self, other: &SignedLabel) -> bool {
        self.label == other.label && self.inverse != other.inverse
    }
}

impl fmt::Display for SignedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.inverse {
            return f.write_str(&self.label);
        }
        let mut chars = self.label.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_lowercase() => write!(f, "{}", c.to_ascii_uppercase()),
            _ => write!(f, "{}'", self.label),
        }
    }
}

/// Inverse of a letter sequence read as a path or group element.
pub fn inverse_of(letters: &[SignedLabel]) -> Vec<SignedLabel> {
    letters.iter().rev().map(SignedLabel::inv).collect()
}

/// Parses a word in the shared text syntax. `known` lists labels that take
/// precedence when an uppercase letter could be read either way.
pub fn parse_letters(text: &str, known: &[String]) -> Result<Vec<SignedLabel>> {
    let bad = |reason: &str| Error::BadWord {
        word: text.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(Vec::new());
    }
    let is_known = |l: &str| known.iter().any(|k| k == l);
    let resolve = |tok: &str, inverse: bool| -> Result<SignedLabel> {
        if !is_valid_label(tok) {
            return Err(bad(&format!("`{tok}` is not a label")));
        }
        let mut cs = tok.chars();
        if let (Some(c), None) = (cs.next(), cs.next()) {
            if c.is_ascii_uppercase() && !is_known(tok) {
                return Ok(SignedLabel::new(c.to_ascii_lowercase().to_string(), !inverse));
            }
        }
        Ok(SignedLabel::new(tok, inverse))
    };
    let mut out = Vec::new();
    if trimmed.contains(char::is_whitespace) {
        for tok in trimmed.split_whitespace() {
            let primes = tok.len() - tok.trim_end_matches('\'').len();
            let base = tok.trim_end_matches('\'');
            out.push(resolve(base, primes % 2 == 1)?);
        }
        return Ok(out);
    }
    let chars: Vec<char> = trimmed.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if !c.is_ascii_alphabetic() {
            return Err(bad(&format!(
                "unexpected `{c}`; separate multi-character labels with spaces"
            )));
        }
        let mut primes = 0;
        while i + 1 < chars.len() && chars[i + 1] == '\'' {
            primes += 1;
            i += 1;
        }
        out.push(resolve(&c.to_string(), primes % 2 == 1)?);
        i += 1;
    }
    Ok(out)
}

pub fn format_letters(letters: &[SignedLabel]) -> String {
    letters
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Cyclic boundary word of a polygon whose sides are glued in pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolygonWord {
    letters: Vec<SignedLabel>,
}

impl Serialize for PolygonWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for PolygonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

impl PolygonWord {
    /// Wraps letters without checking them; see [`PolygonWord::validate`].
    pub fn new(letters: Vec<SignedLabel>) -> Self {
        PolygonWord { letters }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let w = PolygonWord::new(parse_letters(text, &[])?);
        w.validate()?;
        Ok(w)
    }

    pub fn letters(&self) -> &[SignedLabel] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Every label must occur exactly twice, once with each sign.
    pub fn validate(&self) -> Result<()> {
        let mut seen: HashMap<&str, [bool; 2]> = HashMap::new();
        for l in &self.letters {
            if !is_valid_label(&l.label) {
                return Err(Error::MalformedWord(format!("invalid label `{}`", l.label)));
            }
            let slot = &mut seen.entry(l.label.as_str()).or_default()[l.inverse as usize];
            if *slot {
                return Err(Error::MalformedWord(format!(
                    "`{l}` occurs twice; only orientable gluings are supported"
                )));
            }
            *slot = true;
        }
        if let Some((l, _)) = seen.iter().find(|(_, s)| !(s[0] && s[1])) {
            return Err(Error::MalformedWord(format!("`{l}` occurs only once")));
        }
        Ok(())
    }

    /// Labels in order of first occurrence.
    pub fn labels(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.letters
            .iter()
            .filter(|l| seen.insert(l.label.as_str()))
            .map(|l| l.label.clone())
            .collect()
    }

    /// Position of the partner occurrence of every letter.
    pub fn partners(&self) -> Vec<usize> {
        let mut first: HashMap<&str, usize> = HashMap::new();
        let mut out = vec![usize::MAX; self.letters.len()];
        for (i, l) in self.letters.iter().enumerate() {
            if let Some(j) = first.remove(l.label.as_str()) {
                out[i] = j;
                out[j] = i;
            } else {
                first.insert(&l.label, i);
            }
        }
        out
    }

    pub fn rotated(&self, by: usize) -> PolygonWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = by % letters.len();
            letters.rotate_left(k);
        }
        PolygonWord { letters }
    }

    /// Equality up to cyclic rotation.
    pub fn cyclic_eq(&self, other: &PolygonWord) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|k| {
            (0..self.len()).all(|i| self.letters[(i + k) % self.len()] == other.letters[i])
        })
    }

    /// Number of vertex classes of the quotient surface. Corner `i` sits
    /// before letter `i`; a letter at `i` runs from corner `i` to `i + 1`, and
    /// its partner runs the other way, which identifies the corners crosswise.
    pub fn vertex_classes(&self) -> (usize, Vec<usize>) {
        let n = self.letters.len();
        if n == 0 {
            return (1, Vec::new());
        }
        let partners = self.partners();
        let mut uf = UnionFind::new(n);
        for (i, &j) in partners.iter().enumerate() {
            if i < j {
                uf.union(i, (j + 1) % n);
                uf.union((i + 1) % n, j);
            }
        }
        let mut ids = HashMap::new();
        let classes: Vec<usize> = (0..n)
            .map(|c| {
                let root = uf.find(c);
                let next = ids.len();
                *ids.entry(root).or_insert(next)
            })
            .collect();
        (ids.len(), classes)
    }

    /// Euler characteristic of the quotient surface from the corner count.
    pub fn euler_characteristic(&self) -> i64 {
        let (v, _) = self.vertex_classes();
        if self.is_empty() {
            return 2;
        }
        v as i64 - (self.len() / 2) as i64 + 1
    }

    /// Index `i` such that letters `i` and `i + 1` (cyclically) cancel.
    pub fn adjacent_inverse_pair(&self) -> Option<usize> {
        let n = self.letters.len();
        if n < 2 {
            return None;
        }
        (0..n).find(|&i| self.letters[i].is_inverse_of(&self.letters[(i + 1) % n]))
    }

    /// Removes the cancelling pair starting at `i`.
    pub fn cancel_at(&self, i: usize) -> Result<PolygonWord> {
        let n = self.letters.len();
        if i >= n || n < 2 || !self.letters[i].is_inverse_of(&self.letters[(i + 1) % n]) {
            return Err(Error::PreconditionViolation(format!(
                "no cancelling pair at position {i} of `{self}`"
            )));
        }
        let j = (i + 1) % n;
        let letters = self
            .letters
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, l)| l.clone())
            .collect();
        Ok(PolygonWord { letters })
    }

    /// Cut along a fresh diagonal `fresh` that splits off the arc of `len`
    /// letters starting at `start` (cyclically), then glue the two pieces back
    /// along `glue`, which must have one occurrence inside the arc and one
    /// outside. Writing the arc as `P1 x P2` and the rest as `Q1 x̄ Q2`, the
    /// result is `Q1 P2 c P1 Q2 c̄` with `c = fresh`.
    pub fn cut_glue(&self, start: usize, len: usize, glue: &str, fresh: &str) -> Result<PolygonWord> {
        let n = self.letters.len();
        if n == 0 || start >= n || len == 0 || len >= n {
            return Err(Error::PreconditionViolation(format!(
                "bad cut ({start}, {len}) on a word of length {n}"
            )));
        }
        if !is_valid_label(fresh) || self.letters.iter().any(|l| l.label == fresh) {
            return Err(Error::PreconditionViolation(format!("`{fresh}` is not fresh")));
        }
        let at = |k: usize| &self.letters[(start + k) % n];
        let arc: Vec<&SignedLabel> = (0..len).map(at).collect();
        let rest: Vec<&SignedLabel> = (len..n).map(at).collect();
        let in_arc: Vec<usize> = (0..len).filter(|&k| arc[k].label == glue).collect();
        let in_rest: Vec<usize> = (0..rest.len()).filter(|&k| rest[k].label == glue).collect();
        let (&[i], &[j]) = (in_arc.as_slice(), in_rest.as_slice()) else {
            return Err(Error::PreconditionViolation(format!(
                "`{glue}` must occur once inside and once outside the cut"
            )));
        };
        let c = SignedLabel::new(fresh, false);
        let mut letters = Vec::with_capacity(n);
        letters.extend(rest[..j].iter().map(|&l| l.clone()));
        letters.extend(arc[i + 1..].iter().map(|&l| l.clone()));
        letters.push(c.clone());
        letters.extend(arc[..i].iter().map(|&l| l.clone()));
        letters.extend(rest[j + 1..].iter().map(|&l| l.clone()));
        letters.push(c.inv());
        Ok(PolygonWord { letters })
    }

    /// Cyclic interleaving `x … y … x̄ … ȳ` (in either orientation of `y`).
    pub fn linked(&self, x: &str, y: &str) -> bool {
        let pos = |l: &str| -> Vec<usize> {
            self.letters
                .iter()
                .enumerate()
                .filter(|(_, s)| s.label == l)
                .map(|(i, _)| i)
                .collect()
        };
        let (px, py) = (pos(x), pos(y));
        if px.len() != 2 || py.len() != 2 || x == y {
            return false;
        }
        let inside = |p: usize| px[0] < p && p < px[1];
        inside(py[0]) != inside(py[1])
    }

    /// Whether every label is linked with at least one other label.
    pub fn every_label_linked(&self) -> bool {
        let labels = self.labels();
        labels
            .iter()
            .all(|x| labels.iter().any(|y| x != y && self.linked(x, y)))
    }
}

/// The ribbon map obtained by gluing the polygon: one face whose boundary is
/// the word, vertices from the corner identifications. Rotation is set so that
/// `σ(ι(w_i)) = w_{i+1}`.
pub fn word_to_map(word: &PolygonWord) -> Result<RibbonMap> {
    word.validate()?;
    if word.is_empty() {
        return Ok(RibbonMap::sphere());
    }
    let labels = word.labels();
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let dart = |l: &SignedLabel| {
        let k = index[l.label.as_str()];
        if l.inverse {
            Dart::backward(k)
        } else {
            Dart::forward(k)
        }
    };
    let darts: Vec<Dart> = word.letters().iter().map(dart).collect();
    let n = darts.len();
    let mut sigma = vec![Dart(0); n];
    for i in 0..n {
        sigma[darts[i].reversed().0] = darts[(i + 1) % n];
    }
    let mut seen = vec![false; n];
    let mut rotations = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut rot = Vec::new();
        let mut d = Dart(s);
        while !seen[d.0] {
            seen[d.0] = true;
            rot.push(d);
            d = sigma[d.0];
        }
        rotations.push(rot);
    }
    RibbonMap::from_dart_rotations(labels, rotations)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
