//! Dart-based ribbon graphs.
//!
//! A map with `m` geometric edges has darts `0..2m`. Dart `2k` is edge `k`
//! traversed forward (token `label+`), dart `2k + 1` the same edge traversed
//! backward (`label-`). The involution pairing the two is therefore implicit
//! in the dart index and cannot be violated. The only stored structure is the
//! rotation `σ`, a permutation of darts whose cycles are the cyclically
//! ordered stars of the vertices.
//!
//! Vertices are not stored. Vertex `i` is the `i`-th σ-cycle when cycles are
//! ordered by their smallest dart, and its star is listed starting from that
//! smallest dart. The only map allowed to carry a vertex without darts is the
//! edgeless one-vertex map standing for the sphere.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    #[inline]
    pub fn forward(edge: usize) -> Self {
        Dart(2 * edge)
    }

    #[inline]
    pub fn backward(edge: usize) -> Self {
        Dart(2 * edge + 1)
    }

    #[inline]
    pub fn edge(self) -> usize {
        self.0 / 2
    }

    #[inline]
    pub fn is_forward(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// The same edge traversed the other way (the involution ι).
    #[inline]
    pub fn reversed(self) -> Self {
        Dart(self.0 ^ 1)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A dart named by its edge label and direction, e.g. `a+` or `b-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DartRef {
    pub label: String,
    pub sign: Sign,
}

impl DartRef {
    pub fn new(label: impl Into<String>, sign: Sign) -> Self {
        DartRef {
            label: label.into(),
            sign,
        }
    }
}

impl fmt::Display for DartRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{}{}", self.label, s)
    }
}

impl FromStr for DartRef {
    type Err = ();

    fn from_str(token: &str) -> std::result::Result<Self, ()> {
        let (label, sign) = if let Some(l) = token.strip_suffix('+') {
            (l, Sign::Plus)
        } else if let Some(l) = token.strip_suffix('-') {
            (l, Sign::Minus)
        } else if let Some(l) = token.strip_suffix('\u{2212}') {
            (l, Sign::Minus)
        } else {
            return Err(());
        };
        if !is_valid_label(label) {
            return Err(());
        }
        Ok(DartRef::new(label, sign))
    }
}

/// Labels match `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `count` distinct labels in the standard naming used for petal graphs and
/// surface groups: single letters `a, b, c, ...` while they last, otherwise
/// `a1, b1, a2, b2, ...` (and `x1, x2, ...` for odd counts).
pub fn standard_labels(count: usize) -> Vec<String> {
    if count <= 26 {
        return (0..count)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
    }
    (0..count)
        .map(|i| {
            let block = i / 2 + 1;
            if i % 2 == 0 {
                format!("a{block}")
            } else {
                format!("b{block}")
            }
        })
        .collect()
}

/// Outcome of validating a candidate map description without building it.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<(String, String)>,
}

impl ValidationReport {
    fn from_errors(errors: &[Error]) -> Self {
        ValidationReport {
            ok: errors.is_empty(),
            issues: errors
                .iter()
                .map(|e| (e.code().to_string(), e.to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonMap {
    labels: Vec<String>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    vertex_of: Vec<usize>,
    stars: Vec<Vec<Dart>>,
    isolated: usize,
}

impl RibbonMap {
    /// The edgeless one-vertex map representing the sphere.
    pub fn sphere() -> Self {
        RibbonMap {
            labels: Vec::new(),
            sigma: Vec::new(),
            sigma_inv: Vec::new(),
            vertex_of: Vec::new(),
            stars: Vec::new(),
            isolated: 1,
        }
    }

    /// Builds a map from edge labels and one token list (`a+`, `b-`, ...)
    /// per vertex, each list giving the star in cyclic successor order.
    pub fn from_rotation_lists<L, T>(labels: &[L], rotations: &[Vec<T>]) -> Result<Self>
    where
        L: AsRef<str>,
        T: AsRef<str>,
    {
        let (errors, parsed) = check_token_lists(labels, rotations);
        if let Some(e) = errors.into_iter().next() {
            return Err(e);
        }
        let (labels, darts) = parsed.expect("no errors implies parsed input");
        Self::from_dart_rotations(labels, darts)
    }

    /// Like [`RibbonMap::from_rotation_lists`] but reports every problem
    /// instead of stopping at the first.
    pub fn validate_rotation_lists<L, T>(labels: &[L], rotations: &[Vec<T>]) -> ValidationReport
    where
        L: AsRef<str>,
        T: AsRef<str>,
    {
        let (errors, _) = check_token_lists(labels, rotations);
        ValidationReport::from_errors(&errors)
    }

    pub fn from_dart_rotations(labels: Vec<String>, rotations: Vec<Vec<Dart>>) -> Result<Self> {
        if let Some(e) = check_darts(&labels, &rotations).into_iter().next() {
            return Err(e);
        }
        Ok(Self::assemble(labels, &rotations))
    }

    // Callers have validated `rotations`.
    fn assemble(labels: Vec<String>, rotations: &[Vec<Dart>]) -> Self {
        let n = 2 * labels.len();
        if n == 0 {
            let mut s = Self::sphere();
            s.labels = labels;
            return s;
        }
        let mut sigma = vec![Dart(usize::MAX); n];
        for rot in rotations {
            for (i, &d) in rot.iter().enumerate() {
                sigma[d.0] = rot[(i + 1) % rot.len()];
            }
        }
        let mut sigma_inv = vec![Dart(0); n];
        for (d, &s) in sigma.iter().enumerate() {
            sigma_inv[s.0] = Dart(d);
        }
        let mut vertex_of = vec![usize::MAX; n];
        let mut stars = Vec::new();
        for start in 0..n {
            if vertex_of[start] != usize::MAX {
                continue;
            }
            let v = stars.len();
            let mut star = Vec::new();
            let mut d = Dart(start);
            loop {
                vertex_of[d.0] = v;
                star.push(d);
                d = sigma[d.0];
                if d.0 == start {
                    break;
                }
            }
            stars.push(star);
        }
        RibbonMap {
            labels,
            sigma,
            sigma_inv,
            vertex_of,
            stars,
            isolated: 0,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, edge: usize) -> &str {
        &self.labels[edge]
    }

    /// Edge index for `label`.
    pub fn edge_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownEdge(label.to_string()))
    }

    pub fn dart_ref(&self, d: Dart) -> DartRef {
        let sign = if d.is_forward() { Sign::Plus } else { Sign::Minus };
        DartRef::new(self.labels[d.edge()].clone(), sign)
    }

    pub fn dart(&self, r: &DartRef) -> Result<Dart> {
        let e = self.edge_index(&r.label)?;
        Ok(match r.sign {
            Sign::Plus => Dart::forward(e),
            Sign::Minus => Dart::backward(e),
        })
    }

    pub fn num_edges(&self) -> usize {
        self.labels.len()
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.stars.len() + self.isolated
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.sigma.len()).map(Dart)
    }

    pub fn is_sphere_point(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d.0]
    }

    #[inline]
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d.0]
    }

    /// The vertex a dart starts from.
    #[inline]
    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vertex_of[d.0]
    }

    /// Tail and head of a dart.
    pub fn endpoints(&self, d: Dart) -> (usize, usize) {
        (self.vertex_of[d.0], self.vertex_of[d.reversed().0])
    }

    pub fn star(&self, vertex: usize) -> Result<&[Dart]> {
        if vertex < self.stars.len() {
            Ok(&self.stars[vertex])
        } else if vertex < self.num_vertices() {
            Ok(&[])
        } else {
            Err(Error::IndexOutOfRange {
                index: vertex,
                len: self.num_vertices(),
            })
        }
    }

    /// Stars of all vertices in vertex order, including empty ones.
    pub fn rotations(&self) -> Vec<Vec<Dart>> {
        let mut out = self.stars.clone();
        out.extend(std::iter::repeat_with(Vec::new).take(self.isolated));
        out
    }

    /// Number of darts at `vertex`; a loop counts twice.
    pub fn degree(&self, vertex: usize) -> Result<usize> {
        self.star(vertex).map(<[Dart]>::len)
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (t, h) = self.endpoints(Dart::forward(edge));
        t == h
    }

    /// Edge refinement: every edge `e` is split at a new degree-2 midpoint
    /// into `e_0` (from the old tail) and `e_1` (to the old head).
    pub fn refine(&self) -> RibbonMap {
        let m = self.num_edges();
        if m == 0 {
            return self.clone();
        }
        let mut labels = Vec::with_capacity(2 * m);
        let mut taken: std::collections::HashSet<String> = self.labels.iter().cloned().collect();
        for l in &self.labels {
            for suffix in ["0", "1"] {
                let mut name = format!("{l}_{suffix}");
                while taken.contains(&name) {
                    name.push('_');
                }
                taken.insert(name.clone());
                labels.push(name);
            }
        }
        // Forward dart of e keeps its slot as e_0+, backward dart becomes e_1-.
        let remap = |d: Dart| {
            let k = d.edge();
            if d.is_forward() {
                Dart::forward(2 * k)
            } else {
                Dart::backward(2 * k + 1)
            }
        };
        let mut rotations: Vec<Vec<Dart>> = self
            .stars
            .iter()
            .map(|s| s.iter().copied().map(remap).collect())
            .collect();
        for k in 0..m {
            rotations.push(vec![Dart::backward(2 * k), Dart::forward(2 * k + 1)]);
        }
        Self::assemble(labels, &rotations)
    }

    /// Same map with edge labels replaced by `labels` (same length).
    pub fn with_labels(&self, labels: Vec<String>) -> Result<RibbonMap> {
        if labels.len() != self.labels.len() {
            return Err(Error::PreconditionViolation(format!(
                "expected {} labels, got {}",
                self.labels.len(),
                labels.len()
            )));
        }
        check_labels(&labels)
            .into_iter()
            .next()
            .map_or(Ok(()), Err)?;
        let mut out = self.clone();
        out.labels = labels;
        Ok(out)
    }

    /// Isomorphic copy with renumbered edges: new edge `j` is old edge
    /// `order[j]`, traversed the other way round when `flip[j]` is set.
    pub fn permuted(&self, order: &[usize], flip: &[bool]) -> Result<RibbonMap> {
        let m = self.num_edges();
        let mut seen = vec![false; m];
        if order.len() != m || flip.len() != m {
            return Err(Error::PreconditionViolation("permutation length".into()));
        }
        for &o in order {
            if o >= m || std::mem::replace(&mut seen[o], true) {
                return Err(Error::PreconditionViolation("not a permutation".into()));
            }
        }
        let mut new_of_old = vec![0; m];
        for (j, &o) in order.iter().enumerate() {
            new_of_old[o] = j;
        }
        let map_dart = |d: Dart| {
            let j = new_of_old[d.edge()];
            let fwd = d.is_forward() != flip[j];
            if fwd {
                Dart::forward(j)
            } else {
                Dart::backward(j)
            }
        };
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        let rotations: Vec<Vec<Dart>> = self
            .stars
            .iter()
            .map(|s| s.iter().copied().map(map_dart).collect())
            .collect();
        if m == 0 {
            return Ok(self.clone());
        }
        Ok(Self::assemble(labels, &rotations))
    }

    /// Removes edge `edge` from the given rotations (in this map's dart
    /// numbering) and renumbers the remaining darts.
    pub(crate) fn without_edge(&self, edge: usize, rotations: Vec<Vec<Dart>>) -> Result<RibbonMap> {
        let mut labels = self.labels.clone();
        labels.remove(edge);
        let renumber = |d: Dart| {
            if d.edge() > edge {
                Dart(d.0 - 2)
            } else {
                d
            }
        };
        let mut rots: Vec<Vec<Dart>> = rotations
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .filter(|d| d.edge() != edge)
                    .map(renumber)
                    .collect::<Vec<_>>()
            })
            .collect();
        if labels.is_empty() {
            let components = rots.len();
            if components != 1 {
                return Err(Error::InternalInvariantViolation(format!(
                    "removing the last edge left {components} vertices"
                )));
            }
            return Ok(RibbonMap::sphere());
        }
        if let Some(i) = rots.iter().position(Vec::is_empty) {
            return Err(Error::InternalInvariantViolation(format!(
                "removing edge left vertex {i} isolated"
            )));
        }
        rots.retain(|r| !r.is_empty());
        if let Some(e) = check_darts(&labels, &rots).into_iter().next() {
            return Err(Error::InternalInvariantViolation(e.to_string()));
        }
        Ok(Self::assemble(labels, &rots))
    }
}

fn check_labels(labels: &[String]) -> Vec<Error> {
    let mut errors = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !is_valid_label(l) {
            errors.push(Error::InvalidLabel(l.clone()));
        } else if !seen.insert(l.as_str()) {
            errors.push(Error::DuplicateLabel(l.clone()));
        }
    }
    errors
}

type Parsed = (Vec<String>, Vec<Vec<Dart>>);

fn check_token_lists<L, T>(labels: &[L], rotations: &[Vec<T>]) -> (Vec<Error>, Option<Parsed>)
where
    L: AsRef<str>,
    T: AsRef<str>,
{
    let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
    let mut errors = check_labels(&labels);
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .rev()
        .collect();
    let mut seen: HashMap<Dart, ()> = HashMap::new();
    let mut darts = Vec::with_capacity(rotations.len());
    for (v, rot) in rotations.iter().enumerate() {
        let mut out = Vec::with_capacity(rot.len());
        for (p, tok) in rot.iter().enumerate() {
            let tok = tok.as_ref();
            let Ok(r) = tok.parse::<DartRef>() else {
                errors.push(Error::BadToken {
                    token: tok.to_string(),
                    vertex: v,
                    position: p,
                });
                continue;
            };
            let Some(&e) = index.get(r.label.as_str()) else {
                errors.push(Error::UnknownLabel {
                    label: r.label,
                    vertex: v,
                    position: p,
                });
                continue;
            };
            let d = match r.sign {
                Sign::Plus => Dart::forward(e),
                Sign::Minus => Dart::backward(e),
            };
            if seen.insert(d, ()).is_some() {
                errors.push(Error::DuplicateDart {
                    token: tok.to_string(),
                    vertex: v,
                    position: p,
                });
                continue;
            }
            out.push(d);
        }
        darts.push(out);
    }
    if !errors.is_empty() {
        // Structural checks on a partially parsed input would only repeat
        // the token errors as missing darts.
        let mut tail = check_darts_after_tokens(&labels, &darts, &seen);
        errors.append(&mut tail);
        return (errors, None);
    }
    errors = check_darts(&labels, &darts);
    if errors.is_empty() {
        (errors, Some((labels, darts)))
    } else {
        (errors, None)
    }
}

// Missing-dart reporting for inputs that already have token errors.
fn check_darts_after_tokens(
    labels: &[String],
    _darts: &[Vec<Dart>],
    seen: &HashMap<Dart, ()>,
) -> Vec<Error> {
    let mut errors = Vec::new();
    for (k, l) in labels.iter().enumerate() {
        for (d, s) in [(Dart::forward(k), '+'), (Dart::backward(k), '-')] {
            if !seen.contains_key(&d) {
                errors.push(Error::MissingDart(format!("{l}{s}")));
            }
        }
    }
    errors
}

fn check_darts(labels: &[String], rotations: &[Vec<Dart>]) -> Vec<Error> {
    let mut errors = check_labels(labels);
    let n = 2 * labels.len();
    if rotations.is_empty() {
        errors.push(Error::NoVertices);
        return errors;
    }
    let mut count = vec![0usize; n];
    for (v, rot) in rotations.iter().enumerate() {
        for (p, d) in rot.iter().enumerate() {
            if d.0 >= n {
                errors.push(Error::IndexOutOfRange { index: d.0, len: n });
                continue;
            }
            count[d.0] += 1;
            if count[d.0] == 2 {
                let sign = if d.is_forward() { '+' } else { '-' };
                errors.push(Error::DuplicateDart {
                    token: format!("{}{}", labels[d.edge()], sign),
                    vertex: v,
                    position: p,
                });
            }
        }
    }
    for (i, &c) in count.iter().enumerate() {
        if c == 0 {
            let sign = if i % 2 == 0 { '+' } else { '-' };
            errors.push(Error::MissingDart(format!("{}{}", labels[i / 2], sign)));
        }
    }
    if n == 0 {
        if rotations.len() > 1 {
            errors.push(Error::Disconnected {
                components: rotations.len(),
            });
        }
        return errors;
    }
    for (v, rot) in rotations.iter().enumerate() {
        if rot.is_empty() {
            errors.push(Error::IsolatedVertex(v));
        }
    }
    if !errors.is_empty() {
        return errors;
    }
    let components = count_components(n, rotations);
    if components > 1 {
        errors.push(Error::Disconnected { components });
    }
    errors
}

// Components of the dart set under the group generated by σ and ι.
fn count_components(n: usize, rotations: &[Vec<Dart>]) -> usize {
    let mut sigma = vec![0usize; n];
    for rot in rotations {
        for (i, d) in rot.iter().enumerate() {
            sigma[d.0] = rot[(i + 1) % rot.len()].0;
        }
    }
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(d) = queue.pop_front() {
            for next in [sigma[d], d ^ 1] {
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    components
}
