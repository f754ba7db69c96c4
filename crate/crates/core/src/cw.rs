//! Labeled 2-dimensional CW complexes, cellular group actions and quotients.
//!
//! Edges are directed. A face is attached along a closed edge path written
//! as a word of signed edges: `+e` runs `src → dst`, `-e` runs backwards.
//! Loops, faces of length 1 or 2, and faces that traverse an edge twice are
//! all allowed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::{self, Strategy};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CwError {
    #[error("duplicate {dim}-cell label `{label}`")]
    DuplicateLabel { dim: u8, label: String },
    #[error("edge `{edge}` has dangling endpoint `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("face `{face}` uses unknown edge `{edge}`")]
    UnknownEdge { face: String, edge: String },
    #[error("face `{0}` has an empty boundary word")]
    EmptyBoundary(String),
    #[error("face `{0}` has an open boundary word")]
    OpenBoundary(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("action: {0}")]
    BadAction(String),
    #[error("action element {element} does not align the boundary of face `{face}`")]
    Misaligned { element: usize, face: String },
    #[error("quotient is not a CW complex cell-for-orbit")]
    FixityViolation,
}

/// A signed reference to an edge by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl SignedEdge {
    pub fn new(edge: usize, forward: bool) -> SignedEdge {
        SignedEdge { edge, forward }
    }

    pub fn inverse(self) -> SignedEdge {
        SignedEdge { edge: self.edge, forward: !self.forward }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub label: String,
    pub boundary: Vec<SignedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CWComplex2 {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
}

/// Counts and Euler characteristic of a validated complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
}

fn check_unique<'a>(dim: u8, labels: impl Iterator<Item = &'a str>) -> Result<(), CwError> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(CwError::DuplicateLabel { dim, label: l.to_string() });
        }
    }
    Ok(())
}

impl CWComplex2 {
    /// Builds a complex from labels. Endpoints and boundary edges are
    /// resolved here; closure of boundary words is left to [`validate`].
    pub fn new<V, E, F, S>(vertices: V, edges: E, faces: F) -> Result<CWComplex2, CwError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S, S)>,
        F: IntoIterator<Item = (S, Vec<(S, bool)>)>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        check_unique(0, vertices.iter().map(String::as_str))?;
        let vidx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut out_edges = Vec::new();
        for (label, src, dst) in edges {
            let (label, src, dst): (String, String, String) = (label.into(), src.into(), dst.into());
            let resolve = |v: &String| {
                vidx.get(v.as_str())
                    .copied()
                    .ok_or_else(|| CwError::DanglingEndpoint { edge: label.clone(), vertex: v.clone() })
            };
            let (s, d) = (resolve(&src)?, resolve(&dst)?);
            out_edges.push(Edge { label, src: s, dst: d });
        }
        check_unique(1, out_edges.iter().map(|e| e.label.as_str()))?;
        let eidx: HashMap<&str, usize> = out_edges.iter().enumerate().map(|(i, e)| (e.label.as_str(), i)).collect();
        let mut out_faces = Vec::new();
        for (label, word) in faces {
            let label: String = label.into();
            let mut boundary = Vec::new();
            for (e, forward) in word {
                let e: String = e.into();
                let edge = *eidx
                    .get(e.as_str())
                    .ok_or_else(|| CwError::UnknownEdge { face: label.clone(), edge: e.clone() })?;
                boundary.push(SignedEdge { edge, forward });
            }
            out_faces.push(Face { label, boundary });
        }
        check_unique(2, out_faces.iter().map(|f| f.label.as_str()))?;
        Ok(CWComplex2 { vertices, edges: out_edges, faces: out_faces })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.faces.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    pub fn face_index(&self, label: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.label == label)
    }

    /// Start and end vertex of a signed edge.
    pub fn ends(&self, s: SignedEdge) -> (usize, usize) {
        let e = &self.edges[s.edge];
        if s.forward {
            (e.src, e.dst)
        } else {
            (e.dst, e.src)
        }
    }

    pub fn signed_label(&self, s: SignedEdge) -> String {
        format!("{}{}", if s.forward { '+' } else { '-' }, self.edges[s.edge].label)
    }

    /// Boundary word of a face as signed labels.
    pub fn boundary_labels(&self, face: usize) -> Vec<String> {
        self.faces[face].boundary.iter().map(|&s| self.signed_label(s)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            writeln!(s, "V {v}").unwrap();
        }
        for e in &self.edges {
            writeln!(s, "E {} {} {}", e.label, self.vertices[e.src], self.vertices[e.dst]).unwrap();
        }
        for (i, f) in self.faces.iter().enumerate() {
            writeln!(s, "F {} {}", f.label, self.boundary_labels(i).join(" ")).unwrap();
        }
        s
    }

    /// Parses the line format written by [`CWComplex2::to_text`]. Blank lines
    /// and lines starting with `#` are skipped.
    pub fn from_text(text: &str) -> Result<CWComplex2, CwError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let err = |msg: &str| CwError::Parse { line: n + 1, msg: msg.to_string() };
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "V" if toks.len() == 2 => vertices.push(toks[1].to_string()),
                "E" if toks.len() == 4 => edges.push((toks[1].to_string(), toks[2].to_string(), toks[3].to_string())),
                "F" if toks.len() >= 2 => {
                    let word = toks[2..]
                        .iter()
                        .map(|t| parse_signed(t).ok_or_else(|| err("edge must be prefixed by + or -")))
                        .collect::<Result<Vec<_>, _>>()?;
                    faces.push((toks[1].to_string(), word));
                }
                _ => return Err(err("expected `V <label>`, `E <label> <src> <dst>` or `F <label> <±edge>...`")),
            }
        }
        CWComplex2::new(vertices, edges, faces)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = ComplexJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    label: e.label.clone(),
                    src: self.vertices[e.src].clone(),
                    dst: self.vertices[e.dst].clone(),
                })
                .collect(),
            faces: (0..self.faces.len())
                .map(|i| FaceJson { label: self.faces[i].label.clone(), boundary: self.boundary_labels(i) })
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<CWComplex2, CwError> {
        let doc: ComplexJson =
            serde_json::from_value(value.clone()).map_err(|e| CwError::Parse { line: 0, msg: e.to_string() })?;
        let mut faces = Vec::new();
        for f in doc.faces {
            let word = f
                .boundary
                .iter()
                .map(|t| {
                    parse_signed(t).ok_or_else(|| CwError::Parse { line: 0, msg: format!("bad signed edge `{t}`") })
                })
                .collect::<Result<Vec<_>, _>>()?;
            faces.push((f.label, word));
        }
        CWComplex2::new(doc.vertices, doc.edges.into_iter().map(|e| (e.label, e.src, e.dst)), faces)
    }
}

fn parse_signed(tok: &str) -> Option<(String, bool)> {
    let (sign, rest) = tok.split_at(tok.char_indices().nth(1).map(|(i, _)| i)?);
    match sign {
        "+" => Some((rest.to_string(), true)),
        "-" => Some((rest.to_string(), false)),
        _ => None,
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
    faces: Vec<FaceJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    label: String,
    src: String,
    dst: String,
}

#[derive(Serialize, Deserialize)]
struct FaceJson {
    label: String,
    boundary: Vec<String>,
}

/// Checks every boundary word is a nonempty closed path and labels are unique.
pub fn validate(c: &CWComplex2) -> Result<Certificate, CwError> {
    check_unique(0, c.vertices.iter().map(String::as_str))?;
    check_unique(1, c.edges.iter().map(|e| e.label.as_str()))?;
    check_unique(2, c.faces.iter().map(|f| f.label.as_str()))?;
    for e in &c.edges {
        for v in [e.src, e.dst] {
            if v >= c.vertices.len() {
                return Err(CwError::DanglingEndpoint { edge: e.label.clone(), vertex: v.to_string() });
            }
        }
    }
    for f in &c.faces {
        if f.boundary.is_empty() {
            return Err(CwError::EmptyBoundary(f.label.clone()));
        }
        let n = f.boundary.len();
        for k in 0..n {
            let (_, end) = c.ends(f.boundary[k]);
            let (start, _) = c.ends(f.boundary[(k + 1) % n]);
            if end != start {
                return Err(CwError::OpenBoundary(f.label.clone()));
            }
        }
    }
    Ok(Certificate {
        vertices: c.vertices.len(),
        edges: c.edges.len(),
        faces: c.faces.len(),
        euler_characteristic: c.euler_characteristic(),
    })
}

fn invert_word(w: &[SignedEdge]) -> Vec<SignedEdge> {
    w.iter().rev().map(|s| s.inverse()).collect()
}

/// How `image` matches `target`: the least rotation `r`, trying the
/// unreversed word first, with `image == rotate(target or its inverse, r)`.
pub fn cyclic_alignment(image: &[SignedEdge], target: &[SignedEdge]) -> Option<FaceAlignment> {
    if image.len() != target.len() {
        return None;
    }
    let n = target.len();
    let inv = invert_word(target);
    for (reversed, word) in [(false, target), (true, inv.as_slice())] {
        for r in 0..n {
            if (0..n).all(|k| image[k] == word[(k + r) % n]) {
                return Some(FaceAlignment { rotation: r, reversed });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceAlignment {
    pub rotation: usize,
    pub reversed: bool,
}

impl FaceAlignment {
    pub fn is_trivial(&self) -> bool {
        self.rotation == 0 && !self.reversed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceImage {
    pub face: usize,
    pub alignment: FaceAlignment,
}

/// A finite group acting cellularly on a complex.
///
/// Group elements are dense indices `0..n` with element 0 the identity;
/// `mul[a * n + b]` is `a·b`, and `act(a·b, x) = act(a, act(b, x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellAction {
    order: usize,
    mul: Vec<usize>,
    vertex: Vec<Vec<usize>>,
    edge: Vec<Vec<SignedEdge>>,
    face: Vec<Vec<FaceImage>>,
}

impl CellAction {
    /// Assembles an action from per-element cell permutations, deriving the
    /// boundary alignment of every face image. Fails if a map is not a
    /// bijection, breaks incidence, misaligns a boundary word, or is not a
    /// homomorphism.
    pub fn from_maps(
        c: &CWComplex2,
        mul: Vec<usize>,
        vertex: Vec<Vec<usize>>,
        edge: Vec<Vec<SignedEdge>>,
        face: Vec<Vec<usize>>,
    ) -> Result<CellAction, CwError> {
        let n = vertex.len();
        if mul.len() != n * n || edge.len() != n || face.len() != n || n == 0 {
            return Err(CwError::BadAction("table sizes disagree with group order".into()));
        }
        let (nv, ne, nf) = c.counts();
        let is_perm = |xs: &mut dyn Iterator<Item = usize>, len: usize| {
            let v: Vec<usize> = xs.collect();
            v.len() == len && v.iter().copied().collect::<BTreeSet<_>>() == (0..len).collect()
        };
        let mut faces_out = Vec::with_capacity(n);
        for g in 0..n {
            if !is_perm(&mut vertex[g].iter().copied(), nv)
                || !is_perm(&mut edge[g].iter().map(|s| s.edge), ne)
                || !is_perm(&mut face[g].iter().copied(), nf)
            {
                return Err(CwError::BadAction(format!("element {g} does not permute cells")));
            }
            for (i, e) in c.edges.iter().enumerate() {
                let img = edge[g][i];
                if c.ends(img) != (vertex[g][e.src], vertex[g][e.dst]) {
                    return Err(CwError::BadAction(format!("element {g} breaks incidence of edge `{}`", e.label)));
                }
            }
            let mut row = Vec::with_capacity(nf);
            for (i, f) in c.faces.iter().enumerate() {
                let target = face[g][i];
                let image: Vec<SignedEdge> = f.boundary.iter().map(|s| apply_signed(&edge[g], *s)).collect();
                let alignment = cyclic_alignment(&image, &c.faces[target].boundary)
                    .ok_or_else(|| CwError::Misaligned { element: g, face: f.label.clone() })?;
                row.push(FaceImage { face: target, alignment });
            }
            faces_out.push(row);
        }
        let action = CellAction { order: n, mul, vertex, edge, face: faces_out };
        if !action.is_homomorphism(Strategy::default()) {
            return Err(CwError::BadAction("assignment is not a homomorphism".into()));
        }
        Ok(action)
    }

    pub fn trivial(c: &CWComplex2) -> CellAction {
        let (nv, ne, nf) = c.counts();
        CellAction {
            order: 1,
            mul: vec![0],
            vertex: vec![(0..nv).collect()],
            edge: vec![(0..ne).map(|e| SignedEdge::new(e, true)).collect()],
            face: vec![(0..nf)
                .map(|f| FaceImage { face: f, alignment: FaceAlignment { rotation: 0, reversed: false } })
                .collect()],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertex_image(&self, g: usize, v: usize) -> usize {
        self.vertex[g][v]
    }

    pub fn edge_image(&self, g: usize, e: usize) -> SignedEdge {
        self.edge[g][e]
    }

    pub fn face_image(&self, g: usize, f: usize) -> FaceImage {
        self.face[g][f]
    }

    /// Cell permutations compose according to the multiplication table.
    pub fn is_homomorphism(&self, strategy: Strategy) -> bool {
        let n = self.order;
        par::all_range(strategy, n * n, |ab| {
            let (a, b) = (ab / n, ab % n);
            let c = self.mul[ab];
            self.vertex[c].iter().enumerate().all(|(v, &img)| self.vertex[a][self.vertex[b][v]] == img)
                && self.edge[c].iter().enumerate().all(|(e, &img)| apply_signed(&self.edge[a], self.edge[b][e]) == img)
                && self.face[c].iter().enumerate().all(|(f, img)| self.face[a][self.face[b][f].face].face == img.face)
        })
    }

    /// Restriction to the subgroup formed by `elements` (which must contain
    /// the identity index 0 and be closed).
    pub fn restrict(&self, elements: &[usize]) -> Result<CellAction, CwError> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) {
            return Err(CwError::BadAction("subgroup must contain the identity".into()));
        }
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = self.order;
        let mut mul = Vec::with_capacity(elems.len() * elems.len());
        for &a in &elems {
            for &b in &elems {
                let c = self.mul[a * n + b];
                mul.push(*pos.get(&c).ok_or_else(|| CwError::BadAction("subset is not closed".into()))?);
            }
        }
        Ok(CellAction {
            order: elems.len(),
            mul,
            vertex: elems.iter().map(|&g| self.vertex[g].clone()).collect(),
            edge: elems.iter().map(|&g| self.edge[g].clone()).collect(),
            face: elems.iter().map(|&g| self.face[g].clone()).collect(),
        })
    }

    fn orbit_of(&self, images: impl Fn(usize) -> usize) -> BTreeSet<usize> {
        (0..self.order).map(images).collect()
    }

    pub fn vertex_orbits(&self) -> Vec<BTreeSet<usize>> {
        partition(self.vertex.first().map_or(0, Vec::len), |x| self.orbit_of(|g| self.vertex[g][x]))
    }

    pub fn edge_orbits(&self) -> Vec<BTreeSet<usize>> {
        partition(self.edge.first().map_or(0, Vec::len), |x| self.orbit_of(|g| self.edge[g][x].edge))
    }

    pub fn face_orbits(&self) -> Vec<BTreeSet<usize>> {
        partition(self.face.first().map_or(0, Vec::len), |x| self.orbit_of(|g| self.face[g][x].face))
    }
}

fn apply_signed(map: &[SignedEdge], s: SignedEdge) -> SignedEdge {
    let img = map[s.edge];
    if s.forward {
        img
    } else {
        img.inverse()
    }
}

fn partition(n: usize, orbit: impl Fn(usize) -> BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let o = orbit(x);
        for &y in &o {
            seen[y] = true;
        }
        out.push(o);
    }
    out
}

/// A cell fixed setwise by some group element but not pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixityViolation {
    /// Edge mapped to its own reverse.
    Edge { element: usize, edge: usize },
    /// Face mapped to itself with a nontrivial rotation or reflection.
    Face { element: usize, face: usize, alignment: FaceAlignment },
}

pub fn fixity_violations(c: &CWComplex2, a: &CellAction) -> Vec<FixityViolation> {
    let mut out = Vec::new();
    for g in 0..a.order {
        for e in 0..c.edges.len() {
            let img = a.edge[g][e];
            if img.edge == e && !img.forward {
                out.push(FixityViolation::Edge { element: g, edge: e });
            }
        }
        for f in 0..c.faces.len() {
            let img = a.face[g][f];
            if img.face == f && !img.alignment.is_trivial() {
                out.push(FixityViolation::Face { element: g, face: f, alignment: img.alignment });
            }
        }
    }
    out
}

/// Every cell fixed setwise by a group element is fixed pointwise.
pub fn check_pointwise_fixity(c: &CWComplex2, a: &CellAction) -> bool {
    fixity_violations(c, a).is_empty()
}

/// Sends every cell to its orbit; edges carry the sign relative to the
/// orbit representative's orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMap {
    pub vertex: Vec<usize>,
    pub edge: Vec<SignedEdge>,
    pub face: Vec<usize>,
}

fn least_label<'a>(orbit: &BTreeSet<usize>, label: impl Fn(usize) -> &'a str) -> usize {
    *orbit.iter().min_by_key(|&&i| label(i)).expect("orbits are nonempty")
}

/// One cell per orbit, labeled `orbit:<least member label>`, cells of each
/// dimension sorted by label.
pub fn quotient(c: &CWComplex2, a: &CellAction) -> Result<(CWComplex2, OrbitMap), CwError> {
    if !check_pointwise_fixity(c, a) {
        return Err(CwError::FixityViolation);
    }
    let name = |l: &str| format!("orbit:{l}");

    let mut vorbits: Vec<(usize, BTreeSet<usize>)> =
        a.vertex_orbits().into_iter().map(|o| (least_label(&o, |i| c.vertices[i].as_str()), o)).collect();
    vorbits.sort_by(|x, y| c.vertices[x.0].cmp(&c.vertices[y.0]));
    let mut vmap = vec![0; c.vertices.len()];
    for (k, (_, o)) in vorbits.iter().enumerate() {
        for &v in o {
            vmap[v] = k;
        }
    }

    let mut eorbits: Vec<(usize, BTreeSet<usize>)> =
        a.edge_orbits().into_iter().map(|o| (least_label(&o, |i| c.edges[i].label.as_str()), o)).collect();
    eorbits.sort_by(|x, y| c.edges[x.0].label.cmp(&c.edges[y.0].label));
    let mut emap = vec![SignedEdge::new(0, true); c.edges.len()];
    for (k, (rep, _)) in eorbits.iter().enumerate() {
        for g in 0..a.order {
            let img = a.edge[g][*rep];
            emap[img.edge] = SignedEdge::new(k, img.forward);
        }
    }

    let mut forbits: Vec<(usize, BTreeSet<usize>)> =
        a.face_orbits().into_iter().map(|o| (least_label(&o, |i| c.faces[i].label.as_str()), o)).collect();
    forbits.sort_by(|x, y| c.faces[x.0].label.cmp(&c.faces[y.0].label));
    let mut fmap = vec![0; c.faces.len()];
    for (k, (_, o)) in forbits.iter().enumerate() {
        for &f in o {
            fmap[f] = k;
        }
    }

    let vertices: Vec<String> = vorbits.iter().map(|(r, _)| name(&c.vertices[*r])).collect();
    let edges: Vec<Edge> = eorbits
        .iter()
        .map(|(r, _)| {
            let e = &c.edges[*r];
            Edge { label: name(&e.label), src: vmap[e.src], dst: vmap[e.dst] }
        })
        .collect();
    let faces: Vec<Face> = forbits
        .iter()
        .map(|(r, _)| Face {
            label: name(&c.faces[*r].label),
            boundary: c.faces[*r].boundary.iter().map(|&s| apply_signed(&emap, s)).collect(),
        })
        .collect();
    let q = CWComplex2 { vertices, edges, faces };
    validate(&q)?;
    Ok((q, OrbitMap { vertex: vmap, edge: emap, face: fmap }))
}

/// Splits edge `label` into `label.0: src → mid` and `label.1: mid → dst`
/// through a new vertex `label.mid`, rewriting boundary words. The result is
/// homeomorphic to the input.
pub fn subdivide_edge(c: &CWComplex2, label: &str) -> Option<CWComplex2> {
    let idx = c.edge_index(label)?;
    let mid = format!("{label}.mid");
    let (a, b) = (format!("{label}.0"), format!("{label}.1"));
    let mut vertices = c.vertices.clone();
    vertices.push(mid.clone());
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for (i, e) in c.edges.iter().enumerate() {
        let (s, d) = (c.vertices[e.src].clone(), c.vertices[e.dst].clone());
        if i == idx {
            edges.push((a.clone(), s, mid.clone()));
            edges.push((b.clone(), mid.clone(), d));
        } else {
            edges.push((e.label.clone(), s, d));
        }
    }
    let faces = c.faces.iter().map(|f| {
        let mut word = Vec::new();
        for s in &f.boundary {
            if s.edge == idx {
                if s.forward {
                    word.push((a.clone(), true));
                    word.push((b.clone(), true));
                } else {
                    word.push((b.clone(), false));
                    word.push((a.clone(), false));
                }
            } else {
                word.push((c.edges[s.edge].label.clone(), s.forward));
            }
        }
        (f.label.clone(), word)
    });
    CWComplex2::new(vertices, edges, faces.collect::<Vec<_>>()).ok()
}

/// Whether `dictionary` (labels of `c1` to labels of `c2`, any dimension)
/// extends to an isomorphism: a bijection on cells preserving edge
/// endpoints and direction and matching boundary words up to rotation and
/// inversion. Exhaustive backtracking.
pub fn isomorphic_labeled(c1: &CWComplex2, c2: &CWComplex2, dictionary: &BTreeMap<String, String>) -> bool {
    if c1.counts() != c2.counts() {
        return false;
    }
    let mut search = IsoSearch::new(c1, c2, dictionary);
    search.assign_vertex(0)
}

struct IsoSearch<'a> {
    c1: &'a CWComplex2,
    c2: &'a CWComplex2,
    fixed_v: Vec<Option<usize>>,
    fixed_e: Vec<Option<usize>>,
    fixed_f: Vec<Option<usize>>,
    vmap: Vec<Option<usize>>,
    vused: Vec<bool>,
    emap: Vec<Option<usize>>,
    eused: Vec<bool>,
    fused: Vec<bool>,
    /// Faces of c1 whose edges are all assigned once edge `k` is placed.
    faces_closed_at: Vec<Vec<usize>>,
    valid: bool,
}

impl<'a> IsoSearch<'a> {
    fn new(c1: &'a CWComplex2, c2: &'a CWComplex2, dict: &BTreeMap<String, String>) -> Self {
        let mut valid = true;
        let mut resolve = |labels1: &[&str], find2: &dyn Fn(&str) -> Option<usize>| -> Vec<Option<usize>> {
            labels1
                .iter()
                .map(|l| {
                    dict.get(*l).and_then(|t| {
                        let r = find2(t);
                        if r.is_none() {
                            valid = false;
                        }
                        r
                    })
                })
                .collect()
        };
        let v1: Vec<&str> = c1.vertices.iter().map(String::as_str).collect();
        let e1: Vec<&str> = c1.edges.iter().map(|e| e.label.as_str()).collect();
        let f1: Vec<&str> = c1.faces.iter().map(|f| f.label.as_str()).collect();
        let fixed_v = resolve(&v1, &|t| c2.vertex_index(t));
        let fixed_e = resolve(&e1, &|t| c2.edge_index(t));
        let fixed_f = resolve(&f1, &|t| c2.face_index(t));
        let mut faces_closed_at = vec![Vec::new(); c1.edges.len()];
        for (fi, f) in c1.faces.iter().enumerate() {
            let last = f.boundary.iter().map(|s| s.edge).max().expect("nonempty boundary");
            faces_closed_at[last].push(fi);
        }
        let (nv, ne, nf) = c1.counts();
        IsoSearch {
            c1,
            c2,
            fixed_v,
            fixed_e,
            fixed_f,
            vmap: vec![None; nv],
            vused: vec![false; nv],
            emap: vec![None; ne],
            eused: vec![false; ne],
            fused: vec![false; nf],
            faces_closed_at,
            valid,
        }
    }

    fn assign_vertex(&mut self, k: usize) -> bool {
        if !self.valid {
            return false;
        }
        if k == self.c1.vertices.len() {
            return self.assign_edge(0);
        }
        let candidates: Vec<usize> = match self.fixed_v[k] {
            Some(t) => vec![t],
            None => (0..self.c2.vertices.len()).collect(),
        };
        for t in candidates {
            if self.vused[t] {
                continue;
            }
            self.vmap[k] = Some(t);
            self.vused[t] = true;
            if self.assign_vertex(k + 1) {
                return true;
            }
            self.vused[t] = false;
            self.vmap[k] = None;
        }
        false
    }

    fn image_word(&self, f: usize) -> Vec<SignedEdge> {
        self.c1.faces[f]
            .boundary
            .iter()
            .map(|s| SignedEdge::new(self.emap[s.edge].expect("assigned"), s.forward))
            .collect()
    }

    /// Some unused face of c2 (respecting the dictionary) matches each face
    /// closed so far. Final matching is checked in `assign_faces`.
    fn faces_plausible(&self, k: usize) -> bool {
        self.faces_closed_at[k].iter().all(|&f| {
            let img = self.image_word(f);
            let ok = |t: usize| cyclic_alignment(&img, &self.c2.faces[t].boundary).is_some();
            match self.fixed_f[f] {
                Some(t) => ok(t),
                None => (0..self.c2.faces.len()).any(ok),
            }
        })
    }

    fn assign_edge(&mut self, k: usize) -> bool {
        if k == self.c1.edges.len() {
            return self.assign_face(0);
        }
        let e = &self.c1.edges[k];
        let (s, d) = (self.vmap[e.src].expect("assigned"), self.vmap[e.dst].expect("assigned"));
        let candidates: Vec<usize> = match self.fixed_e[k] {
            Some(t) => vec![t],
            None => (0..self.c2.edges.len()).collect(),
        };
        for t in candidates {
            let et = &self.c2.edges[t];
            if self.eused[t] || et.src != s || et.dst != d {
                continue;
            }
            self.emap[k] = Some(t);
            self.eused[t] = true;
            if self.faces_plausible(k) && self.assign_edge(k + 1) {
                return true;
            }
            self.eused[t] = false;
            self.emap[k] = None;
        }
        false
    }

    fn assign_face(&mut self, k: usize) -> bool {
        if k == self.c1.faces.len() {
            return true;
        }
        let img = self.image_word(k);
        let candidates: Vec<usize> = match self.fixed_f[k] {
            Some(t) => vec![t],
            None => (0..self.c2.faces.len()).collect(),
        };
        for t in candidates {
            if self.fused[t] || cyclic_alignment(&img, &self.c2.faces[t].boundary).is_none() {
                continue;
            }
            self.fused[t] = true;
            if self.assign_face(k + 1) {
                return true;
            }
            self.fused[t] = false;
        }
        false
    }
}

impl fmt::Display for CWComplex2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
