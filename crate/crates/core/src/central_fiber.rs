//! The dual complex of the 16-component central fiber and its quotient by a
//! Sylow 2-subgroup.
//!
//! Cells are indexed by the Fano geometry:
//!
//! | cell | count | boundary |
//! |------|-------|----------|
//! | `Π`, `Π*`, `C(e)` | 16 | |
//! | `D(p)`, `D*(p)`, `D(l)`, `D*(l)` | 28 | `Π→C(p)`, `C(p)→Π*`, `C(l)→Π`, `Π*→C(l)` |
//! | `D(e,f)`, `E(e,f)` | 84 | `C(e)→C(f)`, loop at `C(e)` |
//! | `P(p,l)`, `P*(p,l)` | 42 | `D(p).D(p,l).D(l)`, `D*(l).D(l,p).D*(p)` |
//! | `Q(e,f)` | 42 | `D(e,f).D(f,e).E(e,f)` |
//! | `R(e,o)` | 28 | `E(e,f1).E(e,f2).E(e,f3)` and its reverse |
//!
//! The order-336 group acts by permuting subscripts; correlations also swap
//! `Π ↔ Π*`, `D ↔ D*` and `P ↔ P*`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::cw::{
    self, check_pointwise_fixity, fixity_violations, isomorphic_labeled, validate, CWComplex2, CellAction, CwError,
    FaceAlignment, FixityViolation, OrbitMap, SignedEdge,
};
use crate::fano::{
    self, all_elements, all_flags, incident, lines, orbit_representatives_ppp, points, FanoError, Flag, GeomElement,
    GroupElement, GroupTable, Subgroup,
};
use crate::par::{self, Strategy};
use crate::report::Assertion;

#[derive(Debug, Error)]
pub enum CentralFiberError {
    #[error(transparent)]
    Fano(#[from] FanoError),
    #[error(transparent)]
    Cw(#[from] CwError),
    #[error("flag {0}: D16 action is not pointwise on setwise-fixed cells")]
    FixityFailed(Flag),
    #[error("flag {0}: quotient does not match the reference table")]
    NotIsomorphic(Flag),
    #[error("flag {flag}: no line in the orbit of {line} is incident to {point}")]
    MissingPair { flag: Flag, point: GeomElement, line: GeomElement },
    #[error("flag {flag}: representatives of `{name}` land in different orbits")]
    AmbiguousRepresentative { flag: Flag, name: String },
}

/// One of the two cyclic orderings of a 3-element set, stored rotated so the
/// least element comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicOrder3([GeomElement; 3]);

impl CyclicOrder3 {
    pub fn new(a: GeomElement, b: GeomElement, c: GeomElement) -> CyclicOrder3 {
        let mut v = [a, b, c];
        let k = (0..3).min_by_key(|&i| v[i]).expect("three elements");
        v.rotate_left(k);
        CyclicOrder3(v)
    }

    /// `(f1, f2, f3)` with the incident elements of `e` in ascending order.
    pub fn forward(e: GeomElement) -> CyclicOrder3 {
        let [a, b, c] = e.incident_elements();
        CyclicOrder3([a, b, c])
    }

    pub fn backward(e: GeomElement) -> CyclicOrder3 {
        let [a, b, c] = e.incident_elements();
        CyclicOrder3([a, c, b])
    }

    pub fn elements(&self) -> [GeomElement; 3] {
        self.0
    }

    /// Pushforward ordering.
    pub fn map(&self, g: &GroupElement) -> CyclicOrder3 {
        let [a, b, c] = self.0;
        CyclicOrder3::new(g.act(a), g.act(b), g.act(c))
    }
}

/// Structured names of the dual-complex cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberCell {
    Pi,
    PiStar,
    C(GeomElement),
    D(GeomElement),
    DStar(GeomElement),
    DPair(GeomElement, GeomElement),
    E(GeomElement, GeomElement),
    /// Point first; `P(p,l) = P(l,p)`.
    P(GeomElement, GeomElement),
    PStar(GeomElement, GeomElement),
    Q(GeomElement, GeomElement),
    R(GeomElement, CyclicOrder3),
}

fn point_first(a: GeomElement, b: GeomElement) -> (GeomElement, GeomElement) {
    if a.is_point() {
        (a, b)
    } else {
        (b, a)
    }
}

impl FiberCell {
    pub fn p_face(a: GeomElement, b: GeomElement) -> FiberCell {
        let (p, l) = point_first(a, b);
        FiberCell::P(p, l)
    }

    pub fn p_star_face(a: GeomElement, b: GeomElement) -> FiberCell {
        let (p, l) = point_first(a, b);
        FiberCell::PStar(p, l)
    }

    pub fn dim(&self) -> u8 {
        use FiberCell::*;
        match self {
            Pi | PiStar | C(_) => 0,
            D(_) | DStar(_) | DPair(..) | E(..) => 1,
            P(..) | PStar(..) | Q(..) | R(..) => 2,
        }
    }

    pub fn act(&self, g: &GroupElement) -> FiberCell {
        use FiberCell::*;
        let swap = g.is_correlation();
        let h = |e: &GeomElement| g.act(*e);
        match self {
            Pi if swap => PiStar,
            PiStar if swap => Pi,
            Pi | PiStar => *self,
            C(e) => C(h(e)),
            D(e) if swap => DStar(h(e)),
            D(e) => D(h(e)),
            DStar(e) if swap => D(h(e)),
            DStar(e) => DStar(h(e)),
            DPair(e, f) => DPair(h(e), h(f)),
            E(e, f) => E(h(e), h(f)),
            P(p, l) if swap => FiberCell::p_star_face(h(p), h(l)),
            P(p, l) => FiberCell::p_face(h(p), h(l)),
            PStar(p, l) if swap => FiberCell::p_face(h(p), h(l)),
            PStar(p, l) => FiberCell::p_star_face(h(p), h(l)),
            Q(e, f) => Q(h(e), h(f)),
            R(e, o) => R(h(e), o.map(g)),
        }
    }
}

impl fmt::Display for FiberCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FiberCell::*;
        match self {
            Pi => write!(f, "Pi"),
            PiStar => write!(f, "Pi*"),
            C(e) => write!(f, "C({e})"),
            D(e) => write!(f, "D({e})"),
            DStar(e) => write!(f, "D*({e})"),
            DPair(a, b) => write!(f, "D({a},{b})"),
            E(a, b) => write!(f, "E({a},{b})"),
            P(a, b) => write!(f, "P({a},{b})"),
            PStar(a, b) => write!(f, "P*({a},{b})"),
            Q(a, b) => write!(f, "Q({a},{b})"),
            R(e, o) => {
                let [a, b, c] = o.0;
                write!(f, "R({e};{a},{b},{c})")
            }
        }
    }
}

/// Ordered incident pairs, ascending.
fn ordered_incident_pairs() -> Vec<(GeomElement, GeomElement)> {
    let elems = all_elements();
    let mut out = Vec::with_capacity(42);
    for &e in &elems {
        for &f in &elems {
            if incident(e, f) {
                out.push((e, f));
            }
        }
    }
    out
}

/// The dual complex together with the structured name of every cell.
#[derive(Debug, Clone)]
pub struct DualComplex {
    complex: CWComplex2,
    vertices: Vec<FiberCell>,
    edges: Vec<FiberCell>,
    faces: Vec<FiberCell>,
    index: HashMap<FiberCell, usize>,
}

impl DualComplex {
    pub fn complex(&self) -> &CWComplex2 {
        &self.complex
    }

    pub fn vertex_cells(&self) -> &[FiberCell] {
        &self.vertices
    }

    pub fn edge_cells(&self) -> &[FiberCell] {
        &self.edges
    }

    pub fn face_cells(&self) -> &[FiberCell] {
        &self.faces
    }

    /// Index of a cell within its dimension.
    pub fn index_of(&self, cell: &FiberCell) -> Option<usize> {
        self.index.get(cell).copied()
    }
}

pub fn build_dual_complex() -> DualComplex {
    use FiberCell::*;
    let mut vertices = vec![Pi, PiStar];
    vertices.extend(all_elements().into_iter().map(C));

    let mut edges: Vec<(FiberCell, FiberCell, FiberCell)> = Vec::with_capacity(112);
    for p in points() {
        edges.push((D(p), Pi, C(p)));
        edges.push((DStar(p), C(p), PiStar));
    }
    for l in lines() {
        edges.push((D(l), C(l), Pi));
        edges.push((DStar(l), PiStar, C(l)));
    }
    let pairs = ordered_incident_pairs();
    for &(e, f) in &pairs {
        edges.push((DPair(e, f), C(e), C(f)));
    }
    for &(e, f) in &pairs {
        edges.push((E(e, f), C(e), C(e)));
    }

    let fwd = |c: FiberCell| (c, true);
    let mut faces: Vec<(FiberCell, Vec<(FiberCell, bool)>)> = Vec::with_capacity(112);
    for flag in all_flags() {
        let (p, l) = (flag.point(), flag.line());
        faces.push((P(p, l), vec![fwd(D(p)), fwd(DPair(p, l)), fwd(D(l))]));
    }
    for flag in all_flags() {
        let (p, l) = (flag.point(), flag.line());
        faces.push((PStar(p, l), vec![fwd(DStar(l)), fwd(DPair(l, p)), fwd(DStar(p))]));
    }
    for &(e, f) in &pairs {
        faces.push((Q(e, f), vec![fwd(DPair(e, f)), fwd(DPair(f, e)), fwd(E(e, f))]));
    }
    for e in all_elements() {
        let [f1, f2, f3] = e.incident_elements();
        faces.push((R(e, CyclicOrder3::forward(e)), vec![fwd(E(e, f1)), fwd(E(e, f2)), fwd(E(e, f3))]));
        faces.push((R(e, CyclicOrder3::backward(e)), vec![fwd(E(e, f3)), fwd(E(e, f2)), fwd(E(e, f1))]));
    }

    let name = |c: &FiberCell| c.to_string();
    let complex = CWComplex2::new(
        vertices.iter().map(name),
        edges.iter().map(|(c, s, d)| (name(c), name(s), name(d))),
        faces.iter().map(|(c, w)| (name(c), w.iter().map(|(e, s)| (name(e), *s)).collect())),
    )
    .expect("dual complex labels resolve");

    let edges: Vec<FiberCell> = edges.into_iter().map(|(c, _, _)| c).collect();
    let faces: Vec<FiberCell> = faces.into_iter().map(|(c, _)| c).collect();
    let mut index = HashMap::new();
    for cells in [&vertices, &edges, &faces] {
        for (i, c) in cells.iter().enumerate() {
            index.insert(*c, i);
        }
    }
    DualComplex { complex, vertices, edges, faces, index }
}

/// The order-336 group acting on the dual complex.
#[derive(Debug, Clone)]
pub struct PglAction {
    pub dual: DualComplex,
    pub table: GroupTable,
    pub action: CellAction,
}

impl PglAction {
    /// Action indices of the elements of `h`.
    pub fn indices_of(&self, h: &Subgroup) -> Vec<usize> {
        let mut idx: Vec<usize> =
            h.elements().iter().map(|g| self.table.index_of(g).expect("subgroup of the full group")).collect();
        idx.sort_unstable();
        idx
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<CellAction, CwError> {
        self.action.restrict(&self.indices_of(h))
    }

    /// Some order-3 element mapping an `R` face to itself with a nontrivial
    /// rotation.
    pub fn rotation_witness(&self) -> Option<(GroupElement, FiberCell, FaceAlignment)> {
        fixity_violations(self.dual.complex(), &self.action).into_iter().find_map(|v| match v {
            FixityViolation::Face { element, face, alignment } => {
                let g = self.table.elements()[element];
                let cell = self.dual.faces[face];
                (g.order() == 3 && matches!(cell, FiberCell::R(..)) && alignment.rotation != 0)
                    .then_some((g, cell, alignment))
            }
            FixityViolation::Edge { .. } => None,
        })
    }
}

/// Builds the action and checks it: bijective, incidence-preserving,
/// boundary-aligned and homomorphic. A misaligned boundary is reported with
/// the offending element and face.
pub fn pgl27_action() -> Result<PglAction, CentralFiberError> {
    let dual = build_dual_complex();
    let table = GroupTable::full();
    let n = table.len();
    let lookup =
        |cells: &[FiberCell], g: &GroupElement| -> Vec<usize> { cells.iter().map(|c| dual.index[&c.act(g)]).collect() };
    let mut vertex = Vec::with_capacity(n);
    let mut edge = Vec::with_capacity(n);
    let mut face = Vec::with_capacity(n);
    for g in table.elements() {
        vertex.push(lookup(&dual.vertices, g));
        edge.push(lookup(&dual.edges, g).into_iter().map(|e| SignedEdge::new(e, true)).collect());
        face.push(lookup(&dual.faces, g));
    }
    let mul = (0..n * n).map(|ab| table.mul(ab / n, ab % n)).collect();
    let action = CellAction::from_maps(dual.complex(), mul, vertex, edge, face)?;
    Ok(PglAction { dual, table, action })
}

/// Process-wide cached action.
pub fn shared_action() -> &'static PglAction {
    static ACTION: OnceLock<PglAction> = OnceLock::new();
    ACTION.get_or_init(|| pgl27_action().expect("dual-complex action is consistent"))
}

/// Number of orbits of `h` on the 16 vertices `Π, Π*, C(e)`.
pub fn vertex_orbit_count(h: &Subgroup) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for v in build_dual_complex().vertices {
        if seen.contains(&v) {
            continue;
        }
        count += 1;
        seen.extend(h.elements().iter().map(|g| v.act(g)));
    }
    count
}

fn sorted_sizes(orbits: &[BTreeSet<usize>]) -> Vec<usize> {
    let mut s: Vec<usize> = orbits.iter().map(BTreeSet::len).collect();
    s.sort_unstable();
    s
}

fn face_vertices(c: &CWComplex2, face: usize) -> BTreeSet<usize> {
    c.faces()[face]
        .boundary
        .iter()
        .flat_map(|&s| {
            let (a, b) = c.ends(s);
            [a, b]
        })
        .collect()
}

/// Checks the combinatorial content of the central-fiber description and
/// its orbit decomposition. Names are keyed to the lemma items.
pub fn verify_orbit_decomposition(pgl: &PglAction) -> Vec<Assertion> {
    use FiberCell::*;
    let dual = &pgl.dual;
    let c = dual.complex();
    let a = &pgl.action;
    let mut out = Vec::new();

    let cert = validate(c);
    out.push(Assertion::holds("complex validates", cert.is_ok()));
    out.push(Assertion::eq("census (V, E, F)", (16, 112, 112), c.counts()));
    out.push(Assertion::eq("Euler characteristic", 16, c.euler_characteristic()));

    let vi = |cell: FiberCell| dual.index[&cell];
    let (pi, pi_star) = (vi(Pi), vi(PiStar));
    let edges_between =
        |x: usize, y: usize| c.edges().iter().filter(|e| (e.src, e.dst) == (x, y) || (e.src, e.dst) == (y, x)).count();

    let mut labels_ok = true;
    let mut swap_ok = true;
    for g in pgl.table.elements() {
        let gi = pgl.table.index_of(g).unwrap();
        for e in all_elements() {
            labels_ok &= a.vertex_image(gi, vi(C(e))) == vi(C(g.act(e)));
        }
        let expect = if g.is_correlation() { pi_star } else { pi };
        swap_ok &= a.vertex_image(gi, pi) == expect;
    }
    out.push(Assertion::holds("(1) C(e) permuted like e", labels_ok));
    out.push(Assertion::holds("(1) correlations exchange Pi and Pi*", swap_ok));
    out.push(Assertion::eq("(2) Pi and Pi* disjoint: edges between", 0, edges_between(pi, pi_star)));

    let elems = all_elements();
    let per_c = |target: usize| elems.iter().all(|&e| edges_between(vi(C(e)), target) == 1);
    out.push(Assertion::holds("(3) C(e) meets Pi in one curve", per_c(pi)));
    out.push(Assertion::holds("(3) C(e) meets Pi* in one curve", per_c(pi_star)));

    let mut disjoint = true;
    let mut two_curves = true;
    for &e in &elems {
        for &f in &elems {
            if e == f {
                continue;
            }
            let n = edges_between(vi(C(e)), vi(C(f)));
            if incident(e, f) {
                let dir = c.edges().iter().filter(|x| (x.src, x.dst) == (vi(C(e)), vi(C(f)))).count();
                two_curves &= n == 2 && dir == 1;
            } else {
                disjoint &= n == 0;
            }
        }
    }
    out.push(Assertion::holds("(4) non-incident C(e), C(f) disjoint", disjoint));
    out.push(Assertion::holds("(5) incident C(e), C(f) meet in D(e,f) and D(f,e)", two_curves));

    let mut loops_ok = true;
    for &e in &elems {
        let ce = vi(C(e));
        let loops: Vec<usize> =
            (0..c.edges().len()).filter(|&i| c.edges()[i].src == ce && c.edges()[i].dst == ce).collect();
        loops_ok &= loops.len() == 3;
        for f in e.incident_elements() {
            let cf = vi(C(f));
            let meeting = loops
                .iter()
                .filter(|&&l| {
                    (0..c.faces().len()).any(|fi| {
                        c.faces()[fi].boundary.iter().any(|s| s.edge == l) && face_vertices(c, fi).contains(&cf)
                    })
                })
                .count();
            loops_ok &= meeting == 1;
        }
    }
    out.push(Assertion::holds("(6) three self-curves per C(e), one meeting each C(f)", loops_ok));

    let mut triple_ok = true;
    for flag in all_flags() {
        let (cp, cl) = (vi(C(flag.point())), vi(C(flag.line())));
        for (base, other) in [(pi, pi_star), (pi_star, pi)] {
            let n = (0..c.faces().len())
                .filter(|&fi| {
                    let vs = face_vertices(c, fi);
                    vs.contains(&base) && vs.contains(&cp) && vs.contains(&cl) && !vs.contains(&other)
                })
                .count();
            triple_ok &= n == 1;
        }
    }
    out.push(Assertion::holds("(7) one P and one P* per incident pair", triple_ok));

    let q_ok = ordered_incident_pairs().iter().all(|&(e, f)| {
        let eidx = vi(E(e, f));
        (0..c.faces().len())
            .filter(|&fi| {
                c.faces()[fi].boundary.iter().any(|s| s.edge == eidx) && face_vertices(c, fi).contains(&vi(C(f)))
            })
            .count()
            == 1
    });
    out.push(Assertion::holds("(8) one Q(e,f) on E(e,f) meeting C(f)", q_ok));

    let r_ok = elems.iter().all(|&e| {
        let ce = vi(C(e));
        let self_faces: Vec<usize> =
            (0..c.faces().len()).filter(|&fi| face_vertices(c, fi) == BTreeSet::from([ce])).collect();
        let loops: BTreeSet<usize> = e.incident_elements().iter().map(|&f| vi(E(e, f))).collect();
        self_faces.len() == 2
            && self_faces
                .iter()
                .all(|&fi| c.faces()[fi].boundary.iter().map(|s| s.edge).collect::<BTreeSet<_>>() == loops)
            && cw::cyclic_alignment(&c.faces()[self_faces[0]].boundary, &c.faces()[self_faces[1]].boundary).is_none()
    });
    out.push(Assertion::holds("(9) two triple self-points per C(e) with opposite orders", r_ok));

    let r_equivariant = pgl.table.elements().iter().all(|g| {
        let gi = pgl.table.index_of(g).unwrap();
        elems.iter().all(|&e| {
            [CyclicOrder3::forward(e), CyclicOrder3::backward(e)]
                .iter()
                .all(|o| a.face_image(gi, vi(R(e, *o))).face == vi(R(g.act(e), o.map(g))))
        })
    });
    out.push(Assertion::holds("(9) R(e,o) permuted like (e,o)", r_equivariant));

    out.push(Assertion::eq("component orbit sizes", vec![2, 14], sorted_sizes(&a.vertex_orbits())));
    out.push(Assertion::eq("double-curve orbit sizes", vec![14, 14, 42, 42], sorted_sizes(&a.edge_orbits())));
    out.push(Assertion::eq("triple-point orbit sizes", vec![28, 42, 42], sorted_sizes(&a.face_orbits())));

    let orbit_containing = |orbits: Vec<BTreeSet<usize>>, x: usize| {
        orbits.into_iter().find(|o| o.contains(&x)).expect("every cell lies in an orbit")
    };
    let d_orbit = orbit_containing(a.edge_orbits(), vi(D(points()[0])));
    let expected: BTreeSet<usize> =
        points().into_iter().map(|p| vi(D(p))).chain(lines().into_iter().map(|l| vi(DStar(l)))).collect();
    out.push(Assertion::holds("orbit (a): the seven D(p) and seven D*(l)", d_orbit == expected));
    let d2_orbit = orbit_containing(a.edge_orbits(), vi(D(lines()[0])));
    let expected2: BTreeSet<usize> =
        lines().into_iter().map(|l| vi(D(l))).chain(points().into_iter().map(|p| vi(DStar(p)))).collect();
    out.push(Assertion::holds("orbit (b): the seven D(l) and seven D*(p)", d2_orbit == expected2));

    let f0 = fano::default_flag();
    let p_orbit = orbit_containing(a.face_orbits(), vi(P(f0.point(), f0.line())));
    out.push(Assertion::holds(
        "triple-point orbit of P(p,l) contains P*(p,l)",
        p_orbit.contains(&vi(PStar(f0.point(), f0.line()))) && p_orbit.len() == 42,
    ));
    out
}

/// Labels of the reference quotient table.
pub mod table {
    pub const SUBSCRIPTS: [&str; 3] = ["p", "p'", "p''"];
    /// The six orbit types of ordered incident pairs, point first.
    pub const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2)];
    /// Second subscripts of the three `E` loops on each `R̄` face.
    pub const R_WORDS: [[usize; 3]; 3] = [[0, 1, 1], [0, 2, 2], [1, 2, 2]];

    pub fn vertex(x: usize) -> String {
        format!("Cbar_{}", SUBSCRIPTS[x])
    }
    pub const PI: &str = "Pibar";
    pub fn d(x: usize) -> String {
        format!("Dbar_{}", SUBSCRIPTS[x])
    }
    pub fn d_star(x: usize) -> String {
        format!("Dbar*_{}", SUBSCRIPTS[x])
    }
    pub fn d_pair(x: usize, y: usize) -> String {
        format!("Dbar_{}{}", SUBSCRIPTS[x], SUBSCRIPTS[y])
    }
    pub fn e_pair(x: usize, y: usize) -> String {
        format!("Ebar_{}{}", SUBSCRIPTS[x], SUBSCRIPTS[y])
    }
    pub fn p_face(x: usize, y: usize) -> String {
        format!("Pbar_{}{}", SUBSCRIPTS[x], SUBSCRIPTS[y])
    }
    pub fn q_face(x: usize, y: usize) -> String {
        format!("Qbar_{}{}", SUBSCRIPTS[x], SUBSCRIPTS[y])
    }
    pub fn r_face(x: usize) -> String {
        format!("Rbar_{}", SUBSCRIPTS[x])
    }
}

/// The hand-encoded 4-vertex, 18-edge, 15-face quotient table.
pub fn reference_table() -> CWComplex2 {
    use table::*;
    let mut vertices = vec![PI.to_string()];
    vertices.extend((0..3).map(vertex));
    let mut edges = Vec::new();
    for x in 0..3 {
        edges.push((d(x), PI.to_string(), vertex(x)));
    }
    for &(x, y) in &PAIRS {
        edges.push((d_pair(x, y), vertex(x), vertex(y)));
    }
    for x in 0..3 {
        edges.push((d_star(x), vertex(x), PI.to_string()));
    }
    for &(x, y) in &PAIRS {
        edges.push((e_pair(x, y), vertex(x), vertex(x)));
    }
    let mut faces = Vec::new();
    for &(x, y) in &PAIRS {
        faces.push((p_face(x, y), vec![(d(x), true), (d_pair(x, y), true), (d_star(y), true)]));
    }
    for &(x, y) in &PAIRS {
        faces.push((q_face(x, y), vec![(d_pair(x, y), true), (d_pair(y, x), true), (e_pair(x, y), true)]));
    }
    for (x, w) in R_WORDS.iter().enumerate() {
        faces.push((r_face(x), w.iter().map(|&y| (e_pair(x, y), true)).collect()));
    }
    CWComplex2::new(vertices, edges, faces).expect("reference table labels resolve")
}

/// Quotient of the dual complex by the Sylow 2-subgroup of a flag, matched
/// against [`reference_table`].
#[derive(Debug, Clone)]
pub struct D16Quotient {
    pub flag: Flag,
    pub complex: CWComplex2,
    pub orbit_map: OrbitMap,
    /// Reference-table label to computed quotient label.
    pub dictionary: BTreeMap<String, String>,
}

impl D16Quotient {
    /// Computed quotient label for a reference-table label.
    pub fn computed_label(&self, reference: &str) -> Option<&str> {
        self.dictionary.get(reference).map(String::as_str)
    }
}

pub fn quotient_by_d16(flag: &Flag) -> Result<D16Quotient, CentralFiberError> {
    quotient_by_d16_with(shared_action(), flag)
}

pub fn quotient_by_d16_with(pgl: &PglAction, flag: &Flag) -> Result<D16Quotient, CentralFiberError> {
    use FiberCell::*;
    let d16 = fano::sylow2_d16(flag)?;
    let d8 = fano::flag_stabilizer_d8(flag);
    let action = pgl.restrict(&d16)?;
    let c = pgl.dual.complex();
    if !check_pointwise_fixity(c, &action) {
        return Err(CentralFiberError::FixityFailed(*flag));
    }
    let (q, map) = cw::quotient(c, &action)?;

    let reps = orbit_representatives_ppp(flag);
    let point_rep = [reps.p, reps.p1, reps.p2];
    let line_rep = [reps.l, reps.l1, reps.l2];
    let d8_orbit = |e: GeomElement| -> BTreeSet<GeomElement> { d8.elements().iter().map(|g| g.act(e)).collect() };

    let dual = &pgl.dual;
    let vlabel = |cell: FiberCell| q.vertices()[map.vertex[dual.index[&cell]]].clone();
    let elabel = |cell: FiberCell| q.edges()[map.edge[dual.index[&cell]].edge].label.clone();
    let flabel = |cell: FiberCell| q.faces()[map.face[dual.index[&cell]]].label.clone();

    // Every choice of a line in the named orbit incident to the point must
    // land in a single quotient cell.
    let pair_label = |name: String,
                      x: usize,
                      y: usize,
                      make: &dyn Fn(GeomElement, GeomElement) -> FiberCell,
                      label: &dyn Fn(FiberCell) -> String|
     -> Result<(String, String), CentralFiberError> {
        let p = point_rep[x];
        let choices: BTreeSet<String> =
            d8_orbit(line_rep[y]).into_iter().filter(|&m| incident(p, m)).map(|m| label(make(p, m))).collect();
        match choices.len() {
            0 => Err(CentralFiberError::MissingPair { flag: *flag, point: p, line: line_rep[y] }),
            1 => Ok((name, choices.into_iter().next().unwrap())),
            _ => Err(CentralFiberError::AmbiguousRepresentative { flag: *flag, name }),
        }
    };

    let mut dictionary = BTreeMap::new();
    dictionary.insert(table::PI.to_string(), vlabel(Pi));
    for x in 0..3 {
        dictionary.insert(table::vertex(x), vlabel(C(point_rep[x])));
        dictionary.insert(table::d(x), elabel(D(point_rep[x])));
        dictionary.insert(table::d_star(x), elabel(DStar(point_rep[x])));
        dictionary.insert(table::r_face(x), flabel(R(point_rep[x], CyclicOrder3::forward(point_rep[x]))));
    }
    for &(x, y) in &table::PAIRS {
        let entries = [
            pair_label(table::d_pair(x, y), x, y, &|a, b| DPair(a, b), &elabel)?,
            pair_label(table::e_pair(x, y), x, y, &|a, b| E(a, b), &elabel)?,
            pair_label(table::p_face(x, y), x, y, &|a, b| P(a, b), &flabel)?,
            pair_label(table::q_face(x, y), x, y, &|a, b| Q(a, b), &flabel)?,
        ];
        dictionary.extend(entries);
    }

    if !isomorphic_labeled(&reference_table(), &q, &dictionary) {
        return Err(CentralFiberError::NotIsomorphic(*flag));
    }
    Ok(D16Quotient { flag: *flag, complex: q, orbit_map: map, dictionary })
}

/// Per-flag summary of [`quotient_by_d16`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub flag: String,
    pub counts: (usize, usize, usize),
    pub euler_characteristic: i64,
    pub fixity: bool,
    pub matches_table: bool,
}

/// Runs the quotient for all 21 flags; results are in flag order.
pub fn flag_sweep(strategy: Strategy) -> Vec<SweepEntry> {
    let pgl = shared_action();
    par::map(strategy, &all_flags(), |f| match quotient_by_d16_with(pgl, f) {
        Ok(q) => SweepEntry {
            flag: f.to_string(),
            counts: q.complex.counts(),
            euler_characteristic: q.complex.euler_characteristic(),
            fixity: true,
            matches_table: true,
        },
        Err(e) => SweepEntry {
            flag: f.to_string(),
            counts: (0, 0, 0),
            euler_characteristic: 0,
            fixity: !matches!(e, CentralFiberError::FixityFailed(_)),
            matches_table: false,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census() {
        let d = build_dual_complex();
        assert_eq!(d.complex().counts(), (16, 112, 112));
        let cert = validate(d.complex()).unwrap();
        assert_eq!(cert.euler_characteristic, 16);
        let count = |f: fn(&FiberCell) -> bool| d.face_cells().iter().filter(|c| f(c)).count();
        assert_eq!(count(|c| matches!(c, FiberCell::P(..))), 21);
        assert_eq!(count(|c| matches!(c, FiberCell::PStar(..))), 21);
        assert_eq!(count(|c| matches!(c, FiberCell::Q(..))), 42);
        assert_eq!(count(|c| matches!(c, FiberCell::R(..))), 28);
    }

    #[test]
    fn p_faces_are_symmetric() {
        let (p, l) = (GeomElement::point(4), GeomElement::line(1));
        assert_eq!(FiberCell::p_face(p, l), FiberCell::p_face(l, p));
        assert_eq!(FiberCell::p_star_face(p, l), FiberCell::p_star_face(l, p));
    }

    #[test]
    fn cyclic_orders() {
        for e in all_elements() {
            let (f, b) = (CyclicOrder3::forward(e), CyclicOrder3::backward(e));
            assert_ne!(f, b);
            let [x, y, z] = f.elements();
            assert_eq!(CyclicOrder3::new(y, z, x), f);
            assert_eq!(CyclicOrder3::new(z, y, x), b);
        }
    }

    #[test]
    fn labels_are_readable() {
        let e = GeomElement::point(4);
        assert_eq!(FiberCell::R(e, CyclicOrder3::forward(e)).to_string(), "R(P4;L1,L2,L3)");
        assert_eq!(FiberCell::DStar(e).to_string(), "D*(P4)");
    }

    #[test]
    fn identity_acts_trivially() {
        let pgl = shared_action();
        let c = pgl.dual.complex();
        for v in 0..16 {
            assert_eq!(pgl.action.vertex_image(0, v), v);
        }
        for e in 0..112 {
            assert_eq!(pgl.action.edge_image(0, e), SignedEdge::new(e, true));
            assert_eq!(pgl.action.face_image(0, e).face, e);
        }
        assert!(validate(c).is_ok());
    }

    #[test]
    fn orbit_report_passes() {
        for a in verify_orbit_decomposition(shared_action()) {
            assert!(a.pass, "{a}");
        }
    }

    #[test]
    fn vertex_orbits() {
        assert_eq!(vertex_orbit_count(&Subgroup::trivial()), 16);
        assert_eq!(vertex_orbit_count(&fano::sylow2_d16(&fano::default_flag()).unwrap()), 4);
        assert_eq!(vertex_orbit_count(&Subgroup::full()), 2);
    }

    #[test]
    fn default_quotient() {
        let q = quotient_by_d16(&fano::default_flag()).unwrap();
        assert_eq!(q.complex.counts(), (4, 18, 15));
        assert_eq!(q.complex.euler_characteristic(), 1);
    }
}
