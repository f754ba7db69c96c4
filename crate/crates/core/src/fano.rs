//! The Fano plane `PG(2, 2)` and its extended automorphism group.
//!
//! Points and lines are both nonzero bit-vectors of length 3; over the
//! 2-element field a nonzero vector is its own projective class, so no
//! normalisation is needed. A point `p` lies on a line `l` iff `p · l = 0`.
//!
//! The group of collineations and correlations is modelled as
//! `GL3(2) ⋊ ⟨τ⟩` where `τ` is the standard correlation swapping the point
//! and the line with equal coordinates. It has order 336.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FanoError {
    #[error("not incident: {0} and {1}")]
    NotIncident(GeomElement, GeomElement),
    #[error("{0} is not a point")]
    NotAPoint(GeomElement),
    #[error("singular matrix {0:?}")]
    Singular([u8; 3]),
    #[error("invalid element label `{0}`")]
    BadLabel(String),
    #[error("element set is not a group: {0}")]
    NotAGroup(&'static str),
    #[error("no correlation swapping {0} and {1} normalizes the flag stabilizer")]
    NoSylowCorrelation(GeomElement, GeomElement),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    Point,
    Line,
}

impl Kind {
    pub fn dual(self) -> Kind {
        match self {
            Kind::Point => Kind::Line,
            Kind::Line => Kind::Point,
        }
    }
}

/// A point or a line of the Fano plane.
///
/// `coords` packs homogeneous coordinates `(x, y, z)` as `4x + 2y + z`, so it
/// ranges over `1..=7`. Ordering is `(kind, coords)`, points first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeomElement {
    kind: Kind,
    coords: u8,
}

impl GeomElement {
    pub fn new(kind: Kind, coords: u8) -> Option<GeomElement> {
        (1..=7).contains(&coords).then_some(GeomElement { kind, coords })
    }

    pub fn point(coords: u8) -> GeomElement {
        GeomElement::new(Kind::Point, coords).expect("point coordinates in 1..=7")
    }

    pub fn line(coords: u8) -> GeomElement {
        GeomElement::new(Kind::Line, coords).expect("line coordinates in 1..=7")
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn coords(self) -> u8 {
        self.coords
    }

    pub fn is_point(self) -> bool {
        self.kind == Kind::Point
    }

    /// Dense index: points `0..7`, lines `7..14`.
    pub fn index(self) -> usize {
        let base = match self.kind {
            Kind::Point => 0,
            Kind::Line => 7,
        };
        base + self.coords as usize - 1
    }

    pub fn from_index(i: usize) -> GeomElement {
        assert!(i < 14, "geometry index out of range");
        if i < 7 {
            GeomElement::point(i as u8 + 1)
        } else {
            GeomElement::line(i as u8 - 6)
        }
    }

    /// The element with the same coordinates and the other kind.
    pub fn dual(self) -> GeomElement {
        GeomElement { kind: self.kind.dual(), coords: self.coords }
    }

    /// The three elements of the other kind incident to `self`, ascending.
    pub fn incident_elements(self) -> [GeomElement; 3] {
        let v: Vec<_> =
            (1..=7).map(|c| GeomElement { kind: self.kind.dual(), coords: c }).filter(|&o| incident(self, o)).collect();
        [v[0], v[1], v[2]]
    }
}

impl fmt::Display for GeomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Point => write!(f, "P{}", self.coords),
            Kind::Line => write!(f, "L{}", self.coords),
        }
    }
}

impl FromStr for GeomElement {
    type Err = FanoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FanoError::BadLabel(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('P') => Kind::Point,
            Some('L') => Kind::Line,
            _ => return Err(bad()),
        };
        let coords: u8 = chars.as_str().parse().map_err(|_| bad())?;
        GeomElement::new(kind, coords).ok_or_else(bad)
    }
}

impl Serialize for GeomElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeomElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn parity(x: u8) -> u8 {
    (x.count_ones() & 1) as u8
}

/// All 14 elements, points then lines.
pub fn all_elements() -> Vec<GeomElement> {
    (0..14).map(GeomElement::from_index).collect()
}

pub fn points() -> Vec<GeomElement> {
    (1..=7).map(GeomElement::point).collect()
}

pub fn lines() -> Vec<GeomElement> {
    (1..=7).map(GeomElement::line).collect()
}

/// Elements of different kinds with vanishing bit-dot-product.
pub fn incident(a: GeomElement, b: GeomElement) -> bool {
    a.kind != b.kind && parity(a.coords & b.coords) == 0
}

/// 3×3 matrix over the 2-element field. Row `i` is packed like a coordinate
/// vector: bit 2 is column 0. Derived ordering is row-major lexicographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitMatrix3 {
    rows: [u8; 3],
}

impl BitMatrix3 {
    pub const IDENTITY: BitMatrix3 = BitMatrix3 { rows: [0b100, 0b010, 0b001] };

    pub fn from_rows(rows: [u8; 3]) -> BitMatrix3 {
        BitMatrix3 { rows: rows.map(|r| r & 0b111) }
    }

    pub fn rows(&self) -> [u8; 3] {
        self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        (self.rows[i] >> (2 - j)) & 1
    }

    pub fn to_array(&self) -> [[u8; 3]; 3] {
        let mut out = [[0u8; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.entry(i, j);
            }
        }
        out
    }

    pub fn from_array(a: [[u8; 3]; 3]) -> BitMatrix3 {
        let mut rows = [0u8; 3];
        for i in 0..3 {
            for j in 0..3 {
                rows[i] |= (a[i][j] & 1) << (2 - j);
            }
        }
        BitMatrix3 { rows }
    }

    pub fn apply(&self, v: u8) -> u8 {
        (0..3).fold(0, |acc, i| acc | (parity(self.rows[i] & v) << (2 - i)))
    }

    pub fn transpose(&self) -> BitMatrix3 {
        let mut a = [[0u8; 3]; 3];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.entry(j, i);
            }
        }
        BitMatrix3::from_array(a)
    }

    pub fn mul(&self, other: &BitMatrix3) -> BitMatrix3 {
        let t = other.transpose();
        let mut rows = [0u8; 3];
        for i in 0..3 {
            for j in 0..3 {
                rows[i] |= parity(self.rows[i] & t.rows[j]) << (2 - j);
            }
        }
        BitMatrix3 { rows }
    }

    pub fn det(&self) -> u8 {
        let m = |i, j| self.entry(i, j);
        (m(0, 0) & (m(1, 1) & m(2, 2) ^ m(1, 2) & m(2, 1)))
            ^ (m(0, 1) & (m(1, 0) & m(2, 2) ^ m(1, 2) & m(2, 0)))
            ^ (m(0, 2) & (m(1, 0) & m(2, 1) ^ m(1, 1) & m(2, 0)))
    }

    pub fn is_invertible(&self) -> bool {
        self.det() == 1
    }

    pub fn inverse(&self) -> Option<BitMatrix3> {
        if !self.is_invertible() {
            return None;
        }
        // adjugate equals the inverse when det = 1
        let m = |i: usize, j: usize| self.entry(i % 3, j % 3);
        let mut a = [[0u8; 3]; 3];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = m(j + 1, i + 1) & m(j + 2, i + 2) ^ m(j + 1, i + 2) & m(j + 2, i + 1);
            }
        }
        Some(BitMatrix3::from_array(a))
    }

    /// Inverse-transpose, the action of a collineation on line coordinates.
    pub fn contragredient(&self) -> BitMatrix3 {
        self.inverse().expect("invertible matrix").transpose()
    }
}

/// An element `(M, ε)` of `GL3(2) ⋊ ⟨τ⟩`.
///
/// Ordering is `(duality, matrix)`; collineations sort first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroupElement", into = "RawGroupElement")]
pub struct GroupElement {
    duality: bool,
    matrix: BitMatrix3,
}

#[derive(Serialize, Deserialize)]
struct RawGroupElement {
    matrix: [[u8; 3]; 3],
    duality: u8,
}

impl TryFrom<RawGroupElement> for GroupElement {
    type Error = FanoError;

    fn try_from(raw: RawGroupElement) -> Result<Self, Self::Error> {
        if raw.duality > 1 || raw.matrix.iter().flatten().any(|&b| b > 1) {
            return Err(FanoError::BadLabel("entries must be 0 or 1".into()));
        }
        GroupElement::new(BitMatrix3::from_array(raw.matrix), raw.duality == 1)
    }
}

impl From<GroupElement> for RawGroupElement {
    fn from(g: GroupElement) -> Self {
        RawGroupElement { matrix: g.matrix.to_array(), duality: g.duality as u8 }
    }
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { duality: false, matrix: BitMatrix3::IDENTITY };

    /// The standard correlation `τ`.
    pub const TAU: GroupElement = GroupElement { duality: true, matrix: BitMatrix3::IDENTITY };

    pub fn new(matrix: BitMatrix3, duality: bool) -> Result<GroupElement, FanoError> {
        if !matrix.is_invertible() {
            return Err(FanoError::Singular(matrix.rows));
        }
        Ok(GroupElement { duality, matrix })
    }

    pub fn matrix(&self) -> BitMatrix3 {
        self.matrix
    }

    pub fn is_correlation(&self) -> bool {
        self.duality
    }

    /// `(M, ε)·(N, δ) = (M·φ^ε(N), ε ⊕ δ)` with `φ` the inverse-transpose.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let n = if self.duality { other.matrix.contragredient() } else { other.matrix };
        GroupElement { duality: self.duality ^ other.duality, matrix: self.matrix.mul(&n) }
    }

    pub fn inverse(&self) -> GroupElement {
        // (M, 1)⁻¹ = (φ(M⁻¹), 1) = (Mᵀ, 1)
        let matrix = if self.duality {
            self.matrix.transpose()
        } else {
            self.matrix.inverse().expect("group elements are invertible")
        };
        GroupElement { duality: self.duality, matrix }
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut n = 1;
        while x != GroupElement::IDENTITY {
            x = x.compose(self);
            n += 1;
        }
        n
    }

    /// `(M, 0)` maps point `p ↦ Mp`, line `l ↦ M⁻ᵀl`; `(M, 1)` is `(M, 0)∘τ`.
    pub fn act(&self, e: GeomElement) -> GeomElement {
        let kind = if self.duality { e.kind.dual() } else { e.kind };
        let coords = match kind {
            Kind::Point => self.matrix.apply(e.coords),
            Kind::Line => self.matrix.contragredient().apply(e.coords),
        };
        GeomElement { kind, coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.matrix.rows;
        write!(f, "({:03b}/{:03b}/{:03b},{})", r[0], r[1], r[2], self.duality as u8)
    }
}

/// `g · e`.
pub fn act(g: &GroupElement, e: GeomElement) -> GeomElement {
    g.act(e)
}

/// All 336 elements, sorted.
pub fn full_group() -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(336);
    for duality in [false, true] {
        for bits in 0u16..512 {
            let m = BitMatrix3::from_rows([(bits >> 6) as u8, (bits >> 3) as u8, bits as u8]);
            if m.is_invertible() {
                out.push(GroupElement { duality, matrix: m });
            }
        }
    }
    out
}

/// The 168 collineations.
pub fn collineation_group() -> Vec<GroupElement> {
    full_group().into_iter().filter(|g| !g.duality).collect()
}

/// An incident point–line pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Flag {
    point: GeomElement,
    line: GeomElement,
}

impl Flag {
    pub fn new(point: GeomElement, line: GeomElement) -> Result<Flag, FanoError> {
        if !point.is_point() {
            return Err(FanoError::NotAPoint(point));
        }
        if !incident(point, line) {
            return Err(FanoError::NotIncident(point, line));
        }
        Ok(Flag { point, line })
    }

    pub fn point(&self) -> GeomElement {
        self.point
    }

    pub fn line(&self) -> GeomElement {
        self.line
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.point, self.line)
    }
}

/// Parses `P1,L6` or `(P1,L6)`.
impl FromStr for Flag {
    type Err = FanoError;

    fn from_str(s: &str) -> Result<Flag, FanoError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner.split_once(',').ok_or_else(|| FanoError::BadLabel(s.to_string()))?;
        Flag::new(a.trim().parse()?, b.trim().parse()?)
    }
}

/// All 21 flags in ascending order.
pub fn all_flags() -> Vec<Flag> {
    let mut out = Vec::with_capacity(21);
    for p in points() {
        for l in lines() {
            if incident(p, l) {
                out.push(Flag { point: p, line: l });
            }
        }
    }
    out
}

/// The lexicographically least flag.
pub fn default_flag() -> Flag {
    all_flags()[0]
}

/// A finite set of group elements certified closed under composition and
/// inverses at construction. Elements are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn new(elements: impl IntoIterator<Item = GroupElement>) -> Result<Subgroup, FanoError> {
        let set: BTreeSet<GroupElement> = elements.into_iter().collect();
        if !set.contains(&GroupElement::IDENTITY) {
            return Err(FanoError::NotAGroup("missing identity"));
        }
        for a in &set {
            if !set.contains(&a.inverse()) {
                return Err(FanoError::NotAGroup("not closed under inverses"));
            }
            for b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(FanoError::NotAGroup("not closed under composition"));
                }
            }
        }
        Ok(Subgroup { elements: set.into_iter().collect() })
    }

    /// Closure of a generating set.
    pub fn generated_by(gens: &[GroupElement]) -> Subgroup {
        let mut set: BTreeSet<GroupElement> = BTreeSet::from([GroupElement::IDENTITY]);
        let mut frontier = vec![GroupElement::IDENTITY];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose(g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { elements: set.into_iter().collect() }
    }

    pub fn trivial() -> Subgroup {
        Subgroup { elements: vec![GroupElement::IDENTITY] }
    }

    pub fn full() -> Subgroup {
        Subgroup { elements: full_group() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Dihedral of order `2n` (`n ≥ 3`): a rotation `r` of order `n` and an
    /// involution `s ∉ ⟨r⟩` with `s r s = r⁻¹`.
    pub fn is_dihedral(&self) -> bool {
        let order = self.order();
        if !order.is_multiple_of(2) || order < 6 {
            return false;
        }
        let n = order / 2;
        self.elements.iter().filter(|r| r.order() == n).any(|r| {
            let rot = Subgroup::generated_by(&[*r]);
            self.elements.iter().any(|s| s.order() == 2 && !rot.contains(s) && s.compose(r).compose(s) == r.inverse())
        })
    }

    /// Elements of duality 0.
    pub fn collineations(&self) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|g| !g.duality).collect() }
    }

    pub fn normalizes(&self, g: &GroupElement) -> bool {
        let gi = g.inverse();
        self.elements.iter().all(|h| self.contains(&g.compose(h).compose(&gi)))
    }
}

/// Collineations fixing both members of `flag`.
pub fn flag_stabilizer_d8(flag: &Flag) -> Subgroup {
    let elems =
        collineation_group().into_iter().filter(|g| g.act(flag.point) == flag.point && g.act(flag.line) == flag.line);
    Subgroup::new(elems).expect("stabilizers are subgroups")
}

/// Collineations fixing a point; isomorphic to `S4`.
pub fn point_stabilizer(point: GeomElement) -> Result<Subgroup, FanoError> {
    if !point.is_point() {
        return Err(FanoError::NotAPoint(point));
    }
    let elems = collineation_group().into_iter().filter(|g| g.act(point) == point);
    Ok(Subgroup::new(elems).expect("stabilizers are subgroups"))
}

/// Sylow 2-subgroup containing the flag stabilizer: `D8` together with the
/// least correlation that swaps the flag's point and line and normalizes `D8`.
pub fn sylow2_d16(flag: &Flag) -> Result<Subgroup, FanoError> {
    let d8 = flag_stabilizer_d8(flag);
    let tau = full_group()
        .into_iter()
        .filter(|g| g.duality)
        .find(|g| g.act(flag.point) == flag.line && g.act(flag.line) == flag.point && d8.normalizes(g))
        .ok_or(FanoError::NoSylowCorrelation(flag.point, flag.line))?;
    let mut gens = d8.elements.clone();
    gens.push(tau);
    let d16 = Subgroup::generated_by(&gens);
    if d16.order() != 16 {
        return Err(FanoError::NoSylowCorrelation(flag.point, flag.line));
    }
    Ok(d16)
}

/// Orbit partition of `elems` under `group`. Each orbit is sorted and the
/// orbits are ordered by least member. Orbits are intersected with `elems`.
pub fn orbits(group: &Subgroup, elems: &[GeomElement]) -> Vec<Vec<GeomElement>> {
    let wanted: BTreeSet<GeomElement> = elems.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &e in &wanted {
        if seen.contains(&e) {
            continue;
        }
        let orbit: BTreeSet<GeomElement> =
            group.elements.iter().map(|g| g.act(e)).filter(|x| wanted.contains(x)).collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Sorted orbit sizes.
pub fn orbit_sizes(group: &Subgroup, elems: &[GeomElement]) -> Vec<usize> {
    let mut sizes: Vec<usize> = orbits(group, elems).iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes
}

/// Least representatives of the `D8`-orbits of sizes 1, 2, 4 on points
/// (`p`, `p1`, `p2`) and on lines (`l`, `l1`, `l2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReps {
    pub p: GeomElement,
    pub p1: GeomElement,
    pub p2: GeomElement,
    pub l: GeomElement,
    pub l1: GeomElement,
    pub l2: GeomElement,
}

impl OrbitReps {
    pub fn as_array(&self) -> [GeomElement; 6] {
        [self.p, self.p1, self.p2, self.l, self.l1, self.l2]
    }
}

pub fn orbit_representatives_ppp(flag: &Flag) -> OrbitReps {
    let d8 = flag_stabilizer_d8(flag);
    let rep_of_size = |elems: &[GeomElement], size: usize| {
        orbits(&d8, elems)
            .into_iter()
            .find(|o| o.len() == size)
            .map(|o| o[0])
            .expect("D8 orbits on points and lines have sizes 1, 2, 4")
    };
    let (ps, ls) = (points(), lines());
    OrbitReps {
        p: rep_of_size(&ps, 1),
        p1: rep_of_size(&ps, 2),
        p2: rep_of_size(&ps, 4),
        l: rep_of_size(&ls, 1),
        l1: rep_of_size(&ls, 2),
        l2: rep_of_size(&ls, 4),
    }
}

/// Multiplication table on dense indices, identity at index 0.
///
/// `mul[a * n + b]` is the index of `elements[a]·elements[b]`.
#[derive(Debug, Clone)]
pub struct GroupTable {
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    mul: Vec<u16>,
}

impl GroupTable {
    /// The full group: identity first, then the rest in sorted order.
    pub fn full() -> GroupTable {
        let mut elements = vec![GroupElement::IDENTITY];
        elements.extend(full_group().into_iter().filter(|g| *g != GroupElement::IDENTITY));
        GroupTable::from_elements(elements)
    }

    /// `elements` must be closed under composition and start with the identity.
    pub fn from_elements(elements: Vec<GroupElement>) -> GroupTable {
        assert_eq!(elements.first(), Some(&GroupElement::IDENTITY), "identity must come first");
        let index: HashMap<GroupElement, usize> = elements.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&a.compose(b)] as u16);
            }
        }
        GroupTable { elements, index, mul }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incidence_examples() {
        assert!(incident(GeomElement::point(0b100), GeomElement::line(0b001)));
        assert!(!incident(GeomElement::point(0b100), GeomElement::line(0b100)));
        assert!(!incident(GeomElement::point(3), GeomElement::point(4)));
        let mut count = 0;
        for p in points() {
            for l in lines() {
                // brute-force dot product over explicit coordinates
                let dot: u8 = (0..3).map(|i| ((p.coords >> i) & 1) * ((l.coords >> i) & 1)).sum();
                assert_eq!(incident(p, l), dot.is_multiple_of(2));
                count += usize::from(dot.is_multiple_of(2));
            }
        }
        assert_eq!(count, 21);
        assert_eq!(all_flags().len(), 21);
    }

    #[test]
    fn matrix_inverse() {
        for g in full_group() {
            let m = g.matrix();
            assert_eq!(m.mul(&m.inverse().unwrap()), BitMatrix3::IDENTITY);
        }
        assert!(BitMatrix3::from_rows([1, 1, 1]).inverse().is_none());
    }

    #[test]
    fn group_counts() {
        let g = full_group();
        assert_eq!(g.len(), 2 * (8 - 1) * (8 - 2) * (8 - 4));
        assert_eq!(collineation_group().len(), 168);
        for x in &g {
            assert_eq!(x.compose(&x.inverse()), GroupElement::IDENTITY);
            assert_eq!(x.inverse().compose(x), GroupElement::IDENTITY);
        }
        let mut sorted = g.clone();
        sorted.sort();
        assert_eq!(sorted, g);
    }

    #[test]
    fn identity_and_tau() {
        for e in all_elements() {
            assert_eq!(GroupElement::IDENTITY.act(e), e);
            assert_eq!(GroupElement::TAU.act(e), e.dual());
        }
        assert_eq!(GroupElement::TAU.compose(&GroupElement::TAU), GroupElement::IDENTITY);
    }

    #[test]
    fn correlations_swap_kind() {
        for g in full_group().iter().filter(|g| g.is_correlation()) {
            for p in points() {
                assert_eq!(g.act(p).kind(), Kind::Line);
            }
        }
    }

    #[test]
    fn collineations_transitive_on_flags() {
        let f0 = default_flag();
        let images: BTreeSet<(GeomElement, GeomElement)> =
            collineation_group().iter().map(|g| (g.act(f0.point()), g.act(f0.line()))).collect();
        assert_eq!(images.len(), 21);
    }

    #[test]
    fn flag_subgroups() {
        for f in all_flags() {
            let d8 = flag_stabilizer_d8(&f);
            assert_eq!(d8.order(), 8);
            assert!(!d8.is_abelian());
            assert!(d8.elements().iter().any(|g| g.order() == 4));
            assert!(d8.is_dihedral());
            let d16 = sylow2_d16(&f).unwrap();
            assert_eq!(d16.order(), 16);
            assert!(d16.is_dihedral());
            assert!(d8.is_subgroup_of(&d16));
            assert_eq!(d16.elements().iter().filter(|g| g.is_correlation()).count(), 8);
            assert_eq!(d16.collineations(), d8);
            assert_eq!(orbit_sizes(&d8, &points()), vec![1, 2, 4]);
            assert_eq!(orbit_sizes(&d8, &lines()), vec![1, 2, 4]);
            assert_eq!(orbit_sizes(&d16, &all_elements()), vec![2, 4, 8]);
        }
        for p in points() {
            assert_eq!(point_stabilizer(p).unwrap().order(), 24);
        }
        assert!(point_stabilizer(GeomElement::line(1)).is_err());
    }

    #[test]
    fn invalid_flag() {
        let err = Flag::new(GeomElement::point(4), GeomElement::line(4)).unwrap_err();
        assert!(err.to_string().contains("not incident"));
    }

    #[test]
    fn subgroup_rejects_non_groups() {
        let g = full_group();
        assert!(Subgroup::new([g[1]]).is_err());
        assert!(Subgroup::new([GroupElement::IDENTITY, GroupElement::TAU]).is_ok());
    }

    #[test]
    fn reps_and_pairs() {
        for f in all_flags() {
            let reps = orbit_representatives_ppp(&f);
            assert_eq!(reps.p, f.point());
            assert_eq!(reps.l, f.line());
            let distinct: BTreeSet<_> = reps.as_array().into_iter().collect();
            assert_eq!(distinct.len(), 6);
        }
    }

    #[test]
    fn labels_round_trip() {
        for e in all_elements() {
            assert_eq!(e.to_string().parse::<GeomElement>().unwrap(), e);
        }
        assert!("X3".parse::<GeomElement>().is_err());
        assert!("P8".parse::<GeomElement>().is_err());
        let g = full_group()[200];
        let json = serde_json::to_string(&g).unwrap();
        assert!(json.starts_with("{\"matrix\":[["));
        assert_eq!(serde_json::from_str::<GroupElement>(&json).unwrap(), g);
        assert!(serde_json::from_str::<GroupElement>(r#"{"matrix":[[1,1,1],[1,1,1],[0,0,1]],"duality":0}"#).is_err());
    }
}
