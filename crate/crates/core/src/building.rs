//! Finite balls in the Bruhat–Tits building of `PGL3(Q_p)`.
//!
//! A vertex is a homothety class of `Z_p`-lattices of rank 3 in `Q_p^3`,
//! stored by its canonical basis: an upper-triangular integer matrix whose
//! columns span the lattice, with diagonal `p^{a_i}`, entries of row `i`
//! right of the diagonal reduced into `[0, p^{a_i})`, and scaled so that not
//! every entry is divisible by `p`.
//!
//! Two vertices are adjacent when representatives can be chosen with
//! `L ⊋ M ⊋ pL`. The edge is directed `L → M` when `L/M` is 1-dimensional
//! over `F_p`; with this convention every triangle is a directed 3-cycle.
//!
//! All arithmetic is exact on arbitrary-precision integers.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::par::{self, Strategy};

pub const DEFAULT_RADIUS_CAP: u32 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildingError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("generator matrix is singular")]
    Singular,
    #[error("denominator {denominator} has a prime factor other than {p}")]
    BadDenominator { denominator: BigInt, p: u64 },
    #[error("vertices are not adjacent")]
    NotAdjacent,
    #[error("ball too large: radius {radius} exceeds cap {cap}")]
    BallTooLarge { radius: u32, cap: u32 },
    #[error("vertices belong to different primes")]
    PrimeMismatch,
    #[error("matrix entry does not fit the export format")]
    ExportOverflow,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// p-adic valuation of a nonzero integer.
fn valuation(x: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!x.is_zero());
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
fn rational_valuation(x: &BigRational, p: &BigInt) -> i64 {
    valuation(x.numer(), p) as i64 - valuation(x.denom(), p) as i64
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Canonical representative of a lattice homothety class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVertex {
    p: u64,
    /// Row-major; columns are the basis vectors.
    hnf: [[BigInt; 3]; 3],
}

type Column = [BigInt; 3];

impl LatticeVertex {
    /// The class of `Z_p^3`.
    pub fn standard(p: u64) -> LatticeVertex {
        let mut hnf: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in hnf.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        LatticeVertex { p, hnf }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn hnf(&self) -> &[[BigInt; 3]; 3] {
        &self.hnf
    }

    /// Exponents `a_i` of the diagonal entries `p^{a_i}`.
    pub fn diagonal_exponents(&self) -> [u32; 3] {
        let p = BigInt::from(self.p);
        [0, 1, 2].map(|i| valuation(&self.hnf[i][i], &p))
    }

    fn column(&self, j: usize) -> Column {
        [0, 1, 2].map(|i| self.hnf[i][j].clone())
    }

    /// Entries in row-major order, for export.
    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.hnf.iter().flatten()
    }

    /// Canonical form of the `Z_p`-span of integer columns.
    fn from_integer_columns(p: u64, mut cols: Vec<Column>) -> Result<LatticeVertex, BuildingError> {
        let pb = BigInt::from(p);
        let mut pivots: [Option<Column>; 3] = Default::default();
        // Triangulate bottom-up with column operations invertible over Z_(p).
        for r in (0..3).rev() {
            let pivot_idx = cols
                .iter()
                .enumerate()
                .filter(|(_, c)| !c[r].is_zero())
                .min_by_key(|(_, c)| valuation(&c[r], &pb))
                .map(|(i, _)| i)
                .ok_or(BuildingError::Singular)?;
            let pivot = cols.swap_remove(pivot_idx);
            for c in cols.iter_mut() {
                if c[r].is_zero() {
                    continue;
                }
                let g = pivot[r].gcd(&c[r]);
                let a = &pivot[r] / &g;
                let b = &c[r] / &g;
                for i in 0..3 {
                    c[i] = &a * &c[i] - &b * &pivot[i];
                }
            }
            pivots[r] = Some(pivot);
        }
        let mut h: [Column; 3] = pivots.map(|c| c.expect("pivot per row"));

        // Scale each column by a unit so the diagonal is a pure p-power. Any
        // perturbation in p^{V+1} Z^3 lies in pL and leaves the lattice fixed.
        let exps = [0, 1, 2].map(|i| valuation(&h[i][i], &pb));
        let modulus = pb.pow(exps.iter().sum::<u32>() + 1);
        for j in 0..3 {
            let pa = pb.pow(exps[j]);
            let unit = &h[j][j] / &pa;
            let w = mod_inverse(&unit, &modulus);
            for i in 0..j {
                h[j][i] = (&h[j][i] * &w).mod_floor(&modulus);
            }
            h[j][j] = pa;
        }
        // Reduce row i entries modulo the diagonal p^{a_i}, right to left.
        for j in 1..3 {
            for i in (0..j).rev() {
                let q = h[j][i].div_floor(&h[i][i]);
                if !q.is_zero() {
                    let ci = h[i].clone();
                    for k in 0..=i {
                        h[j][k] -= &q * &ci[k];
                    }
                }
            }
        }
        // Homothety: divide by the largest p-power dividing every entry.
        let shift = h.iter().flatten().filter(|x| !x.is_zero()).map(|x| valuation(x, &pb)).min().expect("nonsingular");
        let scale = pb.pow(shift);
        let mut hnf: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in hnf.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = &h[j][i] / &scale;
            }
        }
        Ok(LatticeVertex { p, hnf })
    }

    /// Inverse of the basis matrix, exact.
    fn inverse_basis(&self) -> [[BigRational; 3]; 3] {
        let m = |i: usize, j: usize| BigRational::from_integer(self.hnf[i % 3][j % 3].clone());
        let det = BigRational::from_integer(self.det());
        let mut out: [[BigRational; 3]; 3] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let cof = m(j + 1, i + 1) * m(j + 2, i + 2) - m(j + 1, i + 2) * m(j + 2, i + 1);
                *x = cof / &det;
            }
        }
        out
    }

    fn det(&self) -> BigInt {
        &self.hnf[0][0] * &self.hnf[1][1] * &self.hnf[2][2]
    }

    /// All adjacent vertices together with `dim_{F_p}(L/M)` where `M` is the
    /// neighbor's representative with `L ⊋ M ⊋ pL`. Codimension 1 means the
    /// edge points away from `self`.
    pub fn neighbors_with_codim(&self) -> Vec<(LatticeVertex, u8)> {
        let p = self.p;
        let pb = BigInt::from(p);
        let basis: Vec<Column> = (0..3).map(|j| self.column(j)).collect();
        let scaled: Vec<Column> = basis.iter().map(|c| c.clone().map(|x| x * &pb)).collect();
        let lift = |w: &[u64; 3]| -> Column {
            let mut out: Column = Default::default();
            for (k, c) in basis.iter().enumerate() {
                for i in 0..3 {
                    out[i] += &c[i] * w[k];
                }
            }
            out
        };
        let mut out = Vec::with_capacity(2 * (p * p + p + 1) as usize);
        for v in projective_points(p) {
            // 1-dimensional W: quotient L/M has dimension 2
            let mut cols = scaled.clone();
            cols.push(lift(&v));
            out.push((Self::from_integer_columns(p, cols).expect("full rank"), 2));
        }
        for a in projective_points(p) {
            // 2-dimensional W = ker(a): quotient dimension 1
            let mut cols = scaled.clone();
            for w in kernel_basis(&a, p) {
                cols.push(lift(&w));
            }
            out.push((Self::from_integer_columns(p, cols).expect("full rank"), 1));
        }
        out.sort();
        out
    }

    pub fn neighbors(&self) -> Vec<LatticeVertex> {
        let mut out: Vec<_> = self.neighbors_with_codim().into_iter().map(|(v, _)| v).collect();
        out.sort();
        out
    }
}

impl fmt::Display for LatticeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.hnf.iter().map(|r| format!("{} {} {}", r[0], r[1], r[2])).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Normalised representatives of the points of `P^2(F_p)`: first nonzero
/// coordinate equal to 1.
fn projective_points(p: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            out.push([1, a, b]);
        }
    }
    for b in 0..p {
        out.push([0, 1, b]);
    }
    out.push([0, 0, 1]);
    out
}

/// Basis of `{x : a·x = 0}` for normalised `a`.
fn kernel_basis(a: &[u64; 3], p: u64) -> [[u64; 3]; 2] {
    let k = a.iter().position(|&x| x != 0).expect("nonzero");
    let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
    others
        .iter()
        .map(|&j| {
            let mut w = [0u64; 3];
            w[j] = 1;
            w[k] = (p - a[j] % p) % p;
            w
        })
        .collect::<Vec<_>>()
        .try_into()
        .expect("two basis vectors")
}

/// Canonical vertex of the lattice spanned by the columns of `generators`.
///
/// Denominators must be powers of `p`.
pub fn canonicalize(generators: &[[BigRational; 3]; 3], p: u64) -> Result<LatticeVertex, BuildingError> {
    if !is_prime(p) {
        return Err(BuildingError::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut shift = 0u32;
    for x in generators.iter().flatten() {
        let d = x.denom();
        let v = valuation(d, &pb);
        if &pb.pow(v) != d {
            return Err(BuildingError::BadDenominator { denominator: d.clone(), p });
        }
        shift = shift.max(v);
    }
    let scale = BigRational::from_integer(pb.pow(shift));
    let cols: Vec<Column> = (0..3).map(|j| [0, 1, 2].map(|i| (&generators[i][j] * &scale).to_integer())).collect();
    if integer_det(&cols).is_zero() {
        return Err(BuildingError::Singular);
    }
    LatticeVertex::from_integer_columns(p, cols)
}

/// Integer-matrix convenience wrapper around [`canonicalize`].
pub fn canonicalize_integer(m: [[i64; 3]; 3], p: u64) -> Result<LatticeVertex, BuildingError> {
    let q = m.map(|row| row.map(|x| BigRational::from_integer(BigInt::from(x))));
    canonicalize(&q, p)
}

fn integer_det(cols: &[Column]) -> BigInt {
    let m = |i: usize, j: usize| &cols[j][i];
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub src: LatticeVertex,
    pub dst: LatticeVertex,
}

impl OrientedEdge {
    /// Always 1: `src/dst` is a line over `F_p`.
    pub fn codim(&self) -> u8 {
        1
    }
}

/// Direct the edge between adjacent `u` and `v`.
///
/// Scales `v` so that `u ⊇ v ⊋ pu`; the arrow leaves `u` iff `u/v` is
/// 1-dimensional.
pub fn orient(u: &LatticeVertex, v: &LatticeVertex) -> Result<OrientedEdge, BuildingError> {
    if u.p != v.p {
        return Err(BuildingError::PrimeMismatch);
    }
    if u == v {
        return Err(BuildingError::NotAdjacent);
    }
    let pb = BigInt::from(u.p);
    let uinv = u.inverse_basis();
    // coordinates of v's basis in u's basis
    let mut x: [[BigRational; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            x[i][j] = (0..3)
                .map(|k| &uinv[i][k] * BigRational::from_integer(v.hnf[k][j].clone()))
                .fold(BigRational::zero(), |a, b| a + b);
        }
    }
    let min_v =
        x.iter().flatten().filter(|q| !q.is_zero()).map(|q| rational_valuation(q, &pb)).min().expect("nonsingular");
    // p^{-min_v} v ⊆ u and ⊄ pu. Index [u : p^{-min_v} v] in log_p:
    let det_val = |w: &LatticeVertex| w.diagonal_exponents().iter().sum::<u32>() as i64;
    let index = det_val(v) - 3 * min_v - det_val(u);
    // pu ⊆ p^{-min_v} v  ⇔  p·v⁻¹u has valuation ≥ min_v entrywise
    let vinv = v.inverse_basis();
    let mut contained = true;
    'outer: for i in 0..3 {
        for j in 0..3 {
            let y = (0..3)
                .map(|k| &vinv[i][k] * BigRational::from_integer(u.hnf[k][j].clone()))
                .fold(BigRational::zero(), |a, b| a + b);
            if !y.is_zero() && rational_valuation(&y, &pb) + 1 < -min_v {
                contained = false;
                break 'outer;
            }
        }
    }
    match (contained, index) {
        (true, 1) => Ok(OrientedEdge { src: u.clone(), dst: v.clone() }),
        (true, 2) => Ok(OrientedEdge { src: v.clone(), dst: u.clone() }),
        _ => Err(BuildingError::NotAdjacent),
    }
}

/// `v_p(det) mod 3`; adjacent vertices have distinct types.
pub fn vertex_type(v: &LatticeVertex) -> u8 {
    (v.diagonal_exponents().iter().sum::<u32>() % 3) as u8
}

/// Vertices within graph distance `radius` of the standard lattice, with
/// every edge and triangle among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingBall {
    p: u64,
    radius: u32,
    vertices: Vec<LatticeVertex>,
    distance: Vec<u32>,
    /// Directed, sorted.
    edges: Vec<(usize, usize)>,
    /// Ascending index triples, sorted.
    triangles: Vec<[usize; 3]>,
}

impl BuildingBall {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertices(&self) -> &[LatticeVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn distance(&self, i: usize) -> u32 {
        self.distance[i]
    }

    pub fn index_of(&self, v: &LatticeVertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.binary_search(&(from, to)).is_ok()
    }

    /// Undirected degree within the ball.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Vertices whose full star lies in the ball.
    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.distance[i] < self.radius).collect()
    }

    /// Edges with an endpoint strictly inside; all their triangles are present.
    pub fn interior_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().filter(|&(a, b)| self.distance[a].min(self.distance[b]) < self.radius).collect()
    }

    /// Number of triangles containing each edge, keyed by the directed edge.
    pub fn triangles_per_edge(&self) -> BTreeMap<(usize, usize), usize> {
        let mut count: BTreeMap<(usize, usize), usize> = self.edges.iter().map(|&e| (e, 0)).collect();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                let key = if self.has_edge(a, b) { (a, b) } else { (b, a) };
                *count.get_mut(&key).expect("triangle edges are ball edges") += 1;
            }
        }
        count
    }

    pub fn to_json(&self) -> Result<serde_json::Value, BuildingError> {
        #[derive(Serialize)]
        struct Export<'a> {
            p: u64,
            radius: u32,
            vertices: Vec<Vec<i64>>,
            edges: Vec<[usize; 2]>,
            triangles: &'a [[usize; 3]],
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.entries().map(|x| x.to_i64().ok_or(BuildingError::ExportOverflow)).collect())
            .collect::<Result<_, _>>()?;
        let export = Export {
            p: self.p,
            radius: self.radius,
            vertices,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            triangles: &self.triangles,
        };
        Ok(serde_json::to_value(export).expect("plain data serializes"))
    }

    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 3] = ["black", "red", "blue"];
        let mut s = String::new();
        writeln!(s, "digraph building_p{}_r{} {{", self.p, self.radius).unwrap();
        for (i, v) in self.vertices.iter().enumerate() {
            let t = vertex_type(v);
            writeln!(s, "  v{i} [label=\"{t}\", color={}];", COLORS[t as usize]).unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(s, "  v{a} -> v{b};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// True iff the three edges of `t` form a directed 3-cycle in `ball`.
pub fn triangle_is_circuit(t: [usize; 3], ball: &BuildingBall) -> bool {
    let [a, b, c] = t;
    let e = |x, y| ball.has_edge(x, y);
    (e(a, b) && e(b, c) && e(c, a)) || (e(a, c) && e(c, b) && e(b, a))
}

pub fn ball(p: u64, radius: u32) -> Result<BuildingBall, BuildingError> {
    ball_with(p, radius, DEFAULT_RADIUS_CAP, Strategy::default())
}

/// Sorted-BFS ball construction. Neighbor expansion of each frontier runs
/// through [`par::map`]; output is identical for every strategy.
pub fn ball_with(p: u64, radius: u32, cap: u32, strategy: Strategy) -> Result<BuildingBall, BuildingError> {
    if !is_prime(p) {
        return Err(BuildingError::NotPrime(p));
    }
    if radius > cap {
        return Err(BuildingError::BallTooLarge { radius, cap });
    }
    let mut dist: HashMap<LatticeVertex, u32> = HashMap::new();
    let mut nbrs: HashMap<LatticeVertex, Vec<(LatticeVertex, u8)>> = HashMap::new();
    let start = LatticeVertex::standard(p);
    dist.insert(start.clone(), 0);
    let mut frontier = vec![start];
    for d in 0..=radius {
        let expanded = par::map(strategy, &frontier, |v| v.neighbors_with_codim());
        let mut next = BTreeSet::new();
        for (v, ns) in frontier.iter().zip(expanded) {
            if d < radius {
                for (w, _) in &ns {
                    if !dist.contains_key(w) {
                        next.insert(w.clone());
                    }
                }
            }
            nbrs.insert(v.clone(), ns);
        }
        for w in &next {
            dist.insert(w.clone(), d + 1);
        }
        frontier = next.into_iter().collect();
    }

    let mut vertices: Vec<LatticeVertex> = dist.keys().cloned().collect();
    vertices.sort();
    let index: HashMap<&LatticeVertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let distance = vertices.iter().map(|v| dist[v]).collect();

    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for (w, codim) in &nbrs[v] {
            if *codim == 1 {
                if let Some(&j) = index.get(w) {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort_unstable();

    let mut undirected: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertices.len()];
    for &(a, b) in &edges {
        undirected[a].insert(b);
        undirected[b].insert(a);
    }
    let mut triangles = BTreeSet::new();
    for &(a, b) in &edges {
        let (x, y) = (a.min(b), a.max(b));
        for &z in undirected[x].intersection(&undirected[y]) {
            if z > y {
                triangles.insert([x, y, z]);
            }
        }
    }
    let triangles: Vec<[usize; 3]> = triangles.into_iter().collect();

    Ok(BuildingBall { p, radius, vertices, distance, edges, triangles })
}

/// Outcome of [`fuzz_canonical_form`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

/// Checks that the canonical form is unchanged by random column operations
/// in `GL3(Z_(p))` (swaps, shears, unit scalings) followed by scaling with
/// `p^k`, `|k| ≤ 3`. Primes are drawn from 2, 3, 5.
pub fn fuzz_canonical_form(cases: usize, seed: u64) -> FuzzSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut passed = 0;
    let mut first_failure = None;
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let m = loop {
            let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-12..=12)));
            let cols: Vec<Column> = (0..3).map(|j| [0, 1, 2].map(|i| BigInt::from(m[i][j]))).collect();
            if !integer_det(&cols).is_zero() {
                break m;
            }
        };
        let mut q = m.map(|row| row.map(rat));
        for _ in 0..rng.gen_range(1..8) {
            let (a, b) = (rng.gen_range(0..3), rng.gen_range(0..3));
            match rng.gen_range(0..3) {
                0 => q.iter_mut().for_each(|row| row.swap(a, b)),
                1 if a != b => {
                    let k = rat(rng.gen_range(-5..=5));
                    for row in q.iter_mut() {
                        let add = &row[b] * &k;
                        row[a] += add;
                    }
                }
                _ => {
                    let u = loop {
                        let u: i64 = rng.gen_range(-9..=9);
                        if u as i128 % p as i128 != 0 {
                            break u;
                        }
                    };
                    q.iter_mut().for_each(|row| row[a] *= rat(u));
                }
            }
        }
        let k: i32 = rng.gen_range(-3..=3);
        let pk = rat(p.pow(k.unsigned_abs()) as i64);
        let scale = if k >= 0 { pk } else { pk.recip() };
        q.iter_mut().flatten().for_each(|x| *x *= &scale);
        let ok = matches!((canonicalize_integer(m, p), canonicalize(&q, p)), (Ok(a), Ok(b)) if a == b);
        if ok {
            passed += 1;
        } else if first_failure.is_none() {
            first_failure = Some(format!("p={p} m={m:?} k={k}"));
        }
    }
    FuzzSummary { seed, cases, passed, first_failure }
}
