//! Group presentations of 2-complexes and the tools that identify the group:
//! Smith normal form for the abelianization, Tietze elimination, and
//! Hasselgrove–Leech–Trotter coset enumeration.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cw::{validate, CWComplex2, CwError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("complex is disconnected: vertex `{0}` unreachable from the basepoint")]
    Disconnected(String),
    #[error("basepoint {0} out of range")]
    BadBasepoint(usize),
    #[error(transparent)]
    Cw(#[from] CwError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("relator uses unknown generator {0}")]
    UnknownGenerator(usize),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Letter {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Coset-table column: `2·gen` forward, `2·gen + 1` inverse.
    fn column(self) -> usize {
        2 * self.gen + usize::from(self.inverse)
    }
}

pub type Word = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let mut k = 0;
    while w.len() >= 2 * (k + 1) && w[k] == w[w.len() - 1 - k].inv() {
        k += 1;
    }
    w[k..w.len() - k].to_vec()
}

/// Least rotation of `w` or of its inverse; equal for relators that differ
/// by conjugation and inversion.
fn canonical_relator(w: &[Letter]) -> Word {
    let inv = invert_word(w);
    let mut best = w.to_vec();
    for base in [w, &inv[..]] {
        for k in 0..base.len() {
            let mut r = base.to_vec();
            r.rotate_left(k);
            if r < best {
                best = r;
            }
        }
    }
    best
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.ends_with('\'') && !name.contains(char::is_whitespace) && !name.contains(':')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Relators are stored freely reduced.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation, Pi1Error> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_name(g) {
                return Err(Pi1Error::BadName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(Pi1Error::DuplicateGenerator(g.clone()));
            }
        }
        for l in relators.iter().flatten() {
            if l.gen >= generators.len() {
                return Err(Pi1Error::UnknownGenerator(l.gen));
            }
        }
        let relators = relators.iter().map(|r| free_reduce(r)).collect();
        Ok(Presentation { generators, relators })
    }

    /// Builds from names and relators written as `(generator name, exponent)`
    /// runs, e.g. `[("a", 2), ("b", -1)]`.
    pub fn from_powers(generators: &[&str], relators: &[&[(&str, i64)]]) -> Result<Presentation, Pi1Error> {
        let index: BTreeMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let mut words = Vec::with_capacity(relators.len());
        for r in relators {
            let mut w = Vec::new();
            for &(g, e) in r.iter() {
                let gen = *index.get(g).ok_or_else(|| Pi1Error::BadName(g.to_string()))?;
                w.extend(std::iter::repeat_n(Letter::new(gen, e < 0), e.unsigned_abs() as usize));
            }
            words.push(w);
        }
        Presentation::new(generators.iter().map(|s| s.to_string()).collect(), words)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|l| format!("{}{}", self.generators[l.gen], if l.inverse { "'" } else { "" }))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Relator exponent sums by generator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for l in r {
                let d = if l.inverse { -1 } else { 1 };
                m.data[i * m.cols + l.gen] += d;
            }
        }
        m
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generators.join(" "));
        for r in &self.relators {
            let w = self.format_word(r);
            if w.is_empty() {
                s.push_str("rel:\n");
            } else {
                s.push_str(&format!("rel: {w}\n"));
            }
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

impl FromStr for Presentation {
    type Err = Pi1Error;

    fn from_str(text: &str) -> Result<Presentation, Pi1Error> {
        let err = |line: usize, msg: &str| Pi1Error::Parse { line, msg: msg.to_string() };
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                if generators.is_some() {
                    return Err(err(i + 1, "repeated `gens:` line"));
                }
                generators = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let gens = generators.as_ref().ok_or_else(|| err(i + 1, "`rel:` before `gens:`"))?;
                let mut w = Vec::new();
                for tok in rest.split_whitespace() {
                    let (name, inverse) = match tok.strip_suffix('\'') {
                        Some(n) => (n, true),
                        None => (tok, false),
                    };
                    let gen = gens
                        .iter()
                        .position(|g| g == name)
                        .ok_or_else(|| err(i + 1, &format!("unknown generator `{name}`")))?;
                    w.push(Letter::new(gen, inverse));
                }
                relators.push(w);
            } else {
                return Err(err(i + 1, "expected `gens:` or `rel:`"));
            }
        }
        let generators = generators.ok_or_else(|| err(0, "missing `gens:` line"))?;
        Presentation::new(generators, relators)
    }
}

/// `Dbar_p''` becomes `Dbar_p2`: each run of primes turns into its length.
fn generator_name(label: &str) -> String {
    let mut out = String::new();
    let mut primes = 0;
    for ch in label.chars().chain(std::iter::once('\0')) {
        if ch == '\'' {
            primes += 1;
            continue;
        }
        if primes > 0 {
            out.push_str(&primes.to_string());
            primes = 0;
        }
        match ch {
            '\0' => {}
            ':' => out.push('_'),
            c if c.is_whitespace() => out.push('_'),
            c => out.push(c),
        }
    }
    out
}

/// Spanning-tree presentation of π₁ at `basepoint`.
///
/// The tree is grown breadth-first, scanning each vertex's edges in label
/// order. Generators are the remaining edges in label order; each face
/// contributes its boundary word with tree edges deleted.
pub fn presentation_from_complex(c: &CWComplex2, basepoint: usize) -> Result<Presentation, Pi1Error> {
    validate(c)?;
    let (nv, ne, _) = c.counts();
    if basepoint >= nv {
        return Err(Pi1Error::BadBasepoint(basepoint));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, e) in c.edges().iter().enumerate() {
        incident[e.src].push(i);
        if e.dst != e.src {
            incident[e.dst].push(i);
        }
    }
    for list in &mut incident {
        list.sort_by(|&a, &b| c.edges()[a].label.cmp(&c.edges()[b].label));
    }
    let mut visited = vec![false; nv];
    let mut tree = vec![false; ne];
    let mut queue = VecDeque::from([basepoint]);
    visited[basepoint] = true;
    while let Some(v) = queue.pop_front() {
        for &i in &incident[v] {
            let e = &c.edges()[i];
            let other = if e.src == v { e.dst } else { e.src };
            if !visited[other] {
                visited[other] = true;
                tree[i] = true;
                queue.push_back(other);
            }
        }
    }
    if let Some(v) = visited.iter().position(|&b| !b) {
        return Err(Pi1Error::Disconnected(c.vertices()[v].clone()));
    }

    let mut gens: Vec<usize> = (0..ne).filter(|&i| !tree[i]).collect();
    gens.sort_by(|&a, &b| c.edges()[a].label.cmp(&c.edges()[b].label));
    let gen_of: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(g, &e)| (e, g)).collect();
    let relators = c
        .faces()
        .iter()
        .map(|f| f.boundary.iter().filter_map(|s| gen_of.get(&s.edge).map(|&g| Letter::new(g, !s.forward))).collect())
        .collect();
    let names: Vec<String> = gens.iter().map(|&e| generator_name(&c.edges()[e].label)).collect();
    Presentation::new(names, relators)
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().map(Into::into).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *out.at(i, j) += prod;
                }
            }
        }
        out
    }

    /// Exact determinant by rational elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<BigRational> = self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = a[c * n + c].clone();
            det *= &pivot;
            for r in c + 1..n {
                let f = &a[r * n + c] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let d = &f * &a[c * n + j];
                    a[r * n + j] -= d;
                }
            }
        }
        det.to_integer()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let d = k * self.get(src, j);
            *self.at(dst, j) += d;
        }
    }

    /// `col[dst] += k · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let d = k * self.get(i, src);
            *self.at(i, dst) += d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            *self.at(i, j) = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U · m · V = S` with `S` diagonal and `d₁ | d₂ | …`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
}

impl SmithForm {
    /// Re-checks every certificate property against `m`.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let det_unit = |x: &IntMatrix| x.det().abs().is_one();
        let product = self.u.mul(m).mul(&self.v);
        let mut diag_ok = true;
        for i in 0..self.s.rows {
            for j in 0..self.s.cols {
                let expected = if i == j { self.diagonal[i].clone() } else { BigInt::zero() };
                diag_ok &= *self.s.get(i, j) == expected;
            }
        }
        let chain =
            self.diagonal.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
        let nonneg = self.diagonal.iter().all(|d| !d.is_negative());
        product == self.s && diag_ok && chain && nonneg && det_unit(&self.u) && det_unit(&self.v)
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !s.get(i, j).is_zero())
                .min_by(|&(a, b), &(x, y)| s.get(a, b).abs().cmp(&s.get(x, y).abs()));
            let Some((pi, pj)) = pivot else { break };
            if pi != t {
                s.swap_rows(pi, t);
                u.swap_rows(pi, t);
            }
            if pj != t {
                s.swap_cols(pj, t);
                v.swap_cols(pj, t);
            }
            let p = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = -(s.get(i, t) / &p);
                if !q.is_zero() {
                    s.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = -(s.get(t, j) / &p);
                if !q.is_zero() {
                    s.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match bad_row {
                Some(i) => {
                    s.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    let diagonal = (0..r.min(c)).map(|i| s.get(i, i).clone()).collect();
    SmithForm { diagonal, u, v, s }
}

/// Abelianization as `Z^free_rank ⊕ ⊕ Z/factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl Abelianization {
    /// `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.factors.iter().product())
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() + self.free_rank <= 1
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let m = p.exponent_matrix();
    let snf = smith_normal_form(&m);
    let rank = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
    let factors = snf.diagonal.into_iter().filter(|d| d > &BigInt::one()).collect();
    Abelianization { factors, free_rank: p.generators.len() - rank }
}

/// Result of a coset enumeration over the trivial subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Enumeration {
    /// The table closed; `order` live cosets out of `defined` ever created.
    Order {
        order: usize,
        defined: usize,
    },
    Overflow,
    Cancelled,
}

impl Enumeration {
    pub fn order(&self) -> Option<usize> {
        match self {
            Enumeration::Order { order, .. } => Some(*order),
            _ => None,
        }
    }
}

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;
const UNDEF: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    max: usize,
    queue: Vec<usize>,
}

struct Overflow;

impl CosetTable {
    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.cols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.cols + x] = d;
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), Overflow> {
        if self.len() >= self.max {
            return Err(Overflow);
        }
        let d = self.len();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, mut k: usize) -> usize {
        let mut root = k;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                let fx = self.get(f1, x ^ 1);
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else if fx != UNDEF {
                    self.merge(e1, fx);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), Overflow> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.get(f, w[i as usize]) != UNDEF {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j as usize] ^ 1) != UNDEF {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// HLT enumeration of the cosets of the trivial subgroup, creating at most
/// `max_cosets` cosets. `cancel` is polled once per coset row.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize, cancel: Option<&AtomicBool>) -> Enumeration {
    let cols = 2 * p.generators.len();
    if cols == 0 {
        return Enumeration::Order { order: 1, defined: 1 };
    }
    let relators: Vec<Vec<usize>> =
        p.relators.iter().map(|r| cyclic_reduce(r).iter().map(|l| l.column()).collect()).collect();
    let mut t =
        CosetTable { cols, table: vec![UNDEF; cols], parent: vec![0], max: max_cosets.max(1), queue: Vec::new() };
    let mut c = 0;
    while c < t.len() {
        if cancel.is_some_and(|flag| flag.load(Ordering::Relaxed)) {
            return Enumeration::Cancelled;
        }
        if t.parent[c] == c {
            for r in &relators {
                if t.scan_and_fill(c, r).is_err() {
                    return Enumeration::Overflow;
                }
                if t.parent[c] != c {
                    break;
                }
            }
            for x in 0..cols {
                if t.parent[c] == c && t.get(c, x) == UNDEF && t.define(c, x).is_err() {
                    return Enumeration::Overflow;
                }
            }
        }
        c += 1;
    }
    let order = (0..t.len()).filter(|&k| t.parent[k] == k).count();
    Enumeration::Order { order, defined: t.len() }
}

pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;

/// Replaces every occurrence of `gen` by `by` (and its inverse).
fn substitute(w: &[Letter], gen: usize, by: &[Letter]) -> Word {
    let by_inv = invert_word(by);
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        if l.gen == gen {
            out.extend_from_slice(if l.inverse { &by_inv } else { by });
        } else {
            out.push(l);
        }
    }
    cyclic_reduce(&out)
}

/// Cyclic reduction, deletion of trivial and repeated relators.
fn tidy(relators: &mut Vec<Word>) {
    let mut seen = BTreeSet::new();
    relators.retain_mut(|r| {
        *r = cyclic_reduce(r);
        !r.is_empty() && seen.insert(canonical_relator(r))
    });
}

/// Greedy Tietze simplification.
///
/// Each move picks a relator in which some generator occurs exactly once,
/// solves for that generator and substitutes it everywhere. Among all such
/// moves the one giving the shortest total relator length is taken, ties by
/// generator then relator index. Trivial and repeated relators are dropped
/// after every move. Generator and relator counts never increase.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    let mut gens: Vec<usize> = (0..p.generators.len()).collect();
    let mut rels: Vec<Word> = p.relators.clone();
    tidy(&mut rels);
    for _ in 0..budget {
        let mut best: Option<(usize, usize, usize, Vec<Word>)> = None;
        for &g in &gens {
            for (ri, r) in rels.iter().enumerate() {
                if r.iter().filter(|l| l.gen == g).count() != 1 {
                    continue;
                }
                let k = r.iter().position(|l| l.gen == g).unwrap();
                let mut rot = r.clone();
                rot.rotate_left(k);
                // rot = g^e · rest, so g = rest^(-e)
                let rest = &rot[1..];
                let value = if rot[0].inverse { rest.to_vec() } else { invert_word(rest) };
                let next: Vec<Word> =
                    rels.iter().enumerate().filter(|&(j, _)| j != ri).map(|(_, w)| substitute(w, g, &value)).collect();
                let len: usize = next.iter().map(Vec::len).sum();
                if best.as_ref().is_none_or(|b| len < b.0) {
                    best = Some((len, g, ri, next));
                }
            }
        }
        let Some((_, g, _, next)) = best else { break };
        gens.retain(|&x| x != g);
        rels = next;
        tidy(&mut rels);
    }
    let renumber: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let relators =
        rels.into_iter().map(|r| r.into_iter().map(|l| Letter::new(renumber[&l.gen], l.inverse)).collect()).collect();
    let names = gens.iter().map(|&g| p.generators[g].clone()).collect();
    Presentation::new(names, relators).expect("renumbered generators are valid")
}

/// The three-generator one-vertex presentation `⟨a, b, c | a²(ba)², ab(cb)², bc⁵⟩`.
pub fn rose_presentation() -> Presentation {
    Presentation::from_powers(
        &["a", "b", "c"],
        &[
            &[("a", 2), ("b", 1), ("a", 1), ("b", 1), ("a", 1)],
            &[("a", 1), ("b", 1), ("c", 1), ("b", 1), ("c", 1), ("b", 1)],
            &[("b", 1), ("c", 5)],
        ],
    )
    .expect("rose presentation is well formed")
}

/// Exponent of a one-generator, one-relator presentation `⟨x | xⁿ⟩`.
pub fn single_power(p: &Presentation) -> Option<i64> {
    if p.generators.len() != 1 || p.relators.len() != 1 {
        return None;
    }
    let r = &p.relators[0];
    r.iter().all(|l| l.inverse == r[0].inverse).then(|| {
        let n = r.len() as i64;
        if r[0].inverse {
            -n
        } else {
            n
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn reductions() {
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert_eq!(free_reduce(&[a, b, b.inv(), a]), vec![a, a]);
        assert_eq!(cyclic_reduce(&[b, a, a, b.inv()]), vec![a, a]);
        assert_eq!(cyclic_reduce(&[a, a.inv()]), Vec::<Letter>::new());
    }

    #[test]
    fn text_round_trip() {
        let p: Presentation = "gens: a b\nrel: a a b'\n# note\nrel: b b b\n".parse().unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.to_text().parse::<Presentation>().unwrap(), p);
        assert!(matches!("rel: a".parse::<Presentation>(), Err(Pi1Error::Parse { line: 1, .. })));
        assert!(matches!("gens: a\nrel: z".parse::<Presentation>(), Err(Pi1Error::Parse { line: 2, .. })));
    }

    #[test]
    fn names_from_labels() {
        assert_eq!(generator_name("Dbar_p'p''"), "Dbar_p1p2");
        assert_eq!(generator_name("Ebar_pp"), "Ebar_pp");
    }

    #[test]
    fn snf_examples() {
        let id = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(id.diagonal, vec![BigInt::one(); 3]);
        let m = big(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        assert!(s.verify(&m));
        let m = big(&[vec![4, 2, 0], vec![1, 3, 2], vec![0, 1, 5]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(1), BigInt::from(42)]);
        assert_eq!(m.det(), BigInt::from(42));
        assert!(s.verify(&m));
    }

    #[test]
    fn snf_rectangular() {
        let m = big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![0, 0, 0]]);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn abelianization_examples() {
        let free = Presentation::new(vec!["a".into()], vec![]).unwrap();
        assert_eq!(abelianization(&free), Abelianization { factors: vec![], free_rank: 1 });
        let ab = abelianization(&rose_presentation());
        assert_eq!(ab.factors, vec![BigInt::from(42)]);
        assert_eq!(ab.free_rank, 0);
    }

    #[test]
    fn enumeration_examples() {
        let c5 = Presentation::from_powers(&["a"], &[&[("a", 5)]]).unwrap();
        assert_eq!(todd_coxeter(&c5, 100, None).order(), Some(5));
        let s3 = Presentation::from_powers(
            &["a", "b"],
            &[&[("a", 3)], &[("b", 2)], &[("a", 1), ("b", 1), ("a", 1), ("b", 1)]],
        )
        .unwrap();
        assert_eq!(todd_coxeter(&s3, 100, None).order(), Some(6));
        assert_eq!(todd_coxeter(&rose_presentation(), 10_000, None).order(), Some(42));
        let free = Presentation::new(vec!["a".into()], vec![]).unwrap();
        assert_eq!(todd_coxeter(&free, 50, None), Enumeration::Overflow);
        let stop = AtomicBool::new(true);
        assert_eq!(todd_coxeter(&c5, 100, Some(&stop)), Enumeration::Cancelled);
    }

    #[test]
    fn tietze_examples() {
        let p = Presentation::from_powers(&["a", "b"], &[&[("b", 1)]]).unwrap();
        let s = tietze_simplify(&p, DEFAULT_TIETZE_BUDGET);
        assert_eq!(s.generators(), ["a"]);
        assert!(s.relators().is_empty());

        let rose = tietze_simplify(&rose_presentation(), DEFAULT_TIETZE_BUDGET);
        assert_eq!(single_power(&rose).map(i64::abs), Some(42));

        let c42 = Presentation::from_powers(&["a"], &[&[("a", 42)]]).unwrap();
        assert_eq!(tietze_simplify(&c42, DEFAULT_TIETZE_BUDGET), c42);
    }

    #[test]
    fn complex_presentations() {
        let circle = CWComplex2::new(["v"], [("e", "v", "v")], Vec::<(&str, Vec<(&str, bool)>)>::new()).unwrap();
        let p = presentation_from_complex(&circle, 0).unwrap();
        assert_eq!((p.generators().len(), p.relators().len()), (1, 0));
        let disk = CWComplex2::new(["v"], [("e", "v", "v")], [("f", vec![("e", true)])]).unwrap();
        let p = presentation_from_complex(&disk, 0).unwrap();
        assert_eq!(p.relators(), [vec![Letter::new(0, false)]]);
        let split =
            CWComplex2::new(["u", "v"], Vec::<(&str, &str, &str)>::new(), Vec::<(&str, Vec<(&str, bool)>)>::new())
                .unwrap();
        assert_eq!(presentation_from_complex(&split, 0), Err(Pi1Error::Disconnected("v".into())));
    }
}
