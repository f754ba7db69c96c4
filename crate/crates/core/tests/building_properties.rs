#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fpp_core::building::{
    ball, ball_with, canonicalize, canonicalize_integer, orient, triangle_is_circuit, vertex_type, BuildingError,
    LatticeVertex, DEFAULT_RADIUS_CAP,
};
use fpp_core::par::Strategy;

type Mat = [[BigRational; 3]; 3];

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn det(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn random_lattice(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-12..=12)));
        if det(&m) != 0 {
            return m;
        }
    }
}

/// Random column operation in `GL3(Z_(p))`: a swap, a shear, or scaling a
/// column by an integer prime to `p`.
fn column_op(m: &mut Mat, rng: &mut ChaCha8Rng, p: u64) {
    let (a, b) = (rng.gen_range(0..3), rng.gen_range(0..3));
    match rng.gen_range(0..3) {
        0 => {
            for row in m.iter_mut() {
                row.swap(a, b);
            }
        }
        1 if a != b => {
            let k = rat(rng.gen_range(-5..=5));
            for row in m.iter_mut() {
                let add = &row[b] * &k;
                row[a] += add;
            }
        }
        _ => {
            let unit = loop {
                let u: i64 = rng.gen_range(1..=9);
                if !(u as u64).is_multiple_of(p) {
                    break if rng.gen_bool(0.5) { u } else { -u };
                }
            };
            for row in m.iter_mut() {
                row[a] *= rat(unit);
            }
        }
    }
}

#[test]
fn canonical_form_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = 0;
    for _ in 0..1000 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let m = random_lattice(&mut rng);
        let base = canonicalize_integer(m, p).unwrap();
        let mut q: Mat = m.map(|row| row.map(rat));
        for _ in 0..rng.gen_range(1..8) {
            column_op(&mut q, &mut rng, p);
        }
        let k: i32 = rng.gen_range(-3..=3);
        let scale =
            if k >= 0 { rat(p.pow(k as u32) as i64) } else { BigRational::one() / rat(p.pow((-k) as u32) as i64) };
        for x in q.iter_mut().flatten() {
            *x *= &scale;
        }
        assert_eq!(canonicalize(&q, p).unwrap(), base, "p={p} m={m:?} k={k}");
        cases += 1;
    }
    assert_eq!(cases, 1000);
}

#[test]
fn canonical_form_rejects_bad_input() {
    assert_eq!(canonicalize_integer([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 4), Err(BuildingError::NotPrime(4)));
    assert_eq!(canonicalize_integer([[1, 2, 0], [2, 4, 0], [0, 0, 1]], 2), Err(BuildingError::Singular));
    let mut third: Mat = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|r| r.map(rat));
    third[0][0] = BigRational::new(BigInt::one(), BigInt::from(3));
    assert!(matches!(canonicalize(&third, 2), Err(BuildingError::BadDenominator { .. })));
}

#[test]
fn canonical_entries_are_reduced() {
    let b = ball(3, 2).unwrap();
    for v in b.vertices() {
        let h = v.hnf();
        let a = v.diagonal_exponents();
        let pk = |k: u32| BigInt::from(3u64.pow(k));
        assert!((0..3).any(|i| (0..3).any(|j| &h[i][j] % 3 != BigInt::zero())));
        for i in 0..3 {
            assert_eq!(h[i][i], pk(a[i]));
            for j in 0..i {
                assert!(h[i][j].is_zero());
            }
            for j in i + 1..3 {
                assert!(h[i][j] >= BigInt::zero() && h[i][j] < pk(a[i]));
            }
        }
    }
}

#[test]
fn neighbor_counts_and_symmetry() {
    for (p, n) in [(2u64, 14usize), (3, 26), (5, 62)] {
        let o = LatticeVertex::standard(p);
        let ns = o.neighbors_with_codim();
        assert_eq!(ns.len(), n);
        let codim1 = ns.iter().filter(|(_, c)| *c == 1).count();
        assert_eq!(codim1, n / 2);
        for (v, _) in &ns {
            assert!(v.neighbors().contains(&o));
            assert_ne!(vertex_type(v), vertex_type(&o));
        }
    }
}

#[test]
fn radius_two_ball() {
    let b = ball(2, 2).unwrap();
    let deg = b.degrees();
    let interior = b.interior_vertices();
    assert!(!interior.is_empty());
    for &i in &interior {
        assert_eq!(deg[i], 14);
    }
    let per_edge = b.triangles_per_edge();
    let interior_edges = b.interior_edges();
    assert!(!interior_edges.is_empty());
    for e in &interior_edges {
        assert_eq!(per_edge[e], 3, "{e:?}");
    }
    for &t in b.triangles() {
        assert!(triangle_is_circuit(t, &b));
    }
    for &(a, c) in b.edges() {
        let (u, v) = (&b.vertices()[a], &b.vertices()[c]);
        let e = orient(u, v).unwrap();
        assert_eq!((&e.src, &e.dst), (u, v));
        assert_eq!(orient(v, u).unwrap(), e);
        assert_ne!(vertex_type(u), vertex_type(v));
        assert_eq!((vertex_type(v) + 3 - vertex_type(u)) % 3, 1);
    }
}

/// The link of a vertex is the incidence graph of the plane over `F_p`.
#[test]
fn vertex_link_is_the_incidence_graph() {
    for (p, lines) in [(2u64, 7usize), (3, 13)] {
        let b = ball(p, 1).unwrap();
        let o = b.index_of(&LatticeVertex::standard(p)).unwrap();
        let link: BTreeSet<usize> = (0..b.vertices().len()).filter(|&i| i != o).collect();
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, c) in b.edges() {
            if link.contains(&a) && link.contains(&c) {
                adj.entry(a).or_default().push(c);
                adj.entry(c).or_default().push(a);
            }
        }
        let link_edges: usize = adj.values().map(Vec::len).sum::<usize>() / 2;
        assert_eq!(link_edges, lines * (p as usize + 1));
        let mut side = BTreeMap::new();
        for &v in &link {
            side.insert(v, vertex_type(&b.vertices()[v]));
        }
        for (v, ns) in &adj {
            assert_eq!(ns.len(), p as usize + 1);
            for w in ns {
                assert_ne!(side[v], side[w]);
            }
        }
        assert_eq!(b.triangles().len(), link_edges);
    }
}

#[test]
fn small_balls() {
    let b0 = ball(2, 0).unwrap();
    assert_eq!((b0.vertices().len(), b0.edges().len(), b0.triangles().len()), (1, 0, 0));
    let b1 = ball(2, 1).unwrap();
    assert_eq!((b1.vertices().len(), b1.edges().len(), b1.triangles().len()), (15, 35, 21));
    let b3 = ball(3, 1).unwrap();
    assert_eq!(b3.vertices().len(), 27);
    assert!(b3.triangles().iter().all(|&t| triangle_is_circuit(t, &b3)));
    assert_eq!(
        ball(2, DEFAULT_RADIUS_CAP + 1),
        Err(BuildingError::BallTooLarge { radius: DEFAULT_RADIUS_CAP + 1, cap: DEFAULT_RADIUS_CAP })
    );
}

#[test]
fn strategies_agree() {
    for (p, r) in [(2u64, 2u32), (3, 1)] {
        let seq = ball_with(p, r, DEFAULT_RADIUS_CAP, Strategy::Sequential).unwrap();
        let par = ball_with(p, r, DEFAULT_RADIUS_CAP, Strategy::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.to_json().unwrap(), par.to_json().unwrap());
    }
}
