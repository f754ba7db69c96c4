use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fpp_core::central_fiber::{build_dual_complex, quotient_by_d16};
use fpp_core::cw::{subdivide_edge, CWComplex2};
use fpp_core::fano;
use fpp_core::pi1::{
    abelianization, presentation_from_complex, rose_presentation, single_power, smith_normal_form, tietze_simplify,
    todd_coxeter, Enumeration, IntMatrix, Letter, Presentation, DEFAULT_MAX_COSETS, DEFAULT_TIETZE_BUDGET,
};

fn random_presentation(rng: &mut ChaCha8Rng) -> Presentation {
    let n = rng.gen_range(1..=4);
    let names = (0..n).map(|i| format!("x{i}")).collect();
    let rels = (0..rng.gen_range(0..=4))
        .map(|_| (0..rng.gen_range(1..=8)).map(|_| Letter::new(rng.gen_range(0..n), rng.gen_bool(0.4))).collect())
        .collect();
    Presentation::new(names, rels).unwrap()
}

#[test]
fn tietze_preserves_abelianization_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for i in 0..50 {
        let p = random_presentation(&mut rng);
        let s = tietze_simplify(&p, DEFAULT_TIETZE_BUDGET);
        assert_eq!(abelianization(&s), abelianization(&p), "case {i}: {p}");
        assert!(s.generators().len() <= p.generators().len());
        assert!(s.relators().len() <= p.relators().len());
    }
}

#[test]
fn snf_certificates_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = IntMatrix::from_rows(&rows);
        assert!(smith_normal_form(&m).verify(&m), "{m}");
    }
}

#[test]
fn enumeration_matches_abelianization_on_cyclic_groups() {
    for n in 1..=12 {
        let p = Presentation::from_powers(&["a", "b"], &[&[("a", n)], &[("a", 1), ("b", -1)]]).unwrap();
        assert_eq!(todd_coxeter(&p, 1000, None).order(), Some(n as usize));
        assert_eq!(abelianization(&p).order(), Some(BigInt::from(n)));
    }
}

fn quotient_presentation() -> Presentation {
    let q = quotient_by_d16(&fano::default_flag()).unwrap();
    let base = q.complex.vertex_index(q.computed_label("Pibar").unwrap()).unwrap();
    presentation_from_complex(&q.complex, base).unwrap()
}

#[test]
fn quotient_group_is_cyclic_of_order_42() {
    let p = quotient_presentation();
    assert_eq!((p.generators().len(), p.relators().len()), (15, 15));
    let ab = abelianization(&p);
    assert_eq!(ab.factors, vec![BigInt::from(42)]);
    assert_eq!(ab.free_rank, 0);
    let cells = DEFAULT_MAX_COSETS / (2 * p.generators().len());
    match todd_coxeter(&p, cells, None) {
        Enumeration::Order { order, defined } => {
            assert_eq!(order, 42);
            assert!(defined * 2 * p.generators().len() <= DEFAULT_MAX_COSETS);
        }
        other => panic!("{other:?}"),
    }
    let s = tietze_simplify(&p, DEFAULT_TIETZE_BUDGET);
    assert_eq!(abelianization(&s), ab);
    assert_eq!(todd_coxeter(&s, 10_000, None).order(), Some(42));
}

#[test]
fn presentation_text_round_trip() {
    let p = quotient_presentation();
    assert_eq!(p.to_text().parse::<Presentation>().unwrap(), p);
    let rose = rose_presentation();
    assert_eq!(rose.to_text().parse::<Presentation>().unwrap(), rose);
    assert_eq!(single_power(&tietze_simplify(&rose, DEFAULT_TIETZE_BUDGET)).map(i64::abs), Some(42));
}

#[test]
fn basepoint_does_not_change_homology() {
    let q = quotient_by_d16(&fano::default_flag()).unwrap();
    let reference = abelianization(&presentation_from_complex(&q.complex, 0).unwrap());
    for v in 1..q.complex.vertices().len() {
        assert_eq!(abelianization(&presentation_from_complex(&q.complex, v).unwrap()), reference);
    }
}

#[test]
fn subdivision_preserves_homology() {
    let q = quotient_by_d16(&fano::default_flag()).unwrap();
    let complexes: Vec<CWComplex2> = vec![q.complex.clone(), build_dual_complex().complex().clone()];
    for c in &complexes {
        let before = abelianization(&presentation_from_complex(c, 0).unwrap());
        for label in [c.edges()[0].label.clone(), c.edges()[c.edges().len() - 1].label.clone()] {
            let s = subdivide_edge(c, &label).unwrap();
            let after = abelianization(&presentation_from_complex(&s, 0).unwrap());
            assert_eq!(before, after, "{label}");
        }
    }
}
