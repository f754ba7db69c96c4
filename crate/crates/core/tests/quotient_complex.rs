use std::collections::BTreeMap;

use fpp_core::central_fiber::{
    build_dual_complex, flag_sweep, quotient_by_d16, quotient_by_d16_with, reference_table, shared_action,
    CentralFiberError, FiberCell,
};
use fpp_core::cw::{self, check_pointwise_fixity, isomorphic_labeled, validate, CWComplex2};
use fpp_core::fano::{self, all_flags, GeomElement, Subgroup};
use fpp_core::par::Strategy;

#[test]
fn dual_complex_round_trips() {
    let c = build_dual_complex().complex().clone();
    assert_eq!(CWComplex2::from_text(&c.to_text()).unwrap(), c);
    assert_eq!(CWComplex2::from_json(&c.to_json()).unwrap(), c);
}

#[test]
fn action_is_homomorphic_in_both_strategies() {
    let a = &shared_action().action;
    assert_eq!(a.order(), 336);
    assert!(a.is_homomorphism(Strategy::Sequential));
    assert!(a.is_homomorphism(Strategy::Parallel));
}

#[test]
fn full_group_is_not_pointwise() {
    let pgl = shared_action();
    assert!(!check_pointwise_fixity(pgl.dual.complex(), &pgl.action));
    let (g, face, alignment) = pgl.rotation_witness().expect("an order-3 element rotates an R face");
    assert_eq!(g.order(), 3);
    assert!(matches!(face, FiberCell::R(..)));
    assert_ne!(alignment.rotation, 0);
}

#[test]
fn table_is_valid() {
    let t = reference_table();
    let cert = validate(&t).unwrap();
    assert_eq!((cert.vertices, cert.edges, cert.faces), (4, 18, 15));
    assert_eq!(cert.euler_characteristic, 1);
}

#[test]
fn every_flag_gives_the_table() {
    let sweep = flag_sweep(Strategy::Parallel);
    assert_eq!(sweep.len(), 21);
    for entry in &sweep {
        assert!(entry.fixity && entry.matches_table, "{entry:?}");
        assert_eq!(entry.counts, (4, 18, 15));
        assert_eq!(entry.euler_characteristic, 1);
    }
    assert_eq!(flag_sweep(Strategy::Sequential), sweep);
}

#[test]
fn dictionary_is_a_bijection() {
    let q = quotient_by_d16(&fano::default_flag()).unwrap();
    let t = reference_table();
    assert_eq!(q.dictionary.len(), 4 + 18 + 15);
    let mut images: Vec<&String> = q.dictionary.values().collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), 37);
    for v in t.vertices() {
        assert!(q.complex.vertex_index(q.computed_label(v).unwrap()).is_some());
    }
}

#[test]
fn wrong_dictionary_is_rejected() {
    let q = quotient_by_d16(&fano::default_flag()).unwrap();
    let mut swapped: BTreeMap<String, String> = q.dictionary.clone();
    let a = swapped["Dbar_pp'"].clone();
    let b = swapped["Dbar_p'p"].clone();
    swapped.insert("Dbar_pp'".into(), b);
    swapped.insert("Dbar_p'p".into(), a);
    assert!(!isomorphic_labeled(&reference_table(), &q.complex, &swapped));
}

#[test]
fn non_sylow_subgroups_fail_fixity() {
    let pgl = shared_action();
    let stab = fano::point_stabilizer(GeomElement::point(1)).unwrap();
    let action = pgl.restrict(&stab).unwrap();
    assert!(!check_pointwise_fixity(pgl.dual.complex(), &action));
    let d8 = fano::flag_stabilizer_d8(&fano::default_flag());
    let action = pgl.restrict(&d8).unwrap();
    assert!(check_pointwise_fixity(pgl.dual.complex(), &action));
    let (q, _) = cw::quotient(pgl.dual.complex(), &action).unwrap();
    assert_eq!(q.counts().0, fpp_core::central_fiber::vertex_orbit_count(&d8));
}

#[test]
fn quotient_respects_flag() {
    let pgl = shared_action();
    for flag in all_flags().into_iter().take(3) {
        let q = quotient_by_d16_with(pgl, &flag).unwrap();
        assert_eq!(q.flag, flag);
        let trivial = pgl.restrict(&Subgroup::trivial()).unwrap();
        assert_eq!(trivial.order(), 1);
    }
    let err = CentralFiberError::FixityFailed(fano::default_flag());
    assert!(err.to_string().contains("pointwise"));
}
