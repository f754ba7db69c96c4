//! Exact combinatorial verification of a 2-adically uniformized fake
//! projective plane.
//!
//! The crate is organised bottom-up:
//!
//! - [`fano`]: the projective plane over the 2-element field, its order-336
//!   group of collineations and correlations, and the flag subgroups
//!   `D8 ⊂ D16` used by the quotient construction.
//! - [`building`]: finite balls in the Bruhat–Tits building of `PGL3(Q_p)`
//!   with lattice-theoretic edge orientation.
//! - [`cw`]: labeled 2-dimensional CW complexes, cellular group actions and
//!   quotients.
//! - [`central_fiber`]: the 16-vertex dual complex, its group action and its
//!   quotient by a Sylow 2-subgroup.
//! - [`pi1`]: presentations, Smith normal form, Tietze simplification and
//!   Todd–Coxeter enumeration.
//! - [`invariants`]: Chern-number formulas and the fake-plane predicate.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and falls back to plain iterators otherwise.

#![allow(clippy::needless_range_loop)]

pub mod building;
pub mod central_fiber;
pub mod cw;
pub mod fano;
pub mod invariants;
pub mod par;
pub mod pi1;
pub mod report;
