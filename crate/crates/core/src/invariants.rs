//! Chern numbers of a ball quotient from its vertex-orbit count, étale
//! descent, and the numerical fake-plane test.

use num_rational::Rational64;
use serde_json::{json, Value};
use thiserror::Error;

use crate::building::is_prime;
use crate::central_fiber;
use crate::fano::Subgroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("N must be at least 1, got {0}")]
    BadOrbitCount(i64),
    #[error("q must be a prime power, got {0}")]
    BadResidueField(i64),
    #[error("not an étale-quotient candidate: degree {degree} does not divide {what}")]
    NotEtaleCandidate { degree: i64, what: &'static str },
    #[error("arithmetic overflow")]
    Overflow,
}

fn is_prime_power(q: i64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q has a least divisor");
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1 && is_prime(p as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformizationData {
    /// Vertex-orbit count.
    pub n: i64,
    /// Residue field size.
    pub q: i64,
}

impl UniformizationData {
    pub fn new(n: i64, q: i64) -> Result<UniformizationData, InvariantsError> {
        if n < 1 {
            return Err(InvariantsError::BadOrbitCount(n));
        }
        if !is_prime_power(q) {
            return Err(InvariantsError::BadResidueField(q));
        }
        Ok(UniformizationData { n, q })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub chi: Rational64,
    pub c1_sq: i64,
    pub c2: i64,
    pub pg: Option<i64>,
    pub q_irr: Option<i64>,
}

impl SurfaceInvariants {
    pub fn chi_is_integral(&self) -> bool {
        self.chi.is_integer()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "chi": self.chi.to_string(),
            "chi_integral": self.chi_is_integral(),
            "c1_sq": self.c1_sq,
            "c2": self.c2,
            "pg": self.pg,
            "q_irr": self.q_irr,
        })
    }
}

/// `χ = N(q−1)²(q+1)/3`, `c₁² = 3N(q−1)²(q+1)`, `c₂ = N(q−1)²(q+1)`.
pub fn proposition_invariants(d: UniformizationData) -> Result<SurfaceInvariants, InvariantsError> {
    let c2 = (d.q - 1)
        .checked_mul(d.q - 1)
        .and_then(|x| x.checked_mul(d.q + 1))
        .and_then(|x| x.checked_mul(d.n))
        .ok_or(InvariantsError::Overflow)?;
    let c1_sq = c2.checked_mul(3).ok_or(InvariantsError::Overflow)?;
    Ok(SurfaceInvariants { chi: Rational64::new(c2, 3), c1_sq, c2, pg: None, q_irr: None })
}

/// Invariants of a free quotient of the given degree.
pub fn etale_descent(cover: &SurfaceInvariants, degree: i64) -> Result<SurfaceInvariants, InvariantsError> {
    let fail = |what| InvariantsError::NotEtaleCandidate { degree, what };
    if degree < 1 {
        return Err(fail("anything"));
    }
    if degree == 1 {
        return Ok(*cover);
    }
    if !cover.chi.is_integer() || cover.chi.to_integer() % degree != 0 {
        return Err(fail("chi"));
    }
    if cover.c1_sq % degree != 0 {
        return Err(fail("c1_sq"));
    }
    if cover.c2 % degree != 0 {
        return Err(fail("c2"));
    }
    Ok(SurfaceInvariants {
        chi: cover.chi / degree,
        c1_sq: cover.c1_sq / degree,
        c2: cover.c2 / degree,
        pg: None,
        q_irr: None,
    })
}

/// Orbits of `h` on the components `Π, Π*, C(e)`.
pub fn vertex_orbit_count(h: &Subgroup) -> usize {
    central_fiber::vertex_orbit_count(h)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FakePlaneVerdict {
    pub is_fake_plane: bool,
    pub reasons: Vec<String>,
}

/// `P_g = q = 0`, `c₁² = 9`, `c₂ = 3`, `χ = 1` and `χ = 1 − q + P_g`.
pub fn fake_plane_check(s: &SurfaceInvariants) -> FakePlaneVerdict {
    let mut reasons = Vec::new();
    match s.pg {
        None => reasons.push("pg unknown".to_string()),
        Some(0) => {}
        Some(_) => reasons.push("P_g≠0".to_string()),
    }
    match s.q_irr {
        None => reasons.push("q unknown".to_string()),
        Some(0) => {}
        Some(_) => reasons.push("q≠0".to_string()),
    }
    if s.c1_sq != 9 {
        reasons.push("c1²≠9".to_string());
    }
    if s.c2 != 3 {
        reasons.push("c2≠3".to_string());
    }
    if s.chi != Rational64::from_integer(1) {
        reasons.push("χ≠1".to_string());
    }
    if let (Some(pg), Some(q)) = (s.pg, s.q_irr) {
        if s.chi != Rational64::from_integer(1 - q + pg) {
            reasons.push("χ≠1−q+P_g".to_string());
        }
    }
    FakePlaneVerdict { is_fake_plane: reasons.is_empty(), reasons }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano;

    fn triple(s: &SurfaceInvariants) -> (Rational64, i64, i64) {
        (s.chi, s.c1_sq, s.c2)
    }

    #[test]
    fn proposition_examples() {
        let r = |n| Rational64::from_integer(n);
        let mumford = proposition_invariants(UniformizationData::new(1, 2).unwrap()).unwrap();
        assert_eq!(triple(&mumford), (r(1), 9, 3));
        let cover = proposition_invariants(UniformizationData::new(16, 2).unwrap()).unwrap();
        assert_eq!(triple(&cover), (r(16), 144, 48));
        let q3 = proposition_invariants(UniformizationData::new(3, 3).unwrap()).unwrap();
        assert_eq!(triple(&q3), (r(16), 144, 48));
        let odd = proposition_invariants(UniformizationData::new(1, 3).unwrap()).unwrap();
        assert!(!odd.chi_is_integral());
    }

    #[test]
    fn data_validation() {
        assert_eq!(UniformizationData::new(0, 2), Err(InvariantsError::BadOrbitCount(0)));
        assert_eq!(UniformizationData::new(1, 6), Err(InvariantsError::BadResidueField(6)));
        assert!(UniformizationData::new(1, 9).is_ok());
    }

    #[test]
    fn descent() {
        let cover = proposition_invariants(UniformizationData::new(16, 2).unwrap()).unwrap();
        let x = etale_descent(&cover, 16).unwrap();
        assert_eq!(triple(&x), (Rational64::from_integer(1), 9, 3));
        assert_eq!(etale_descent(&cover, 1).unwrap(), cover);
        let err = etale_descent(&cover, 5).unwrap_err();
        assert!(err.to_string().starts_with("not an étale-quotient candidate"));
    }

    #[test]
    fn predicate() {
        let one = Rational64::from_integer(1);
        let fake = SurfaceInvariants { chi: one, c1_sq: 9, c2: 3, pg: Some(0), q_irr: Some(0) };
        assert!(fake_plane_check(&fake).is_fake_plane);
        let cover = proposition_invariants(UniformizationData::new(16, 2).unwrap()).unwrap();
        let v = fake_plane_check(&cover);
        assert!(!v.is_fake_plane);
        assert!(v.reasons.contains(&"pg unknown".to_string()));
        let v = fake_plane_check(&SurfaceInvariants { pg: Some(1), q_irr: Some(1), ..fake });
        assert!(v.reasons.contains(&"P_g≠0".to_string()));
    }

    #[test]
    fn orbit_counts_along_chain() {
        let flag = fano::default_flag();
        let chain =
            [Subgroup::trivial(), fano::flag_stabilizer_d8(&flag), fano::sylow2_d16(&flag).unwrap(), Subgroup::full()];
        let counts: Vec<usize> = chain.iter().map(vertex_orbit_count).collect();
        assert_eq!(counts[0], 16);
        assert_eq!(counts[2], 4);
        assert_eq!(counts[3], 2);
        assert!(counts.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn json_shape() {
        let cover = proposition_invariants(UniformizationData::new(16, 2).unwrap()).unwrap();
        let j = cover.to_json();
        assert_eq!(j["chi"], "16");
        assert_eq!(j["c1_sq"], 144);
        assert_eq!(j["c2"], 48);
    }
}
