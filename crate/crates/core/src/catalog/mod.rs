//! The case analysis of log del Pezzo pairs `(S, (1-β)C)`: hard-coded α̂
//! formulas, the test divisors that realize them, and their re-derivation
//! through the germ engine.

mod blowup;
mod divisors;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use blowup::{blowup_compare, declared_links, unflagged_violations, BlowupComparison, BlowupLink, Ordering};
pub use divisors::{Component, LocalGerm, TestDivisor};

use crate::exactmath::{min_envelope, BetaFraction, ExactError, PiecewiseBetaFunction, Rational};
use crate::germ::GermError;
use crate::lattice::{Kind, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown case id {0}")]
    UnknownCase(String),
    #[error("test divisor {divisor}: {reason}")]
    BadDivisor { divisor: String, reason: String },
    #[error("incompatible blow-up link: {0}")]
    IncompatibleLink(String),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deg7Variant {
    EdgePointOnC,
    L1orL2Tangent,
    RContact3,
    RContact2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deg6Variant {
    LineIntersectionOnC,
    ConicTangentAtLinePoint,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deg4Variant {
    LineIntersectionOnC,
    ConicPairTangent,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deg3Variant {
    EckardtOnC,
    EckardtOffC,
    LineConicTangentOnC,
    CuspMeetsCOnce,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deg2Variant {
    TacnodeOnC,
    TacnodeOffC,
    CuspOnC,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deg1Variant {
    NoCuspidalCurves,
    HasCuspidalCurves,
}

/// A del Pezzo surface `S` with smooth `C ∈ |−K_S|`, up to the
/// coincidences that change α̂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceConfig {
    Deg9,
    Deg8Quadric,
    Deg8F1 { f_tangent: bool },
    Deg7(Deg7Variant),
    Deg6(Deg6Variant),
    Deg5,
    Deg4(Deg4Variant),
    Deg3(Deg3Variant),
    Deg2(Deg2Variant),
    Deg1(Deg1Variant),
}

use SurfaceConfig::*;

const ALL: [SurfaceConfig; 26] = [
    Deg9,
    Deg8Quadric,
    Deg8F1 { f_tangent: true },
    Deg8F1 { f_tangent: false },
    Deg7(Deg7Variant::EdgePointOnC),
    Deg7(Deg7Variant::L1orL2Tangent),
    Deg7(Deg7Variant::RContact3),
    Deg7(Deg7Variant::RContact2),
    Deg6(Deg6Variant::LineIntersectionOnC),
    Deg6(Deg6Variant::ConicTangentAtLinePoint),
    Deg6(Deg6Variant::Generic),
    Deg5,
    Deg4(Deg4Variant::LineIntersectionOnC),
    Deg4(Deg4Variant::ConicPairTangent),
    Deg4(Deg4Variant::Generic),
    Deg3(Deg3Variant::EckardtOnC),
    Deg3(Deg3Variant::EckardtOffC),
    Deg3(Deg3Variant::LineConicTangentOnC),
    Deg3(Deg3Variant::CuspMeetsCOnce),
    Deg3(Deg3Variant::Generic),
    Deg2(Deg2Variant::TacnodeOnC),
    Deg2(Deg2Variant::TacnodeOffC),
    Deg2(Deg2Variant::CuspOnC),
    Deg2(Deg2Variant::Generic),
    Deg1(Deg1Variant::NoCuspidalCurves),
    Deg1(Deg1Variant::HasCuspidalCurves),
];

/// `(p + qβ) / (sβ)` with small integer coefficients.
fn ob(p: i64, q: i64, s: i64) -> BetaFraction {
    BetaFraction::ints(p, q, 0, s).expect("positive denominator")
}

impl SurfaceConfig {
    /// Every case, ordered by degree and then by the order the variants
    /// are listed in.
    pub fn all() -> &'static [SurfaceConfig] {
        &ALL
    }

    pub fn id(&self) -> &'static str {
        match self {
            Deg9 => "deg9",
            Deg8Quadric => "quadric",
            Deg8F1 { f_tangent: true } => "f1-tangent",
            Deg8F1 { f_tangent: false } => "f1-general",
            Deg7(Deg7Variant::EdgePointOnC) => "deg7-edge-point",
            Deg7(Deg7Variant::L1orL2Tangent) => "deg7-l1-tangent",
            Deg7(Deg7Variant::RContact3) => "deg7-r-contact3",
            Deg7(Deg7Variant::RContact2) => "deg7-r-contact2",
            Deg6(Deg6Variant::LineIntersectionOnC) => "deg6-line-point",
            Deg6(Deg6Variant::ConicTangentAtLinePoint) => "deg6-conic-tangent",
            Deg6(Deg6Variant::Generic) => "deg6-generic",
            Deg5 => "deg5",
            Deg4(Deg4Variant::LineIntersectionOnC) => "deg4-line-point",
            Deg4(Deg4Variant::ConicPairTangent) => "deg4-conic-pair",
            Deg4(Deg4Variant::Generic) => "deg4-generic",
            Deg3(Deg3Variant::EckardtOnC) => "deg3-eckardt-on-c",
            Deg3(Deg3Variant::EckardtOffC) => "deg3-eckardt-off-c",
            Deg3(Deg3Variant::LineConicTangentOnC) => "deg3-line-conic-tangent",
            Deg3(Deg3Variant::CuspMeetsCOnce) => "deg3-cusp-meets-c-once",
            Deg3(Deg3Variant::Generic) => "deg3-generic",
            Deg2(Deg2Variant::TacnodeOnC) => "deg2-tacnode-on-c",
            Deg2(Deg2Variant::TacnodeOffC) => "deg2-tacnode-off-c",
            Deg2(Deg2Variant::CuspOnC) => "deg2-cusp-on-c",
            Deg2(Deg2Variant::Generic) => "deg2-generic",
            Deg1(Deg1Variant::NoCuspidalCurves) => "deg1-no-cusp",
            Deg1(Deg1Variant::HasCuspidalCurves) => "deg1-cuspidal",
        }
    }

    /// One-line description of the configuration.
    pub fn summary(&self) -> &'static str {
        match self {
            Deg9 => "P^2, C a smooth cubic",
            Deg8Quadric => "P^1 x P^1",
            Deg8F1 { f_tangent: true } => "F_1, the fibre through Z∩C tangent to C",
            Deg8F1 { f_tangent: false } => "F_1, the fibre through Z∩C transverse to C",
            Deg7(Deg7Variant::EdgePointOnC) => "degree 7, C through E_1∩L or E_2∩L",
            Deg7(Deg7Variant::L1orL2Tangent) => "degree 7, L_1 tangent to C at C∩E_1",
            Deg7(Deg7Variant::RContact3) => "degree 7, R meets C at C∩L with multiplicity 3",
            Deg7(Deg7Variant::RContact2) => "degree 7, none of the above",
            Deg6(Deg6Variant::LineIntersectionOnC) => "degree 6, C through a point where two lines meet",
            Deg6(Deg6Variant::ConicTangentAtLinePoint) => {
                "degree 6, a conic tangent to C where it meets a line"
            }
            Deg6(Deg6Variant::Generic) => "degree 6, none of the above",
            Deg5 => "degree 5",
            Deg4(Deg4Variant::LineIntersectionOnC) => "degree 4, C through a point where two lines meet",
            Deg4(Deg4Variant::ConicPairTangent) => {
                "degree 4, conics C_1+C_2 ~ -K both tangent to C at one point"
            }
            Deg4(Deg4Variant::Generic) => "degree 4, none of the above",
            Deg3(Deg3Variant::EckardtOnC) => "cubic surface, an Eckardt point on C",
            Deg3(Deg3Variant::EckardtOffC) => "cubic surface, Eckardt points, none on C",
            Deg3(Deg3Variant::LineConicTangentOnC) => {
                "cubic surface, a line tangent to a conic at a point of C"
            }
            Deg3(Deg3Variant::CuspMeetsCOnce) => {
                "cubic surface, a cuspidal T in |-K| with T∩C the cusp"
            }
            Deg3(Deg3Variant::Generic) => "cubic surface, none of the above",
            Deg2(Deg2Variant::TacnodeOnC) => "degree 2, a tacnodal curve in |-K| singular on C",
            Deg2(Deg2Variant::TacnodeOffC) => "degree 2, tacnodal curves, none singular on C",
            Deg2(Deg2Variant::CuspOnC) => "degree 2, no tacnodal curves, a cusp on C",
            Deg2(Deg2Variant::Generic) => "degree 2, none of the above",
            Deg1(Deg1Variant::NoCuspidalCurves) => "degree 1, no cuspidal curves in |-K|",
            Deg1(Deg1Variant::HasCuspidalCurves) => "degree 1, a cuspidal curve in |-K|",
        }
    }

    /// `K_S²`.
    pub fn degree(&self) -> u8 {
        match self {
            Deg9 => 9,
            Deg8Quadric | Deg8F1 { .. } => 8,
            Deg7(_) => 7,
            Deg6(_) => 6,
            Deg5 => 5,
            Deg4(_) => 4,
            Deg3(_) => 3,
            Deg2(_) => 2,
            Deg1(_) => 1,
        }
    }

    pub fn lattice(&self) -> Kind {
        match self {
            Deg8Quadric => Kind::Quadric,
            other => Kind::Blowup { degree: other.degree() },
        }
    }

    /// The fractions whose minimum with 1 is α̂, as displayed.
    pub fn alpha_hat_terms(&self) -> Vec<BetaFraction> {
        match self {
            Deg9 => vec![ob(1, 3, 9), ob(1, 0, 3)],
            Deg8Quadric => vec![ob(1, 2, 6)],
            Deg8F1 { f_tangent: true } => vec![ob(1, 2, 8), ob(1, 0, 3)],
            Deg8F1 { f_tangent: false } => vec![ob(1, 1, 5), ob(1, 0, 3)],
            Deg7(Deg7Variant::EdgePointOnC) => vec![ob(1, 1, 5), ob(1, 0, 3)],
            Deg7(Deg7Variant::L1orL2Tangent) => vec![ob(1, 2, 6), ob(1, 0, 3)],
            Deg7(Deg7Variant::RContact3) => vec![ob(1, 3, 7), ob(1, 0, 3)],
            Deg7(Deg7Variant::RContact2) => vec![ob(1, 0, 3)],
            Deg6(Deg6Variant::LineIntersectionOnC) => vec![ob(1, 1, 4)],
            Deg6(Deg6Variant::ConicTangentAtLinePoint) => vec![ob(1, 2, 5), ob(1, 0, 2)],
            Deg6(Deg6Variant::Generic) => vec![ob(1, 0, 2)],
            Deg5 => vec![ob(1, 0, 2)],
            Deg4(Deg4Variant::LineIntersectionOnC) => vec![ob(1, 1, 3)],
            Deg4(Deg4Variant::ConicPairTangent) => vec![ob(1, 2, 4), ob(2, 0, 3)],
            Deg4(Deg4Variant::Generic) => vec![ob(2, 0, 3)],
            Deg3(Deg3Variant::EckardtOnC) => vec![ob(1, 1, 3)],
            Deg3(Deg3Variant::EckardtOffC) => vec![ob(2, 0, 3)],
            Deg3(Deg3Variant::LineConicTangentOnC) => vec![ob(2, 1, 4)],
            Deg3(Deg3Variant::CuspMeetsCOnce) => vec![ob(2, 3, 6), ob(3, 0, 4)],
            Deg3(Deg3Variant::Generic) => vec![ob(3, 0, 4)],
            Deg2(Deg2Variant::TacnodeOnC) => vec![ob(2, 1, 4)],
            Deg2(Deg2Variant::TacnodeOffC) => vec![ob(3, 0, 4)],
            Deg2(Deg2Variant::CuspOnC) => vec![ob(3, 2, 6)],
            Deg2(Deg2Variant::Generic) => vec![ob(5, 0, 6)],
            Deg1(Deg1Variant::NoCuspidalCurves) => vec![],
            Deg1(Deg1Variant::HasCuspidalCurves) => vec![ob(5, 0, 6)],
        }
    }

    /// The hard-coded α̂ formula.
    pub fn alpha_hat(&self) -> PiecewiseBetaFunction {
        let mut terms = vec![BetaFraction::one()];
        terms.extend(self.alpha_hat_terms());
        min_envelope(&terms).expect("catalog formulas have rational crossings")
    }

    pub fn test_divisors(&self) -> Result<Vec<TestDivisor>, CatalogError> {
        divisors::test_divisors(*self)
    }

    /// α̂ re-derived from the test divisors through the germ engine.
    pub fn alpha_engine(&self) -> Result<PiecewiseBetaFunction, CatalogError> {
        let mut f: Option<PiecewiseBetaFunction> = None;
        for d in self.test_divisors()? {
            let g = d.lct_in_t()?;
            f = Some(match f {
                Some(f) => f.min(&g)?,
                None => g,
            });
        }
        Ok(f.expect("every case has the B = C divisor"))
    }

    /// Pairs `(a, b)` of variants of one degree where `a` has the deeper
    /// coincidence, so `α̂(a) ≤ α̂(b)` pointwise.
    pub fn variant_order() -> Vec<(SurfaceConfig, SurfaceConfig)> {
        use Deg2Variant as D2;
        use Deg3Variant as D3;
        use Deg4Variant as D4;
        use Deg6Variant as D6;
        use Deg7Variant as D7;
        vec![
            (Deg8F1 { f_tangent: true }, Deg8F1 { f_tangent: false }),
            (Deg7(D7::EdgePointOnC), Deg7(D7::RContact2)),
            (Deg7(D7::L1orL2Tangent), Deg7(D7::RContact2)),
            (Deg7(D7::RContact3), Deg7(D7::RContact2)),
            (Deg6(D6::LineIntersectionOnC), Deg6(D6::Generic)),
            (Deg6(D6::ConicTangentAtLinePoint), Deg6(D6::Generic)),
            (Deg4(D4::LineIntersectionOnC), Deg4(D4::Generic)),
            (Deg4(D4::ConicPairTangent), Deg4(D4::Generic)),
            (Deg3(D3::EckardtOnC), Deg3(D3::EckardtOffC)),
            (Deg3(D3::EckardtOffC), Deg3(D3::Generic)),
            (Deg3(D3::LineConicTangentOnC), Deg3(D3::Generic)),
            (Deg3(D3::CuspMeetsCOnce), Deg3(D3::Generic)),
            (Deg2(D2::TacnodeOnC), Deg2(D2::TacnodeOffC)),
            (Deg2(D2::TacnodeOffC), Deg2(D2::Generic)),
            (Deg2(D2::CuspOnC), Deg2(D2::Generic)),
            (Deg1(Deg1Variant::HasCuspidalCurves), Deg1(Deg1Variant::NoCuspidalCurves)),
        ]
    }
}

impl fmt::Display for SurfaceConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for SurfaceConfig {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

impl FromStr for SurfaceConfig {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL.iter()
            .find(|c| c.id() == s)
            .copied()
            .ok_or_else(|| CatalogError::UnknownCase(s.to_string()))
    }
}

/// Outcome of comparing a claimed formula with the engine for one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub case: SurfaceConfig,
    pub pass: bool,
    pub claimed: PiecewiseBetaFunction,
    pub engine: PiecewiseBetaFunction,
    /// A β where the two sides differ, on failure.
    pub witness: Option<Rational>,
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "PASS {}  {}", self.case.id(), self.engine.pretty())
        } else {
            let w = self.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
            write!(
                f,
                "FAIL {}  claimed {} but engine gives {} (differ at beta = {w})",
                self.case.id(),
                self.claimed.pretty(),
                self.engine.pretty()
            )
        }
    }
}

/// Compares `claimed` against the engine derivation for `case`.
pub fn verify_against(
    case: SurfaceConfig,
    claimed: &PiecewiseBetaFunction,
) -> Result<CaseResult, CatalogError> {
    let engine = case.alpha_engine()?;
    let witness = claimed.first_difference(&engine)?;
    Ok(CaseResult {
        case,
        pass: witness.is_none(),
        claimed: claimed.clone(),
        engine,
        witness,
    })
}

pub fn verify_case(case: SurfaceConfig) -> Result<CaseResult, CatalogError> {
    verify_against(case, &case.alpha_hat())
}

/// Checks every case; the report keeps the order of [`SurfaceConfig::all`].
pub fn verify_catalog() -> Result<Vec<CaseResult>, CatalogError> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = ALL
            .iter()
            .map(|&c| scope.spawn(move || verify_case(c)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    #[test]
    fn ids_are_unique_and_parse_back() {
        let mut ids: Vec<&str> = SurfaceConfig::all().iter().map(|c| c.id()).collect();
        for c in SurfaceConfig::all() {
            assert_eq!(c.id().parse::<SurfaceConfig>().unwrap(), *c);
        }
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 26);
        assert!("deg10".parse::<SurfaceConfig>().is_err());
    }

    #[test]
    fn displayed_breakpoints() {
        let bp = |c: SurfaceConfig| c.alpha_hat().breakpoints();
        assert_eq!(bp(Deg9), vec![q(1, 6), q(2, 3)]);
        assert_eq!(bp(Deg8Quadric), vec![q(1, 4)]);
        assert_eq!(bp(Deg8F1 { f_tangent: true }), vec![q(1, 6), q(5, 6)]);
        assert_eq!(bp(Deg8F1 { f_tangent: false }), vec![q(1, 4), q(2, 3)]);
        assert_eq!(bp(Deg7(Deg7Variant::RContact3)), vec![q(1, 4), q(4, 9)]);
        assert_eq!(bp(Deg6(Deg6Variant::ConicTangentAtLinePoint)), vec![q(1, 3), q(3, 4)]);
        assert_eq!(bp(Deg4(Deg4Variant::ConicPairTangent)), vec![q(1, 2), q(5, 6)]);
        assert_eq!(bp(Deg3(Deg3Variant::CuspMeetsCOnce)), vec![q(2, 3), q(5, 6)]);
        assert_eq!(bp(Deg2(Deg2Variant::Generic)), vec![q(5, 6)]);
        assert!(bp(Deg1(Deg1Variant::NoCuspidalCurves)).is_empty());
    }

    #[test]
    fn every_case_verifies() {
        for r in verify_catalog().unwrap() {
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn perturbed_formula_fails_with_witness() {
        let wrong = min_envelope(&[BetaFraction::one(), ob(1, 3, 8), ob(1, 0, 3)]).unwrap();
        let r = verify_against(Deg9, &wrong).unwrap();
        assert!(!r.pass);
        let w = r.witness.clone().unwrap();
        assert_ne!(wrong.eval(&w).unwrap(), r.engine.eval(&w).unwrap());
        assert!(r.to_string().starts_with("FAIL deg9"));
    }

    #[test]
    fn variants_are_ordered() {
        for (a, b) in SurfaceConfig::variant_order() {
            assert_eq!(a.degree(), b.degree());
            assert_eq!(a.alpha_hat().exceeds_somewhere(&b.alpha_hat()).unwrap(), None, "{a} vs {b}");
        }
    }
}
