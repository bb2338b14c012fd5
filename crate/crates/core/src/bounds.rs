//! Lower and upper bounds for the largest cone angle admitting a
//! Kähler–Einstein edge metric, derived from α.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::catalog::{CatalogError, Deg7Variant, SurfaceConfig};
use crate::exactmath::{q, InitialSegment, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(u32),
    #[error("beta = {0} is outside (0,1]")]
    Beta(Rational),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// `(0, sup)` or, when `includes_sup`, `(0, sup]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SufficientRange {
    pub sup: Rational,
    pub includes_sup: bool,
}

impl fmt::Display for SufficientRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let close = if self.includes_sup { ']' } else { ')' };
        write!(f, "(0, {}{close}", self.sup)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub value: Rational,
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub config: SurfaceConfig,
    pub tian_interval: SufficientRange,
    pub r_lower: Rational,
    pub berman_lower: Rational,
    pub upper_bound: Option<UpperBound>,
}

/// The β where `α̂ > 2/3`, so that Tian's criterion gives an edge metric.
pub fn tian_sufficient_range(config: SurfaceConfig) -> Result<SufficientRange, BoundsError> {
    let seg = config
        .alpha_hat()
        .initial_segment_above(&q(2, 3))
        .map_err(CatalogError::from)?;
    Ok(match seg {
        InitialSegment::Whole => SufficientRange { sup: Rational::one(), includes_sup: true },
        InitialSegment::UpTo(sup) => SufficientRange { sup, includes_sup: false },
        InitialSegment::Empty => SufficientRange { sup: Rational::zero(), includes_sup: false },
    })
}

pub fn r_lower_bound(config: SurfaceConfig) -> Result<Rational, BoundsError> {
    Ok(tian_sufficient_range(config)?.sup)
}

/// The constant `M` with `α(X, (1−β)D) ≥ min{1, 1/(Mβ)}` in dimension `n`.
pub fn berman_constant(n: u32) -> Result<BigInt, BoundsError> {
    match n {
        0 | 1 => Err(BoundsError::Dimension(n)),
        2 => Ok(BigInt::from(9)),
        3 => Ok(BigInt::from(64)),
        _ => {
            let b = |k: u64| BigInt::from(k);
            let n64 = u64::from(n);
            let two_n_minus_1 = (BigInt::one() << n) - 1u32;
            let e = u32::try_from(n64 * (n64 + 2)).expect("small")
                * u32::try_from(&two_n_minus_1).map_err(|_| BoundsError::Dimension(n))?;
            let factorial: BigInt = (1..=n64 + 2).map(b).product();
            let last = (b(2 * n64 * (n64 + 1)) * factorial).pow(n - 1);
            Ok(b(3).pow(n) * two_n_minus_1.pow(n) * b(n64 + 1).pow(e) * last)
        }
    }
}

pub fn berman_lower_bound(n: u32, beta: &Rational) -> Result<Rational, BoundsError> {
    if !beta.is_positive() || *beta > Rational::one() {
        return Err(BoundsError::Beta(beta.clone()));
    }
    let m = Rational::from_bigint(berman_constant(n)?);
    Ok(Rational::one().min((m * beta).recip().expect("positive")))
}

/// `(n+1)/(nM)`, the lower bound for the cone angle threshold in
/// dimension `n` that follows from the universal α bound.
pub fn berman_r_bound(n: u32) -> Result<Rational, BoundsError> {
    let m = berman_constant(n)?;
    Rational::from_big(BigInt::from(n + 1), BigInt::from(n) * m)
        .map_err(|e| CatalogError::from(e).into())
}

fn upper_bound(config: SurfaceConfig) -> Option<UpperBound> {
    match config {
        SurfaceConfig::Deg8F1 { .. } => Some(UpperBound { value: q(4, 5), source: "F1" }),
        SurfaceConfig::Deg7(Deg7Variant::EdgePointOnC) => {
            Some(UpperBound { value: q(7, 9), source: "degree 7, C through E_1 ∩ L" })
        }
        _ => None,
    }
}

pub fn bound_report(config: SurfaceConfig) -> Result<BoundReport, BoundsError> {
    let tian_interval = tian_sufficient_range(config)?;
    Ok(BoundReport {
        config,
        r_lower: tian_interval.sup.clone(),
        tian_interval,
        berman_lower: berman_r_bound(2)?,
        upper_bound: upper_bound(config),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Deg1Variant, Deg3Variant};
    use SurfaceConfig::*;

    #[test]
    fn tian_ranges() {
        let r = tian_sufficient_range(Deg8F1 { f_tangent: false }).unwrap();
        assert_eq!(r.to_string(), "(0, 3/7)");
        assert_eq!(r_lower_bound(Deg8F1 { f_tangent: true }).unwrap(), q(3, 10));
        assert_eq!(r_lower_bound(Deg9).unwrap(), q(1, 3));
        assert_eq!(r_lower_bound(Deg7(Deg7Variant::RContact2)).unwrap(), q(1, 2));
        assert_eq!(r_lower_bound(Deg7(Deg7Variant::EdgePointOnC)).unwrap(), q(3, 7));
        assert_eq!(r_lower_bound(Deg7(Deg7Variant::L1orL2Tangent)).unwrap(), q(1, 2));
        let all = tian_sufficient_range(Deg1(Deg1Variant::NoCuspidalCurves)).unwrap();
        assert_eq!(all.to_string(), "(0, 1/1]");
        assert_eq!(r_lower_bound(Deg3(Deg3Variant::Generic)).unwrap(), q(1, 1));
    }

    #[test]
    fn berman_values() {
        assert_eq!(berman_lower_bound(2, &q(1, 1)).unwrap(), q(1, 9));
        assert_eq!(berman_lower_bound(2, &q(1, 9)).unwrap(), q(1, 1));
        assert_eq!(berman_lower_bound(3, &q(1, 1)).unwrap(), q(1, 64));
        assert_eq!(berman_r_bound(2).unwrap(), q(1, 6));
        assert_eq!(berman_r_bound(3).unwrap(), q(1, 48));
        assert!(berman_r_bound(1).is_err());
        assert!(berman_lower_bound(2, &q(0, 1)).is_err());
        let ratio = r_lower_bound(Deg8F1 { f_tangent: true }).unwrap() / berman_r_bound(2).unwrap();
        assert_eq!(ratio, q(9, 5));
    }

    #[test]
    fn berman_constant_in_dimension_four() {
        // 3^4 * 15^4 * 5^360 * (40 * 720)^3
        let expected = BigInt::from(81)
            * BigInt::from(50625)
            * BigInt::from(5).pow(360)
            * BigInt::from(28800).pow(3);
        assert_eq!(berman_constant(4).unwrap(), expected);
    }

    #[test]
    fn reports() {
        let r = bound_report(Deg8F1 { f_tangent: true }).unwrap();
        assert_eq!(r.r_lower, q(3, 10));
        assert_eq!(r.upper_bound.unwrap().value, q(4, 5));
        assert_eq!(bound_report(Deg7(Deg7Variant::EdgePointOnC)).unwrap().upper_bound.unwrap().value, q(7, 9));
        assert!(bound_report(Deg5).unwrap().upper_bound.is_none());
        for &c in SurfaceConfig::all() {
            let r = bound_report(c).unwrap();
            assert!(r.berman_lower < r.r_lower && r.r_lower <= q(1, 1), "{c}");
            if let Some(u) = &r.upper_bound {
                assert!(r.r_lower <= u.value);
            }
        }
    }
}
