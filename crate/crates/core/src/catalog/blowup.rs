use serde::Serialize;

use super::{
    CatalogError, Deg2Variant, Deg3Variant, Deg4Variant,
    SurfaceConfig,
};
use crate::exactmath::Rational;

/// `S_2 → S_1` is the blow-up of `points` points of `C_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlowupLink {
    pub points: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    Holds,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupComparison {
    pub from: SurfaceConfig,
    pub to: SurfaceConfig,
    pub ordering: Ordering,
    pub exceptional: bool,
    /// Open intervals of β where `α̂(S_1) > α̂(S_2)`.
    pub violations: Vec<(Rational, Rational)>,
}

fn is_exceptional(c1: SurfaceConfig, c2: SurfaceConfig) -> bool {
    matches!(
        (c1, c2),
        (SurfaceConfig::Deg9, SurfaceConfig::Deg8F1 { f_tangent: true })
            | (SurfaceConfig::Deg8Quadric, SurfaceConfig::Deg7(_))
    )
}

fn check_link(c1: SurfaceConfig, c2: SurfaceConfig, link: BlowupLink) -> Result<(), CatalogError> {
    use SurfaceConfig::*;
    let err = |why: &str| CatalogError::IncompatibleLink(format!("{c1} -> {c2} ({} points): {why}", link.points));
    if link.points == 0 {
        return if c1 == c2 { Ok(()) } else { Err(err("no points blown up")) };
    }
    if i32::from(c1.degree()) - i32::from(c2.degree()) != i32::from(link.points) {
        return Err(err("degrees do not differ by the number of points"));
    }
    match c2 {
        Deg9 | Deg8Quadric => Err(err("not a blow-up")),
        Deg8F1 { .. } if c1 != Deg9 => Err(err("only the plane blows up to F1")),
        _ => Ok(()),
    }
}

/// Compares `α̂(S_1)` and `α̂(S_2)` pointwise on `(0, 1]`.
pub fn blowup_compare(
    c1: SurfaceConfig,
    c2: SurfaceConfig,
    link: BlowupLink,
) -> Result<BlowupComparison, CatalogError> {
    check_link(c1, c2, link)?;
    let violations = c1.alpha_hat().exceeding_intervals(&c2.alpha_hat())?;
    Ok(BlowupComparison {
        from: c1,
        to: c2,
        ordering: if violations.is_empty() { Ordering::Holds } else { Ordering::Violated },
        exceptional: is_exceptional(c1, c2),
        violations,
    })
}

/// Single-point blow-ups between catalog cases that occur geometrically.
///
/// Deg4 generic → Deg3 Eckardt on C and Deg3 generic → Deg2 tacnode on C
/// are absent: the new configuration on `S_2` always comes from a special
/// configuration on `S_1`.
pub fn declared_links() -> Vec<(SurfaceConfig, SurfaceConfig, BlowupLink)> {
    use SurfaceConfig::*;
    let one = BlowupLink { points: 1 };
    let by_degree = |d: u8| -> Vec<SurfaceConfig> {
        SurfaceConfig::all()
            .iter()
            .copied()
            .filter(|c| c.degree() == d && !matches!(c, Deg8Quadric | Deg8F1 { .. }))
            .collect()
    };
    let f1 = [Deg8F1 { f_tangent: true }, Deg8F1 { f_tangent: false }];
    let mut out: Vec<_> = f1.iter().map(|&c| (Deg9, c, one)).collect();
    for c1 in f1.into_iter().chain([Deg8Quadric]) {
        out.extend(by_degree(7).into_iter().map(|c2| (c1, c2, one)));
    }
    for d in (2..=7).rev() {
        for c1 in by_degree(d) {
            for c2 in by_degree(d - 1) {
                let excluded = matches!(
                    (c1, c2),
                    (Deg4(Deg4Variant::Generic), Deg3(Deg3Variant::EckardtOnC))
                        | (Deg3(Deg3Variant::Generic), Deg2(Deg2Variant::TacnodeOnC))
                );
                if !excluded {
                    out.push((c1, c2, one));
                }
            }
        }
    }
    out
}

/// Links where the ordering fails although neither exceptional case
/// applies: blowing up a special point of `C_1` on a special `S_1`.
pub fn unflagged_violations() -> [(SurfaceConfig, SurfaceConfig); 2] {
    use SurfaceConfig::*;
    [
        (Deg4(Deg4Variant::ConicPairTangent), Deg3(Deg3Variant::EckardtOnC)),
        (Deg3(Deg3Variant::CuspMeetsCOnce), Deg2(Deg2Variant::TacnodeOnC)),
    ]
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Deg6Variant, Deg7Variant};
    use crate::exactmath::q;
    use SurfaceConfig::*;

    fn one() -> BlowupLink {
        BlowupLink { points: 1 }
    }

    #[test]
    fn inflection_blowup_is_exceptional() {
        let r = blowup_compare(Deg9, Deg8F1 { f_tangent: true }, one()).unwrap();
        assert_eq!(r.ordering, Ordering::Violated);
        assert!(r.exceptional);
    }

    #[test]
    fn deg6_generic_to_deg5_holds() {
        let r = blowup_compare(Deg6(Deg6Variant::Generic), Deg5, one()).unwrap();
        assert_eq!(r.ordering, Ordering::Holds);
        assert!(!r.exceptional);
    }

    #[test]
    fn quadric_to_deg7_is_exceptional() {
        let r = blowup_compare(Deg8Quadric, Deg7(Deg7Variant::RContact2), one()).unwrap();
        assert_eq!(r.ordering, Ordering::Violated);
        assert!(r.exceptional);
    }

    #[test]
    fn incompatible_links_are_rejected() {
        assert!(blowup_compare(Deg9, Deg8Quadric, one()).is_err());
        assert!(blowup_compare(Deg9, Deg5, one()).is_err());
        assert!(blowup_compare(Deg5, Deg6(Deg6Variant::Generic), one()).is_err());
        assert!(blowup_compare(Deg5, Deg5, BlowupLink { points: 0 }).is_ok());
        assert!(blowup_compare(Deg9, Deg7(Deg7Variant::RContact2), BlowupLink { points: 2 }).is_ok());
    }

    #[test]
    fn violations_on_declared_links() {
        let mut flagged = 0;
        let mut unflagged = vec![];
        for (c1, c2, link) in declared_links() {
            let r = blowup_compare(c1, c2, link).unwrap();
            match (r.ordering, r.exceptional) {
                (Ordering::Violated, true) => flagged += 1,
                (Ordering::Violated, false) => unflagged.push((c1, c2, r.violations)),
                _ => {}
            }
        }
        assert_eq!(flagged, 5);
        assert_eq!(
            unflagged,
            vec![
                (unflagged_violations()[0].0, unflagged_violations()[0].1, vec![(q(1, 2), q(1, 1))]),
                (unflagged_violations()[1].0, unflagged_violations()[1].1, vec![(q(2, 3), q(1, 1))]),
            ]
        );
    }
}
