use super::lct::{FixedBranch, LinearCoefficient, ScalableBranch, WeightedGermConfig};
use super::tree::{BranchTrace, InfinitelyNearTree, PointSpec};
use super::GermError;

/// The local configurations that occur on the test divisors.
///
/// Whenever the boundary curve `C` passes through the point it gets the
/// label `"C"` and coefficient `1 − β`; scalable branches are labelled
/// `B1, B2, ...` in the order their weights are given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardGerm {
    /// Smooth branches with pairwise distinct tangents, `C` transverse to all.
    TransverseLines { weights: Vec<u32>, with_fixed_c: bool },
    /// Two smooth branches with the given contact order. `C` is either
    /// transverse to both or shares their whole common chain.
    TangentPair { contact: u32, weights: (u32, u32), with_fixed_c: bool, c_transverse: bool },
    /// An ordinary cusp. `c_contact` is the local intersection with a smooth
    /// `C`: 2 when `C` is transverse to the tangent cone, 3 when tangent.
    Cusp { weight: u32, c_contact: Option<u32> },
    /// Two smooth branches with contact 2, `C` transverse.
    Tacnode { weights: (u32, u32), with_fixed_c: bool },
    /// Three concurrent lines.
    Eckardt { weights: [u32; 3], with_fixed_c: bool },
    /// Smooth branches `(weight, contact order with C)` osculating `C`.
    ContactWithC { branches: Vec<(u32, u32)> },
}

/// Loose parameters for [`standard_germ`]; fields a kind does not use are
/// ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GermParams {
    pub weights: Vec<u32>,
    pub with_fixed_c: bool,
    pub contact: Option<u32>,
    pub c_transverse: bool,
    pub c_contact: Option<u32>,
}

fn c_branch(trace: BranchTrace) -> FixedBranch {
    FixedBranch { label: Some("C".into()), trace, coeff: LinearCoefficient::one_minus_beta() }
}

fn labelled(weights: &[u32], traces: Vec<BranchTrace>) -> Vec<ScalableBranch> {
    weights
        .iter()
        .zip(traces)
        .enumerate()
        .map(|(i, (&weight, trace))| ScalableBranch {
            label: Some(format!("B{}", i + 1)),
            trace,
            weight,
        })
        .collect()
}

fn chain_prefix(tree: &InfinitelyNearTree, len: usize) -> Result<BranchTrace, GermError> {
    let ids: Vec<String> = (1..=len).map(|k| format!("p{k}")).collect();
    tree.trace(ids.iter().map(|s| (s.as_str(), 1)))
}

impl StandardGerm {
    pub fn build(&self) -> Result<WeightedGermConfig, GermError> {
        match self {
            StandardGerm::TransverseLines { weights, with_fixed_c } => {
                if weights.is_empty() {
                    return Err(GermError::BadParams("transverse_lines needs weights".into()));
                }
                let tree = InfinitelyNearTree::single();
                let line = tree.trace([("p1", 1)])?;
                let fixed =
                    if *with_fixed_c { vec![c_branch(line.clone())] } else { vec![] };
                let scal = labelled(weights, vec![line; weights.len()]);
                WeightedGermConfig::new(tree, fixed, scal)
            }
            StandardGerm::Eckardt { weights, with_fixed_c } => StandardGerm::TransverseLines {
                weights: weights.to_vec(),
                with_fixed_c: *with_fixed_c,
            }
            .build(),
            StandardGerm::Tacnode { weights, with_fixed_c } => StandardGerm::TangentPair {
                contact: 2,
                weights: *weights,
                with_fixed_c: *with_fixed_c,
                c_transverse: true,
            }
            .build(),
            StandardGerm::TangentPair { contact, weights, with_fixed_c, c_transverse } => {
                if *contact == 0 {
                    return Err(GermError::BadParams("contact order must be positive".into()));
                }
                let tree = InfinitelyNearTree::free_chain(*contact as usize);
                let common = chain_prefix(&tree, *contact as usize)?;
                let fixed = match (with_fixed_c, c_transverse) {
                    (false, _) => vec![],
                    (true, true) => vec![c_branch(tree.trace([("p1", 1)])?)],
                    (true, false) => vec![c_branch(common.clone())],
                };
                let scal = labelled(&[weights.0, weights.1], vec![common.clone(), common]);
                WeightedGermConfig::new(tree, fixed, scal)
            }
            StandardGerm::Cusp { weight, c_contact } => {
                let tree = InfinitelyNearTree::cusp();
                let cusp = tree.trace([("p1", 2), ("p2", 1), ("p3", 1)])?;
                let fixed = match c_contact {
                    None => vec![],
                    Some(0) | Some(1) => {
                        return Err(GermError::BadParams(format!(
                            "a curve through a cusp meets it with multiplicity at least 2, got {}",
                            c_contact.unwrap()
                        )))
                    }
                    // C follows the cusp through as many points as the
                    // contact allows; contact 4 or more asks C to pass the
                    // satellite point and fails the proximity inequality.
                    Some(2) => vec![c_branch(tree.trace([("p1", 1)])?)],
                    Some(3) => vec![c_branch(tree.trace([("p1", 1), ("p2", 1)])?)],
                    Some(_) => {
                        vec![c_branch(tree.trace([("p1", 1), ("p2", 1), ("p3", 1)])?)]
                    }
                };
                WeightedGermConfig::new(tree, fixed, labelled(&[*weight], vec![cusp]))
            }
            StandardGerm::ContactWithC { branches } => {
                if branches.is_empty() || branches.iter().any(|&(_, c)| c == 0) {
                    return Err(GermError::BadParams(
                        "contact_with_c needs branches with positive contact".into(),
                    ));
                }
                let depth = branches.iter().map(|&(_, c)| c).max().unwrap() as usize;
                let tree = InfinitelyNearTree::free_chain(depth);
                let c = chain_prefix(&tree, depth)?;
                let traces = branches
                    .iter()
                    .map(|&(_, contact)| chain_prefix(&tree, contact as usize))
                    .collect::<Result<Vec<_>, _>>()?;
                let weights: Vec<u32> = branches.iter().map(|&(w, _)| w).collect();
                WeightedGermConfig::new(tree, vec![c_branch(c)], labelled(&weights, traces))
            }
        }
    }
}

/// Builds a named configuration: `transverse_lines`, `tangent_pair`, `cusp`,
/// `tacnode`, `eckardt` or `contact_with_c`.
///
/// For `contact_with_c` the weights pair up with contacts given as
/// `weights = [n1, c1, n2, c2, ...]`.
pub fn standard_germ(kind: &str, params: &GermParams) -> Result<WeightedGermConfig, GermError> {
    let w = &params.weights;
    let pair = || -> Result<(u32, u32), GermError> {
        match w.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(GermError::BadParams(format!("{kind} needs exactly two weights"))),
        }
    };
    let germ = match kind {
        "transverse_lines" => {
            StandardGerm::TransverseLines { weights: w.clone(), with_fixed_c: params.with_fixed_c }
        }
        "tangent_pair" => StandardGerm::TangentPair {
            contact: params
                .contact
                .ok_or_else(|| GermError::BadParams("tangent_pair needs a contact order".into()))?,
            weights: pair()?,
            with_fixed_c: params.with_fixed_c,
            c_transverse: params.c_transverse,
        },
        "cusp" => match w.as_slice() {
            [n] => StandardGerm::Cusp {
                weight: *n,
                c_contact: if params.with_fixed_c {
                    Some(params.c_contact.unwrap_or(2))
                } else {
                    None
                },
            },
            _ => return Err(GermError::BadParams("cusp needs one weight".into())),
        },
        "tacnode" => StandardGerm::Tacnode { weights: pair()?, with_fixed_c: params.with_fixed_c },
        "eckardt" => match w.as_slice() {
            [a, b, c] => {
                StandardGerm::Eckardt { weights: [*a, *b, *c], with_fixed_c: params.with_fixed_c }
            }
            _ => return Err(GermError::BadParams("eckardt needs three weights".into())),
        },
        "contact_with_c" => {
            if !w.len().is_multiple_of(2) {
                return Err(GermError::BadParams(
                    "contact_with_c takes weight,contact pairs".into(),
                ));
            }
            StandardGerm::ContactWithC { branches: w.chunks(2).map(|c| (c[0], c[1])).collect() }
        }
        other => return Err(GermError::UnknownKind(other.to_string())),
    };
    germ.build()
}

/// A tree helper for callers assembling their own germs: the cusp tree with
/// an extra free point after `p2`, where a smooth branch tangent to the cusp
/// can leave.
pub fn cusp_tree_with_exit() -> InfinitelyNearTree {
    InfinitelyNearTree::new(vec![
        PointSpec::root("p1"),
        PointSpec::free("p2", "p1"),
        PointSpec::satellite("p3", "p2", "p1"),
        PointSpec::free("p4", "p2"),
    ])
    .expect("valid tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, BetaFraction, PiecewiseBetaFunction};
    use crate::germ::lct_in_t;

    fn capped(g: StandardGerm) -> PiecewiseBetaFunction {
        lct_in_t(&g.build().unwrap())
            .unwrap()
            .min(&PiecewiseBetaFunction::constant(crate::exactmath::Rational::one()))
            .unwrap()
    }

    fn frac(p: i64, qq: i64, r: i64, s: i64) -> BetaFraction {
        BetaFraction::ints(p, qq, r, s).unwrap()
    }

    #[test]
    fn eckardt_on_c() {
        let f = capped(StandardGerm::Eckardt { weights: [1, 1, 1], with_fixed_c: true });
        let want =
            PiecewiseBetaFunction::from_breaks(vec![(q(1, 2), BetaFraction::one()), (q(1, 1), frac(1, 1, 0, 3))])
                .unwrap();
        assert_eq!(f, want);
    }

    #[test]
    fn tacnode_with_c() {
        let f = capped(StandardGerm::Tacnode { weights: (1, 1), with_fixed_c: true });
        assert_eq!(f.breakpoints(), vec![q(2, 3)]);
        assert_eq!(f.pieces()[1].f, frac(2, 1, 0, 4));
    }

    #[test]
    fn cusp_with_c() {
        let f = capped(StandardGerm::Cusp { weight: 1, c_contact: Some(2) });
        assert_eq!(f.breakpoints(), vec![q(3, 4)]);
        assert_eq!(f.pieces()[1].f, frac(3, 2, 0, 6));
        let f = capped(StandardGerm::Cusp { weight: 1, c_contact: Some(3) });
        assert_eq!(f.pieces()[1].f, frac(2, 3, 0, 6));
    }

    #[test]
    fn cusp_contact_one_or_four_is_rejected() {
        assert!(matches!(
            StandardGerm::Cusp { weight: 1, c_contact: Some(1) }.build(),
            Err(GermError::BadParams(_))
        ));
        assert!(matches!(
            StandardGerm::Cusp { weight: 1, c_contact: Some(4) }.build(),
            Err(GermError::Proximity { .. })
        ));
    }

    #[test]
    fn conic_pair_following_c() {
        let f = lct_in_t(
            &StandardGerm::TangentPair {
                contact: 2,
                weights: (1, 1),
                with_fixed_c: true,
                c_transverse: false,
            }
            .build()
            .unwrap(),
        )
        .unwrap();
        assert!(f.pieces().iter().any(|p| p.f == frac(1, 2, 0, 4)));
    }

    #[test]
    fn by_name() {
        let p = GermParams { weights: vec![1, 1, 1], ..Default::default() };
        let f = lct_in_t(&standard_germ("eckardt", &p).unwrap()).unwrap();
        assert_eq!(f, PiecewiseBetaFunction::whole(frac(2, 0, 0, 3)));
        assert!(matches!(standard_germ("a4", &p), Err(GermError::UnknownKind(_))));
        assert!(matches!(standard_germ("tacnode", &p), Err(GermError::BadParams(_))));
        let p = GermParams { weights: vec![3, 3], ..Default::default() };
        assert!(standard_germ("contact_with_c", &p).is_ok());
    }

    #[test]
    fn exit_tree_is_valid() {
        let t = cusp_tree_with_exit();
        let cusp = t.trace([("p1", 2), ("p2", 1), ("p3", 1)]).unwrap();
        let tangent = t.trace([("p1", 1), ("p2", 1), ("p4", 1)]).unwrap();
        assert_eq!(super::super::intersection_multiplicity(&cusp, &tangent), 3);
    }
}
