use std::collections::BTreeMap;

use super::{CatalogError, Deg1Variant, Deg2Variant, Deg3Variant, Deg4Variant, Deg6Variant, Deg7Variant, SurfaceConfig};
use crate::exactmath::PiecewiseBetaFunction;
use crate::germ::{
    intersection_multiplicity, lct_in_t, FixedBranch, InfinitelyNearTree, LinearCoefficient,
    ScalableBranch, StandardGerm, WeightedGermConfig,
};
use crate::lattice::{intersect, Kind, PicClass};

/// One irreducible component `B_i` of a test divisor, with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub class: PicClass,
    pub multiplicity: u32,
}

/// The germ of a test divisor at one point. Scalable branches are labelled
/// by component name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGerm {
    pub site: String,
    pub config: WeightedGermConfig,
}

/// A divisor `B = Σ n_i B_i ~ −K_S` together with the points where its
/// threshold is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestDivisor {
    pub description: String,
    pub components: Vec<Component>,
    pub germs: Vec<LocalGerm>,
    pub includes_c_globally: bool,
}

fn bad(divisor: &str, reason: String) -> CatalogError {
    CatalogError::BadDivisor { divisor: divisor.to_string(), reason }
}

impl TestDivisor {
    /// Validates the decomposition against the lattice and the germs
    /// against the decomposition.
    pub fn new(
        description: &str,
        components: Vec<Component>,
        germs: Vec<LocalGerm>,
    ) -> Result<Self, CatalogError> {
        let kind = components
            .first()
            .map(|c| c.class.kind())
            .ok_or_else(|| bad(description, "no components".into()))?;
        let minus_k = PicClass::anticanonical_of(kind);
        let mut total = minus_k.scale(0);
        for c in &components {
            total = total.try_add(&c.class.scale(i64::from(c.multiplicity)))?;
            if c.name != "C" && c.class.anticanonical_degree() > 3 {
                return Err(bad(description, format!("-K.{} > 3", c.name)));
            }
        }
        if total != minus_k {
            return Err(bad(description, format!("sums to {total}, not -K = {minus_k}")));
        }
        let by_name: BTreeMap<&str, &Component> =
            components.iter().map(|c| (c.name.as_str(), c)).collect();
        // local intersection numbers, summed over all germs
        let mut budget: BTreeMap<(String, String), u64> = BTreeMap::new();
        for g in &germs {
            let scal = g.config.scalable();
            for s in scal {
                let name = s.label.as_deref().unwrap_or("");
                let comp = by_name
                    .get(name)
                    .ok_or_else(|| bad(description, format!("germ at {} names unknown component {name:?}", g.site)))?;
                if comp.multiplicity != s.weight {
                    return Err(bad(
                        description,
                        format!("{name} has multiplicity {} but weight {} at {}", comp.multiplicity, s.weight, g.site),
                    ));
                }
            }
            for f in g.config.fixed() {
                if f.label.as_deref() != Some("C") {
                    return Err(bad(description, format!("fixed branch at {} is not C", g.site)));
                }
            }
            let mut branches: Vec<(&str, &crate::germ::BranchTrace)> = scal
                .iter()
                .filter(|s| s.label.as_deref() != Some("C"))
                .map(|s| (s.label.as_deref().unwrap_or(""), &s.trace))
                .collect();
            branches.extend(g.config.fixed().iter().map(|f| ("C", &f.trace)));
            for i in 0..branches.len() {
                for j in i + 1..branches.len() {
                    let (a, b) = if branches[i].0 <= branches[j].0 {
                        (branches[i].0, branches[j].0)
                    } else {
                        (branches[j].0, branches[i].0)
                    };
                    *budget.entry((a.into(), b.into())).or_default() +=
                        intersection_multiplicity(branches[i].1, branches[j].1);
                }
            }
        }
        for ((a, b), local) in &budget {
            let class = |n: &str| -> PicClass {
                if n == "C" {
                    minus_k.clone()
                } else {
                    by_name[n].class.clone()
                }
            };
            let global = intersect(&class(a), &class(b))?;
            if (*local as i64) > global {
                return Err(bad(
                    description,
                    format!("local intersections of {a} and {b} add up to {local} > {global}"),
                ));
            }
        }
        let includes_c_globally = components.iter().any(|c| c.name == "C");
        Ok(TestDivisor { description: description.to_string(), components, germs, includes_c_globally })
    }

    /// `B = C` itself, decided at any point of `C`.
    pub fn boundary(kind: Kind) -> Self {
        let tree = InfinitelyNearTree::single();
        let c = tree.trace([("p1", 1)]).expect("valid trace");
        let config = WeightedGermConfig::new(
            tree,
            vec![FixedBranch {
                label: Some("C".into()),
                trace: c.clone(),
                coeff: LinearCoefficient::one_minus_beta(),
            }],
            vec![ScalableBranch { label: Some("C".into()), trace: c, weight: 1 }],
        )
        .expect("valid germ");
        Self::new(
            "C",
            vec![Component {
                name: "C".into(),
                class: PicClass::anticanonical_of(kind),
                multiplicity: 1,
            }],
            vec![LocalGerm { site: "a point of C".into(), config }],
        )
        .expect("C ~ -K")
    }

    /// The listed germs plus a general point of every component other
    /// than `C`.
    pub fn all_germs(&self) -> Vec<LocalGerm> {
        let mut out = self.germs.clone();
        for c in self.components.iter().filter(|c| c.name != "C") {
            let config = StandardGerm::TransverseLines { weights: vec![c.multiplicity], with_fixed_c: false }
                .build()
                .and_then(|g| g.with_scalable_labels(&[&c.name]))
                .expect("smooth point germ");
            out.push(LocalGerm { site: format!("a general point of {}", c.name), config });
        }
        out
    }

    /// `lct(S, (1-β)C; βB)` as a function of β, restricted to these germs.
    pub fn lct_in_t(&self) -> Result<PiecewiseBetaFunction, CatalogError> {
        let mut f: Option<PiecewiseBetaFunction> = None;
        for g in self.all_germs() {
            let h = lct_in_t(&g.config)?;
            f = Some(match f {
                Some(f) => f.min(&h)?,
                None => h,
            });
        }
        Ok(f.expect("at least one germ"))
    }
}

fn comp(name: &str, class: PicClass, multiplicity: u32) -> Component {
    Component { name: name.into(), class, multiplicity }
}

fn at(site: &str, germ: StandardGerm, labels: &[&str]) -> Result<LocalGerm, CatalogError> {
    Ok(LocalGerm { site: site.into(), config: germ.build()?.with_scalable_labels(labels)? })
}

fn h(deg: u8, d: i64, pts: &[usize]) -> PicClass {
    PicClass::through(deg, d, pts).expect("valid class")
}

fn e(deg: u8, i: usize) -> PicClass {
    PicClass::exceptional(deg, i).expect("valid class")
}

fn lines(weights: &[u32], with_c: bool) -> StandardGerm {
    StandardGerm::TransverseLines { weights: weights.to_vec(), with_fixed_c: with_c }
}

fn osculating(branches: &[(u32, u32)]) -> StandardGerm {
    StandardGerm::ContactWithC { branches: branches.to_vec() }
}

/// `3L + 2E_1 + 2E_2` on the degree 7 surface, with `C` through
/// `E_1 ∩ L` or not.
fn deg7_main(edge_on_c: bool) -> Result<TestDivisor, CatalogError> {
    let site = if edge_on_c { "E_1∩L on C" } else { "E_1∩L off C" };
    TestDivisor::new(
        "3L+2E_1+2E_2",
        vec![comp("L", h(7, 1, &[1, 2]), 3), comp("E_1", e(7, 1), 2), comp("E_2", e(7, 2), 2)],
        vec![at(site, lines(&[3, 2], edge_on_c), &["L", "E_1"])?],
    )
}

/// `2E_1 + 2L_12 + L_13 + E_2` on the degree 6 surface.
fn deg6_lines(on_c: bool) -> Result<TestDivisor, CatalogError> {
    let site = if on_c { "E_1∩L_12 on C" } else { "E_1∩L_12 off C" };
    TestDivisor::new(
        "2E_1+2L_12+L_13+E_2",
        vec![
            comp("E_1", e(6, 1), 2),
            comp("L_12", h(6, 1, &[1, 2]), 2),
            comp("L_13", h(6, 1, &[1, 3]), 1),
            comp("E_2", e(6, 2), 1),
        ],
        vec![at(site, lines(&[2, 2], on_c), &["E_1", "L_12"])?],
    )
}

/// `L_12 + L_34 + Z`, `Z` the conic class `H − E_5` through `L_12 ∩ L_34`.
fn deg4_triple(on_c: bool) -> Result<TestDivisor, CatalogError> {
    let site = if on_c { "L_12∩L_34∩Z on C" } else { "L_12∩L_34∩Z off C" };
    TestDivisor::new(
        "L_12+L_34+Z",
        vec![
            comp("L_12", h(4, 1, &[1, 2]), 1),
            comp("L_34", h(4, 1, &[3, 4]), 1),
            comp("Z", h(4, 1, &[5]), 1),
        ],
        vec![at(site, lines(&[1, 1, 1], on_c), &["L_12", "L_34", "Z"])?],
    )
}

/// Three coplanar lines `E_1 + L_12 + M` on the cubic surface,
/// `M = 2H − E_1 − E_3 − ... − E_6`, meeting at an Eckardt point.
fn deg3_eckardt(on_c: bool) -> Result<TestDivisor, CatalogError> {
    let site = if on_c { "Eckardt point on C" } else { "Eckardt point off C" };
    TestDivisor::new(
        "E_1+L_12+M",
        vec![
            comp("E_1", e(3, 1), 1),
            comp("L_12", h(3, 1, &[1, 2]), 1),
            comp("M", h(3, 2, &[1, 3, 4, 5, 6]), 1),
        ],
        vec![at(
            site,
            StandardGerm::Eckardt { weights: [1, 1, 1], with_fixed_c: on_c },
            &["E_1", "L_12", "M"],
        )?],
    )
}

/// A line `L = E_1` tangent to the conic `M = −K − E_1` on the cubic.
fn deg3_tacnode(on_c: bool) -> Result<TestDivisor, CatalogError> {
    let site = if on_c { "L∩M on C" } else { "L∩M off C" };
    TestDivisor::new(
        "L+M",
        vec![comp("L", e(3, 1), 1), comp("M", h(3, 3, &[1, 1, 2, 3, 4, 5, 6]), 1)],
        vec![at(site, StandardGerm::Tacnode { weights: (1, 1), with_fixed_c: on_c }, &["L", "M"])?],
    )
}

/// Two lines `L_1 = E_1`, `L_2 = 3H − 2E_1 − E_2 − ... − E_7` tangent to
/// each other.
fn deg2_tacnode(on_c: bool) -> Result<TestDivisor, CatalogError> {
    let site = if on_c { "L_1∩L_2 on C" } else { "L_1∩L_2 off C" };
    TestDivisor::new(
        "L_1+L_2",
        vec![comp("L_1", e(2, 1), 1), comp("L_2", h(2, 3, &[1, 1, 2, 3, 4, 5, 6, 7]), 1)],
        vec![at(site, StandardGerm::Tacnode { weights: (1, 1), with_fixed_c: on_c }, &["L_1", "L_2"])?],
    )
}

/// A cuspidal curve `Z ∈ |−K|`; `c_contact` is `Z·C` at the cusp when the
/// cusp lies on `C`.
fn cuspidal(degree: u8, c_contact: Option<u32>) -> Result<TestDivisor, CatalogError> {
    let kind = Kind::Blowup { degree };
    let site = match c_contact {
        Some(_) => "the cusp, on C",
        None => "the cusp, off C",
    };
    TestDivisor::new(
        "Z",
        vec![comp("Z", PicClass::anticanonical_of(kind), 1)],
        vec![at(site, StandardGerm::Cusp { weight: 1, c_contact }, &["Z"])?],
    )
}

pub(super) fn test_divisors(config: SurfaceConfig) -> Result<Vec<TestDivisor>, CatalogError> {
    use SurfaceConfig::*;
    let mut out = vec![TestDivisor::boundary(config.lattice())];
    match config {
        Deg9 => out.push(TestDivisor::new(
            "3T",
            vec![comp("T", h(9, 1, &[]), 3)],
            vec![at("the inflection point", osculating(&[(3, 3)]), &["T"])?],
        )?),
        Deg8Quadric => out.push(TestDivisor::new(
            "2T_1+2T_2",
            vec![comp("T_1", PicClass::quadric(1, 0), 2), comp("T_2", PicClass::quadric(0, 1), 2)],
            vec![at("the tangency point of T_1", osculating(&[(2, 2), (2, 1)]), &["T_1", "T_2"])?],
        )?),
        Deg8F1 { f_tangent } => {
            let germ = if f_tangent {
                at("Z∩C, F tangent to C", osculating(&[(3, 2), (2, 1)]), &["F", "Z"])?
            } else {
                at("Z∩C", lines(&[3, 2], true), &["F", "Z"])?
            };
            out.push(TestDivisor::new(
                "2Z+3F",
                vec![comp("Z", e(8, 1), 2), comp("F", h(8, 1, &[1]), 3)],
                vec![germ],
            )?);
        }
        Deg7(v) => match v {
            Deg7Variant::EdgePointOnC => out.push(deg7_main(true)?),
            Deg7Variant::L1orL2Tangent => {
                out.push(deg7_main(false)?);
                out.push(TestDivisor::new(
                    "2L_1+2E_1+L",
                    vec![
                        comp("L_1", h(7, 1, &[1]), 2),
                        comp("E_1", e(7, 1), 2),
                        comp("L", h(7, 1, &[1, 2]), 1),
                    ],
                    vec![at("C∩E_1, L_1 tangent to C", osculating(&[(2, 2), (2, 1)]), &["L_1", "E_1"])?],
                )?);
            }
            Deg7Variant::RContact3 => {
                out.push(deg7_main(false)?);
                out.push(TestDivisor::new(
                    "L+2R",
                    vec![comp("L", h(7, 1, &[1, 2]), 1), comp("R", h(7, 1, &[]), 2)],
                    vec![at("C∩L, R with contact 3", osculating(&[(2, 3), (1, 1)]), &["R", "L"])?],
                )?);
            }
            Deg7Variant::RContact2 => out.push(deg7_main(false)?),
        },
        Deg6(v) => match v {
            Deg6Variant::LineIntersectionOnC => out.push(deg6_lines(true)?),
            Deg6Variant::ConicTangentAtLinePoint => {
                out.push(deg6_lines(false)?);
                out.push(TestDivisor::new(
                    "2Z_2+E_1+L_23",
                    vec![
                        comp("Z_2", h(6, 1, &[1]), 2),
                        comp("E_1", e(6, 1), 1),
                        comp("L_23", h(6, 1, &[2, 3]), 1),
                    ],
                    vec![at("Z_2∩E_1, Z_2 tangent to C", osculating(&[(2, 2), (1, 1)]), &["Z_2", "E_1"])?],
                )?);
            }
            Deg6Variant::Generic => out.push(deg6_lines(false)?),
        },
        Deg5 => out.push(TestDivisor::new(
            "2E_1+L_12+L_13+L_14",
            vec![
                comp("E_1", e(5, 1), 2),
                comp("L_12", h(5, 1, &[1, 2]), 1),
                comp("L_13", h(5, 1, &[1, 3]), 1),
                comp("L_14", h(5, 1, &[1, 4]), 1),
            ],
            vec![at("E_1∩L_12 off C", lines(&[2, 1], false), &["E_1", "L_12"])?],
        )?),
        Deg4(v) => match v {
            Deg4Variant::LineIntersectionOnC => out.push(deg4_triple(true)?),
            Deg4Variant::ConicPairTangent => {
                out.push(deg4_triple(false)?);
                out.push(TestDivisor::new(
                    "C_1+C_2",
                    vec![comp("C_1", h(4, 1, &[1]), 1), comp("C_2", h(4, 2, &[2, 3, 4, 5]), 1)],
                    vec![at(
                        "the common tangency point on C",
                        StandardGerm::TangentPair {
                            contact: 2,
                            weights: (1, 1),
                            with_fixed_c: true,
                            c_transverse: false,
                        },
                        &["C_1", "C_2"],
                    )?],
                )?);
            }
            Deg4Variant::Generic => out.push(deg4_triple(false)?),
        },
        Deg3(v) => match v {
            Deg3Variant::EckardtOnC => out.push(deg3_eckardt(true)?),
            Deg3Variant::EckardtOffC => out.push(deg3_eckardt(false)?),
            Deg3Variant::LineConicTangentOnC => out.push(deg3_tacnode(true)?),
            Deg3Variant::CuspMeetsCOnce => {
                out.push(deg3_tacnode(false)?);
                out.push(cuspidal(3, Some(3))?);
            }
            Deg3Variant::Generic => out.push(deg3_tacnode(false)?),
        },
        Deg2(v) => match v {
            Deg2Variant::TacnodeOnC => out.push(deg2_tacnode(true)?),
            Deg2Variant::TacnodeOffC => out.push(deg2_tacnode(false)?),
            Deg2Variant::CuspOnC => out.push(cuspidal(2, Some(2))?),
            Deg2Variant::Generic => out.push(cuspidal(2, None)?),
        },
        Deg1(v) => match v {
            Deg1Variant::NoCuspidalCurves => {}
            Deg1Variant::HasCuspidalCurves => out.push(cuspidal(1, None)?),
        },
    }
    Ok(out)
}
