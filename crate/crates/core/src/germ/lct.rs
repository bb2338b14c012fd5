use std::collections::HashSet;
use std::fmt;

use super::tree::{discrepancy_vec, total_multiplicity_vec, BranchTrace, InfinitelyNearTree};
use super::GermError;
use crate::exactmath::{min_envelope, BetaFraction, PiecewiseBetaFunction, Rational};

/// A coefficient `c0 + c1·β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCoefficient {
    pub c0: Rational,
    pub c1: Rational,
}

impl LinearCoefficient {
    pub fn new(c0: Rational, c1: Rational) -> Self {
        LinearCoefficient { c0, c1 }
    }

    /// `1 − β`, the coefficient of the boundary curve.
    pub fn one_minus_beta() -> Self {
        Self::new(Rational::one(), -Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, Rational::zero())
    }

    pub fn eval(&self, beta: &Rational) -> Rational {
        &self.c0 + &self.c1 * beta
    }
}

impl fmt::Display for LinearCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*b", self.c0, self.c1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedBranch {
    pub label: Option<String>,
    pub trace: BranchTrace,
    pub coeff: LinearCoefficient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalableBranch {
    pub label: Option<String>,
    pub trace: BranchTrace,
    pub weight: u32,
}

/// The local boundary `Σ c_i(β)·B_i + tβ·Σ n_j·B_j` at one point.
///
/// A fixed and a scalable branch sharing a label are the same curve; its
/// component constraint then uses the fixed coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGermConfig {
    tree: InfinitelyNearTree,
    fixed: Vec<FixedBranch>,
    scalable: Vec<ScalableBranch>,
}

fn check_labels<'a>(
    labels: impl Iterator<Item = &'a Option<String>>,
) -> Result<(), GermError> {
    let mut seen = HashSet::new();
    for l in labels.flatten() {
        if !seen.insert(l) {
            return Err(GermError::LabelConflict(format!("label {l} used twice in one list")));
        }
    }
    Ok(())
}

impl WeightedGermConfig {
    pub fn new(
        tree: InfinitelyNearTree,
        fixed: Vec<FixedBranch>,
        scalable: Vec<ScalableBranch>,
    ) -> Result<Self, GermError> {
        if scalable.is_empty() {
            return Err(GermError::NoScalable);
        }
        let (zero, one) = (Rational::zero(), Rational::one());
        for (i, fb) in fixed.iter().enumerate() {
            for beta in [&zero, &one] {
                let c = fb.coeff.eval(beta);
                if c.is_negative() || c > one {
                    return Err(GermError::CoefficientRange {
                        branch: fb.label.clone().unwrap_or_else(|| format!("fixed[{i}]")),
                        beta: beta.clone(),
                        value: Box::new(c),
                    });
                }
            }
        }
        for (j, sb) in scalable.iter().enumerate() {
            if sb.weight == 0 {
                return Err(GermError::ZeroWeight(
                    sb.label.clone().unwrap_or_else(|| format!("scalable[{j}]")),
                ));
            }
        }
        check_labels(fixed.iter().map(|f| &f.label))?;
        check_labels(scalable.iter().map(|s| &s.label))?;
        let config = WeightedGermConfig { tree, fixed, scalable };
        for sb in &config.scalable {
            if let Some(fb) = config.linked_fixed(sb) {
                if fb.trace != sb.trace {
                    return Err(GermError::LabelConflict(format!(
                        "branch {} has different traces in the two lists",
                        sb.label.as_deref().unwrap_or("?")
                    )));
                }
            }
        }
        config.check_fixed_lc()?;
        Ok(config)
    }

    pub fn tree(&self) -> &InfinitelyNearTree {
        &self.tree
    }

    pub fn fixed(&self) -> &[FixedBranch] {
        &self.fixed
    }

    pub fn scalable(&self) -> &[ScalableBranch] {
        &self.scalable
    }

    /// Same germ with every scalable weight multiplied by `factor`.
    pub fn scaled(&self, factor: u32) -> Result<Self, GermError> {
        let scalable = self
            .scalable
            .iter()
            .map(|s| ScalableBranch { weight: s.weight * factor, ..s.clone() })
            .collect();
        Self::new(self.tree.clone(), self.fixed.clone(), scalable)
    }

    /// Same germ with the scalable branches renamed in order.
    pub fn with_scalable_labels(&self, labels: &[&str]) -> Result<Self, GermError> {
        if labels.len() != self.scalable.len() {
            return Err(GermError::BadParams(format!(
                "{} labels for {} scalable branches",
                labels.len(),
                self.scalable.len()
            )));
        }
        let scalable = self
            .scalable
            .iter()
            .zip(labels)
            .map(|(s, l)| ScalableBranch { label: Some(l.to_string()), ..s.clone() })
            .collect();
        Self::new(self.tree.clone(), self.fixed.clone(), scalable)
    }

    fn linked_fixed(&self, sb: &ScalableBranch) -> Option<&FixedBranch> {
        let label = sb.label.as_ref()?;
        self.fixed.iter().find(|f| f.label.as_ref() == Some(label))
    }

    fn check_fixed_lc(&self) -> Result<(), GermError> {
        let a = discrepancy_vec(&self.tree);
        let vs: Vec<Vec<u64>> = self
            .fixed
            .iter()
            .map(|f| total_multiplicity_vec(&self.tree, &f.trace))
            .collect();
        for beta in [Rational::zero(), Rational::one()] {
            for k in 0..self.tree.len() {
                let load: Rational = self
                    .fixed
                    .iter()
                    .zip(&vs)
                    .map(|(f, v)| f.coeff.eval(&beta) * Rational::integer(v[k] as i64))
                    .sum();
                if load > Rational::integer(a[k] as i64 + 1) {
                    return Err(GermError::FixedNotLc {
                        point: self.tree.id(k).to_string(),
                        beta,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Every linear constraint on `t`, as functions of β.
///
/// Exceptional constraints come first in tree order, then one component
/// constraint per scalable branch.
pub fn lct_constraints(config: &WeightedGermConfig) -> Result<Vec<BetaFraction>, GermError> {
    let tree = &config.tree;
    let a = discrepancy_vec(tree);
    let fixed_v: Vec<Vec<u64>> =
        config.fixed.iter().map(|f| total_multiplicity_vec(tree, &f.trace)).collect();
    let scal_v: Vec<Vec<u64>> =
        config.scalable.iter().map(|s| total_multiplicity_vec(tree, &s.trace)).collect();
    let mut out = Vec::new();
    for k in 0..tree.len() {
        let order: u64 = config
            .scalable
            .iter()
            .zip(&scal_v)
            .map(|(s, v)| u64::from(s.weight) * v[k])
            .sum();
        if order == 0 {
            continue;
        }
        let mut p = Rational::integer(a[k] as i64 + 1);
        let mut q = Rational::zero();
        for (f, v) in config.fixed.iter().zip(&fixed_v) {
            let vk = Rational::integer(v[k] as i64);
            p = p - &f.coeff.c0 * &vk;
            q = q - &f.coeff.c1 * &vk;
        }
        out.push(BetaFraction::over_beta(p, q, Rational::integer(order as i64))?);
    }
    if out.is_empty() {
        return Err(GermError::Unbounded);
    }
    for sb in &config.scalable {
        let c = config
            .linked_fixed(sb)
            .map(|f| f.coeff.clone())
            .unwrap_or_else(|| LinearCoefficient::constant(Rational::zero()));
        out.push(BetaFraction::over_beta(
            Rational::one() - c.c0,
            -c.c1,
            Rational::integer(i64::from(sb.weight)),
        )?);
    }
    Ok(out)
}

/// `sup{t : the pair is log canonical}` as a piecewise function of β.
pub fn lct_in_t(config: &WeightedGermConfig) -> Result<PiecewiseBetaFunction, GermError> {
    Ok(min_envelope(&lct_constraints(config)?)?)
}

/// The threshold at one value of β, computed after specializing every
/// coefficient to a number.
pub fn lct_in_t_at(config: &WeightedGermConfig, beta: &Rational) -> Result<Rational, GermError> {
    if !beta.is_positive() || beta > &Rational::one() {
        return Err(crate::exactmath::ExactError::OutOfDomain(beta.clone()).into());
    }
    let tree = &config.tree;
    let a = discrepancy_vec(tree);
    let coeffs: Vec<Rational> = config.fixed.iter().map(|f| f.coeff.eval(beta)).collect();
    let mut best: Option<Rational> = None;
    let mut consider = |x: Rational| {
        best = Some(match best.take() {
            Some(b) => b.min(x),
            None => x,
        })
    };
    let fixed_v: Vec<Vec<u64>> = config.fixed.iter().map(|f| total_multiplicity_vec(tree, &f.trace)).collect();
    let scal_v: Vec<Vec<u64>> = config.scalable.iter().map(|s| total_multiplicity_vec(tree, &s.trace)).collect();
    let mut bounded = false;
    for (k, ak) in a.iter().enumerate() {
        let mut boundary = Rational::zero();
        for (v, c) in fixed_v.iter().zip(&coeffs) {
            boundary = boundary + c * Rational::integer(v[k] as i64);
        }
        let mut order = Rational::zero();
        for (s, v) in config.scalable.iter().zip(&scal_v) {
            order = order + Rational::integer(i64::from(s.weight) * v[k] as i64) * beta;
        }
        if order.is_positive() {
            bounded = true;
            consider((Rational::integer(*ak as i64 + 1) - boundary) / order);
        }
    }
    if !bounded {
        return Err(GermError::Unbounded);
    }
    for s in &config.scalable {
        let c = config.linked_fixed(s).map(|f| f.coeff.eval(beta)).unwrap_or_default();
        consider((Rational::one() - c) / (Rational::integer(i64::from(s.weight)) * beta));
    }
    Ok(best.expect("at least one constraint"))
}

/// Whether the pair with scaling parameter `t` at `beta` is log canonical,
/// checked directly on every exceptional divisor and component.
pub fn is_log_canonical(config: &WeightedGermConfig, t: &Rational, beta: &Rational) -> bool {
    let tree = &config.tree;
    let a = discrepancy_vec(tree);
    let tb = t * beta;
    let coeff_of = |k: usize| -> Rational {
        let fixed: Rational = config
            .fixed
            .iter()
            .map(|f| f.coeff.eval(beta) * Rational::integer(total_multiplicity_vec(tree, &f.trace)[k] as i64))
            .sum();
        let scal: Rational = config
            .scalable
            .iter()
            .map(|s| {
                Rational::integer(i64::from(s.weight) * total_multiplicity_vec(tree, &s.trace)[k] as i64)
            })
            .sum();
        fixed + scal * &tb
    };
    let exceptional_ok = (0..tree.len()).all(|k| coeff_of(k) <= Rational::integer(a[k] as i64 + 1));
    let components_ok = config.scalable.iter().all(|s| {
        let c = config.linked_fixed(s).map(|f| f.coeff.eval(beta)).unwrap_or_default();
        c + Rational::integer(i64::from(s.weight)) * &tb <= Rational::one()
    });
    exceptional_ok && components_ok
}

/// Classical log canonical threshold of a germ, `min (a_k + 1) / v_k`.
pub fn lct_plain(tree: &InfinitelyNearTree, b: &BranchTrace) -> Result<Rational, GermError> {
    if b.is_zero() {
        return Err(GermError::ZeroBranch);
    }
    let a = discrepancy_vec(tree);
    let v = total_multiplicity_vec(tree, b);
    Ok(a.iter()
        .zip(&v)
        .filter(|(_, &vk)| vk > 0)
        .map(|(&ak, &vk)| Rational::new(ak as i64 + 1, vk as i64))
        .min()
        .expect("nonzero branch has positive order at the root"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn frac(p: i64, qq: i64, r: i64, s: i64) -> BetaFraction {
        BetaFraction::ints(p, qq, r, s).unwrap()
    }

    fn c_branch(trace: BranchTrace) -> FixedBranch {
        FixedBranch { label: Some("C".into()), trace, coeff: LinearCoefficient::one_minus_beta() }
    }

    fn scal(trace: BranchTrace, weight: u32) -> ScalableBranch {
        ScalableBranch { label: None, trace, weight }
    }

    #[test]
    fn cusp_alone() {
        let t = InfinitelyNearTree::cusp();
        let z = t.trace([("p1", 2), ("p2", 1), ("p3", 1)]).unwrap();
        assert_eq!(lct_plain(&t, &z).unwrap(), q(5, 6));
        let cfg = WeightedGermConfig::new(t, vec![], vec![scal(z, 1)]).unwrap();
        let f = lct_in_t(&cfg).unwrap();
        assert_eq!(f, PiecewiseBetaFunction::whole(frac(5, 0, 0, 6)));
    }

    #[test]
    fn smooth_branch_plain_threshold_is_two() {
        let t = InfinitelyNearTree::single();
        let b = t.trace([("p1", 1)]).unwrap();
        assert_eq!(lct_plain(&t, &b).unwrap(), q(2, 1));
        let zero = t.trace([]).unwrap();
        assert!(matches!(lct_plain(&t, &zero), Err(GermError::ZeroBranch)));
    }

    #[test]
    fn three_concurrent_lines_off_the_boundary() {
        let t = InfinitelyNearTree::single();
        let l = t.trace([("p1", 1)]).unwrap();
        let cfg = WeightedGermConfig::new(
            t,
            vec![],
            vec![scal(l.clone(), 1), scal(l.clone(), 1), scal(l, 1)],
        )
        .unwrap();
        let f = lct_in_t(&cfg).unwrap();
        assert_eq!(f, PiecewiseBetaFunction::whole(frac(2, 0, 0, 3)));
    }

    #[test]
    fn line_with_contact_three() {
        let t = InfinitelyNearTree::free_chain(3);
        let c = t.trace([("p1", 1), ("p2", 1), ("p3", 1)]).unwrap();
        let cfg =
            WeightedGermConfig::new(t, vec![c_branch(c.clone())], vec![scal(c, 3)]).unwrap();
        let cons = lct_constraints(&cfg).unwrap();
        assert_eq!(
            cons,
            vec![frac(1, 1, 0, 3), frac(1, 2, 0, 6), frac(1, 3, 0, 9), frac(1, 0, 0, 3)]
        );
        let f = lct_in_t(&cfg).unwrap().min(&PiecewiseBetaFunction::constant(crate::exactmath::Rational::one()));
        assert_eq!(f.unwrap().breakpoints(), vec![q(1, 6), q(2, 3)]);
    }

    #[test]
    fn shared_label_uses_fixed_coefficient() {
        let t = InfinitelyNearTree::single();
        let c = t.trace([("p1", 1)]).unwrap();
        let cfg = WeightedGermConfig::new(
            t,
            vec![c_branch(c.clone())],
            vec![ScalableBranch { label: Some("C".into()), trace: c, weight: 2 }],
        )
        .unwrap();
        let cons = lct_constraints(&cfg).unwrap();
        // component: (1 - (1 - b)) / (2b) = 1/2
        assert_eq!(cons[1], BetaFraction::constant(q(1, 2)));
    }

    #[test]
    fn precondition_and_range_errors() {
        let t = InfinitelyNearTree::single();
        let b = t.trace([("p1", 1)]).unwrap();
        let heavy = |c: Rational| FixedBranch {
            label: None,
            trace: b.clone(),
            coeff: LinearCoefficient::constant(c),
        };
        let e = WeightedGermConfig::new(
            t.clone(),
            vec![heavy(q(1, 1)), heavy(q(1, 1)), heavy(q(1, 2))],
            vec![scal(b.clone(), 1)],
        );
        assert!(matches!(e, Err(GermError::FixedNotLc { .. })));
        let e = WeightedGermConfig::new(t.clone(), vec![heavy(q(3, 2))], vec![scal(b.clone(), 1)]);
        assert!(matches!(e, Err(GermError::CoefficientRange { .. })));
        let e = WeightedGermConfig::new(t.clone(), vec![], vec![]);
        assert!(matches!(e, Err(GermError::NoScalable)));
        let e = WeightedGermConfig::new(t.clone(), vec![], vec![scal(b.clone(), 0)]);
        assert!(matches!(e, Err(GermError::ZeroWeight(_))));
        let zero = t.trace([]).unwrap();
        let cfg = WeightedGermConfig::new(t, vec![], vec![scal(zero, 1)]).unwrap();
        assert!(matches!(lct_in_t(&cfg), Err(GermError::Unbounded)));
    }

    #[test]
    fn specialization_and_direct_check_agree() {
        let t = InfinitelyNearTree::cusp();
        let z = t.trace([("p1", 2), ("p2", 1), ("p3", 1)]).unwrap();
        let c = t.trace([("p1", 1)]).unwrap();
        let cfg = WeightedGermConfig::new(t, vec![c_branch(c)], vec![scal(z, 1)]).unwrap();
        let f = lct_in_t(&cfg).unwrap();
        for beta in [q(1, 10), q(1, 3), q(3, 4), q(1, 1)] {
            let at = lct_in_t_at(&cfg, &beta).unwrap();
            assert_eq!(f.eval(&beta).unwrap(), at);
            assert!(is_log_canonical(&cfg, &at, &beta));
            assert!(!is_log_canonical(&cfg, &(&at + q(1, 1000)), &beta));
        }
    }
}
