//! Arithmetic of the multiplicity inequalities that arise when a non log
//! canonical point on `C` is followed through successive blow-ups.
//!
//! These checks are one-directional. They never conclude that a pair is log
//! canonical; the germ engine decides that.

use std::fmt;

use serde::Serialize;

use crate::exactmath::{BetaFraction, ExactError, PiecewiseBetaFunction, Rational};
use crate::germ::WeightedGermConfig;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IneqError {
    #[error("invalid ledger: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `D = a·L + Ω` near `P`, with `x = mult_P(Ω)` and `x1, x2, x3` the
/// multiplicities of `Ω` at the points of `C` over `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityLedger {
    pub a: Rational,
    pub x: Rational,
    pub x1: Rational,
    pub x2: Rational,
    pub x3: Rational,
    pub lambda_beta: Rational,
    pub beta: Rational,
    pub k2: i64,
}

impl MultiplicityLedger {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: Rational,
        x: Rational,
        x1: Rational,
        x2: Rational,
        x3: Rational,
        lambda_beta: Rational,
        beta: Rational,
        k2: i64,
    ) -> Result<Self, IneqError> {
        let bad = |m: String| Err(IneqError::Invariant(m));
        if x3.is_negative() || x2 < x3 || x1 < x2 || x < x1 {
            return bad(format!("need 0 <= x3 <= x2 <= x1 <= x, got {x}, {x1}, {x2}, {x3}"));
        }
        if a.is_negative() {
            return bad(format!("a = {a} is negative"));
        }
        if x > &a + 1 {
            return bad(format!("x = {x} exceeds 1 + a"));
        }
        if !beta.is_positive() || beta > Rational::one() {
            return bad(format!("beta = {beta} is outside (0,1]"));
        }
        if !lambda_beta.is_positive() {
            return bad(format!("lambda*beta = {lambda_beta} is not positive"));
        }
        if k2 <= 0 {
            return bad(format!("K^2 = {k2} is not positive"));
        }
        Ok(MultiplicityLedger { a, x, x1, x2, x3, lambda_beta, beta, k2 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The conditions contradict non log canonicity: the pair is lc at `P`.
    LcForced,
    /// The data do not rule out a non lc point.
    NonLcPossible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourBlowupReport {
    /// Conditions (i) to (iv).
    pub conditions: [bool; 4],
    /// `λβK² ≤ 1 + 4β`.
    pub full_bound: bool,
    /// `λβK² ≤ 1 + 3β`.
    pub refined_bound: bool,
    pub verdict: Verdict,
}

impl fmt::Display for FourBlowupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes = |b: bool| if b { "holds" } else { "fails" };
        for (name, c) in ["(i)", "(ii)", "(iii)", "(iv)"].iter().zip(self.conditions) {
            writeln!(f, "{name:<6}{}", yes(c))?;
        }
        writeln!(f, "lambda*beta*K^2 <= 1+4*beta: {}", yes(self.full_bound))?;
        writeln!(f, "lambda*beta*K^2 <= 1+3*beta: {}", yes(self.refined_bound))?;
        let v = match self.verdict {
            Verdict::LcForced => "lc forced",
            Verdict::NonLcPossible => "non-lc possible",
        };
        write!(f, "verdict: {v}")
    }
}

pub fn four_blowup_conditions(l: &MultiplicityLedger) -> FourBlowupReport {
    let one = Rational::one();
    let lb = &l.lambda_beta;
    let b = &l.beta;
    let le1 = |sum: Rational, k: i64| lb * sum - b * k <= one;
    let (a, x, x1, x2, x3) = (&l.a, &l.x, &l.x1, &l.x2, &l.x3);
    let s0 = a + x;
    let conditions = [
        le1(s0.clone(), 0),
        lb * &s0 * 2 - b * 2 <= one || le1(&s0 + x1, 1),
        le1(&s0 + x1 * 2, 3) || le1(&s0 + x1 + x2, 2),
        le1(&s0 + x1 + x2 * 2, 4) || le1(&s0 + x1 + x2 + x3, 3),
    ];
    let k2 = Rational::integer(l.k2);
    let full_bound = lb * &k2 <= &one + b * 4;
    let refined_bound = lb * &k2 <= &one + b * 3;
    let first_three = conditions[..3].iter().all(|&c| c);
    let forced = (first_three && conditions[3] && full_bound) || (first_three && refined_bound);
    FourBlowupReport {
        conditions,
        full_bound,
        refined_bound,
        verdict: if forced { Verdict::LcForced } else { Verdict::NonLcPossible },
    }
}

/// The β in `(0, 1]` where `λβK² > 1 + cβ` for a symbolic `λ`, as open
/// intervals.
pub fn bound_failure_intervals(
    lambda: &PiecewiseBetaFunction,
    k2: i64,
    c: i64,
) -> Result<Vec<(Rational, Rational)>, IneqError> {
    let limit = BetaFraction::ints(1, c, 0, k2)?;
    Ok(lambda.exceeding_intervals(&PiecewiseBetaFunction::whole(limit))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseStatus {
    /// Some hypothesis fails, or `m_0 + a ≤ 1` so the pair is lc at `P`.
    NotApplicable,
    /// The numerical hypotheses hold; the conclusion follows if the pair
    /// is not lc at `P`.
    Conditional,
    /// The data themselves force a non lc point, so the conclusion holds.
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseCheck {
    pub clause: &'static str,
    pub status: ClauseStatus,
    pub conclusion: String,
}

/// Evaluates the numerical side of each clause for the tower of blow-ups
/// along `C`, with `a` the coefficient of `C` and `m[i]` the multiplicity
/// of `Ω` at the `i`-th point of `C` over `P`. Entries past the end of `m`
/// are zero.
///
/// A clause is asserted only when `(n+1)a + Σ_{i≤n} m_i > n + 2`, which
/// makes the pull-back have multiplicity above 2 at `P_n` and so forces a
/// non lc point.
pub fn blowup_ledger_check(a: &Rational, m: &[Rational], n: usize) -> Result<Vec<ClauseCheck>, IneqError> {
    if *a > Rational::one() {
        return Err(IneqError::Invariant(format!("a = {a} exceeds 1")));
    }
    if let Some(bad) = m.iter().find(|x| x.is_negative()) {
        return Err(IneqError::Invariant(format!("negative multiplicity {bad}")));
    }
    let mi = |i: usize| m.get(i).cloned().unwrap_or_else(Rational::zero);
    let sum = |hi: usize| -> Rational { (0..hi).map(mi).sum() };
    let ni = n as i64;
    let na = a * ni;
    let possible = &mi(0) + a > Rational::one();
    let certified = possible && a * (ni + 1) + sum(n + 1) > Rational::integer(ni + 2);
    let status = |hyp: bool| match (possible && hyp, certified) {
        (false, _) => ClauseStatus::NotApplicable,
        (true, true) => ClauseStatus::Asserted,
        (true, false) => ClauseStatus::Conditional,
    };
    let bound = Rational::integer(ni + 1) - &na;
    let bound_prev = Rational::integer(ni) - (a * (ni - 1));
    let two = n >= 2;
    let mut out = vec![
        ClauseCheck { clause: "base", status: status(true), conclusion: "mult_P(Omega.C) > 1".into() },
        ClauseCheck {
            clause: "i",
            status: status(mi(0) <= Rational::one()),
            conclusion: "(S_1, D^1) is not lc at P_1".into(),
        },
        ClauseCheck {
            clause: "ii",
            status: status(n >= 1),
            conclusion: format!("D^{n} is effective"),
        },
        ClauseCheck {
            clause: "iii",
            status: status(n >= 1 && sum(n) <= bound),
            conclusion: format!("the non-lc point of (S_{n}, D^{n}) on F_{n} is unique"),
        },
    ];
    let iv_status = if certified && n >= 1 { ClauseStatus::Asserted } else { ClauseStatus::NotApplicable };
    out.push(ClauseCheck {
        clause: "iv",
        status: iv_status,
        conclusion: format!("mult_P(Omega.C) > {bound}"),
    });
    out.push(ClauseCheck {
        clause: "v",
        status: status(two && mi(n.saturating_sub(1)) <= Rational::one() && sum(n) <= bound),
        conclusion: format!("(S_{n}, D^{n}) is lc on F_{n} away from P_{n} and F_{n} ∩ F_{}", n.saturating_sub(1)),
    });
    out.push(ClauseCheck {
        clause: "vi",
        status: status(two && sum(n) <= bound_prev),
        conclusion: format!("(S_{n}, D^{n}) is lc at F_{n} ∩ F_{}", n.saturating_sub(1)),
    });
    let vii = two && sum(n.saturating_sub(1)) <= bound_prev && sum(n.saturating_sub(2)) + mi(n.saturating_sub(2)) * 2 <= bound;
    out.push(ClauseCheck {
        clause: "vii",
        status: status(vii),
        conclusion: format!("(S_{n}, D^{n}) is lc at F_{n} ∩ F_{}", n.saturating_sub(1)),
    });
    Ok(out)
}

pub fn asserted(checks: &[ClauseCheck]) -> Vec<&ClauseCheck> {
    checks.iter().filter(|c| c.status == ClauseStatus::Asserted).collect()
}

/// `(a, m_0, m_1, ...)` for a germ with a fixed branch labelled `C`, at
/// scaling parameter `t`: `a` is the coefficient of `C` and `m_i` the
/// multiplicity of the rest of the boundary at the `i`-th point of `C`.
pub fn chain_ledger(
    config: &WeightedGermConfig,
    beta: &Rational,
    t: &Rational,
) -> Option<(Rational, Vec<Rational>)> {
    let c = config.fixed().iter().find(|f| f.label.as_deref() == Some("C"))?;
    let tb = t * beta;
    let mut a = c.coeff.eval(beta);
    let mut m = Vec::new();
    for s in config.scalable() {
        if s.label.as_deref() == Some("C") {
            a = a + &tb * i64::from(s.weight);
        }
    }
    for (k, &cm) in c.trace.mult().iter().enumerate() {
        if cm == 0 {
            continue;
        }
        let here: i64 = config
            .scalable()
            .iter()
            .filter(|s| s.label.as_deref() != Some("C"))
            .map(|s| i64::from(s.weight) * i64::from(s.trace.mult()[k]))
            .sum();
        m.push(&tb * here);
    }
    Some((a, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SurfaceConfig;
    use crate::exactmath::q;
    use crate::germ::lct_in_t_at;

    #[allow(clippy::too_many_arguments)]
    fn ledger(a: Rational, x: Rational, x1: Rational, x2: Rational, x3: Rational, lb: Rational, b: Rational, k2: i64) -> MultiplicityLedger {
        MultiplicityLedger::new(a, x, x1, x2, x3, lb, b, k2).unwrap()
    }

    #[test]
    fn zero_ledger_forces_lc() {
        let z = Rational::zero();
        let r = four_blowup_conditions(&ledger(z.clone(), z.clone(), z.clone(), z.clone(), z, q(1, 7), q(1, 2), 7));
        assert_eq!(r.conditions, [true; 4]);
        assert_eq!(r.verdict, Verdict::LcForced);
    }

    #[test]
    fn degree_seven_tightness() {
        let l = ledger(q(1, 1), q(2, 1), q(4, 3), q(1, 1), q(0, 1), q(15, 34), q(1, 2), 7);
        // λβ(a + x + 2x1) − 3β = 1 exactly
        assert_eq!(&l.lambda_beta * (&l.a + &l.x + &l.x1 * 2) - &l.beta * 3, q(1, 1));
        let r = four_blowup_conditions(&l);
        assert!(r.conditions[2]);
        let over = ledger(q(1, 1), q(2, 1), q(4, 3) + q(1, 100), q(1, 1), q(0, 1), q(15, 34), q(1, 2), 7);
        assert!(!four_blowup_conditions(&over).conditions[2]);
    }

    #[test]
    fn verdict_flips_at_the_bound() {
        let beta = q(1, 2);
        let k2 = 7;
        let at = (q(1, 1) + &beta * 4) / k2;
        let z = Rational::zero();
        let mk = |lb: Rational| ledger(z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), lb, beta.clone(), k2);
        assert_eq!(four_blowup_conditions(&mk(at.clone())).verdict, Verdict::LcForced);
        assert_eq!(four_blowup_conditions(&mk(&at + q(1, 1000))).verdict, Verdict::NonLcPossible);
    }

    #[test]
    fn ledger_invariants() {
        let z = Rational::zero();
        assert!(MultiplicityLedger::new(z.clone(), q(1, 1), q(2, 1), z.clone(), z.clone(), q(1, 2), q(1, 2), 7).is_err());
        assert!(MultiplicityLedger::new(z.clone(), q(3, 1), z.clone(), z.clone(), z.clone(), q(1, 2), q(1, 2), 7).is_err());
        assert!(MultiplicityLedger::new(z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), q(1, 2), q(0, 1), 7).is_err());
    }

    #[test]
    fn refinement_over_beta() {
        // λβ = (1+2β)/7 on degree 7
        let lambda = PiecewiseBetaFunction::whole(BetaFraction::ints(1, 2, 0, 7).unwrap());
        assert!(bound_failure_intervals(&lambda, 7, 3).unwrap().is_empty());
        assert!(bound_failure_intervals(&lambda, 7, 4).unwrap().is_empty());
        let big = PiecewiseBetaFunction::whole(BetaFraction::ints(1, 4, 0, 7).unwrap());
        assert_eq!(bound_failure_intervals(&big, 7, 3).unwrap(), vec![(q(0, 1), q(1, 1))]);
    }

    #[test]
    fn alpha_hat_obeys_the_four_blowup_bound() {
        for &c in SurfaceConfig::all() {
            let d = i64::from(c.degree());
            if (4..=7).contains(&d) {
                assert!(bound_failure_intervals(&c.alpha_hat(), d, 4).unwrap().is_empty(), "{c}");
            }
        }
    }

    #[test]
    fn ledger_clause_examples() {
        let one = q(1, 1);
        let checks = blowup_ledger_check(&one, &[one.clone(), one.clone(), one.clone()], 2).unwrap();
        let iv = checks.iter().find(|c| c.clause == "iv").unwrap();
        assert_eq!(iv.status, ClauseStatus::Asserted);
        assert_eq!(iv.conclusion, "mult_P(Omega.C) > 1/1");

        let z = Rational::zero();
        let checks = blowup_ledger_check(&z, &[z.clone(), z.clone()], 2).unwrap();
        assert!(checks.iter().all(|c| c.status == ClauseStatus::NotApplicable));

        let m = [q(1, 2), q(1, 2), q(1, 2), q(1, 4)];
        let checks = blowup_ledger_check(&q(3, 4), &m, 4).unwrap();
        assert!(asserted(&checks).is_empty());
        assert_eq!(checks.iter().find(|c| c.clause == "iv").unwrap().conclusion, "mult_P(Omega.C) > 2/1");
    }

    #[test]
    fn skoda_bound_alone_does_not_assert() {
        // C + (3/10)Z with Z of contact 4: not lc, yet 2a + m0 + m1 = 13/5 <= 3
        let checks = blowup_ledger_check(&q(1, 1), &[q(3, 10), q(3, 10)], 1).unwrap();
        assert!(asserted(&checks).is_empty());
        assert_eq!(checks[0].status, ClauseStatus::Conditional);
    }

    #[test]
    fn catalog_thresholds_never_assert() {
        let betas = [q(1, 7), q(1, 3), q(1, 2), q(2, 3), q(9, 10), q(1, 1)];
        for &c in SurfaceConfig::all() {
            for d in c.test_divisors().unwrap() {
                for g in d.all_germs() {
                    for beta in &betas {
                        let t = lct_in_t_at(&g.config, beta).unwrap();
                        let Some((a, m)) = chain_ledger(&g.config, beta, &t) else { continue };
                        for n in 0..=m.len() {
                            let checks = blowup_ledger_check(&a, &m, n).unwrap();
                            assert!(asserted(&checks).is_empty(), "{c} {} {} beta={beta} n={n}", d.description, g.site);
                        }
                    }
                }
            }
        }
    }
}
