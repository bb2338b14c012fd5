use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

/// A Möbius function of β, `(p + qβ) / (r + sβ)`, with a denominator that is
/// strictly positive on `(0, 1]`.
///
/// Values are kept in canonical form, so structural equality is equality of
/// functions:
/// * a constant `c` is stored as `(c + 0β) / (1 + 0β)`;
/// * anything else is scaled to a primitive integer quadruple.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BetaFraction {
    p: Rational,
    q: Rational,
    r: Rational,
    s: Rational,
}

/// Outcome of intersecting two fractions on `(0, 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Crossing {
    None,
    At(Rational),
    Identical,
}

impl BetaFraction {
    pub fn new(p: Rational, q: Rational, r: Rational, s: Rational) -> Result<Self, ExactError> {
        let (p, q, r, s) = if (&r + &s).is_negative() {
            (-p, -q, -r, -s)
        } else {
            (p, q, r, s)
        };
        if r.is_negative() || !(&r + &s).is_positive() {
            return Err(ExactError::NonPositiveDenominator(format!(
                "({p}+{q}*b)/({r}+{s}*b)"
            )));
        }
        Ok(Self::canonical(p, q, r, s))
    }

    pub fn constant(c: Rational) -> Self {
        BetaFraction {
            p: c,
            q: Rational::zero(),
            r: Rational::one(),
            s: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `(p + qβ) / (sβ)`, the shape of most thresholds; `s` must be positive.
    pub fn over_beta(p: Rational, q: Rational, s: Rational) -> Result<Self, ExactError> {
        Self::new(p, q, Rational::zero(), s)
    }

    /// Shorthand with integer coefficients.
    pub fn ints(p: i64, q: i64, r: i64, s: i64) -> Result<Self, ExactError> {
        Self::new(p.into(), q.into(), r.into(), s.into())
    }

    fn canonical(p: Rational, q: Rational, r: Rational, s: Rational) -> Self {
        // ps - qr == 0 means numerator and denominator are proportional.
        if (&p * &s - &q * &r).is_zero() {
            let c = if !r.is_zero() { &p / &r } else { &q / &s };
            return Self::constant(c);
        }
        let coeffs = [&p, &q, &r, &s];
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, n| acc.gcd(n));
        let gcd = if gcd.is_zero() { BigInt::one() } else { gcd.abs() };
        let mut it = ints.into_iter().map(|n| Rational::from_bigint(n / &gcd));
        BetaFraction {
            p: it.next().unwrap(),
            q: it.next().unwrap(),
            r: it.next().unwrap(),
            s: it.next().unwrap(),
        }
    }

    pub fn coefficients(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.p, &self.q, &self.r, &self.s)
    }

    pub fn is_constant(&self) -> bool {
        self.q.is_zero() && self.s.is_zero()
    }

    /// Exact value at `beta`; the caller guarantees `beta` lies in `(0, 1]`
    /// or that the denominator does not vanish there.
    pub fn eval(&self, beta: &Rational) -> Rational {
        let num = &self.p + &self.q * beta;
        let den = &self.r + &self.s * beta;
        num / den
    }

    /// Numerator of the derivative, `qr - ps`; its sign is the sign of the
    /// derivative everywhere on `(0, 1]`.
    pub fn derivative_numerator(&self) -> Rational {
        &self.q * &self.r - &self.p * &self.s
    }

    pub fn is_nonincreasing(&self) -> bool {
        !self.derivative_numerator().is_positive()
    }

    /// Coefficients `(a, b, c)` of `(p+qβ)(r'+s'β) - (p'+q'β)(r+sβ) = aβ² + bβ + c`,
    /// whose sign is the sign of `self - other` on `(0, 1]`.
    fn difference_quadratic(&self, other: &BetaFraction) -> (Rational, Rational, Rational) {
        let (p, q, r, s) = self.coefficients();
        let (p2, q2, r2, s2) = other.coefficients();
        let a = q * s2 - q2 * s;
        let b = p * s2 + q * r2 - p2 * s - q2 * r;
        let c = p * r2 - p2 * r;
        (a, b, c)
    }

    /// Every `β ∈ (lo, hi)` where the two functions agree, sorted.
    ///
    /// Returns `Ok(None)` when the functions are identical, and an error when
    /// an agreement point inside the interval is irrational.
    pub fn crossings_between(
        &self,
        other: &BetaFraction,
        lo: &Rational,
        hi: &Rational,
    ) -> Result<Option<Vec<Rational>>, ExactError> {
        let (a, b, c) = self.difference_quadratic(other);
        let inside = |x: &Rational| x > lo && x < hi;
        if a.is_zero() && b.is_zero() {
            return Ok(if c.is_zero() { None } else { Some(vec![]) });
        }
        if a.is_zero() {
            let root = -c / b;
            return Ok(Some(if inside(&root) { vec![root] } else { vec![] }));
        }
        let disc = &b * &b - (&a * &c) * 4;
        if disc.is_negative() {
            return Ok(Some(vec![]));
        }
        let two_a = &a * 2;
        match disc.sqrt_exact() {
            Some(root) => {
                let mut roots: Vec<Rational> = [(-&b - &root) / &two_a, (-&b + &root) / &two_a]
                    .into_iter()
                    .filter(|x| inside(x))
                    .collect();
                roots.sort();
                roots.dedup();
                Ok(Some(roots))
            }
            None => {
                // Irrational roots: decide by signs whether one lies inside.
                let at = |x: &Rational| &a * x * x + &b * x + &c;
                let (flo, fhi) = (at(lo), at(hi));
                let vertex = -&b / &two_a;
                let sign_change = flo.signum() * fhi.signum() < 0;
                let double_inside = inside(&vertex)
                    && flo.signum() == a.signum()
                    && fhi.signum() == a.signum();
                if sign_change || double_inside {
                    Err(ExactError::IrrationalCrossing(format!("{self} vs {other}")))
                } else {
                    Ok(Some(vec![]))
                }
            }
        }
    }

    /// The unique point of `(0, 1]` where the two fractions agree.
    pub fn crossing_point(&self, other: &BetaFraction) -> Result<Crossing, ExactError> {
        if self == other {
            return Ok(Crossing::Identical);
        }
        let zero = Rational::zero();
        let one = Rational::one();
        let Some(mut roots) = self.crossings_between(other, &zero, &one)? else {
            return Ok(Crossing::Identical);
        };
        if self.eval(&one) == other.eval(&one) {
            roots.push(one);
        }
        match roots.len() {
            0 => Ok(Crossing::None),
            1 => Ok(Crossing::At(roots.pop().unwrap())),
            _ => Err(ExactError::AmbiguousCrossing(format!("{self} vs {other}"))),
        }
    }
}

fn coeff_text(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({c})")
    }
}

/// `c0 + c1·x` with zero terms dropped and unit coefficients elided.
fn linear_text(c0: &Rational, c1: &Rational, x: &str, times: &str) -> String {
    let mut out = String::new();
    if !c0.is_zero() {
        out.push_str(&coeff_text(c0));
    }
    if !c1.is_zero() {
        let (neg, mag) = if c1.is_negative() { (true, -c1) } else { (false, c1.clone()) };
        if !out.is_empty() {
            out.push_str(if neg { "-" } else { "+" });
        } else if neg {
            out.push('-');
        }
        if mag != Rational::one() {
            out.push_str(&coeff_text(&mag));
            out.push_str(times);
        }
        out.push_str(x);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl BetaFraction {
    /// Human-readable form in the variable `b`, e.g. `(1+3b)/(9b)`.
    pub fn pretty(&self) -> String {
        self.render("b", "")
    }

    /// The formula with `beta` substituted, e.g. `(1+3·(1/2))/(9·(1/2))`.
    pub fn pretty_at(&self, beta: &Rational) -> String {
        self.render(&format!("({beta})"), "·")
    }

    fn render(&self, x: &str, times: &str) -> String {
        let num = linear_text(&self.p, &self.q, x, times);
        if self.s.is_zero() && self.r == Rational::one() {
            return num;
        }
        let den = linear_text(&self.r, &self.s, x, times);
        let wrap = |t: String| {
            if t.chars().all(|c| c.is_ascii_digit()) { t } else { format!("({t})") }
        };
        format!("{}/{}", wrap(num), wrap(den))
    }
}

impl fmt::Display for BetaFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}*b)/({}+{}*b)", self.p, self.q, self.r, self.s)
    }
}

impl FromStr for BetaFraction {
    type Err = ExactError;

    /// Parses the form written by `Display`: `(p+q*b)/(r+s*b)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num, den) = t.split_once(")/(").ok_or_else(bad)?;
        let num = num.strip_prefix('(').ok_or_else(bad)?;
        let den = den.strip_suffix(')').ok_or_else(bad)?;
        let linear = |part: &str| -> Result<(Rational, Rational), ExactError> {
            let body = part.strip_suffix("*b").ok_or_else(bad)?;
            // Split at the '+' that separates the two coefficients; the
            // coefficient of b may itself carry a sign.
            let idx = body
                .char_indices()
                .skip(1)
                .find(|&(_, c)| c == '+')
                .map(|(i, _)| i)
                .ok_or_else(bad)?;
            Ok((body[..idx].parse()?, body[idx + 1..].parse()?))
        };
        let (p, q) = linear(num)?;
        let (r, s) = linear(den)?;
        BetaFraction::new(p, q, r, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn frac(p: i64, qq: i64, r: i64, s: i64) -> BetaFraction {
        BetaFraction::ints(p, qq, r, s).unwrap()
    }

    #[test]
    fn canonical_form_is_unique() {
        assert_eq!(frac(2, 6, 0, 18), frac(1, 3, 0, 9));
        assert_eq!(frac(3, 3, 3, 3), BetaFraction::one());
        assert_eq!(frac(-1, -3, 0, -9), frac(1, 3, 0, 9));
        let c = BetaFraction::new(q(1, 2), q(1, 2), q(1, 1), q(1, 1)).unwrap();
        assert_eq!(c, BetaFraction::constant(q(1, 2)));
    }

    #[test]
    fn rejects_denominators_vanishing_on_the_domain() {
        assert!(BetaFraction::ints(1, 0, 1, -1).is_err());
        assert!(BetaFraction::ints(1, 0, -1, 2).is_err());
        assert!(BetaFraction::ints(1, 0, 0, 0).is_err());
    }

    #[test]
    fn evaluation_is_exact() {
        assert_eq!(frac(1, 3, 0, 9).eval(&q(1, 2)), q(5, 9));
        assert_eq!(frac(1, 0, 0, 3).eval(&q(1, 1)), q(1, 3));
    }

    #[test]
    fn crossing_point_examples() {
        let one = BetaFraction::one();
        let f = frac(1, 3, 0, 9);
        let g = frac(1, 0, 0, 3);
        assert_eq!(one.crossing_point(&f).unwrap(), Crossing::At(q(1, 6)));
        assert_eq!(g.crossing_point(&g).unwrap(), Crossing::Identical);
        assert_eq!(f.crossing_point(&g).unwrap(), Crossing::At(q(2, 3)));
        // 1/(3b) > 1/(4b) everywhere.
        assert_eq!(g.crossing_point(&frac(1, 0, 0, 4)).unwrap(), Crossing::None);
    }

    #[test]
    fn crossing_at_right_endpoint_counts() {
        let f = frac(2, 0, 0, 3);
        let c = BetaFraction::constant(q(2, 3));
        assert_eq!(f.crossing_point(&c).unwrap(), Crossing::At(q(1, 1)));
    }

    #[test]
    fn irrational_crossings_are_reported() {
        // b vs 1/(2b) meet at 1/sqrt(2).
        let f = frac(0, 1, 1, 0);
        let g = frac(1, 0, 0, 2);
        assert!(matches!(
            f.crossing_point(&g),
            Err(ExactError::IrrationalCrossing(_))
        ));
    }

    #[test]
    fn monotonicity_sign() {
        assert!(frac(1, 3, 0, 9).is_nonincreasing());
        assert!(BetaFraction::one().is_nonincreasing());
        assert!(!frac(0, 1, 1, 0).is_nonincreasing());
    }

    #[test]
    fn pretty_forms() {
        assert_eq!(frac(1, 3, 0, 9).pretty(), "(1+3b)/(9b)");
        assert_eq!(frac(1, 0, 0, 3).pretty(), "1/(3b)");
        assert_eq!(BetaFraction::one().pretty(), "1");
        assert_eq!(frac(1, -2, 3, 4).pretty(), "(1-2b)/(3+4b)");
        assert_eq!(frac(1, 3, 0, 9).pretty_at(&q(1, 2)), "(1+3·(1/2))/(9·(1/2))");
        assert_eq!(BetaFraction::constant(q(2, 3)).pretty(), "(2/3)");
    }

    #[test]
    fn display_round_trip() {
        let f = frac(1, -2, 3, 4);
        let s = f.to_string();
        assert_eq!(s, "(1/1+-2/1*b)/(3/1+4/1*b)");
        assert_eq!(s.parse::<BetaFraction>().unwrap(), f);
        let c = BetaFraction::constant(q(-5, 7));
        assert_eq!(c.to_string().parse::<BetaFraction>().unwrap(), c);
    }
}
