use std::fmt;
use std::str::FromStr;

use super::{BetaFraction, ExactError, Rational};

/// One piece of a [`PiecewiseBetaFunction`] on the closed interval `[lo, hi]`.
///
/// The first piece of a function has `lo = 0`, read as an open bound.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub f: BetaFraction,
}

/// A continuous function on `(0, 1]` given by Möbius pieces.
///
/// Invariants: the pieces partition `(0, 1]` with matching endpoints, adjacent
/// pieces agree at shared breakpoints, and no two adjacent pieces carry the
/// same fraction. Under these invariants the representation is unique, so
/// `==` decides equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PiecewiseBetaFunction {
    pieces: Vec<Piece>,
}

/// Where `f > c` holds on an initial segment of `(0, 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum InitialSegment {
    /// `f > c` on all of `(0, 1]`.
    Whole,
    /// `f > c` exactly on `(0, sup)`, with `f(sup) = c`; `sup < 1`, or `sup = 1`
    /// with equality at the right endpoint.
    UpTo(Rational),
    /// `f <= c` arbitrarily close to 0.
    Empty,
}

fn check_beta(beta: &Rational) -> Result<(), ExactError> {
    if beta.is_positive() && *beta <= Rational::one() {
        Ok(())
    } else {
        Err(ExactError::OutOfDomain(beta.clone()))
    }
}

/// The lower envelope of `fs` on `[lo, hi]`, as pieces (not yet merged).
fn envelope_on(
    lo: &Rational,
    hi: &Rational,
    fs: &[&BetaFraction],
) -> Result<Vec<Piece>, ExactError> {
    let mut cuts = vec![lo.clone(), hi.clone()];
    for (i, f) in fs.iter().enumerate() {
        for g in &fs[i + 1..] {
            if let Some(roots) = f.crossings_between(g, lo, hi)? {
                cuts.extend(roots);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut out = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        let mid = w[0].midpoint(&w[1]);
        let best = fs
            .iter()
            .min_by(|a, b| a.eval(&mid).cmp(&b.eval(&mid)))
            .expect("nonempty");
        out.push(Piece {
            lo: w[0].clone(),
            hi: w[1].clone(),
            f: (*best).clone(),
        });
    }
    Ok(out)
}

/// Merges adjacent pieces carrying the same fraction.
fn merge(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        match out.last_mut() {
            Some(last) if last.f == p.f => last.hi = p.hi,
            _ => out.push(p),
        }
    }
    out
}

/// Pointwise minimum of a nonempty list of fractions on `(0, 1]`.
pub fn min_envelope(fs: &[BetaFraction]) -> Result<PiecewiseBetaFunction, ExactError> {
    if fs.is_empty() {
        return Err(ExactError::EmptyEnvelope);
    }
    let refs: Vec<&BetaFraction> = fs.iter().collect();
    let pieces = envelope_on(&Rational::zero(), &Rational::one(), &refs)?;
    Ok(PiecewiseBetaFunction {
        pieces: merge(pieces),
    })
}

/// `true` iff the two functions agree at every `β ∈ (0, 1]`.
pub fn piecewise_equal(f: &PiecewiseBetaFunction, g: &PiecewiseBetaFunction) -> bool {
    f == g
}

impl PiecewiseBetaFunction {
    /// Builds a function from explicit pieces, checking the partition and
    /// continuity invariants and merging repeated adjacent fractions.
    pub fn new(pieces: Vec<Piece>) -> Result<Self, ExactError> {
        let invalid = |msg: String| Err(ExactError::InvalidPiecewise(msg));
        let (Some(first), Some(last)) = (pieces.first(), pieces.last()) else {
            return invalid("no pieces".into());
        };
        if !first.lo.is_zero() {
            return invalid(format!("first piece starts at {}, not 0", first.lo));
        }
        if last.hi != Rational::one() {
            return invalid(format!("last piece ends at {}, not 1", last.hi));
        }
        for p in &pieces {
            if p.lo >= p.hi {
                return invalid(format!("empty interval {}..{}", p.lo, p.hi));
            }
        }
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo {
                return invalid(format!("gap between {} and {}", w[0].hi, w[1].lo));
            }
            if w[0].f.eval(&w[0].hi) != w[1].f.eval(&w[1].lo) {
                return invalid(format!("discontinuity at {}", w[0].hi));
            }
        }
        Ok(PiecewiseBetaFunction {
            pieces: merge(pieces),
        })
    }

    /// Builds a function from `(upper breakpoint, fraction)` pairs in order,
    /// the last breakpoint being 1.
    pub fn from_breaks(parts: Vec<(Rational, BetaFraction)>) -> Result<Self, ExactError> {
        let mut lo = Rational::zero();
        let mut pieces = Vec::with_capacity(parts.len());
        for (hi, f) in parts {
            pieces.push(Piece {
                lo: lo.clone(),
                hi: hi.clone(),
                f,
            });
            lo = hi;
        }
        Self::new(pieces)
    }

    pub fn constant(c: Rational) -> Self {
        PiecewiseBetaFunction {
            pieces: vec![Piece {
                lo: Rational::zero(),
                hi: Rational::one(),
                f: BetaFraction::constant(c),
            }],
        }
    }

    /// A single fraction on all of `(0, 1]`.
    pub fn whole(f: BetaFraction) -> Self {
        PiecewiseBetaFunction {
            pieces: vec![Piece {
                lo: Rational::zero(),
                hi: Rational::one(),
                f,
            }],
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Interior breakpoints, in increasing order.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.pieces[1..].iter().map(|p| p.lo.clone()).collect()
    }

    pub fn eval(&self, beta: &Rational) -> Result<Rational, ExactError> {
        check_beta(beta)?;
        let piece = self
            .pieces
            .iter()
            .find(|p| beta <= &p.hi)
            .expect("pieces cover (0,1]");
        Ok(piece.f.eval(beta))
    }

    /// The fraction in force at `beta` (the left piece at a breakpoint).
    pub fn piece_at(&self, beta: &Rational) -> Result<&Piece, ExactError> {
        check_beta(beta)?;
        Ok(self
            .pieces
            .iter()
            .find(|p| beta <= &p.hi)
            .expect("pieces cover (0,1]"))
    }

    /// Each piece has a nonpositive derivative. Together with continuity this
    /// gives a globally nonincreasing function.
    pub fn is_nonincreasing(&self) -> bool {
        self.pieces.iter().all(|p| p.f.is_nonincreasing())
    }

    pub fn is_continuous(&self) -> bool {
        self.pieces
            .windows(2)
            .all(|w| w[0].f.eval(&w[0].hi) == w[1].f.eval(&w[1].lo))
    }

    /// Subintervals of the common refinement of `self` and `other`, each with
    /// the fraction of both functions in force there.
    fn refine<'a>(
        &'a self,
        other: &'a PiecewiseBetaFunction,
    ) -> Vec<(Rational, Rational, &'a BetaFraction, &'a BetaFraction)> {
        let mut cuts: Vec<Rational> = self
            .breakpoints()
            .into_iter()
            .chain(other.breakpoints())
            .collect();
        cuts.push(Rational::zero());
        cuts.push(Rational::one());
        cuts.sort();
        cuts.dedup();
        cuts.windows(2)
            .map(|w| {
                let mid = w[0].midpoint(&w[1]);
                let a = &self.piece_at(&mid).expect("in domain").f;
                let b = &other.piece_at(&mid).expect("in domain").f;
                (w[0].clone(), w[1].clone(), a, b)
            })
            .collect()
    }

    /// Pointwise minimum of two functions.
    pub fn min(&self, other: &PiecewiseBetaFunction) -> Result<PiecewiseBetaFunction, ExactError> {
        let mut pieces = Vec::new();
        for (lo, hi, a, b) in self.refine(other) {
            pieces.extend(envelope_on(&lo, &hi, &[a, b])?);
        }
        Ok(PiecewiseBetaFunction {
            pieces: merge(pieces),
        })
    }

    /// Smallest rational `β` found where `self(β)` and `other(β)` differ, or
    /// `None` when the functions are equal.
    pub fn first_difference(
        &self,
        other: &PiecewiseBetaFunction,
    ) -> Result<Option<Rational>, ExactError> {
        self.first_witness(other, |a, b| a != b)
    }

    /// First `β` where `self(β) > other(β)`, or `None` when `self <= other`
    /// on all of `(0, 1]`.
    pub fn exceeds_somewhere(
        &self,
        other: &PiecewiseBetaFunction,
    ) -> Result<Option<Rational>, ExactError> {
        self.first_witness(other, |a, b| a > b)
    }

    /// Maximal open intervals `(lo, hi)` of `(0, 1)` on which
    /// `self > other`, merged across breakpoints.
    pub fn exceeding_intervals(
        &self,
        other: &PiecewiseBetaFunction,
    ) -> Result<Vec<(Rational, Rational)>, ExactError> {
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for (lo, hi, a, b) in self.refine(other) {
            let mut cuts = vec![lo.clone()];
            if let Some(roots) = a.crossings_between(b, &lo, &hi)? {
                cuts.extend(roots);
            }
            cuts.push(hi);
            for w in cuts.windows(2) {
                let mid = w[0].midpoint(&w[1]);
                if a.eval(&mid) > b.eval(&mid) {
                    match out.last_mut() {
                        Some(last) if last.1 == w[0] => last.1 = w[1].clone(),
                        _ => out.push((w[0].clone(), w[1].clone())),
                    }
                }
            }
        }
        Ok(out)
    }

    fn first_witness(
        &self,
        other: &PiecewiseBetaFunction,
        bad: impl Fn(&Rational, &Rational) -> bool,
    ) -> Result<Option<Rational>, ExactError> {
        for (lo, hi, a, b) in self.refine(other) {
            let mut cuts = vec![lo.clone()];
            if let Some(roots) = a.crossings_between(b, &lo, &hi)? {
                cuts.extend(roots);
            }
            cuts.push(hi.clone());
            for w in cuts.windows(2) {
                let mid = w[0].midpoint(&w[1]);
                if bad(&a.eval(&mid), &b.eval(&mid)) {
                    return Ok(Some(mid));
                }
            }
            // Points where the sign of a - b changes are agreement points, so
            // closed endpoints are covered by the midpoints above, except the
            // right end of the domain which we check directly.
            if hi == Rational::one() && bad(&a.eval(&hi), &b.eval(&hi)) {
                return Ok(Some(hi));
            }
        }
        Ok(None)
    }

    /// The maximal initial segment of `(0, 1]` on which `self > c`.
    ///
    /// Requires a nonincreasing function.
    pub fn initial_segment_above(&self, c: &Rational) -> Result<InitialSegment, ExactError> {
        if !self.is_nonincreasing() {
            return Err(ExactError::NotMonotone);
        }
        if self.eval(&Rational::one())? > *c {
            return Ok(InitialSegment::Whole);
        }
        for piece in &self.pieces {
            if piece.f.eval(&piece.hi) > *c {
                continue;
            }
            // Solve p + qβ = c (r + sβ) on this piece.
            let (p, q, r, s) = piece.f.coefficients();
            let slope = q - c * s;
            let root = if slope.is_zero() {
                piece.lo.clone()
            } else {
                (c * r - p) / slope
            };
            let root = root.max(piece.lo.clone());
            return Ok(if root.is_zero() {
                InitialSegment::Empty
            } else {
                InitialSegment::UpTo(root)
            });
        }
        unreachable!("f(1) <= c implies some piece ends at or below c")
    }
}

impl PiecewiseBetaFunction {
    /// `1 on (0, 1/6]; (1+3b)/(9b) on [1/6, 2/3]; ...`
    pub fn pretty(&self) -> String {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let open = if i == 0 { '(' } else { '[' };
                format!("{} on {open}{}, {}]", p.f.pretty(), p.lo, p.hi)
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for PiecewiseBetaFunction {
    /// `lo..hi : (p+q*b)/(r+s*b)` pieces joined by `"; "`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}..{} : {}", p.lo, p.hi, p.f)?;
        }
        Ok(())
    }
}

impl FromStr for PiecewiseBetaFunction {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let mut pieces = Vec::new();
        for part in s.split(';') {
            let (range, formula) = part.split_once(':').ok_or_else(bad)?;
            let (lo, hi) = range.trim().split_once("..").ok_or_else(bad)?;
            pieces.push(Piece {
                lo: lo.parse()?,
                hi: hi.parse()?,
                f: formula.trim().parse()?,
            });
        }
        PiecewiseBetaFunction::new(pieces)
    }
}

impl serde::Serialize for PiecewiseBetaFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PiecewiseBetaFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn frac(p: i64, qq: i64, r: i64, s: i64) -> BetaFraction {
        BetaFraction::ints(p, qq, r, s).unwrap()
    }

    /// min{1, (1+3b)/(9b), 1/(3b)}, the projective plane formula.
    fn plane() -> PiecewiseBetaFunction {
        min_envelope(&[BetaFraction::one(), frac(1, 3, 0, 9), frac(1, 0, 0, 3)]).unwrap()
    }

    #[test]
    fn envelope_of_plane_formula() {
        let f = plane();
        assert_eq!(f.breakpoints(), vec![q(1, 6), q(2, 3)]);
        assert_eq!(f.pieces()[0].f, BetaFraction::one());
        assert_eq!(f.pieces()[1].f, frac(1, 3, 0, 9));
        assert_eq!(f.pieces()[2].f, frac(1, 0, 0, 3));
    }

    #[test]
    fn envelope_matches_hand_built_display() {
        let hand = PiecewiseBetaFunction::from_breaks(vec![
            (q(1, 6), BetaFraction::one()),
            (q(2, 3), frac(1, 3, 0, 9)),
            (q(1, 1), frac(1, 0, 0, 3)),
        ])
        .unwrap();
        assert!(piecewise_equal(&plane(), &hand));
    }

    #[test]
    fn envelope_of_tangent_fibre_formula() {
        let f = min_envelope(&[BetaFraction::one(), frac(1, 2, 0, 8), frac(1, 0, 0, 3)]).unwrap();
        assert_eq!(f.breakpoints(), vec![q(1, 6), q(5, 6)]);
    }

    #[test]
    fn singleton_and_empty_envelopes() {
        let f = min_envelope(&[BetaFraction::one()]).unwrap();
        assert_eq!(f, PiecewiseBetaFunction::constant(q(1, 1)));
        assert!(matches!(min_envelope(&[]), Err(ExactError::EmptyEnvelope)));
    }

    #[test]
    fn eval_examples_and_domain() {
        let f = plane();
        assert_eq!(f.eval(&q(1, 6)).unwrap(), q(1, 1));
        assert_eq!(f.eval(&q(1, 1)).unwrap(), q(1, 3));
        assert_eq!(f.eval(&q(1, 2)).unwrap(), q(5, 9));
        assert!(matches!(f.eval(&q(0, 1)), Err(ExactError::OutOfDomain(_))));
        assert!(f.eval(&q(3, 2)).is_err());
        assert_eq!(
            PiecewiseBetaFunction::constant(q(1, 1)).eval(&q(1, 2)).unwrap(),
            q(1, 1)
        );
    }

    #[test]
    fn different_formulas_are_unequal() {
        let quadric = min_envelope(&[BetaFraction::one(), frac(1, 2, 0, 6)]).unwrap();
        assert!(!piecewise_equal(&plane(), &quadric));
        let w = plane().first_difference(&quadric).unwrap().unwrap();
        assert_ne!(plane().eval(&w).unwrap(), quadric.eval(&w).unwrap());
    }

    #[test]
    fn monotonicity() {
        assert!(plane().is_nonincreasing());
        assert!(PiecewiseBetaFunction::constant(q(1, 1)).is_nonincreasing());
        let inc = min_envelope(&[frac(0, 1, 1, 0)]).unwrap();
        assert!(!inc.is_nonincreasing());
    }

    #[test]
    fn constructor_rejects_bad_partitions() {
        let gap = PiecewiseBetaFunction::new(vec![
            Piece { lo: q(0, 1), hi: q(1, 3), f: BetaFraction::one() },
            Piece { lo: q(1, 2), hi: q(1, 1), f: BetaFraction::one() },
        ]);
        assert!(gap.is_err());
        let jump = PiecewiseBetaFunction::from_breaks(vec![
            (q(1, 2), BetaFraction::one()),
            (q(1, 1), frac(1, 0, 0, 3)),
        ]);
        assert!(jump.is_err());
        assert!(PiecewiseBetaFunction::new(vec![]).is_err());
    }

    #[test]
    fn constructor_merges_repeated_fractions() {
        let f = PiecewiseBetaFunction::from_breaks(vec![
            (q(1, 3), BetaFraction::one()),
            (q(1, 1), BetaFraction::one()),
        ])
        .unwrap();
        assert_eq!(f.pieces().len(), 1);
    }

    #[test]
    fn min_of_piecewise_functions() {
        let a = plane();
        let b = min_envelope(&[BetaFraction::one(), frac(1, 0, 0, 2)]).unwrap();
        let m = a.min(&b).unwrap();
        let direct = min_envelope(&[
            BetaFraction::one(),
            frac(1, 3, 0, 9),
            frac(1, 0, 0, 3),
            frac(1, 0, 0, 2),
        ])
        .unwrap();
        assert_eq!(m, direct);
    }

    #[test]
    fn pointwise_order_witnesses() {
        let lower = PiecewiseBetaFunction::constant(q(1, 3));
        assert_eq!(lower.exceeds_somewhere(&plane()).unwrap(), None);
        let w = plane().exceeds_somewhere(&lower).unwrap().unwrap();
        assert!(plane().eval(&w).unwrap() > q(1, 3));
    }

    #[test]
    fn initial_segment_above_two_thirds() {
        assert_eq!(
            plane().initial_segment_above(&q(2, 3)).unwrap(),
            InitialSegment::UpTo(q(1, 3))
        );
        let gen = min_envelope(&[BetaFraction::one(), frac(3, 0, 0, 4)]).unwrap();
        assert_eq!(gen.initial_segment_above(&q(2, 3)).unwrap(), InitialSegment::Whole);
        let edge = min_envelope(&[BetaFraction::one(), frac(2, 0, 0, 3)]).unwrap();
        assert_eq!(
            edge.initial_segment_above(&q(2, 3)).unwrap(),
            InitialSegment::UpTo(q(1, 1))
        );
        let low = PiecewiseBetaFunction::constant(q(1, 2));
        assert_eq!(low.initial_segment_above(&q(2, 3)).unwrap(), InitialSegment::Empty);
    }

    #[test]
    fn text_round_trip() {
        let f = plane();
        let s = f.to_string();
        assert_eq!(
            s,
            "0/1..1/6 : (1/1+0/1*b)/(1/1+0/1*b); 1/6..2/3 : (1/1+3/1*b)/(0/1+9/1*b); 2/3..1/1 : (1/1+0/1*b)/(0/1+3/1*b)"
        );
        assert_eq!(s.parse::<PiecewiseBetaFunction>().unwrap(), f);
    }

    #[test]
    fn exceeding_intervals_merge_across_pieces() {
        // min{1, (1+2b)/(4b), 2/(3b)} against min{1, (1+b)/(3b)}
        let f = min_envelope(&[BetaFraction::one(), frac(1, 2, 0, 4), frac(2, 0, 0, 3)]).unwrap();
        let g = min_envelope(&[BetaFraction::one(), frac(1, 1, 0, 3)]).unwrap();
        assert_eq!(f.exceeding_intervals(&g).unwrap(), vec![(q(1, 2), q(1, 1))]);
        assert!(g.exceeding_intervals(&f).unwrap().is_empty());
        assert!(plane().exceeding_intervals(&plane()).unwrap().is_empty());
    }
}
