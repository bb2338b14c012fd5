//! Picard lattices of del Pezzo surfaces and their low-degree rational classes.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("degree {0} is outside 1..=9")]
    Degree(i64),
    #[error("classes live on different lattices: {0} and {1}")]
    Mismatch(Kind, Kind),
    #[error("expected {expected} coordinates, got {got}")]
    Length { expected: usize, got: usize },
    #[error("index {0} out of range")]
    Index(usize),
}

/// Which lattice a class lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    /// `P²` blown up in `9 - degree` points, basis `H, E_1, ..., E_r`.
    Blowup { degree: u8 },
    /// `P¹ × P¹` with basis the two rulings and form `((0,1),(1,0))`.
    Quadric,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Blowup { degree } => write!(f, "degree-{degree} blow-up lattice"),
            Kind::Quadric => write!(f, "quadric lattice"),
        }
    }
}

impl Kind {
    pub fn rank(&self) -> usize {
        match self {
            Kind::Blowup { degree } => 1 + 9 - *degree as usize,
            Kind::Quadric => 2,
        }
    }

    pub fn degree(&self) -> u8 {
        match self {
            Kind::Blowup { degree } => *degree,
            Kind::Quadric => 8,
        }
    }
}

/// A divisor class, by integer coordinates in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PicClass {
    #[serde(skip)]
    kind_key: (u8, bool),
    coords: Vec<i64>,
}

fn check_degree(degree: i64) -> Result<u8, LatticeError> {
    if (1..=9).contains(&degree) {
        Ok(degree as u8)
    } else {
        Err(LatticeError::Degree(degree))
    }
}

impl PicClass {
    pub fn new(kind: Kind, coords: Vec<i64>) -> Result<Self, LatticeError> {
        if coords.len() != kind.rank() {
            return Err(LatticeError::Length { expected: kind.rank(), got: coords.len() });
        }
        let kind_key = match kind {
            Kind::Blowup { degree } => (check_degree(degree as i64)?, false),
            Kind::Quadric => (8, true),
        };
        Ok(PicClass { kind_key, coords })
    }

    /// Class `d0·H + Σ d_i·E_i` on the degree-`degree` blow-up lattice.
    pub fn blowup(degree: u8, coords: Vec<i64>) -> Result<Self, LatticeError> {
        Self::new(Kind::Blowup { degree }, coords)
    }

    /// Bidegree `(a, b)` on the quadric.
    pub fn quadric(a: i64, b: i64) -> Self {
        PicClass { kind_key: (8, true), coords: vec![a, b] }
    }

    pub fn kind(&self) -> Kind {
        if self.kind_key.1 {
            Kind::Quadric
        } else {
            Kind::Blowup { degree: self.kind_key.0 }
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn hyperplane(degree: u8) -> Result<Self, LatticeError> {
        let kind = Kind::Blowup { degree: check_degree(degree as i64)? };
        let mut c = vec![0; kind.rank()];
        c[0] = 1;
        Self::new(kind, c)
    }

    /// `E_i`, 1-based.
    pub fn exceptional(degree: u8, i: usize) -> Result<Self, LatticeError> {
        let mut c = Self::hyperplane(degree)?;
        if i == 0 || i >= c.coords.len() {
            return Err(LatticeError::Index(i));
        }
        c.coords[0] = 0;
        c.coords[i] = 1;
        Ok(c)
    }

    /// `d·H − Σ_{i ∈ points} E_i`: the strict transform of a degree-`d`
    /// plane curve through the listed blown-up points.
    pub fn through(degree: u8, d: i64, points: &[usize]) -> Result<Self, LatticeError> {
        let mut c = Self::hyperplane(degree)?;
        c.coords[0] = d;
        for &i in points {
            if i == 0 || i >= c.coords.len() {
                return Err(LatticeError::Index(i));
            }
            c.coords[i] -= 1;
        }
        Ok(c)
    }

    /// `L_{ij} = H − E_i − E_j`.
    pub fn line_through(degree: u8, i: usize, j: usize) -> Result<Self, LatticeError> {
        Self::through(degree, 1, &[i, j])
    }

    pub fn anticanonical_of(kind: Kind) -> Self {
        match kind {
            Kind::Quadric => Self::quadric(2, 2),
            Kind::Blowup { degree } => {
                let mut c = vec![-1; kind.rank()];
                c[0] = 3;
                PicClass { kind_key: (degree, false), coords: c }
            }
        }
    }

    pub fn try_add(&self, other: &PicClass) -> Result<PicClass, LatticeError> {
        self.same_lattice(other)?;
        Ok(PicClass {
            kind_key: self.kind_key,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, n: i64) -> PicClass {
        PicClass { kind_key: self.kind_key, coords: self.coords.iter().map(|a| a * n).collect() }
    }

    fn same_lattice(&self, other: &PicClass) -> Result<(), LatticeError> {
        if self.kind_key != other.kind_key {
            return Err(LatticeError::Mismatch(self.kind(), other.kind()));
        }
        Ok(())
    }

    pub fn self_intersection(&self) -> i64 {
        intersect(self, self).expect("same lattice")
    }

    /// `−K·D`.
    pub fn anticanonical_degree(&self) -> i64 {
        intersect(&Self::anticanonical_of(self.kind()), self).expect("same lattice")
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Quadric => write!(f, "({}, {})", self.coords[0], self.coords[1]),
            Kind::Blowup { .. } => {
                let rest: Vec<String> = self.coords[1..].iter().map(i64::to_string).collect();
                if rest.is_empty() {
                    write!(f, "({})", self.coords[0])
                } else {
                    write!(f, "({}; {})", self.coords[0], rest.join(", "))
                }
            }
        }
    }
}

/// Intersection product.
pub fn intersect(x: &PicClass, y: &PicClass) -> Result<i64, LatticeError> {
    x.same_lattice(y)?;
    Ok(match x.kind() {
        Kind::Quadric => x.coords[0] * y.coords[1] + x.coords[1] * y.coords[0],
        Kind::Blowup { .. } => {
            x.coords[0] * y.coords[0]
                - x.coords[1..].iter().zip(&y.coords[1..]).map(|(a, b)| a * b).sum::<i64>()
        }
    })
}

/// `−K = 3H − Σ E_i` on the degree-`degree` blow-up lattice.
pub fn anticanonical(degree: i64) -> Result<PicClass, LatticeError> {
    let d = check_degree(degree)?;
    Ok(PicClass::anticanonical_of(Kind::Blowup { degree: d }))
}

/// All classes `D` with `−K·D = m` and `D² = m − 2`.
///
/// Writing `D = d0·H − Σ e_i·E_i`, the conditions are `Σ e_i = 3·d0 − m` and
/// `Σ e_i² = d0² − m + 2`. Cauchy–Schwarz on the `r = 9 − degree` exceptional
/// coordinates bounds `d0` by
/// `degree·d0² − 6m·d0 + m² + r(m − 2) ≤ 0`, and the same inequality on the
/// remaining coordinates prunes the search.
pub fn enumerate_rational_classes(degree: i64, m: i64) -> Result<Vec<PicClass>, LatticeError> {
    let deg = check_degree(degree)?;
    let r = 9 - degree;
    let fits = |d0: i64| degree * d0 * d0 - 6 * m * d0 + m * m + r * (m - 2) <= 0;
    let mut d0s = Vec::new();
    // the admissible d0 form an interval around the vertex 3m/degree
    let vertex = (3 * m).div_euclid(degree);
    let mut lo = vertex;
    while fits(lo) {
        lo -= 1;
    }
    let mut hi = vertex + 1;
    while fits(hi) {
        hi += 1;
    }
    d0s.extend((lo + 1)..hi);

    let mut out = Vec::new();
    let mut e = vec![0i64; r as usize];
    for d0 in d0s {
        let sum = 3 * d0 - m;
        let sq = d0 * d0 - m + 2;
        if sq < 0 {
            continue;
        }
        search(&mut e, 0, sum, sq, &mut |e| {
            let mut coords = vec![d0];
            coords.extend(e.iter().map(|x| -x));
            out.push(PicClass { kind_key: (deg, false), coords });
        });
    }
    out.sort();
    Ok(out)
}

fn search(e: &mut [i64], pos: usize, sum: i64, sq: i64, emit: &mut impl FnMut(&[i64])) {
    let left = (e.len() - pos) as i64;
    if left == 0 {
        if sum == 0 && sq == 0 {
            emit(e);
        }
        return;
    }
    if sq < 0 || sum * sum > left * sq {
        return;
    }
    let bound = (sq as f64).sqrt() as i64 + 1;
    for x in -bound..=bound {
        let rest_sq = sq - x * x;
        if rest_sq < 0 {
            continue;
        }
        let rest_sum = sum - x;
        if rest_sum * rest_sum > (left - 1) * rest_sq {
            continue;
        }
        e[pos] = x;
        search(e, pos + 1, rest_sum, rest_sq, emit);
    }
}

/// The same enumeration on `P¹ × P¹`: bidegrees `(a, b)` with
/// `2a + 2b = m` and `2ab = m − 2`.
pub fn enumerate_quadric_classes(m: i64) -> Vec<PicClass> {
    let mut out = Vec::new();
    if m % 2 != 0 {
        return out;
    }
    let s = m / 2;
    // a + b = s with a·b = (m-2)/2 forces |a|, |b| ≤ |s| + |ab|
    let bound = s.abs() + (m - 2).abs();
    for a in -bound..=bound {
        let b = s - a;
        if 2 * a * b == m - 2 {
            out.push(PicClass::quadric(a, b));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_examples() {
        let k4 = anticanonical(4).unwrap();
        assert_eq!(k4.self_intersection(), 4);
        let e1 = PicClass::exceptional(6, 1).unwrap();
        assert_eq!(e1.self_intersection(), -1);
        let l12 = PicClass::line_through(6, 1, 2).unwrap();
        assert_eq!(intersect(&l12, &e1).unwrap(), 1);
        let other = PicClass::exceptional(5, 1).unwrap();
        assert!(matches!(intersect(&e1, &other), Err(LatticeError::Mismatch(..))));
        assert!(intersect(&PicClass::quadric(1, 0), &e1).is_err());
    }

    #[test]
    fn anticanonical_classes() {
        assert_eq!(anticanonical(9).unwrap().coords(), &[3]);
        let k7 = anticanonical(7).unwrap();
        assert_eq!(k7.coords(), &[3, -1, -1]);
        assert_eq!(k7.self_intersection(), 7);
        assert_eq!(anticanonical(1).unwrap().self_intersection(), 1);
        assert!(anticanonical(0).is_err());
        assert!(anticanonical(10).is_err());
        assert_eq!(PicClass::anticanonical_of(Kind::Quadric).self_intersection(), 8);
    }

    #[test]
    fn line_counts() {
        let counts: Vec<usize> = (1..=8)
            .rev()
            .map(|d| enumerate_rational_classes(d, 1).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 3, 6, 10, 16, 27, 56, 240]);
        assert!(enumerate_rational_classes(9, 1).unwrap().is_empty());
    }

    #[test]
    fn conics_and_cubics_satisfy_the_equations() {
        for deg in 1..=9 {
            for m in 1..=3 {
                for d in enumerate_rational_classes(deg, m).unwrap() {
                    assert_eq!(d.anticanonical_degree(), m);
                    assert_eq!(d.self_intersection(), m - 2);
                }
            }
        }
        // lines of P^2 are the only m = 3 rational classes on it
        assert_eq!(enumerate_rational_classes(9, 3).unwrap(), vec![PicClass::hyperplane(9).unwrap()]);
        // conic pencils on a degree 8 blow-up: H - E1
        assert_eq!(enumerate_rational_classes(8, 2).unwrap().len(), 1);
    }

    #[test]
    fn named_degree_four_classes_are_lines() {
        let lines = enumerate_rational_classes(4, 1).unwrap();
        let conic = PicClass::through(4, 2, &[1, 2, 3, 4, 5]).unwrap();
        assert!(lines.contains(&conic));
        assert!(lines.contains(&PicClass::line_through(4, 4, 5).unwrap()));
        assert!(lines.contains(&PicClass::exceptional(4, 3).unwrap()));
    }

    #[test]
    fn quadric_rulings() {
        assert!(enumerate_quadric_classes(1).is_empty());
        assert_eq!(
            enumerate_quadric_classes(2),
            vec![PicClass::quadric(0, 1), PicClass::quadric(1, 0)]
        );
        assert!(enumerate_quadric_classes(3).is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(anticanonical(7).unwrap().to_string(), "(3; -1, -1)");
        assert_eq!(anticanonical(9).unwrap().to_string(), "(3)");
        assert_eq!(PicClass::quadric(2, 2).to_string(), "(2, 2)");
    }
}
