//! Machine-readable records for α̂ values: JSON and CSV with identical
//! rational strings.

use serde::{Deserialize, Serialize};

use crate::catalog::{CatalogError, SurfaceConfig};
use crate::exactmath::{PiecewiseBetaFunction, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// The stored closed-form formula.
    Formula,
    /// Rederived from test divisors by the germ engine.
    Engine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub lo: Rational,
    pub hi: Rational,
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub beta: Rational,
    pub alpha_exact: Rational,
    pub alpha_decimal: String,
    pub piece_formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub case_id: String,
    pub provenance: Provenance,
    pub pieces: Vec<PieceRecord>,
    pub points: Vec<PointRecord>,
}

/// One CSV row.
#[derive(Serialize)]
struct Row<'a> {
    case_id: &'a str,
    beta: &'a Rational,
    alpha_exact: &'a Rational,
    alpha_decimal: &'a str,
    piece_formula: &'a str,
}

pub const DECIMAL_DIGITS: usize = 6;

fn point(f: &PiecewiseBetaFunction, beta: &Rational) -> Result<PointRecord, CatalogError> {
    let piece = f.piece_at(beta)?;
    let value = piece.f.eval(beta);
    Ok(PointRecord {
        beta: beta.clone(),
        alpha_decimal: value.to_decimal_string(DECIMAL_DIGITS),
        alpha_exact: value,
        piece_formula: piece.f.to_string(),
    })
}

impl OutputRecord {
    pub fn new(
        case: SurfaceConfig,
        provenance: Provenance,
        betas: &[Rational],
    ) -> Result<Self, CatalogError> {
        let f = match provenance {
            Provenance::Formula => case.alpha_hat(),
            Provenance::Engine => case.alpha_engine()?,
        };
        let pieces = f
            .pieces()
            .iter()
            .map(|p| PieceRecord { lo: p.lo.clone(), hi: p.hi.clone(), formula: p.f.to_string() })
            .collect();
        let points = betas.iter().map(|b| point(&f, b)).collect::<Result<_, _>>()?;
        Ok(OutputRecord { case_id: case.id().to_string(), provenance, pieces, points })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// CSV with columns `case_id, beta, alpha_exact, alpha_decimal,
/// piece_formula`, one row per sampled point.
pub fn to_csv(records: &[OutputRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        for p in &r.points {
            w.serialize(Row {
                case_id: &r.case_id,
                beta: &p.beta,
                alpha_exact: &p.alpha_exact,
                alpha_decimal: &p.alpha_decimal,
                piece_formula: &p.piece_formula,
            })
            .expect("in-memory write");
        }
    }
    if records.iter().all(|r| r.points.is_empty()) {
        w.write_record(["case_id", "beta", "alpha_exact", "alpha_decimal", "piece_formula"])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// `k/n` for `k = 1..=n`.
pub fn beta_grid(n: u32) -> Vec<Rational> {
    (1..=n).map(|k| Rational::new(i64::from(k), i64::from(n))).collect()
}
