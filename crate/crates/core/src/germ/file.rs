use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::lct::{FixedBranch, LinearCoefficient, ScalableBranch, WeightedGermConfig};
use super::tree::{InfinitelyNearTree, PointSpec};
use super::GermError;
use crate::exactmath::Rational;

/// A germ file could not be turned into a [`WeightedGermConfig`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermFileError {
    /// JSON path of the offending field, e.g. `scalable[0].mult.p4`.
    pub field: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for GermFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}, field `{}`: {}", self.field, self.message),
            None => write!(f, "field `{}`: {}", self.field, self.message),
        }
    }
}

impl std::error::Error for GermFileError {}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GermDoc {
    points: Vec<PointDoc>,
    #[serde(default)]
    fixed: Vec<FixedDoc>,
    scalable: Vec<ScalableDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    id: String,
    #[serde(default)]
    parent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    satellite_of: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    mult: BTreeMap<String, u32>,
    c0: Rational,
    c1: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalableDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    mult: BTreeMap<String, u32>,
    weight: u32,
}

fn semantic(field: impl Into<String>, err: GermError) -> GermFileError {
    GermFileError { field: field.into(), line: None, message: err.to_string() }
}

fn point_field(points: &[PointDoc], err: &GermError) -> String {
    let name = match err {
        GermError::DuplicatePoint(id) | GermError::SecondRoot(id) => Some(id),
        GermError::BadOrder { point, .. } | GermError::BadSatellite { point, .. } => Some(point),
        _ => None,
    };
    let pos = name.and_then(|n| points.iter().rposition(|p| &p.id == n));
    match (pos, err) {
        (Some(i), GermError::BadSatellite { .. }) => format!("points[{i}].satellite_of"),
        (Some(i), GermError::BadOrder { .. }) => format!("points[{i}]"),
        (Some(i), _) => format!("points[{i}].id"),
        (None, _) => "points".into(),
    }
}

/// Parses a germ document. Every type invariant is checked; failures name
/// the offending field and, for syntax and type errors, the line.
pub fn parse_germ_json(text: &str) -> Result<WeightedGermConfig, GermFileError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: GermDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        GermFileError { field, line: Some(inner.line()), message: inner.to_string() }
    })?;
    let specs: Vec<PointSpec> = doc
        .points
        .iter()
        .map(|p| PointSpec {
            id: p.id.clone(),
            parent: p.parent.clone().filter(|s| s != "ROOT"),
            satellite_of: p.satellite_of.clone(),
        })
        .collect();
    let tree =
        InfinitelyNearTree::new(specs).map_err(|e| semantic(point_field(&doc.points, &e), e))?;
    let trace = |field: String, mult: &BTreeMap<String, u32>| {
        tree.trace(mult.iter().map(|(k, v)| (k.as_str(), *v))).map_err(|e| {
            let field = match &e {
                GermError::UnknownPoint(id) => format!("{field}.{id}"),
                _ => field,
            };
            semantic(field, e)
        })
    };
    let mut fixed = Vec::new();
    for (i, f) in doc.fixed.iter().enumerate() {
        fixed.push(FixedBranch {
            label: f.label.clone(),
            trace: trace(format!("fixed[{i}].mult"), &f.mult)?,
            coeff: LinearCoefficient::new(f.c0.clone(), f.c1.clone()),
        });
    }
    let mut scalable = Vec::new();
    for (j, s) in doc.scalable.iter().enumerate() {
        scalable.push(ScalableBranch {
            label: s.label.clone(),
            trace: trace(format!("scalable[{j}].mult"), &s.mult)?,
            weight: s.weight,
        });
    }
    WeightedGermConfig::new(tree.clone(), fixed, scalable).map_err(|e| {
        let field = match &e {
            GermError::NoScalable => "scalable".to_string(),
            GermError::CoefficientRange { .. } => "fixed".to_string(),
            GermError::ZeroWeight(_) => "scalable".to_string(),
            GermError::LabelConflict(_) => "label".to_string(),
            _ => "fixed".to_string(),
        };
        semantic(field, e)
    })
}

/// Writes a germ in the format read by [`parse_germ_json`].
pub fn germ_to_json(config: &WeightedGermConfig) -> String {
    let tree = config.tree();
    let mult = |m: &[u32]| -> BTreeMap<String, u32> {
        m.iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(k, &v)| (tree.id(k).to_string(), v))
            .collect()
    };
    let doc = GermDoc {
        points: tree
            .specs()
            .into_iter()
            .map(|p| PointDoc {
                id: p.id,
                parent: Some(p.parent.unwrap_or_else(|| "ROOT".into())),
                satellite_of: p.satellite_of,
            })
            .collect(),
        fixed: config
            .fixed()
            .iter()
            .map(|f| FixedDoc {
                label: f.label.clone(),
                mult: mult(f.trace.mult()),
                c0: f.coeff.c0.clone(),
                c1: f.coeff.c1.clone(),
            })
            .collect(),
        scalable: config
            .scalable()
            .iter()
            .map(|s| ScalableDoc {
                label: s.label.clone(),
                mult: mult(s.trace.mult()),
                weight: s.weight,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}
