use std::collections::HashMap;
use std::fmt;

use super::GermError;

/// One record of an [`InfinitelyNearTree`] as supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpec {
    pub id: String,
    pub parent: Option<String>,
    pub satellite_of: Option<String>,
}

impl PointSpec {
    pub fn root(id: &str) -> Self {
        PointSpec { id: id.into(), parent: None, satellite_of: None }
    }

    pub fn free(id: &str, parent: &str) -> Self {
        PointSpec { id: id.into(), parent: Some(parent.into()), satellite_of: None }
    }

    pub fn satellite(id: &str, parent: &str, satellite_of: &str) -> Self {
        PointSpec {
            id: id.into(),
            parent: Some(parent.into()),
            satellite_of: Some(satellite_of.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    id: String,
    parent: Option<usize>,
    satellite_of: Option<usize>,
}

/// Infinitely near points above a single surface point, with proximity.
///
/// Points are stored in the order given, which must be topological. A point
/// is proximate to its parent and, if it is a satellite, to one earlier
/// ancestor whose exceptional curve still passes through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitelyNearTree {
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
}

impl InfinitelyNearTree {
    pub fn new(points: Vec<PointSpec>) -> Result<Self, GermError> {
        if points.is_empty() {
            return Err(GermError::EmptyTree);
        }
        let mut nodes: Vec<Node> = Vec::with_capacity(points.len());
        let mut index = HashMap::new();
        for (pos, spec) in points.into_iter().enumerate() {
            if index.contains_key(&spec.id) {
                return Err(GermError::DuplicatePoint(spec.id));
            }
            let lookup = |name: &String| -> Result<usize, GermError> {
                index.get(name).copied().ok_or_else(|| GermError::BadOrder {
                    point: spec.id.clone(),
                    reference: name.clone(),
                })
            };
            let parent = spec.parent.as_ref().map(lookup).transpose()?;
            if parent.is_none() && pos > 0 {
                return Err(GermError::SecondRoot(spec.id));
            }
            let satellite_of = spec.satellite_of.as_ref().map(lookup).transpose()?;
            if let Some(s) = satellite_of {
                let Some(par) = parent else {
                    return Err(GermError::BadSatellite {
                        point: spec.id,
                        reason: "a root cannot be a satellite".into(),
                    });
                };
                let par_node: &Node = &nodes[par];
                // The exceptional curve of `s` must still pass through the
                // parent, i.e. the parent is itself proximate to `s`.
                if par_node.parent != Some(s) && par_node.satellite_of != Some(s) {
                    return Err(GermError::BadSatellite {
                        point: spec.id,
                        reason: format!(
                            "parent {} is not proximate to {}",
                            par_node.id, nodes[s].id
                        ),
                    });
                }
                if nodes
                    .iter()
                    .any(|n| n.parent == Some(par) && n.satellite_of == Some(s))
                {
                    return Err(GermError::BadSatellite {
                        point: spec.id,
                        reason: format!(
                            "{} already has a satellite child on the curve of {}",
                            par_node.id, nodes[s].id
                        ),
                    });
                }
            }
            index.insert(spec.id.clone(), nodes.len());
            nodes.push(Node { id: spec.id, parent, satellite_of });
        }
        Ok(InfinitelyNearTree { nodes, index })
    }

    /// A single point, one blow-up.
    pub fn single() -> Self {
        Self::free_chain(1)
    }

    /// `p1, ..., pn`, each free and infinitely near to the previous one.
    pub fn free_chain(n: usize) -> Self {
        assert!(n > 0, "empty chain");
        let mut pts = vec![PointSpec::root("p1")];
        for k in 2..=n {
            pts.push(PointSpec::free(&format!("p{k}"), &format!("p{}", k - 1)));
        }
        Self::new(pts).expect("free chain is valid")
    }

    /// The minimal resolution tree of a cusp: `p3` is a satellite of `p1`.
    pub fn cusp() -> Self {
        Self::new(vec![
            PointSpec::root("p1"),
            PointSpec::free("p2", "p1"),
            PointSpec::satellite("p3", "p2", "p1"),
        ])
        .expect("cusp tree is valid")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(|n| n.id.as_str())
    }

    pub fn id(&self, k: usize) -> &str {
        &self.nodes[k].id
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn parent(&self, k: usize) -> Option<usize> {
        self.nodes[k].parent
    }

    pub fn satellite_of(&self, k: usize) -> Option<usize> {
        self.nodes[k].satellite_of
    }

    /// Points that `k` is proximate to.
    pub fn proximate_targets(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes[k].parent.into_iter().chain(self.nodes[k].satellite_of)
    }

    /// Points proximate to `j`.
    pub fn proximate_to(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&i| self.proximate_targets(i).any(|t| t == j))
    }

    pub fn specs(&self) -> Vec<PointSpec> {
        self.nodes
            .iter()
            .map(|n| PointSpec {
                id: n.id.clone(),
                parent: n.parent.map(|p| self.nodes[p].id.clone()),
                satellite_of: n.satellite_of.map(|s| self.nodes[s].id.clone()),
            })
            .collect()
    }

    /// Builds a trace from `(id, multiplicity)` pairs; unlisted points get 0.
    pub fn trace<'a, I>(&self, mult: I) -> Result<BranchTrace, GermError>
    where
        I: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut m = vec![0u32; self.len()];
        for (id, v) in mult {
            let k = self
                .position(id)
                .ok_or_else(|| GermError::UnknownPoint(id.to_string()))?;
            m[k] = v;
        }
        BranchTrace::from_dense(self, m)
    }
}

/// Multiplicities of a (possibly reducible) germ at each infinitely near
/// point, stored densely in tree order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchTrace {
    mult: Vec<u32>,
}

impl BranchTrace {
    pub fn from_dense(tree: &InfinitelyNearTree, mult: Vec<u32>) -> Result<Self, GermError> {
        if mult.len() != tree.len() {
            return Err(GermError::TraceLength { expected: tree.len(), got: mult.len() });
        }
        for k in 0..tree.len() {
            if mult[k] > 0 {
                if let Some(p) = tree.parent(k) {
                    if mult[p] == 0 {
                        return Err(GermError::NotAncestorClosed(tree.id(k).to_string()));
                    }
                }
            }
        }
        for j in 0..tree.len() {
            let need: u32 = tree.proximate_to(j).map(|i| mult[i]).sum();
            if mult[j] < need {
                return Err(GermError::Proximity {
                    point: tree.id(j).to_string(),
                    mult: mult[j],
                    required: need,
                });
            }
        }
        Ok(BranchTrace { mult })
    }

    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Multiplicity at the root, the ordinary multiplicity of the germ.
    pub fn multiplicity(&self) -> u32 {
        self.mult[0]
    }

    /// Union of two germs without common components.
    pub fn union(&self, other: &BranchTrace) -> BranchTrace {
        BranchTrace {
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Per-point values keyed by point id, in tree order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointValues {
    ids: Vec<String>,
    values: Vec<u64>,
}

impl PointValues {
    pub fn get(&self, id: &str) -> Option<u64> {
        self.ids.iter().position(|x| x == id).map(|k| self.values[k])
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.ids.iter().map(String::as_str).zip(self.values.iter().copied())
    }
}

impl fmt::Display for PointValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(id, v)| format!("{id}={v}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn recursion(tree: &InfinitelyNearTree, base: impl Fn(usize) -> u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(tree.len());
    for k in 0..tree.len() {
        let inherited: u64 = tree.proximate_targets(k).map(|j| out[j]).sum();
        out.push(base(k) + inherited);
    }
    out
}

pub(crate) fn discrepancy_vec(tree: &InfinitelyNearTree) -> Vec<u64> {
    recursion(tree, |_| 1)
}

pub(crate) fn total_multiplicity_vec(tree: &InfinitelyNearTree, b: &BranchTrace) -> Vec<u64> {
    recursion(tree, |k| u64::from(b.mult[k]))
}

/// `a_k = 1 + Σ a_j` over the points `j` that `k` is proximate to.
pub fn discrepancies(tree: &InfinitelyNearTree) -> PointValues {
    PointValues { ids: tree.ids().map(String::from).collect(), values: discrepancy_vec(tree) }
}

/// `v_k = m_k + Σ v_j` over the points `j` that `k` is proximate to.
pub fn total_multiplicities(tree: &InfinitelyNearTree, b: &BranchTrace) -> PointValues {
    PointValues {
        ids: tree.ids().map(String::from).collect(),
        values: total_multiplicity_vec(tree, b),
    }
}

/// Local intersection number of two germs without common components, by
/// Noether's formula. Exact when the tree separates the two germs.
pub fn intersection_multiplicity(b1: &BranchTrace, b2: &BranchTrace) -> u64 {
    b1.mult.iter().zip(&b2.mult).map(|(&x, &y)| u64::from(x) * u64::from(y)).sum()
}
