//! Divided differences over distinct nodes.
//!
//! Two independent routes compute the same bracket `[x₁,…,xₙ; f]`:
//! the explicit symmetric sum ([`dd_lagrange`]) and the recursive Newton
//! tableau ([`dd_newton`]). Both also report the reversed-denominator sum
//! `Σ f(xᵢ) / ∏_{j≠i}(xⱼ − xᵢ)`, which differs from the bracket by the sign
//! `(-1)^(n-1)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::summation::NeumaierSum;

/// Relative factor of the default separation floor, `1e-9 * max(1, max |x|)`.
pub const DEFAULT_SEPARATION_FACTOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NodeError {
    #[error("at least one node is required")]
    Empty,
    #[error("node {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error(
        "duplicate node {value} (positions {first} and {second}); nodes must be pairwise distinct"
    )]
    Duplicate {
        first: usize,
        second: usize,
        value: f64,
    },
    #[error("nodes {a} and {b} are closer ({separation:e}) than the separation floor {floor:e}")]
    TooClose {
        a: f64,
        b: f64,
        separation: f64,
        floor: f64,
    },
    #[error("node {value} at position {index} is negative")]
    Negative { index: usize, value: f64 },
    #[error("node {value} at position {index} is not positive")]
    NonPositive { index: usize, value: f64 },
    #[error("{values} values supplied for {nodes} nodes")]
    LengthMismatch { nodes: usize, values: usize },
    #[error("value {index} is not finite")]
    NonFiniteValue { index: usize },
}

/// Pairwise-distinct evaluation points with cached extremes.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "Vec<f64>")]
pub struct NodeSet {
    nodes: Vec<f64>,
    min: f64,
    max: f64,
    min_separation: f64,
}

impl From<NodeSet> for Vec<f64> {
    fn from(n: NodeSet) -> Self {
        n.nodes
    }
}

impl NodeSet {
    /// Builds a node set with the default separation floor.
    pub fn new(nodes: Vec<f64>) -> Result<Self, NodeError> {
        let scale = nodes.iter().fold(
            1.0f64,
            |acc, x| if x.is_finite() { acc.max(x.abs()) } else { acc },
        );
        Self::with_floor(nodes, DEFAULT_SEPARATION_FACTOR * scale)
    }

    /// Builds a node set, rejecting any pair closer than `floor`.
    pub fn with_floor(nodes: Vec<f64>, floor: f64) -> Result<Self, NodeError> {
        if nodes.is_empty() {
            return Err(NodeError::Empty);
        }
        if let Some((index, &value)) = nodes.iter().enumerate().find(|(_, x)| !x.is_finite()) {
            return Err(NodeError::NonFinite { index, value });
        }

        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&i, &j| nodes[i].total_cmp(&nodes[j]));

        let mut min_separation = f64::INFINITY;
        for w in order.windows(2) {
            let (i, j) = (w[0], w[1]);
            let sep = nodes[j] - nodes[i];
            if sep == 0.0 {
                return Err(NodeError::Duplicate {
                    first: i.min(j),
                    second: i.max(j),
                    value: nodes[i],
                });
            }
            if sep < floor {
                return Err(NodeError::TooClose {
                    a: nodes[i],
                    b: nodes[j],
                    separation: sep,
                    floor,
                });
            }
            min_separation = min_separation.min(sep);
        }

        Ok(Self {
            min: nodes[order[0]],
            max: nodes[order[nodes.len() - 1]],
            nodes,
            min_separation,
        })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Smallest node, `m`.
    pub fn min(&self) -> f64 {
        self.min
    }

    /// Largest node, `M`.
    pub fn max(&self) -> f64 {
        self.max
    }

    /// Smallest pairwise gap; infinite for a single node.
    pub fn min_separation(&self) -> f64 {
        self.min_separation
    }

    pub fn require_positive(&self) -> Result<(), NodeError> {
        match self.nodes.iter().enumerate().find(|(_, &x)| x <= 0.0) {
            Some((index, &value)) => Err(NodeError::NonPositive { index, value }),
            None => Ok(()),
        }
    }

    pub fn require_non_negative(&self) -> Result<(), NodeError> {
        match self.nodes.iter().enumerate().find(|(_, &x)| x < 0.0) {
            Some((index, &value)) => Err(NodeError::Negative { index, value }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lagrange,
    Newton,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lagrange" => Ok(Self::Lagrange),
            "newton" => Ok(Self::Newton),
            other => Err(format!(
                "unknown method `{other}` (expected lagrange or newton)"
            )),
        }
    }
}

/// Result of a divided-difference evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DividedDifference {
    /// `[x₁,…,xₙ; f] = Σ f(xᵢ) / ∏_{j≠i}(xᵢ − xⱼ)`.
    #[serde(rename = "dd_standard")]
    pub standard: f64,
    /// `Σ f(xᵢ) / ∏_{j≠i}(xⱼ − xᵢ) = (-1)^(n-1) [x₁,…,xₙ; f]`.
    #[serde(rename = "s_paper")]
    pub reversed: f64,
    pub n: usize,
    pub method: Method,
}

impl DividedDifference {
    fn from_standard(standard: f64, n: usize, method: Method) -> Self {
        let reversed = if (n - 1).is_multiple_of(2) {
            standard
        } else {
            -standard
        };
        Self {
            standard,
            reversed,
            n,
            method,
        }
    }
}

fn check_values(nodes: &NodeSet, values: &[f64]) -> Result<(), NodeError> {
    if values.len() != nodes.len() {
        return Err(NodeError::LengthMismatch {
            nodes: nodes.len(),
            values: values.len(),
        });
    }
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(NodeError::NonFiniteValue { index }),
        None => Ok(()),
    }
}

/// The individual summands `f(xᵢ) / ∏_{j≠i}(xᵢ − xⱼ)` of the symmetric formula.
pub fn lagrange_terms(nodes: &NodeSet, values: &[f64]) -> Result<Vec<f64>, NodeError> {
    check_values(nodes, values)?;
    let x = nodes.as_slice();
    Ok(x.iter()
        .zip(values)
        .enumerate()
        .map(|(i, (&xi, &fi))| {
            let denom = x
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1.0, |acc, (_, &xj)| acc * (xi - xj));
            fi / denom
        })
        .collect())
}

/// Divided difference by the explicit symmetric sum.
///
/// Summands are accumulated in ascending magnitude with compensation; they
/// alternate in sign and can exceed the result by many orders of magnitude.
pub fn dd_lagrange(nodes: &NodeSet, values: &[f64]) -> Result<DividedDifference, NodeError> {
    let mut terms = lagrange_terms(nodes, values)?;
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let standard = terms.into_iter().collect::<NeumaierSum>().value();
    Ok(DividedDifference::from_standard(
        standard,
        nodes.len(),
        Method::Lagrange,
    ))
}

/// Divided difference by the Newton tableau
/// `f[xᵢ…x_{i+k}] = (f[x_{i+1}…x_{i+k}] − f[xᵢ…x_{i+k−1}]) / (x_{i+k} − xᵢ)`.
///
/// The tableau runs over the nodes in ascending order; in input order,
/// clustered nodes far apart in the list can cost several digits.
pub fn dd_newton(nodes: &NodeSet, values: &[f64]) -> Result<DividedDifference, NodeError> {
    check_values(nodes, values)?;
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&i, &j| nodes.as_slice()[i].total_cmp(&nodes.as_slice()[j]));
    let x: Vec<f64> = order.iter().map(|&i| nodes.as_slice()[i]).collect();
    let mut col: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    for k in 1..x.len() {
        for i in 0..x.len() - k {
            col[i] = (col[i + 1] - col[i]) / (x[i + k] - x[i]);
        }
    }
    Ok(DividedDifference::from_standard(
        col[0],
        nodes.len(),
        Method::Newton,
    ))
}

pub fn divided_difference(
    nodes: &NodeSet,
    values: &[f64],
    method: Method,
) -> Result<DividedDifference, NodeError> {
    match method {
        Method::Lagrange => dd_lagrange(nodes, values),
        Method::Newton => dd_newton(nodes, values),
    }
}

/// Weights `aᵢ = ∏_{j≠i} xⱼ / ∏_{j≠i}(xⱼ − xᵢ)` over non-negative nodes.
///
/// Each weight is a product of ratios `xⱼ / (xⱼ − xᵢ)`, so a zero node yields
/// exactly `aᵢ = 1` at its own index and `0` everywhere else.
pub fn weights_a(nodes: &NodeSet) -> Result<Vec<f64>, NodeError> {
    nodes.require_non_negative()?;
    let x = nodes.as_slice();
    Ok((0..x.len())
        .map(|i| {
            x.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1.0, |acc, (_, &xj)| acc * (xj / (xj - x[i])))
        })
        .collect())
}
