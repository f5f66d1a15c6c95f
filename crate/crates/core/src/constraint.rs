//! Linear constraints over edge space and facet certificates.

use crate::graph::{norm_edge, Edge, Graph};
use crate::rat::{dot, rat_from_string, rat_to_string, Rat};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    /// `a . x >= b`
    Ge,
    /// `a . x <= b`
    Le,
    /// `a . x == b`
    Eq,
}

/// A linear constraint on edge space: one coefficient per edge of the host
/// graph, in the host's canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub sense: Sense,
}

impl Constraint {
    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rhs,
            sense: Sense::Ge,
        }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.coeffs, x)
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        let lhs = self.eval(x);
        match self.sense {
            Sense::Ge => lhs >= self.rhs,
            Sense::Le => lhs <= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }

    /// Slack `a.x - b`; tightness means zero slack.
    pub fn slack(&self, x: &[Rat]) -> Rat {
        self.eval(x) - &self.rhs
    }

    pub fn is_tight_at(&self, x: &[Rat]) -> bool {
        self.slack(x).is_zero()
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.sense {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "==",
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*x{}", rat_to_string(c), i))
            .collect();
        write!(f, "{} {} {}", terms.join(" + "), op, rat_to_string(&self.rhs))
    }
}

/// Serialized form: coefficients keyed by `"u-v"` edge labels, zero entries
/// omitted.
#[derive(Debug, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub coeffs: BTreeMap<String, String>,
    pub rhs: String,
    pub sense: Sense,
}

pub fn edge_key(e: Edge) -> String {
    format!("{}-{}", e.0, e.1)
}

pub fn parse_edge_key(s: &str) -> Option<Edge> {
    let (a, b) = s.split_once('-')?;
    Some(norm_edge(a.parse().ok()?, b.parse().ok()?))
}

impl ConstraintJson {
    pub fn from_constraint(c: &Constraint, host: &Graph) -> Self {
        let edges = host.edge_list();
        assert_eq!(edges.len(), c.coeffs.len(), "coefficient/edge mismatch");
        let coeffs = edges
            .iter()
            .zip(&c.coeffs)
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, v)| (edge_key(*e), rat_to_string(v)))
            .collect();
        ConstraintJson {
            coeffs,
            rhs: rat_to_string(&c.rhs),
            sense: c.sense,
        }
    }

    pub fn to_constraint(&self, host: &Graph) -> Option<Constraint> {
        let index = host.edge_index();
        let mut coeffs = vec![Rat::zero(); index.len()];
        for (k, v) in &self.coeffs {
            let e = parse_edge_key(k)?;
            let i = *index.get(&e)?;
            coeffs[i] = rat_from_string(v).ok()?;
        }
        Some(Constraint {
            coeffs,
            rhs: rat_from_string(&self.rhs).ok()?,
            sense: self.sense,
        })
    }
}

/// Evidence that a valid inequality is facet-inducing: a family of tight
/// points whose affine hull has the required dimension.
#[derive(Debug, Clone)]
pub struct FacetCertificate {
    pub constraint: Constraint,
    pub tight_points: Vec<Vec<Rat>>,
    pub affine_dim: isize,
    pub required_dim: isize,
}

impl FacetCertificate {
    pub fn is_facet(&self) -> bool {
        self.affine_dim == self.required_dim
    }
}
