//! Exact combinatorics of odd-red perfect matchings in bipartite graphs:
//! the doubling construction, cycle-induced facets of the odd-cycle
//! dominant, their transfer to the matching polytope, coefficient-complexity
//! analysis, the label-constraint relaxation with its non-integrality
//! example and max-cut reduction, the bimodular formulation, and a
//! polynomial-time solver. All polyhedral computations use exact rational
//! arithmetic.

pub mod bimodular;
pub mod complexity;
pub mod constraint;
pub mod facets;
pub mod graph;
pub mod label;
pub mod linalg;
pub mod lp;
pub mod rat;
pub mod solver;
pub mod transfer;
