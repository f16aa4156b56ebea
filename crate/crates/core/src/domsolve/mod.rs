//! Domination checkers and exact solvers.
//!
//! `γ` and `γ_t` are minimum set covers over closed and open neighborhoods
//! ([`cover`]); `Γ` is a branch-and-bound over in/out decisions that keeps
//! Ore's minimality criterion satisfiable ([`upper`]). [`oracle`] holds the
//! brute-force ground truth used by the tests.

mod check;
mod cover;
mod meter;
mod oracle;
mod upper;

use std::fmt;
use std::time::Duration;

use serde::Serialize;

pub use check::{
    classify, is_dominating, is_minimal_by_definition, is_minimal_dominating, is_total_dominating,
    shrink_to_minimal, VertexClassification,
};
pub use cover::{gamma_exact, gamma_total_exact};
pub use oracle::{gamma_oracle, ORACLE_CAP_GAMMA, ORACLE_CAP_UPPER};
pub use upper::gamma_upper_exact;

use crate::graphkit::CliquePartition;
use crate::vertex_set::VertexSet;

/// Which domination invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Gamma,
    GammaTotal,
    Upper,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Gamma => "gamma",
            Quantity::GammaTotal => "gamma_total",
            Quantity::Upper => "upper",
        }
    }

    pub fn parse(s: &str) -> Option<Quantity> {
        match s {
            "gamma" => Some(Quantity::Gamma),
            "gammat" | "gamma_total" | "gamma-total" => Some(Quantity::GammaTotal),
            "upper" | "Gamma" => Some(Quantity::Upper),
            _ => None,
        }
    }

    /// Does `set` qualify as a witness for this quantity?
    pub fn check(&self, g: &crate::Graph, set: &VertexSet) -> bool {
        match self {
            Quantity::Gamma => is_dominating(g, set),
            Quantity::GammaTotal => is_total_dominating(g, set),
            Quantity::Upper => is_minimal_dominating(g, set),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    BranchAndBound,
    Reduction,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::BranchAndBound => "branch-and-bound",
            Method::Reduction => "reduction",
        })
    }
}

/// Search limits. Running out downgrades a result to non-optimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 10_000_000, time_limit: Some(Duration::from_secs(60)) }
    }
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { max_nodes: u64::MAX, time_limit: None }
    }

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget { max_nodes, time_limit: None }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Return the lexicographically smallest optimal witness.
    pub deterministic: bool,
    /// Worker threads for subtree-parallel search; `0` or `1` is sequential.
    pub threads: usize,
    /// Clique partition of the graph (from a product spec) enabling the
    /// packing bound `b_1 ℓ + 2 s ≤ n` in the upper domination search.
    pub clique_partition: Option<CliquePartition>,
}

impl SolveOptions {
    pub fn with_budget(budget: Budget) -> Self {
        SolveOptions { budget, ..Default::default() }
    }

    pub fn unlimited() -> Self {
        SolveOptions::with_budget(Budget::unlimited())
    }

    pub fn deterministic(mut self) -> Self {
        self.deterministic = true;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
    /// Minimal dominating sets audited against the packing inequality.
    pub packing_checked: u64,
    pub packing_violations: u64,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub quantity: Quantity,
    pub value: usize,
    pub witness: VertexSet,
    pub optimal: bool,
    pub method: Method,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn witness_valid(&self, g: &crate::Graph) -> bool {
        self.witness.count() == self.value && self.quantity.check(g, &self.witness)
    }
}
