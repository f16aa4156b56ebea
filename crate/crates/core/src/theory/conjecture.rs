use serde::Serialize;

use crate::domsolve::{gamma_upper_exact, SolveOptions, SolveResult};
use crate::error::{Error, Result};
use crate::graphkit::{clique_partition, product_spec_graph, ProductSpec};

/// `|V| / b_1`, the size of the partite slice.
pub fn conjectured_upper(spec: &ProductSpec) -> u64 {
    let spec = spec.canonical();
    spec.vertex_count().expect("vertex count fits in u64") / spec.factors()[0].b
}

/// Exact `Γ` next to the conjectured value.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureCheck {
    pub conjectured: u64,
    #[serde(skip)]
    pub exact: SolveResult,
    pub value: u64,
    pub optimal: bool,
    /// Meaningful only when the solve finished.
    pub agrees: bool,
}

/// Solves `Γ` on the canonical product, with its clique partition feeding
/// the packing bound, and compares it to `|V| / b_1`.
pub fn conjecture_check(spec: &ProductSpec, opts: &SolveOptions) -> Result<ConjectureCheck> {
    let spec = spec.canonical();
    if spec.vertex_count().is_none() {
        return Err(Error::Overflow(format!("{spec} has more than 2^64 vertices")));
    }
    let g = product_spec_graph(&spec)?;
    let opts = SolveOptions { clique_partition: Some(clique_partition(&spec)?), ..opts.clone() };
    let exact = gamma_upper_exact(&g, &opts)?;
    let conjectured = conjectured_upper(&spec);
    let value = exact.value as u64;
    Ok(ConjectureCheck { conjectured, value, optimal: exact.optimal, agrees: exact.optimal && value == conjectured, exact })
}
