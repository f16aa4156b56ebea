use anyhow::{bail, Result};
use domprod::domsolve::{gamma_exact, gamma_total_exact, gamma_upper_exact};
use domprod::graphkit::{clique_partition, crt_isomorphism, CliquePartition};
use domprod::theory::{self, BoundReport};
use domprod::{Descriptor, Graph, Quantity, SolveOptions};

use crate::cache::Cache;
use crate::record::ResultRecord;

/// Proven bounds for `quantity` on the graph `descriptor` names.
pub fn bounds_for(descriptor: &Descriptor, quantity: Quantity) -> domprod::Result<BoundReport> {
    match (descriptor, quantity) {
        (Descriptor::UnitaryCayley(n), Quantity::Gamma) => theory::ucg_gamma_bounds(*n),
        (Descriptor::UnitaryCayley(n), Quantity::GammaTotal) => theory::ucg_gamma_total_bounds(*n),
        (Descriptor::UnitaryCayley(n), Quantity::Upper) => theory::ucg_upper_bounds(*n),
        (Descriptor::Product(spec), Quantity::Gamma) => theory::gamma_bounds(spec),
        (Descriptor::Product(spec), Quantity::GammaTotal) => theory::gamma_total_bounds(spec),
        (Descriptor::Product(spec), Quantity::Upper) => theory::upper_bounds(spec),
    }
}

/// Clique partition in the vertex numbering of `descriptor.graph()`.
pub fn partition_for(descriptor: &Descriptor) -> domprod::Result<CliquePartition> {
    match descriptor {
        Descriptor::Product(spec) => clique_partition(&spec.canonical()),
        Descriptor::UnitaryCayley(n) => {
            let map = crt_isomorphism(*n)?;
            let p = clique_partition(map.spec())?;
            let cliques = p
                .cliques
                .iter()
                .map(|c| c.iter().map(|&i| map.from_product_index(i as u64) as usize).collect())
                .collect();
            Ok(CliquePartition { cliques })
        }
    }
}

pub fn solve_graph(g: &Graph, descriptor: &Descriptor, quantity: Quantity, opts: &SolveOptions) -> Result<ResultRecord> {
    let result = match quantity {
        Quantity::Gamma => gamma_exact(g, opts)?,
        Quantity::GammaTotal => gamma_total_exact(g, opts)?,
        Quantity::Upper => {
            let opts = SolveOptions { clique_partition: Some(partition_for(descriptor)?), ..opts.clone() };
            gamma_upper_exact(g, &opts)?
        }
    };
    if !result.witness_valid(g) {
        bail!("solver returned a witness that fails the {quantity} check");
    }
    let bounds = bounds_for(descriptor, quantity)?;
    let value = result.value as u64;
    if result.optimal && !bounds.contains(value) {
        bail!("{quantity} = {value} lies outside the proven interval [{}, {}]", bounds.lo, bounds.hi);
    }
    let (lo, hi) = if result.optimal { (value, value) } else { (bounds.lo, value.min(bounds.hi)) };
    Ok(ResultRecord::from_solve(descriptor, &result, lo, hi))
}

/// Cached when an optimal entry exists, otherwise solved and stored.
pub fn solve_cached(
    descriptor: &Descriptor,
    quantity: Quantity,
    opts: &SolveOptions,
    cache: Option<&Cache>,
) -> Result<ResultRecord> {
    let g = descriptor.graph()?;
    let key = descriptor.canonical_string();
    if let Some(cache) = cache {
        if let Some(hit) = cache.lookup(&key, quantity.name(), &g)? {
            if hit.optimal {
                return Ok(hit);
            }
        }
    }
    let record = solve_graph(&g, descriptor, quantity, opts)?;
    if let Some(cache) = cache {
        cache.store(&record)?;
    }
    Ok(record)
}
