//! Solver-versus-formula tables over fixed instance lists.

use anyhow::{anyhow, Result};
use clap::ValueEnum;
use rayon::prelude::*;

use domprod::graphkit::{product_spec_graph, unitary_cayley, Factor};
use domprod::numth::{is_squarefree, jacobsthal, omega};
use domprod::theory::{complete_product_bounds, conjectured_upper, squarefree_ucg_gamma};
use domprod::{Descriptor, ProductSpec, Quantity, SolveOptions};

use crate::solve::solve_graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// γ(X_n) against the closed form, squarefree n ≤ 500 with ω(n) ≤ 3.
    #[value(alias = "eq7")]
    SquarefreeFormula,
    /// γ(K_a × K_b × K_c) against the closed form, 2 ≤ a ≤ b ≤ c ≤ 5.
    #[value(alias = "thm1")]
    ThreeFactors,
    /// γ(X_n) = g(n) for non-squarefree n ≤ 200 with ω(n) ≤ 3.
    #[value(alias = "thm4")]
    RepeatedPrime,
    /// Γ = |V|/b_1 for products with at most 27 vertices and t ≤ 3.
    #[value(alias = "upperdom-small")]
    UpperSmall,
}

pub struct Row {
    pub descriptor: String,
    pub formula: u64,
    pub solver: Option<u64>,
}

impl Row {
    pub fn matches(&self) -> bool {
        self.solver == Some(self.formula)
    }
}

/// Canonical specs with at most `max_vertices` vertices and `max_t` factors.
pub fn small_specs(max_vertices: u64, max_t: usize) -> Vec<ProductSpec> {
    fn extend(prefix: &mut Vec<Factor>, product: u64, max: u64, max_t: usize, out: &mut Vec<ProductSpec>) {
        if prefix.len() == max_t {
            return;
        }
        let (b0, a0) = prefix.last().map_or((2, 1), |f| (f.b, f.a));
        for b in b0..=max / product {
            let mut a = if b == b0 { a0 } else { 1 };
            while product * a * b <= max {
                prefix.push(Factor { a, b });
                out.push(ProductSpec::new(prefix.clone()).expect("factors are valid"));
                extend(prefix, product * a * b, max, max_t, out);
                prefix.pop();
                a += 1;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_vertices, max_t, &mut out);
    out
}

fn solved(descriptor: &Descriptor, g: &domprod::Graph, quantity: Quantity, opts: &SolveOptions) -> Result<Option<u64>> {
    let r = solve_graph(g, descriptor, quantity, opts)?;
    Ok(r.optimal.then_some(r.value))
}

fn ucg_row(n: u64, formula: u64, opts: &SolveOptions) -> Result<Row> {
    let d = Descriptor::UnitaryCayley(n);
    let solver = solved(&d, &unitary_cayley(n)?, Quantity::Gamma, opts)?;
    Ok(Row { descriptor: d.canonical_string(), formula, solver })
}

fn spec_row(spec: ProductSpec, quantity: Quantity, formula: u64, opts: &SolveOptions) -> Result<Row> {
    let g = product_spec_graph(&spec)?;
    let d = Descriptor::Product(spec);
    let solver = solved(&d, &g, quantity, opts)?;
    Ok(Row { descriptor: d.canonical_string(), formula, solver })
}

pub fn run(suite: Suite, opts: &SolveOptions) -> Result<Vec<Row>> {
    match suite {
        Suite::SquarefreeFormula => (2..=500u64)
            .filter(|&n| is_squarefree(n) && omega(n) <= 3)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| ucg_row(n, squarefree_ucg_gamma(n)?, opts))
            .collect(),
        Suite::RepeatedPrime => (2..=200u64)
            .filter(|&n| !is_squarefree(n) && omega(n) <= 3)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| ucg_row(n, jacobsthal(n), opts))
            .collect(),
        Suite::ThreeFactors => {
            let mut specs = Vec::new();
            for a in 2..=5 {
                for b in a..=5 {
                    for c in b..=5 {
                        specs.push(ProductSpec::complete(&[a, b, c])?);
                    }
                }
            }
            specs
                .into_par_iter()
                .map(|spec| {
                    let bounds = complete_product_bounds(&spec)?;
                    if !bounds.exact {
                        return Err(anyhow!("no closed form for {spec}"));
                    }
                    spec_row(spec, Quantity::Gamma, bounds.lo, opts)
                })
                .collect()
        }
        Suite::UpperSmall => small_specs(27, 3)
            .into_par_iter()
            .map(|spec| {
                let formula = conjectured_upper(&spec);
                spec_row(spec, Quantity::Upper, formula, opts)
            })
            .collect(),
    }
}

pub fn write_csv(rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(["descriptor", "formula", "solver", "match"])?;
    for r in rows {
        let solver = r.solver.map_or_else(|| "unsolved".to_string(), |v| v.to_string());
        w.write_record([r.descriptor.as_str(), &r.formula.to_string(), &solver, &r.matches().to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_enumeration_is_canonical_and_bounded() {
        let specs = small_specs(27, 3);
        assert!(specs.iter().all(|s| s.is_canonical() && s.t() <= 3 && s.vertex_count().unwrap() <= 27));
        let set: std::collections::HashSet<String> = specs.iter().map(|s| s.to_string()).collect();
        assert_eq!(set.len(), specs.len());
        assert!(set.contains("K[1,3]xK[1,3]xK[1,3]"));
        assert!(set.contains("K[13,2]"));
        assert!(!set.contains("K[1,2]xK[1,2]xK[1,2]xK[1,2]"));
    }
}
