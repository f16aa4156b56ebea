//! Search for `n` with `γ(X_n) < g(n)` (target `M`) or `γ_t(X_n) < g(n)`
//! (target `Mt`).

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use domprod::numth::{jacobsthal, omega};
use domprod::{Descriptor, Quantity, SolveOptions};

use crate::cache::Cache;
use crate::solve::{bounds_for, solve_cached};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "Mt", alias = "mt")]
    Mt,
}

impl Target {
    fn quantity(self) -> Quantity {
        match self {
            Target::M => Quantity::Gamma,
            Target::Mt => Quantity::GammaTotal,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Member,
    NonMember,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub n: u64,
    pub jacobsthal: u64,
    pub outcome: Outcome,
    /// Size of the best set found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    /// Proven lower bound on the quantity.
    pub lo: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<usize>,
    /// `bounds`, `construction` or `search`.
    pub certificate: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub fn scan_one(n: u64, target: Target, opts: &SolveOptions, cache: Option<&Cache>) -> anyhow::Result<ScanEntry> {
    let g_n = jacobsthal(n);
    let d = Descriptor::UnitaryCayley(n);
    let quantity = target.quantity();
    let bounds = bounds_for(&d, quantity)?;
    let entry = |outcome, value, lo, witness, certificate, reason| ScanEntry {
        n,
        jacobsthal: g_n,
        outcome,
        value,
        lo,
        witness,
        certificate,
        reason,
    };
    if bounds.lo >= g_n {
        return Ok(entry(Outcome::NonMember, None, bounds.lo, Vec::new(), "bounds", None));
    }
    if let Some(w) = bounds.witness.as_ref().filter(|w| (w.count() as u64) < g_n) {
        let g = d.graph()?;
        if quantity.check(&g, w) {
            let value = Some(w.count() as u64);
            return Ok(entry(Outcome::Member, value, bounds.lo, w.to_vec(), "construction", None));
        }
    }
    let r = solve_cached(&d, quantity, opts, cache)?;
    let lo = r.lo.max(bounds.lo);
    Ok(if r.value < g_n {
        entry(Outcome::Member, Some(r.value), lo, r.witness, "search", None)
    } else if r.optimal || lo >= g_n {
        entry(Outcome::NonMember, Some(r.value), lo, Vec::new(), "search", None)
    } else {
        let reason = format!("budget exhausted with best {} and lower bound {lo}", r.value);
        entry(Outcome::Undecided, Some(r.value), lo, Vec::new(), "search", Some(reason))
    })
}

pub fn scan(
    from: u64,
    to: u64,
    max_omega: Option<usize>,
    target: Target,
    opts: &SolveOptions,
    cache: Option<&Cache>,
) -> anyhow::Result<Vec<ScanEntry>> {
    let ns: Vec<u64> = (from.max(2)..=to).filter(|&n| max_omega.is_none_or(|w| omega(n) <= w)).collect();
    ns.into_par_iter().map(|n| scan_one(n, target, opts, cache)).collect()
}
