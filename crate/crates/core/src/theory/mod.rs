//! Closed-form results about domination in `∏ K[a_i,b_i]` and `X_n`:
//! explicit dominating sets, interval bounds with the rules that produced
//! them, and number-theoretic certificates that `γ(X_n)` or `γ_t(X_n)` falls
//! below Jacobsthal's function.

mod bounds;
mod conjecture;
mod construct;
mod witness;

use serde::Serialize;

pub use bounds::{
    complete_product_bounds, gamma_bounds, gamma_total_bounds, prime_power_lower, small_first_factor_lower,
    squarefree_ucg_gamma, ucg_gamma_bounds, ucg_gamma_total_bounds, ucg_upper_bounds, upper_bounds, Fraction,
};
pub use conjecture::{conjecture_check, conjectured_upper, ConjectureCheck};
pub use construct::{
    consecutive_residue_set, cube_corner_set, diagonal_plus_two_set, diagonal_set, partite_slice_set,
    verify_on_spec, ConstructionKind, ConstructionResult,
};
pub use witness::{gap_certificate, total_gap_witness, GapCertificate, TotalGapWitness};

use crate::domsolve::Quantity;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Which side of an interval a rule constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

/// One rule's contribution to a [`BoundReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSource {
    pub rule: &'static str,
    pub side: Side,
    pub value: u64,
}

/// `lo ≤ quantity ≤ hi`, with every rule that was applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub quantity: Quantity,
    pub lo: u64,
    pub hi: u64,
    pub sources: Vec<BoundSource>,
    pub exact: bool,
    /// Conjectured value, kept apart from the proven interval.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjectured: Option<u64>,
    /// A set attaining `hi`, in the vertex numbering of the graph the bound
    /// is about, when one of the rules is constructive.
    #[serde(skip)]
    pub witness: Option<VertexSet>,
}

impl BoundReport {
    pub fn contains(&self, value: u64) -> bool {
        self.lo <= value && value <= self.hi
    }
}

/// Accumulates lower and upper bounds; `lo` is the largest lower bound and
/// `hi` the smallest upper bound seen.
#[derive(Clone, Debug)]
pub(crate) struct Interval {
    quantity: Quantity,
    lo: u64,
    hi: u64,
    sources: Vec<BoundSource>,
    witness: Option<VertexSet>,
    conjectured: Option<u64>,
}

impl Interval {
    pub fn new(quantity: Quantity, trivial_hi: u64) -> Interval {
        Interval {
            quantity,
            lo: 1,
            hi: trivial_hi,
            sources: vec![BoundSource { rule: "vertex-count", side: Side::Upper, value: trivial_hi }],
            witness: None,
            conjectured: None,
        }
    }

    pub fn lower(&mut self, rule: &'static str, value: u64) -> &mut Self {
        self.sources.push(BoundSource { rule, side: Side::Lower, value });
        self.lo = self.lo.max(value);
        self
    }

    pub fn upper(&mut self, rule: &'static str, value: u64) -> &mut Self {
        self.sources.push(BoundSource { rule, side: Side::Upper, value });
        if value < self.hi {
            self.hi = value;
            self.witness = None;
        }
        self
    }

    /// Upper bound backed by an explicit set of that size.
    pub fn upper_with(&mut self, rule: &'static str, witness: VertexSet) -> &mut Self {
        let value = witness.count() as u64;
        let better = value < self.hi || (value == self.hi && self.witness.is_none());
        self.upper(rule, value);
        if better {
            self.witness = Some(witness);
        }
        self
    }

    pub fn exact(&mut self, rule: &'static str, value: u64) -> &mut Self {
        self.lower(rule, value).upper(rule, value)
    }

    pub fn conjecture(&mut self, value: u64) -> &mut Self {
        self.conjectured = Some(value);
        self
    }

    pub fn finish(self) -> Result<BoundReport> {
        if self.lo > self.hi {
            return Err(Error::InconsistentBounds {
                quantity: self.quantity.name().to_string(),
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(BoundReport {
            quantity: self.quantity,
            lo: self.lo,
            hi: self.hi,
            exact: self.lo == self.hi,
            sources: self.sources,
            conjectured: self.conjectured,
            witness: self.witness,
        })
    }
}
