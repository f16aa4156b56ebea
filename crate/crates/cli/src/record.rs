use serde::{Deserialize, Serialize};

use domprod::{Descriptor, Graph, Quantity, SolveResult, VertexSet};

/// One solved (or budget-limited) instance, as printed and as cached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub descriptor: String,
    pub quantity: String,
    pub value: u64,
    pub lo: u64,
    pub hi: u64,
    /// Sorted vertex indices; residues for `ucg:<n>`.
    pub witness: Vec<usize>,
    /// Coordinate tuples of the witness for product descriptors.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness_tuples: Vec<Vec<u64>>,
    pub optimal: bool,
    pub method: String,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub tool_version: String,
    #[serde(default)]
    pub cached: bool,
}

impl ResultRecord {
    pub fn from_solve(descriptor: &Descriptor, result: &SolveResult, lo: u64, hi: u64) -> ResultRecord {
        let witness = result.witness.to_vec();
        ResultRecord {
            descriptor: descriptor.canonical_string(),
            quantity: result.quantity.name().to_string(),
            value: result.value as u64,
            lo,
            hi,
            witness_tuples: tuples(descriptor, &witness),
            witness,
            optimal: result.optimal,
            method: result.method.to_string(),
            nodes: result.stats.nodes,
            elapsed_ms: result.stats.elapsed_ms,
            tool_version: domprod::VERSION.to_string(),
            cached: false,
        }
    }

    pub fn key(&self) -> (&str, &str) {
        (&self.descriptor, &self.quantity)
    }

    /// Witness size matches `value` and passes the checker on `g`.
    pub fn witness_valid(&self, g: &Graph) -> bool {
        let Some(quantity) = Quantity::parse(&self.quantity) else { return false };
        if self.witness.len() as u64 != self.value || self.witness.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let set = VertexSet::from_indices(g.n(), self.witness.iter().copied());
        set.count() == self.witness.len() && quantity.check(g, &set)
    }
}

pub fn tuples(descriptor: &Descriptor, vertices: &[usize]) -> Vec<Vec<u64>> {
    match descriptor {
        Descriptor::Product(spec) => {
            let spec = spec.canonical();
            vertices.iter().map(|&v| spec.coords_of(v as u64)).collect()
        }
        Descriptor::UnitaryCayley(_) => Vec::new(),
    }
}
