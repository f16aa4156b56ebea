use rayon::prelude::*;
use serde::Serialize;

use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::graphkit::{ucg_adjacent, Label, ProductSpec};
use crate::numth::jacobsthal;
use crate::vertex_set::VertexSet;

/// Largest `|V| · |D|` that [`verify_on_spec`] will scan.
const VERIFY_WORK_CAP: u128 = 400_000_000;
/// Largest vertex count for which a construction is materialized.
const CONSTRUCT_VERTEX_CAP: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Dominating,
    TotalDominating,
    MinimalDominating,
}

/// An explicit vertex set and the outcome of checking it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionResult {
    pub descriptor: Descriptor,
    pub kind: ConstructionKind,
    /// Indices in the descriptor's vertex numbering (row-major coordinates
    /// for products, residues for `X_n`).
    #[serde(skip)]
    pub vertex_set: VertexSet,
    pub labels: Vec<Label>,
    /// `false` only when the check was too large to run.
    pub verified: bool,
}

impl ConstructionResult {
    pub fn size(&self) -> usize {
        self.vertex_set.count()
    }
}

/// `{0, 1, …, g(n)−1}` in `X_n`; every vertex is adjacent to one of them.
pub fn consecutive_residue_set(n: u64) -> Result<ConstructionResult> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("X_n needs n >= 2, got {n}")));
    }
    if n as u128 > CONSTRUCT_VERTEX_CAP {
        return Err(Error::CapExceeded { requested: n as u128, cap: CONSTRUCT_VERTEX_CAP as usize });
    }
    let g = jacobsthal(n);
    let verified = (0..n).into_par_iter().all(|x| (0..g).any(|d| ucg_adjacent(n, x, d)));
    Ok(ConstructionResult {
        descriptor: Descriptor::UnitaryCayley(n),
        kind: ConstructionKind::TotalDominating,
        vertex_set: VertexSet::from_indices(n as usize, 0..g as usize),
        labels: (0..g).map(Label::Residue).collect(),
        verified,
    })
}

/// Sorted `∏ K_{n_i}` with a minimum factor count.
fn complete_sorted(spec: &ProductSpec, min_t: usize) -> Result<Vec<u64>> {
    if !spec.all_complete() {
        return Err(Error::Precondition(format!("{spec}: every factor must be complete (a_i = 1)")));
    }
    if !spec.is_canonical() {
        return Err(Error::Precondition(format!("{spec}: factor sizes must be nondecreasing")));
    }
    if spec.t() < min_t {
        return Err(Error::Precondition(format!("{spec}: need t >= {min_t}, got t = {}", spec.t())));
    }
    Ok(spec.part_counts())
}

fn product_result(
    spec: &ProductSpec,
    members: Vec<Vec<u64>>,
    kind: ConstructionKind,
) -> Result<ConstructionResult> {
    let total = spec.vertex_count_u128();
    if total > CONSTRUCT_VERTEX_CAP {
        return Err(Error::CapExceeded { requested: total, cap: CONSTRUCT_VERTEX_CAP as usize });
    }
    let mut vertex_set = VertexSet::new(total as usize);
    for m in &members {
        vertex_set.insert(spec.index_of(m) as usize);
    }
    let verified = match verify_on_spec(spec, &vertex_set, kind) {
        Some(true) => true,
        Some(false) => {
            return Err(Error::Precondition(format!("construction on {spec} failed its {kind:?} check")));
        }
        None => false,
    };
    let labels = vertex_set.iter().map(|i| Label::Tuple(spec.coords_of(i as u64))).collect();
    Ok(ConstructionResult { descriptor: Descriptor::Product(spec.clone()), kind, vertex_set, labels, verified })
}

/// `y_r = (r mod n_1, …, r mod n_t)` for `r = 0..=t+m`.
pub fn diagonal_set(spec: &ProductSpec, m: u64) -> Result<ConstructionResult> {
    let n = complete_sorted(spec, 3)?;
    let t = n.len() as u64;
    if t + m >= n[0] * (m + 1) {
        return Err(Error::Precondition(format!(
            "(t+m)/(m+1) < n_1 fails: ({t}+{m})/({m}+1) >= {}",
            n[0]
        )));
    }
    if t + m >= n[1] {
        return Err(Error::Precondition(format!("t+m < n_2 fails: {t}+{m} >= {}", n[1])));
    }
    let members = (0..=t + m).map(|r| n.iter().map(|&ni| r % ni).collect()).collect();
    product_result(spec, members, ConstructionKind::TotalDominating)
}

/// The `t` diagonal vertices `(r, …, r)`, `r < t`, plus `(0,1,t,…,t)` and
/// `(1,0,t,…,t)`.
pub fn diagonal_plus_two_set(spec: &ProductSpec) -> Result<ConstructionResult> {
    let n = complete_sorted(spec, 4)?;
    let t = n.len() as u64;
    if n[1] < 3 {
        return Err(Error::Precondition(format!("n_2 >= 3 fails: n_2 = {}", n[1])));
    }
    if n[0] != t {
        return Err(Error::Precondition(format!("n_1 = t fails: n_1 = {}, t = {t}", n[0])));
    }
    if n[2] < t + 1 {
        return Err(Error::Precondition(format!("n_3 >= t+1 fails: n_3 = {} < {}", n[2], t + 1)));
    }
    let mut members: Vec<Vec<u64>> = (0..t).map(|r| vec![r; n.len()]).collect();
    for head in [[0, 1], [1, 0]] {
        let mut v = vec![t; n.len()];
        v[..2].copy_from_slice(&head);
        members.push(v);
    }
    product_result(spec, members, ConstructionKind::Dominating)
}

/// The eight vertices of `{0,1}^4` with an even number of ones among the
/// last three coordinates.
pub fn cube_corner_set(spec: &ProductSpec) -> Result<ConstructionResult> {
    let n = complete_sorted(spec, 4)?;
    if n.len() != 4 {
        return Err(Error::Precondition(format!("{spec}: need exactly four factors")));
    }
    if n[0] != 2 {
        return Err(Error::Precondition(format!("n_1 = 2 fails: n_1 = {}", n[0])));
    }
    let corners = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]];
    let members = (0..2u64)
        .flat_map(|h| corners.iter().map(move |c| vec![h, c[0], c[1], c[2]]))
        .collect();
    product_result(spec, members, ConstructionKind::Dominating)
}

/// Every vertex whose first coordinate lies in the partite set of residue 0
/// of the first factor; a minimal dominating set of size `|V| / b_1`.
pub fn partite_slice_set(spec: &ProductSpec) -> Result<ConstructionResult> {
    if !spec.is_canonical() {
        return Err(Error::Precondition(format!("{spec}: spec must be in canonical order")));
    }
    let total = spec.vertex_count_u128();
    if total > CONSTRUCT_VERTEX_CAP {
        return Err(Error::CapExceeded { requested: total, cap: CONSTRUCT_VERTEX_CAP as usize });
    }
    let b1 = spec.factors()[0].b;
    let members = (0..total as u64).map(|i| spec.coords_of(i)).filter(|c| c[0] % b1 == 0).collect();
    product_result(spec, members, ConstructionKind::MinimalDominating)
}

/// Checks `d` against `spec` using coordinate adjacency, without building
/// the graph. `None` when `|V|·|D|` is too large to scan.
pub fn verify_on_spec(spec: &ProductSpec, d: &VertexSet, kind: ConstructionKind) -> Option<bool> {
    let total = spec.vertex_count_u128();
    if total != d.universe() as u128 {
        return Some(false);
    }
    if total * d.count().max(1) as u128 > VERIFY_WORK_CAP {
        return None;
    }
    let members: Vec<(usize, Vec<u64>)> = d.iter().map(|i| (i, spec.coords_of(i as u64))).collect();
    let total = total as usize;
    // per vertex: the member neighbor when it is unique, usize::MAX when there are several
    let outcome: Option<Vec<usize>> = (0..total)
        .into_par_iter()
        .map(|x| {
            let cx = spec.coords_of(x as u64);
            let mut seen = None;
            for (i, c) in &members {
                if spec.coords_adjacent(&cx, c) {
                    if seen.is_some() {
                        return Some(usize::MAX);
                    }
                    seen = Some(*i);
                }
            }
            match (seen, kind) {
                (Some(i), _) => Some(i),
                (None, ConstructionKind::TotalDominating) => None,
                (None, _) if d.contains(x) => Some(usize::MAX - 1),
                (None, _) => None,
            }
        })
        .collect();
    let Some(unique) = outcome else { return Some(false) };
    if kind != ConstructionKind::MinimalDominating {
        return Some(true);
    }
    // Ore: each member is lonely or some outside vertex sees only it
    let mut ok = VertexSet::new(total);
    for (x, &u) in unique.iter().enumerate() {
        if d.contains(x) {
            if u == usize::MAX - 1 {
                ok.insert(x);
            }
        } else if u < total {
            ok.insert(u);
        }
    }
    Some(d.is_subset(&ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domsolve::{is_dominating, is_minimal_dominating, is_total_dominating};
    use crate::graphkit::{product_spec_graph, unitary_cayley};

    fn complete(sizes: &[u64]) -> ProductSpec {
        ProductSpec::complete(sizes).unwrap()
    }

    #[test]
    fn consecutive_residues() {
        let r = consecutive_residue_set(30).unwrap();
        assert_eq!(r.vertex_set.to_vec(), vec![0, 1, 2, 3, 4, 5]);
        assert!(r.verified);
        assert!(is_total_dominating(&unitary_cayley(30).unwrap(), &r.vertex_set));
        assert_eq!(consecutive_residue_set(4).unwrap().vertex_set.to_vec(), vec![0, 1]);
        assert_eq!(consecutive_residue_set(210).unwrap().size(), 10);
    }

    #[test]
    fn diagonal_examples() {
        let r = diagonal_set(&complete(&[4, 5, 7]), 0).unwrap();
        assert_eq!(r.size(), 4);
        assert!(r.verified);
        let g = product_spec_graph(&complete(&[4, 5, 7])).unwrap();
        assert!(is_total_dominating(&g, &r.vertex_set));
        assert_eq!(diagonal_set(&complete(&[4, 7, 7, 7]), 1).unwrap().size(), 6);
        let err = diagonal_set(&complete(&[2, 3, 3]), 0).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.contains("(t+m)/(m+1) < n_1")));
    }

    #[test]
    fn diagonal_plus_two_examples() {
        let spec = complete(&[4, 4, 5, 5]);
        let r = diagonal_plus_two_set(&spec).unwrap();
        assert_eq!(r.size(), 6);
        assert!(is_dominating(&product_spec_graph(&spec).unwrap(), &r.vertex_set));
        assert_eq!(diagonal_plus_two_set(&complete(&[4, 5, 5, 5])).unwrap().size(), 6);
        let err = diagonal_plus_two_set(&complete(&[3, 3, 3, 3])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn cube_corner_examples() {
        for sizes in [[2, 3, 3, 3], [2, 3, 5, 7]] {
            let spec = complete(&sizes);
            let r = cube_corner_set(&spec).unwrap();
            assert_eq!(r.size(), 8);
            assert!(is_dominating(&product_spec_graph(&spec).unwrap(), &r.vertex_set));
        }
        assert!(cube_corner_set(&complete(&[3, 3, 3, 3])).is_err());
    }

    #[test]
    fn partite_slice_examples() {
        for (pairs, size) in [(vec![(1, 3), (1, 3)], 3), (vec![(1, 2)], 1), (vec![(2, 2), (1, 3)], 6)] {
            let spec = ProductSpec::from_pairs(&pairs).unwrap();
            let r = partite_slice_set(&spec).unwrap();
            assert_eq!(r.size(), size);
            assert!(r.verified);
            assert!(is_minimal_dominating(&product_spec_graph(&spec).unwrap(), &r.vertex_set));
        }
    }

    #[test]
    fn verifier_rejects_bad_sets() {
        let spec = complete(&[3, 3]);
        let d = VertexSet::from_indices(9, [0]);
        assert_eq!(verify_on_spec(&spec, &d, ConstructionKind::Dominating), Some(false));
        // a full row of K_3 x K_3 dominates but is not total
        let row = VertexSet::from_indices(9, [0, 1, 2]);
        assert_eq!(verify_on_spec(&spec, &row, ConstructionKind::Dominating), Some(true));
        assert_eq!(verify_on_spec(&spec, &row, ConstructionKind::MinimalDominating), Some(true));
        assert_eq!(verify_on_spec(&spec, &row, ConstructionKind::TotalDominating), Some(false));
        let all = VertexSet::full(9);
        assert_eq!(verify_on_spec(&spec, &all, ConstructionKind::MinimalDominating), Some(false));
    }
}
