use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphkit::Graph;
use crate::vertex_set::VertexSet;

/// Every vertex is in `d` or adjacent to a member of `d`.
pub fn is_dominating(g: &Graph, d: &VertexSet) -> bool {
    first_undominated(g, d).is_none()
}

fn first_undominated(g: &Graph, d: &VertexSet) -> Option<usize> {
    (0..g.n()).find(|&v| !d.contains(v) && !g.neighbors(v).intersects(d))
}

/// Every vertex, members included, is adjacent to a member of `d`.
pub fn is_total_dominating(g: &Graph, d: &VertexSet) -> bool {
    (0..g.n()).all(|v| g.neighbors(v).intersects(d))
}

/// Lonely/social split of a vertex set with one private neighbor per
/// social vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub lonely: Vec<usize>,
    pub social: Vec<usize>,
    /// Social vertex ↦ its smallest-index private neighbor.
    pub private_neighbor: BTreeMap<usize, usize>,
}

/// Lonely members have no neighbor in `d`; each social member gets its
/// smallest private neighbor (a vertex outside `d` whose only neighbor in
/// `d` is that member). Fails with [`Error::NotMinimal`] when a social
/// member has none.
pub fn classify(g: &Graph, d: &VertexSet) -> Result<VertexClassification> {
    let mut lonely = Vec::new();
    let mut social = Vec::new();
    let mut private_neighbor = BTreeMap::new();
    for v in d.iter() {
        if !g.neighbors(v).intersects(d) {
            lonely.push(v);
            continue;
        }
        social.push(v);
        let p = g
            .neighbors(v)
            .iter()
            .find(|&p| !d.contains(p) && g.neighbors(p).intersection_count(d) == 1)
            .ok_or(Error::NotMinimal(v))?;
        private_neighbor.insert(v, p);
    }
    Ok(VertexClassification { lonely, social, private_neighbor })
}

/// Ore's criterion: `d` dominates and each member is lonely or has a
/// private neighbor.
pub fn is_minimal_dominating(g: &Graph, d: &VertexSet) -> bool {
    is_dominating(g, d) && classify(g, d).is_ok()
}

/// Minimality straight from the definition: `d` dominates and no
/// one-element-smaller subset does.
pub fn is_minimal_by_definition(g: &Graph, d: &VertexSet) -> bool {
    if !is_dominating(g, d) {
        return false;
    }
    d.iter().all(|v| {
        let mut smaller = d.clone();
        smaller.remove(v);
        !is_dominating(g, &smaller)
    })
}

/// Removes redundant members (in index order) until `d` is minimal.
pub fn shrink_to_minimal(g: &Graph, d: &VertexSet) -> Result<VertexSet> {
    if let Some(v) = first_undominated(g, d) {
        return Err(Error::NotDominating(v));
    }
    let mut out = d.clone();
    for v in d.iter() {
        out.remove(v);
        if !is_dominating(g, &out) {
            out.insert(v);
        }
    }
    Ok(out)
}
