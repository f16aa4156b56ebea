use super::{Method, Quantity, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::graphkit::Graph;
use crate::vertex_set::VertexSet;

pub const ORACLE_CAP_GAMMA: usize = 20;
pub const ORACLE_CAP_UPPER: usize = 16;

/// Exhaustive search over subsets in order of size (increasing for `γ`,
/// `γ_t`; decreasing with a minimality test for `Γ`), lexicographic within
/// a size. Shares no code with the branch-and-bound solvers.
pub fn gamma_oracle(g: &Graph, quantity: Quantity) -> Result<SolveResult> {
    let n = g.n();
    let cap = match quantity {
        Quantity::Upper => ORACLE_CAP_UPPER,
        _ => ORACLE_CAP_GAMMA,
    };
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("empty graph".into()));
    }
    let open: Vec<u32> = (0..n).map(|v| (0..n).filter(|&u| g.adjacent(v, u)).fold(0, |m, u| m | 1 << u)).collect();
    let all: u32 = if n == 32 { !0 } else { (1 << n) - 1 };
    let dominated_by = |mask: u32, closed: bool| -> u32 {
        let mut cover = 0u32;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            cover |= open[v];
            if closed {
                cover |= 1 << v;
            }
        }
        cover
    };
    let minimal = |mask: u32| -> bool {
        if dominated_by(mask, true) != all {
            return false;
        }
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            if dominated_by(mask & !(1 << v), true) == all {
                return false;
            }
        }
        true
    };
    let accept = |mask: u32| match quantity {
        Quantity::Gamma => dominated_by(mask, true) == all,
        Quantity::GammaTotal => dominated_by(mask, false) == all,
        Quantity::Upper => minimal(mask),
    };
    let sizes: Vec<usize> = match quantity {
        Quantity::Upper => (1..=n).rev().collect(),
        _ => (1..=n).collect(),
    };
    let mut examined = 0u64;
    for k in sizes {
        for mask in combinations(n, k) {
            examined += 1;
            if accept(mask) {
                let witness = VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
                return Ok(SolveResult {
                    quantity,
                    value: k,
                    witness,
                    optimal: true,
                    method: Method::Oracle,
                    stats: SolveStats { nodes: examined, ..Default::default() },
                });
            }
        }
    }
    Err(Error::IsolatedVertex(g.isolated_vertex().unwrap_or(0)))
}

/// `k`-subsets of `0..n` as bit masks, in lexicographic order of their
/// sorted element lists.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mask = idx.iter().fold(0u32, |m, &i| m | 1 << i);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    })
}
