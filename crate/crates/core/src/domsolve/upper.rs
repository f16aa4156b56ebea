use std::borrow::Cow;

use super::check::shrink_to_minimal;
use super::meter::Meter;
use super::{Method, Quantity, SolveOptions, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::graphkit::Graph;
use crate::vertex_set::VertexSet;

/// Maximum minimal dominating set.
///
/// Vertices are decided in index order. Adding a vertex must leave every
/// social member with at least one potential private neighbor, and once a
/// vertex's closed neighborhood is fully decided it must be dominated.
/// With a clique partition of clique size `b_1` the packing inequality
/// `b_1 ℓ + 2 s ≤ n` caps the final size.
pub fn gamma_upper_exact(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    if g.n() == 0 {
        return Err(Error::InvalidArgument("empty graph".into()));
    }
    let b1 = match &opts.clique_partition {
        Some(cp) => {
            let size = cp.clique_size();
            if !cp.validate(g, size) {
                return Err(Error::InvalidArgument("clique partition does not fit the graph".into()));
            }
            Some(size)
        }
        None => None,
    };
    let meter = Meter::new(opts.budget);
    let components = g.components();
    let mut witness = VertexSet::new(g.n());
    let mut stats = SolveStats::default();
    for comp in &components {
        let sub: Cow<Graph> = if components.len() == 1 {
            Cow::Borrowed(g)
        } else {
            let mut s = g.induced(comp);
            if g.is_vertex_transitive() {
                s = s.mark_vertex_transitive();
            }
            Cow::Owned(s)
        };
        let mut search = UpperSearch::new(&sub, b1, &meter);
        search.run(opts.deterministic);
        stats.packing_checked += search.packing_checked;
        stats.packing_violations += search.packing_violations;
        for &v in &search.best_set {
            witness.insert(comp[v]);
        }
    }
    stats.nodes = meter.nodes();
    stats.elapsed_ms = meter.elapsed_ms();
    Ok(SolveResult {
        quantity: Quantity::Upper,
        value: witness.count(),
        witness,
        optimal: !meter.exhausted(),
        method: Method::BranchAndBound,
        stats,
    })
}

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct UpperSearch<'a> {
    n: usize,
    adj: &'a [VertexSet],
    g: &'a Graph,
    /// `closes_at[i]`: vertices whose closed neighborhood is fully decided
    /// once vertex `i` is.
    closes_at: Vec<Vec<usize>>,
    closure: Vec<usize>,
    status: Vec<u8>,
    members: VertexSet,
    size: usize,
    /// Number of neighbors in the current set.
    dom: Vec<u32>,
    /// For members: neighbors outside the set whose only neighbor in the set is this member.
    private: Vec<u32>,
    b1: Option<usize>,
    vertex_transitive: bool,
    meter: &'a Meter,
    best: usize,
    best_set: Vec<usize>,
    packing_checked: u64,
    packing_violations: u64,
}

impl<'a> UpperSearch<'a> {
    fn new(g: &'a Graph, b1: Option<usize>, meter: &'a Meter) -> Self {
        let n = g.n();
        let closure: Vec<usize> = (0..n).map(|v| g.neighbors(v).iter().last().map_or(v, |m| m.max(v))).collect();
        let mut closes_at = vec![Vec::new(); n];
        for (v, &c) in closure.iter().enumerate() {
            closes_at[c].push(v);
        }
        UpperSearch {
            n,
            adj: g.rows(),
            g,
            closes_at,
            closure,
            status: vec![UNDECIDED; n],
            members: VertexSet::new(n),
            size: 0,
            dom: vec![0; n],
            private: vec![0; n],
            b1,
            vertex_transitive: g.is_vertex_transitive(),
            meter,
            best: 0,
            best_set: Vec::new(),
            packing_checked: 0,
            packing_violations: 0,
        }
    }

    fn run(&mut self, deterministic: bool) {
        let start = self.incumbent();
        if deterministic {
            self.best = start.len() - 1;
            self.best_set = start;
        } else {
            self.best = start.len();
            self.best_set = start;
        }
        if self.vertex_transitive {
            // some maximum minimal dominating set contains vertex 0
            if self.add(0) && self.closed_ok(0) {
                self.dfs(1);
            }
            self.remove(0);
        } else {
            self.dfs(0);
        }
        self.best_set.sort_unstable();
    }

    /// Larger of a maximal independent set and a shrunk full vertex set.
    fn incumbent(&self) -> Vec<usize> {
        let mut independent = VertexSet::new(self.n);
        let mut blocked = VertexSet::new(self.n);
        for v in 0..self.n {
            if !blocked.contains(v) {
                independent.insert(v);
                blocked.union_with(&self.adj[v]);
            }
        }
        let shrunk = shrink_to_minimal(self.g, &VertexSet::full(self.n)).expect("full set dominates");
        let pick = if shrunk.count() > independent.count() { shrunk } else { independent };
        pick.to_vec()
    }

    /// Member of the set adjacent to `w`, other than `skip`.
    fn other_member(&self, w: usize, skip: usize) -> usize {
        for (i, (&a, &m)) in self.adj[w].words().iter().zip(self.members.words()).enumerate() {
            let mut bits = a & m;
            while bits != 0 {
                let v = i * 64 + bits.trailing_zeros() as usize;
                if v != skip {
                    return v;
                }
                bits &= bits - 1;
            }
        }
        unreachable!("vertex {w} has no other member neighbor")
    }

    /// Adds `v`; returns false if some social member lost its last
    /// potential private neighbor. Always undo with [`Self::remove`].
    fn add(&mut self, v: usize) -> bool {
        let mut touched: Vec<usize> = Vec::new();
        if self.dom[v] == 1 {
            // v was a private neighbor of its unique member neighbor
            let d = self.other_member(v, v);
            self.private[d] -= 1;
            touched.push(d);
        }
        self.members.insert(v);
        self.status[v] = IN;
        self.size += 1;
        self.private[v] = 0;
        let adj = self.adj;
        for w in adj[v].iter() {
            self.dom[w] += 1;
            if self.status[w] == IN {
                touched.push(w);
            } else if self.dom[w] == 1 {
                self.private[v] += 1;
            } else if self.dom[w] == 2 {
                let d = self.other_member(w, v);
                self.private[d] -= 1;
                touched.push(d);
            }
        }
        touched.push(v);
        touched.iter().all(|&d| self.dom[d] == 0 || self.private[d] > 0)
    }

    fn remove(&mut self, v: usize) {
        let adj = self.adj;
        for w in adj[v].iter() {
            if self.status[w] != IN && self.dom[w] == 2 {
                let d = self.other_member(w, v);
                self.private[d] += 1;
            }
            self.dom[w] -= 1;
        }
        self.members.remove(v);
        self.status[v] = UNDECIDED;
        self.size -= 1;
        if self.dom[v] == 1 {
            let d = self.other_member(v, v);
            self.private[d] += 1;
        }
    }

    fn closed_ok(&self, i: usize) -> bool {
        self.closes_at[i].iter().all(|&w| self.status[w] == IN || self.dom[w] > 0)
    }

    fn dfs(&mut self, i: usize) {
        if !self.meter.tick() {
            return;
        }
        if i == self.n {
            self.leaf();
            return;
        }
        if self.size + (self.n - i) <= self.best {
            return;
        }
        if let Some(b1) = self.b1 {
            // members that are lonely for good
            let fixed_lonely =
                self.members.iter().filter(|&d| self.dom[d] == 0 && self.closure[d] < i).count();
            let cap = (self.n - (b1 - 2) * fixed_lonely) / 2;
            if cap <= self.best {
                return;
            }
        }
        if self.add(i) && self.closed_ok(i) {
            self.dfs(i + 1);
        }
        self.remove(i);
        self.status[i] = OUT;
        if self.closed_ok(i) {
            self.dfs(i + 1);
        }
        self.status[i] = UNDECIDED;
    }

    fn leaf(&mut self) {
        if let Some(b1) = self.b1 {
            let lonely = self.members.iter().filter(|&d| self.dom[d] == 0).count();
            let social = self.size - lonely;
            self.packing_checked += 1;
            if b1 * lonely + 2 * social > self.n {
                self.packing_violations += 1;
            }
        }
        if self.size > self.best {
            self.best = self.size;
            self.best_set = self.members.to_vec();
        }
    }
}
