use std::borrow::Cow;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::meter::Meter;
use super::{Method, Quantity, SolveOptions, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::graphkit::Graph;
use crate::vertex_set::VertexSet;

/// Minimum dominating set.
pub fn gamma_exact(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, Quantity::Gamma, opts)
}

/// Minimum total dominating set; graphs with an isolated vertex have none.
pub fn gamma_total_exact(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    if let Some(v) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    solve(g, Quantity::GammaTotal, opts)
}

fn solve(g: &Graph, quantity: Quantity, opts: &SolveOptions) -> Result<SolveResult> {
    if g.n() == 0 {
        return Err(Error::InvalidArgument("empty graph".into()));
    }
    let meter = Meter::new(opts.budget);
    let components = g.components();
    let mut witness = VertexSet::new(g.n());
    let mut optimal = true;
    for comp in &components {
        let sub: Cow<Graph> = if components.len() == 1 {
            Cow::Borrowed(g)
        } else {
            let mut s = g.induced(comp);
            if g.is_vertex_transitive() {
                // components of a vertex-transitive graph are isomorphic and vertex-transitive
                s = s.mark_vertex_transitive();
            }
            Cow::Owned(s)
        };
        let search = CoverSearch::new(&sub, quantity, &meter);
        let (set, done) = search.run(opts);
        optimal &= done;
        for v in set {
            witness.insert(comp[v]);
        }
    }
    Ok(SolveResult {
        quantity,
        value: witness.count(),
        witness,
        optimal: optimal && !meter.exhausted(),
        method: Method::BranchAndBound,
        stats: SolveStats { nodes: meter.nodes(), elapsed_ms: meter.elapsed_ms(), ..Default::default() },
    })
}

/// Set cover over `N[v]` (domination) or `N(v)` (total domination). The
/// neighborhoods are symmetric, so `sets[u]` is also the list of candidates
/// covering `u`.
struct CoverSearch<'a> {
    n: usize,
    sets: Vec<VertexSet>,
    vertex_transitive: bool,
    meter: &'a Meter,
    best_size: AtomicUsize,
    best: Mutex<Vec<usize>>,
    first_only: bool,
    stop: AtomicBool,
}

impl<'a> CoverSearch<'a> {
    fn new(g: &Graph, quantity: Quantity, meter: &'a Meter) -> Self {
        let sets = (0..g.n())
            .map(|v| match quantity {
                Quantity::Gamma => g.closed_neighborhood(v),
                _ => g.neighbors(v).clone(),
            })
            .collect();
        CoverSearch {
            n: g.n(),
            sets,
            vertex_transitive: g.is_vertex_transitive(),
            meter,
            best_size: AtomicUsize::new(usize::MAX),
            best: Mutex::new(Vec::new()),
            first_only: false,
            stop: AtomicBool::new(false),
        }
    }

    /// Returns a cover and whether it is proven minimum.
    fn run(mut self, opts: &SolveOptions) -> (Vec<usize>, bool) {
        let greedy = self.greedy();
        let max_set = self.sets.iter().map(VertexSet::count).max().unwrap_or(1).max(1);
        let lower = self.n.div_ceil(max_set);
        self.best_size.store(greedy.len(), Ordering::Relaxed);
        *self.best.get_mut().unwrap() = greedy.clone();
        if greedy.len() > lower {
            let mut uncovered = VertexSet::full(self.n);
            let mut chosen = Vec::new();
            if self.vertex_transitive {
                // some optimal cover contains vertex 0
                uncovered.difference_with(&self.sets[0]);
                chosen.push(0);
            }
            let mut excluded = VertexSet::new(self.n);
            if opts.threads > 1 && !opts.deterministic {
                self.parallel_root(&uncovered, &chosen, opts.threads);
            } else {
                self.dfs(&uncovered, &mut excluded, &mut chosen);
            }
        }
        let complete = !self.meter.exhausted();
        let mut best = std::mem::take(self.best.get_mut().unwrap());
        if opts.deterministic && complete {
            if let Some(lex) = self.lex_smallest(best.len()) {
                best = lex;
            }
        }
        best.sort_unstable();
        (best, complete)
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = VertexSet::full(self.n);
        let mut chosen = Vec::new();
        while !uncovered.is_empty() {
            let v = (0..self.n)
                .max_by_key(|&v| (self.sets[v].intersection_count(&uncovered), std::cmp::Reverse(v)))
                .expect("nonempty graph");
            uncovered.difference_with(&self.sets[v]);
            chosen.push(v);
        }
        chosen
    }

    fn offer(&self, chosen: &[usize]) {
        let mut best = self.best.lock().unwrap();
        if chosen.len() < self.best_size.load(Ordering::Relaxed) {
            *best = chosen.to_vec();
            self.best_size.store(chosen.len(), Ordering::Relaxed);
            if self.first_only {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
    }

    fn parallel_root(&self, uncovered: &VertexSet, chosen: &[usize], threads: usize) {
        if uncovered.is_empty() {
            self.offer(chosen);
            return;
        }
        let u = uncovered.first().expect("nonempty");
        let cands: Vec<usize> = self.sets[u].iter().collect();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| {
            cands.par_iter().enumerate().for_each(|(i, &v)| {
                let mut excluded = VertexSet::from_indices(self.n, cands[..i].iter().copied());
                let mut next = uncovered.clone();
                next.difference_with(&self.sets[v]);
                let mut picked = chosen.to_vec();
                picked.push(v);
                self.dfs(&next, &mut excluded, &mut picked);
            })
        });
    }

    fn dfs(&self, uncovered: &VertexSet, excluded: &mut VertexSet, chosen: &mut Vec<usize>) {
        if self.stop.load(Ordering::Relaxed) || !self.meter.tick() {
            return;
        }
        let remaining = uncovered.count();
        if remaining == 0 {
            self.offer(chosen);
            return;
        }
        let best = self.best_size.load(Ordering::Relaxed);
        if chosen.len() + 1 >= best {
            return;
        }
        let picks_left = best - 1 - chosen.len();

        // largest possible coverage from `picks_left` allowed picks
        let mut gains = vec![0u32; self.n];
        let mut top = vec![0u32; picks_left];
        for v in 0..self.n {
            if excluded.contains(v) {
                continue;
            }
            let c = self.sets[v].intersection_count(uncovered) as u32;
            gains[v] = c;
            if c > top[picks_left - 1] {
                let mut i = picks_left - 1;
                while i > 0 && top[i - 1] < c {
                    top[i] = top[i - 1];
                    i -= 1;
                }
                top[i] = c;
            }
        }
        if top.iter().map(|&c| c as usize).sum::<usize>() < remaining {
            return;
        }

        // fractional bound: element u weighs 1 / (best gain among its candidates)
        let mut fractional = 0.0f64;
        let mut branch = (usize::MAX, usize::MAX);
        for u in uncovered.iter() {
            let mut count = 0usize;
            let mut max_gain = 0u32;
            for_each_allowed(&self.sets[u], excluded, |v| {
                count += 1;
                max_gain = max_gain.max(gains[v]);
            });
            if count == 0 {
                return;
            }
            fractional += 1.0 / max_gain as f64;
            if count < branch.0 {
                branch = (count, u);
            }
        }
        if fractional > picks_left as f64 + 1e-9 {
            return;
        }

        let mut cands = Vec::with_capacity(branch.0);
        for_each_allowed(&self.sets[branch.1], excluded, |v| cands.push(v));
        cands.sort_by_key(|&v| (std::cmp::Reverse(gains[v]), v));
        // a candidate whose new coverage lies inside an earlier one's can be swapped for it
        let covers: Vec<VertexSet> = cands
            .iter()
            .map(|&v| {
                let mut c = self.sets[v].clone();
                c.intersect_with(uncovered);
                c
            })
            .collect();
        let mut kept = Vec::with_capacity(cands.len());
        for (i, &v) in cands.iter().enumerate() {
            if !(0..i).any(|j| covers[i].is_subset(&covers[j])) {
                kept.push(v);
            }
        }
        let cands = kept;
        for &v in &cands {
            let mut next = uncovered.clone();
            next.difference_with(&self.sets[v]);
            chosen.push(v);
            self.dfs(&next, excluded, chosen);
            chosen.pop();
            excluded.insert(v);
            if self.stop.load(Ordering::Relaxed) || chosen.len() + 1 >= self.best_size.load(Ordering::Relaxed) {
                break;
            }
        }
        for &v in &cands {
            excluded.remove(v);
        }
    }

    /// Is there a cover of size `<= k` containing `forced` and avoiding `excluded`?
    fn feasible(&self, forced: &[usize], excluded: &VertexSet, k: usize) -> Option<bool> {
        let mut uncovered = VertexSet::full(self.n);
        for &v in forced {
            uncovered.difference_with(&self.sets[v]);
        }
        if uncovered.is_empty() {
            return Some(forced.len() <= k);
        }
        self.best_size.store(k + 1, Ordering::Relaxed);
        self.stop.store(false, Ordering::Relaxed);
        let mut chosen = forced.to_vec();
        let mut excluded = excluded.clone();
        self.dfs(&uncovered, &mut excluded, &mut chosen);
        if self.meter.exhausted() {
            return None;
        }
        Some(self.best_size.load(Ordering::Relaxed) <= k)
    }

    /// Lexicographically smallest cover of size `k`, decided vertex by vertex.
    fn lex_smallest(&mut self, k: usize) -> Option<Vec<usize>> {
        self.first_only = true;
        let mut forced = Vec::with_capacity(k);
        let mut excluded = VertexSet::new(self.n);
        for v in 0..self.n {
            if forced.len() == k {
                break;
            }
            forced.push(v);
            if !self.feasible(&forced, &excluded, k)? {
                forced.pop();
                excluded.insert(v);
            }
        }
        let mut uncovered = VertexSet::full(self.n);
        for &v in &forced {
            uncovered.difference_with(&self.sets[v]);
        }
        uncovered.is_empty().then_some(forced)
    }
}

/// Calls `f` on every member of `set ∖ excluded`.
#[inline]
fn for_each_allowed(set: &VertexSet, excluded: &VertexSet, mut f: impl FnMut(usize)) {
    for (i, (&w, &x)) in set.words().iter().zip(excluded.words()).enumerate() {
        let mut bits = w & !x;
        while bits != 0 {
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            f(i * 64 + tz);
        }
    }
}
