//! Graph families: balanced complete multipartite factors `K[a,b]`, direct
//! (tensor) products, disjoint unions and unitary Cayley graphs of `Z/nZ`,
//! together with the CRT identification `X_n ≅ ∏ K[p^(α-1), p]` and the
//! clique partition used by the upper domination bound.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numth::{self, crt_solve, gcd, Congruence};
use crate::vertex_set::VertexSet;

/// Largest graph materialized with dense adjacency. At this size the
/// adjacency rows take 128 MiB.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 15;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum Label {
    Residue(u64),
    Tuple(Vec<u64>),
    /// Product label when a side is not coordinate-shaped.
    Pair(Box<Label>, Box<Label>),
    /// Disjoint-union label: side index and the original label.
    Tagged(u8, Box<Label>),
}

impl Label {
    fn coords(&self) -> Option<Vec<u64>> {
        match self {
            Label::Residue(r) => Some(vec![*r]),
            Label::Tuple(t) => Some(t.clone()),
            _ => None,
        }
    }

    fn product(a: &Label, b: &Label) -> Label {
        match (a.coords(), b.coords()) {
            (Some(mut x), Some(y)) => {
                x.extend(y);
                Label::Tuple(x)
            }
            _ => Label::Pair(Box::new(a.clone()), Box::new(b.clone())),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Residue(r) => write!(f, "{r}"),
            Label::Tuple(t) => {
                write!(f, "(")?;
                for (i, x) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Label::Pair(a, b) => write!(f, "({a};{b})"),
            Label::Tagged(s, l) => write!(f, "{s}:{l}"),
        }
    }
}

/// Immutable simple graph with dense adjacency rows.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<Label>>,
    vertex_transitive: bool,
}

impl Graph {
    /// Builds a graph from a symmetric predicate evaluated on pairs `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut adj = vec![VertexSet::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
        }
        Graph { adj, labels: None, vertex_transitive: false }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { adj, labels: None, vertex_transitive: false })
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
            return Err(Error::InvalidArgument(format!("duplicate label {dup}")));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Asserts that the graph is vertex-transitive. Solvers use this to
    /// place vertex 0 in the solution without loss of generality, so only
    /// constructors that know the automorphism group set it.
    pub(crate) fn mark_vertex_transitive(mut self) -> Graph {
        self.vertex_transitive = true;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub(crate) fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    /// `N[v]`
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::count).sum::<usize>() / 2
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&Label> {
        self.labels.as_ref().map(|l| &l[v])
    }

    pub fn vertex_by_label(&self, label: &Label) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.vertex_transitive
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n()).all(|v| self.degree(v) == d)
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.n()).find(|&v| self.adj[v].is_empty())
    }

    /// Full symmetric/irreflexive audit of the adjacency rows.
    pub fn check_simple(&self) -> bool {
        (0..self.n()).all(|u| !self.adj[u].contains(u) && self.adj[u].iter().all(|v| self.adj[v].contains(u)))
    }

    /// Connected components, each as sorted vertex indices; components are
    /// ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = VertexSet::new(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::new(n);
            comp.insert(s);
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.adj[u].iter() {
                    if seen.insert(v) {
                        comp.insert(v);
                        stack.push(v);
                    }
                }
            }
            out.push(comp.to_vec());
        }
        out
    }

    /// Induced subgraph on sorted `vertices`, renumbered `0..k` in order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| VertexSet::from_indices(k, self.adj[v].iter().map(|u| index[u]).filter(|&u| u != usize::MAX)))
            .collect();
        let labels = self.labels.as_ref().map(|ls| vertices.iter().map(|&v| ls[v].clone()).collect());
        Graph { adj, labels, vertex_transitive: false }
    }
}

fn check_cap(requested: u128, cap: usize) -> Result<usize> {
    if requested > cap as u128 {
        Err(Error::CapExceeded { requested, cap })
    } else {
        Ok(requested as usize)
    }
}

/// `K[a,b]` on residues `0..ab`, with `x ~ y` iff `x ≢ y (mod b)`.
pub fn multipartite(a: u64, b: u64) -> Result<Graph> {
    multipartite_with_cap(a, b, DEFAULT_VERTEX_CAP)
}

pub fn multipartite_with_cap(a: u64, b: u64, cap: usize) -> Result<Graph> {
    Factor::new(a, b)?;
    let n = check_cap(a as u128 * b as u128, cap)?;
    let b = b as usize;
    let g = Graph::from_fn(n, |x, y| x % b != y % b);
    let labels = (0..n as u64).map(Label::Residue).collect();
    Ok(g.with_labels(labels)?.mark_vertex_transitive())
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("complete graph needs at least one vertex".into()));
    }
    check_cap(n as u128, DEFAULT_VERTEX_CAP)?;
    let g = Graph::from_fn(n, |_, _| true);
    Ok(g.with_labels((0..n as u64).map(Label::Residue).collect())?.mark_vertex_transitive())
}

/// Direct product; vertex `(i, j)` gets index `i * |V(h)| + j`.
pub fn direct_product(g: &Graph, h: &Graph) -> Result<Graph> {
    direct_product_with_cap(g, h, DEFAULT_VERTEX_CAP)
}

pub fn direct_product_with_cap(g: &Graph, h: &Graph, cap: usize) -> Result<Graph> {
    if g.n() == 0 || h.n() == 0 {
        return Err(Error::InvalidArgument("direct product of an empty graph".into()));
    }
    let (ng, nh) = (g.n(), h.n());
    let n = check_cap(ng as u128 * nh as u128, cap)?;
    let mut adj = Vec::with_capacity(n);
    for i in 0..ng {
        for j in 0..nh {
            let mut row = VertexSet::new(n);
            for k in g.adj[i].iter() {
                for l in h.adj[j].iter() {
                    row.insert(k * nh + l);
                }
            }
            adj.push(row);
        }
    }
    let labels = match (&g.labels, &h.labels) {
        (Some(lg), Some(lh)) => {
            Some(lg.iter().flat_map(|a| lh.iter().map(move |b| Label::product(a, b))).collect())
        }
        _ => None,
    };
    Ok(Graph { adj, labels, vertex_transitive: g.vertex_transitive && h.vertex_transitive })
}

/// `g ⊕ h`; vertices of `h` are shifted by `|V(g)|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.n(), h.n());
    let n = check_cap(ng as u128 + nh as u128, DEFAULT_VERTEX_CAP)?;
    let mut adj = Vec::with_capacity(n);
    for row in &g.adj {
        adj.push(VertexSet::from_indices(n, row.iter()));
    }
    for row in &h.adj {
        adj.push(VertexSet::from_indices(n, row.iter().map(|v| v + ng)));
    }
    let labels = match (&g.labels, &h.labels) {
        (Some(lg), Some(lh)) => Some(
            lg.iter()
                .map(|l| Label::Tagged(0, Box::new(l.clone())))
                .chain(lh.iter().map(|l| Label::Tagged(1, Box::new(l.clone()))))
                .collect(),
        ),
        _ => None,
    };
    Ok(Graph { adj, labels, vertex_transitive: false })
}

/// `X_n`: residues mod `n`, adjacent iff their difference is a unit.
pub fn unitary_cayley(n: u64) -> Result<Graph> {
    unitary_cayley_with_cap(n, DEFAULT_VERTEX_CAP)
}

pub fn unitary_cayley_with_cap(n: u64, cap: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("unitary Cayley graph needs n >= 2, got {n}")));
    }
    let size = check_cap(n as u128, cap)?;
    let units: Vec<usize> = (1..n).filter(|&u| gcd(u, n) == 1).map(|u| u as usize).collect();
    let adj = (0..size)
        .map(|x| VertexSet::from_indices(size, units.iter().map(|&u| (x + u) % size)))
        .collect();
    let g = Graph { adj, labels: None, vertex_transitive: false };
    Ok(g.with_labels((0..n).map(Label::Residue).collect())?.mark_vertex_transitive())
}

/// Adjacency in `X_n` without materializing the graph.
#[inline]
pub fn ucg_adjacent(n: u64, x: u64, y: u64) -> bool {
    let d = x.abs_diff(y);
    gcd(d % n, n) == 1
}

/// Balanced complete `b`-partite graph with parts of size `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factor {
    pub a: u64,
    pub b: u64,
}

impl Factor {
    pub fn new(a: u64, b: u64) -> Result<Factor> {
        if a < 1 {
            return Err(Error::InvalidArgument(format!("K[{a},{b}]: part size must be >= 1")));
        }
        if b < 2 {
            return Err(Error::InvalidArgument(format!("K[{a},{b}]: need at least 2 parts")));
        }
        Ok(Factor { a, b })
    }

    pub fn complete(b: u64) -> Result<Factor> {
        Factor::new(1, b)
    }

    pub fn order(&self) -> u64 {
        self.a * self.b
    }

    fn sort_key(&self) -> (u64, u64) {
        (self.b, self.a)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[{},{}]", self.a, self.b)
    }
}

/// Ordered factor list of `∏ K[a_i, b_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProductSpec {
    factors: Vec<Factor>,
    canonical_order: bool,
}

impl ProductSpec {
    pub fn new(factors: Vec<Factor>) -> Result<ProductSpec> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("product needs at least one factor".into()));
        }
        for f in &factors {
            Factor::new(f.a, f.b)?;
        }
        let canonical_order = factors.windows(2).all(|w| w[0].sort_key() <= w[1].sort_key());
        Ok(ProductSpec { factors, canonical_order })
    }

    /// `∏ K_{n_i}`
    pub fn complete(sizes: &[u64]) -> Result<ProductSpec> {
        ProductSpec::new(sizes.iter().map(|&b| Factor::complete(b)).collect::<Result<_>>()?)
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<ProductSpec> {
        ProductSpec::new(pairs.iter().map(|&(a, b)| Factor::new(a, b)).collect::<Result<_>>()?)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn t(&self) -> usize {
        self.factors.len()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_order
    }

    /// Factors sorted ascending by `(b, a)`.
    pub fn canonical(&self) -> ProductSpec {
        let mut factors = self.factors.clone();
        factors.sort_by_key(Factor::sort_key);
        ProductSpec { factors, canonical_order: true }
    }

    pub fn vertex_count(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.order()))
    }

    pub fn vertex_count_u128(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, f| acc.saturating_mul(f.order() as u128))
    }

    /// Smallest part count `b_1` (the first factor when canonical).
    pub fn min_parts(&self) -> u64 {
        self.factors.iter().map(|f| f.b).min().expect("nonempty")
    }

    pub fn all_complete(&self) -> bool {
        self.factors.iter().all(|f| f.a == 1)
    }

    /// `b_i` in factor order.
    pub fn part_counts(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.b).collect()
    }

    /// `∏ K_{b_i}`: every part shrunk to a single vertex.
    pub fn complete_reduction(&self) -> ProductSpec {
        ProductSpec::new(self.factors.iter().map(|f| Factor { a: 1, b: f.b }).collect()).expect("valid factors")
    }

    /// Row-major coordinates of vertex `index` of [`product_spec_graph`].
    pub fn coords_of(&self, mut index: u64) -> Vec<u64> {
        let mut coords = vec![0; self.t()];
        for (i, f) in self.factors.iter().enumerate().rev() {
            coords[i] = index % f.order();
            index /= f.order();
        }
        coords
    }

    pub fn index_of(&self, coords: &[u64]) -> u64 {
        self.factors.iter().zip(coords).fold(0, |acc, (f, &c)| acc * f.order() + c % f.order())
    }

    /// Adjacency of coordinate tuples, without a graph.
    pub fn coords_adjacent(&self, x: &[u64], y: &[u64]) -> bool {
        self.factors.iter().zip(x.iter().zip(y)).all(|(f, (&u, &v))| u % f.b != v % f.b)
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

/// `∏ K[a_i,b_i]` with t-tuple residue labels, row-major in factor order.
pub fn product_spec_graph(spec: &ProductSpec) -> Result<Graph> {
    product_spec_graph_with_cap(spec, DEFAULT_VERTEX_CAP)
}

pub fn product_spec_graph_with_cap(spec: &ProductSpec, cap: usize) -> Result<Graph> {
    check_cap(spec.vertex_count_u128(), cap)?;
    let mut factors = spec.factors().iter();
    let first = factors.next().expect("nonempty");
    let mut g = multipartite_with_cap(first.a, first.b, cap)?;
    if spec.t() == 1 {
        let labels = (0..g.n() as u64).map(|r| Label::Tuple(vec![r])).collect();
        g.labels = Some(labels);
    }
    for f in factors {
        g = direct_product_with_cap(&g, &multipartite_with_cap(f.a, f.b, cap)?, cap)?;
    }
    Ok(g)
}

/// CRT identification of `X_n` with `∏ K[p_i^(α_i-1), p_i]` (factors in
/// prime order, which is canonical order).
#[derive(Clone, Debug)]
pub struct CrtMap {
    n: u64,
    moduli: Vec<u64>,
    spec: ProductSpec,
}

impl CrtMap {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn spec(&self) -> &ProductSpec {
        &self.spec
    }

    /// `x ↦ (x mod p_1^α_1, …)`
    pub fn to_coords(&self, x: u64) -> Vec<u64> {
        self.moduli.iter().map(|&m| x % m).collect()
    }

    pub fn from_coords(&self, coords: &[u64]) -> u64 {
        let cs: Vec<Congruence> = coords.iter().zip(&self.moduli).map(|(&c, &m)| Congruence::new(c, m)).collect();
        crt_solve(&cs).expect("prime powers are coprime").0
    }

    /// Index in [`product_spec_graph`] of the vertex corresponding to residue `x`.
    pub fn to_product_index(&self, x: u64) -> u64 {
        self.spec.index_of(&self.to_coords(x))
    }

    pub fn from_product_index(&self, index: u64) -> u64 {
        self.from_coords(&self.spec.coords_of(index))
    }

    /// Audits the map against `unitary_cayley(n)` on every pair.
    pub fn verify(&self) -> bool {
        let coords: Vec<Vec<u64>> = (0..self.n).map(|x| self.to_coords(x)).collect();
        let mut seen = std::collections::HashSet::new();
        if !coords.iter().all(|c| seen.insert(c.clone())) {
            return false;
        }
        (0..self.n).all(|x| {
            (x + 1..self.n).all(|y| {
                ucg_adjacent(self.n, x, y) == self.spec.coords_adjacent(&coords[x as usize], &coords[y as usize])
            })
        })
    }
}

pub fn crt_isomorphism(n: u64) -> Result<CrtMap> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("CRT decomposition needs n >= 2, got {n}")));
    }
    let fac = numth::factorize(n);
    let factors = fac.pairs().iter().map(|&(p, a)| Factor::new(p.pow(a - 1), p)).collect::<Result<_>>()?;
    Ok(CrtMap { n, moduli: fac.prime_powers(), spec: ProductSpec::new(factors)? })
}

/// Partition of the vertex set into cliques of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliquePartition {
    pub cliques: Vec<Vec<usize>>,
}

impl CliquePartition {
    pub fn clique_size(&self) -> usize {
        self.cliques.first().map_or(0, Vec::len)
    }

    /// Disjoint, covering, complete, uniform size `size`, and `n / size` of them.
    pub fn validate(&self, g: &Graph, size: usize) -> bool {
        let mut seen = VertexSet::new(g.n());
        for c in &self.cliques {
            if c.len() != size {
                return false;
            }
            for (i, &u) in c.iter().enumerate() {
                if u >= g.n() || !seen.insert(u) {
                    return false;
                }
                if c[i + 1..].iter().any(|&v| !g.adjacent(u, v)) {
                    return false;
                }
            }
        }
        size > 0 && seen.count() == g.n() && self.cliques.len() * size == g.n()
    }
}

/// Inductive clique partition: residue blocks `{m b_1, …, m b_1 + b_1 - 1}`
/// of the first factor, then each clique is extended by the shifted
/// coordinates `ℓ + j (mod a_t b_t)` of the next factor.
pub fn clique_partition(spec: &ProductSpec) -> Result<CliquePartition> {
    if !spec.is_canonical() {
        return Err(Error::Precondition("clique partition needs a canonical spec (b_1 minimal)".into()));
    }
    let b1 = spec.factors()[0].b;
    let first = spec.factors()[0];
    let mut cliques: Vec<Vec<Vec<u64>>> =
        (0..first.a).map(|m| (0..b1).map(|j| vec![m * b1 + j]).collect()).collect();
    for f in &spec.factors()[1..] {
        let order = f.order();
        let mut next = Vec::with_capacity(cliques.len() * order as usize);
        for clique in &cliques {
            for l in 0..order {
                next.push(
                    clique
                        .iter()
                        .enumerate()
                        .map(|(j, c)| {
                            let mut c = c.clone();
                            c.push((l + j as u64) % order);
                            c
                        })
                        .collect(),
                );
            }
        }
        cliques = next;
    }
    Ok(CliquePartition {
        cliques: cliques
            .into_iter()
            .map(|c| c.iter().map(|coords| spec.index_of(coords) as usize).collect())
            .collect(),
    })
}

/// Splits off the `K_2 = K[1,2]` factors: returns their count `s` and the
/// remaining factors.
pub fn k2_reduction(spec: &ProductSpec) -> (usize, Option<ProductSpec>) {
    let k2 = Factor { a: 1, b: 2 };
    let s = spec.factors().iter().filter(|&&f| f == k2).count();
    if s == 0 {
        return (0, Some(spec.clone()));
    }
    let rest: Vec<Factor> = spec.factors().iter().copied().filter(|&f| f != k2).collect();
    (s, if rest.is_empty() { None } else { Some(ProductSpec::new(rest).expect("valid")) })
}
