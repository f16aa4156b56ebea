use serde::Serialize;

use super::construct::{consecutive_residue_set, cube_corner_set, diagonal_plus_two_set, diagonal_set, partite_slice_set};
use super::conjecture::conjectured_upper;
use super::{BoundReport, Interval};
use crate::domsolve::Quantity;
use crate::error::{Error, Result};
use crate::graphkit::{crt_isomorphism, k2_reduction, CrtMap, Factor, ProductSpec};
use crate::numth::{factorize, jacobsthal};
use crate::vertex_set::VertexSet;

/// Largest graph for which constructive upper bounds carry a witness.
const WITNESS_VERTEX_CAP: u64 = 1 << 22;

/// Nonnegative rational kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Fraction {
        assert!(den > 0, "zero denominator");
        let g = crate::numth::gcd(num, den).max(1);
        Fraction { num: num / g, den: den / g }
    }

    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `γ(X_n)` for squarefree `n` with at most three prime factors: 1 for a
/// prime, 2 or 3 for two primes (smallest prime 2 or odd), 4 for three.
pub fn squarefree_ucg_gamma(n: u64) -> Result<u64> {
    let f = factorize(n);
    if n < 2 || !f.is_squarefree() {
        return Err(Error::Precondition(format!("{n} is not a squarefree integer >= 2")));
    }
    match (f.omega(), f.smallest_prime()) {
        (1, _) => Ok(1),
        (2, Some(2)) => Ok(2),
        (2, _) => Ok(3),
        (3, _) => Ok(4),
        (w, _) => Err(Error::Precondition(format!("{n} has {w} prime factors, formula covers at most 3"))),
    }
}

/// `γ(X_n) ≥ p_1 t / (p_1 − 1)` for non-squarefree `n` with `t = ω(n) ≤ 3`.
pub fn prime_power_lower(n: u64) -> Result<Fraction> {
    let f = factorize(n);
    if n < 2 || f.is_squarefree() {
        return Err(Error::Precondition(format!("{n} must have a repeated prime factor")));
    }
    let t = f.omega() as u64;
    if t > 3 {
        return Err(Error::Precondition(format!("{n} has {t} prime factors, bound needs at most 3")));
    }
    let p1 = f.smallest_prime().expect("n >= 2");
    Ok(Fraction::new(p1 * t, p1 - 1))
}

/// `γ(∏ K_{n_i}) ≥ t + 1 + ⌊(t−1)/(n_1−1)⌋` for `t ≥ 4`, `n_2 ≥ 3`.
pub fn small_first_factor_lower(spec: &ProductSpec) -> Result<u64> {
    let n = sorted_complete(spec)?;
    let t = n.len() as u64;
    if t < 4 {
        return Err(Error::Precondition(format!("need t >= 4, got {t}")));
    }
    if n[1] < 3 {
        return Err(Error::Precondition(format!("need n_2 >= 3, got {}", n[1])));
    }
    Ok(t + 1 + (t - 1) / (n[0] - 1))
}

fn sorted_complete(spec: &ProductSpec) -> Result<Vec<u64>> {
    if !spec.all_complete() {
        return Err(Error::Precondition(format!("{spec}: every factor must be complete")));
    }
    let mut n = spec.part_counts();
    n.sort_unstable();
    Ok(n)
}

/// Known values and bounds for `γ(∏ K_{n_i})`: exact for `t ≤ 3`, at least
/// `t+1` beyond, with equality once `n_1 ≥ t+1`.
pub fn complete_product_bounds(spec: &ProductSpec) -> Result<BoundReport> {
    let spec = spec.canonical();
    sorted_complete(&spec)?;
    let mut iv = Interval::new(Quantity::Gamma, vertex_count(&spec)?);
    complete_rules(&spec, &mut iv);
    iv.finish()
}

fn vertex_count(spec: &ProductSpec) -> Result<u64> {
    spec.vertex_count().ok_or_else(|| Error::Overflow(format!("{spec} has more than 2^64 vertices")))
}

fn complete_rules(spec: &ProductSpec, iv: &mut Interval) {
    let n = spec.part_counts();
    let t = n.len() as u64;
    match t {
        1 => {
            iv.exact("complete-graph", 1);
        }
        2 => {
            iv.exact("two-complete-factors", if n[0] == 2 { 2 } else { 3 });
        }
        3 => {
            iv.exact("three-complete-factors", 4);
        }
        _ => {
            iv.lower("complete-t-plus-one", t + 1);
            if n[0] > t {
                iv.upper("complete-t-plus-one", t + 1);
            }
        }
    }
    if t >= 4 && n[1] >= 3 {
        let lo = small_first_factor_lower(spec).expect("preconditions checked");
        iv.lower("small-first-factor", lo);
        if n[2] > t {
            let two_more = n[0] == t || (2 * n[0] > t + 1 && n[0] < t && n[1] > t + 1);
            if two_more {
                iv.exact("t-plus-two-characterization", t + 2);
            } else if n[0] <= t {
                // at least t+2 from the line above, and not equal to it
                iv.lower("t-plus-two-characterization", t + 3);
            }
        }
    }
    if t == 4 && n[0] == 2 {
        iv.exact("cube-corner", 8);
    }
    if let Some(m) = diagonal_margin(&n) {
        iv.upper("diagonal-set", t + m + 1);
    }
    attach_constructions(spec, iv);
}

/// Smallest `m ≥ 0` with `(t+m)/(m+1) < n_1` and `t+m < n_2`.
fn diagonal_margin(n: &[u64]) -> Option<u64> {
    let t = n.len() as u64;
    if t < 3 {
        return None;
    }
    (0..).take_while(|m| t + m < n[1]).find(|m| t + m < n[0] * (m + 1))
}

/// Explicit sets for the constructive upper bounds, when the graph is small
/// enough to index.
fn attach_constructions(spec: &ProductSpec, iv: &mut Interval) {
    if spec.vertex_count().is_none_or(|v| v > WITNESS_VERTEX_CAP) {
        return;
    }
    let n = spec.part_counts();
    let t = n.len() as u64;
    if let Some(m) = diagonal_margin(&n) {
        if let Ok(c) = diagonal_set(spec, m) {
            iv.upper_with("diagonal-set", c.vertex_set);
        }
    }
    if t >= 4 && n[0] == t {
        if let Ok(c) = diagonal_plus_two_set(spec) {
            iv.upper_with("t-plus-two-characterization", c.vertex_set);
        }
    }
    if t == 4 && n[0] == 2 {
        if let Ok(c) = cube_corner_set(spec) {
            iv.upper_with("cube-corner", c.vertex_set);
        }
    }
}

/// Interval for `γ(∏ K[a_i,b_i])` from every applicable rule.
pub fn gamma_bounds(spec: &ProductSpec) -> Result<BoundReport> {
    let spec = spec.canonical();
    let total = vertex_count(&spec)?;
    let mut iv = Interval::new(Quantity::Gamma, total);
    gamma_rules(&spec, total, &mut iv)?;
    iv.finish()
}

fn gamma_rules(spec: &ProductSpec, total: u64, iv: &mut Interval) -> Result<()> {
    if spec.all_complete() {
        complete_rules(spec, iv);
    } else {
        let reduced = complete_product_bounds(&spec.complete_reduction())?;
        iv.lower("part-monotonicity", reduced.lo);
        if spec.t() == 1 {
            // a > 1: one vertex misses its own part, two from different parts suffice
            iv.exact("multipartite", 2);
        }
    }
    slice_upper(spec, total, iv);
    let (s, _) = k2_reduction(spec);
    if s >= 2 {
        let split = k2_split(spec, s);
        let inner = gamma_bounds(&split)?;
        let copies = 1u64 << (s - 1);
        iv.lower("k2-factor-split", copies * inner.lo).upper("k2-factor-split", copies * inner.hi);
    }
    Ok(())
}

/// `K_2 × H` where the spec is `K_2^s × H`.
fn k2_split(spec: &ProductSpec, s: usize) -> ProductSpec {
    let k2 = Factor { a: 1, b: 2 };
    let mut factors = vec![k2];
    factors.extend(spec.factors().iter().copied().filter(|&f| f != k2));
    debug_assert_eq!(factors.len() + s - 1, spec.t());
    ProductSpec::new(factors).expect("valid factors").canonical()
}

/// The partite slice dominates, so `γ ≤ |V| / b_1`.
fn slice_upper(spec: &ProductSpec, total: u64, iv: &mut Interval) {
    let size = total / spec.factors()[0].b;
    if total <= WITNESS_VERTEX_CAP {
        if let Ok(c) = partite_slice_set(spec) {
            iv.upper_with("partite-slice", c.vertex_set);
            return;
        }
    }
    iv.upper("partite-slice", size);
}

/// Interval for `γ_t(∏ K[a_i,b_i])`.
pub fn gamma_total_bounds(spec: &ProductSpec) -> Result<BoundReport> {
    let spec = spec.canonical();
    let total = vertex_count(&spec)?;
    let mut iv = Interval::new(Quantity::GammaTotal, total);
    total_rules(&spec, total, &mut iv)?;
    iv.finish()
}

fn total_rules(spec: &ProductSpec, total: u64, iv: &mut Interval) -> Result<()> {
    let g = gamma_bounds(spec)?;
    iv.lower("domination-below-total", g.lo).lower("no-loops", 2);
    iv.upper("twice-domination", 2 * g.hi);
    if spec.t() == 1 {
        iv.exact("multipartite", 2);
    }
    if spec.all_complete() {
        let n = spec.part_counts();
        if let Some(m) = diagonal_margin(&n) {
            let t = n.len() as u64;
            iv.upper("diagonal-set", t + m + 1);
            if total <= WITNESS_VERTEX_CAP {
                if let Ok(c) = diagonal_set(spec, m) {
                    iv.upper_with("diagonal-set", c.vertex_set);
                }
            }
        }
    }
    let (s, _) = k2_reduction(spec);
    if s >= 2 {
        let inner = gamma_total_bounds(&k2_split(spec, s))?;
        let copies = 1u64 << (s - 1);
        iv.lower("k2-factor-split", copies * inner.lo).upper("k2-factor-split", copies * inner.hi);
    }
    Ok(())
}

/// Carries a product-index witness over to residues of `X_n`.
fn witness_to_residues(map: &CrtMap, report: &mut BoundReport) {
    if let Some(w) = report.witness.take() {
        let n = map.n() as usize;
        report.witness = Some(VertexSet::from_indices(n, w.iter().map(|i| map.from_product_index(i as u64) as usize)));
    }
}

/// Interval for `γ(X_n)`: the product rules on `∏ K[p^{α−1}, p]` plus the
/// squarefree formula, the repeated-prime lower bound, equality with
/// Jacobsthal's function for non-squarefree `n` with `ω(n) ≤ 3`, and
/// `γ ≤ g(n)` from consecutive residues.
pub fn ucg_gamma_bounds(n: u64) -> Result<BoundReport> {
    let map = crt_isomorphism(n)?;
    let spec = map.spec().clone();
    let mut iv = Interval::new(Quantity::Gamma, n);
    gamma_rules(&spec, n, &mut iv)?;
    let mut report = iv.clone().finish()?;
    witness_to_residues(&map, &mut report);
    iv.witness = report.witness;
    ucg_rules(n, &mut iv)?;
    iv.finish()
}

fn ucg_rules(n: u64, iv: &mut Interval) -> Result<()> {
    let f = factorize(n);
    let g = jacobsthal(n);
    consecutive_upper(n, g, iv);
    if f.omega() <= 3 {
        if f.is_squarefree() {
            iv.exact("squarefree-formula", squarefree_ucg_gamma(n)?);
        } else {
            iv.lower("repeated-prime-lower", prime_power_lower(n)?.ceil());
            iv.exact("jacobsthal-equality", g);
        }
    }
    Ok(())
}

fn consecutive_upper(n: u64, g: u64, iv: &mut Interval) {
    if n <= WITNESS_VERTEX_CAP {
        if let Ok(c) = consecutive_residue_set(n) {
            iv.upper_with("consecutive-residues", c.vertex_set);
            return;
        }
    }
    iv.upper("consecutive-residues", g);
}

/// Interval for `γ_t(X_n)`.
pub fn ucg_gamma_total_bounds(n: u64) -> Result<BoundReport> {
    let map = crt_isomorphism(n)?;
    let spec = map.spec().clone();
    let mut iv = Interval::new(Quantity::GammaTotal, n);
    total_rules(&spec, n, &mut iv)?;
    let mut report = iv.clone().finish()?;
    witness_to_residues(&map, &mut report);
    iv.witness = report.witness;
    let gamma = ucg_gamma_bounds(n)?;
    iv.lower("domination-below-total", gamma.lo);
    consecutive_upper(n, jacobsthal(n), &mut iv);
    iv.finish()
}

/// Interval for `Γ(∏ K[a_i,b_i])`. The partite slice gives `|V|/b_1` from
/// below; the clique packing `b_1 ℓ + 2s ≤ |V|` gives `|V|/2` from above,
/// and the conjectured value `|V|/b_1` is proven when `b_1 = 2`, `t ≤ 3`,
/// or the three smallest factors are large enough.
pub fn upper_bounds(spec: &ProductSpec) -> Result<BoundReport> {
    let spec = spec.canonical();
    let total = vertex_count(&spec)?;
    let b1 = spec.factors()[0].b;
    let slice = total / b1;
    let mut iv = Interval::new(Quantity::Upper, total);
    if total <= WITNESS_VERTEX_CAP {
        let c = partite_slice_set(&spec)?;
        iv.lower("partite-slice", c.size() as u64);
    } else {
        iv.lower("partite-slice", slice);
    }
    iv.upper("clique-packing", total / 2);
    iv.conjecture(conjectured_upper(&spec));
    if b1 == 2 {
        iv.upper("clique-packing", slice);
    }
    if spec.t() <= 2 {
        iv.upper("at-most-two-factors", slice);
    }
    if spec.t() == 3 {
        iv.upper("three-factors", slice);
    }
    if spec.t() >= 3 && three_smallest_condition(&spec) {
        iv.upper("three-smallest-factors", slice);
    }
    iv.finish()
}

/// `t(t−1)(t−2) + 3 ≤ a_{κ1} · a_{κ2}b_{κ2} · a_{κ3}b_{κ3}` with factors
/// ordered by `a_i b_i` ascending (ties by position).
fn three_smallest_condition(spec: &ProductSpec) -> bool {
    let mut order: Vec<Factor> = spec.factors().to_vec();
    order.sort_by_key(Factor::order);
    let t = order.len() as u128;
    let lhs = t * (t - 1) * (t - 2) + 3;
    let rhs = order[0].a as u128 * order[1].order() as u128 * order[2].order() as u128;
    lhs <= rhs
}

/// Interval for `Γ(X_n)`.
pub fn ucg_upper_bounds(n: u64) -> Result<BoundReport> {
    upper_bounds(crt_isomorphism(n)?.spec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(sizes: &[u64]) -> ProductSpec {
        ProductSpec::complete(sizes).unwrap()
    }

    #[test]
    fn squarefree_formula() {
        assert_eq!(squarefree_ucg_gamma(6).unwrap(), 2);
        assert_eq!(squarefree_ucg_gamma(15).unwrap(), 3);
        assert_eq!(squarefree_ucg_gamma(30).unwrap(), 4);
        assert_eq!(squarefree_ucg_gamma(7).unwrap(), 1);
        assert!(squarefree_ucg_gamma(12).is_err());
        assert!(squarefree_ucg_gamma(2 * 3 * 5 * 7).is_err());
    }

    #[test]
    fn repeated_prime_lower() {
        assert_eq!(prime_power_lower(12).unwrap(), Fraction::new(4, 1));
        assert_eq!(prime_power_lower(45).unwrap(), Fraction::new(3, 1));
        assert_eq!(prime_power_lower(75).unwrap(), Fraction::new(3, 1));
        assert_eq!(prime_power_lower(315).unwrap(), Fraction { num: 9, den: 2 });
        assert_eq!(prime_power_lower(315).unwrap().ceil(), 5);
        assert!(prime_power_lower(30).is_err());
    }

    #[test]
    fn small_first_factor() {
        assert_eq!(small_first_factor_lower(&complete(&[2, 3, 3, 3])).unwrap(), 8);
        assert_eq!(small_first_factor_lower(&complete(&[3, 3, 3, 3])).unwrap(), 6);
        assert_eq!(small_first_factor_lower(&complete(&[5, 5, 5, 5])).unwrap(), 5);
        assert!(small_first_factor_lower(&complete(&[2, 2, 3, 3])).is_err());
    }

    #[test]
    fn complete_products() {
        let r = complete_product_bounds(&complete(&[2, 9])).unwrap();
        assert!(r.exact && r.lo == 2);
        assert_eq!(complete_product_bounds(&complete(&[3, 4, 5])).unwrap().lo, 4);
        let r = complete_product_bounds(&complete(&[6; 5])).unwrap();
        assert!(r.exact && r.lo == 6);
        let r = gamma_bounds(&complete(&[7; 5])).unwrap();
        assert!(r.exact && r.lo == 6);
    }

    #[test]
    fn ucg_examples() {
        let r = ucg_gamma_bounds(30).unwrap();
        assert!(r.exact && r.lo == 4);
        assert!(r.sources.iter().any(|s| s.rule == "squarefree-formula"));
        let r = ucg_gamma_bounds(12).unwrap();
        assert!(r.exact && r.lo == 4);
        assert!(r.sources.iter().any(|s| s.rule == "jacobsthal-equality"));
        let r = ucg_gamma_bounds(60).unwrap();
        assert!(r.exact && r.lo == 6);
        assert_eq!(r.witness.unwrap().count(), 6);
    }

    #[test]
    fn upper_examples() {
        let r = upper_bounds(&complete(&[2, 5, 7])).unwrap();
        assert!(r.exact && r.lo == 35);
        let r = upper_bounds(&complete(&[3, 3, 3])).unwrap();
        assert!(r.exact && r.lo == 9);
        let r = upper_bounds(&complete(&[3, 3, 31, 37])).unwrap();
        assert!(r.exact && r.lo == 3 * 31 * 37);
        assert!(r.sources.iter().any(|s| s.rule == "three-smallest-factors"));
        let r = upper_bounds(&complete(&[3, 3, 3, 3])).unwrap();
        assert!(!r.exact);
        assert_eq!((r.lo, r.hi, r.conjectured), (27, 40, Some(27)));
    }
}
