use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numth::{crt_solve, gcd, is_prime, next_prime, Congruence};

/// Largest modulus for which total domination is checked residue by residue.
const SCAN_CAP: u64 = 1 << 25;

/// Certificate that `γ_t(X_n) < g(n)` for an `n` with many prime factors.
///
/// `n = 3 q p_1 ⋯ p_k` with `q ≡ 1 (mod 3)`, `k = 2(q−1)/3` and every
/// `p_i ≥ q+3`. The `q+3` residues `{0, …, q+1, y}` totally dominate `X_n`
/// while `z, …, z+q+2` are all non-coprime to `n`, so `g(n) ≥ q+4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotalGapWitness {
    pub n: u64,
    pub q: u64,
    pub k: usize,
    pub primes: Vec<u64>,
    /// `a_i` for `i = 0..=q+2`: the prime dividing `z + i`.
    pub moduli: Vec<u64>,
    pub set: Vec<u64>,
    pub y: u64,
    pub z: u64,
    pub run_length: u64,
    pub jacobsthal_lower: u64,
    pub run_verified: bool,
    pub total_dominating: bool,
    /// `gcd-scan` over all residues, or `residue-assignment` for large `n`.
    pub verification: &'static str,
}

/// Smallest admissible `q` for `ω(n) ≥ j`, then the `k` smallest primes
/// `≥ q+3`.
pub fn total_gap_witness(j: u64) -> Result<TotalGapWitness> {
    if j == 0 {
        return Err(Error::InvalidArgument("j must be positive".into()));
    }
    let mut q = 7;
    while q % 3 != 1 || 2 * (q - 1) / 3 + 2 < j {
        q = next_prime(q + 1);
    }
    let k = (2 * (q - 1) / 3) as usize;
    let mut primes = Vec::with_capacity(k);
    let mut p = next_prime(q + 3);
    while primes.len() < k {
        primes.push(p);
        p = next_prime(p + 1);
    }
    let overflow = || Error::Overflow(format!("n = 3·{q}·p_1⋯p_{k} exceeds 64 bits (j = {j})"));
    let n = primes.iter().try_fold(3 * q, |acc, &p| acc.checked_mul(p)).ok_or_else(overflow)?;

    let mut moduli = vec![0u64; (q + 3) as usize];
    for i in (0..=q + 2).step_by(3) {
        moduli[i as usize] = 3;
    }
    moduli[1] = q;
    moduli[(q + 1) as usize] = q;
    let non_multiples = (2..=q).filter(|s| s % 3 != 0);
    for (s, &p) in non_multiples.zip(&primes) {
        moduli[s as usize] = p;
    }
    debug_assert!(moduli.iter().all(|&a| a != 0));

    let mut congruences: Vec<Congruence> = Vec::new();
    for (i, &a) in moduli.iter().enumerate() {
        let c = Congruence::negative(i as u64, a);
        match congruences.iter().find(|e| e.modulus == a) {
            Some(e) if e.residue != c.residue => {
                return Err(Error::Precondition(format!("conflicting residues modulo {a}")));
            }
            Some(_) => {}
            None => congruences.push(c),
        }
    }
    let (z, _) = crt_solve(&congruences)?;

    let mut for_y = vec![Congruence::new(1, 3), Congruence::negative(1, q)];
    for_y.extend(primes.iter().map(|&p| Congruence::negative(1, p)));
    let (y, _) = crt_solve(&for_y)?;

    let mut set: Vec<u64> = (0..=q + 1).collect();
    set.push(y);
    set.sort_unstable();

    let run_length = q + 3;
    let run_verified = (0..run_length).all(|i| gcd((z + i) % n, n) > 1);
    let (total_dominating, verification) = if n <= SCAN_CAP {
        (scan_total_domination(n, &set), "gcd-scan")
    } else {
        let mut all_primes = vec![3, q];
        all_primes.extend(&primes);
        (!undominated_residue_exists(&all_primes, &set), "residue-assignment")
    };
    Ok(TotalGapWitness {
        n,
        q,
        k,
        primes,
        moduli,
        set,
        y,
        z,
        run_length,
        jacobsthal_lower: run_length + 1,
        run_verified,
        total_dominating,
        verification,
    })
}

/// Every residue mod `n` has a member of `set` at coprime distance.
fn scan_total_domination(n: u64, set: &[u64]) -> bool {
    (0..n).into_par_iter().all(|x| set.iter().any(|&d| gcd((x + n - d % n) % n, n) == 1))
}

/// Over squarefree `n = ∏ primes`: is there an `x` sharing a prime with
/// `x − d` for every `d` in `set`? Each `d` picks a prime `r` with
/// `x ≡ d (mod r)`; the picks are consistent iff every prime receives a
/// single residue, and CRT then supplies `x`.
fn undominated_residue_exists(primes: &[u64], set: &[u64]) -> bool {
    fn assign(primes: &[u64], set: &[u64], residue: &mut [Option<u64>], next: usize) -> bool {
        let Some(&d) = set.get(next) else { return true };
        for (i, &r) in primes.iter().enumerate() {
            match residue[i] {
                Some(v) if v == d % r => {
                    if assign(primes, set, residue, next + 1) {
                        return true;
                    }
                }
                Some(_) => {}
                None => {
                    residue[i] = Some(d % r);
                    let found = assign(primes, set, residue, next + 1);
                    residue[i] = None;
                    if found {
                        return true;
                    }
                }
            }
        }
        false
    }
    let mut residue = vec![None; primes.len()];
    assign(primes, set, &mut residue, 0)
}

/// Certificate that `γ(X_n) < g(n)`: a run of consecutive integers all
/// sharing a factor with `n`, longer than the known `γ(X_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCertificate {
    pub family: u8,
    pub p1: u64,
    pub p2: u64,
    pub n: u64,
    pub x: u64,
    pub run_length: u64,
    pub gamma: u64,
    /// The rule giving `gamma`.
    pub gamma_rule: &'static str,
    pub jacobsthal_lower: u64,
    pub run_verified: bool,
}

/// Family 1: `n = 2 p_1 p_2` (`3 ≤ p_1 < p_2`), `γ = 4`, run of 4.
/// Family 2: `n = 6 p_1 p_2` (`5 ≤ p_1 < p_2`), `γ = 8`, run of 9.
pub fn gap_certificate(family: u8, p1: u64, p2: u64) -> Result<GapCertificate> {
    if !is_prime(p1) || !is_prime(p2) {
        return Err(Error::Precondition(format!("p1 = {p1} and p2 = {p2} must be prime")));
    }
    if p1 >= p2 {
        return Err(Error::Precondition(format!("need p1 < p2, got {p1} >= {p2}")));
    }
    let (n, congruences, run_length, gamma, gamma_rule) = match family {
        1 => {
            if p1 < 3 {
                return Err(Error::Precondition(format!("family 1 needs p1 >= 3, got {p1}")));
            }
            let n = 2 * p1 * p2;
            let cs = vec![Congruence::new(0, 2), Congruence::negative(1, p1), Congruence::negative(3, p2)];
            (n, cs, 4, 4, "three-complete-factors")
        }
        2 => {
            if p1 < 5 {
                return Err(Error::Precondition(format!("family 2 needs p1 >= 5, got {p1}")));
            }
            let n = 6 * p1 * p2;
            let cs = vec![
                Congruence::new(0, 2),
                Congruence::negative(1, 3),
                Congruence::negative(3, p1),
                Congruence::negative(5, p2),
            ];
            (n, cs, 9, 8, "cube-corner")
        }
        f => return Err(Error::InvalidArgument(format!("family must be 1 or 2, got {f}"))),
    };
    let (x, _) = crt_solve(&congruences)?;
    let run_verified = (0..run_length).all(|i| gcd((x + i) % n, n) > 1);
    Ok(GapCertificate { family, p1, p2, n, x, run_length, gamma, gamma_rule, jacobsthal_lower: run_length + 1, run_verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numth::{jacobsthal, omega};

    #[test]
    fn six_prime_witness() {
        let w = total_gap_witness(6).unwrap();
        assert_eq!((w.q, w.k, w.n), (7, 4, 969969));
        assert_eq!(w.primes, vec![11, 13, 17, 19]);
        assert_eq!(w.set.len(), 10);
        assert_eq!(w.run_length, 10);
        assert!(w.run_verified && w.total_dominating);
        assert_eq!(w.verification, "gcd-scan");
        assert_eq!(omega(w.n), 6);
        for j in 1..6 {
            assert_eq!(total_gap_witness(j).unwrap().n, 969969);
        }
    }

    #[test]
    fn residue_assignment_matches_scan() {
        let w = total_gap_witness(6).unwrap();
        assert!(!undominated_residue_exists(&[3, 7, 11, 13, 17, 19], &w.set));
        // drop y: some residue escapes
        let without_y: Vec<u64> = w.set.iter().copied().filter(|&d| d != w.y).collect();
        assert!(undominated_residue_exists(&[3, 7, 11, 13, 17, 19], &without_y));
        assert!(!scan_total_domination(w.n, &without_y));
    }

    #[test]
    fn larger_witness_uses_residue_assignment() {
        let w = total_gap_witness(8).unwrap();
        assert_eq!((w.q, w.k), (13, 8));
        assert_eq!(w.primes, vec![17, 19, 23, 29, 31, 37, 41, 43]);
        assert_eq!(w.verification, "residue-assignment");
        assert!(w.run_verified && w.total_dominating);
        assert!(w.set.len() as u64 == w.q + 3);
    }

    #[test]
    fn gap_families() {
        let c = gap_certificate(2, 5, 7).unwrap();
        assert_eq!((c.n, c.x, c.run_length), (210, 2, 9));
        assert!(c.run_verified && c.jacobsthal_lower > c.gamma);
        assert_eq!(jacobsthal(210), 10);
        let c = gap_certificate(1, 3, 5).unwrap();
        assert_eq!(c.n, 30);
        assert!(c.run_verified);
        assert!(jacobsthal(30) > c.gamma);
        assert!(gap_certificate(2, 3, 7).is_err());
        assert!(gap_certificate(1, 5, 5).is_err());
        assert!(gap_certificate(3, 5, 7).is_err());
    }
}
