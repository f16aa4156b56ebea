//! Elementary number theory used by the unitary Cayley graph results:
//! factorization by trial division, ω, radical, Euler's φ, Jacobsthal's
//! function and Chinese remaindering.

use serde::Serialize;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Prime factorization as `(p, α)` pairs sorted by `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn omega(&self) -> usize {
        self.pairs.len()
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.pairs.first().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, a)| a == 1)
    }

    /// Prime powers `p^α`, in prime order.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.pairs.iter().map(|&(p, a)| p.pow(a)).collect()
    }

    pub fn value(&self) -> u64 {
        self.prime_powers().iter().product()
    }
}

pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut pairs = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m % p == 0 {
            let mut a = 0;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            pairs.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Factorization { pairs }
}

pub fn omega(n: u64) -> usize {
    factorize(n).omega()
}

pub fn radical(n: u64) -> u64 {
    factorize(n).primes().product()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).pairs.iter().map(|&(p, a)| (p - 1) * p.pow(a - 1)).product()
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).is_squarefree()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `>= from`.
pub fn next_prime(from: u64) -> u64 {
    let mut p = from.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// Longest cyclic run of residues mod `n` sharing a factor with `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct JacobsthalRun {
    /// Jacobsthal's function `g(n)`; equals `length + 1`.
    pub value: u64,
    /// Smallest residue starting a longest run (0 when the run is empty).
    pub start: u64,
    pub length: u64,
}

/// Jacobsthal's function: least `m` such that every `m` consecutive
/// integers contain one coprime to `n`.
pub fn jacobsthal(n: u64) -> u64 {
    jacobsthal_run(n).value
}

/// Marks residues `0..n` that share a prime with `n` and scans for the
/// longest run. Residues `1` and `n-1` are always coprime, so no longest run
/// wraps around zero and a linear scan is exact.
pub fn jacobsthal_run(n: u64) -> JacobsthalRun {
    assert!(n >= 1, "jacobsthal requires n >= 1");
    if n == 1 {
        return JacobsthalRun { value: 1, start: 0, length: 0 };
    }
    let len = usize::try_from(n).expect("n fits in memory");
    let mut blocked = vec![0u64; len.div_ceil(64)];
    for p in factorize(n).primes() {
        let p = p as usize;
        let mut x = 0;
        while x < len {
            blocked[x >> 6] |= 1 << (x & 63);
            x += p;
        }
    }
    let (mut best_len, mut best_start) = (0u64, 0u64);
    let (mut cur_len, mut cur_start) = (0u64, 0u64);
    for x in 0..len {
        if blocked[x >> 6] >> (x & 63) & 1 == 1 {
            if cur_len == 0 {
                cur_start = x as u64;
            }
            cur_len += 1;
            if cur_len > best_len {
                best_len = cur_len;
                best_start = cur_start;
            }
        } else {
            cur_len = 0;
        }
    }
    JacobsthalRun { value: best_len + 1, start: best_start, length: best_len }
}

/// `x ≡ residue (mod modulus)` with `0 <= residue < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub residue: u64,
    pub modulus: u64,
}

impl Congruence {
    pub fn new(residue: u64, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Congruence { residue: residue % modulus, modulus }
    }

    /// `x ≡ -k (mod modulus)`
    pub fn negative(k: u64, modulus: u64) -> Self {
        let r = k % modulus;
        Congruence::new((modulus - r) % modulus, modulus)
    }

    pub fn holds(&self, x: u64) -> bool {
        x % self.modulus == self.residue
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Unique residue modulo the product of the (pairwise coprime) moduli.
pub fn crt_solve(congruences: &[Congruence]) -> Result<(u64, u64)> {
    let mut x: u64 = 0;
    let mut m: u64 = 1;
    for (i, c) in congruences.iter().enumerate() {
        if c.residue >= c.modulus {
            return Err(Error::InvalidArgument(format!(
                "residue {} not reduced modulo {}",
                c.residue, c.modulus
            )));
        }
        for prev in &congruences[..i] {
            if gcd(prev.modulus, c.modulus) != 1 {
                return Err(Error::NonCoprimeModuli(prev.modulus, c.modulus));
            }
        }
        let new_m = m
            .checked_mul(c.modulus)
            .ok_or_else(|| Error::Overflow(format!("product of moduli exceeds u64 at {}", c.modulus)))?;
        // x + m*k ≡ r (mod c.modulus)
        let inv = mod_inverse(m % c.modulus, c.modulus).expect("coprime moduli are invertible");
        let diff = (c.residue as i128 - (x % c.modulus) as i128).rem_euclid(c.modulus as i128) as u128;
        let k = diff * inv as u128 % c.modulus as u128;
        x = (x as u128 + m as u128 * k) as u64;
        m = new_m;
    }
    Ok((x, m))
}
