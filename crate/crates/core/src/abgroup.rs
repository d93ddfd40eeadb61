//! Finite abelian groups in invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, lcm};
use crate::certificate::{Certificate, Criterion, Verdict};
use crate::error::{Error, Result};

/// `Z/n₁ ⊕ … ⊕ Z/n_t` with `n₁ | n₂ | … | n_t` and every `nᵢ >= 2`.
/// The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    /// `(Z/q)^rank`.
    pub fn elementary(q: u64, rank: usize) -> Self {
        Self::from_cyclic_orders(&vec![q; rank])
    }

    /// Strict constructor: the list must already be a divisibility chain of
    /// integers `>= 2`.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidInput(format!(
                "invariant factor {bad} is smaller than 2"
            )));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(FiniteAbelianGroup {
            invariant_factors: factors,
        })
    }

    /// Direct sum of cyclic groups of the given orders, in any order and in
    /// any decomposition (primary, invariant or mixed). Orders equal to 1 are
    /// ignored; 0 is rejected by panicking since `Z/0` is not finite.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut components: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            assert!(n >= 1, "cyclic factor of order 0 is not finite");
            for (p, e) in factorize(n).factors {
                components.entry(p).or_default().push(e);
            }
        }
        let rank = components.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for (p, mut exps) in components {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            // Largest exponents go to the last invariant factor.
            for (i, e) in exps.into_iter().enumerate() {
                factors[rank - 1 - i] *= p.pow(e);
            }
        }
        FiniteAbelianGroup {
            invariant_factors: factors,
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&n| n as u128).product()
    }

    /// Largest element order, which every element order divides.
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// The set of orders realised by elements: all divisors of the exponent.
    pub fn element_orders(&self) -> Vec<u64> {
        divisors(self.exponent())
    }

    /// Exponents `e₁ <= … <= e_k` of the `p`-primary component.
    pub fn p_type(&self, p: u64) -> Vec<u32> {
        self.invariant_factors
            .iter()
            .map(|&n| crate::arith::valuation(n, p))
            .filter(|&e| e > 0)
            .collect()
    }

    fn primes(&self) -> Vec<u64> {
        factorize(self.exponent()).primes().collect()
    }

    /// `|Aut(G)|`, as the product over primary components of the
    /// Hillar–Rhea count for abelian p-groups.
    pub fn aut_order(&self) -> BigUint {
        self.primes()
            .into_iter()
            .map(|p| p_group_aut_order(p, &self.p_type(p)))
            .product()
    }
}

/// Automorphisms of `⊕ Z/p^{eᵢ}` with `e₁ <= … <= e_n`:
/// `∏_k (p^{d_k} − p^{k−1}) · ∏_j (p^{e_j})^{n−d_j} · ∏_i (p^{e_i − 1})^{n−c_i+1}`,
/// where `d_k = max{l : e_l = e_k}` and `c_k = min{l : e_l = e_k}` (1-based).
fn p_group_aut_order(p: u64, exps: &[u32]) -> BigUint {
    let n = exps.len();
    let big_p = BigUint::from(p);
    let pow = |e: usize| big_p.pow(e as u32);
    let mut total = BigUint::one();
    for k in 0..n {
        let d = (k..n).rev().find(|&l| exps[l] == exps[k]).unwrap() + 1;
        let c = (0..=k).find(|&l| exps[l] == exps[k]).unwrap() + 1;
        total *= pow(d) - pow(k);
        total *= pow(exps[k] as usize * (n - d));
        total *= pow((exps[k] as usize - 1) * (n - c + 1));
    }
    total
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        FiniteAbelianGroup::from_invariant_factors(v)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Vec<u64> {
        g.invariant_factors
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|n| format!("Z/{n}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Partitions of `n` as non-increasing part lists, starting from `[n]`.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every isomorphism class of abelian group of order `m`, cyclic first.
pub fn abelian_groups_of_order(m: u64) -> Vec<FiniteAbelianGroup> {
    assert!(m >= 1);
    let mut groups: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(m).factors {
        let mut next = Vec::new();
        for prefix in &groups {
            for part in partitions(e) {
                let mut orders = prefix.clone();
                orders.extend(part.iter().map(|&k| p.pow(k)));
                next.push(orders);
            }
        }
        groups = next;
    }
    groups
        .iter()
        .map(|orders| FiniteAbelianGroup::from_cyclic_orders(orders))
        .collect()
}

/// Order of `(g₁, g₂)` in `G₁ ⋊ G₂` when `g₂` acts trivially: `lcm(n₁, n₂)`.
pub fn semidirect_order(n1: u64, n2: u64) -> u64 {
    lcm(n1, n2)
}

/// Can a cyclic field of degree `n` have class number `m`?
///
/// Excluded when some prime of `m` does not divide `n` and `n` is coprime to
/// `|Aut(G)|` for every abelian `G` of order `m`: the extension then splits
/// as a direct product, which makes the Hilbert class field abelian, and that
/// in turn contradicts the prime of `m` not dividing `n`.
pub fn cor37_check(n: u64, m: u64) -> Result<Certificate> {
    if n <= 1 || m <= 1 {
        return Err(Error::InvalidInput(format!(
            "degree and class number must exceed 1 (got n = {n}, m = {m})"
        )));
    }
    let stray_prime = factorize(m).primes().find(|&p| n % p != 0);
    let groups = abelian_groups_of_order(m);
    let checked: Vec<serde_json::Value> = groups
        .iter()
        .map(|g| {
            let aut = g.aut_order();
            let shared = aut.gcd(&BigUint::from(n));
            serde_json::json!({
                "group": g.invariant_factors(),
                "aut_order": aut.to_u64().map_or_else(|| aut.to_string().into(), serde_json::Value::from),
                "gcd_with_degree": shared.to_u64().unwrap_or(u64::MAX),
            })
        })
        .collect();
    let all_coprime = checked
        .iter()
        .all(|c| c["gcd_with_degree"].as_u64() == Some(1));
    let mut cert = match stray_prime {
        Some(p) if all_coprime => {
            Certificate::new(Verdict::Excluded, Criterion::AutCoprimeExclusion)
                .witness("prime_of_m_not_dividing_n", p)
        }
        _ => Certificate::new(Verdict::Inconclusive, Criterion::AutCoprimeExclusion),
    };
    cert = cert
        .subject(format!("cyclic field of degree {n}, class number {m}"))
        .witness("n", n)
        .witness("m", m)
        .witness("groups_checked", checked)
        .assume("K/Q cyclic of degree n");
    if stray_prime.is_none() {
        cert = cert.witness("failed", "every prime of m divides n");
    } else if !all_coprime {
        cert = cert.witness("failed", "n shares a factor with some |Aut(G)|");
    }
    Ok(cert)
}
