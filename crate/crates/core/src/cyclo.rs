//! Abelian number fields as fixed fields of subgroups of `(Z/m)^*`.
//!
//! A field `K ⊆ Q(ζ_m)` is stored as the subgroup `H` of units mod `m` that
//! fixes it, kept as a sorted element list plus a membership table. Every
//! arithmetic invariant (degree, ramification, conductor, discriminant) is
//! read off `H` by counting residues.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::abgroup::FiniteAbelianGroup;
use crate::arith::{
    crt, divisors, factorize, gcd, is_prime, lcm, mul_mod, pow_mod, valuation, Factorization,
};
use crate::error::{Error, Result};

/// User-facing description of a field: modulus and subgroup generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianFieldSpec {
    pub m: u64,
    pub h_generators: Vec<u64>,
}

impl AbelianFieldSpec {
    pub fn new(m: u64, h_generators: Vec<u64>) -> Self {
        AbelianFieldSpec { m, h_generators }
    }

    pub fn build(&self) -> Result<AbelianField> {
        AbelianField::new(self.m, &self.h_generators)
    }
}

/// Ramification data at one prime dividing the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRamification {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub conductor_exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub degree: u64,
    pub conductor: u64,
    pub primes: Vec<PrimeRamification>,
}

impl RamificationProfile {
    pub fn ramified(&self) -> impl Iterator<Item = &PrimeRamification> {
        self.primes.iter().filter(|r| r.e > 1)
    }
}

/// `|D_K| = ∏ p^k`, kept factored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discriminant {
    pub factors: Vec<(u64, u64)>,
}

impl Discriminant {
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .map(|&(p, k)| BigUint::from(p).pow(k as u32))
            .product()
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianField {
    m: u64,
    m_fact: Factorization,
    phi: u64,
    member: Vec<bool>,
    elements: Vec<u64>,
    generators: Vec<u64>,
    /// The modulus was given as `2m` with `m` odd.
    dropped_two: bool,
}

impl AbelianField {
    /// Fixed field of `⟨gens⟩ ⊆ (Z/m)^*`. A modulus `≡ 2 mod 4` is replaced by
    /// `m/2`, which describes the same field.
    pub fn new(m: u64, gens: &[u64]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSubgroup("modulus must be positive".into()));
        }
        if let Some(&g) = gens.iter().find(|&&g| gcd(g % m, m) != 1) {
            return Err(Error::InvalidSubgroup(format!("{g} is not a unit mod {m}")));
        }
        let dropped_two = m % 4 == 2;
        let m = if dropped_two { m / 2 } else { m };
        let mut field = Self::trivial_subgroup(m);
        field.dropped_two = dropped_two;
        for &g in gens {
            field.adjoin(g % m);
        }
        field.generators = gens.iter().map(|&g| g % m).collect();
        Ok(field)
    }

    /// Builds `H` as the set of units satisfying `pred`, which must describe
    /// a subgroup.
    fn from_predicate(m: u64, pred: impl Fn(u64) -> bool) -> Self {
        debug_assert!(m % 4 != 2);
        let mut field = Self::trivial_subgroup(m);
        for a in 0..m {
            if gcd(a, m) == 1 && !field.member[a as usize] && pred(a) {
                field.adjoin(a);
                field.generators.push(a);
            }
        }
        debug_assert!((0..m).all(|a| gcd(a, m) != 1 || pred(a) == field.member[a as usize]));
        field
    }

    fn trivial_subgroup(m: u64) -> Self {
        let one = 1 % m;
        let mut member = vec![false; m as usize];
        member[one as usize] = true;
        let m_fact = factorize(m);
        AbelianField {
            m,
            phi: crate::arith::phi_of(&m_fact),
            m_fact,
            member,
            elements: vec![one],
            generators: Vec::new(),
            dropped_two: false,
        }
    }

    /// Replaces `H` by `H·⟨g⟩`.
    fn adjoin(&mut self, g: u64) {
        if self.member[g as usize] {
            return;
        }
        let mut coset_reps = vec![1 % self.m];
        let mut x = g;
        while !self.member[x as usize] {
            coset_reps.push(x);
            x = mul_mod(x, g, self.m);
        }
        let old = std::mem::take(&mut self.elements);
        for &r in &coset_reps {
            for &h in &old {
                let y = mul_mod(r, h, self.m);
                self.member[y as usize] = true;
                self.elements.push(y);
            }
        }
        self.elements.sort_unstable();
    }

    pub fn cyclotomic(m: u64) -> Result<Self> {
        Self::new(m, &[])
    }

    /// Maximal real subfield of `Q(ζ_m)`.
    pub fn real_cyclotomic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSubgroup("modulus must be positive".into()));
        }
        Self::new(m, &[m - 1])
    }

    /// `Q(√d)` inside `Q(ζ_|D|)`, fixed by the kernel of the Kronecker character.
    pub fn quadratic(d: i64) -> Result<Self> {
        let disc = crate::quadratic::fundamental_discriminant(d)?;
        let m = disc.unsigned_abs();
        Ok(Self::from_predicate(m, |a| {
            crate::arith::kronecker_symbol(disc, a as i64) == 1
        }))
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn modulus_factorization(&self) -> &Factorization {
        &self.m_fact
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn spec(&self) -> AbelianFieldSpec {
        AbelianFieldSpec::new(self.m, self.generators.clone())
    }

    /// Elements of `H` in increasing order.
    pub fn subgroup(&self) -> &[u64] {
        &self.elements
    }

    pub fn subgroup_order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, a: u64) -> bool {
        self.member[(a % self.m) as usize]
    }

    pub fn degree(&self) -> u64 {
        self.phi / self.subgroup_order()
    }

    /// `K` is real iff complex conjugation (`-1`) fixes it.
    pub fn is_real(&self) -> bool {
        self.contains(self.m - 1)
    }

    fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.m).filter(move |&a| gcd(a, self.m) == 1)
    }

    fn prime_power_of(&self, p: u64) -> (u32, u64) {
        let v = self.m_fact.exponent_of(p);
        (v, p.pow(v))
    }

    /// `I_p = {a : a ≡ 1 mod m/p^v}`.
    fn inertia_group(&self, p: u64) -> Vec<u64> {
        let (_, pv) = self.prime_power_of(p);
        let rest = self.m / pv;
        (0..pv)
            .map(|k| (1 + k * rest) % self.m)
            .filter(|&a| pv == 1 || a % p != 0)
            .collect()
    }

    fn ramification_index_unchecked(&self, p: u64) -> u64 {
        let inertia = self.inertia_group(p);
        let fixed = inertia.iter().filter(|&&a| self.contains(a)).count() as u64;
        inertia.len() as u64 / fixed
    }

    /// `e(p) = [I_p : I_p ∩ H]`.
    pub fn ramification_index(&self, p: u64) -> Result<u64> {
        if p == 2 && self.dropped_two {
            return Ok(1);
        }
        if p < 2 || self.m % p != 0 {
            return Err(Error::NotDividing { p, m: self.m });
        }
        Ok(self.ramification_index_unchecked(p))
    }

    /// Order of Frobenius at `p` in `G / I_p`, where `G = (Z/m)^*/H`.
    pub fn residue_degree(&self, p: u64) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let (_, pv) = self.prime_power_of(p);
        let rest = self.m / pv;
        let frob = if pv == 1 {
            p % self.m
        } else {
            crt(&[(p % rest, rest), (1, pv)]).expect("coprime moduli").0
        };
        let mut decomposition_kernel = vec![false; self.m as usize];
        for i in self.inertia_group(p) {
            for &h in &self.elements {
                decomposition_kernel[mul_mod(i, h, self.m) as usize] = true;
            }
        }
        let mut x = frob;
        let mut k = 1;
        while !decomposition_kernel[x as usize] {
            x = mul_mod(x, frob, self.m);
            k += 1;
        }
        Ok(k)
    }

    /// Least `f | m` such that every unit `≡ 1 mod f` lies in `H`.
    pub fn conductor_by_kernel(&self) -> u64 {
        divisors(self.m)
            .into_iter()
            .find(|&f| {
                (0..self.m / f)
                    .map(|k| 1 + k * f)
                    .filter(|&a| gcd(a, self.m) == 1)
                    .all(|a| self.contains(a))
            })
            .expect("f = m always qualifies")
    }

    /// Conductor from ramification indices: an odd ramified `p` contributes
    /// `p^{1+ν_p(e(p))}`; at 2 the exponent is `ν₂(e(2)) + 1` when adjoining
    /// `√−1` leaves `e(2)` unchanged and `ν₂(e(2)) + 2` otherwise.
    pub fn conductor_by_ramification(&self) -> u64 {
        let mut f = 1;
        for p in self.m_fact.primes() {
            let e = self.ramification_index_unchecked(p);
            if e == 1 {
                continue;
            }
            let nu = valuation(e, p);
            let wild_two =
                p == 2 && self.adjoin_sqrt_minus_one().ramification_index_unchecked(2) != e;
            let exponent = if wild_two { nu + 2 } else { nu + 1 };
            f *= p.pow(exponent);
        }
        f
    }

    /// `K(√−1)`, the fixed field of `{a ∈ H : a ≡ 1 mod 4}` in `Q(ζ_lcm(m,4))`.
    pub fn adjoin_sqrt_minus_one(&self) -> AbelianField {
        let big = lcm(self.m, 4);
        Self::from_predicate(big, |a| a % 4 == 1 && self.contains(a % self.m))
    }

    /// Runs both conductor algorithms and insists they agree.
    pub fn conductor(&self) -> Result<u64> {
        let by_kernel = self.conductor_by_kernel();
        let by_ramification = self.conductor_by_ramification();
        if by_kernel != by_ramification {
            return Err(Error::InternalMismatch(format!(
                "conductor of {}: kernel search gives {by_kernel}, ramification formula gives {by_ramification}",
                self.describe()
            )));
        }
        Ok(by_kernel)
    }

    /// The same field, presented with its conductor as modulus.
    pub fn at_conductor(&self) -> Result<AbelianField> {
        let f = self.conductor()?;
        if f == self.m {
            return Ok(self.clone());
        }
        let mut image = vec![false; f as usize];
        for &h in &self.elements {
            image[(h % f) as usize] = true;
        }
        let reduced = Self::from_predicate(f, |a| image[a as usize]);
        debug_assert_eq!(reduced.degree(), self.degree());
        Ok(reduced)
    }

    pub fn ramification_profile(&self) -> Result<RamificationProfile> {
        let conductor = self.conductor()?;
        let primes = self
            .m_fact
            .primes()
            .map(|p| {
                Ok(PrimeRamification {
                    p,
                    e: self.ramification_index_unchecked(p),
                    f: self.residue_degree(p)?,
                    conductor_exponent: valuation(conductor, p),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RamificationProfile {
            degree: self.degree(),
            conductor,
            primes,
        })
    }

    /// Primes ramified in `K`.
    pub fn ramified_primes(&self) -> Vec<u64> {
        self.m_fact
            .primes()
            .filter(|&p| self.ramification_index_unchecked(p) > 1)
            .collect()
    }

    /// `|D_K| = ∏ p_i^{(v_i − λ_i)·n}` over the conductor `∏ p_i^{v_i}`, with
    /// `u_i = e(p_i)/p_i^{v_i−1}` and
    /// `λ_i = (p^s − 1 + (p − 1)/u_i) / (p^s (p − 1))`, `s = v_i − gcd(p_i, 2)`.
    pub fn discriminant(&self) -> Result<Discriminant> {
        let field = self.at_conductor()?;
        let n = field.degree() as i128;
        let mut factors = Vec::new();
        for (p, v) in field.m_fact.factors.iter().copied() {
            let e = field.ramification_index_unchecked(p) as i128;
            let p_i = p as i128;
            let u = Ratio::new(e, p_i.pow(v - 1));
            let ps = p_i.pow(v - gcd(p, 2) as u32);
            let lambda =
                (Ratio::from(ps - 1) + Ratio::from(p_i - 1) / u) / Ratio::from(ps * (p_i - 1));
            let exponent = (Ratio::from(v as i128) - lambda) * Ratio::from(n);
            if !exponent.is_integer() || *exponent.numer() < 0 {
                return Err(Error::NonIntegralExponent { p });
            }
            factors.push((p, *exponent.numer() as u64));
        }
        Ok(Discriminant { factors })
    }

    /// Structure of `Gal(K/Q) ≅ (Z/m)^*/H`, from the sizes of its
    /// `q^j`-torsion subgroups.
    pub fn galois_group(&self) -> FiniteAbelianGroup {
        let units: Vec<u64> = self.units().collect();
        let h = self.subgroup_order();
        let torsion = |k: u64| {
            units
                .iter()
                .filter(|&&a| self.contains(pow_mod(a, k, self.m)))
                .count() as u64
                / h
        };
        let mut orders = Vec::new();
        for (q, a) in factorize(self.degree()).factors {
            let mut ranks = Vec::new();
            let mut prev = 1;
            for j in 1..=a {
                let size = torsion(q.pow(j));
                ranks.push(valuation(size / prev, q));
                prev = size;
            }
            for part in 0..ranks[0] {
                let exponent = ranks.iter().filter(|&&r| r > part).count() as u32;
                orders.push(q.pow(exponent));
            }
        }
        FiniteAbelianGroup::from_cyclic_orders(&orders)
    }

    pub fn is_cyclic(&self) -> bool {
        self.galois_group().is_cyclic()
    }

    /// `[K*:K] = ∏_p e(p) / [K:Q]` for cyclic `K`, the narrow genus field
    /// being the compositum of degree-`e(p)` pieces ramified only at `p`.
    pub fn genus_degree_cyclic(&self) -> Result<u64> {
        if !self.is_cyclic() {
            return Err(Error::NotCyclic);
        }
        let product: u64 = self
            .m_fact
            .primes()
            .map(|p| self.ramification_index_unchecked(p))
            .product();
        let n = self.degree();
        if product % n != 0 {
            return Err(Error::NonIntegral(format!(
                "genus degree {product}/{n} for {}",
                self.describe()
            )));
        }
        Ok(product / n)
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        format!("m={};gens={}", self.m, gens.join(","))
    }
}

/// Every subgroup of `(Z/m)^*`, each as a sorted element list, ordered by
/// size and then lexicographically.
pub fn unit_subgroups(m: u64) -> Vec<Vec<u64>> {
    assert!(m >= 1);
    let base = AbelianField::trivial_subgroup(m);
    let units: Vec<u64> = base.units().collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue = vec![base];
    seen.insert(queue[0].elements.clone());
    let mut i = 0;
    while i < queue.len() {
        for &g in &units {
            if queue[i].contains(g) {
                continue;
            }
            let mut bigger = queue[i].clone();
            bigger.adjoin(g);
            if seen.insert(bigger.elements.clone()) {
                queue.push(bigger);
            }
        }
        i += 1;
    }
    let mut all: Vec<Vec<u64>> = seen.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// How a field was written in the input grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldShape {
    Subgroup,
    Quadratic { d: i64 },
    Cyclotomic,
    RealCyclotomic,
}

#[derive(Debug, Clone)]
pub struct ParsedField {
    pub shape: FieldShape,
    pub field: AbelianField,
}

impl FromStr for ParsedField {
    type Err = Error;

    /// Accepts `m=<int>;gens=<int>,...`, `quad:d=<int>`, `cyclotomic:m=<int>`
    /// and `real-cyclotomic:m=<int>`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let int = |s: &str, what: &str| -> Result<i64> {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad {what} '{}' in '{text}'", s.trim())))
        };
        let modulus = |s: &str| -> Result<u64> {
            let m = int(s, "modulus")?;
            u64::try_from(m)
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::Parse(format!("modulus must be positive in '{text}'")))
        };
        if let Some(rest) = text.strip_prefix("quad:") {
            let d = int(expect_key(rest, "d", text)?, "d")?;
            let field = AbelianField::quadratic(d)?;
            return Ok(ParsedField {
                shape: FieldShape::Quadratic { d },
                field,
            });
        }
        if let Some(rest) = text.strip_prefix("real-cyclotomic:") {
            let m = modulus(expect_key(rest, "m", text)?)?;
            let field = AbelianField::real_cyclotomic(m)?;
            return Ok(ParsedField {
                shape: FieldShape::RealCyclotomic,
                field,
            });
        }
        if let Some(rest) = text.strip_prefix("cyclotomic:") {
            let m = modulus(expect_key(rest, "m", text)?)?;
            let field = AbelianField::cyclotomic(m)?;
            return Ok(ParsedField {
                shape: FieldShape::Cyclotomic,
                field,
            });
        }
        let (m_part, gens_part) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected 'm=<int>;gens=<list>' in '{text}'")))?;
        let m = modulus(expect_key(m_part, "m", text)?)?;
        let gens_list = expect_key(gens_part, "gens", text)?;
        let gens = gens_list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                let g = int(s, "generator")?;
                Ok(g.rem_euclid(m as i64) as u64)
            })
            .collect::<Result<Vec<_>>>()?;
        let field = AbelianField::new(m, &gens)?;
        Ok(ParsedField {
            shape: FieldShape::Subgroup,
            field,
        })
    }
}

fn expect_key<'a>(part: &'a str, key: &str, whole: &str) -> Result<&'a str> {
    part.trim()
        .strip_prefix(key)
        .and_then(|s| s.trim_start().strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("expected '{key}=' in '{whole}'")))
}
