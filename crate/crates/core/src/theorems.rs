//! Class number bounds and Hilbert class field criteria for abelian fields.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::abgroup::FiniteAbelianGroup;
use crate::arith::{euler_phi, factorize, gcd, is_prime, valuation};
use crate::certificate::{Certificate, Criterion, Verdict};
use crate::cyclo::AbelianField;
use crate::error::{Error, Result};

/// The pieces of the class number bound `t` attached to a conductor `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TBoundBreakdown {
    pub m: u64,
    /// Primes dividing `m`.
    pub s: Vec<u64>,
    /// Primes dividing at least two of the `p − 1`, `p ∈ S`.
    pub s1: Vec<u64>,
    pub u_exponents: BTreeMap<u64, u32>,
    /// Product of the `p ∈ S` with `p² | m` that divide exactly one `q − 1`.
    pub x: u64,
    pub w_exponents: BTreeMap<u64, u32>,
    pub t: u64,
}

/// `t = ∏_{q ∈ S₁} q^{u_q} · ∏_{p | x} p^{w_p}`, where `u_q` and `w_p` are
/// the exponents of `q` and `p` in `∏_{p ∈ S} (p − 1)`.
pub fn t_bound(m: u64) -> Result<TBoundBreakdown> {
    if m == 0 || m % 4 == 2 {
        return Err(Error::InvalidInput(format!(
            "t-bound needs m >= 1, m ≢ 2 mod 4 (got {m})"
        )));
    }
    let fact = factorize(m);
    let s: Vec<u64> = fact.primes().collect();
    let shifted: Vec<u64> = s.iter().map(|p| p - 1).collect();
    let product: u64 = shifted.iter().product();
    let hits = |q: u64| shifted.iter().filter(|&&k| k % q == 0).count();

    let mut s1 = Vec::new();
    let mut u_exponents = BTreeMap::new();
    for q in factorize(product).primes() {
        if hits(q) >= 2 {
            s1.push(q);
            u_exponents.insert(q, valuation(product, q));
        }
    }
    let mut x = 1;
    let mut w_exponents = BTreeMap::new();
    for (p, v) in fact.factors.iter().copied() {
        if v >= 2 && hits(p) == 1 {
            x *= p;
            w_exponents.insert(p, valuation(product, p));
        }
    }
    let t = u_exponents
        .iter()
        .chain(w_exponents.iter())
        .map(|(&q, &e)| q.pow(e))
        .product();
    Ok(TBoundBreakdown {
        m,
        s,
        s1,
        u_exponents,
        x,
        w_exponents,
        t,
    })
}

/// `ℓ`-torsion version: if the Hilbert `ℓ`-class field is abelian over `Q`,
/// the `ℓ`-part of the class group divides `t`; it is trivial when `ℓ ∤ t`.
pub fn t_bound_ell(m: u64, ell: u64) -> Result<Certificate> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let tb = t_bound(m)?;
    let ell_part = ell.pow(valuation(tb.t, ell));
    let verdict = if ell_part == 1 {
        Verdict::TorsionTrivial
    } else {
        Verdict::TorsionBounded
    };
    Ok(Certificate::new(verdict, Criterion::TBoundEll)
        .subject(format!("abelian fields of conductor {m}"))
        .witness("m", m)
        .witness("ell", ell)
        .witness("t", tb.t)
        .witness("torsion_bound", ell_part)
        .witness("s", tb.s)
        .assume("Hilbert ell-class field abelian over Q"))
}

/// `hⁿ < D`, compared exactly.
pub fn verify_main_bound(h: u64, disc: &BigUint, n: u64) -> Certificate {
    let holds = BigUint::from(h).pow(n as u32) < *disc;
    Certificate::new(
        if holds {
            Verdict::BoundHolds
        } else {
            Verdict::BoundFails
        },
        Criterion::MainBound,
    )
    .witness("h", h)
    .witness("D", disc.to_string())
    .witness("n", n)
}

/// Looks for a class of order `k > 1` with `k ∤ [K:F]·h_F`. Without a
/// subfield, `F = Q`.
pub fn certify_nonabelian(
    degree: u64,
    class_group: &FiniteAbelianGroup,
    subfield: Option<(u64, u64)>,
) -> Certificate {
    let (relative_degree, h_f) = subfield.unwrap_or((degree, 1));
    let bound = relative_degree * h_f;
    let witness = class_group
        .element_orders()
        .into_iter()
        .find(|&k| k > 1 && bound % k != 0);
    let mut cert = match witness {
        Some(k) if subfield.is_none() && is_prime(k) => {
            Certificate::new(Verdict::NonAbelian, Criterion::PrimeNotDividingDegree)
        }
        Some(_) => Certificate::new(Verdict::NonAbelian, Criterion::OrderNotDividing),
        None => Certificate::new(Verdict::Inconclusive, Criterion::OrderNotDividing),
    }
    .witness("degree", degree)
    .witness("class_group", class_group.invariant_factors())
    .witness("n_times_h_f", bound);
    if let Some(k) = witness {
        cert = cert.witness("element_order", k);
    }
    if let Some((n_sub, h)) = subfield {
        cert = cert.witness("relative_degree", n_sub).witness("h_f", h);
    }
    cert
}

/// Field shapes whose Hilbert class field is abelian over `Q` only when `h = 1`.
pub fn recognize_trivial_class_shape(k: &AbelianField) -> Result<Criterion> {
    let field = k.at_conductor()?;
    let f = field.modulus();
    let n = field.degree();
    let primes: Vec<u64> = field.modulus_factorization().primes().collect();
    if field.subgroup_order() == 1 {
        return Ok(Criterion::CyclotomicShape);
    }
    if field.subgroup_order() == 2 && field.is_real() {
        return Ok(Criterion::RealCyclotomicShape);
    }
    if primes.len() <= 1 {
        return Ok(Criterion::PrimePowerConductor);
    }
    let no_divisibility = primes
        .iter()
        .all(|&p| primes.iter().all(|&q| (q - 1) % p != 0));
    let two_power_overlap = primes.iter().enumerate().all(|(i, &p)| {
        primes[i + 1..]
            .iter()
            .all(|&q| gcd(p - 1, q - 1).is_power_of_two())
    });
    if n % 2 == 1 && no_divisibility && two_power_overlap {
        return Ok(Criterion::OddDegreeTwoPowerOverlap);
    }
    let cofactor = euler_phi(f) / n;
    if gcd(cofactor, n) == 1 {
        return Ok(Criterion::CoprimeCofactor);
    }
    Err(Error::ShapeNotRecognized(format!(
        "conductor {f}, degree {n}, φ(f)/n = {cofactor} shares a factor with n"
    )))
}

/// `H(K)/Q` abelian iff `h = 1` for the shapes above. Without `h` the verdict
/// stays inconclusive and the certificate records the criterion.
pub fn cor32_check(k: &AbelianField, h: Option<u64>) -> Result<Certificate> {
    let shape = recognize_trivial_class_shape(k)?;
    let verdict = match h {
        Some(1) => Verdict::Abelian,
        Some(_) => Verdict::NonAbelian,
        None => Verdict::Inconclusive,
    };
    let mut cert = Certificate::new(verdict, shape)
        .subject(k.describe())
        .witness("conductor", k.conductor()?)
        .witness("degree", k.degree())
        .witness("abelian_iff_h_equals", 1);
    if let Some(h) = h {
        cert = cert.witness("h", h).assume("h supplied externally");
    }
    Ok(cert)
}

/// `|Po(K)| = ∏ e(p) / [K:Q]`, halved when `K` is real and every unit has
/// norm `+1`.
pub fn chabert_polya_cyclic(k: &AbelianField, unit_norm_trivial: bool) -> Result<u64> {
    if !k.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let product: u64 = k
        .ramified_primes()
        .into_iter()
        .map(|p| k.ramification_index(p))
        .product::<Result<u64>>()?;
    let denom = if k.is_real() && unit_norm_trivial {
        2 * k.degree()
    } else {
        k.degree()
    };
    if product % denom != 0 {
        return Err(Error::NonIntegral(format!(
            "Pólya order {product}/{denom} for {}",
            k.describe()
        )));
    }
    Ok(product / denom)
}

/// For cyclic `K` of odd degree or imaginary `K`: `H(K)/Q` abelian iff
/// `|Po(K)| = h`.
pub fn c1_decision_cyclic(k: &AbelianField, h: u64) -> Result<Certificate> {
    if k.degree() % 2 == 0 && k.is_real() {
        return Err(Error::HypothesisFail(format!(
            "{} is real of even degree {}",
            k.describe(),
            k.degree()
        )));
    }
    // Odd degree forces N(−1) = −1, so the norm-trivial case never arises here.
    let po = chabert_polya_cyclic(k, false)?;
    let verdict = if po == h {
        Verdict::Abelian
    } else {
        Verdict::NonAbelian
    };
    Ok(Certificate::new(verdict, Criterion::PolyaEqualsClassGroup)
        .subject(k.describe())
        .witness("degree", k.degree())
        .witness("polya_order", po)
        .witness("h", h)
        .assume("h supplied externally"))
}

/// `Cℓ(K) ≅ (Z/q)^{s−1}` for `K` of odd prime degree `q` with abelian
/// Hilbert class field, `s` the number of ramified primes.
pub fn prime_degree_class_group_predict(k: &AbelianField, q: u64) -> Result<FiniteAbelianGroup> {
    if q == 2 || !is_prime(q) {
        return Err(Error::InvalidInput(format!("{q} is not an odd prime")));
    }
    if k.degree() != q {
        return Err(Error::DegreeMismatch {
            expected: q,
            actual: k.degree(),
        });
    }
    let s = k.ramified_primes().len();
    Ok(FiniteAbelianGroup::elementary(q, s.saturating_sub(1)))
}

/// `R(E, p^a) = [E:Q](1/p + … + 1/p^a) + a`.
pub fn r_function(deg_e: u64, p: u64, a: u32) -> BigRational {
    let p_big = BigInt::from(p);
    let pa: BigInt = Pow::pow(&p_big, a);
    let geometric = BigRational::new(&pa - 1u32, pa * (&p_big - 1u32));
    BigRational::from_integer(deg_e.into()) * geometric + BigRational::from_integer(a.into())
}

/// `R(x, y) = ∏_{p^a ∥ y} p^{R(E, p^a)}` for `[E:Q] = xy`. Every exponent
/// is an integer because `p^a` divides `[E:Q]`.
pub fn r_product(x: u64, y: u64) -> Result<BigUint> {
    let mut total = BigUint::one();
    for (p, a) in factorize(y).factors {
        let exponent = r_function(x * y, p, a);
        if !exponent.is_integer() {
            return Err(Error::NonIntegral(format!(
                "R exponent {exponent} at p = {p}"
            )));
        }
        let e: u32 = exponent
            .to_integer()
            .try_into()
            .map_err(|_| Error::InvalidInput(format!("R exponent {exponent} too large")))?;
        total *= BigUint::from(p).pow(e);
    }
    Ok(total)
}

/// Upper bound on the class number of `H(K)` for `K` of degree `n` and class
/// number `h` whose Hilbert class field is abelian of conductor `m` and
/// index `m1` in `Q(ζ_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct N1Bound {
    #[serde(serialize_with = "as_string")]
    pub r_nh_m1: BigUint,
    #[serde(serialize_with = "as_string")]
    pub r_1_n: BigUint,
    #[serde(serialize_with = "as_string")]
    pub numerator: BigUint,
    pub phi: u64,
    #[serde(serialize_with = "as_string")]
    pub bound: BigRational,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl N1Bound {
    pub fn floor(&self) -> BigInt {
        self.bound.floor().to_integer()
    }

    pub fn certificate(&self, h_hilbert: Option<u64>) -> Certificate {
        let verdict = match h_hilbert {
            Some(h) if BigRational::from_integer(h.into()) <= self.bound => Verdict::BoundHolds,
            Some(_) => Verdict::BoundFails,
            None => Verdict::Inconclusive,
        };
        let mut cert = Certificate::new(verdict, Criterion::HilbertClassFieldBound)
            .witness("bound", self.bound.to_string())
            .witness("R_nh_m1", self.r_nh_m1.to_string())
            .witness("R_1_n", self.r_1_n.to_string())
            .witness("phi_m", self.phi)
            .assume("relative Pólya order supplied externally");
        if let Some(h) = h_hilbert {
            cert = cert
                .witness("h_hilbert", h)
                .assume("class number of H(K) supplied externally");
        }
        cert
    }
}

/// `R(nh, m₁)·R(1, n)·|Po(K)|·|Po(Q(ζ_m)/H(K))| / φ(m)`. The tower
/// `Q ⊂ K ⊂ H(K) ⊂ Q(ζ_m)` requires `n·h·m₁ = φ(m)`.
pub fn n1_bound(n: u64, h: u64, m: u64, m1: u64, po_k: u64, po_rel: u64) -> Result<N1Bound> {
    if [n, h, m, m1, po_k, po_rel].contains(&0) {
        return Err(Error::InvalidInput(
            "all tower parameters must be positive".into(),
        ));
    }
    let phi = euler_phi(m);
    if n as u128 * h as u128 * m1 as u128 != phi as u128 {
        return Err(Error::TowerInconsistent(format!(
            "n·h·m1 = {}·{}·{} but φ({m}) = {phi}",
            n, h, m1
        )));
    }
    let r_nh_m1 = r_product(n * h, m1)?;
    let r_1_n = r_product(1, n)?;
    let numerator = &r_nh_m1 * &r_1_n * po_k * po_rel;
    let bound = BigRational::new(BigInt::from(numerator.clone()), BigInt::from(phi));
    Ok(N1Bound {
        r_nh_m1,
        r_1_n,
        numerator,
        phi,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_bound_examples() {
        let tb = t_bound(21).unwrap();
        assert_eq!((tb.t, tb.s1.clone(), tb.x), (4, vec![2], 1));
        assert_eq!(tb.u_exponents[&2], 2);
        assert_eq!(t_bound(4).unwrap().t, 1);
        assert_eq!(t_bound(5).unwrap().t, 1);
        assert_eq!(t_bound(1).unwrap().t, 1);
        let tb = t_bound(63).unwrap();
        assert_eq!((tb.x, tb.t), (3, 12));
        assert!(t_bound(6).is_err());
    }

    #[test]
    fn t_bound_ell_examples() {
        assert_eq!(t_bound_ell(21, 3).unwrap().verdict, Verdict::TorsionTrivial);
        let c = t_bound_ell(21, 2).unwrap();
        assert_eq!(
            (c.verdict, c.get_u64("torsion_bound")),
            (Verdict::TorsionBounded, Some(4))
        );
        assert_eq!(t_bound_ell(5, 2).unwrap().verdict, Verdict::TorsionTrivial);
        assert_eq!(t_bound_ell(5, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn main_bound_examples() {
        let holds = |h, d: u32, n| verify_main_bound(h, &BigUint::from(d), n).verdict;
        assert_eq!(holds(2, 20, 2), Verdict::BoundHolds);
        assert_eq!(holds(1, 2, 7), Verdict::BoundHolds);
        assert_eq!(holds(2, 221, 2), Verdict::BoundHolds);
        assert_eq!(holds(5, 25, 2), Verdict::BoundFails);
    }

    #[test]
    fn nonabelian_examples() {
        let c = certify_nonabelian(2, &FiniteAbelianGroup::cyclic(3), None);
        assert_eq!(
            (c.verdict, c.get_u64("element_order")),
            (Verdict::NonAbelian, Some(3))
        );
        let c = certify_nonabelian(6, &FiniteAbelianGroup::cyclic(5), Some((2, 1)));
        assert_eq!(
            (c.verdict, c.theorem),
            (Verdict::NonAbelian, Criterion::OrderNotDividing)
        );
        assert_eq!(
            certify_nonabelian(6, &FiniteAbelianGroup::cyclic(5), None).verdict,
            Verdict::NonAbelian
        );
        assert_eq!(
            certify_nonabelian(2, &FiniteAbelianGroup::cyclic(2), None).verdict,
            Verdict::Inconclusive
        );
        let c = certify_nonabelian(2, &FiniteAbelianGroup::cyclic(4), None);
        assert_eq!(
            (c.theorem, c.get_u64("element_order")),
            (Criterion::OrderNotDividing, Some(4))
        );
    }

    #[test]
    fn shape_examples() {
        let k = AbelianField::cyclotomic(5).unwrap();
        let c = cor32_check(&k, Some(1)).unwrap();
        assert_eq!(
            (c.verdict, c.theorem),
            (Verdict::Abelian, Criterion::CyclotomicShape)
        );
        // The cubic subfield of Q(ζ_9) is its real subfield.
        let cubic_9 = AbelianField::new(9, &[8]).unwrap();
        assert_eq!(cubic_9.degree(), 3);
        assert_eq!(
            cor32_check(&cubic_9, None).unwrap().theorem,
            Criterion::RealCyclotomicShape
        );
        let cubic_13 = AbelianField::new(13, &[5]).unwrap();
        assert_eq!(cubic_13.degree(), 3);
        assert_eq!(
            cor32_check(&cubic_13, None).unwrap().theorem,
            Criterion::PrimePowerConductor
        );
        let k = AbelianField::new(35, &[6]).unwrap();
        assert_eq!(k.degree(), 12);
        assert!(matches!(
            cor32_check(&k, None),
            Err(Error::ShapeNotRecognized(_))
        ));
        let k = AbelianField::real_cyclotomic(20).unwrap();
        assert_eq!(
            recognize_trivial_class_shape(&k).unwrap(),
            Criterion::RealCyclotomicShape
        );
    }

    fn cubic(m: u64) -> AbelianField {
        crate::cyclo::unit_subgroups(m)
            .into_iter()
            .map(|h| AbelianField::new(m, &h).unwrap())
            .find(|k| k.degree() == 3 && k.conductor().unwrap() == m)
            .unwrap()
    }

    #[test]
    fn chabert_examples() {
        assert_eq!(chabert_polya_cyclic(&cubic(63), false), Ok(3));
        assert_eq!(chabert_polya_cyclic(&cubic(7), false), Ok(1));
        let k = AbelianField::quadratic(221).unwrap();
        assert_eq!(chabert_polya_cyclic(&k, true), Ok(1));
        assert_eq!(chabert_polya_cyclic(&k, false), Ok(2));
        assert_eq!(
            chabert_polya_cyclic(&AbelianField::cyclotomic(8).unwrap(), false),
            Err(Error::NotCyclic)
        );
    }

    #[test]
    fn c1_examples() {
        assert_eq!(
            c1_decision_cyclic(&cubic(63), 3).unwrap().verdict,
            Verdict::Abelian
        );
        assert_eq!(
            c1_decision_cyclic(&cubic(7), 1).unwrap().verdict,
            Verdict::Abelian
        );
        assert_eq!(
            c1_decision_cyclic(&cubic(63), 9).unwrap().verdict,
            Verdict::NonAbelian
        );
        let real_quadratic = AbelianField::quadratic(5).unwrap();
        assert!(matches!(
            c1_decision_cyclic(&real_quadratic, 1),
            Err(Error::HypothesisFail(_))
        ));
    }

    #[test]
    fn prime_degree_examples() {
        assert_eq!(
            prime_degree_class_group_predict(&cubic(63), 3),
            Ok(FiniteAbelianGroup::cyclic(3))
        );
        assert_eq!(
            prime_degree_class_group_predict(&cubic(7), 3),
            Ok(FiniteAbelianGroup::trivial())
        );
        let quintic = crate::cyclo::unit_subgroups(341)
            .into_iter()
            .map(|h| AbelianField::new(341, &h).unwrap())
            .find(|k| k.degree() == 5 && k.ramified_primes() == vec![11, 31])
            .unwrap();
        assert_eq!(
            prime_degree_class_group_predict(&quintic, 5),
            Ok(FiniteAbelianGroup::cyclic(5))
        );
        assert_eq!(
            prime_degree_class_group_predict(&cubic(7), 5),
            Err(Error::DegreeMismatch {
                expected: 5,
                actual: 3
            })
        );
    }

    #[test]
    fn r_function_examples() {
        let r = |d, p, a| r_function(d, p, a);
        assert_eq!(r(2, 2, 1), BigRational::from_integer(2.into()));
        assert_eq!(r(4, 2, 2), BigRational::from_integer(5.into()));
        assert_eq!(r(6, 3, 1), BigRational::from_integer(3.into()));
        for a in 1..=10u32 {
            let sum: BigRational = (1..=a)
                .map(|k| BigRational::new(1.into(), BigInt::from(3u32).pow(k)))
                .sum();
            assert_eq!(
                r(7, 3, a),
                BigRational::from_integer(7.into()) * sum + BigRational::from_integer(a.into())
            );
        }
    }

    #[test]
    fn n1_examples() {
        let b = n1_bound(2, 1, 4, 1, 1, 1).unwrap();
        assert_eq!(b.bound, BigRational::from_integer(2.into()));
        assert_eq!(b.certificate(Some(1)).verdict, Verdict::BoundHolds);
        let b = n1_bound(2, 2, 20, 2, 2, 1).unwrap();
        assert_eq!(b.bound, BigRational::from_integer(32.into()));
        assert!(matches!(
            n1_bound(2, 2, 20, 1, 2, 1),
            Err(Error::TowerInconsistent(_))
        ));
    }
}
