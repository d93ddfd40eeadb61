//! Monic cubics, the `x³ + cx + c` family with Galois group `S₃`, and the
//! residue degree criteria for class groups of such fields.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::abgroup::FiniteAbelianGroup;
use crate::arith::{divisors, factorize, gcd};
use crate::certificate::{Certificate, Criterion, Verdict};
use crate::error::{Error, Result};

/// `x³ + ax² + bx + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl CubicSpec {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        CubicSpec { a, b, c }
    }

    /// `x³ + cx + c`.
    pub fn family(c: i64) -> Self {
        CubicSpec { a: 0, b: c, c }
    }

    fn eval(&self, x: i128) -> i128 {
        ((x + self.a as i128) * x + self.b as i128) * x + self.c as i128
    }

    /// No root in `F₂`: `f(0)` and `f(1)` both odd.
    pub fn irreducible_mod_2(&self) -> bool {
        self.c.rem_euclid(2) == 1 && (1 + self.a + self.b + self.c).rem_euclid(2) == 1
    }

    /// A monic integer cubic is reducible over `Q` iff it has an integer
    /// root, which must divide `c`.
    pub fn has_integer_root(&self) -> bool {
        if self.c == 0 {
            return true;
        }
        divisors(self.c.unsigned_abs())
            .into_iter()
            .any(|r| self.eval(r as i128) == 0 || self.eval(-(r as i128)) == 0)
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible_mod_2() || !self.has_integer_root()
    }
}

/// `D_f = a²b² − 4b³ − 4a³c − 27c² + 18abc`.
pub fn cubic_discriminant(f: &CubicSpec) -> BigInt {
    let (a, b, c) = (BigInt::from(f.a), BigInt::from(f.b), BigInt::from(f.c));
    &a * &a * &b * &b - 4 * &b * &b * &b - 4 * &a * &a * &a * &c - 27 * &c * &c + 18 * &a * &b * &c
}

pub fn is_square(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Minus => false,
        Sign::NoSign => true,
        Sign::Plus => {
            let m: &BigUint = n.magnitude();
            let r = m.sqrt();
            &r * &r == *m
        }
    }
}

fn family_label(c: i64) -> String {
    let sign = if c < 0 { '-' } else { '+' };
    let k = c.unsigned_abs();
    format!("x^3 {sign} {k}x {sign} {k}")
}

/// Galois group of the splitting field of `x³ + cx + c`: `S₃` when the cubic
/// is irreducible and its discriminant is not a square.
pub fn s3_family_check(c: i64) -> Certificate {
    let f = CubicSpec::family(c);
    let disc = cubic_discriminant(&f);
    let mod2 = f.irreducible_mod_2();
    let irreducible = f.is_irreducible();
    let square = is_square(&disc);
    let verdict = if irreducible && !square {
        Verdict::S3
    } else {
        Verdict::NotS3
    };
    let mut cert = Certificate::new(verdict, Criterion::S3Family)
        .subject(family_label(c))
        .witness("c", c)
        .witness("irreducible_mod_2", mod2)
        .witness("irreducible", irreducible)
        .witness("discriminant", disc.to_string())
        .witness("discriminant_is_square", square);
    if c.rem_euclid(2) == 1 && c.rem_euclid(3) == 1 {
        cert = cert.witness("odd_and_1_mod_3", true);
    }
    cert
}

/// For an `S₃` field with `Cℓ(K) ≅ Z/u`: applies when `u` is squarefree
/// with every prime `≡ 2 mod 3`.
pub fn pht2_check(u: u64) -> Result<Certificate> {
    if u == 0 {
        return Err(Error::InvalidInput("class number must be positive".into()));
    }
    let fact = factorize(u);
    let cert = Certificate::new(Verdict::Applies, Criterion::CyclicClassGroup2Mod3)
        .subject("S3 field with cyclic class group")
        .witness("u", u)
        .witness("f", 3)
        .assume(format!("assumed h={u}"))
        .assume("Gal(K/Q) = S3, class group cyclic");
    if let Some(&(p, _)) = fact.factors.iter().find(|&&(_, e)| e > 1) {
        return Ok(Certificate {
            verdict: Verdict::DoesNotApply,
            ..cert
        }
        .witness("repeated_prime", p));
    }
    if let Some(p) = fact.primes().find(|&p| p % 3 != 2) {
        return Ok(Certificate {
            verdict: Verdict::DoesNotApply,
            ..cert
        }
        .witness("failing_prime", p)
        .witness("failing_prime_mod_3", p % 3));
    }
    Ok(cert)
}

/// For Galois `K` of degree `n` with class group `cl` of order `u`: `f` is a
/// residue degree generating the class group when `1 < f | n`,
/// `gcd(f, u) = 1`, no element of `Gal(K/Q)` has order above `f`, and
/// `gcd(f, |Aut(cl)|) = 1` (so an element of order `f` acts trivially).
pub fn pht1_check(
    n: u64,
    u: u64,
    f: u64,
    galois_max_order: u64,
    cl: &FiniteAbelianGroup,
) -> Result<Certificate> {
    if cl.order() != u as u128 {
        return Err(Error::InvalidInput(format!(
            "class group {cl} has order {}, expected {u}",
            cl.order()
        )));
    }
    let aut = cl.aut_order();
    let aut_coprime = aut.gcd(&BigUint::from(f)).is_one();
    let checks = [
        ("f_greater_than_1", f > 1),
        ("f_divides_n", f > 0 && n % f == 0),
        ("f_coprime_to_u", gcd(f, u) == 1),
        ("max_order_at_most_f", galois_max_order <= f),
        ("f_coprime_to_aut_order", aut_coprime),
    ];
    let applies = checks.iter().all(|&(_, ok)| ok);
    let mut cert = Certificate::new(
        if applies {
            Verdict::Applies
        } else {
            Verdict::DoesNotApply
        },
        Criterion::SplitResidueDegree,
    )
    .witness("n", n)
    .witness("u", u)
    .witness("f", f)
    .witness("galois_max_order", galois_max_order)
    .witness("class_group", cl.invariant_factors())
    .witness("aut_order", aut.to_string())
    .assume(format!("assumed h={u}"))
    .assume("element of order f acts trivially on the class group");
    for (name, ok) in checks {
        cert = cert.witness(name, ok);
    }
    if gcd(n, u) == 1 {
        cert = cert.assume("extension of Gal(K/Q) by the class group splits since gcd(n, u) = 1");
    }
    Ok(cert)
}
