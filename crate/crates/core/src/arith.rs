//! Exact integer arithmetic on machine words.
//!
//! Factorization is trial division by the primes below 10⁶ followed by a
//! deterministic Miller–Rabin test and Brent's variant of Pollard rho for
//! whatever cofactor remains. Everything here is exact; there is no floating
//! point anywhere in this module.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

const TRIAL_BOUND: u64 = 1_000_000;

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` pairs, strictly increasing in the prime.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Multiplies the factors back out. Saturates at `u128::MAX`, which
    /// cannot happen for a factorization produced by [`factorize`].
    pub fn expand(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, &(p, e)| {
            acc.saturating_mul((p as u128).saturating_pow(e))
        })
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_BOUND as u32))
}

/// Sieve of Eratosthenes; all primes `p <= n`.
pub fn primes_up_to(n: u32) -> Vec<u32> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended Euclid on signed values: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| x.rem_euclid(m as i128) as u64)
}

/// Chinese remaindering of `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
/// Returns `(x, M)` with `0 <= x < M = ∏ m_i`, or `None` when two moduli
/// share a factor or the product overflows.
pub fn crt(congruences: &[(u64, u64)]) -> Option<(u64, u64)> {
    let mut x: u64 = 0;
    let mut modulus: u64 = 1;
    for &(r, m) in congruences {
        if m == 0 {
            return None;
        }
        let inv = inv_mod(modulus % m, m)?;
        let new_mod = modulus.checked_mul(m)?;
        // x + modulus * k ≡ r (mod m)
        let diff = (r % m + m - x % m) % m;
        let k = mul_mod(diff, inv, m);
        x = ((x as u128 + modulus as u128 * k as u128) % new_mod as u128) as u64;
        modulus = new_mod;
    }
    Some((x, modulus))
}

/// p-adic valuation of `n`; `valuation(0, p)` is defined as 0.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(p >= 2);
    if n == 0 {
        return 0;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn isqrt(n: u64) -> u64 {
    isqrt_u128(n as u128) as u64
}

/// Floor square root by integer Newton iteration.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding variant of Pollard rho. `n` must be odd and composite.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Prime factorization of `n >= 1`. `factorize(1)` has no factors.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize expects a positive integer");
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        if rest < TRIAL_BOUND * TRIAL_BOUND || is_prime(rest) {
            factors.push((rest, 1));
        } else {
            let mut big = Vec::new();
            split_large(rest, &mut big);
            big.sort_unstable();
            for p in big {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    Factorization { value: n, factors }
}

/// Euler's totient via `∏ p^(v-1) (p-1)`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    phi_of(&factorize(n))
}

pub fn phi_of(f: &Factorization) -> u64 {
    f.factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).is_squarefree()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let f = factorize(n);
    let mut out = vec![1u64];
    for &(p, e) in &f.factors {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Kronecker symbol `(a / n)`, extending the Jacobi symbol to all integers.
pub fn kronecker_symbol(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign: i8 = 1;
    let mut m = n.unsigned_abs();
    if n < 0 && a < 0 {
        sign = -1;
    }
    let tz = m.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        m >>= tz;
        if tz % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
    }
    // Jacobi symbol (a / m), m odd and positive.
    let mut x = a.rem_euclid(m as i64) as u64;
    let mut y = m;
    while x != 0 {
        let t = x.trailing_zeros();
        x >>= t;
        if t % 2 == 1 && (y % 8 == 3 || y % 8 == 5) {
            sign = -sign;
        }
        if x % 4 == 3 && y % 4 == 3 {
            sign = -sign;
        }
        (x, y) = (y % x, x);
    }
    if y == 1 {
        sign
    } else {
        0
    }
}

/// `p = b² + c²` for a prime `p ≡ 1 (mod 4)` (or `p = 2`), via Cornacchia.
/// Returns `(b, c)` with `b >= c > 0`.
pub fn two_squares(p: u64) -> Option<(u64, u64)> {
    if p == 2 {
        return Some((1, 1));
    }
    if p % 4 != 1 || !is_prime(p) {
        return None;
    }
    // A quadratic non-residue z gives z^((p-1)/4) as a square root of -1.
    let mut z = 2;
    while kronecker_symbol(z as i64, p as i64) != -1 {
        z += 1;
    }
    let mut a = p;
    let mut b = pow_mod(z, (p - 1) / 4, p);
    if b > p / 2 {
        b = p - b;
    }
    let bound = isqrt(p);
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    let c = isqrt(rest);
    if c * c != rest {
        return None;
    }
    Some((b.max(c), b.min(c)))
}
