//! Independent reference implementations used to cross-check the library.
//! Each one takes a different route from the code it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn trial_factor(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn mobius(n: u64) -> i64 {
    let f = trial_factor(n);
    if f.values().any(|&e| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Totients of `0..=n` by sieve.
pub fn totient_sieve(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for k in (p..=n).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    phi
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// `(a/p)` for a prime `p`, by Euler's criterion at odd `p`.
pub fn kronecker_prime(a: i64, p: u64) -> i32 {
    if p == 2 {
        return match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(a/n)` from the factorization of `n`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut s = if n < 0 && a < 0 { -1 } else { 1 };
    for (p, e) in trial_factor(n.unsigned_abs()) {
        let k = kronecker_prime(a, p);
        if e % 2 == 1 {
            s *= k;
        } else if k == 0 {
            return 0;
        }
    }
    s
}

/// Smallest prime factor table for fast multiplicative characters.
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(n: usize) -> Self {
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                for k in (i..=n).step_by(i) {
                    if spf[k] == 0 {
                        spf[k] = i as u32;
                    }
                }
            }
        }
        Sieve { spf }
    }

    /// `χ_D(a) = (D/a)` for `1 <= a`, built multiplicatively from prime values.
    pub fn character_table(&self, disc: i64, len: usize) -> Vec<i32> {
        let mut chi = vec![0i32; len];
        if len > 1 {
            chi[1] = 1;
        }
        for a in 2..len {
            let p = self.spf[a] as usize;
            chi[a] = chi[a / p] * kronecker_prime(disc, p as u64);
        }
        chi
    }
}

/// `h(D) = −(w / 2|D|) Σ_{a<|D|} χ_D(a)·a` for `D < 0`.
pub fn class_number_analytic(disc: i64, sieve: &Sieve) -> u64 {
    let n = disc.unsigned_abs() as usize;
    let chi = sieve.character_table(disc, n);
    let sum: i64 = (1..n).map(|a| chi[a] as i64 * a as i64).sum();
    let w: i64 = match disc {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let num = -w * sum;
    let den = 2 * n as i64;
    assert_eq!(
        num % den,
        0,
        "non-integral analytic class number for {disc}"
    );
    (num / den) as u64
}

/// Number of distinct primes dividing `D`.
pub fn prime_count(disc: i64) -> u32 {
    trial_factor(disc.unsigned_abs()).len() as u32
}

pub fn is_fundamental(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    let f = trial_factor(disc.unsigned_abs());
    match disc.rem_euclid(4) {
        1 => f.values().all(|&e| e == 1),
        0 => {
            let odd_sqfree = f.iter().filter(|(&p, _)| p != 2).all(|(_, &e)| e == 1);
            let m = disc / 4;
            odd_sqfree && matches!(m.rem_euclid(4), 2 | 3)
        }
        _ => false,
    }
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(2)..=r + 2).any(|x| x * x == n)
}

/// Norm of the fundamental unit of `Q(√d)` by searching for the smallest
/// solution of `x² − dy² = ±k`, `k = 4` when `d ≡ 1 mod 4` and `1` otherwise.
pub fn unit_norm_brute(d: u64, y_max: u64) -> Option<i8> {
    let k = if d % 4 == 1 { 4 } else { 1 };
    for y in 1..=y_max {
        let dy2 = d * y * y;
        if dy2 >= k && is_square(dy2 - k) {
            return Some(-1);
        }
        if is_square(dy2 + k) {
            return Some(1);
        }
    }
    None
}

/// Conductor counts of the characters of `(Z/m)^*` trivial on `H`:
/// characters whose conductor divides `d` are the characters of
/// `G / U_d·H`, and Möbius inversion over the divisors of `m` isolates each
/// exact conductor.
pub fn character_conductors(m: u64, h: &[u64]) -> BTreeMap<u64, u64> {
    if m == 1 {
        return BTreeMap::from([(1, 1)]);
    }
    let units: Vec<u64> = (1..m).filter(|&a| gcd(a, m) == 1).collect();
    let divs = divisors(m);
    let at_most: HashMap<u64, u64> = divs
        .iter()
        .map(|&d| {
            let mut member = vec![false; m as usize];
            for &u in units.iter().filter(|&&u| u % d == 1 % d) {
                for &x in h {
                    member[(u * x % m) as usize] = true;
                }
            }
            let size = member.iter().filter(|&&b| b).count() as u64;
            (d, units.len() as u64 / size)
        })
        .collect();
    let mut exact = BTreeMap::new();
    for &d in &divs {
        let e: i64 = divisors(d)
            .into_iter()
            .map(|dp| mobius(d / dp) * at_most[&dp] as i64)
            .sum();
        assert!(e >= 0);
        if e > 0 {
            exact.insert(d, e as u64);
        }
    }
    exact
}

/// Conductor as the lcm of the character conductors.
pub fn conductor_oracle(m: u64, h: &[u64]) -> u64 {
    character_conductors(m, h)
        .keys()
        .fold(1, |acc, &f| acc / gcd(acc, f) * f)
}

/// `|D_K|` as prime exponents of `∏_χ f_χ`.
pub fn discriminant_oracle(m: u64, h: &[u64]) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for (f, count) in character_conductors(m, h) {
        for (p, e) in trial_factor(f) {
            *out.entry(p).or_insert(0) += e as u64 * count;
        }
    }
    out
}

/// Number of automorphisms of `⊕ Z/n_i` (order at most 64): homomorphisms
/// are tuples `(g_i)` with `n_i·g_i = 0`, and a tuple gives an automorphism
/// exactly when it generates the group. Counted by a DP over the subgroup
/// generated so far, stored as a bitmask of elements.
pub fn aut_order_brute(orders: &[u64]) -> u128 {
    let n: u64 = orders.iter().product();
    assert!(n <= 64, "brute force limited to order 64");
    let n = n as usize;
    let coords: Vec<Vec<u64>> = (0..n)
        .map(|mut i| {
            orders
                .iter()
                .map(|&k| {
                    let c = i as u64 % k;
                    i /= k as usize;
                    c
                })
                .collect()
        })
        .collect();
    let index = |c: &[u64]| -> usize {
        c.iter()
            .zip(orders)
            .rev()
            .fold(0u64, |acc, (&x, &k)| acc * k + x) as usize
    };
    let add: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c: Vec<u64> = coords[i]
                        .iter()
                        .zip(&coords[j])
                        .zip(orders)
                        .map(|((a, b), k)| (a + b) % k)
                        .collect();
                    index(&c)
                })
                .collect()
        })
        .collect();
    let order: Vec<u64> = (0..n)
        .map(|x| {
            let mut k = 1;
            let mut cur = x;
            while cur != 0 {
                cur = add[cur][x];
                k += 1;
            }
            k
        })
        .collect();
    let span = |s: u64, x: usize| -> u64 {
        let mut result = s;
        let mut cur = x;
        while s >> cur & 1 == 0 {
            for (e, row) in add.iter().enumerate() {
                if s >> e & 1 == 1 {
                    result |= 1 << row[cur];
                }
            }
            cur = add[cur][x];
        }
        result
    };
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut states: HashMap<u64, u128> = HashMap::from([(1u64, 1u128)]);
    for &k in orders {
        let mut next: HashMap<u64, u128> = HashMap::new();
        for (&s, &count) in &states {
            for x in (0..n).filter(|&x| k % order[x] == 0) {
                *next.entry(span(s, x)).or_insert(0) += count;
            }
        }
        states = next;
    }
    states.get(&full).copied().unwrap_or(0)
}

/// Integer partition counts `p(0..=n)`.
pub fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p
}

/// `d` with `D = d` or `D = 4d`.
pub fn radicand(disc: i64) -> i64 {
    if disc % 4 == 0 {
        disc / 4
    } else {
        disc
    }
}
