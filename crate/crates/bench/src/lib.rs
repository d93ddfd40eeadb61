//! Shared inputs for the benchmarks.

use abelian_cft::quadratic::fundamental_discriminants;

/// Large primes and products of two large primes, for the primality and rho paths.
pub const LARGE_INPUTS: [u64; 4] = [
    4_611_686_014_132_420_609,
    1_000_000_016_000_000_063,
    999_999_999_999_999_989,
    2_305_843_009_213_693_951,
];

pub fn imaginary_discriminants(max_abs: i64, count: usize) -> Vec<i64> {
    fundamental_discriminants(-max_abs, -5)
        .into_iter()
        .rev()
        .take(count)
        .collect()
}

pub fn real_discriminants(max: i64, count: usize) -> Vec<i64> {
    fundamental_discriminants(5, max)
        .into_iter()
        .rev()
        .take(count)
        .collect()
}
