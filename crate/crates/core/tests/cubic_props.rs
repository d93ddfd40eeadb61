mod oracles;

use abelian_cft::cubic::{cubic_discriminant, is_square, pht2_check, s3_family_check, CubicSpec};
use abelian_cft::Verdict;
use num_bigint::BigInt;
use proptest::prelude::*;

fn isqrt_i128(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[test]
fn family_discriminant_identity() {
    for c in -10_000i64..=10_000 {
        let c2 = c as i128 * c as i128;
        let expected = -c2 * (4 * c as i128 + 27);
        assert_eq!(
            cubic_discriminant(&CubicSpec::family(c)),
            BigInt::from(expected),
            "c = {c}"
        );
    }
}

#[test]
fn s3_for_odd_one_mod_three() {
    for c in (-1000i64..=1000).filter(|&c| c != 0 && c.rem_euclid(2) == 1 && c.rem_euclid(3) == 1) {
        // No root in F₂: x³ + cx + c at x = 0 and x = 1.
        let roots_mod_2 = (0..2i64)
            .filter(|&x| (x * x * x + c * x + c).rem_euclid(2) == 0)
            .count();
        assert_eq!(roots_mod_2, 0, "c = {c}");
        let disc = -(c as i128) * (c as i128) * (4 * c as i128 + 27);
        assert!(disc < 0 || isqrt_i128(disc).pow(2) != disc, "c = {c}");
        let cert = s3_family_check(c);
        assert_eq!(cert.verdict, Verdict::S3, "c = {c}");
        assert_eq!(
            cert.get("irreducible_mod_2"),
            Some(&serde_json::json!(true))
        );
    }
}

#[test]
fn reducible_members_are_not_s3() {
    for c in -2000i64..=2000 {
        let has_root = (-2000i64..=2000).any(|x| {
            let (x, c) = (x as i128, c as i128);
            x * x * x + c * x + c == 0
        });
        if has_root {
            assert_eq!(s3_family_check(c).verdict, Verdict::NotS3, "c = {c}");
        }
    }
}

proptest! {
    #[test]
    fn pht2_applies_only_to_squarefree_two_mod_three(u in 1u64..1_000_000) {
        let applies = pht2_check(u).unwrap().verdict == Verdict::Applies;
        let f = oracles::trial_factor(u);
        let expected = f.values().all(|&e| e == 1) && f.keys().all(|&p| p % 3 == 2);
        prop_assert_eq!(applies, expected);
    }

    #[test]
    fn square_test_matches_integer_root(n in 0i128..1_000_000_000_000_000_000) {
        let r = isqrt_i128(n);
        prop_assert_eq!(is_square(&BigInt::from(n)), r * r == n);
        prop_assert!(is_square(&BigInt::from(r * r)));
        prop_assert!(!is_square(&BigInt::from(-n - 1)));
    }
}
