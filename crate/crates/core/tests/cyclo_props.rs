mod oracles;

use abelian_cft::arith::gcd;
use abelian_cft::cyclo::{unit_subgroups, AbelianField, ParsedField};
use abelian_cft::Error;
use proptest::prelude::*;

fn for_each_field(max_m: u64, mut f: impl FnMut(u64, &AbelianField)) {
    for m in 1..=max_m {
        for h in unit_subgroups(m) {
            f(m, &AbelianField::new(m, &h).unwrap());
        }
    }
}

#[test]
fn subgroup_enumeration_is_closed_and_complete() {
    // (Z/8)^* ≅ (Z/2)², (Z/7)^* ≅ Z/6, (Z/15)^* ≅ Z/2 + Z/4.
    assert_eq!(unit_subgroups(8).len(), 5);
    assert_eq!(unit_subgroups(7).len(), 4);
    assert_eq!(unit_subgroups(15).len(), 8);
    for m in 1..=60u64 {
        for h in unit_subgroups(m) {
            for &a in &h {
                for &b in &h {
                    assert!(h.contains(&(a * b % m.max(1))) || m == 1, "m={m} H={h:?}");
                }
            }
        }
    }
}

#[test]
fn ramified_primes_are_discriminant_primes() {
    for_each_field(150, |m, k| {
        let conductor = k.conductor().unwrap();
        let disc = k.discriminant().unwrap();
        for (p, _) in oracles::trial_factor(m) {
            let in_disc = disc.factors.iter().any(|&(q, e)| q == p && e > 0);
            assert_eq!(in_disc, conductor % p == 0, "m={m} {} p={p}", k.describe());
        }
    });
}

#[test]
fn residue_times_ramification_divides_degree() {
    for_each_field(150, |m, k| {
        let n = k.degree();
        for (p, _) in oracles::trial_factor(m) {
            let e = k.ramification_index(p).unwrap();
            let f = k.residue_degree(p).unwrap();
            assert_eq!(
                n % (e * f),
                0,
                "m={m} {} p={p}: e={e} f={f} n={n}",
                k.describe()
            );
        }
    });
}

#[test]
fn cyclic_genus_degree_is_integral() {
    for_each_field(200, |_, k| {
        if k.is_cyclic() {
            assert!(k.genus_degree_cyclic().is_ok(), "{}", k.describe());
        } else {
            assert_eq!(k.genus_degree_cyclic(), Err(Error::NotCyclic));
        }
    });
}

#[test]
fn galois_group_order_is_degree() {
    for_each_field(120, |_, k| {
        assert_eq!(
            k.galois_group().order(),
            k.degree() as u128,
            "{}",
            k.describe()
        );
    });
}

#[test]
fn cyclic_cubic_of_conductor_63() {
    let cubics: Vec<AbelianField> = unit_subgroups(63)
        .into_iter()
        .map(|h| AbelianField::new(63, &h).unwrap())
        .filter(|k| k.degree() == 3 && k.conductor().unwrap() == 63)
        .collect();
    assert!(!cubics.is_empty());
    for k in cubics {
        assert_eq!(k.ramification_index(3).unwrap(), 3);
        assert_eq!(k.ramification_index(7).unwrap(), 3);
        assert_eq!(k.genus_degree_cyclic().unwrap(), 3);
    }
}

#[test]
fn grammar_errors() {
    for bad in [
        "",
        "m=7",
        "m=x;gens=1",
        "quad:d=4",
        "cyclotomic:m=0",
        "m=9;gens=3",
    ] {
        assert!(bad.parse::<ParsedField>().is_err(), "{bad}");
    }
    assert!(matches!(
        "m=9;gens=3".parse::<ParsedField>(),
        Err(Error::InvalidSubgroup(_))
    ));
    assert!(matches!(
        "quad:d=12".parse::<ParsedField>(),
        Err(Error::NotSquarefree(12))
    ));
}

proptest! {
    #[test]
    fn random_subgroups_cross_check(m in 3u64..400, seeds in prop::collection::vec(1u64..400, 0..3)) {
        let gens: Vec<u64> = seeds.into_iter().map(|s| s % m).filter(|&g| gcd(g, m) == 1).collect();
        let k = AbelianField::new(m, &gens).unwrap();
        let h = k.subgroup().to_vec();
        let kept = k.modulus();
        prop_assert_eq!(k.conductor_by_kernel(), oracles::conductor_oracle(kept, &h));
        prop_assert_eq!(k.conductor_by_ramification(), k.conductor_by_kernel());
        let disc: std::collections::BTreeMap<u64, u64> =
            k.discriminant().unwrap().factors.into_iter().filter(|&(_, e)| e > 0).collect();
        prop_assert_eq!(disc, oracles::discriminant_oracle(kept, &h));
    }

    #[test]
    fn quadratic_shorthand_matches_discriminant(d in -3000i64..3000) {
        prop_assume!(d != 0 && d != 1 && oracles::trial_factor(d.unsigned_abs()).values().all(|&e| e == 1));
        let k: ParsedField = format!("quad:d={d}").parse().unwrap();
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        prop_assert_eq!(k.field.degree(), 2);
        prop_assert_eq!(k.field.conductor().unwrap(), disc.unsigned_abs());
        prop_assert_eq!(k.field.discriminant().unwrap().value(), num_bigint::BigUint::from(disc.unsigned_abs()));
        prop_assert_eq!(k.field.is_real(), d > 0);
    }
}
