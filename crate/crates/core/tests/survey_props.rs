mod oracles;

use abelian_cft::survey::{run_survey, write_jsonl, SurveyConfig, SurveyRow};
use abelian_cft::Verdict;
use proptest::prelude::*;

#[test]
fn imaginary_abelian_exactly_at_one_class_per_genus() {
    let sieve = oracles::Sieve::new(100);
    let rows = run_survey(&SurveyConfig::imaginary(100)).unwrap().rows;
    let expected: Vec<i64> = (3..=100)
        .map(|a| -a)
        .filter(|&d| oracles::is_fundamental(d))
        .collect();
    assert_eq!(rows.iter().map(|r| r.disc).collect::<Vec<_>>(), expected);
    for row in rows {
        let one_per_genus = oracles::class_number_analytic(row.disc, &sieve)
            == 1 << (oracles::prime_count(row.disc) - 1);
        assert_eq!(
            row.verdict == Verdict::Abelian,
            one_per_genus,
            "D = {}",
            row.disc
        );
    }
}

#[test]
fn real_abelian_class_numbers_are_genus_powers() {
    let rows = run_survey(&SurveyConfig::real(400)).unwrap().rows;
    let small: Vec<&SurveyRow> = rows.iter().filter(|r| r.d <= 100).collect();
    let expected = (2..=100)
        .filter(|&d| oracles::trial_factor(d).values().all(|&e| e == 1))
        .count();
    assert_eq!(small.len(), expected);
    for row in small.into_iter().filter(|r| r.verdict == Verdict::Abelian) {
        let (a, b) = (1 << (row.r - 1), 1 << row.r.saturating_sub(2));
        assert!(row.h == a || row.h == b, "d = {}: h = {}", row.d, row.h);
    }
}

#[test]
fn jsonl_round_trips() {
    let rows = run_survey(&SurveyConfig::real(300)).unwrap().rows;
    let mut buf = Vec::new();
    write_jsonl(&rows, &mut buf).unwrap();
    let parsed: Vec<SurveyRow> = String::from_utf8(buf)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(parsed, rows);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rows_do_not_depend_on_workers_or_window(lo in 1i64..5000, width in 1i64..3000, workers in 2usize..6) {
        let window = |w: usize| {
            let config = SurveyConfig { d_min: -(lo + width), d_max: -lo, ..SurveyConfig::imaginary(1).with_workers(w) };
            run_survey(&config).unwrap().rows
        };
        let serial = window(1);
        prop_assert_eq!(&serial, &window(workers));
        let full = run_survey(&SurveyConfig::imaginary((lo + width) as u64)).unwrap().rows;
        let slice: Vec<SurveyRow> = full.into_iter().filter(|r| r.disc.abs() >= lo).collect();
        prop_assert_eq!(serial, slice);
    }
}
