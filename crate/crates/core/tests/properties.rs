use std::sync::OnceLock;

use proptest::prelude::*;

use apseq::apsolver::{ap_from, ap_global, ApQuery};
use apseq::certifier::{run, sample_class, spot_check, RunConfig, RunResult};
use apseq::constants::{check_bound, closed_form, solve_congruence, Dyadic};
use apseq::{add_words, count_subword, e_v, BinaryWord, Pattern, SequenceHandle};
use apseq::{ApTable, TableKind};

fn letters(max: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..=1, 0..max)
}

fn word(max: usize) -> impl Strategy<Value = BinaryWord> {
    letters(max).prop_map(|l| BinaryWord::from_letters(l).unwrap())
}

fn pattern(max_len: usize) -> impl Strategy<Value = Pattern> {
    (1..=max_len)
        .prop_flat_map(|len| (Just(len), 0u32..1 << len))
        .prop_map(|(len, x)| format!("{x:0len$b}").parse().unwrap())
}

/// `e_v(n)` by substring search on the expansion, padded with the leading
/// zeros of `v` when `v` contains a 1.
fn count_by_search(v: &str, n: u128) -> u32 {
    let body = if n == 0 { String::new() } else { format!("{n:b}") };
    let pad = if v.contains('1') { v.len() - v.trim_start_matches('0').len() } else { 0 };
    let text = format!("{}{body}", "0".repeat(pad));
    (0..text.len()).filter(|&i| text[i..].starts_with(v)).count() as u32
}

fn main_run() -> &'static RunResult {
    static RESULT: OnceLock<RunResult> = OnceLock::new();
    RESULT.get_or_init(|| run(&RunConfig::main_run()).unwrap())
}

proptest! {
    #[test]
    fn value_round_trip(n in any::<u64>(), w in word(60)) {
        prop_assert_eq!(BinaryWord::from_value(n as u128).value(), n as u128);
        prop_assert_eq!(BinaryWord::from_value(w.value()), w.trim_leading_zeros());
    }

    #[test]
    fn negation_keeps_subword_counts(w in word(40), v in letters(5).prop_filter("nonempty", |l| !l.is_empty())) {
        let v = BinaryWord::from_letters(v).unwrap();
        prop_assert_eq!(count_subword(&w.negate(), &v.negate()).unwrap(), count_subword(&w, &v).unwrap());
    }

    #[test]
    fn addition_matches_integers(a in any::<u64>(), b in any::<u64>()) {
        let (sum, _) = add_words(&BinaryWord::from_value(a as u128), &BinaryWord::from_value(b as u128));
        prop_assert_eq!(sum.value(), a as u128 + b as u128);
    }

    #[test]
    fn pattern_count_matches_search(v in pattern(6), n in 0u128..1 << 40) {
        prop_assert_eq!(e_v(&v, n), count_by_search(&v.to_string(), n));
    }

    #[test]
    fn single_one_counts_digit_sum(n in any::<u64>()) {
        prop_assert_eq!(e_v(&Pattern::thue_morse(), n as u128), n.count_ones());
    }

    #[test]
    fn trailing_one_ignores_doubling(v in pattern(6).prop_filter("ends in 1", |v| v.ends_with_one()), n in 0u128..1 << 40) {
        prop_assert_eq!(e_v(&v, 2 * n), e_v(&v, n));
    }

    #[test]
    fn block_congruence(v in pattern(5).prop_filter("has a 1", |v| v.contains_one()), n in 0u128..1 << 30, j in any::<u32>()) {
        let b = v.block_len() as u128;
        let j = j as u128 % b;
        let l = n % b;
        let rhs = (v.parity(n) + v.parity(l) + v.parity(b * l + j)) % 2;
        prop_assert_eq!(v.parity(b * n + j), rhs);
    }

    #[test]
    fn odd_subsequence_is_odd_indices(n in 0u128..1 << 60) {
        prop_assert_eq!(
            SequenceHandle::rs_odd().color(n),
            SequenceHandle::rudin_shapiro().color(2 * n + 1)
        );
    }

    #[test]
    fn from_zero_doubling(v in pattern(4).prop_filter("ends in 1", |v| v.ends_with_one()), d in 1u128..=1024) {
        let h = SequenceHandle::pattern(v);
        let once = ap_from(&ApQuery::new(h.clone(), 0, d)).unwrap();
        prop_assert_eq!(ap_from(&ApQuery::new(h, 0, 2 * d)).unwrap(), once);
    }

    #[test]
    fn general_bound(v in pattern(3).prop_filter("length >= 2", |v| v.len() >= 2), d in 1u128..=2048) {
        let ell = 128 - d.leading_zeros();
        let exp = ell + v.len() as u32 - d.trailing_zeros() - 1;
        prop_assert!((ap_global(&v, d).unwrap() as u128) <= 1u128 << exp);
    }

    #[test]
    fn constants_are_dyadic_in_range(v in pattern(6).prop_filter("in family", |v| v.len() >= 2 && v.contains_one())) {
        let k = solve_congruence(&v).unwrap();
        prop_assert!(k.c > Dyadic::integer(0) && k.c < Dyadic::integer(1));
        prop_assert!(k.b > Dyadic::integer(0));
        prop_assert!(check_bound(&v).unwrap());
        if v.ends_with_one() {
            let closed = closed_form(&v).unwrap();
            prop_assert_eq!(closed.c, k.c);
            prop_assert_eq!(closed.x_min, k.x_min);
        }
    }

    #[test]
    fn csv_round_trip(values in proptest::collection::vec(1u64..=2, 0..40)) {
        let v: Pattern = "11".parse().unwrap();
        let table = ApTable::new(vec![v.clone(), v], TableKind::FromZero, vec![values.clone(), values]).unwrap();
        let text = table.to_csv().unwrap();
        prop_assert_eq!(ApTable::from_csv(&text, TableKind::FromZero).unwrap().to_csv().unwrap(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_hold_on_sampled_differences(idx in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let result = main_run();
        let cert = &result.certificates[idx.index(result.certificates.len())];
        for d in sample_class(&cert.key, 8, seed) {
            if !result.exceptions.contains(&d) {
                prop_assert!(spot_check(cert, d).is_ok(), "{} fails at d = {}", cert.key, d);
            }
        }
    }
}

#[test]
fn certifier_is_deterministic() {
    let again = run(&RunConfig::main_run()).unwrap();
    let first = main_run();
    assert_eq!(again.iterations, first.iterations);
    assert_eq!(again.exceptions, first.exceptions);
    assert_eq!(again.unresolved, first.unresolved);
    assert_eq!(again.certificates, first.certificates);
}
