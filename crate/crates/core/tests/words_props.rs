use proptest::prelude::*;
use univoque::words::{EPSequence, Finiteness, Word};

fn digits(m: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=m, 0..=max_len)
}

fn seq() -> impl Strategy<Value = EPSequence> {
    (1u32..=3).prop_flat_map(|m| {
        (digits(m, 6), prop::collection::vec(0..=m, 1..=5)).prop_map(move |(pre, per)| {
            EPSequence::new(&Word::new(pre, m).unwrap(), &Word::new(per, m).unwrap()).unwrap()
        })
    })
}

fn seq_triple() -> impl Strategy<Value = (EPSequence, EPSequence, EPSequence)> {
    (1u32..=2).prop_flat_map(|m| {
        let one = move || {
            (digits(m, 4), prop::collection::vec(0..=m, 1..=3)).prop_map(move |(pre, per)| {
                EPSequence::new(&Word::new(pre, m).unwrap(), &Word::new(per, m).unwrap()).unwrap()
            })
        };
        (one(), one(), one())
    })
}

/// Lexicographic order of two sequences read digit by digit far enough to
/// cover both windows.
fn naive_cmp(a: &EPSequence, b: &EPSequence) -> std::cmp::Ordering {
    let n = 2 * (a.window() + b.window()) + a.period().len() * b.period().len() + 4;
    (0..n).map(|i| a.digit(i).cmp(&b.digit(i))).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

proptest! {
    #[test]
    fn word_reflection_is_an_involution(w in (1u32..=4).prop_flat_map(|m| digits(m, 12).prop_map(move |d| Word::new(d, m).unwrap()))) {
        prop_assert_eq!(w.reflect().reflect(), w);
    }

    #[test]
    fn minus_undoes_plus(w in (1u32..=4).prop_flat_map(|m| digits(m, 10).prop_map(move |d| Word::new(d, m).unwrap()))) {
        if let Ok(p) = w.plus() {
            prop_assert_eq!(p.minus().unwrap(), w.clone());
        }
        if let Ok(p) = w.minus() {
            prop_assert_eq!(p.plus().unwrap(), w);
        }
    }

    #[test]
    fn sequence_reflection_is_an_involution(s in seq()) {
        prop_assert_eq!(s.reflect().reflect(), s);
    }

    #[test]
    fn order_matches_digitwise_comparison((a, b, _c) in seq_triple()) {
        prop_assert_eq!(a.lex_compare(&b), naive_cmp(&a, &b));
        prop_assert_eq!(a.lex_compare(&b), b.lex_compare(&a).reverse());
    }

    #[test]
    fn order_is_transitive((a, b, c) in seq_triple()) {
        let mut v = [a, b, c];
        v.sort();
        prop_assert!(v[0] <= v[1] && v[1] <= v[2] && v[0] <= v[2]);
    }

    #[test]
    fn equal_streams_have_equal_normal_forms(s in seq(), extra in 0usize..3, reps in 1usize..4) {
        // unroll the period into the preperiod and repeat it: same stream
        let mut pre = s.pre_digits().to_vec();
        for _ in 0..extra {
            pre.extend_from_slice(s.per_digits());
        }
        let per = s.period().repeat(reps);
        let t = EPSequence::new(&Word::new(pre, s.m()).unwrap(), &per).unwrap();
        prop_assert_eq!(&t, &s);
        prop_assert_eq!(t.to_string(), s.to_string());
        prop_assert_eq!(t.lex_compare(&s), std::cmp::Ordering::Equal);
    }

    #[test]
    fn normal_form_round_trips_through_text(s in seq()) {
        let again = EPSequence::parse(&s.to_string(), s.m()).unwrap();
        prop_assert_eq!(again.pre_digits(), s.pre_digits());
        prop_assert_eq!(again.per_digits(), s.per_digits());
    }

    #[test]
    fn shift_drops_leading_digits(s in seq(), n in 0usize..10) {
        let t = s.shift(n);
        for i in 0..20 {
            prop_assert_eq!(t.digit(i), s.digit(i + n));
        }
    }

    #[test]
    fn finiteness_classes_are_consistent(s in seq()) {
        // finite: a last nonzero digit exists; co-finite: a last digit below M exists
        let head: Vec<u32> = (0..s.window()).map(|i| s.digit(i)).collect();
        let tail: Vec<u32> = (0..s.window() + 8).map(|i| s.digit(s.window() + i)).collect();
        let m = s.m();
        let finite = tail.iter().all(|&d| d == 0) && head.iter().any(|&d| d != 0);
        let cofinite = tail.iter().all(|&d| d == m) && head.iter().any(|&d| d != m);
        let expected = match (finite, cofinite) {
            (true, _) => Finiteness::Finite,
            (_, true) => Finiteness::CoFinite,
            _ => Finiteness::DoublyInfinite,
        };
        prop_assert_eq!(s.finiteness(), expected);
    }
}

#[test]
fn spelled_out_examples() {
    let s = EPSequence::parse("1(00)", 1).unwrap();
    assert_eq!(s, EPSequence::parse("1(0)", 1).unwrap());
    assert_eq!(s.to_string(), "1(0)");
    let big = EPSequence::parse("10,3(11)", 11).unwrap();
    assert_eq!(big.digit(0), 10);
    assert_eq!(Word::parse("1101", 1).unwrap().minus().unwrap().to_string(), "1100");
    assert_eq!(Word::parse("0010", 1).unwrap().plus().unwrap().to_string(), "0011");
    assert!(Word::parse("0011", 1).unwrap().plus().is_err());
}
