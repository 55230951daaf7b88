use bjorling::polyexp::{parse, PolyExp, Rate, Rational, Term};
use num_complex::Complex64;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64)
        .prop_filter("nonzero", |(re, im)| re.abs() + im.abs() > 1e-3)
        .prop_map(|(re, im)| Complex64::new(re, im))
}

/// Zero, tagged imaginary, or a generic complex rate bounded away from zero.
fn rate() -> impl Strategy<Value = Rate> {
    prop_oneof![
        Just(Rate::ZERO),
        (-6i64..=6, 1i64..=4)
            .prop_filter("nonzero", |(p, _)| *p != 0)
            .prop_map(|(p, q)| Rate::imaginary(Rational::new(p, q))),
        (-2.0..2.0f64, -2.0..2.0f64)
            .prop_filter("away from zero", |(re, im)| re.hypot(*im) > 0.25)
            .prop_map(|(re, im)| Rate::new(Complex64::new(re, im))),
    ]
}

fn raw_terms() -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec((coeff(), 0u32..=4, rate()).prop_map(|(c, n, k)| Term::new(c, n, k)), 1..6)
}

fn polyexp() -> impl Strategy<Value = PolyExp> {
    raw_terms().prop_map(PolyExp::from_terms)
}

fn same_shape(a: &PolyExp, b: &PolyExp) -> bool {
    a.terms().len() == b.terms().len()
        && a.terms().iter().zip(b.terms()).all(|(s, t)| s.power == t.power && s.rate.value() == t.rate.value())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivative_undoes_antiderivative(p in polyexp(), t0 in -2.0..2.0f64) {
        let back = p.antideriv(t0).diff();
        prop_assert!(same_shape(&back, &p), "{back} vs {p}");
        prop_assert!(back.approx_eq(&p, 1e-12), "{back} vs {p}");
    }

    #[test]
    fn antiderivative_vanishes_at_base_point(p in polyexp(), t0 in -2.0..2.0f64) {
        let f = p.antideriv(t0);
        let v = f.eval_real(t0).unwrap();
        let scale = f.eval_magnitude(Complex64::new(t0, 0.0)).unwrap().max(1.0);
        prop_assert!(v.norm() <= 1e-12 * scale, "{v} at scale {scale}");
    }

    #[test]
    fn evaluation_is_multiplicative(a in polyexp(), b in polyexp(), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let z = Complex64::new(re, im);
        let prod = (&a * &b).eval(z).unwrap();
        let want = a.eval(z).unwrap() * b.eval(z).unwrap();
        let scale = a.eval_magnitude(z).unwrap() * b.eval_magnitude(z).unwrap();
        prop_assert!((prod - want).norm() <= 1e-10 * scale, "{prod} vs {want}");
    }

    #[test]
    fn evaluation_is_additive(a in polyexp(), b in polyexp(), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let z = Complex64::new(re, im);
        let sum = (&a + &b).eval(z).unwrap();
        let want = a.eval(z).unwrap() + b.eval(z).unwrap();
        let scale = a.eval_magnitude(z).unwrap() + b.eval_magnitude(z).unwrap();
        prop_assert!((sum - want).norm() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn printed_form_parses_back(p in polyexp()) {
        let text = p.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back, p, "{}", text);
    }

    #[test]
    fn normalization_is_idempotent(p in polyexp()) {
        prop_assert_eq!(PolyExp::from_terms(p.terms().iter().copied()), p);
    }

    #[test]
    fn normalization_ignores_term_order(pair in raw_terms().prop_flat_map(|t| (Just(t.clone()), Just(t).prop_shuffle()))) {
        let (ordered, shuffled) = pair;
        let a = PolyExp::from_terms(ordered);
        let b = PolyExp::from_terms(shuffled);
        prop_assert!(same_shape(&a, &b), "{a} vs {b}");
        prop_assert!(a.approx_eq(&b, 1e-15));
    }

    #[test]
    fn shuffled_duplicates_merge_the_same(terms in raw_terms().prop_flat_map(|t| {
        let doubled: Vec<Term> = t.iter().chain(t.iter()).copied().collect();
        (Just(doubled.clone()), Just(doubled).prop_shuffle())
    })) {
        let (ordered, shuffled) = terms;
        let a = PolyExp::from_terms(ordered);
        let b = PolyExp::from_terms(shuffled);
        prop_assert!(same_shape(&a, &b), "{a} vs {b}");
        prop_assert!(a.approx_eq(&b, 1e-15));
    }
}
