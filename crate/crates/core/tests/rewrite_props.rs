mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinid::rewrite::{
    evaluate, parse, pbw_normalize, reduce_degree, render, render_normal_form, Format,
    NCPolynomial, NormalForm, PolynomialJson, RewriteError, Word,
};
use spinid::scalar::{rational, Radical, Scalar};
use spinid::spinrep::SpinRep;

fn reduce_plain(expr: &str, dim: usize) -> String {
    render_normal_form(
        &reduce_degree(&parse(expr).unwrap(), dim).unwrap(),
        Format::Plain,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_sound_and_normal(seed in any::<u64>(), dim in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_polynomial(&mut rng, 6, dim + 3);
        let nf = reduce_degree(&p, dim).unwrap();
        let rep = SpinRep::new(dim).unwrap();
        prop_assert_eq!(evaluate(&nf.poly, &rep), evaluate(&p, &rep));
        for (w, _) in nf.poly.terms() {
            prop_assert!(NormalForm::is_normal_word(dim, w));
        }
        // Idempotent.
        prop_assert_eq!(reduce_degree(&nf.poly, dim).unwrap(), nf);
    }

    #[test]
    fn pbw_holds_in_every_dimension(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_polynomial(&mut rng, 4, 5);
        let q = pbw_normalize(&p);
        for (w, _) in q.terms() {
            prop_assert!(w.is_ordered());
        }
        for dim in 1..=6 {
            let rep = SpinRep::new(dim).unwrap();
            prop_assert_eq!(evaluate(&q, &rep), evaluate(&p, &rep));
        }
    }

    #[test]
    fn plain_text_round_trip(seed in any::<u64>(), radicand in prop::sample::select(vec![2u128, 3, 6, 10])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = common::random_polynomial(&mut rng, 5, 4);
        let mixed = Scalar::new(Radical::term(rational(1, 3), radicand), Radical::from_rational(rational(-2, 5)));
        p.add_term(Word::new(vec![2, 1]), mixed);
        let text = render(&p, Format::Plain);
        prop_assert_eq!(parse(&text).unwrap(), p, "{}", text);
    }

    #[test]
    fn operator_equal_inputs_share_a_normal_form(seed in any::<u64>(), dim in 2usize..=4) {
        // p and p + (Casimir - s(s+1)) q are equal as operators.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_polynomial(&mut rng, 3, dim + 1);
        let q = common::random_polynomial(&mut rng, 2, 2);
        let s = rational(dim as i64 - 1, 2);
        let cas = &parse("S1 S1 + S2 S2 + S3 S3").unwrap()
            - &NCPolynomial::scalar(Scalar::from_rational(&s * (&s + rational(1, 1))));
        let shifted = &p + &(&cas * &q);
        prop_assert_eq!(reduce_degree(&shifted, dim).unwrap(), reduce_degree(&p, dim).unwrap());
    }
}

#[test]
fn known_normal_forms() {
    assert_eq!(reduce_plain("S3 S3 S3", 3), "S3");
    assert_eq!(reduce_plain("[S1, S2]", 5), "i*S3");
    assert_eq!(reduce_plain("{S1 S2}", 2), "0");
    assert_eq!(reduce_plain("S1 S1", 2), "1/4");
    assert_eq!(reduce_plain("S3 S3", 3), "-S1*S1 - S2*S2 + 2");
}

#[test]
fn normal_form_basis_is_injective() {
    for dim in 2..=4 {
        let rep = SpinRep::new(dim).unwrap();
        let basis = NormalForm::basis(dim);
        assert_eq!(basis.len(), dim * dim);
        let mats: Vec<_> = basis
            .iter()
            .map(|w| evaluate(&NCPolynomial::monomial(w.clone(), Scalar::one()), &rep))
            .collect();
        assert_eq!(common::rational_rank(&mats), dim * dim, "D={dim}");
    }
}

#[test]
fn normal_form_json_carries_dimension() {
    let nf = reduce_degree(&parse("S1 S2").unwrap(), 3).unwrap();
    let j: PolynomialJson = serde_json::from_str(&render_normal_form(&nf, Format::Json)).unwrap();
    assert_eq!(j.dim, Some(3));
    assert_eq!(j.terms.len(), 1);
    assert_eq!(j.terms[0].word, vec![1, 2]);
}

#[test]
fn dimension_one_rejected() {
    assert!(matches!(
        reduce_degree(&parse("S1").unwrap(), 1),
        Err(RewriteError::DimensionTooSmall(1))
    ));
}
