mod common;

use common::{alexander_numerator, word_strategy};
use proptest::prelude::*;
use wadakit::dsl::parse_presentation;
use wadakit::knotio::{builtin, wirtinger_from_pd, PDCode};
use wadakit::reps::{search_homs, trivial_rep, SearchOptions};
use wadakit::wada::{admissible_columns, verify_column_independence, wada_invariant, Variant};
use wadakit::{Generator, PrimeField, Rationals};

#[test]
fn trivial_rep_numerator_matches_oracle() {
    for name in ["unknot", "trefoil", "figure8", "5_2", "5_2_rank3", "bs_1_2"] {
        let f = builtin(name).unwrap();
        let p = f.presentation.padded_for_minors();
        let alpha = trivial_rep(&p, Rationals);
        for g in admissible_columns(&p, &f.epsilon) {
            let r = wada_invariant(&p, &f.epsilon, &alpha, Some(&g)).unwrap();
            let col = p.generator_index(&g).unwrap();
            assert_eq!(r.q, alexander_numerator(&p, &f.epsilon, col).to_laurent(), "{name} column {g}");
            assert_eq!(r.degree, Some(r.q.degree().unwrap() - r.denom.degree().unwrap()));
        }
        if let Some(known) = f.alexander(Rationals) {
            let r = wada_invariant(&p, &f.epsilon, &alpha, None).unwrap();
            assert_eq!(r.q, known.unit_normalized(), "{name}");
        }
    }
}

#[test]
fn pd_presentations_match_oracle() {
    for name in ["trefoil", "figure8", "5_2"] {
        let f = builtin(name).unwrap();
        let (p, eps) = wirtinger_from_pd(&PDCode::parse_text(f.pd.unwrap()).unwrap()).unwrap();
        let oracle = alexander_numerator(&p, &eps, 0).to_laurent();
        assert_eq!(oracle, f.alexander(Rationals).unwrap().unit_normalized(), "{name}");
    }
}

#[test]
fn five_two_rank_three_variant_agrees() {
    let f = builtin("5_2").unwrap();
    let g = builtin("5_2_rank3").unwrap();
    let (fa, ga) = (trivial_rep(&f.presentation, Rationals), trivial_rep(&g.presentation, Rationals));
    let variant = Variant { presentation: &g.presentation, epsilon: &g.epsilon, alpha: &ga };
    let report = verify_column_independence(&f.presentation, &f.epsilon, &fa, &[variant]).unwrap();
    assert!(report.consistent);
    assert_eq!(report.results.len(), 2);
}

#[test]
fn nonabelian_reps_are_column_independent() {
    for name in ["trefoil", "figure8"] {
        let f = builtin(name).unwrap();
        let found = search_homs(&f.presentation, 2, 3, SearchOptions::default()).unwrap();
        assert!(found.representations.len() > 1);
        for alpha in &found.representations {
            let report = verify_column_independence(&f.presentation, &f.epsilon, alpha, &[]).unwrap();
            assert!(report.consistent, "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Adding a generator `s = w` changes the invariant only by a unit, for
    /// every representation into GL(2, F_3).
    #[test]
    fn tietze_moves_preserve_the_invariant(
        w in word_strategy(vec![Generator::new("a").unwrap(), Generator::new("b").unwrap()], 6),
        pick in 0usize..1000,
    ) {
        let f = builtin("trefoil").unwrap();
        let s = Generator::new("s").unwrap();
        let moved = f.presentation.introduce_generator(s.clone(), &w).unwrap();
        let eps = f.epsilon.extend(&s, &w);
        let reps = search_homs(&f.presentation, 2, 3, SearchOptions::default()).unwrap().representations;
        let alpha = &reps[pick % reps.len()];
        let beta = alpha.extend(&s, &w).unwrap();
        let before = wada_invariant(&f.presentation, &f.epsilon, alpha, None).unwrap();
        let after = wada_invariant(&moved, &eps, &beta, None).unwrap();
        prop_assert!(before.delta.equal_up_to_unit(&after.delta), "{} vs {}", before.delta, after.delta);
    }
}

#[test]
fn prime_field_results_report_their_field() {
    let p = parse_presentation("< a, b | a b a b^-1 a^-1 b^-1 >").unwrap();
    let eps = p.epimorphism_to_z().unwrap();
    let f = PrimeField::new(3).unwrap();
    let r = wada_invariant(&p, &eps, &trivial_rep(&p, f), None).unwrap();
    assert_eq!(r.field.to_string(), "fp:3");
    // t^2 - t + 1 = (t + 1)^2 over F_3
    assert_eq!(r.q.to_string(), "t^2 + 2*t + 1");
}
