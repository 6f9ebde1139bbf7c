mod common;

use common::{gens, word_strategy};
use proptest::prelude::*;
use wadakit::foxcalc::{fox_derivative, GroupRingElement};
use wadakit::freegroup::Word;

fn alphabet() -> Vec<wadakit::Generator> {
    gens(&["a", "b", "c"])
}

/// `sum_j (dw/dg_j)(g_j - 1)`.
fn fundamental_sum(w: &Word) -> GroupRingElement {
    alphabet().iter().fold(GroupRingElement::zero(), |acc, g| {
        let g_minus_one = &GroupRingElement::from_word(Word::letter(g)) - &GroupRingElement::one();
        &acc + &(&fox_derivative(w, g) * &g_minus_one)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fundamental_identity(w in word_strategy(alphabet(), 40)) {
        let expected = &GroupRingElement::from_word(w.clone()) - &GroupRingElement::one();
        prop_assert_eq!(fundamental_sum(&w), expected);
    }

    #[test]
    fn product_rule(u in word_strategy(alphabet(), 15), v in word_strategy(alphabet(), 15)) {
        for g in alphabet() {
            let lhs = fox_derivative(&u.concat(&v), &g);
            let rhs = &fox_derivative(&u, &g) + &fox_derivative(&v, &g).left_mul_word(&u);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_rule(w in word_strategy(alphabet(), 20)) {
        for g in alphabet() {
            let lhs = fox_derivative(&w.inverse(), &g);
            let rhs = -&fox_derivative(&w, &g).left_mul_word(&w.inverse());
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn derivative_of_generators() {
    let [a, b]: [wadakit::Generator; 2] = gens(&["a", "b"]).try_into().unwrap();
    assert_eq!(fox_derivative(&Word::letter(&a), &a), GroupRingElement::one());
    assert!(fox_derivative(&Word::letter(&a), &b).is_zero());
    assert!(fox_derivative(&Word::identity(), &a).is_zero());
}
