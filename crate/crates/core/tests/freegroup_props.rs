mod common;

use common::{gens, word_strategy};
use proptest::prelude::*;
use wadakit::freegroup::{is_basis, rank, stallings_fold, Letter, Word};

fn abc() -> Vec<wadakit::Generator> {
    gens(&["a", "b", "c"])
}

/// Evaluates a basis expression back to a word.
fn from_basis(basis: &[Word], letters: &[wadakit::freegroup::BasisLetter]) -> Word {
    letters.iter().fold(Word::identity(), |acc, l| {
        let b = &basis[l.index];
        acc.concat(&if l.inverse { b.inverse() } else { b.clone() })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_idempotent(w in word_strategy(abc(), 30)) {
        prop_assert_eq!(Word::reduce(w.letters().iter().cloned()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inv()));
    }

    #[test]
    fn inverse_cancels(w in word_strategy(abc(), 30)) {
        prop_assert!(w.concat(&w.inverse()).is_identity());
        prop_assert!(w.inverse().concat(&w).is_identity());
    }

    #[test]
    fn folding_ignores_generator_order(ws in prop::collection::vec(word_strategy(abc(), 8), 1..5)) {
        let mut rev = ws.clone();
        rev.reverse();
        let inverted: Vec<Word> = ws.iter().map(Word::inverse).collect();
        let g = stallings_fold(&ws);
        prop_assert_eq!(&g, &stallings_fold(&rev));
        prop_assert_eq!(&g, &stallings_fold(&inverted));
    }

    #[test]
    fn products_are_members(
        ws in prop::collection::vec(word_strategy(abc(), 6), 1..4),
        picks in prop::collection::vec((0usize..4, any::<bool>()), 0..8),
    ) {
        let g = stallings_fold(&ws);
        let product = picks.iter().fold(Word::identity(), |acc, &(i, inv)| {
            let w = &ws[i % ws.len()];
            acc.concat(&if inv { w.inverse() } else { w.clone() })
        });
        let m = g.contains(&product);
        prop_assert!(m.contained);
        let basis = g.basis();
        prop_assert_eq!(from_basis(&basis, &m.in_basis.unwrap()), product);
    }

    #[test]
    fn basis_spans_same_subgroup(ws in prop::collection::vec(word_strategy(abc(), 6), 1..4)) {
        let g = stallings_fold(&ws);
        let basis = g.basis();
        prop_assert_eq!(basis.len(), g.rank());
        prop_assert_eq!(stallings_fold(&basis), g.clone());
        if !basis.is_empty() {
            prop_assert!(is_basis(&basis));
        }
        prop_assert!(rank(&ws) <= ws.len());
    }

    #[test]
    fn nielsen_moves_preserve_the_graph(
        ws in prop::collection::vec(word_strategy(abc(), 6), 2..4),
        i in 0usize..4, j in 0usize..4,
    ) {
        let (i, j) = (i % ws.len(), j % ws.len());
        prop_assume!(i != j);
        let mut moved = ws.clone();
        moved[i] = ws[i].concat(&ws[j]);
        prop_assert_eq!(stallings_fold(&ws), stallings_fold(&moved));
    }
}

#[test]
fn letters_pair_with_inverses() {
    let a = gens(&["a"]).remove(0);
    let l = Letter::new(a, false);
    assert_eq!(l.inv().inv(), l);
    assert_eq!(l.sign() + l.inv().sign(), 0);
}
