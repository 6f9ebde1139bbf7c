mod common;

use common::{gens, word_strategy};
use proptest::prelude::*;
use wadakit::dsl::{parse_presentation, serialize_presentation};
use wadakit::Presentation;

fn presentation_strategy() -> impl Strategy<Value = Presentation> {
    let alphabet = gens(&["a", "b@0", "b@-1", "t"]);
    (1usize..=4, prop::collection::vec(word_strategy(alphabet.clone(), 10), 0..4), 0usize..2).prop_map(
        move |(k, words, pad)| {
            let g = alphabet[..k].to_vec();
            let rels = words
                .into_iter()
                .map(|w| w.map_generators(|x| g[alphabet.iter().position(|y| y == x).unwrap() % k].clone()))
                .filter(|w| !w.is_identity())
                .collect::<Vec<_>>();
            let p = Presentation::new(g, rels).unwrap();
            let n = p.relators().len() + pad;
            p.pad_relators(n)
        },
    )
}

proptest! {
    #[test]
    fn parse_inverts_serialize(p in presentation_strategy()) {
        let text = serialize_presentation(&p);
        prop_assert_eq!(parse_presentation(&text).unwrap(), p);
    }
}
