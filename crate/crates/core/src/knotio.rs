//! PD codes, Wirtinger presentations and a table of built-in examples.
//!
//! A crossing `X[a,b,c,d]` lists its four edges counterclockwise, starting
//! with the incoming under-edge `a`; `c` is the outgoing under-edge and
//! `b`, `d` lie on the over-strand. Edges are numbered `1..=2n` along the
//! orientation. The crossing sign is `+1` when the over-strand runs from
//! `d` to `b` (so `b = d + 1` modulo `2n`) and `-1` otherwise, unless given
//! explicitly. The Wirtinger relation at a crossing with over-arc `o` is
//! `x_c = x_o^s x_a x_o^-s`.

use std::fmt;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::dsl::{parse_presentation, parse_words, serialize_presentation};
use crate::field::Field;
use crate::freegroup::{Generator, Word};
use crate::hnn::SplittingData;
use crate::laurent::LaurentPoly;
use crate::presentation::{Epimorphism, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("malformed PD code: {0}")]
    Malformed(String),
    #[error("edge {label} occurs {count} times; every edge must occur exactly twice")]
    EdgeCount { label: usize, count: usize },
    #[error("edge label {label} outside 1..={max}")]
    EdgeRange { label: usize, max: usize },
    #[error("crossing sign must be 1 or -1, got {0}")]
    BadSign(i64),
    #[error("{signs} signs for {crossings} crossings")]
    SignCount { signs: usize, crossings: usize },
    #[error("unknown fixture `{0}`; known: {1}")]
    UnknownFixture(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDCode {
    crossings: Vec<[usize; 4]>,
    signs: Option<Vec<i64>>,
}

impl PDCode {
    pub fn new(crossings: Vec<[usize; 4]>, signs: Option<Vec<i64>>) -> Result<Self, KnotError> {
        let max = 2 * crossings.len();
        let mut counts = vec![0usize; max + 1];
        for &label in crossings.iter().flatten() {
            if label == 0 || label > max {
                return Err(KnotError::EdgeRange { label, max });
            }
            counts[label] += 1;
        }
        if let Some((label, &count)) = counts.iter().enumerate().skip(1).find(|(_, &c)| c != 2) {
            return Err(KnotError::EdgeCount { label, count });
        }
        if let Some(s) = &signs {
            if s.len() != crossings.len() {
                return Err(KnotError::SignCount { signs: s.len(), crossings: crossings.len() });
            }
            if let Some(&bad) = s.iter().find(|&&x| x != 1 && x != -1) {
                return Err(KnotError::BadSign(bad));
            }
        }
        Ok(PDCode { crossings, signs })
    }

    /// Parses `X[1,4,2,5] X[3,6,4,1] ...`; an optional `PD[...]` wrapper and
    /// separating commas are accepted. An empty string is the unknot.
    pub fn parse_text(s: &str) -> Result<Self, KnotError> {
        let mut body = s.trim();
        if let Some(inner) = body.strip_prefix("PD[").and_then(|b| b.strip_suffix(']')) {
            body = inner;
        }
        let mut crossings = Vec::new();
        let mut rest = body.trim_start_matches([' ', ',', '\n', '\t']);
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('X')
                .and_then(|r| r.trim_start().strip_prefix('['))
                .ok_or_else(|| KnotError::Malformed(format!("expected `X[` at `{}`", truncate(rest))))?;
            let close = open.find(']').ok_or_else(|| KnotError::Malformed("unclosed `X[`".into()))?;
            let labels: Vec<usize> = open[..close]
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| KnotError::Malformed(format!("bad edge label `{}`", x.trim()))))
                .collect::<Result<_, _>>()?;
            let quad: [usize; 4] = labels
                .try_into()
                .map_err(|_| KnotError::Malformed("every crossing needs four edge labels".into()))?;
            crossings.push(quad);
            rest = open[close + 1..].trim_start_matches([' ', ',', '\n', '\t']);
        }
        PDCode::new(crossings, None)
    }

    /// Parses `[[1,4,2,5], ...]` or `{"crossings": [...], "signs": [...]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, KnotError> {
        let (crossings, signs) = match v {
            serde_json::Value::Array(_) => (v, None),
            serde_json::Value::Object(o) => (
                o.get("crossings").ok_or_else(|| KnotError::Malformed("missing `crossings`".into()))?,
                o.get("signs"),
            ),
            _ => return Err(KnotError::Malformed("expected an array or object".into())),
        };
        let crossings: Vec<[usize; 4]> =
            serde_json::from_value(crossings.clone()).map_err(|e| KnotError::Malformed(e.to_string()))?;
        let signs: Option<Vec<i64>> = match signs {
            Some(s) => Some(serde_json::from_value(s.clone()).map_err(|e| KnotError::Malformed(e.to_string()))?),
            None => None,
        };
        PDCode::new(crossings, signs)
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn sign(&self, i: usize) -> i64 {
        if let Some(s) = &self.signs {
            return s[i];
        }
        let n = 2 * self.crossings.len();
        let [_, b, _, d] = self.crossings[i];
        if b == d % n + 1 {
            1
        } else {
            -1
        }
    }
}

fn truncate(s: &str) -> &str {
    &s[..s.char_indices().nth(12).map_or(s.len(), |(i, _)| i)]
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.crossings.iter().map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]")).collect();
        f.write_str(&parts.join(" "))
    }
}

fn arc_name(i: usize) -> Generator {
    let name = if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") };
    Generator::new(&name).unwrap()
}

/// One generator per arc, one relator per crossing with the last dropped,
/// and `eps = 1` on every generator.
pub fn wirtinger_from_pd(pd: &PDCode) -> Result<(Presentation, Epimorphism), KnotError> {
    let n = pd.crossings.len();
    if n == 0 {
        let p = parse_presentation("< a | >").unwrap();
        let eps = Epimorphism::new(&p, vec![1]).unwrap();
        return Ok((p, eps));
    }
    // edges on the same over-strand belong to one arc
    let mut parent: Vec<usize> = (0..=2 * n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &[_, b, _, d] in &pd.crossings {
        let (rb, rd) = (find(&mut parent, b), find(&mut parent, d));
        parent[rb.max(rd)] = rb.min(rd);
    }
    let mut roots: Vec<usize> = (1..=2 * n).map(|e| find(&mut parent, e)).collect();
    roots.sort_unstable();
    roots.dedup();
    let gen_of = |parent: &mut [usize], e: usize| arc_name(roots.binary_search(&find(parent, e)).unwrap());
    let generators: Vec<Generator> = (0..roots.len()).map(arc_name).collect();
    let mut relators = Vec::new();
    for (i, &[a, b, c, _]) in pd.crossings.iter().enumerate() {
        let s = pd.sign(i);
        let xa = Word::letter(&gen_of(&mut parent, a));
        let xc = Word::letter(&gen_of(&mut parent, c));
        let xo = Word::letter(&gen_of(&mut parent, b)).pow(s);
        relators.push(xc.inverse().concat(&xo).concat(&xa).concat(&xo.inverse()));
    }
    relators.pop();
    relators.retain(|r| !r.is_identity());
    let p = Presentation::new(generators, relators).map_err(|e| KnotError::Malformed(e.to_string()))?;
    let eps = Epimorphism::new(&p, vec![1; p.generators().len()]).map_err(|e| KnotError::Malformed(e.to_string()))?;
    Ok((p, eps))
}

/// A named example group with its epimorphism onto Z and known data.
#[derive(Debug, Clone)]
pub struct KnotFixture {
    pub name: &'static str,
    pub presentation: Presentation,
    pub epsilon: Epimorphism,
    pub known_genus: Option<u32>,
    /// Integer coefficients `(exponent, coefficient)` of the Alexander
    /// polynomial.
    pub known_alexander: Option<Vec<(i64, i64)>>,
    pub splitting: Option<SplittingData>,
    pub pd: Option<&'static str>,
}

impl KnotFixture {
    pub fn alexander<F: Field>(&self, field: F) -> Option<LaurentPoly<F>> {
        self.known_alexander.as_ref().map(|t| LaurentPoly::from_terms(field, t))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "presentation": serialize_presentation(&self.presentation),
            "epsilon": self.epsilon.values().iter().map(|(g, v)| (g.name().to_string(), serde_json::Value::from(*v))).collect::<serde_json::Map<_, _>>(),
            "known_genus": self.known_genus,
            "known_alexander": self.known_alexander.as_ref().map(|t| LaurentPoly::from_terms(crate::field::Rationals, t).to_string()),
            "splitting": self.splitting.as_ref().map(SplittingData::to_json),
            "pd": self.pd,
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
struct FixtureRow {
    name: &'static str,
    presentation: &'static str,
    genus: Option<u32>,
    alexander: Option<&'static [(i64, i64)]>,
    splitting: Option<(&'static str, &'static str, &'static str)>,
    pd: Option<&'static str>,
}

const FIXTURES: &[FixtureRow] = &[
    FixtureRow {
        name: "unknot",
        presentation: "< a | >",
        genus: Some(0),
        alexander: Some(&[(0, 1)]),
        splitting: None,
        pd: Some(""),
    },
    FixtureRow {
        name: "trefoil",
        presentation: "< a, b | a b a b^-1 a^-1 b^-1 >",
        genus: Some(1),
        alexander: Some(&[(2, 1), (1, -1), (0, 1)]),
        splitting: Some(("< x, y | >", "x, y", "y, x^-1 y")),
        pd: Some("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"),
    },
    FixtureRow {
        name: "figure8",
        presentation: "< a, b | b a b^-1 a b = a b a^-1 b a >",
        genus: Some(1),
        alexander: Some(&[(2, 1), (1, -3), (0, 1)]),
        splitting: Some(("< x, y | >", "x, y", "x y x, y x")),
        pd: Some("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"),
    },
    FixtureRow {
        name: "5_2",
        presentation: "< a, b, t | t a t^-1 = b, t b^-1 a b^-1 t^-1 = (b^-1 a)^2 >",
        genus: Some(1),
        alexander: Some(&[(2, 2), (1, -3), (0, 2)]),
        splitting: Some(("< a, b | >", "a, b^-1 a b^-1", "b, (b^-1 a)^2")),
        pd: Some("X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]"),
    },
    FixtureRow {
        name: "5_2_rank3",
        presentation:
            "< a, b, c, t | t a t^-1 = b, t b^-1 a b^-1 t^-1 = (b^-1 a)^2, t b^-2 a b^-2 t^-1 = c >",
        genus: Some(1),
        alexander: Some(&[(2, 2), (1, -3), (0, 2)]),
        splitting: Some(("< a, b, c | >", "a, b^-1 a b^-1, b^-2 a b^-2", "b, b^-1 a b^-1 a, c")),
        pd: None,
    },
    FixtureRow {
        name: "bs_1_2",
        presentation: "< a, t | t a t^-1 a^-2 >",
        genus: None,
        alexander: None,
        splitting: Some(("< a | >", "a", "a^2")),
        pd: None,
    },
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|s| s.name).collect()
}

pub fn builtin(name: &str) -> Result<KnotFixture, KnotError> {
    let row = FIXTURES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| KnotError::UnknownFixture(name.to_string(), fixture_names().join(", ")))?;
    let presentation = parse_presentation(row.presentation).expect("fixture presentation parses");
    let epsilon = presentation.epimorphism_to_z().expect("fixture has free abelian rank one");
    let splitting = row.splitting.map(|(base, b, phi)| {
        let base = parse_presentation(base).unwrap();
        SplittingData::new(base, parse_words(b).unwrap(), parse_words(phi).unwrap(), Generator::new("t").unwrap())
            .expect("fixture splitting is valid")
    });
    Ok(KnotFixture {
        name: row.name,
        presentation,
        epsilon,
        known_genus: row.genus,
        known_alexander: row.alexander.map(<[_]>::to_vec),
        splitting,
        pd: row.pd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::reps::trivial_rep;
    use crate::wada::wada_invariant;

    fn alexander(p: &Presentation, eps: &Epimorphism) -> LaurentPoly<Rationals> {
        wada_invariant(&p.padded_for_minors(), eps, &trivial_rep(p, Rationals), None).unwrap().q
    }

    #[test]
    fn pd_codes_match_fixture_polynomials() {
        for name in ["trefoil", "figure8", "5_2"] {
            let f = builtin(name).unwrap();
            let pd = PDCode::parse_text(f.pd.unwrap()).unwrap();
            let (p, eps) = wirtinger_from_pd(&pd).unwrap();
            assert_eq!(p.generators().len(), pd.crossings().len());
            assert_eq!(p.relators().len(), pd.crossings().len() - 1);
            assert!(eps.in_order(&p).iter().all(|&v| v == 1));
            let expected = f.alexander(Rationals).unwrap().unit_normalized();
            assert_eq!(alexander(&p, &eps), expected, "{name}");
            assert_eq!(alexander(&f.presentation, &f.epsilon), expected, "{name} fixture");
        }
    }

    #[test]
    fn unknot_pd() {
        let (p, eps) = wirtinger_from_pd(&PDCode::parse_text("").unwrap()).unwrap();
        assert_eq!(serialize_presentation(&p), "< a | >");
        assert_eq!(eps.in_order(&p), vec![1]);
    }

    #[test]
    fn malformed_codes() {
        assert!(matches!(PDCode::parse_text("X[1,2,3]"), Err(KnotError::Malformed(_))));
        assert!(matches!(PDCode::parse_text("X[1,1,1,2]"), Err(KnotError::EdgeCount { label: 1, count: 3 })));
        assert!(matches!(PDCode::parse_text("X[1,4,2,5]"), Err(KnotError::EdgeRange { label: 4, max: 2 })));
        assert!(matches!(PDCode::parse_text("Y[1,2,2,1]"), Err(KnotError::Malformed(_))));
    }

    #[test]
    fn json_input() {
        let v: serde_json::Value = serde_json::from_str("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        let pd = PDCode::from_json(&v).unwrap();
        assert_eq!(pd.to_string(), "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
        let signed = json!({"crossings": [[1,4,2,5],[3,6,4,1],[5,2,6,3]], "signs": [-1, -1, -1]});
        let pd2 = PDCode::from_json(&signed).unwrap();
        assert_eq!((0..3).map(|i| pd2.sign(i)).collect::<Vec<_>>(), vec![-1, -1, -1]);
        let bad = json!({"crossings": [[1,4,2,5],[3,6,4,1],[5,2,6,3]], "signs": [1]});
        assert_eq!(PDCode::from_json(&bad), Err(KnotError::SignCount { signs: 1, crossings: 3 }));
    }

    #[test]
    fn fixtures_have_infinite_cyclic_homology() {
        for name in fixture_names() {
            let f = builtin(name).unwrap();
            let ab = f.presentation.abelianize();
            assert_eq!(ab.free_rank, 1, "{name}");
            assert!(ab.torsion.is_empty(), "{name}");
        }
        assert!(matches!(builtin("6_1"), Err(KnotError::UnknownFixture(..))));
    }

    #[test]
    fn fixture_splittings_present_the_fixture_group() {
        use crate::hnn::hnn_presentation;
        for name in ["5_2", "5_2_rank3", "bs_1_2"] {
            let f = builtin(name).unwrap();
            let (p, _) = hnn_presentation(f.splitting.as_ref().unwrap()).unwrap();
            for (r, q) in p.relators().iter().zip(f.presentation.relators()) {
                assert!(r.same_relator(q), "{name}: {r} vs {q}");
            }
        }
    }
}
