//! Fox free differential calculus on the integral group ring of a free group.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::freegroup::{Generator, Word};
use crate::presentation::Presentation;

/// A finite Z-linear combination of reduced words. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(w, 1)
    }

    pub fn monomial(w: Word, coeff: i64) -> Self {
        let mut x = Self::zero();
        x.add_term(w, coeff);
        x
    }

    pub fn add_term(&mut self, w: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(w.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(u.concat(w), c);
        }
        out
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement { terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect() }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            word: String,
            coeff: i64,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in self.terms() {
            seq.serialize_element(&Term { word: w.to_string(), coeff: c })?;
        }
        seq.end()
    }
}

/// `d w / d g`, accumulated in one left-to-right pass over `w`: a letter `g`
/// after prefix `p` contributes `p`, a letter `g^-1` contributes `-p g^-1`.
pub fn fox_derivative(w: &Word, g: &Generator) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for l in w.letters() {
        let next = prefix.concat(&Word::reduce([l.clone()]));
        if &l.gen == g {
            if l.inverse {
                out.add_term(next.clone(), -1);
            } else {
                out.add_term(prefix.clone(), 1);
            }
        }
        prefix = next;
    }
    out
}

/// Matrix of Fox derivatives; rows are relators, columns generators.
/// Identity padding relators give zero rows.
pub fn fox_jacobian(p: &Presentation) -> Vec<Vec<GroupRingElement>> {
    p.relators().iter().map(|r| p.generators().iter().map(|g| fox_derivative(r, g)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_presentation, parse_word_in};

    fn setup() -> Presentation {
        parse_presentation("< a, b, t | t a t^-1 = b, t b^-1 a b^-1 t^-1 = (b^-1 a)^2 >").unwrap()
    }

    #[test]
    fn base_rules() {
        let p = setup();
        let a = &p.generators()[0];
        let wa = Word::letter(a);
        assert_eq!(fox_derivative(&wa, a), GroupRingElement::one());
        assert_eq!(fox_derivative(&wa.inverse(), a), GroupRingElement::monomial(wa.inverse(), -1));
        assert!(fox_derivative(&wa, &p.generators()[1]).is_zero());
    }

    #[test]
    fn derivative_of_conjugation_relator() {
        let p = setup();
        let r = parse_word_in(&p, "t a t^-1 b^-1").unwrap();
        let b = &p.generators()[1];
        assert_eq!(fox_derivative(&r, b), GroupRingElement::monomial(r.clone(), -1));
        let a = &p.generators()[0];
        let t = &p.generators()[2];
        assert_eq!(fox_derivative(&r, a), GroupRingElement::from_word(Word::letter(t)));
        // d/dt: 1 - t a t^-1
        let tat = parse_word_in(&p, "t a t^-1").unwrap();
        let expected = &GroupRingElement::one() - &GroupRingElement::from_word(tat);
        assert_eq!(fox_derivative(&r, t), expected);
    }

    #[test]
    fn jacobian_shapes() {
        let z = parse_presentation("< a | a >").unwrap();
        assert_eq!(fox_jacobian(&z), vec![vec![GroupRingElement::one()]]);
        let f2 = parse_presentation("< a, b | >").unwrap().pad_relators(1);
        let m = fox_jacobian(&f2);
        assert_eq!(m.len(), 1);
        assert!(m[0].iter().all(GroupRingElement::is_zero));
        assert_eq!(fox_jacobian(&setup()).len(), 2);
    }

    #[test]
    fn serializes_sorted() {
        let p = setup();
        let r = parse_word_in(&p, "t a t^-1 b^-1").unwrap();
        let d = fox_derivative(&r, &p.generators()[2]);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"[{"word":"1","coeff":1},{"word":"t a t^-1","coeff":-1}]"#);
    }
}
