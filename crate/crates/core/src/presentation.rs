//! Finitely presented groups: construction, Tietze moves, abelianization and
//! epimorphisms onto the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::freegroup::{Generator, Letter, Word};
use crate::snf::smith_normal_form;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(Generator),
    #[error("relator {index} uses unknown generator `{gen}`")]
    UnknownGenerator { index: usize, gen: Generator },
    #[error("relator {0} is the identity")]
    EmptyRelator(usize),
    #[error("word uses unknown generator `{0}`")]
    WordOutsideAlphabet(Generator),
    #[error("relator index {0} out of range")]
    RelatorOutOfRange(usize),
    #[error("generator `{gen}` occurs {count} times in relator {index}; exactly one occurrence is required")]
    NotEliminable { gen: Generator, index: usize, count: usize },
    #[error("abelianization has free rank {0}; an epimorphism onto Z is determined only for free rank 1")]
    FreeRankNotOne(usize),
    #[error("epimorphism has {got} values for {expected} generators")]
    EpimorphismArity { expected: usize, got: usize },
    #[error("relator {0} has nonzero total epimorphism value")]
    EpimorphismNotWellDefined(usize),
    #[error("epimorphism values have gcd {0}, not 1")]
    EpimorphismNotSurjective(i64),
}

/// A presentation `<g_1, ..., g_k | r_1, ..., r_l>`.
///
/// The last `padding` relators are identity words added by
/// [`Presentation::pad_relators`]; all other relators are nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
    padding: usize,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (index, r) in relators.iter().enumerate() {
            if r.is_identity() {
                return Err(PresentationError::EmptyRelator(index));
            }
            if let Some(l) = r.letters().iter().find(|l| !generators.contains(&l.gen)) {
                return Err(PresentationError::UnknownGenerator { index, gen: l.gen.clone() });
            }
        }
        Ok(Presentation { generators, relators, padding: 0 })
    }

    /// The free group on `generators`.
    pub fn free(generators: Vec<Generator>) -> Result<Self, PresentationError> {
        Presentation::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Relators excluding identity padding.
    pub fn proper_relators(&self) -> &[Word] {
        &self.relators[..self.relators.len() - self.padding]
    }

    pub fn padding(&self) -> usize {
        self.padding
    }

    pub fn is_free(&self) -> bool {
        self.proper_relators().is_empty()
    }

    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    pub fn generator_named(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name() == name)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        match w.letters().iter().find(|l| !self.generators.contains(&l.gen)) {
            Some(l) => Err(PresentationError::WordOutsideAlphabet(l.gen.clone())),
            None => Ok(()),
        }
    }

    /// Appends identity relators until there are at least `target`.
    pub fn pad_relators(&self, target: usize) -> Presentation {
        let mut p = self.clone();
        while p.relators.len() < target {
            p.relators.push(Word::identity());
            p.padding += 1;
        }
        p
    }

    /// Pads to the `l >= k - 1` relators needed by the Wada minors.
    pub fn padded_for_minors(&self) -> Presentation {
        self.pad_relators(self.generators.len().saturating_sub(1))
    }

    /// Exponent-sum vector of `w`, one entry per generator.
    pub fn abelianized_image(&self, w: &Word) -> Result<Vec<i64>, PresentationError> {
        self.check_word(w)?;
        Ok(self.generators.iter().map(|g| w.exponent_sum(g)).collect())
    }

    fn relation_matrix(&self) -> Vec<Vec<BigInt>> {
        self.proper_relators()
            .iter()
            .map(|r| self.generators.iter().map(|g| BigInt::from(r.exponent_sum(g))).collect())
            .collect()
    }

    pub fn abelianize(&self) -> AbelianizationResult {
        let k = self.generators.len();
        let m = self.relation_matrix();
        let snf = smith_normal_form(&m, k);
        let nonzero: Vec<&BigInt> = snf.diagonal.iter().filter(|d| !d.is_zero()).collect();
        AbelianizationResult {
            free_rank: k - nonzero.len(),
            torsion: nonzero.into_iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    /// The epimorphism onto Z, when the abelianization has free rank one.
    /// Its sign makes the first generator with nonzero value positive.
    pub fn epimorphism_to_z(&self) -> Result<Epimorphism, PresentationError> {
        let k = self.generators.len();
        let m = self.relation_matrix();
        let snf = smith_normal_form(&m, k);
        let rank = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
        if k - rank != 1 {
            return Err(PresentationError::FreeRankNotOne(k - rank));
        }
        // Kernel of the relation matrix is spanned by the last column of the
        // column transform.
        let mut v: Vec<BigInt> = snf.column_transform.iter().map(|row| row[k - 1].clone()).collect();
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for x in &mut v {
            *x = &*x / &g;
        }
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in &mut v {
                *x = -&*x;
            }
        }
        let values = v.iter().map(|x| x.to_i64().expect("epimorphism value overflows i64")).collect();
        Epimorphism::new(self, values)
    }

    /// Adds generator `name` with relator `name^-1 w`.
    pub fn introduce_generator(&self, name: Generator, w: &Word) -> Result<Presentation, PresentationError> {
        if self.generators.contains(&name) {
            return Err(PresentationError::DuplicateGenerator(name));
        }
        self.check_word(w)?;
        let mut generators = self.generators.clone();
        generators.push(name.clone());
        let mut relators = self.proper_relators().to_vec();
        relators.push(Word::letter(&name).inverse().concat(w));
        let mut p = Presentation::new(generators, relators)?;
        p = p.pad_relators(p.relators.len() + self.padding);
        Ok(p)
    }

    /// Removes `g` using relator `index`, in which `g` must occur exactly
    /// once, substituting the solved expression everywhere else. Relators
    /// that become trivial are dropped.
    pub fn eliminate_generator(&self, g: &Generator, index: usize) -> Result<Presentation, PresentationError> {
        let r = self.proper_relators().get(index).ok_or(PresentationError::RelatorOutOfRange(index))?;
        let positions: Vec<usize> =
            r.letters().iter().enumerate().filter(|(_, l)| &l.gen == g).map(|(i, _)| i).collect();
        if positions.len() != 1 {
            return Err(PresentationError::NotEliminable { gen: g.clone(), index, count: positions.len() });
        }
        let pos = positions[0];
        let u = Word::reduce(r.letters()[..pos].iter().cloned());
        let v = Word::reduce(r.letters()[pos + 1..].iter().cloned());
        // u g v = 1 gives g = u^-1 v^-1; u g^-1 v = 1 gives g = v u.
        let solved = if r.letters()[pos].inverse { v.concat(&u) } else { u.inverse().concat(&v.inverse()) };
        let map = BTreeMap::from([(g.clone(), solved)]);
        let generators: Vec<Generator> = self.generators.iter().filter(|h| *h != g).cloned().collect();
        let relators: Vec<Word> = self
            .proper_relators()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, r)| r.substitute(&map))
            .filter(|r| !r.is_identity())
            .collect();
        let p = Presentation::new(generators, relators)?;
        Ok(p.pad_relators(p.relators.len() + self.padding))
    }

    /// Renames generators; relators are relabeled accordingly.
    pub fn relabel(&self, f: impl Fn(&Generator) -> Generator) -> Result<Presentation, PresentationError> {
        let generators = self.generators.iter().map(&f).collect();
        let relators = self.proper_relators().iter().map(|r| r.map_generators(&f)).collect();
        let p = Presentation::new(generators, relators)?;
        Ok(p.pad_relators(p.relators.len() + self.padding))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianizationResult {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Whether an abelianized image is primitive in `Z^k`, i.e. its entries
/// have gcd one. A basis element of a free group always has primitive image.
pub fn is_primitive_image(v: &[i64]) -> bool {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x)) == 1
}

/// A homomorphism onto Z given by its values on the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Epimorphism {
    values: BTreeMap<Generator, i64>,
}

impl Epimorphism {
    /// Checks that every relator has value zero and that the values have
    /// gcd one.
    pub fn new(p: &Presentation, values: Vec<i64>) -> Result<Self, PresentationError> {
        if values.len() != p.generators.len() {
            return Err(PresentationError::EpimorphismArity { expected: p.generators.len(), got: values.len() });
        }
        let eps = Epimorphism { values: p.generators.iter().cloned().zip(values.iter().copied()).collect() };
        if let Some(i) = p.proper_relators().iter().position(|r| eps.eval(r) != 0) {
            return Err(PresentationError::EpimorphismNotWellDefined(i));
        }
        let g = values.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(PresentationError::EpimorphismNotSurjective(g));
        }
        Ok(eps)
    }

    pub fn value(&self, g: &Generator) -> Option<i64> {
        self.values.get(g).copied()
    }

    pub fn values(&self) -> &BTreeMap<Generator, i64> {
        &self.values
    }

    /// Value on a word; generators outside the domain count as zero.
    pub fn eval(&self, w: &Word) -> i64 {
        w.letters().iter().map(|l: &Letter| l.sign() * self.values.get(&l.gen).copied().unwrap_or(0)).sum()
    }

    /// Values listed in the presentation's generator order.
    pub fn in_order(&self, p: &Presentation) -> Vec<i64> {
        p.generators().iter().map(|g| self.values.get(g).copied().unwrap_or(0)).collect()
    }

    /// Extends to a presentation with one more generator `name := w`.
    pub fn extend(&self, name: &Generator, w: &Word) -> Epimorphism {
        let mut values = self.values.clone();
        values.insert(name.clone(), self.eval(w));
        Epimorphism { values }
    }

    /// Restricts to the generators of `p`, revalidating.
    pub fn restrict(&self, p: &Presentation) -> Result<Epimorphism, PresentationError> {
        Epimorphism::new(p, self.in_order(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_presentation;

    fn p(s: &str) -> Presentation {
        parse_presentation(s).unwrap()
    }

    #[test]
    fn abelianize_examples() {
        let tref = p("< a, b | a b a b^-1 a^-1 b^-1 >");
        assert_eq!(tref.abelianize(), AbelianizationResult { free_rank: 1, torsion: vec![] });
        let efh = p("< e, f, h | e^-2 h^2 f^-3 >");
        assert_eq!(efh.abelianize(), AbelianizationResult { free_rank: 2, torsion: vec![] });
        assert_eq!(p("< a | a >").abelianize(), AbelianizationResult { free_rank: 0, torsion: vec![] });
        let z6 = p("< a, b | a^2, b^3, a b a^-1 b^-1 >");
        assert_eq!(z6.abelianize().torsion, vec![BigInt::from(6)]);
        let z2z4 = p("< a, b | a^2, b^4, a b a^-1 b^-1 >");
        assert_eq!(z2z4.abelianize().torsion, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn abelianized_image_primitivity() {
        let efh = p("< e, f, h | e^-2 h^2 f^-3 >");
        let f3 = crate::dsl::parse_word_in(&efh, "f^3").unwrap();
        let e2h2 = crate::dsl::parse_word_in(&efh, "e^-2 h^2").unwrap();
        assert_eq!(efh.abelianized_image(&f3).unwrap(), vec![0, 3, 0]);
        assert_eq!(efh.abelianized_image(&e2h2).unwrap(), vec![-2, 0, 2]);
        let x = Word::letter(&Generator::new("x").unwrap());
        assert!(efh.abelianized_image(&x).is_err());
    }

    #[test]
    fn epimorphism_examples() {
        let k52 = p("< a, b, t | t a t^-1 = b, t b^-1 a b^-1 t^-1 = (b^-1 a)^2 >");
        assert_eq!(k52.epimorphism_to_z().unwrap().in_order(&k52), vec![0, 0, 1]);
        let bs = p("< a, t | t a t^-1 a^-2 >");
        assert_eq!(bs.epimorphism_to_z().unwrap().in_order(&bs), vec![0, 1]);
        let tref = p("< x, y, z | z^-1 x^-1 y x, x^-1 y^-1 z y >");
        assert_eq!(tref.epimorphism_to_z().unwrap().in_order(&tref), vec![1, 1, 1]);
        let f2 = p("< a, b | >");
        assert_eq!(f2.epimorphism_to_z(), Err(PresentationError::FreeRankNotOne(2)));
    }

    #[test]
    fn epimorphism_validation() {
        let bs = p("< a, t | t a t^-1 a^-2 >");
        assert_eq!(Epimorphism::new(&bs, vec![1, 0]), Err(PresentationError::EpimorphismNotWellDefined(0)));
        assert_eq!(Epimorphism::new(&bs, vec![0, 2]), Err(PresentationError::EpimorphismNotSurjective(2)));
        assert!(Epimorphism::new(&bs, vec![0, -1]).is_ok());
    }

    #[test]
    fn padding() {
        let f2 = p("< a, b | >");
        let padded = f2.pad_relators(1);
        assert_eq!(padded.relators().len(), 1);
        assert!(padded.relators()[0].is_identity());
        assert_eq!(padded.padding(), 1);
        assert_eq!(padded.abelianize(), f2.abelianize());
        let tref = p("< a, b | a b a b^-1 a^-1 b^-1 >");
        assert_eq!(tref.pad_relators(1), tref);
        let z = p("< a | >");
        assert_eq!(z.pad_relators(0), z);
    }

    #[test]
    fn eliminate_b0_from_first_amalgam() {
        let a01 = p("< a0, b0, a1, b1 | a1 = b0, b1^-1 a1 b1^-1 = (b0^-1 a0)^2 >");
        let b0 = a01.generator_named("b0").unwrap().clone();
        let reduced = a01.eliminate_generator(&b0, 0).unwrap();
        assert_eq!(reduced.generators().len(), 3);
        let expected = p("< a0, a1, b1 | (a1^-1 a0)^2 b1 a1^-1 b1 >");
        assert!(reduced.relators()[0].same_relator(&expected.relators()[0]));
    }

    #[test]
    fn eliminate_errors() {
        let q = p("< a, b | a b a^-1 b^-1 >");
        let a = q.generators()[0].clone();
        assert_eq!(
            q.eliminate_generator(&a, 0),
            Err(PresentationError::NotEliminable { gen: a.clone(), index: 0, count: 2 })
        );
        let r = p("< a, b | b^2 >");
        assert_eq!(r.eliminate_generator(&a, 0), Err(PresentationError::NotEliminable { gen: a, index: 0, count: 0 }));
    }

    #[test]
    fn introduce_then_eliminate_round_trip() {
        let tref = p("< a, b | a b a b^-1 a^-1 b^-1 >");
        let x = Generator::new("x").unwrap();
        let a = Word::letter(&tref.generators()[0]);
        let bigger = tref.introduce_generator(x.clone(), &a).unwrap();
        assert_eq!(bigger.generators().len(), 3);
        assert_eq!(bigger.abelianize(), tref.abelianize());
        let back = bigger.eliminate_generator(&x, 1).unwrap();
        assert_eq!(back, tref);
        assert_eq!(
            tref.introduce_generator(a.letters()[0].gen.clone(), &a),
            Err(PresentationError::DuplicateGenerator(tref.generators()[0].clone()))
        );
    }

    #[test]
    fn construction_rejects_bad_relators() {
        let a = Generator::new("a").unwrap();
        let b = Generator::new("b").unwrap();
        assert_eq!(
            Presentation::new(vec![a.clone()], vec![Word::letter(&b)]),
            Err(PresentationError::UnknownGenerator { index: 0, gen: b })
        );
        assert_eq!(Presentation::new(vec![a.clone()], vec![Word::identity()]), Err(PresentationError::EmptyRelator(0)));
        assert_eq!(
            Presentation::new(vec![a.clone(), a.clone()], vec![]),
            Err(PresentationError::DuplicateGenerator(a))
        );
    }
}
