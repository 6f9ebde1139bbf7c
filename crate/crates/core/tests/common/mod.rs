#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use wadakit::freegroup::{Generator, Letter, Word};
use wadakit::laurent::LaurentPoly;
use wadakit::presentation::{Epimorphism, Presentation};
use wadakit::Rationals;

/// Laurent polynomial over Q as an exponent map, independent of the library.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub BTreeMap<i64, BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn mono(e: i64, c: i64) -> Self {
        let mut p = Poly::zero();
        p.add_term(e, BigRational::from_integer(BigInt::from(c)));
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigRational) {
        let v = self.0.entry(e).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.0 {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }

    /// Shifted to lowest exponent 0 and made monic.
    pub fn normalized(&self) -> Poly {
        let Some((&low, _)) = self.0.iter().next() else { return self.clone() };
        let lead = self.0.values().next_back().unwrap().clone();
        Poly(self.0.iter().map(|(e, c)| (e - low, c / &lead)).collect())
    }

    fn rem(&self, d: &Poly) -> Poly {
        let mut r = self.normalized_low();
        let d = d.normalized_low();
        let (&dd, dl) = d.0.iter().next_back().unwrap();
        while let Some((&rd, rl)) = r.0.iter().next_back() {
            if rd < dd {
                break;
            }
            let c = rl / dl;
            let sub = d.mul(&Poly(BTreeMap::from([(rd - dd, c)])));
            r = r.add(&sub.neg());
        }
        r
    }

    fn normalized_low(&self) -> Poly {
        let Some((&low, _)) = self.0.iter().next() else { return self.clone() };
        Poly(self.0.iter().map(|(e, c)| (e - low, c.clone())).collect())
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.normalized(), o.normalized());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.normalized();
        }
        a.normalized()
    }

    pub fn to_laurent(&self) -> LaurentPoly<Rationals> {
        let mut out = LaurentPoly::zero(Rationals);
        for (e, c) in &self.0 {
            out = &out + &LaurentPoly::monomial(Rationals, c.clone(), *e);
        }
        out
    }
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::mono(0, 1);
    }
    let mut total = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].mul(&cofactor_det(&minor));
        total = if j % 2 == 0 { total.add(&term) } else { total.add(&term.neg()) };
    }
    total
}

/// Fox derivative composed with `g -> t^eps(g)`, from the defining
/// recursion on letters.
pub fn abelian_fox(w: &Word, g: &Generator, eps: &Epimorphism) -> Poly {
    let mut prefix = 0i64;
    let mut out = Poly::zero();
    for l in w.letters() {
        let e = eps.value(&l.gen).unwrap();
        if &l.gen == g {
            if l.inverse {
                out = out.add(&Poly::mono(prefix - e, -1));
            } else {
                out = out.add(&Poly::mono(prefix, 1));
            }
        }
        prefix += if l.inverse { -e } else { e };
    }
    out
}

/// Normalized gcd of all `(k-1)`-minors of the abelianized Fox matrix with
/// column `col` removed, divided by `1 - t^eps(col)` and returned as the
/// numerator only.
pub fn alexander_numerator(p: &Presentation, eps: &Epimorphism, col: usize) -> Poly {
    let gens = p.generators();
    let k = gens.len();
    let rows: Vec<Vec<Poly>> = p
        .relators()
        .iter()
        .map(|r| gens.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, g)| abelian_fox(r, g, eps)).collect())
        .collect();
    let l = rows.len();
    let mut acc = Poly::zero();
    for subset in choose(l, k - 1) {
        let m: Vec<Vec<Poly>> = subset.iter().map(|&i| rows[i].clone()).collect();
        acc = acc.gcd(&cofactor_det(&m));
    }
    acc
}

pub fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = choose(n - 1, k);
    for mut s in choose(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn gens(names: &[&str]) -> Vec<Generator> {
    names.iter().map(|n| Generator::new(n).unwrap()).collect()
}

/// Random reduced words over the given generators.
pub fn word_strategy(alphabet: Vec<Generator>, max_len: usize) -> impl Strategy<Value = Word> {
    let k = alphabet.len();
    prop::collection::vec((0..k, any::<bool>()), 0..=max_len)
        .prop_map(move |v| Word::reduce(v.into_iter().map(|(i, inv)| Letter::new(alphabet[i].clone(), inv))))
}

pub fn laurent_strategy() -> impl Strategy<Value = LaurentPoly<Rationals>> {
    (-3i64..3, prop::collection::vec(-4i64..5, 0..5)).prop_map(|(low, cs)| {
        let terms: Vec<(i64, i64)> = cs.iter().enumerate().map(|(i, &c)| (low + i as i64, c)).collect();
        LaurentPoly::from_terms(Rationals, &terms)
    })
}

pub fn one() -> BigRational {
    BigRational::one()
}
