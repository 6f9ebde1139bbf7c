//! Laurent polynomials in one variable `t` over an exact field, rational
//! functions, and matrices of Laurent polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::Serialize;
use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("degree of the zero polynomial is undefined")]
    ZeroDegree,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range for {bound} blocks")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("a column block must be deleted")]
    NoColumnDeleted,
    #[error("block size {block} does not divide a {rows}x{cols} matrix")]
    BlockMismatch { block: usize, rows: usize, cols: usize },
    #[error("matrix entries have the wrong count: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
}

/// `sum_i c_i t^i` stored densely from the lowest exponent. The coefficient
/// vector is empty for zero and otherwise starts and ends with nonzero terms.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<F: Field> {
    field: F,
    low: i64,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn from_coeffs(field: F, low: i64, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| field.is_zero(c)).count();
        coeffs.drain(..lead);
        let low = if coeffs.is_empty() { 0 } else { low + lead as i64 };
        LaurentPoly { field, low, coeffs }
    }

    pub fn zero(field: F) -> Self {
        LaurentPoly { field, low: 0, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 0)
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::monomial(field, c, 0)
    }

    pub fn monomial(field: F, c: F::Elem, exponent: i64) -> Self {
        Self::from_coeffs(field, exponent, vec![c])
    }

    /// `t^exponent`.
    pub fn t_power(field: F, exponent: i64) -> Self {
        let one = field.one();
        Self::monomial(field, one, exponent)
    }

    /// Builds from `(exponent, integer coefficient)` pairs; repeated
    /// exponents add up.
    pub fn from_terms(field: F, terms: &[(i64, i64)]) -> Self {
        terms.iter().fold(Self::zero(field.clone()), |acc, &(e, c)| {
            let m = Self::monomial(field.clone(), field.from_i64(c), e);
            &acc + &m
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero with a single term, i.e. a unit `c t^k` of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn low_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Top exponent minus bottom exponent.
    pub fn degree(&self) -> Result<i64, LaurentError> {
        if self.is_zero() {
            Err(LaurentError::ZeroDegree)
        } else {
            Ok(self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, exponent: i64) -> F::Elem {
        let i = exponent - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            self.field.zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| (self.low + i as i64, c))
    }

    /// Exponents carrying nonzero coefficients.
    pub fn support(&self) -> Vec<i64> {
        self.terms().map(|(e, _)| e).collect()
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|x| self.field.mul(x, c)).collect();
        Self::from_coeffs(self.field.clone(), self.low, coeffs)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { field: self.field.clone(), low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Divides by the leading coefficient and shifts the lowest exponent to 0.
    pub fn unit_normalized(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                let mut p = self.scale(&inv);
                p.low = 0;
                p
            }
        }
    }

    /// Lowest exponent 0, scaled by [`Field::display_scale`]; over Q this is
    /// the primitive integer polynomial with positive leading coefficient.
    pub fn display_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = self.scale(&self.field.display_scale(&self.coeffs));
        p.low = 0;
        p
    }

    /// Ordinary polynomial division of the exponent-0-shifted forms.
    fn poly_div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let d = &divisor.coeffs;
        let lc_inv = f.inv(d.last().expect("nonzero divisor")).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() < d.len() {
            return (Self::zero(f.clone()), Self::from_coeffs(f.clone(), 0, rem));
        }
        let mut quot = vec![f.zero(); rem.len() - d.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = f.mul(&rem[i + d.len() - 1], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, dj));
            }
            quot[i] = c;
        }
        (Self::from_coeffs(f.clone(), 0, quot), Self::from_coeffs(f.clone(), 0, rem))
    }

    /// `self / divisor` when the division is exact in the Laurent ring.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (q, r) = self.poly_div_rem(divisor);
        r.is_zero().then(|| q.shift(self.low - divisor.low))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    /// Greatest common divisor, normalized to lowest exponent 0 and monic.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.unit_normalized();
        let mut b = other.unit_normalized();
        while !b.is_zero() {
            let (_, r) = a.poly_div_rem(&b);
            a = b;
            b = r.unit_normalized();
        }
        a.unit_normalized()
    }

    fn format_coeff(&self, c: &F::Elem) -> String {
        let s = self.field.format(c);
        s.strip_suffix("/1").map(str::to_string).unwrap_or(s)
    }
}

/// Normalized gcd of a list; zero entries are ignored and an all-zero list
/// gives zero.
pub fn gcd_all<'a, F: Field>(field: &F, ps: impl IntoIterator<Item = &'a LaurentPoly<F>>) -> LaurentPoly<F> {
    ps.into_iter().fold(LaurentPoly::zero(field.clone()), |acc, p| acc.gcd(p))
}

impl<F: Field> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<(i64, &F::Elem)> = self.terms().collect();
        for (i, (e, c)) in terms.iter().rev().enumerate() {
            let s = self.format_coeff(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            match (mag.as_str(), mono.is_empty()) {
                (m, true) => f.write_str(m)?,
                ("1", false) => f.write_str(&mono)?,
                (m, false) => write!(f, "{m}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> Serialize for LaurentPoly<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, &F::Elem)> = self.terms().collect();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (e, c) in terms {
            seq.serialize_element(&(e, self.field.format(c)))?;
        }
        seq.end()
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let low = self.low.min(rhs.low);
        let high = self.high_exponent().unwrap().max(rhs.high_exponent().unwrap());
        let coeffs = (low..=high).map(|e| f.add(&self.coeff(e), &rhs.coeff(e))).collect();
        LaurentPoly::from_coeffs(f.clone(), low, coeffs)
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        LaurentPoly { field: self.field.clone(), low: self.low, coeffs }
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(f.clone());
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        LaurentPoly::from_coeffs(f.clone(), self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for LaurentPoly<F> {
            type Output = LaurentPoly<F>;
            fn $m(self, rhs: LaurentPoly<F>) -> LaurentPoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A quotient of Laurent polynomials, kept with numerator and denominator
/// coprime, denominator monic with lowest exponent 0. The numerator carries
/// any power of `t`, so the value is represented faithfully.
#[derive(Clone, PartialEq)]
pub struct RationalFunction<F: Field> {
    num: LaurentPoly<F>,
    den: LaurentPoly<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: LaurentPoly<F>, den: LaurentPoly<F>) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::ZeroDenominator);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RationalFunction { num, den: LaurentPoly::one(field) });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let shift = -den.low;
        let lc_inv = field.inv(den.leading_coeff().unwrap()).unwrap();
        Ok(RationalFunction { num: num.shift(shift).scale(&lc_inv), den: den.shift(shift).scale(&lc_inv) })
    }

    pub fn numerator(&self) -> &LaurentPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn degree(&self) -> Result<i64, LaurentError> {
        Ok(self.num.degree()? - self.den.degree()?)
    }

    /// Representative of the unit class for display: both parts with lowest
    /// exponent 0, the denominator monic and the numerator scaled by
    /// [`LaurentPoly::display_normalized`].
    pub fn display_form(&self) -> (LaurentPoly<F>, LaurentPoly<F>) {
        (self.num.display_normalized(), self.den.clone())
    }

    /// Canonical representative of the class modulo units `c t^k`:
    /// both parts monic with lowest exponent 0.
    pub fn unit_class(&self) -> (LaurentPoly<F>, LaurentPoly<F>) {
        (self.num.unit_normalized(), self.den.clone())
    }

    /// Whether `self = c t^k other` for a nonzero constant `c` and integer `k`.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        self.unit_class() == other.unit_class()
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A dense matrix of Laurent polynomials.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<LaurentPoly<F>>) -> Result<Self, LaurentError> {
        if entries.len() != rows * cols {
            return Err(LaurentError::Shape { expected: rows * cols, got: entries.len() });
        }
        Ok(PolyMatrix { field, rows, cols, entries })
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, f: impl Fn(usize, usize) -> LaurentPoly<F>) -> Self {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        PolyMatrix { field, rows, cols, entries }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = LaurentPoly::zero(field.clone());
        PolyMatrix { field, rows, cols, entries: vec![z; rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let f = field.clone();
        Self::from_fn(field, n, n, |i, j| if i == j { LaurentPoly::one(f.clone()) } else { LaurentPoly::zero(f.clone()) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly<F>) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination. The empty
    /// matrix has determinant 1.
    pub fn determinant(&self) -> Result<LaurentPoly<F>, LaurentError> {
        if self.rows != self.cols {
            return Err(LaurentError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<LaurentPoly<F>>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one(self.field.clone());
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero(self.field.clone())),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let det = match n {
            0 => LaurentPoly::one(self.field.clone()),
            _ => a[n - 1][n - 1].clone(),
        };
        Ok(if negate { -&det } else { det })
    }

    /// Deletes row blocks and column blocks of a matrix made of
    /// `block x block` blocks. At least one column block must be deleted.
    pub fn delete_blocks(
        &self,
        block: usize,
        row_blocks: &[usize],
        col_blocks: &[usize],
    ) -> Result<PolyMatrix<F>, LaurentError> {
        if block == 0 || self.rows % block != 0 || self.cols % block != 0 {
            return Err(LaurentError::BlockMismatch { block, rows: self.rows, cols: self.cols });
        }
        if col_blocks.is_empty() {
            return Err(LaurentError::NoColumnDeleted);
        }
        let (rb, cb) = (self.rows / block, self.cols / block);
        for &r in row_blocks {
            if r >= rb {
                return Err(LaurentError::IndexOutOfRange { index: r, bound: rb });
            }
        }
        for &c in col_blocks {
            if c >= cb {
                return Err(LaurentError::IndexOutOfRange { index: c, bound: cb });
            }
        }
        let keep_rows: Vec<usize> = (0..self.rows).filter(|i| !row_blocks.contains(&(i / block))).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|j| !col_blocks.contains(&(j / block))).collect();
        Ok(PolyMatrix::from_fn(self.field.clone(), keep_rows.len(), keep_cols.len(), |i, j| {
            self.get(keep_rows[i], keep_cols[j]).clone()
        }))
    }
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| self.row(i).iter().map(|p| p.to_string()).collect()).collect();
        write!(f, "PolyMatrix{rows:?}")
    }
}

impl<F: Field> Serialize for PolyMatrix<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[LaurentPoly<F>]> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(s)
    }
}
