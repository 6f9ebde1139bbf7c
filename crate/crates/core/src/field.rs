//! Exact coefficient fields: the rationals and prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse field element `{0}`")]
    BadElement(String),
    #[error("cannot parse field `{0}`; expected `q` or `fp:P`")]
    BadField(String),
}

/// A field whose elements are computed exactly. Elements carry no context;
/// arithmetic goes through the field value.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn kind(&self) -> ExactField;
    /// Canonical text form: `num/den` in lowest terms over Q, the residue in
    /// `0..p` over F_p.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// A nonzero scalar bringing `coeffs` to a preferred display form. The
    /// default makes the last coefficient one.
    fn display_scale(&self, coeffs: &[Self::Elem]) -> Self::Elem {
        coeffs.iter().rev().find(|c| !self.is_zero(c)).and_then(|c| self.inv(c)).unwrap_or_else(|| self.one())
    }
}

/// Field selector used at the API and CLI boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExactField {
    Rationals,
    Prime { p: u64 },
}

impl ExactField {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        PrimeField::new(p).map(|f| f.kind())
    }

    /// Parses `q` or `fp:P`.
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        match s.trim() {
            "q" | "Q" => Ok(ExactField::Rationals),
            other => other
                .strip_prefix("fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| FieldError::BadField(s.to_string()))
                .and_then(ExactField::prime),
        }
    }
}

impl std::fmt::Display for ExactField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactField::Rationals => f.write_str("q"),
            ExactField::Prime { p } => write!(f, "fp:{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn kind(&self) -> ExactField {
        ExactField::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }
    /// Clears denominators and content so the coefficients become coprime
    /// integers with a positive leading coefficient.
    fn display_scale(&self, coeffs: &[BigRational]) -> BigRational {
        let nonzero = coeffs.iter().filter(|c| !c.is_zero());
        let den = nonzero.clone().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = nonzero.clone().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        if num.is_zero() {
            return BigRational::one();
        }
        let lead_negative = coeffs.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let scale = BigRational::new(den, num);
        if lead_negative {
            -scale
        } else {
            scale
        }
    }

    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let bad = || FieldError::BadElement(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        }
    }
}

/// The prime field `F_p`, with elements stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime || p > u32::MAX as u64 {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// All residues in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(p-2)
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn kind(&self) -> ExactField {
        ExactField::Prime { p: self.p }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let n: BigInt = s.trim().parse().map_err(|_| FieldError::BadElement(s.to_string()))?;
        Ok(n.mod_floor(&BigInt::from(self.p)).try_into().expect("residue below modulus"))
    }
}
