//! Dense matrices over an exact field.

use std::fmt;

use crate::field::Field;

/// A dense `rows x cols` matrix over a field, row-major.
#[derive(Clone, PartialEq)]
pub struct FieldMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn from_entries(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Option<Self> {
        (entries.len() == rows * cols).then_some(FieldMatrix { field, rows, cols, entries })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        FieldMatrix { field, rows, cols, entries: vec![z; rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[_]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field.clone(), self.rows)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, rhs.get(k, j)));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let entries = self.entries.iter().map(|x| self.field.mul(x, c)).collect();
        FieldMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| self.field.add(a, b)).collect();
        FieldMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else { continue };
            for j in 0..self.cols {
                self.entries.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn determinant(&self) -> F::Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = self.field.clone();
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else { return f.zero() };
            if p != c {
                for j in 0..n {
                    a.entries.swap(c * n + j, p * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = a.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).unwrap();
            for i in c + 1..n {
                let factor = f.mul(a.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = self.field.clone();
        let mut aug = Self::zeros(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field.clone();
        let mut a = self.clone();
        let pivots = a.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(a.get(r, fc));
                }
                v
            })
            .collect()
    }
}

impl<F: Field> fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(|x| self.field.format(x)).collect()).collect();
        write!(f, "{rows:?}")
    }
}
