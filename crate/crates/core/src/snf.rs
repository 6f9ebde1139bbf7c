//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub struct SmithForm {
    /// Diagonal entries `d_0 | d_1 | ...`, nonnegative, zeros last.
    pub diagonal: Vec<BigInt>,
    /// Unimodular `V` with `U * M * V = D`.
    pub column_transform: Vec<Vec<BigInt>>,
}

/// Smith normal form of a `rows x cols` matrix. Pivots are chosen by smallest
/// nonzero absolute value, ties broken by row-major position.
pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut v: Vec<Vec<BigInt>> =
        (0..cols).map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let steps = rows.min(cols);
    let mut diagonal = Vec::with_capacity(steps);

    for t in 0..steps {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                for row in v.iter_mut() {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad_row {
                Some(i) => {
                    for j in t..cols {
                        let add = a[i][j].clone();
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in t..cols {
                a[t][j] = -&a[t][j];
            }
        }
        diagonal.push(a[t][t].clone());
    }
    SmithForm { diagonal, column_transform: v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn diagonal_chain() {
        let m = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(ints(&smith_normal_form(&m, 3).diagonal), vec![2, 6, 12]);
        let m = mat(&[&[-2, -3, 2]]);
        assert_eq!(ints(&smith_normal_form(&m, 3).diagonal), vec![1]);
        let m = mat(&[&[2, 0], &[0, 3]]);
        assert_eq!(ints(&smith_normal_form(&m, 2).diagonal), vec![1, 6]);
    }

    #[test]
    fn column_transform_kernel() {
        let m = mat(&[&[1, -1, 0], &[-1, 0, 0]]);
        let snf = smith_normal_form(&m, 3);
        let kernel: Vec<BigInt> = snf.column_transform.iter().map(|r| r[2].clone()).collect();
        for row in &m {
            let dot: BigInt = row.iter().zip(&kernel).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(kernel.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn empty_matrix() {
        let snf = smith_normal_form(&[], 2);
        assert!(snf.diagonal.is_empty());
        assert_eq!(snf.column_transform.len(), 2);
    }
}
