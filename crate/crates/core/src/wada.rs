//! Wada's invariant of a presented group with an epimorphism onto Z and a
//! representation, and the degree bounds derived from it.
//!
//! For a presentation `<g_1..g_k | r_1..r_l>` with `l >= k - 1`, the Fox
//! Jacobian is evaluated under `g -> t^eps(g) alpha(g)`, giving an
//! `l x k` matrix of `n x n` blocks (`n = dim alpha`). Deleting column block
//! `i` (with `eps(g_i) != 0`) and any `l + 1 - k` row blocks leaves a square
//! matrix; `Q_i` is the gcd of these minors and the invariant is
//! `Q_i / det(1 - t^eps(g_i) alpha(g_i))`, defined up to a unit `c t^m`.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::field::{ExactField, Field};
use crate::foxcalc::{fox_jacobian, GroupRingElement};
use crate::freegroup::{Generator, Word};
use crate::laurent::{LaurentError, LaurentPoly, PolyMatrix, RationalFunction};
use crate::presentation::{Epimorphism, Presentation};
use crate::reps::{tensor_eval, RepError, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WadaError {
    #[error("epimorphism vanishes on `{0}`; the deleted column needs a generator with nonzero value")]
    ZeroEpsilonColumn(Generator),
    #[error("no generator has nonzero epimorphism value")]
    NoAdmissibleColumn,
    #[error("`{0}` is not a generator of the presentation")]
    UnknownColumn(Generator),
    #[error("{relators} relators for {generators} generators; pad to at least {needed}")]
    TooFewRelators { relators: usize, generators: usize, needed: usize },
    #[error("the invariant is zero, so it gives no bound")]
    ZeroInvariant,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WadaResult<F: Field> {
    /// gcd of the minors, unit-normalized.
    pub q: LaurentPoly<F>,
    /// `det(1 - t^eps(g_i) alpha(g_i))`.
    pub denom: LaurentPoly<F>,
    pub delta: RationalFunction<F>,
    /// `deg Q - deg denom`; `None` when `Q = 0`.
    pub degree: Option<i64>,
    pub deleted_column: Generator,
    /// Number of minors evaluated before the gcd was settled.
    pub j_count: usize,
    pub dimension: usize,
    pub field: ExactField,
}

impl<F: Field> WadaResult<F> {
    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn genus_bound(&self) -> Result<i64, WadaError> {
        let degree = self.degree.ok_or(WadaError::ZeroInvariant)?;
        Ok(genus_bound_from_degree(degree, self.dimension))
    }

    pub fn rank_bound(&self) -> Result<i64, WadaError> {
        let degree = self.degree.ok_or(WadaError::ZeroInvariant)?;
        Ok(rank_bound_from_degree(degree, self.dimension))
    }

    pub fn report(&self) -> WadaReport {
        let (num, den) = self.delta.display_form();
        WadaReport {
            field: self.field,
            dimension: self.dimension,
            deleted_column: self.deleted_column.to_string(),
            j_count: self.j_count,
            q: serde_json::to_value(self.q.display_normalized()).unwrap(),
            q_text: self.q.display_normalized().to_string(),
            denom: serde_json::to_value(&self.denom).unwrap(),
            denom_text: self.denom.to_string(),
            delta: DeltaReport {
                numerator: serde_json::to_value(&num).unwrap(),
                denominator: serde_json::to_value(&den).unwrap(),
                text: format!("({num})/({den})"),
            },
            degree: self.degree,
            bounds: self.degree.map(|_| Bounds {
                genus: self.genus_bound().unwrap(),
                rank: self.rank_bound().unwrap(),
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaReport {
    pub numerator: serde_json::Value,
    pub denominator: serde_json::Value,
    pub text: String,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct Bounds {
    pub genus: i64,
    pub rank: i64,
}

/// Serializable summary of a [`WadaResult`].
#[derive(Debug, Clone, Serialize)]
pub struct WadaReport {
    pub field: ExactField,
    pub dimension: usize,
    pub deleted_column: String,
    pub j_count: usize,
    #[serde(rename = "Q")]
    pub q: serde_json::Value,
    #[serde(rename = "Q_text")]
    pub q_text: String,
    pub denom: serde_json::Value,
    pub denom_text: String,
    pub delta: DeltaReport,
    pub degree: Option<i64>,
    pub bounds: Option<Bounds>,
}

/// `ceil((degree / k + 1) / 2)`, clamped at 0.
pub fn genus_bound_from_degree(degree: i64, k: usize) -> i64 {
    let k = k as i64;
    Integer::div_ceil(&(degree + k), &(2 * k)).max(0)
}

/// `ceil(degree / k + 1)`, clamped at 0.
pub fn rank_bound_from_degree(degree: i64, k: usize) -> i64 {
    let k = k as i64;
    Integer::div_ceil(&(degree + k), &k).max(0)
}

/// Lexicographic `size`-subsets of `0..n`.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// The Fox Jacobian evaluated under the tensor representation, as an
/// `(l n) x (k n)` matrix of blocks.
pub fn evaluated_jacobian<F: Field>(
    p: &Presentation,
    eps: &Epimorphism,
    alpha: &Representation<F>,
) -> Result<PolyMatrix<F>, WadaError> {
    let n = alpha.dimension();
    let fox = fox_jacobian(p);
    let (l, k) = (p.relators().len(), p.generators().len());
    let mut m = PolyMatrix::zeros(alpha.field().clone(), l * n, k * n);
    for (i, row) in fox.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let block = tensor_eval(alpha, eps, entry)?;
            for a in 0..n {
                for b in 0..n {
                    m.set(i * n + a, j * n + b, block.get(a, b).clone());
                }
            }
        }
    }
    Ok(m)
}

/// Generators usable as the deleted column, in presentation order.
pub fn admissible_columns(p: &Presentation, eps: &Epimorphism) -> Vec<Generator> {
    p.generators().iter().filter(|g| eps.value(g).unwrap_or(0) != 0).cloned().collect()
}

pub fn wada_invariant<F: Field>(
    p: &Presentation,
    eps: &Epimorphism,
    alpha: &Representation<F>,
    column: Option<&Generator>,
) -> Result<WadaResult<F>, WadaError> {
    let (l, k) = (p.relators().len(), p.generators().len());
    if l + 1 < k {
        return Err(WadaError::TooFewRelators { relators: l, generators: k, needed: k - 1 });
    }
    let column = match column {
        Some(g) => {
            let value = eps.value(g).ok_or_else(|| WadaError::UnknownColumn(g.clone()))?;
            if p.generator_index(g).is_none() {
                return Err(WadaError::UnknownColumn(g.clone()));
            }
            if value == 0 {
                return Err(WadaError::ZeroEpsilonColumn(g.clone()));
            }
            g.clone()
        }
        None => admissible_columns(p, eps).into_iter().next().ok_or(WadaError::NoAdmissibleColumn)?,
    };
    let col = p.generator_index(&column).unwrap();
    let n = alpha.dimension();
    let field = alpha.field().clone();
    let m = evaluated_jacobian(p, eps, alpha)?;

    let mut q = LaurentPoly::zero(field.clone());
    let mut j_count = 0;
    for rows in subsets(l, l + 1 - k) {
        let minor = m.delete_blocks(n, &rows, &[col])?;
        let det = minor.determinant()?;
        j_count += 1;
        q = q.gcd(&det);
        if q.is_one() {
            break;
        }
    }

    let one_minus = &GroupRingElement::one() - &GroupRingElement::from_word(Word::letter(&column));
    let denom = tensor_eval(alpha, eps, &one_minus)?.determinant()?;
    let delta = RationalFunction::new(q.clone(), denom.clone())?;
    let degree = if q.is_zero() { None } else { Some(q.degree()? - denom.degree()?) };
    Ok(WadaResult { q, denom, delta, degree, deleted_column: column, j_count, dimension: n, field: field.kind() })
}

/// A presentation with its epimorphism and representation, used to compare
/// invariants across Tietze-equivalent presentations.
pub struct Variant<'a, F: Field> {
    pub presentation: &'a Presentation,
    pub epsilon: &'a Epimorphism,
    pub alpha: &'a Representation<F>,
}

#[derive(Debug, Clone)]
pub struct ColumnReport<F: Field> {
    pub results: Vec<WadaResult<F>>,
    pub consistent: bool,
}

/// Computes the invariant for every admissible column of `p` and of each
/// variant, and checks that all agree up to units.
pub fn verify_column_independence<F: Field>(
    p: &Presentation,
    eps: &Epimorphism,
    alpha: &Representation<F>,
    variants: &[Variant<'_, F>],
) -> Result<ColumnReport<F>, WadaError> {
    let mut results = Vec::new();
    let all = std::iter::once(Variant { presentation: p, epsilon: eps, alpha }).chain(variants.iter().map(|v| Variant {
        presentation: v.presentation,
        epsilon: v.epsilon,
        alpha: v.alpha,
    }));
    for v in all {
        let padded = v.presentation.padded_for_minors();
        for g in admissible_columns(&padded, v.epsilon) {
            results.push(wada_invariant(&padded, v.epsilon, v.alpha, Some(&g))?);
        }
    }
    let consistent = results.windows(2).all(|w| w[0].delta.equal_up_to_unit(&w[1].delta));
    Ok(ColumnReport { results, consistent })
}

/// Lower bound on the genus of a knot from its group, `ceil((deg/k + 1)/2)`.
pub fn genus_lower_bound<F: Field>(
    p: &Presentation,
    eps: &Epimorphism,
    alpha: &Representation<F>,
) -> Result<i64, WadaError> {
    wada_invariant(&p.padded_for_minors(), eps, alpha, None)?.genus_bound()
}

/// Lower bound on the rank of any splitting subgroup of `(pi, eps)`,
/// `ceil(deg/k + 1)`.
pub fn splitting_rank_lower_bound<F: Field>(
    p: &Presentation,
    eps: &Epimorphism,
    alpha: &Representation<F>,
) -> Result<i64, WadaError> {
    wada_invariant(&p.padded_for_minors(), eps, alpha, None)?.rank_bound()
}
