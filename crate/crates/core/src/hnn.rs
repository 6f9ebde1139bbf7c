//! HNN splittings `<A, t | phi(x) = t x t^-1, x in B>`, the amalgams
//! `A_[n,m]` of the conjugates `t^i A t^-i`, and induced splittings.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::dsl::{parse_presentation, parse_word_in, serialize_presentation, ParseError, WordSyntax};
use crate::field::Field;
use crate::foxcalc::fox_jacobian;
use crate::freegroup::{free_hom_injective, is_basis, Generator, Word};
use crate::presentation::{Epimorphism, Presentation, PresentationError};
use crate::reps::{tensor_eval, RepError, Representation};
use crate::wada::{wada_invariant, WadaError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HnnError {
    #[error("{b_gens} subgroup generators but {images} images")]
    LengthMismatch { b_gens: usize, images: usize },
    #[error("stable letter `{0}` is already a generator of the base")]
    StableLetterCollision(Generator),
    #[error("subgroup generator {0} is the identity")]
    TrivialSubgroupGenerator(usize),
    #[error("subgroup generators do not freely generate the subgroup they span")]
    NotABasis,
    #[error("phi is not injective: the images do not freely generate their span")]
    NotAMonomorphism,
    #[error("amalgam range [{from}, {to}] is empty")]
    EmptyRange { from: i64, to: i64 },
    #[error("base generator `{0}` already carries a level tag")]
    LevelTaggedBase(Generator),
    #[error("relator {row} has t-support {support:?}, outside {allowed:?}")]
    BlockStructure { row: usize, support: Vec<i64>, allowed: Vec<i64> },
    #[error("bad splitting JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Wada(#[from] WadaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomorphismStatus {
    /// Base free; `b_gens` a basis and `phi` injective, checked by folding.
    Verified,
    /// Base has relators; injectivity was not checked.
    Unverified,
}

/// The data `(A, B, t, phi)` of an HNN splitting, with `B` given by
/// generators `x_j` and `phi` by the images `phi(x_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingData {
    base: Presentation,
    b_gens: Vec<Word>,
    phi_images: Vec<Word>,
    stable: Generator,
    status: MonomorphismStatus,
}

impl SplittingData {
    pub fn new(
        base: Presentation,
        b_gens: Vec<Word>,
        phi_images: Vec<Word>,
        stable: Generator,
    ) -> Result<Self, HnnError> {
        if b_gens.len() != phi_images.len() {
            return Err(HnnError::LengthMismatch { b_gens: b_gens.len(), images: phi_images.len() });
        }
        if base.generator_index(&stable).is_some() {
            return Err(HnnError::StableLetterCollision(stable));
        }
        for w in b_gens.iter().chain(&phi_images) {
            base.check_word(w)?;
        }
        if let Some(i) = b_gens.iter().position(Word::is_identity) {
            return Err(HnnError::TrivialSubgroupGenerator(i));
        }
        let status = if base.is_free() {
            if !b_gens.is_empty() {
                if !is_basis(&b_gens) {
                    return Err(HnnError::NotABasis);
                }
                if !free_hom_injective(&b_gens, &phi_images).map_err(|_| HnnError::NotABasis)? {
                    return Err(HnnError::NotAMonomorphism);
                }
            }
            MonomorphismStatus::Verified
        } else {
            MonomorphismStatus::Unverified
        };
        Ok(SplittingData { base, b_gens, phi_images, stable, status })
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn b_gens(&self) -> &[Word] {
        &self.b_gens
    }

    pub fn phi_images(&self) -> &[Word] {
        &self.phi_images
    }

    pub fn stable(&self) -> &Generator {
        &self.stable
    }

    /// Number of subgroup generators `d`.
    pub fn subgroup_rank(&self) -> usize {
        self.b_gens.len()
    }

    pub fn status(&self) -> MonomorphismStatus {
        self.status
    }

    pub fn to_json(&self) -> serde_json::Value {
        let words = |ws: &[Word]| ws.iter().map(|w| WordSyntax(w).to_string()).collect::<Vec<_>>();
        json!({
            "base": serialize_presentation(&self.base),
            "b_gens": words(&self.b_gens),
            "phi_images": words(&self.phi_images),
            "stable": self.stable.name(),
            "monomorphism": self.status,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, HnnError> {
        let text = |key: &str| v[key].as_str().ok_or_else(|| HnnError::Json(format!("missing string `{key}`")));
        let base = parse_presentation(text("base")?)?;
        let words = |key: &str| -> Result<Vec<Word>, HnnError> {
            let arr = v[key].as_array().ok_or_else(|| HnnError::Json(format!("missing array `{key}`")))?;
            arr.iter()
                .map(|x| {
                    let s = x.as_str().ok_or_else(|| HnnError::Json(format!("`{key}` entries must be strings")))?;
                    Ok(parse_word_in(&base, s)?)
                })
                .collect()
        };
        let stable = Generator::new(text("stable")?).map_err(|e| HnnError::Json(e.to_string()))?;
        SplittingData::new(base.clone(), words("b_gens")?, words("phi_images")?, stable)
    }
}

/// The splitting relator `phi(x)^-1 t x t^-1`.
fn splitting_relator(x: &Word, image: &Word, t: &Generator) -> Word {
    let t = Word::letter(t);
    image.inverse().concat(&t).concat(x).concat(&t.inverse())
}

/// `<A, t | rels(A), phi(x_j)^-1 t x_j t^-1>` with `eps(t) = 1` and
/// `eps = 0` on `A`.
pub fn hnn_presentation(s: &SplittingData) -> Result<(Presentation, Epimorphism), HnnError> {
    let mut generators = s.base.generators().to_vec();
    generators.push(s.stable.clone());
    let mut relators = s.base.proper_relators().to_vec();
    relators.extend(s.b_gens.iter().zip(&s.phi_images).map(|(x, y)| splitting_relator(x, y, &s.stable)));
    let p = Presentation::new(generators, relators)?;
    let mut values = vec![0; p.generators().len()];
    *values.last_mut().unwrap() = 1;
    let eps = Epimorphism::new(&p, values)?;
    Ok((p, eps))
}

fn check_untagged(base: &Presentation) -> Result<(), HnnError> {
    match base.generators().iter().find(|g| g.level().1.is_some()) {
        Some(g) => Err(HnnError::LevelTaggedBase(g.clone())),
        None => Ok(()),
    }
}

fn at_level(w: &Word, k: i64) -> Word {
    w.map_generators(|g| g.at_level(k))
}

/// `A_[n,m]`: copies `g@i` of the base generators for `i = n..=m`, the base
/// relators at every level, and `phi(x)@j = x@(j+1)` for `j = n..m`.
pub fn amalgam_presentation(s: &SplittingData, n: i64, m: i64) -> Result<Presentation, HnnError> {
    if n > m {
        return Err(HnnError::EmptyRange { from: n, to: m });
    }
    check_untagged(&s.base)?;
    let mut generators = Vec::new();
    let mut relators = Vec::new();
    for i in n..=m {
        generators.extend(s.base.generators().iter().map(|g| g.at_level(i)));
        relators.extend(s.base.proper_relators().iter().map(|r| at_level(r, i)));
    }
    for j in n..m {
        for (x, y) in s.b_gens.iter().zip(&s.phi_images) {
            relators.push(at_level(y, j).inverse().concat(&at_level(x, j + 1)));
        }
    }
    Ok(Presentation::new(generators, relators)?)
}

/// Relabels every level tag `k` as `k + by`, realizing
/// `A_[n,m] = A_[n+by, m+by]`.
pub fn shift_levels(p: &Presentation, by: i64) -> Result<Presentation, HnnError> {
    Ok(p.relabel(|g| g.shift_level(by))?)
}

/// The splitting of the same group with base `A_[0,n+1]` over `A_[0,n]`,
/// with `phi_n` given by conjugation by `t`.
pub fn induced_splitting(s: &SplittingData, n: u32) -> Result<SplittingData, HnnError> {
    let base = amalgam_presentation(s, 0, i64::from(n) + 1)?;
    let b: Vec<Generator> = base.generators().iter().filter(|g| g.level().1.is_some_and(|k| k <= n as i64)).cloned().collect();
    let b_gens = b.iter().map(Word::letter).collect();
    let phi_images = b.iter().map(|g| Word::letter(&g.shift_level(1))).collect();
    SplittingData::new(base, b_gens, phi_images, s.stable.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowSupport {
    pub relator: usize,
    /// Exponents of `t` occurring in the evaluated row.
    pub support: Vec<i64>,
}

/// Evidence that the Fox matrix of an HNN presentation, with the stable
/// letter column deleted, has base rows over `t^0` and splitting rows over
/// `t^0, t^1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub base_rows: Vec<RowSupport>,
    pub splitting_rows: Vec<RowSupport>,
}

pub fn verify_fox_block_structure<F: Field>(
    s: &SplittingData,
    alpha: &Representation<F>,
) -> Result<BlockReport, HnnError> {
    let (p, eps) = hnn_presentation(s)?;
    let p = p.padded_for_minors();
    let fox = fox_jacobian(&p);
    let base_count = s.base.proper_relators().len();
    let splitting_end = base_count + s.subgroup_rank();
    let mut report = BlockReport { base_rows: Vec::new(), splitting_rows: Vec::new() };
    for (row, entries) in fox.iter().enumerate() {
        let mut support = BTreeSet::new();
        for (g, entry) in p.generators().iter().zip(entries) {
            if *g == s.stable || entry.is_zero() {
                continue;
            }
            let m = tensor_eval(alpha, &eps, entry)?;
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    support.extend(m.get(i, j).support());
                }
            }
        }
        let support: Vec<i64> = support.into_iter().collect();
        let splitting = (base_count..splitting_end).contains(&row);
        let allowed: &[i64] = if splitting { &[0, 1] } else { &[0] };
        if support.iter().any(|e| !allowed.contains(e)) {
            return Err(HnnError::BlockStructure { row, support, allowed: allowed.to_vec() });
        }
        let entry = RowSupport { relator: row, support };
        if splitting {
            report.splitting_rows.push(entry);
        } else {
            report.base_rows.push(entry);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBoundReport {
    /// `None` when the invariant vanishes and the check is vacuous.
    pub degree: Option<i64>,
    /// `dim(alpha) * (d - 1)`.
    pub bound: i64,
    pub slack: Option<i64>,
    pub holds: bool,
}

/// Compares the degree of the invariant of the HNN presentation with
/// `dim(alpha) * (rank(B) - 1)`.
pub fn degree_bound_check<F: Field>(
    s: &SplittingData,
    alpha: &Representation<F>,
) -> Result<DegreeBoundReport, HnnError> {
    let (p, eps) = hnn_presentation(s)?;
    let r = wada_invariant(&p.padded_for_minors(), &eps, alpha, Some(&s.stable))?;
    let bound = alpha.dimension() as i64 * (s.subgroup_rank() as i64 - 1);
    let slack = r.degree.map(|d| bound - d);
    Ok(DegreeBoundReport { degree: r.degree, bound, slack, holds: slack.is_none_or(|s| s >= 0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_words, WordSyntax};
    use crate::field::Rationals;
    use crate::reps::trivial_rep;

    fn five_two() -> SplittingData {
        let base = parse_presentation("< a, b | >").unwrap();
        let w = |s: &str| parse_words(s).unwrap();
        SplittingData::new(base, w("a, b^-1 a b^-1"), w("b, (b^-1 a)^2"), Generator::new("t").unwrap()).unwrap()
    }

    #[test]
    fn five_two_presentation() {
        let s = five_two();
        assert_eq!(s.status(), MonomorphismStatus::Verified);
        let (p, eps) = hnn_presentation(&s).unwrap();
        let expected = parse_presentation("< a, b, t | t a t^-1 = b, t b^-1 a b^-1 t^-1 = (b^-1 a)^2 >").unwrap();
        for (r, q) in p.relators().iter().zip(expected.relators()) {
            assert!(r.same_relator(q), "{r} vs {q}");
        }
        assert_eq!(eps.in_order(&p), vec![0, 0, 1]);
    }

    #[test]
    fn rejects_bad_data() {
        let base = parse_presentation("< a, b | >").unwrap();
        let w = |s: &str| parse_words(s).unwrap();
        let t = Generator::new("t").unwrap();
        assert_eq!(
            SplittingData::new(base.clone(), w("a, a^2"), w("a, b"), t.clone()),
            Err(HnnError::NotABasis)
        );
        assert_eq!(
            SplittingData::new(base.clone(), w("a, b"), w("a, a^-1"), t.clone()),
            Err(HnnError::NotAMonomorphism)
        );
        assert_eq!(
            SplittingData::new(base.clone(), w("a"), w("a, b"), t),
            Err(HnnError::LengthMismatch { b_gens: 1, images: 2 })
        );
        let a = Generator::new("a").unwrap();
        assert_eq!(SplittingData::new(base, vec![], vec![], a.clone()), Err(HnnError::StableLetterCollision(a)));
    }

    #[test]
    fn free_product_with_z() {
        let base = parse_presentation("< a | >").unwrap();
        let s = SplittingData::new(base, vec![], vec![], Generator::new("t").unwrap()).unwrap();
        let (p, _) = hnn_presentation(&s).unwrap();
        assert!(p.is_free());
        assert_eq!(p.generators().len(), 2);
        let block = verify_fox_block_structure(&s, &trivial_rep(&p, Rationals)).unwrap();
        assert!(block.splitting_rows.is_empty());
        assert!(block.base_rows.iter().all(|r| r.support.is_empty()));
    }

    #[test]
    fn amalgams() {
        let s = five_two();
        let a00 = amalgam_presentation(&s, 0, 0).unwrap();
        assert_eq!(serialize_presentation(&a00), "< a@0, b@0 | >");
        let a01 = amalgam_presentation(&s, 0, 1).unwrap();
        assert_eq!((a01.generators().len(), a01.relators().len()), (4, 2));
        let rels: Vec<String> = a01.relators().iter().map(|r| WordSyntax(r).to_string()).collect();
        assert_eq!(rels, ["b@0^-1 a@1", "a@0^-1 b@0 a@0^-1 b@0 b@1^-1 a@1 b@1^-1"]);
        let a02 = amalgam_presentation(&s, 0, 2).unwrap();
        assert_eq!((a02.generators().len(), a02.relators().len()), (6, 4));
        assert_eq!(a02.abelianize().free_rank, 2);
        assert_eq!(amalgam_presentation(&s, 1, 0), Err(HnnError::EmptyRange { from: 1, to: 0 }));
        let neg = amalgam_presentation(&s, -1, 1).unwrap();
        assert_eq!(shift_levels(&neg, 1).unwrap(), a02);
    }

    #[test]
    fn induced_splittings_keep_abelianization() {
        let s = five_two();
        let (p, _) = hnn_presentation(&s).unwrap();
        for n in 0..2 {
            let i = induced_splitting(&s, n).unwrap();
            assert_eq!(i.status(), MonomorphismStatus::Unverified);
            assert_eq!(i.subgroup_rank(), 2 * (n as usize + 1));
            let (q, eps) = hnn_presentation(&i).unwrap();
            assert_eq!(q.abelianize(), p.abelianize());
            assert_eq!(eps.value(i.stable()), Some(1));
        }
    }

    #[test]
    fn block_structure_and_degree() {
        let s = five_two();
        let (p, _) = hnn_presentation(&s).unwrap();
        let alpha = trivial_rep(&p, Rationals);
        let block = verify_fox_block_structure(&s, &alpha).unwrap();
        assert_eq!(block.splitting_rows.len(), 2);
        let report = degree_bound_check(&s, &alpha).unwrap();
        assert_eq!((report.degree, report.bound, report.slack), (Some(1), 1, Some(0)));
        assert!(report.holds);
    }

    #[test]
    fn baumslag_solitar_block() {
        let base = parse_presentation("< a | >").unwrap();
        let s = SplittingData::new(base, parse_words("a").unwrap(), parse_words("a^2").unwrap(), Generator::new("t").unwrap())
            .unwrap();
        let (p, _) = hnn_presentation(&s).unwrap();
        let alpha = trivial_rep(&p, Rationals);
        let block = verify_fox_block_structure(&s, &alpha).unwrap();
        assert_eq!(block.splitting_rows, vec![RowSupport { relator: 0, support: vec![0, 1] }]);
        let report = degree_bound_check(&s, &alpha).unwrap();
        assert_eq!((report.degree, report.slack), (Some(0), Some(0)));
    }

    #[test]
    fn json_round_trip() {
        let s = five_two();
        let v = s.to_json();
        assert_eq!(v["b_gens"], json!(["a", "b^-1 a b^-1"]));
        assert_eq!(SplittingData::from_json(&v).unwrap(), s);
    }
}
