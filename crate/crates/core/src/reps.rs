//! Finite-dimensional representations of presented groups over exact fields,
//! the tensor representation with an epimorphism onto Z, and exhaustive
//! search for representations into `GL(d, F_p)`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::Serialize;
use thiserror::Error;

use crate::field::{ExactField, Field, FieldError, PrimeField};
use crate::foxcalc::GroupRingElement;
use crate::freegroup::{Generator, Word};
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::linalg::FieldMatrix;
use crate::presentation::{Epimorphism, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representation has no image for generator `{0}`")]
    MissingImage(Generator),
    #[error("image of `{gen}` is {rows}x{cols}, expected {dim}x{dim}")]
    DimensionMismatch { gen: Generator, rows: usize, cols: usize, dim: usize },
    #[error("image of `{0}` is not invertible")]
    NotInvertible(Generator),
    #[error("epimorphism has no value for generator `{0}`")]
    MissingEpsilon(Generator),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("search space of {size} tuples exceeds the budget of {budget}; set a limit")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A homomorphism from a presented group to `GL(dimension, field)`, given by
/// the images of the generators.
#[derive(Clone, PartialEq)]
pub struct Representation<F: Field> {
    field: F,
    dimension: usize,
    images: BTreeMap<Generator, FieldMatrix<F>>,
    inverses: BTreeMap<Generator, FieldMatrix<F>>,
}

impl<F: Field> std::fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation").field("dimension", &self.dimension).field("images", &self.images).finish()
    }
}

impl<F: Field> Representation<F> {
    /// Checks dimensions and invertibility; relators are checked separately
    /// by [`verify`].
    pub fn new(field: F, dimension: usize, images: BTreeMap<Generator, FieldMatrix<F>>) -> Result<Self, RepError> {
        if dimension == 0 {
            return Err(RepError::ZeroDimension);
        }
        let mut inverses = BTreeMap::new();
        for (g, m) in &images {
            if m.rows() != dimension || m.cols() != dimension {
                return Err(RepError::DimensionMismatch { gen: g.clone(), rows: m.rows(), cols: m.cols(), dim: dimension });
            }
            let inv = m.inverse().ok_or_else(|| RepError::NotInvertible(g.clone()))?;
            inverses.insert(g.clone(), inv);
        }
        Ok(Representation { field, dimension, images, inverses })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn images(&self) -> &BTreeMap<Generator, FieldMatrix<F>> {
        &self.images
    }

    pub fn image(&self, g: &Generator) -> Option<&FieldMatrix<F>> {
        self.images.get(g)
    }

    pub fn eval(&self, w: &Word) -> Result<FieldMatrix<F>, RepError> {
        let mut acc = FieldMatrix::identity(self.field.clone(), self.dimension);
        for l in w.letters() {
            let table = if l.inverse { &self.inverses } else { &self.images };
            let m = table.get(&l.gen).ok_or_else(|| RepError::MissingImage(l.gen.clone()))?;
            acc = acc.mul(m);
        }
        Ok(acc)
    }

    /// Adds an image for a new generator `name := w`, matching
    /// [`Presentation::introduce_generator`].
    pub fn extend(&self, name: &Generator, w: &Word) -> Result<Self, RepError> {
        let m = self.eval(w)?;
        let mut images = self.images.clone();
        images.insert(name.clone(), m);
        Representation::new(self.field.clone(), self.dimension, images)
    }

    /// Renames generators, e.g. to follow a level relabeling.
    pub fn relabel(&self, f: impl Fn(&Generator) -> Generator) -> Self {
        let images = self.images.iter().map(|(g, m)| (f(g), m.clone())).collect();
        let inverses = self.inverses.iter().map(|(g, m)| (f(g), m.clone())).collect();
        Representation { field: self.field.clone(), dimension: self.dimension, images, inverses }
    }
}

impl<F: Field> Serialize for Representation<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Images<'a, F: Field>(&'a Representation<F>);
        impl<F: Field> Serialize for Images<'_, F> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.images.len()))?;
                for (g, m) in &self.0.images {
                    let rows: Vec<Vec<serde_json::Value>> = m
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(|x| entry_json(&self.0.field, x)).collect())
                        .collect();
                    map.serialize_entry(g.name(), &rows)?;
                }
                map.end()
            }
        }
        #[derive(Serialize)]
        #[serde(bound = "")]
        struct Repr<'a, F: Field> {
            dimension: usize,
            field: ExactField,
            images: Images<'a, F>,
        }
        Repr { dimension: self.dimension, field: self.field.kind(), images: Images(self) }.serialize(s)
    }
}

/// Prime-field entries serialize as integers, rationals as `"num/den"`.
fn entry_json<F: Field>(field: &F, x: &F::Elem) -> serde_json::Value {
    let s = field.format(x);
    match (field.kind(), s.parse::<u64>()) {
        (ExactField::Prime { .. }, Ok(n)) => serde_json::Value::from(n),
        _ => serde_json::Value::from(s),
    }
}

/// Parses the JSON form `{dimension, field: {kind, p?}, images: {gen: [[entries]]}}`.
pub fn representation_from_json<F: Field>(field: F, value: &serde_json::Value) -> Result<Representation<F>, String> {
    let dimension = value["dimension"].as_u64().ok_or("missing `dimension`")? as usize;
    let declared: ExactField =
        serde_json::from_value(value["field"].clone()).map_err(|e| format!("bad `field`: {e}"))?;
    if declared != field.kind() {
        return Err(format!("representation is over {declared}, expected {}", field.kind()));
    }
    let images = value["images"].as_object().ok_or("missing `images`")?;
    let mut out = BTreeMap::new();
    for (name, rows) in images {
        let g = Generator::new(name).map_err(|e| e.to_string())?;
        let rows = rows.as_array().ok_or("image must be an array of rows")?;
        let mut entries = Vec::new();
        for row in rows {
            for x in row.as_array().ok_or("row must be an array")? {
                let text = match x {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                entries.push(field.parse(&text).map_err(|e| e.to_string())?);
            }
        }
        let m = FieldMatrix::from_entries(field.clone(), rows.len(), dimension, entries)
            .ok_or_else(|| format!("image of `{name}` has the wrong shape"))?;
        out.insert(g, m);
    }
    Representation::new(field, dimension, out).map_err(|e| e.to_string())
}

/// True when every relator maps to the identity.
pub fn verify<F: Field>(p: &Presentation, r: &Representation<F>) -> Result<bool, RepError> {
    for g in p.generators() {
        if r.image(g).is_none() {
            return Err(RepError::MissingImage(g.clone()));
        }
    }
    for rel in p.relators() {
        if !r.eval(rel)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The trivial one-dimensional representation.
pub fn trivial_rep<F: Field>(p: &Presentation, field: F) -> Representation<F> {
    let images = p.generators().iter().map(|g| (g.clone(), FieldMatrix::identity(field.clone(), 1))).collect();
    Representation::new(field, 1, images).expect("identity images are invertible")
}

/// Image of a group ring element under `g -> t^eps(g) alpha(g)`, extended
/// linearly.
pub fn tensor_eval<F: Field>(
    r: &Representation<F>,
    eps: &Epimorphism,
    x: &GroupRingElement,
) -> Result<PolyMatrix<F>, RepError> {
    let f = r.field.clone();
    let d = r.dimension;
    let mut out: Vec<Vec<LaurentPoly<F>>> = vec![vec![LaurentPoly::zero(f.clone()); d]; d];
    for (w, c) in x.terms() {
        for l in w.letters() {
            if eps.value(&l.gen).is_none() {
                return Err(RepError::MissingEpsilon(l.gen.clone()));
            }
        }
        let e = eps.eval(w);
        let m = r.eval(w)?;
        let coeff = f.from_i64(c);
        for i in 0..d {
            for j in 0..d {
                let v = f.mul(&coeff, m.get(i, j));
                if !f.is_zero(&v) {
                    out[i][j] = &out[i][j] + &LaurentPoly::monomial(f.clone(), v, e);
                }
            }
        }
    }
    Ok(PolyMatrix::from_fn(f, d, d, |i, j| out[i][j].clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop after this many representations (in lexicographic order).
    pub limit: Option<usize>,
    /// Maximum number of enumerated tuples allowed without a limit.
    pub budget: u128,
    /// Restrict every image to the conjugacy class of the first generator's
    /// image. Incomplete in general; meant for Wirtinger presentations.
    pub same_conjugacy_class: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { limit: None, budget: 20_000_000, same_conjugacy_class: false }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub representations: Vec<Representation<PrimeField>>,
    /// False when the search was cut short by the limit or restricted to one
    /// conjugacy class.
    pub exhaustive: bool,
    pub restricted_to_conjugacy_class: bool,
}

/// All invertible `d x d` matrices over `F_p`, ordered by row-major entries
/// with residues ascending.
pub fn general_linear_group(field: PrimeField, d: usize) -> Vec<FieldMatrix<PrimeField>> {
    let p = field.modulus();
    let n = d * d;
    let total = p.pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut entries = vec![0u64; n];
            for slot in entries.iter_mut().rev() {
                *slot = code % p;
                code /= p;
            }
            let m = FieldMatrix::from_entries(field, d, d, entries).unwrap();
            (m.determinant() != 0).then_some(m)
        })
        .collect()
}

enum LastGenerator {
    /// Enumerate all candidates.
    Free,
    /// Some relator pins the image down: `g^sign = rest^-1` for the rotated relator `rest g^sign`.
    Determined { rest: Word, sign: bool },
    /// Linear constraints `X G Y = G` from relators rotated to `X g Y g^-1`.
    Linear { constraints: Vec<(Word, Word)> },
}

fn rotate(w: &Word, start: usize) -> Vec<crate::freegroup::Letter> {
    let l = w.letters();
    l[start..].iter().chain(&l[..start]).cloned().collect()
}

fn classify_last(p: &Presentation, g: &Generator) -> LastGenerator {
    let mut constraints = Vec::new();
    for r in p.proper_relators() {
        let r = r.cyclically_reduced();
        let pos: Vec<usize> = r.letters().iter().enumerate().filter(|(_, l)| &l.gen == g).map(|(i, _)| i).collect();
        match pos.len() {
            1 => {
                // rotate so that g^+-1 is last
                let rot = rotate(&r, (pos[0] + 1) % r.len());
                let (last, rest) = rot.split_last().unwrap();
                return LastGenerator::Determined { rest: Word::reduce(rest.to_vec()), sign: last.inverse };
            }
            2 if r.letters()[pos[0]].inverse != r.letters()[pos[1]].inverse => {
                let inv_pos = if r.letters()[pos[0]].inverse { pos[0] } else { pos[1] };
                let rot = rotate(&r, (inv_pos + 1) % r.len());
                let plus = rot.iter().position(|l| &l.gen == g).unwrap();
                let x = Word::reduce(rot[..plus].to_vec());
                let y = Word::reduce(rot[plus + 1..rot.len() - 1].to_vec());
                constraints.push((x, y));
            }
            _ => {}
        }
    }
    if constraints.is_empty() {
        LastGenerator::Free
    } else {
        LastGenerator::Linear { constraints }
    }
}

fn encode(m: &FieldMatrix<PrimeField>) -> Vec<u64> {
    m.entries().to_vec()
}

struct Searcher<'a> {
    field: PrimeField,
    d: usize,
    p: &'a Presentation,
    gl: Vec<FieldMatrix<PrimeField>>,
    /// Relators to check once generators `0..=i` are assigned.
    checks: Vec<Vec<Word>>,
    solve_last: bool,
    last: LastGenerator,
    options: SearchOptions,
}

impl Searcher<'_> {
    fn partial_rep(&self, assigned: &[FieldMatrix<PrimeField>]) -> Representation<PrimeField> {
        let images = self.p.generators().iter().cloned().zip(assigned.iter().cloned()).collect();
        Representation::new(self.field, self.d, images).expect("GL elements are invertible")
    }

    fn class_of(&self, m: &FieldMatrix<PrimeField>) -> BTreeSet<Vec<u64>> {
        self.gl.iter().map(|c| encode(&c.mul(m).mul(&c.inverse().unwrap()))).collect()
    }

    fn candidates_for_last(&self, rep: &Representation<PrimeField>) -> Vec<FieldMatrix<PrimeField>> {
        match &self.last {
            LastGenerator::Free => self.gl.clone(),
            LastGenerator::Determined { rest, sign } => {
                let m = rep.eval(&rest.inverse()).unwrap();
                vec![if *sign { m.inverse().unwrap() } else { m }]
            }
            LastGenerator::Linear { constraints } => {
                let d = self.d;
                let f = self.field;
                let mut system = FieldMatrix::zeros(f, d * d * constraints.len(), d * d);
                for (k, (x, y)) in constraints.iter().enumerate() {
                    let xm = rep.eval(x).unwrap();
                    let ym = rep.eval(y).unwrap();
                    for i in 0..d {
                        for j in 0..d {
                            let row = k * d * d + i * d + j;
                            for a in 0..d {
                                for b in 0..d {
                                    let v = f.mul(xm.get(i, a), ym.get(b, j));
                                    system.set(row, a * d + b, v);
                                }
                            }
                            let diag = f.sub(system.get(row, i * d + j), &1);
                            system.set(row, i * d + j, diag);
                        }
                    }
                }
                let basis = system.nullspace();
                let count = self.field.modulus().pow(basis.len() as u32);
                let mut out: Vec<FieldMatrix<PrimeField>> = (0..count)
                    .filter_map(|mut code| {
                        let mut v = vec![0u64; d * d];
                        for b in &basis {
                            let c = code % f.modulus();
                            code /= f.modulus();
                            for (vi, bi) in v.iter_mut().zip(b) {
                                *vi = f.add(vi, &f.mul(&c, bi));
                            }
                        }
                        let m = FieldMatrix::from_entries(f, d, d, v).unwrap();
                        (m.determinant() != 0).then_some(m)
                    })
                    .collect();
                out.sort_by_key(encode);
                out
            }
        }
    }

    fn passes(&self, assigned: &[FieldMatrix<PrimeField>], depth: usize) -> bool {
        if self.checks[depth].is_empty() {
            return true;
        }
        let rep = self.partial_rep(assigned);
        self.checks[depth].iter().all(|r| rep.eval(r).unwrap().is_identity())
    }

    fn dfs(
        &self,
        assigned: &mut Vec<FieldMatrix<PrimeField>>,
        class: Option<&BTreeSet<Vec<u64>>>,
        out: &mut Vec<Vec<FieldMatrix<PrimeField>>>,
    ) {
        let k = self.p.generators().len();
        if self.options.limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let depth = assigned.len();
        if depth == k {
            out.push(assigned.clone());
            return;
        }
        let candidates: Vec<FieldMatrix<PrimeField>> = if self.solve_last && depth == k - 1 {
            self.candidates_for_last(&self.partial_rep(assigned))
        } else {
            self.gl.clone()
        };
        for m in candidates {
            if let Some(cls) = class {
                if !cls.contains(&encode(&m)) {
                    continue;
                }
            }
            assigned.push(m);
            let owned_class;
            let class_next = match class {
                None if self.options.same_conjugacy_class => {
                    owned_class = self.class_of(&assigned[0]);
                    Some(&owned_class)
                }
                c => c,
            };
            if self.passes(assigned, depth) {
                self.dfs(assigned, class_next, out);
            }
            assigned.pop();
            if self.options.limit.is_some_and(|l| out.len() >= l) {
                return;
            }
        }
    }
}

/// Enumerates homomorphisms to `GL(d, F_p)` in lexicographic order of the
/// image tuples (generator order, row-major residues ascending). The result
/// does not depend on the degree of parallelism.
pub fn search_homs(p: &Presentation, d: usize, modulus: u64, options: SearchOptions) -> Result<SearchResult, RepError> {
    if d == 0 {
        return Err(RepError::ZeroDimension);
    }
    let field = PrimeField::new(modulus)?;
    let gl = general_linear_group(field, d);
    let gens = p.generators();
    let k = gens.len();
    if k == 0 {
        let rep = Representation::new(field, d, BTreeMap::new())?;
        return Ok(SearchResult { representations: vec![rep], exhaustive: true, restricted_to_conjugacy_class: false });
    }

    let last = classify_last(p, &gens[k - 1]);
    let solve_last = !matches!(last, LastGenerator::Free);
    let enumerated = if solve_last { k - 1 } else { k };
    let size = (gl.len() as u128).saturating_pow(enumerated as u32);
    if options.limit.is_none() && size > options.budget {
        return Err(RepError::BudgetExceeded { size, budget: options.budget });
    }

    let mut checks = vec![Vec::new(); k];
    for r in p.proper_relators() {
        let depth = r.letters().iter().map(|l| p.generator_index(&l.gen).unwrap()).max().unwrap();
        checks[depth].push(r.clone());
    }
    let searcher = Searcher { field, d, p, gl, checks, solve_last, last, options };

    let tuples: Vec<Vec<FieldMatrix<PrimeField>>> = if options.limit.is_some() || k == 1 {
        let mut out = Vec::new();
        searcher.dfs(&mut Vec::new(), None, &mut out);
        out
    } else {
        searcher
            .gl
            .par_iter()
            .map(|m| {
                let mut assigned = vec![m.clone()];
                let mut out = Vec::new();
                let class = options.same_conjugacy_class.then(|| searcher.class_of(m));
                if searcher.passes(&assigned, 0) {
                    searcher.dfs(&mut assigned, class.as_ref(), &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };

    let limited = options.limit.is_some_and(|l| tuples.len() >= l);
    let representations = tuples
        .into_iter()
        .map(|t| {
            let rep = searcher.partial_rep(&t);
            debug_assert!(verify(p, &rep).unwrap());
            rep
        })
        .collect();
    Ok(SearchResult {
        representations,
        exhaustive: !limited && !options.same_conjugacy_class,
        restricted_to_conjugacy_class: options.same_conjugacy_class,
    })
}
