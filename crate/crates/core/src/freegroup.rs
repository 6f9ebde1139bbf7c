//! Reduced words in free groups and the Stallings folding calculus for their
//! finitely generated subgroups.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("word uses generator `{0}` outside the alphabet")]
    AlphabetMismatch(String),
    #[error("expected {expected} images, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("domain words do not form a free basis of the subgroup they generate")]
    NotABasis,
}

/// A generator symbol.
///
/// Names follow `[A-Za-z][A-Za-z0-9_]*`, optionally followed by a level tag
/// `@k` (`k` a signed decimal) as produced by the amalgam constructions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Result<Self, FreeGroupError> {
        if is_valid_name(name) {
            Ok(Generator(Arc::from(name)))
        } else {
            Err(FreeGroupError::InvalidName(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Splits `g@k` into `(g, Some(k))`.
    pub fn level(&self) -> (&str, Option<i64>) {
        match self.0.split_once('@') {
            Some((base, lvl)) => (base, lvl.parse().ok()),
            None => (&self.0, None),
        }
    }

    /// The copy of this generator at level `k`; an existing tag is replaced.
    pub fn at_level(&self, k: i64) -> Generator {
        let (base, _) = self.level();
        Generator(Arc::from(format!("{base}@{k}")))
    }

    /// Shifts the level tag by `by`; untagged generators are returned as is.
    pub fn shift_level(&self, by: i64) -> Generator {
        match self.level() {
            (base, Some(k)) => Generator(Arc::from(format!("{base}@{}", k + by))),
            _ => self.clone(),
        }
    }
}

fn is_valid_name(name: &str) -> bool {
    let (ident, tag) = match name.split_once('@') {
        Some((i, t)) => (i, Some(t)),
        None => (name, None),
    };
    let mut chars = ident.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic());
    let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    let tag_ok = match tag {
        None => true,
        Some(t) => {
            let digits = t.strip_prefix('-').unwrap_or(t);
            !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
        }
    };
    head_ok && tail_ok && tag_ok
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Generator::new(&s).map_err(serde::de::Error::custom)
    }
}

/// A generator or its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Generator, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(&self) -> Letter {
        Letter { gen: self.gen.clone(), inverse: !self.inverse }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letter(gen: &Generator) -> Self {
        Word { letters: vec![Letter::new(gen.clone(), false)] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|last| last.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inv).collect() }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.letters.iter().map(|l| l.gen.clone()).collect()
    }

    /// Exponent sum of `gen` in the word.
    pub fn exponent_sum(&self, gen: &Generator) -> i64 {
        self.letters.iter().filter(|l| &l.gen == gen).map(Letter::sign).sum()
    }

    /// Replaces every generator by a word; generators missing from the map
    /// are kept.
    pub fn substitute(&self, map: &BTreeMap<Generator, Word>) -> Word {
        Word::reduce(self.letters.iter().flat_map(|l| {
            let image = match map.get(&l.gen) {
                Some(w) => w.clone(),
                None => Word::letter(&l.gen),
            };
            let image = if l.inverse { image.inverse() } else { image };
            image.letters.into_iter()
        }))
    }

    /// Relabels generators letter by letter.
    pub fn map_generators(&self, f: impl Fn(&Generator) -> Generator) -> Word {
        Word::reduce(self.letters.iter().map(|l| Letter::new(f(&l.gen), l.inverse)))
    }

    /// Cyclic reduction: strips matching inverse letters from both ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = 0;
        let mut e = self.letters.len();
        while e >= s + 2 && self.letters[s].cancels(&self.letters[e - 1]) {
            s += 1;
            e -= 1;
        }
        Word { letters: self.letters[s..e].to_vec() }
    }

    /// True when `self` and `other` define the same relator, i.e. agree up to
    /// cyclic permutation and inversion after cyclic reduction.
    pub fn same_relator(&self, other: &Word) -> bool {
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        if a.len() != b.len() {
            return false;
        }
        if a.is_identity() {
            return true;
        }
        let is_rotation = |x: &Word, y: &Word| {
            let n = x.len();
            (0..n).any(|r| (0..n).all(|i| x.letters[(i + r) % n] == y.letters[i]))
        };
        is_rotation(&a, &b) || is_rotation(&a, &b.inverse())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A free group on an ordered alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    alphabet: Vec<Generator>,
}

impl FreeGroup {
    pub fn new(alphabet: Vec<Generator>) -> Self {
        FreeGroup { alphabet }
    }

    pub fn from_names(names: &[&str]) -> Result<Self, FreeGroupError> {
        names.iter().map(|n| Generator::new(n)).collect::<Result<_, _>>().map(FreeGroup::new)
    }

    pub fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn generator(&self, name: &str) -> Result<Generator, FreeGroupError> {
        self.alphabet
            .iter()
            .find(|g| g.name() == name)
            .cloned()
            .ok_or_else(|| FreeGroupError::UnknownGenerator(name.to_string()))
    }

    /// Reduces a raw sequence of `(symbol, ±1)` pairs.
    pub fn reduce(&self, raw: &[(&str, i8)]) -> Result<Word, FreeGroupError> {
        let letters = raw
            .iter()
            .map(|&(name, sign)| Ok(Letter::new(self.generator(name)?, sign < 0)))
            .collect::<Result<Vec<_>, FreeGroupError>>()?;
        Ok(Word::reduce(letters))
    }

    pub fn check(&self, w: &Word) -> Result<(), FreeGroupError> {
        match w.letters.iter().find(|l| !self.alphabet.contains(&l.gen)) {
            Some(l) => Err(FreeGroupError::AlphabetMismatch(l.gen.to_string())),
            None => Ok(()),
        }
    }

    pub fn concat(&self, u: &Word, v: &Word) -> Result<Word, FreeGroupError> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.concat(v))
    }

    pub fn invert(&self, u: &Word) -> Result<Word, FreeGroupError> {
        self.check(u)?;
        Ok(u.inverse())
    }
}

/// A folded core graph representing a finitely generated subgroup of a free
/// group. Vertex 0 is the basepoint; vertices are numbered canonically by a
/// breadth-first walk from the basepoint, so two graphs of the same subgroup
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupGraph {
    out: Vec<BTreeMap<Generator, usize>>,
    inc: Vec<BTreeMap<Generator, usize>>,
}

/// One step of a basis word: basis element `index`, inverted or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisLetter {
    pub index: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub contained: bool,
    /// The word rewritten in the graph's basis, present when contained.
    pub in_basis: Option<Vec<BasisLetter>>,
}

impl SubgroupGraph {
    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    /// Edges as `(from, label, to)`, sorted.
    pub fn edges(&self) -> Vec<(usize, Generator, usize)> {
        let mut edges: Vec<_> = self
            .out
            .iter()
            .enumerate()
            .flat_map(|(v, m)| m.iter().map(move |(g, &w)| (v, g.clone(), w)))
            .collect();
        edges.sort();
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BTreeMap::len).sum()
    }

    /// Free rank of the subgroup, `E - V + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Index in the free group on `alphabet`: finite exactly when every vertex
    /// has an incoming and an outgoing edge of every label.
    pub fn index(&self, alphabet: &[Generator]) -> Option<usize> {
        let complete = (0..self.vertex_count()).all(|v| {
            alphabet.iter().all(|g| self.out[v].contains_key(g) && self.inc[v].contains_key(g))
        });
        complete.then_some(self.vertex_count())
    }

    fn step(&self, v: usize, l: &Letter) -> Option<usize> {
        let table = if l.inverse { &self.inc[v] } else { &self.out[v] };
        table.get(&l.gen).copied()
    }

    /// Tree paths from the basepoint, by breadth-first search with labels
    /// visited in order (outgoing before incoming).
    fn spanning_tree(&self) -> (Vec<Word>, BTreeSet<(usize, Generator, usize)>) {
        let n = self.vertex_count();
        let mut path: Vec<Option<Word>> = vec![None; n];
        let mut tree = BTreeSet::new();
        path[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let pv = path[v].clone().unwrap();
            for (g, &w) in &self.out[v] {
                if path[w].is_none() {
                    path[w] = Some(pv.concat(&Word::letter(g)));
                    tree.insert((v, g.clone(), w));
                    queue.push_back(w);
                }
            }
            for (g, &w) in &self.inc[v] {
                if path[w].is_none() {
                    path[w] = Some(pv.concat(&Word::letter(g).inverse()));
                    tree.insert((w, g.clone(), v));
                    queue.push_back(w);
                }
            }
        }
        (path.into_iter().map(Option::unwrap).collect(), tree)
    }

    /// A free basis: one element per edge outside the spanning tree, in edge
    /// order.
    pub fn basis(&self) -> Vec<Word> {
        let (path, tree) = self.spanning_tree();
        self.edges()
            .into_iter()
            .filter(|e| !tree.contains(e))
            .map(|(v, g, w)| path[v].concat(&Word::letter(&g)).concat(&path[w].inverse()))
            .collect()
    }

    /// Subgroup membership of a word, with its expression in [`Self::basis`].
    pub fn contains(&self, w: &Word) -> Membership {
        let (_, tree) = self.spanning_tree();
        let non_tree: BTreeMap<(usize, Generator, usize), usize> = self
            .edges()
            .into_iter()
            .filter(|e| !tree.contains(e))
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut v = self.basepoint();
        let mut rewritten: Vec<BasisLetter> = Vec::new();
        for l in w.letters() {
            let Some(next) = self.step(v, l) else {
                return Membership { contained: false, in_basis: None };
            };
            let edge = if l.inverse { (next, l.gen.clone(), v) } else { (v, l.gen.clone(), next) };
            if let Some(&index) = non_tree.get(&edge) {
                let b = BasisLetter { index, inverse: l.inverse };
                if rewritten.last().is_some_and(|p| p.index == b.index && p.inverse != b.inverse) {
                    rewritten.pop();
                } else {
                    rewritten.push(b);
                }
            }
            v = next;
        }
        if v == self.basepoint() {
            Membership { contained: true, in_basis: Some(rewritten) }
        } else {
            Membership { contained: false, in_basis: None }
        }
    }
}

impl Serialize for SubgroupGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Edge<'a> {
            from: usize,
            to: usize,
            label: &'a str,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            vertices: Vec<usize>,
            basepoint: usize,
            edges: Vec<Edge<'a>>,
        }
        let edges = self.edges();
        Repr {
            vertices: (0..self.vertex_count()).collect(),
            basepoint: 0,
            edges: edges.iter().map(|(f, g, t)| Edge { from: *f, to: *t, label: g.name() }).collect(),
        }
        .serialize(s)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Folds the bouquet of loops spelled by `gens` into the core graph of the
/// subgroup they generate.
pub fn stallings_fold(gens: &[Word]) -> SubgroupGraph {
    // Petal graph: one loop at the basepoint per generator word.
    let mut vertex_count = 1;
    let mut edges: Vec<(usize, Generator, usize)> = Vec::new();
    for w in gens {
        let n = w.len();
        let mut prev = 0;
        for (i, l) in w.letters().iter().enumerate() {
            let next = if i + 1 == n {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            if l.inverse {
                edges.push((next, l.gen.clone(), prev));
            } else {
                edges.push((prev, l.gen.clone(), next));
            }
            prev = next;
        }
    }

    let mut uf = UnionFind((0..vertex_count).collect());
    loop {
        let mut changed = false;
        let mut seen_out: BTreeMap<(usize, Generator), usize> = BTreeMap::new();
        let mut seen_in: BTreeMap<(usize, Generator), usize> = BTreeMap::new();
        for (f, g, t) in &edges {
            let (f, t) = (uf.find(*f), uf.find(*t));
            match seen_out.get(&(f, g.clone())) {
                Some(&t2) => changed |= uf.union(t, t2),
                None => {
                    seen_out.insert((f, g.clone()), t);
                }
            }
            let t = uf.find(t);
            let f = uf.find(f);
            match seen_in.get(&(t, g.clone())) {
                Some(&f2) => changed |= uf.union(f, f2),
                None => {
                    seen_in.insert((t, g.clone()), f);
                }
            }
        }
        let mut merged: BTreeSet<(usize, Generator, usize)> = BTreeSet::new();
        for (f, g, t) in edges.drain(..) {
            merged.insert((uf.find(f), g, uf.find(t)));
        }
        edges = merged.into_iter().collect();
        if !changed {
            break;
        }
    }

    // Trim hanging trees away from the basepoint.
    let base = uf.find(0);
    loop {
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for (f, _, t) in &edges {
            *degree.entry(*f).or_default() += 1;
            *degree.entry(*t).or_default() += 1;
        }
        let before = edges.len();
        edges.retain(|(f, _, t)| {
            let leaf = |v: &usize| *v != base && degree[v] <= 1;
            !(leaf(f) || leaf(t))
        });
        if edges.len() == before {
            break;
        }
    }

    canonical_graph(base, &edges)
}

fn canonical_graph(base: usize, edges: &[(usize, Generator, usize)]) -> SubgroupGraph {
    let mut out: BTreeMap<usize, BTreeMap<Generator, usize>> = BTreeMap::new();
    let mut inc: BTreeMap<usize, BTreeMap<Generator, usize>> = BTreeMap::new();
    for (f, g, t) in edges {
        out.entry(*f).or_default().insert(g.clone(), *t);
        inc.entry(*t).or_default().insert(g.clone(), *f);
    }
    let mut number: BTreeMap<usize, usize> = BTreeMap::from([(base, 0)]);
    let mut order = vec![base];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let succ: Vec<usize> = out
            .get(&v)
            .into_iter()
            .flat_map(|m| m.values().copied())
            .chain(inc.get(&v).into_iter().flat_map(|m| m.values().copied()))
            .collect();
        // outgoing targets in label order, then incoming sources in label order
        for w in succ {
            if !number.contains_key(&w) {
                number.insert(w, order.len());
                order.push(w);
            }
        }
    }
    let n = order.len();
    let mut g = SubgroupGraph { out: vec![BTreeMap::new(); n], inc: vec![BTreeMap::new(); n] };
    for (f, label, t) in edges {
        let (f, t) = (number[f], number[t]);
        g.out[f].insert(label.clone(), t);
        g.inc[t].insert(label.clone(), f);
    }
    g
}

pub fn rank(gens: &[Word]) -> usize {
    stallings_fold(gens).rank()
}

/// Whether `gens` freely generate the subgroup they span. A generating set of
/// size n of a free group of rank n is a basis, since free groups are Hopfian.
pub fn is_basis(gens: &[Word]) -> bool {
    !gens.is_empty() && rank(gens) == gens.len()
}

/// Whether `domain[i] -> images[i]` extends to an injective homomorphism
/// from the free group `<domain>`.
pub fn free_hom_injective(domain: &[Word], images: &[Word]) -> Result<bool, FreeGroupError> {
    if domain.len() != images.len() {
        return Err(FreeGroupError::LengthMismatch { expected: domain.len(), got: images.len() });
    }
    if !is_basis(domain) {
        return Err(FreeGroupError::NotABasis);
    }
    Ok(is_basis(images))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> FreeGroup {
        FreeGroup::from_names(&["a", "b"]).unwrap()
    }

    fn w(f: &FreeGroup, raw: &[(&str, i8)]) -> Word {
        f.reduce(raw).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let f = ab();
        assert!(w(&f, &[("a", 1), ("a", -1)]).is_identity());
        assert_eq!(w(&f, &[("a", 1), ("b", 1), ("b", -1), ("a", 1)]), w(&f, &[("a", 1), ("a", 1)]));
        let fixed = w(&f, &[("b", -1), ("a", 1), ("b", -1)]);
        assert_eq!(fixed.len(), 3);
        assert_eq!(fixed.to_string(), "b^-1 a b^-1");
        assert_eq!(f.reduce(&[("c", 1)]), Err(FreeGroupError::UnknownGenerator("c".into())));
    }

    #[test]
    fn concat_and_invert() {
        let f = FreeGroup::from_names(&["a", "b", "t"]).unwrap();
        let a = w(&f, &[("a", 1)]);
        assert!(f.concat(&a, &a.inverse()).unwrap().is_identity());
        let tat = w(&f, &[("t", 1), ("a", 1), ("t", -1)]);
        assert_eq!(f.invert(&tat).unwrap(), w(&f, &[("t", 1), ("a", -1), ("t", -1)]));
        let ba = w(&f, &[("b", -1), ("a", 1)]);
        assert_eq!(f.concat(&ba, &ba).unwrap().to_string(), "b^-1 a b^-1 a");
        let c = Word::letter(&Generator::new("c").unwrap());
        assert_eq!(f.concat(&a, &c), Err(FreeGroupError::AlphabetMismatch("c".into())));
    }

    #[test]
    fn generator_names() {
        assert!(Generator::new("a_1").is_ok());
        assert!(Generator::new("b@-2").is_ok());
        assert!(Generator::new("1a").is_err());
        assert!(Generator::new("a@").is_err());
        let g = Generator::new("a").unwrap().at_level(3);
        assert_eq!(g.name(), "a@3");
        assert_eq!(g.shift_level(-5).name(), "a@-2");
    }

    #[test]
    fn fold_single_loop() {
        let f = ab();
        let g = stallings_fold(&[w(&f, &[("a", 1)])]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.rank(), 1);
        let trivial = stallings_fold(&[]);
        assert_eq!((trivial.vertex_count(), trivial.rank()), (1, 0));
    }

    #[test]
    fn fold_merges_powers() {
        let f = ab();
        let a2 = w(&f, &[("a", 1), ("a", 1)]);
        let a3 = w(&f, &[("a", 1), ("a", 1), ("a", 1)]);
        let g = stallings_fold(&[a2.clone(), a3.clone()]);
        assert_eq!(g.rank(), 1);
        assert!(!is_basis(&[a2, a3]));
        assert!(is_basis(&[w(&f, &[("a", 1)]), w(&f, &[("b", 1)])]));
    }

    #[test]
    fn membership_dies_off_path() {
        let f = ab();
        let gens = [w(&f, &[("a", 1)]), w(&f, &[("b", -1), ("a", 1), ("b", -1)])];
        let g = stallings_fold(&gens);
        assert_eq!(g.rank(), 2);
        assert!(g.contains(&gens[0]).contained);
        assert!(!g.contains(&w(&f, &[("b", 1)])).contained);
    }

    #[test]
    fn rewrite_in_basis_evaluates_back() {
        let f = ab();
        let gens = [w(&f, &[("a", 1), ("a", 1)]), w(&f, &[("b", 1), ("a", 1), ("b", -1)])];
        let g = stallings_fold(&gens);
        let basis = g.basis();
        let target = gens[1].concat(&gens[0].inverse()).concat(&gens[1]);
        let m = g.contains(&target);
        let rebuilt = m.in_basis.unwrap().iter().fold(Word::identity(), |acc, b| {
            let e = &basis[b.index];
            acc.concat(&if b.inverse { e.inverse() } else { e.clone() })
        });
        assert_eq!(rebuilt, target);
    }

    #[test]
    fn same_relator_up_to_rotation_and_inverse() {
        let f = ab();
        let r = w(&f, &[("a", 1), ("b", 1), ("a", -1), ("b", -1)]);
        let rot = w(&f, &[("b", 1), ("a", -1), ("b", -1), ("a", 1)]);
        assert!(r.same_relator(&rot));
        assert!(r.same_relator(&r.inverse()));
        assert!(!r.same_relator(&w(&f, &[("a", 1), ("b", 1)])));
    }

    #[test]
    fn hom_injectivity_errors() {
        let f = ab();
        let a = w(&f, &[("a", 1)]);
        assert_eq!(
            free_hom_injective(&[a.clone()], &[]),
            Err(FreeGroupError::LengthMismatch { expected: 1, got: 0 })
        );
        let a2 = a.pow(2);
        assert_eq!(free_hom_injective(&[a2.clone(), a.clone()], &[a.clone(), a.clone()]), Err(FreeGroupError::NotABasis));
        let b = w(&f, &[("b", 1)]);
        assert_eq!(free_hom_injective(&[a.clone(), b], &[a2, a.pow(3)]), Ok(false));
    }
}
