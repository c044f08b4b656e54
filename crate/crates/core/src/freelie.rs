//! Free graded Lie algebras over the rationals in Lyndon coordinates, and
//! graded quotients by homogeneous ideals.
//!
//! A Lyndon word `w` stands for its standard bracketing `P(w)`: a single
//! letter is a generator, otherwise `P(w) = [P(u), P(v)]` where `v` is the
//! longest proper Lyndon suffix of `w = uv`. Expanded in the tensor algebra,
//! `P(w)` equals `w` plus lexicographically larger words, so any Lie
//! polynomial is decomposed by repeatedly peeling off its smallest word.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::foxmagnus::TruncatedTensorSeries;
use crate::sparse::{add_entry, add_scaled, Echelon, SparseVec};
use crate::Rational;

/// Default truncation degree for graded quotients.
pub const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("element of degree {degree} exceeds truncation degree {cap}")]
    DegreeExceedsCap { degree: usize, cap: usize },
    #[error("tensor is not a Lie polynomial (smallest word {0:?} is not Lyndon)")]
    NotLie(Vec<usize>),
    #[error("`{0:?}` is not a Lyndon word over the alphabet")]
    NotLyndon(Vec<usize>),
    #[error("relation {index} is not homogeneous")]
    NonHomogeneous { index: usize },
    #[error("relation {index} is zero")]
    ZeroRelation { index: usize },
    #[error("generator degrees must be positive and one per generator")]
    BadDegrees,
}

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Dimension of the degree-`k` piece of the free Lie algebra on `n` generators:
/// `(1/k) Σ_{d|k} μ(d) n^{k/d}`.
pub fn witt_dimension(n: u64, k: u64) -> BigInt {
    assert!(k >= 1);
    let sum: BigInt = divisors(k)
        .into_iter()
        .map(|d| BigInt::from(mobius(d)) * num_traits::pow(BigInt::from(n), (k / d) as usize))
        .sum();
    let (q, r) = sum.div_rem(&BigInt::from(k));
    debug_assert!(r.is_zero());
    q
}

pub fn is_lyndon(w: &[usize]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words over `1..=n` of length at most `max_len`, in lexicographic order (Duval).
pub fn lyndon_words_upto(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        out.push(w.iter().map(|&c| c + 1).collect());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

/// Lyndon words of length exactly `k` over `n` letters, lexicographically ordered.
pub fn lyndon_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    lyndon_words_upto(n, k).into_iter().filter(|w| w.len() == k).collect()
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[usize]) -> (&[usize], &[usize]) {
    assert!(w.len() >= 2);
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (&w[..i], &w[i..]);
        }
    }
    unreachable!("the last letter is always Lyndon")
}

pub(crate) type Tensor = BTreeMap<Vec<usize>, Rational>;

fn tensor_product(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let mut m = u.clone();
            m.extend_from_slice(v);
            add_entry(&mut out, m, cu * cv);
        }
    }
    out
}

fn tensor_commutator(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = tensor_product(a, b);
    add_scaled(&mut out, &tensor_product(b, a), &-Rational::one());
    out
}

/// Caches standard-bracketing expansions of Lyndon words.
#[derive(Default)]
pub(crate) struct LyndonExpander {
    cache: HashMap<Vec<usize>, Tensor>,
}

impl LyndonExpander {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn expand(&mut self, w: &[usize]) -> Tensor {
        if let Some(t) = self.cache.get(w) {
            return t.clone();
        }
        let t = if w.len() == 1 {
            Tensor::from([(w.to_vec(), Rational::one())])
        } else {
            let (u, v) = standard_factorization(w);
            let (tu, tv) = (self.expand(u), self.expand(v));
            tensor_commutator(&tu, &tv)
        };
        self.cache.insert(w.to_vec(), t.clone());
        t
    }

    pub fn embed(&mut self, terms: &BTreeMap<Vec<usize>, Rational>) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in terms {
            let e = self.expand(w);
            add_scaled(&mut out, &e, c);
        }
        out
    }

    /// Lyndon coordinates of a Lie polynomial given in the tensor algebra.
    pub fn decompose(&mut self, mut t: Tensor) -> Result<BTreeMap<Vec<usize>, Rational>, LieError> {
        let mut out = BTreeMap::new();
        while let Some((w, c)) = t.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            if !is_lyndon(&w) {
                return Err(LieError::NotLie(w));
            }
            let e = self.expand(&w);
            add_scaled(&mut t, &e, &-c.clone());
            debug_assert!(!t.contains_key(&w));
            out.insert(w, c);
        }
        Ok(out)
    }

    /// `[P(u), P(v)]` in Lyndon coordinates.
    pub fn bracket_words(&mut self, u: &[usize], v: &[usize]) -> BTreeMap<Vec<usize>, Rational> {
        let (tu, tv) = (self.expand(u), self.expand(v));
        self.decompose(tensor_commutator(&tu, &tv)).expect("brackets of Lie elements are Lie")
    }
}

/// Element of the free Lie algebra on `alphabet` generators, in Lyndon coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    alphabet: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl LieElement {
    pub fn zero(alphabet: usize) -> Self {
        LieElement { alphabet, terms: BTreeMap::new() }
    }

    pub fn generator(alphabet: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= alphabet, "generator {i} out of range 1..={alphabet}");
        LieElement { alphabet, terms: BTreeMap::from([(vec![i], Rational::one())]) }
    }

    /// Builds an element from Lyndon-word coordinates.
    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, Rational)>>(alphabet: usize, terms: I) -> Result<Self, LieError> {
        let mut out = Self::zero(alphabet);
        for (w, c) in terms {
            if !is_lyndon(&w) || w.iter().any(|&l| l == 0 || l > alphabet) {
                return Err(LieError::NotLyndon(w));
            }
            add_entry(&mut out.terms, w, c);
        }
        Ok(out)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, w: &[usize]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common word length of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Vec::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Degree with respect to per-generator weights (`degrees[i-1]` for `x_i`).
    pub fn weighted_degree(&self, degrees: &[usize]) -> Option<usize> {
        let mut ds = self.terms.keys().map(|w| w.iter().map(|&l| degrees[l - 1]).sum::<usize>());
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.alphabet = self.alphabet.max(other.alphabet);
        add_scaled(&mut out.terms, &other.terms, &Rational::one());
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        let mut out = Self::zero(self.alphabet);
        add_scaled(&mut out.terms, &self.terms, c);
        out
    }

    /// Same coordinates on a larger alphabet.
    pub fn widen(&self, alphabet: usize) -> LieElement {
        assert!(alphabet >= self.alphabet);
        LieElement { alphabet, terms: self.terms.clone() }
    }

    /// Renders as a sum of bracket expressions using the given generator names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        LieDisplay { elem: self, names: Some(names) }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        LieDisplay { elem: self, names: None }.fmt(f)
    }
}

struct LieDisplay<'a> {
    elem: &'a LieElement,
    names: Option<&'a [String]>,
}

impl LieDisplay<'_> {
    fn word(&self, w: &[usize]) -> String {
        if w.len() == 1 {
            return match self.names.and_then(|n| n.get(w[0] - 1)) {
                Some(n) => n.clone(),
                None => format!("x{}", w[0]),
            };
        }
        let (u, v) = standard_factorization(w);
        format!("[{},{}]", self.word(u), self.word(v))
    }
}

impl fmt::Display for LieDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.elem.terms.iter().enumerate() {
            let body = self.word(w);
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

/// Lie bracket, computed in the tensor algebra and decomposed back.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
    if a.alphabet != b.alphabet {
        return Err(LieError::AlphabetMismatch(a.alphabet, b.alphabet));
    }
    let mut ex = LyndonExpander::new();
    let t = tensor_commutator(&ex.embed(&a.terms), &ex.embed(&b.terms));
    Ok(LieElement { alphabet: a.alphabet, terms: ex.decompose(t)? })
}

/// Image of `a` in the tensor algebra, as a series truncated at `cap`.
pub fn tensor_embed(a: &LieElement, cap: usize) -> Result<TruncatedTensorSeries, LieError> {
    if let Some(d) = a.terms.keys().map(Vec::len).max() {
        if d > cap {
            return Err(LieError::DegreeExceedsCap { degree: d, cap });
        }
    }
    let mut ex = LyndonExpander::new();
    Ok(TruncatedTensorSeries::from_terms(a.alphabet, cap, ex.embed(&a.terms)))
}

/// Lyndon coordinates of a series with zero constant term that is a Lie polynomial.
pub fn lyndon_decompose(s: &TruncatedTensorSeries, alphabet: usize) -> Result<LieElement, LieError> {
    let mut ex = LyndonExpander::new();
    let terms = ex.decompose(s.terms().clone())?;
    if let Some(w) = terms.keys().find(|w| w.iter().any(|&l| l > alphabet)) {
        return Err(LieError::NotLyndon(w.clone()));
    }
    Ok(LieElement { alphabet, terms })
}

/// Dynkin map: each monomial `x_{i_1}…x_{i_k}` goes to `(1/k)[[x_{i_1}, x_{i_2}], …, x_{i_k}]`.
/// Fixes every Lie polynomial with zero constant term.
pub fn dynkin_map(s: &TruncatedTensorSeries) -> TruncatedTensorSeries {
    let mut out = TruncatedTensorSeries::zero(s.alphabet(), s.cap());
    for (m, c) in s.terms() {
        if m.is_empty() {
            continue;
        }
        let mut t = Tensor::from([(vec![m[0]], Rational::one())]);
        for &l in &m[1..] {
            let y = Tensor::from([(vec![l], Rational::one())]);
            t = tensor_commutator(&t, &y);
        }
        let f = c / Rational::from_integer(BigInt::from(m.len()));
        for (w, v) in t {
            out.add_term(w, v * &f);
        }
    }
    out
}

/// `lie(x_1..x_n) / ideal(relations)`, with generator degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLiePresentation {
    gen_count: usize,
    gen_degrees: Vec<usize>,
    relations: Vec<LieElement>,
}

impl GradedLiePresentation {
    /// All generators in degree 1.
    pub fn new(gen_count: usize, relations: Vec<LieElement>) -> Result<Self, LieError> {
        Self::with_degrees(vec![1; gen_count], relations)
    }

    pub fn free(gen_count: usize) -> Self {
        GradedLiePresentation { gen_count, gen_degrees: vec![1; gen_count], relations: Vec::new() }
    }

    pub fn with_degrees(gen_degrees: Vec<usize>, relations: Vec<LieElement>) -> Result<Self, LieError> {
        if gen_degrees.iter().any(|&d| d == 0) {
            return Err(LieError::BadDegrees);
        }
        let gen_count = gen_degrees.len();
        let mut rels = Vec::with_capacity(relations.len());
        for (index, r) in relations.into_iter().enumerate() {
            if r.alphabet > gen_count {
                return Err(LieError::AlphabetMismatch(r.alphabet, gen_count));
            }
            if r.is_zero() {
                return Err(LieError::ZeroRelation { index });
            }
            if r.weighted_degree(&gen_degrees).is_none() {
                return Err(LieError::NonHomogeneous { index });
            }
            rels.push(r.widen(gen_count));
        }
        Ok(GradedLiePresentation { gen_count, gen_degrees, relations: rels })
    }

    pub fn gen_count(&self) -> usize {
        self.gen_count
    }

    pub fn gen_degrees(&self) -> &[usize] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[LieElement] {
        &self.relations
    }

    pub fn relation_degree(&self, i: usize) -> usize {
        self.relations[i].weighted_degree(&self.gen_degrees).expect("relations are homogeneous")
    }
}

/// Finite-degree truncation of a graded Lie algebra with explicit structure constants.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    gen_count: usize,
    max_degree: usize,
    /// `basis[n-1]` holds the Lyndon words representing the degree-`n` basis.
    basis: Vec<Vec<Vec<usize>>>,
    /// `brackets[&(a, b)][p * dim_b + q]` is `[e^a_p, e^b_q]` in degree-`(a+b)` coordinates.
    brackets: BTreeMap<(usize, usize), Vec<SparseVec<usize>>>,
}

impl GradedLieAlgebra {
    /// Builds an algebra from raw structure constants; `brackets` must cover
    /// every pair `(a, b)` with `a + b <= max_degree`.
    pub fn from_parts(
        gen_count: usize,
        basis: Vec<Vec<Vec<usize>>>,
        brackets: BTreeMap<(usize, usize), Vec<SparseVec<usize>>>,
    ) -> Self {
        let max_degree = basis.len();
        GradedLieAlgebra { gen_count, max_degree, basis, brackets }
    }

    pub fn gen_count(&self) -> usize {
        self.gen_count
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, n: usize) -> usize {
        if n == 0 || n > self.max_degree {
            0
        } else {
            self.basis[n - 1].len()
        }
    }

    /// Dimensions of degrees `1..=max_degree`.
    pub fn dims(&self) -> Vec<usize> {
        (1..=self.max_degree).map(|n| self.dim(n)).collect()
    }

    pub fn basis_labels(&self, n: usize) -> &[Vec<usize>] {
        &self.basis[n - 1]
    }

    /// `[e^a_p, e^b_q]`, empty when `a + b` exceeds the max degree.
    pub fn bracket_basis(&self, a: usize, p: usize, b: usize, q: usize) -> SparseVec<usize> {
        if a + b > self.max_degree {
            return SparseVec::new();
        }
        self.brackets[&(a, b)][p * self.dim(b) + q].clone()
    }

    /// Bracket of homogeneous elements given by coordinates in degrees `a` and `b`.
    pub fn bracket(&self, a: usize, u: &SparseVec<usize>, b: usize, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        if a + b > self.max_degree {
            return out;
        }
        let table = &self.brackets[&(a, b)];
        let db = self.dim(b);
        for (p, cu) in u {
            for (q, cv) in v {
                add_scaled(&mut out, &table[p * db + q], &(cu * cv));
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity on all basis triples;
    /// returns the first failing `(degree, index)` triple.
    pub fn check_jacobi(&self) -> Result<(), [(usize, usize); 3]> {
        let n = self.max_degree;
        for a in 1..=n {
            for b in 1..=n.saturating_sub(a) {
                for p in 0..self.dim(a) {
                    for q in 0..self.dim(b) {
                        let mut s = self.bracket_basis(a, p, b, q);
                        add_scaled(&mut s, &self.bracket_basis(b, q, a, p), &Rational::one());
                        if !s.is_empty() {
                            return Err([(a, p), (b, q), (0, 0)]);
                        }
                    }
                }
            }
        }
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    if a + b + c > n {
                        continue;
                    }
                    for p in 0..self.dim(a) {
                        for q in 0..self.dim(b) {
                            let xy = self.bracket_basis(a, p, b, q);
                            for r in 0..self.dim(c) {
                                let z = SparseVec::from([(r, Rational::one())]);
                                let x = SparseVec::from([(p, Rational::one())]);
                                let y = SparseVec::from([(q, Rational::one())]);
                                let mut total = self.bracket(a + b, &xy, c, &z);
                                let yz = self.bracket_basis(b, q, c, r);
                                add_scaled(&mut total, &self.bracket(b + c, &yz, a, &x), &Rational::one());
                                let zx = self.bracket_basis(c, r, a, p);
                                add_scaled(&mut total, &self.bracket(c + a, &zx, b, &y), &Rational::one());
                                if !total.is_empty() {
                                    return Err([(a, p), (b, q), (c, r)]);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Lyndon words of weighted degree `1..=max_degree`, per degree, in lex order.
fn weighted_lyndon_basis(degrees: &[usize], max_degree: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new(); max_degree];
    for w in lyndon_words_upto(degrees.len(), max_degree) {
        let d: usize = w.iter().map(|&l| degrees[l - 1]).sum();
        if d <= max_degree {
            out[d - 1].push(w);
        }
    }
    out
}

/// Graded quotient of a free Lie algebra by a homogeneous ideal, through `max_degree`.
///
/// The degree-`n` piece of the ideal is spanned by the relations of degree
/// `n` together with `[x_i, I_{n - deg x_i}]`; the quotient basis is the set
/// of Lyndon words that are not pivots of the ideal's echelon form.
pub fn graded_quotient(p: &GradedLiePresentation, max_degree: usize) -> Result<GradedLieAlgebra, LieError> {
    let n_gens = p.gen_count;
    let degrees = &p.gen_degrees;
    let free_basis = weighted_lyndon_basis(degrees, max_degree);
    let index: Vec<HashMap<&[usize], usize>> = free_basis
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect())
        .collect();
    let to_coords = |deg: usize, terms: &BTreeMap<Vec<usize>, Rational>| -> SparseVec<usize> {
        terms.iter().map(|(w, c)| (index[deg - 1][w.as_slice()], c.clone())).collect()
    };

    let mut ex = LyndonExpander::new();
    let mut ideals: Vec<Echelon<usize>> = Vec::with_capacity(max_degree);
    for deg in 1..=max_degree {
        let mut ech = Echelon::new();
        for (i, r) in p.relations.iter().enumerate() {
            if p.relation_degree(i) == deg {
                ech.insert(to_coords(deg, &r.terms));
            }
        }
        for g in 1..=n_gens {
            let gd = degrees[g - 1];
            if gd >= deg {
                continue;
            }
            let lower = &ideals[deg - gd - 1];
            if lower.rank() == 0 {
                continue;
            }
            // [x_g, L_w] for every w in the lower degree, on demand
            let mut ad: HashMap<usize, SparseVec<usize>> = HashMap::new();
            for row in lower.rows() {
                let mut v = SparseVec::new();
                for (&j, c) in row {
                    let img = ad.entry(j).or_insert_with(|| {
                        let w = &free_basis[deg - gd - 1][j];
                        to_coords(deg, &ex.bracket_words(&[g], w))
                    });
                    add_scaled(&mut v, img, c);
                }
                ech.insert(v);
            }
        }
        ideals.push(ech);
    }

    // quotient bases and the map from free coordinates to quotient coordinates
    let mut basis = Vec::with_capacity(max_degree);
    let mut position: Vec<HashMap<usize, usize>> = Vec::with_capacity(max_degree);
    for deg in 1..=max_degree {
        let mut labels = Vec::new();
        let mut pos = HashMap::new();
        for (j, w) in free_basis[deg - 1].iter().enumerate() {
            if !ideals[deg - 1].is_pivot(&j) {
                pos.insert(j, labels.len());
                labels.push(w.clone());
            }
        }
        basis.push(labels);
        position.push(pos);
    }

    let mut brackets = BTreeMap::new();
    for a in 1..=max_degree {
        for b in 1..=max_degree - a {
            if a > b {
                continue;
            }
            let (da, db) = (basis[a - 1].len(), basis[b - 1].len());
            let mut table = vec![SparseVec::new(); da * db];
            for pa in 0..da {
                for qb in 0..db {
                    if a == b && qb < pa {
                        let mut v = table[qb * db + pa].clone();
                        for c in v.values_mut() {
                            *c = -c.clone();
                        }
                        table[pa * db + qb] = v;
                        continue;
                    }
                    if a == b && pa == qb {
                        continue;
                    }
                    let free = to_coords(a + b, &ex.bracket_words(&basis[a - 1][pa], &basis[b - 1][qb]));
                    let reduced = ideals[a + b - 1].reduce(free);
                    table[pa * db + qb] = reduced.into_iter().map(|(j, c)| (position[a + b - 1][&j], c)).collect();
                }
            }
            if a != b {
                let mut rev = vec![SparseVec::new(); da * db];
                for pa in 0..da {
                    for qb in 0..db {
                        rev[qb * da + pa] =
                            table[pa * db + qb].iter().map(|(k, c)| (*k, -c.clone())).collect();
                    }
                }
                brackets.insert((b, a), rev);
            }
            brackets.insert((a, b), table);
        }
    }

    Ok(GradedLieAlgebra { gen_count: n_gens, max_degree, basis, brackets })
}

/// Per-degree dimensions of a derived-series term and of the matching quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedDims {
    pub level: usize,
    /// `dim g^{(level)}_n` for `n = 1..=max_degree`.
    pub ideal: Vec<usize>,
    /// `dim (g / g^{(level)})_n`.
    pub quotient: Vec<usize>,
}

/// Dimensions of `g^{(level)}` and `g / g^{(level)}`, with `g^{(0)} = g` and
/// `g^{(i)} = [g^{(i-1)}, g^{(i-1)}]`.
pub fn derived_dims(g: &GradedLieAlgebra, level: usize) -> DerivedDims {
    assert!(level >= 1, "derived level starts at 1");
    let n = g.max_degree;
    // subspace bases per degree, as reduced echelon rows
    let mut current: Vec<Vec<SparseVec<usize>>> = (1..=n)
        .map(|d| (0..g.dim(d)).map(|p| SparseVec::from([(p, Rational::one())])).collect())
        .collect();
    for _ in 0..level {
        let mut next = Vec::with_capacity(n);
        for deg in 1..=n {
            let mut ech = Echelon::new();
            for a in 1..deg {
                let b = deg - a;
                if a > b {
                    break;
                }
                for u in &current[a - 1] {
                    for v in &current[b - 1] {
                        if ech.rank() == g.dim(deg) {
                            break;
                        }
                        ech.insert(g.bracket(a, u, b, v));
                    }
                }
            }
            next.push(ech.into_reduced().rows().cloned().collect());
        }
        current = next;
    }
    let ideal: Vec<usize> = current.iter().map(Vec::len).collect();
    let quotient = (1..=n).map(|d| g.dim(d) - ideal[d - 1]).collect();
    DerivedDims { level, ideal, quotient }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn gen(n: usize, i: usize) -> LieElement {
        LieElement::generator(n, i)
    }

    fn br(a: &LieElement, b: &LieElement) -> LieElement {
        bracket(a, b).unwrap()
    }

    /// Brute-force Lyndon count: all words, filtered by definition.
    fn brute_lyndon_count(n: usize, k: usize) -> usize {
        let mut count = 0;
        let total = n.pow(k as u32);
        for code in 0..total {
            let mut w = Vec::with_capacity(k);
            let mut c = code;
            for _ in 0..k {
                w.push(c % n + 1);
                c /= n;
            }
            w.reverse();
            if is_lyndon(&w) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn witt_rank_two_matches_enumeration() {
        let expected = [2, 1, 2, 3, 6, 9];
        for (k, &e) in (1..=6).zip(expected.iter()) {
            assert_eq!(brute_lyndon_count(2, k), e);
            assert_eq!(witt_dimension(2, k as u64), BigInt::from(e));
        }
        assert_eq!(witt_dimension(4, 3), BigInt::from(20));
        for k in 2..6 {
            assert!(witt_dimension(1, k).is_zero());
        }
    }

    #[test]
    fn small_lyndon_bases() {
        assert_eq!(lyndon_basis(2, 2), vec![vec![1, 2]]);
        assert_eq!(lyndon_basis(2, 3), vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert_eq!(lyndon_basis(3, 1), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn bracket_examples() {
        let (x1, x2) = (gen(2, 1), gen(2, 2));
        assert_eq!(br(&x1, &x2), LieElement::from_terms(2, [(vec![1, 2], q(1))]).unwrap());
        let a = br(&x1, &x2).add(&x1);
        assert!(br(&a, &a).is_zero());
        let lhs = br(&br(&x1, &x2), &x1);
        assert_eq!(lhs, LieElement::from_terms(2, [(vec![1, 1, 2], q(-1))]).unwrap());
        assert!(bracket(&gen(2, 1), &gen(3, 1)).is_err());
    }

    #[test]
    fn embedding_of_commutator() {
        let e = tensor_embed(&br(&gen(2, 1), &gen(2, 2)), 3).unwrap();
        assert_eq!(e, TruncatedTensorSeries::from_terms(2, 3, [(vec![1, 2], q(1)), (vec![2, 1], q(-1))]));
        assert_eq!(tensor_embed(&gen(2, 1), 1).unwrap(), TruncatedTensorSeries::from_terms(2, 1, [(vec![1], q(1))]));
        assert!(tensor_embed(&br(&gen(2, 1), &gen(2, 2)), 1).is_err());
    }

    #[test]
    fn decomposition_rejects_non_lie() {
        let s = TruncatedTensorSeries::from_terms(2, 2, [(vec![2, 1], q(1))]);
        assert!(matches!(lyndon_decompose(&s, 2), Err(LieError::NotLie(_))));
    }

    #[test]
    fn free_quotient_has_witt_dims() {
        let g = graded_quotient(&GradedLiePresentation::free(2), 6).unwrap();
        assert_eq!(g.dims(), vec![2, 1, 2, 3, 6, 9]);
        assert!(g.check_jacobi().is_ok());
    }

    #[test]
    fn borromean_quotient() {
        let (x, y, z) = (gen(3, 1), gen(3, 2), gen(3, 3));
        let rels = vec![br(&x, &br(&y, &z)), br(&z, &br(&y, &x))];
        let g = graded_quotient(&GradedLiePresentation::new(3, rels).unwrap(), 3).unwrap();
        assert_eq!(g.dims(), vec![3, 3, 6]);
    }

    #[test]
    fn surface_quotient_low_degrees() {
        let v: Vec<_> = (1..=4).map(|i| gen(4, i)).collect();
        let rel = br(&v[0], &v[1]).add(&br(&v[2], &v[3]));
        let g = graded_quotient(&GradedLiePresentation::new(4, vec![rel]).unwrap(), 3).unwrap();
        assert_eq!(g.dims(), vec![4, 5, 16]);
        assert!(g.check_jacobi().is_ok());
    }

    #[test]
    fn derived_dims_free_rank_two() {
        let g = graded_quotient(&GradedLiePresentation::free(2), 6).unwrap();
        let d = derived_dims(&g, 2);
        assert_eq!(d.quotient, vec![2, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn derived_dims_abelian() {
        let rel = br(&gen(2, 1), &gen(2, 2));
        let g = graded_quotient(&GradedLiePresentation::new(2, vec![rel]).unwrap(), 4).unwrap();
        assert_eq!(g.dims(), vec![2, 0, 0, 0]);
        let d = derived_dims(&g, 1);
        assert_eq!(d.ideal, vec![0, 0, 0, 0]);
    }

    #[test]
    fn presentation_validation() {
        let mixed = gen(2, 1).add(&br(&gen(2, 1), &gen(2, 2)));
        assert_eq!(GradedLiePresentation::new(2, vec![mixed]), Err(LieError::NonHomogeneous { index: 0 }));
        assert_eq!(GradedLiePresentation::new(2, vec![LieElement::zero(2)]), Err(LieError::ZeroRelation { index: 0 }));
    }

    #[test]
    fn weighted_generators() {
        // lie(x, w) with deg w = 2: degree-2 piece is spanned by [x,x]=0 and w
        let g = graded_quotient(&GradedLiePresentation::with_degrees(vec![1, 2], vec![]).unwrap(), 4).unwrap();
        assert_eq!(g.dims(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn display_uses_standard_bracketing() {
        let e = br(&gen(2, 1), &br(&gen(2, 1), &gen(2, 2)));
        assert_eq!(e.to_string(), "[x1,[x1,x2]]");
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(e.scale(&q(-2)).display_with(&names).to_string(), "-2*[x,[x,y]]");
    }
}
