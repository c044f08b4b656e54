//! Fox calculus, truncated noncommutative power series and Magnus expansions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactla::QMatrix;
use crate::freelie::{self, LieElement};
use crate::sparse::add_entry;
use crate::words::Word;
use crate::Rational;

/// Default truncation degree for weight computations.
pub const DEFAULT_WEIGHT_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MagnusError {
    #[error("generator index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("series has constant term {0}, expected 1")]
    NonUnitConstant(Rational),
    #[error("the identity word has no weight")]
    IdentityWord,
    #[error("projection matrix has {cols} columns but the word uses generator {gen}")]
    DimensionMismatch { cols: usize, gen: usize },
    #[error("linear part of the expansion is nonzero (coefficient {coefficient} at y{index})")]
    NonzeroLinearPart { index: usize, coefficient: Rational },
    #[error("lowest homogeneous part is not a Lie element")]
    NotPrimitive,
    #[error("truncation degree must be at least 1")]
    ZeroCap,
}

/// Finite rational combination of free-group elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, Rational>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word, c: Rational) -> Self {
        let mut g = Self::zero();
        g.add_term(w, c);
        g
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        add_entry(&mut self.terms, w, c);
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Augmentation: sum of coefficients.
    pub fn augmentation(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Linear extension of the Fox derivative `∂_gen`.
    pub fn fox_derivative(&self, gen: usize) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, c) in &self.terms {
            for (u, d) in fox_terms(w, gen) {
                out.add_term(u, c * Rational::from_integer(d.into()));
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `∂_gen(w)` as a list of `(word, ±1)`; uses `∂(uv) = ∂u + u ∂v` since `ε(v) = 1`.
fn fox_terms(w: &Word, gen: usize) -> Vec<(Word, i64)> {
    let mut out = Vec::new();
    let mut prefix = Word::identity();
    for (g, s) in w.letters() {
        let letter = Word::power(g, s);
        if g == gen {
            if s > 0 {
                out.push((prefix.clone(), 1));
                prefix = prefix.mul(&letter);
            } else {
                prefix = prefix.mul(&letter);
                out.push((prefix.clone(), -1));
            }
        } else {
            prefix = prefix.mul(&letter);
        }
    }
    out
}

/// Fox derivative `∂_gen(w)` in the rational group ring of the free group on `gen_count` letters.
pub fn fox_derivative(w: &Word, gen: usize, gen_count: usize) -> Result<GroupRingElement, MagnusError> {
    if gen == 0 || gen > gen_count {
        return Err(MagnusError::IndexOutOfRange { index: gen, count: gen_count });
    }
    let mut out = GroupRingElement::zero();
    for (u, d) in fox_terms(w, gen) {
        out.add_term(u, Rational::from_integer(d.into()));
    }
    Ok(out)
}

/// `ε_I(w) = ε(∂_{i_1}(∂_{i_2}(…∂_{i_k}(w))))`, computed purely by Fox calculus.
///
/// Equals the coefficient of `x_I` in the Magnus expansion of `w`.
pub fn epsilon_seq(w: &Word, index: &[usize]) -> Rational {
    let mut g = GroupRingElement::from_word(w.clone(), Rational::one());
    for &i in index.iter().rev() {
        g = g.fox_derivative(i);
        if g.is_zero() {
            return Rational::zero();
        }
    }
    g.augmentation()
}

/// Monomial `x_{i_1} … x_{i_k}` as a sequence of 1-based letters.
pub type Monomial = Vec<usize>;

/// Noncommutative power series in `alphabet` variables, truncated above degree `cap`.
#[derive(Clone, Debug)]
pub struct TruncatedTensorSeries {
    alphabet: usize,
    cap: usize,
    coeffs: BTreeMap<Monomial, Rational>,
}

impl PartialEq for TruncatedTensorSeries {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap && self.coeffs == other.coeffs
    }
}

impl Eq for TruncatedTensorSeries {}

impl TruncatedTensorSeries {
    pub fn zero(alphabet: usize, cap: usize) -> Self {
        TruncatedTensorSeries { alphabet, cap, coeffs: BTreeMap::new() }
    }

    pub fn one(alphabet: usize, cap: usize) -> Self {
        let mut s = Self::zero(alphabet, cap);
        s.coeffs.insert(Vec::new(), Rational::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(alphabet: usize, cap: usize, terms: I) -> Self {
        let mut s = Self::zero(alphabet, cap);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    /// Adds `c * x_m`; terms above the cap are dropped.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.len() > self.cap {
            return;
        }
        debug_assert!(m.iter().all(|&i| i >= 1 && i <= self.alphabet), "letter out of range");
        add_entry(&mut self.coeffs, m, c);
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.coeffs
    }

    pub fn coefficient(&self, m: &[usize]) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree-`k` part as a series with the same cap.
    pub fn homogeneous_part(&self, k: usize) -> TruncatedTensorSeries {
        TruncatedTensorSeries {
            alphabet: self.alphabet,
            cap: self.cap,
            coeffs: self.coeffs.iter().filter(|(m, _)| m.len() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Smallest degree `k >= 1` with a nonzero coefficient.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Vec::len).filter(|&l| l >= 1).min()
    }

    pub fn add(&self, other: &TruncatedTensorSeries) -> TruncatedTensorSeries {
        let mut out = self.with_cap(self.cap.min(other.cap));
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TruncatedTensorSeries) -> TruncatedTensorSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> TruncatedTensorSeries {
        let mut out = Self::zero(self.alphabet, self.cap);
        for (m, v) in &self.coeffs {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Same coefficients, truncated at a (possibly smaller) cap.
    pub fn with_cap(&self, cap: usize) -> TruncatedTensorSeries {
        TruncatedTensorSeries {
            alphabet: self.alphabet,
            cap,
            coeffs: self.coeffs.iter().filter(|(m, _)| m.len() <= cap).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Truncated product; the result keeps the smaller cap.
    pub fn mul(&self, other: &TruncatedTensorSeries) -> TruncatedTensorSeries {
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.alphabet.max(other.alphabet), cap);
        for (a, ca) in &self.coeffs {
            if a.len() > cap {
                continue;
            }
            for (b, cb) in &other.coeffs {
                if a.len() + b.len() > cap {
                    continue;
                }
                let mut m = a.clone();
                m.extend_from_slice(b);
                add_entry(&mut out.coeffs, m, ca * cb);
            }
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &TruncatedTensorSeries) -> TruncatedTensorSeries {
        self.mul(other).sub(&other.mul(self))
    }
}

impl fmt::Display for TruncatedTensorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut ordered: Vec<_> = self.coeffs.iter().collect();
        ordered.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        for (m, c) in ordered {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_empty() {
                write!(f, "{c}")?;
            } else {
                let mono: Vec<String> = m.iter().map(|i| format!("x{i}")).collect();
                write!(f, "({c}){}", mono.join(""))?;
            }
        }
        Ok(())
    }
}

/// Inverse of a series with constant term 1, by the geometric series.
pub fn series_inverse(s: &TruncatedTensorSeries) -> Result<TruncatedTensorSeries, MagnusError> {
    let c0 = s.constant_term();
    if !c0.is_one() {
        return Err(MagnusError::NonUnitConstant(c0));
    }
    let mut neg_tail = s.scale(&-Rational::one());
    neg_tail.coeffs.remove(&Vec::new());
    let mut out = TruncatedTensorSeries::one(s.alphabet, s.cap);
    let mut power = TruncatedTensorSeries::one(s.alphabet, s.cap);
    for _ in 0..s.cap {
        power = power.mul(&neg_tail);
        if power.is_zero() {
            break;
        }
        out = out.add(&power);
    }
    Ok(out)
}

/// `M(x_g^e)`: `(1 + x_g)^e`, expanded binomially for either sign of `e`.
fn magnus_power(gen: usize, exp: i64, alphabet: usize, cap: usize) -> TruncatedTensorSeries {
    let mut s = TruncatedTensorSeries::one(alphabet, cap);
    // binom(e, k) for integer e of either sign
    let e = Rational::from_integer(exp.into());
    let mut binom = Rational::one();
    for k in 1..=cap {
        binom = binom * (&e - Rational::from_integer((k as i64 - 1).into())) / Rational::from_integer((k as i64).into());
        if binom.is_zero() {
            break;
        }
        s.add_term(vec![gen; k], binom.clone());
    }
    s
}

/// Magnus expansion `M(w)` with `M(x_i) = 1 + x_i`, over the letters of `w`.
pub fn magnus_free(w: &Word, cap: usize) -> TruncatedTensorSeries {
    magnus_free_on(w, w.max_generator().max(1), cap)
}

/// Magnus expansion on an explicit alphabet size.
pub fn magnus_free_on(w: &Word, alphabet: usize, cap: usize) -> TruncatedTensorSeries {
    let mut acc = TruncatedTensorSeries::one(alphabet, cap);
    for s in w.syllables() {
        acc = acc.mul(&magnus_power(s.gen, s.exp, alphabet, cap));
    }
    acc
}

/// Weight of a word relative to a truncation degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Exact(usize),
    /// Every Magnus coefficient through the cap vanishes, so the weight exceeds it.
    ExceedsCap(usize),
}

impl Weight {
    pub fn exact(self) -> Option<usize> {
        match self {
            Weight::Exact(k) => Some(k),
            Weight::ExceedsCap(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialForm {
    pub weight: Weight,
    /// Lie element of degree `weight`; absent when the cap is exceeded.
    pub ini: Option<LieElement>,
}

/// Weight `ω(w)` and initial form of `w`.
///
/// The lowest nonconstant homogeneous part `P` of `M(w)` is sent through the
/// Dynkin map `(1/k) Σ c_I [[x_{i_1}, x_{i_2}], …, x_{i_k}]`; the result is
/// re-embedded and compared against `P`, which fails unless `P` is primitive.
pub fn weight_and_initial_form(w: &Word, cap: usize) -> Result<InitialForm, MagnusError> {
    if w.is_identity() {
        return Err(MagnusError::IdentityWord);
    }
    if cap == 0 {
        return Err(MagnusError::ZeroCap);
    }
    let alphabet = w.max_generator();
    weight_and_initial_form_on(w, alphabet, cap)
}

/// As [`weight_and_initial_form`], with the Lie element living on `alphabet` letters.
pub fn weight_and_initial_form_on(w: &Word, alphabet: usize, cap: usize) -> Result<InitialForm, MagnusError> {
    if w.is_identity() {
        return Err(MagnusError::IdentityWord);
    }
    if cap == 0 {
        return Err(MagnusError::ZeroCap);
    }
    let m = magnus_free_on(w, alphabet, cap);
    let Some(k) = m.lowest_positive_degree() else {
        return Ok(InitialForm { weight: Weight::ExceedsCap(cap), ini: None });
    };
    let lowest = m.homogeneous_part(k);
    let dynkin = freelie::dynkin_map(&lowest);
    let lie = freelie::lyndon_decompose(&dynkin, alphabet).map_err(|_| MagnusError::NotPrimitive)?;
    let back = freelie::tensor_embed(&lie, cap).map_err(|_| MagnusError::NotPrimitive)?;
    if back != lowest {
        return Err(MagnusError::NotPrimitive);
    }
    Ok(InitialForm { weight: Weight::Exact(k), ini: Some(lie) })
}

/// Applies `x_s ↦ Σ_i a_{i,s} y_i` to every monomial of a series.
pub fn project_series(s: &TruncatedTensorSeries, a: &QMatrix) -> TruncatedTensorSeries {
    let b = a.rows();
    let mut out = TruncatedTensorSeries::zero(b, s.cap());
    for (mono, c) in s.terms() {
        let mut partial: Vec<(Monomial, Rational)> = vec![(Vec::new(), c.clone())];
        for &letter in mono {
            let mut next = Vec::new();
            for (m, v) in &partial {
                for i in 0..b {
                    let coef = &a[(i, letter - 1)];
                    if coef.is_zero() {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2.push(i + 1);
                    next.push((m2, v * coef));
                }
            }
            partial = next;
        }
        for (m, v) in partial {
            out.add_term(m, v);
        }
    }
    out
}

/// Group Magnus expansion `κ(w)`: the free expansion pushed forward along the
/// `b × n` projection matrix `a` (column `s` holds the class of `x_s`).
pub fn group_magnus(w: &Word, a: &QMatrix, cap: usize) -> Result<TruncatedTensorSeries, MagnusError> {
    let n = a.cols();
    if w.max_generator() > n {
        return Err(MagnusError::DimensionMismatch { cols: n, gen: w.max_generator() });
    }
    if cap == 0 {
        return Err(MagnusError::ZeroCap);
    }
    let m = magnus_free_on(w, n.max(1), cap);
    Ok(project_series(&m, a))
}

/// Quadratic coefficients `κ(w)_{i,j}` as a `b × b` matrix (0-based indices).
///
/// Requires the linear part of `κ(w)` to vanish.
pub fn kappa2(w: &Word, a: &QMatrix) -> Result<QMatrix, MagnusError> {
    let k = group_magnus(w, a, 2)?;
    let b = a.rows();
    for i in 1..=b {
        let c = k.coefficient(&[i]);
        if !c.is_zero() {
            return Err(MagnusError::NonzeroLinearPart { index: i, coefficient: c });
        }
    }
    let mut out = QMatrix::zeros(b, b);
    for i in 0..b {
        for j in 0..b {
            out[(i, j)] = k.coefficient(&[i + 1, j + 1]);
        }
    }
    Ok(out)
}
