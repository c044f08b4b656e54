//! Truncated univariate power series with exact rational coefficients:
//! PBW products and their inversion, Koszul reciprocals and Chen-rank
//! generating functions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("negative dimension {value} in degree {degree}")]
    NegativeDimension { degree: usize, value: BigInt },
    #[error("not a PBW series: degree {degree} would need dimension {value}")]
    NotPbw { degree: usize, value: Rational },
    #[error("constant term must be 1, found {0}")]
    BadConstant(Rational),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Power series `Σ_{k ≤ cap} c_k t^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    coeffs: Vec<Rational>,
}

impl RationalSeries {
    /// Pads with zeros or truncates to exactly `cap + 1` coefficients.
    pub fn new(mut coeffs: Vec<Rational>, cap: usize) -> Self {
        coeffs.resize(cap + 1, Rational::zero());
        RationalSeries { coeffs }
    }

    pub fn from_integers<T: Into<BigInt> + Clone>(coeffs: &[T], cap: usize) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone().into())).collect(), cap)
    }

    pub fn zero(cap: usize) -> Self {
        Self::new(Vec::new(), cap)
    }

    pub fn one(cap: usize) -> Self {
        Self::new(vec![Rational::one()], cap)
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn with_cap(&self, cap: usize) -> Self {
        Self::new(self.coeffs.clone(), cap)
    }

    pub fn add(&self, other: &Self) -> Self {
        let cap = self.cap().min(other.cap());
        Self::new((0..=cap).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(), cap)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.cap().min(other.cap());
        let mut out = vec![Rational::zero(); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cap + 1 - i) {
                out[i + j] += a * b;
            }
        }
        RationalSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        out[0] = inv0.clone();
        for k in 1..out.len() {
            let mut s = Rational::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -s * &inv0;
        }
        Some(RationalSeries { coeffs: out })
    }

    /// `f(-t)`.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        RationalSeries { coeffs }
    }

    /// `1 / (1 - t)^n` through `cap`.
    pub fn inverse_power_of_one_minus_t(n: u64, cap: usize) -> Self {
        pbw_factor(1, &BigInt::from(n), cap)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.cap() + 1)
    }
}

/// `(1 - t^k)^{-d}` through `cap`.
fn pbw_factor(k: usize, d: &BigInt, cap: usize) -> RationalSeries {
    let mut coeffs = vec![Rational::zero(); cap + 1];
    let mut j = 0usize;
    // C(d + j - 1, j), built incrementally
    let mut c = BigInt::one();
    while k * j <= cap {
        coeffs[k * j] = Rational::from_integer(c.clone());
        j += 1;
        c = c * (d + BigInt::from(j) - 1) / BigInt::from(j);
    }
    RationalSeries { coeffs }
}

/// `∏_{i ≥ 1} (1 - t^i)^{-d_i}` through `cap`, with `dims[i-1] = d_i`.
pub fn pbw_series<T: Into<BigInt> + Clone>(dims: &[T], cap: usize) -> Result<RationalSeries, SeriesError> {
    let mut out = RationalSeries::one(cap);
    for (i, d) in dims.iter().enumerate() {
        let d: BigInt = d.clone().into();
        if d.is_negative() {
            return Err(SeriesError::NegativeDimension { degree: i + 1, value: d });
        }
        if i + 1 > cap || d.is_zero() {
            continue;
        }
        out = out.mul(&pbw_factor(i + 1, &d, cap));
    }
    Ok(out)
}

/// The unique dimensions `d_1..d_cap` with `pbw_series(d) = u` through the cap.
pub fn pbw_invert(u: &RationalSeries) -> Result<Vec<BigInt>, SeriesError> {
    if !u.coefficient(0).is_one() {
        return Err(SeriesError::BadConstant(u.coefficient(0)));
    }
    let cap = u.cap();
    let mut dims = Vec::with_capacity(cap);
    let mut partial = RationalSeries::one(cap);
    for k in 1..=cap {
        // the factor (1 - t^k)^{-d} contributes d t^k and nothing lower
        let d = u.coefficient(k) - partial.coefficient(k);
        if !d.is_integer() || d.is_negative() {
            return Err(SeriesError::NotPbw { degree: k, value: d });
        }
        let d = d.to_integer();
        partial = partial.mul(&pbw_factor(k, &d, cap));
        dims.push(d);
    }
    Ok(dims)
}

/// Koszul dual candidate `g = 1 / h(-t)` and the first negative coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub dual: RationalSeries,
    /// A negative coefficient rules out Koszulness.
    pub first_negative: Option<usize>,
}

pub fn koszul_reciprocal(h: &RationalSeries) -> Result<KoszulReport, SeriesError> {
    if !h.coefficient(0).is_one() {
        return Err(SeriesError::BadConstant(h.coefficient(0)));
    }
    let dual = h.negate_variable().inverse().expect("constant term is 1");
    let first_negative = dual.coeffs().iter().position(Signed::is_negative);
    Ok(KoszulReport { dual, first_negative })
}

/// Which closed-form Chen-rank family to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChenMode {
    /// Free group on `n` generators.
    Free { n: u64 },
    /// Closed orientable surface of genus `g`.
    Surface { g: u64 },
    /// One relator in the commutator subgroup, `n` generators.
    OneRelatorComm { n: u64 },
    /// One relator outside the commutator subgroup, `n` generators.
    OneRelatorNoncomm { n: u64 },
}

/// Chen ranks `θ_1..θ_kmax` for the given family.
pub fn chen_rank_formulas(mode: ChenMode, k_max: usize) -> Result<Vec<BigInt>, SeriesError> {
    let big = |x: u64| BigInt::from(x);
    let c = |n: u64, k: u64| binomial(big(n), big(k));
    let out = match mode {
        ChenMode::Free { n } => {
            if n == 0 {
                return Err(SeriesError::InvalidParams("n must be at least 1".into()));
            }
            (1..=k_max as u64).map(|k| if k == 1 { big(n) } else { big(k - 1) * c(n + k - 2, k) }).collect()
        }
        ChenMode::Surface { g } => {
            if g == 0 {
                return Err(SeriesError::InvalidParams("genus must be at least 1".into()));
            }
            (1..=k_max as u64)
                .map(|k| if k == 1 { big(2 * g) } else { big(k - 1) * c(2 * g + k - 2, k) - c(2 * g + k - 3, k - 2) })
                .collect()
        }
        ChenMode::OneRelatorComm { n } => {
            if n < 2 {
                return Err(SeriesError::InvalidParams("n must be at least 2".into()));
            }
            let num = RationalSeries::from_integers(&[1i64, -(n as i64), 1], k_max);
            let lead = RationalSeries::from_integers(&[1i64, n as i64], k_max);
            series_tail(&lead.sub(&num.mul(&RationalSeries::inverse_power_of_one_minus_t(n, k_max))))
        }
        ChenMode::OneRelatorNoncomm { n } => {
            if n < 1 {
                return Err(SeriesError::InvalidParams("n must be at least 1".into()));
            }
            let m = n - 1;
            let num = RationalSeries::from_integers(&[1i64, -(m as i64)], k_max);
            let lead = RationalSeries::from_integers(&[1i64, m as i64], k_max);
            series_tail(&lead.sub(&num.mul(&RationalSeries::inverse_power_of_one_minus_t(m, k_max))))
        }
    };
    Ok(out)
}

fn series_tail(s: &RationalSeries) -> Vec<BigInt> {
    s.coeffs()[1..].iter().map(|c| c.to_integer()).collect()
}

/// Small helper for callers holding `usize` tables.
pub fn to_usize(v: &[BigInt]) -> Option<Vec<usize>> {
    v.iter().map(ToPrimitive::to_usize).collect()
}
