//! Initial-form presentations of the associated graded Lie algebra, Anick's
//! mildness criteria, and Labute's rank formula for one-relator groups.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::foxmagnus::{weight_and_initial_form_on, MagnusError, Monomial, Weight};
use crate::freelie::{divisors, graded_quotient, mobius, tensor_embed, GradedLiePresentation, LieElement};
use crate::holonomy::{echelonize, holonomy_presentation, HolonomyError};
use crate::series::{pbw_series, RationalSeries};
use crate::words::GroupPresentation;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("relator {index} has weight above the cap {cap}")]
    WeightExceedsCap { index: usize, cap: usize },
    #[error("relator {index} is the identity")]
    IdentityRelator { index: usize },
    #[error("relator {index}: {source}")]
    Magnus { index: usize, source: MagnusError },
    #[error("expected exactly one relator, found {0}")]
    RelatorCount(usize),
    #[error("generator ordering must be a permutation of 1..={0}")]
    BadOrdering(usize),
    #[error(transparent)]
    Holonomy(#[from] HolonomyError),
}

impl GradedError {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, GradedError::WeightExceedsCap { .. })
    }
}

/// Relations `ini(r_i)` of `L(G)` together with the weights `ω(r_i)`.
#[derive(Clone, Debug)]
pub struct InitialForms {
    pub lie: GradedLiePresentation,
    pub weights: Vec<usize>,
}

pub fn initial_forms_presentation(p: &GroupPresentation, cap: usize) -> Result<InitialForms, GradedError> {
    let n = p.gen_count();
    let mut relations = Vec::new();
    let mut weights = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let index = i + 1;
        if r.is_identity() {
            return Err(GradedError::IdentityRelator { index });
        }
        let f = weight_and_initial_form_on(r, n, cap).map_err(|source| GradedError::Magnus { index, source })?;
        match (f.weight, f.ini) {
            (Weight::Exact(k), Some(ini)) => {
                weights.push(k);
                relations.push(ini);
            }
            _ => return Err(GradedError::WeightExceedsCap { index, cap }),
        }
    }
    let lie = GradedLiePresentation::new(n, relations).expect("initial forms are homogeneous and nonzero");
    Ok(InitialForms { lie, weights })
}

/// First failure of Anick's combinatorial conditions on the leading words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Combinatorial {
    Pass,
    /// Leading word of `inner` occurs inside that of `outer` (1-based relators).
    Contains { outer: usize, inner: usize },
    /// A proper suffix of `first`'s leading word is a proper prefix of `second`'s.
    Overlap { first: usize, second: usize },
}

/// Comparison of the Hilbert series of `U(L)` with `1 / (1 - nt + Σ t^{ω_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertCheck {
    pub through_degree: usize,
    pub enveloping: RationalSeries,
    pub anick: RationalSeries,
    /// Lowest degree where the two series differ.
    pub first_disagreement: Option<usize>,
}

impl HilbertCheck {
    pub fn agrees(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Finite-degree evidence for mildness. Agreement of the series means
/// "consistent through the cap", never a proof.
#[derive(Clone, Debug)]
pub struct MildnessReport {
    pub ordering: Vec<usize>,
    pub weights: Vec<usize>,
    pub leading_words: Vec<Monomial>,
    pub combinatorial: Combinatorial,
    pub hilbert: HilbertCheck,
    pub lie_dims: Vec<usize>,
}

fn is_factor(inner: &[usize], outer: &[usize]) -> bool {
    inner.len() <= outer.len() && outer.windows(inner.len()).any(|w| w == inner)
}

fn overlaps(a: &[usize], b: &[usize]) -> bool {
    (1..a.len().min(b.len())).any(|l| a[a.len() - l..] == b[..l])
}

/// Anick's checks. `ordering` lists generators from largest to smallest;
/// `None` means `x_1 ≻ x_2 ≻ …`.
pub fn mildness_check(p: &GroupPresentation, cap: usize, ordering: Option<&[usize]>) -> Result<MildnessReport, GradedError> {
    let n = p.gen_count();
    let ordering: Vec<usize> = match ordering {
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort_unstable();
            if sorted != (1..=n).collect::<Vec<_>>() {
                return Err(GradedError::BadOrdering(n));
            }
            o.to_vec()
        }
        None => (1..=n).collect(),
    };
    // larger rank value means larger letter
    let mut rank = vec![0usize; n + 1];
    for (pos, &g) in ordering.iter().enumerate() {
        rank[g] = n - pos;
    }
    let forms = initial_forms_presentation(p, cap)?;
    let leading_words: Vec<Monomial> = forms
        .lie
        .relations()
        .iter()
        .zip(&forms.weights)
        .map(|(r, &w)| {
            let t = tensor_embed(r, w).expect("degree equals weight");
            t.terms()
                .keys()
                .max_by(|a, b| a.iter().map(|&l| rank[l]).cmp(b.iter().map(|&l| rank[l])))
                .expect("initial forms are nonzero")
                .clone()
        })
        .collect();

    let mut combinatorial = Combinatorial::Pass;
    'outer: for (i, a) in leading_words.iter().enumerate() {
        for (j, b) in leading_words.iter().enumerate() {
            if i != j && is_factor(b, a) {
                combinatorial = Combinatorial::Contains { outer: i + 1, inner: j + 1 };
                break 'outer;
            }
        }
    }
    if combinatorial == Combinatorial::Pass {
        'outer2: for (i, a) in leading_words.iter().enumerate() {
            for (j, b) in leading_words.iter().enumerate() {
                if overlaps(a, b) {
                    combinatorial = Combinatorial::Overlap { first: i + 1, second: j + 1 };
                    break 'outer2;
                }
            }
        }
    }

    let g = graded_quotient(&forms.lie, cap).expect("validated presentation");
    let lie_dims = g.dims();
    let enveloping = pbw_series(&lie_dims, cap).expect("non-negative");
    let mut denom = vec![Rational::zero(); cap + 1];
    denom[0] = Rational::one();
    if cap >= 1 {
        denom[1] -= Rational::from_integer(BigInt::from(n));
    }
    for &w in &forms.weights {
        if w <= cap {
            denom[w] += Rational::one();
        }
    }
    let anick = RationalSeries::new(denom, cap).inverse().expect("constant term 1");
    let first_disagreement = (0..=cap).find(|&k| enveloping.coefficient(k) != anick.coefficient(k));
    Ok(MildnessReport {
        ordering,
        weights: forms.weights,
        leading_words,
        combinatorial,
        hilbert: HilbertCheck { through_degree: cap, enveloping, anick, first_disagreement },
        lie_dims,
    })
}

/// Labute's closed form for the degree-`k` LCS rank of a one-relator group
/// on `n` generators whose relator has weight `e`.
pub fn labute_phi(n: u64, e: u64, k: u64) -> BigInt {
    assert!(e >= 1 && k >= 1);
    let mut total = Rational::zero();
    for d in divisors(k) {
        let mu = mobius(k / d);
        if mu == 0 {
            continue;
        }
        let mut inner = Rational::zero();
        for i in 0..=d / e {
            let m = d - (e - 1) * i;
            let term = Rational::new(BigInt::from(d), BigInt::from(m))
                * Rational::from_integer(binomial(BigInt::from(m), BigInt::from(i)))
                * Rational::from_integer(num_traits::pow(BigInt::from(n), (d - e * i) as usize));
            if i % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += inner * Rational::from_integer(BigInt::from(mu));
    }
    let v = total / Rational::from_integer(BigInt::from(k));
    debug_assert!(v.is_integer() && !v.is_negative());
    v.to_integer()
}

/// `U(h)` series for a one-relator group, by weight: `1/(1-(n-1)t)`,
/// `1/(1-nt+t^2)` or `1/(1-nt)`.
pub fn onerelator_hilbert(n: usize, weight: usize, cap: usize) -> RationalSeries {
    let n = n as i64;
    let denom: Vec<i64> = match weight {
        1 => vec![1, -(n - 1)],
        2 => vec![1, -n, 1],
        _ => vec![1, -n],
    };
    RationalSeries::from_integers(&denom, cap).inverse().expect("constant term 1")
}

/// Graded-formality verdict and rank tables for a one-relator presentation.
#[derive(Clone, Debug)]
pub struct OneRelatorReport {
    pub weight: usize,
    pub graded_formal: bool,
    pub holonomy: GradedLiePresentation,
    pub holonomy_names: Vec<String>,
    pub holonomy_series: RationalSeries,
    /// `φ̄_1..φ̄_cap` from the holonomy engine.
    pub holonomy_dims: Vec<usize>,
    /// `φ_1..φ_cap` from the initial-form presentation.
    pub lcs_dims: Vec<usize>,
    pub initial_form: LieElement,
    /// `(ω, φ̄_ω, φ_ω)` when the weight is at least 3 and within the cap.
    pub discrepancy: Option<(usize, usize, usize)>,
}

pub fn onerelator_report(p: &GroupPresentation, cap: usize) -> Result<OneRelatorReport, GradedError> {
    if p.relator_count() != 1 {
        return Err(GradedError::RelatorCount(p.relator_count()));
    }
    let forms = initial_forms_presentation(p, cap)?;
    let weight = forms.weights[0];
    let e = echelonize(p);
    let hp = holonomy_presentation(&e)?;
    let holonomy_dims = graded_quotient(&hp.lie, cap).expect("validated").dims();
    let lcs_dims = graded_quotient(&forms.lie, cap).expect("validated").dims();
    let discrepancy = (weight >= 3 && weight <= cap).then(|| (weight, holonomy_dims[weight - 1], lcs_dims[weight - 1]));
    Ok(OneRelatorReport {
        weight,
        graded_formal: weight <= 2,
        holonomy: hp.lie,
        holonomy_names: hp.names,
        holonomy_series: onerelator_hilbert(p.gen_count(), weight, cap),
        holonomy_dims,
        lcs_dims,
        initial_form: forms.lie.relations()[0].clone(),
        discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::bracket;
    use crate::words::parse_presentation;

    fn pres(s: &str) -> GroupPresentation {
        parse_presentation(s).unwrap()
    }

    #[test]
    fn whitehead_initial_form() {
        let p = pres("gens: x y; rels: x^-1 y^-1 x y x^-1 y x y^-1 x y x^-1 y^-1 x y^-1 x^-1 y");
        let f = initial_forms_presentation(&p, 6).unwrap();
        assert_eq!(f.weights, vec![4]);
        let (x, y) = (LieElement::generator(2, 1), LieElement::generator(2, 2));
        let expected = bracket(&x, &bracket(&y, &bracket(&x, &y).unwrap()).unwrap()).unwrap();
        let got = &f.lie.relations()[0];
        assert_eq!(got, &expected);
    }

    #[test]
    fn mixed_presentation_initial_form() {
        let p = pres("gens: x1 x2 x3 x4 x5; rels: [x1,x2][x3,[x4,x5]]");
        let f = initial_forms_presentation(&p, 4).unwrap();
        assert_eq!(f.weights, vec![2]);
        assert_eq!(f.lie.relations()[0].to_string(), "[x1,x2]");
    }

    #[test]
    fn weight_above_cap() {
        let p = pres("gens: x y; rels: [x,[x,[x,y]]]");
        assert_eq!(initial_forms_presentation(&p, 3).unwrap_err(), GradedError::WeightExceedsCap { index: 1, cap: 3 });
    }

    #[test]
    fn three_quadratic_leading_words() {
        let p = pres("gens: x1 x2 x3 x4; rels: [x2,x3]; [x1,x4]; [x1,x3][x2,x4]");
        let r = mildness_check(&p, 4, None).unwrap();
        assert_eq!(r.leading_words, vec![vec![2, 3], vec![1, 4], vec![1, 3]]);
        assert_eq!(r.combinatorial, Combinatorial::Pass);
        assert!(r.hilbert.agrees());
    }

    #[test]
    fn duplicate_relators_fail() {
        let p = pres("gens: x1 x2; rels: [x1,x2]; [x1,x2]");
        let r = mildness_check(&p, 3, None).unwrap();
        assert_eq!(r.combinatorial, Combinatorial::Contains { outer: 1, inner: 2 });
    }

    #[test]
    fn word_helpers() {
        assert!(overlaps(&[1, 2, 1], &[1, 2, 1]));
        assert!(!overlaps(&[1, 1, 2], &[1, 1, 2]));
        assert!(overlaps(&[2, 3], &[3, 1]));
        assert!(is_factor(&[2, 3], &[1, 2, 3]));
        assert!(!is_factor(&[3, 2], &[1, 2, 3]));
    }

    #[test]
    fn labute_values() {
        assert!(labute_phi(2, 2, 2).is_zero());
        assert_eq!(labute_phi(4, 2, 3), BigInt::from(16));
        let series = onerelator_hilbert(4, 2, 6);
        let dims = crate::series::pbw_invert(&series).unwrap();
        for k in 1..=6 {
            assert_eq!(labute_phi(4, 2, k), dims[k as usize - 1]);
        }
        // weight 1 reduces to a free group of rank n - 1
        for k in 1..=6 {
            assert_eq!(labute_phi(3, 1, k), crate::freelie::witt_dimension(2, k));
        }
    }

    #[test]
    fn onerelator_reports() {
        let r = onerelator_report(&pres("gens: x1 x2; rels: [x1,[x1,x2]]"), 5).unwrap();
        assert_eq!(r.weight, 3);
        assert!(!r.graded_formal);
        assert_eq!(r.holonomy_series, RationalSeries::from_integers(&[1, -2], 5).inverse().unwrap());
        assert_eq!(r.discrepancy, Some((3, 2, 1)));

        let r = onerelator_report(&pres("gens: a b c d; rels: [a,b][c,d]"), 4).unwrap();
        assert_eq!(r.weight, 2);
        assert!(r.graded_formal);
        assert_eq!(r.holonomy_dims, r.lcs_dims);

        let r = onerelator_report(&pres("gens: x y; rels: x y^-1"), 4).unwrap();
        assert_eq!(r.weight, 1);
        assert_eq!(r.holonomy_series, RationalSeries::from_integers(&[1, -1], 4).inverse().unwrap());
        assert_eq!(r.lcs_dims, vec![1, 0, 0, 0]);
    }
}
