//! Fundamental groups of orientable Seifert fibered 3-manifolds over an
//! orientable base, and closed-form tables of their LCS, holonomy and Chen
//! ranks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freelie::{bracket, witt_dimension, GradedLiePresentation, LieElement};
use crate::gradedgr::labute_phi;
use crate::series::{chen_rank_formulas, ChenMode};
use crate::words::{GroupPresentation, Word};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("fiber {index}: alpha must be at least 2, got {alpha}")]
    SmallAlpha { index: usize, alpha: i64 },
    #[error("fiber {index}: ({alpha}, {beta}) are not coprime")]
    NotCoprime { index: usize, alpha: i64, beta: i64 },
    #[error("invalid Seifert JSON: {0}")]
    Json(String),
}

/// Genus `g` of the base, obstruction `b`, and exceptional fibers `(α_i, β_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertInvariants {
    pub genus: u32,
    pub b: i64,
    #[serde(default)]
    pub fibers: Vec<(i64, i64)>,
}

impl SeifertInvariants {
    pub fn new(genus: u32, b: i64, fibers: Vec<(i64, i64)>) -> Result<Self, SeifertError> {
        let s = SeifertInvariants { genus, b, fibers };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), SeifertError> {
        for (i, &(alpha, beta)) in self.fibers.iter().enumerate() {
            let index = i + 1;
            if alpha < 2 {
                return Err(SeifertError::SmallAlpha { index, alpha });
            }
            if alpha.gcd(&beta) != 1 {
                return Err(SeifertError::NotCoprime { index, alpha, beta });
            }
        }
        Ok(())
    }

    /// Parses `{"genus": g, "b": b, "fibers": [[α, β], …]}`.
    pub fn from_json(text: &str) -> Result<Self, SeifertError> {
        let s: SeifertInvariants = serde_json::from_str(text).map_err(|e| SeifertError::Json(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    /// `e = -b - Σ β_i / α_i`.
    pub fn euler(&self) -> Rational {
        let mut e = Rational::from_integer(BigInt::from(-self.b));
        for &(a, b) in &self.fibers {
            e -= Rational::new(b.into(), a.into());
        }
        e
    }
}

#[derive(Clone, Debug)]
pub struct SeifertData {
    pub presentation: GroupPresentation,
    pub euler: Rational,
}

/// Generators `x_1, y_1, …, x_g, y_g, z_1, …, z_s, h`; relators: `h` commutes
/// with every other generator, then `[x_1,y_1]⋯[x_g,y_g] z_1⋯z_s h^{-b}`,
/// then `z_i^{α_i} h^{β_i}`.
pub fn seifert_data(s: &SeifertInvariants) -> Result<SeifertData, SeifertError> {
    s.validate()?;
    let g = s.genus as usize;
    let nz = s.fibers.len();
    let mut names = Vec::new();
    for i in 1..=g {
        names.push(format!("x{i}"));
        names.push(format!("y{i}"));
    }
    for j in 1..=nz {
        names.push(format!("z{j}"));
    }
    names.push("h".to_string());
    let h_idx = names.len();
    let h = Word::generator(h_idx);

    let mut relators: Vec<Word> = (1..h_idx).map(|i| Word::commutator(&h, &Word::generator(i))).collect();
    let mut long = Word::identity();
    for i in 0..g {
        long = long.mul(&Word::commutator(&Word::generator(2 * i + 1), &Word::generator(2 * i + 2)));
    }
    for j in 0..nz {
        long = long.mul(&Word::generator(2 * g + j + 1));
    }
    relators.push(long.mul(&Word::power(h_idx, -s.b)));
    for (j, &(alpha, beta)) in s.fibers.iter().enumerate() {
        relators.push(Word::power(2 * g + j + 1, alpha).mul(&Word::power(h_idx, beta)));
    }
    let presentation = GroupPresentation::new(names, relators).expect("generated names are unique");
    Ok(SeifertData { presentation, euler: s.euler() })
}

/// Closed-form `φ`, `φ̄`, `θ`, `θ̄` for degrees `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertRanks {
    pub phi: Vec<BigInt>,
    pub phi_bar: Vec<BigInt>,
    pub theta: Vec<BigInt>,
    pub theta_bar: Vec<BigInt>,
}

pub fn closed_form_ranks(s: &SeifertInvariants, max_degree: usize) -> SeifertRanks {
    let g = s.genus as u64;
    let e_zero = s.euler().is_zero();
    let n = max_degree;
    if g == 0 {
        let b1 = if e_zero { 1 } else { 0 };
        let v: Vec<BigInt> = (1..=n).map(|k| BigInt::from(if k == 1 { b1 } else { 0 })).collect();
        return SeifertRanks { phi: v.clone(), phi_bar: v.clone(), theta: v.clone(), theta_bar: v };
    }
    let surface_phi: Vec<BigInt> = (1..=n as u64).map(|k| labute_phi(2 * g, 2, k)).collect();
    let surface_theta = chen_rank_formulas(ChenMode::Surface { g }, n).expect("genus is positive");
    if e_zero {
        let shift = |v: &[BigInt]| -> Vec<BigInt> {
            v.iter().enumerate().map(|(i, x)| if i == 0 { BigInt::from(2 * g + 1) } else { x.clone() }).collect()
        };
        let phi = shift(&surface_phi);
        let theta = shift(&surface_theta);
        return SeifertRanks { phi_bar: phi.clone(), phi, theta_bar: theta.clone(), theta };
    }
    let low = |v: &[BigInt]| -> Vec<BigInt> {
        v.iter()
            .enumerate()
            .map(|(i, x)| match i {
                0 => BigInt::from(2 * g),
                1 => BigInt::from(g * (2 * g - 1)),
                _ => x.clone(),
            })
            .collect()
    };
    SeifertRanks {
        phi: low(&surface_phi),
        phi_bar: (1..=n as u64).map(|k| witt_dimension(2 * g, k)).collect(),
        theta: low(&surface_theta),
        theta_bar: chen_rank_formulas(ChenMode::Free { n: 2 * g }, n).expect("2g is positive"),
    }
}

/// Holonomy Lie algebra read off from the invariants alone, with generator names.
pub fn holonomy_closed_form(s: &SeifertInvariants) -> (GradedLiePresentation, Vec<String>) {
    let g = s.genus as usize;
    let e_zero = s.euler().is_zero();
    let mut names: Vec<String> = (1..=g).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect();
    if !e_zero {
        return (GradedLiePresentation::free(2 * g), names);
    }
    names.push("h".into());
    let n = 2 * g + 1;
    let gen = |i| LieElement::generator(n, i);
    let mut relations = Vec::new();
    if g > 0 {
        let sum = (0..g).fold(LieElement::zero(n), |acc, i| {
            acc.add(&bracket(&gen(2 * i + 1), &gen(2 * i + 2)).expect("same alphabet"))
        });
        relations.push(sum);
        for i in 1..n {
            relations.push(bracket(&gen(n), &gen(i)).expect("same alphabet"));
        }
    }
    (GradedLiePresentation::new(n, relations).expect("quadratic relations"), names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomy::{echelonize, graded_invariants};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(SeifertInvariants::new(0, 1, vec![(2, 1), (3, 1)]).unwrap().euler(), q(-11, 6));
        assert_eq!(SeifertInvariants::new(2, 0, vec![]).unwrap().euler(), q(0, 1));
        assert!(SeifertInvariants::new(1, 0, vec![(4, 2)]).is_err());
        assert!(SeifertInvariants::new(1, 0, vec![(1, 0)]).is_err());
    }

    #[test]
    fn heisenberg_manifold() {
        let d = seifert_data(&SeifertInvariants::new(1, 1, vec![]).unwrap()).unwrap();
        assert_eq!(d.presentation.to_string(), "gens: x1 y1 h; rels: h x1 h^-1 x1^-1; h y1 h^-1 y1^-1; x1 y1 x1^-1 y1^-1 h^-1");
        assert_eq!(d.euler, q(-1, 1));
    }

    #[test]
    fn genus_two_nonzero_euler() {
        let r = closed_form_ranks(&SeifertInvariants::new(2, 1, vec![]).unwrap(), 4);
        assert_eq!(r.phi_bar[2], BigInt::from(20));
        assert_eq!(r.phi[2], BigInt::from(16));
        assert_eq!(&r.theta_bar[2] - &r.theta[2], BigInt::from(4));
        assert_eq!(r.phi[..2], ints(&[4, 6])[..]);
    }

    #[test]
    fn genus_two_zero_euler() {
        let r = closed_form_ranks(&SeifertInvariants::new(2, 0, vec![]).unwrap(), 4);
        assert_eq!(r.phi, ints(&[5, 5, 16, 45]));
        assert_eq!(r.phi, r.phi_bar);
    }

    #[test]
    fn genus_zero() {
        let (p, names) = holonomy_closed_form(&SeifertInvariants::new(0, 1, vec![(2, 1)]).unwrap());
        assert_eq!(p.gen_count(), 0);
        assert!(names.is_empty());
        let e = echelonize(&seifert_data(&SeifertInvariants::new(0, 1, vec![(2, 1)]).unwrap()).unwrap().presentation);
        assert_eq!(e.betti(), 0);
        let e = echelonize(&seifert_data(&SeifertInvariants::new(0, 1, vec![(2, -1), (2, -1)]).unwrap()).unwrap().presentation);
        assert_eq!(e.betti(), 1);
    }

    #[test]
    fn engine_matches_closed_form() {
        for s in [
            SeifertInvariants::new(1, 0, vec![]).unwrap(),
            SeifertInvariants::new(1, 1, vec![]).unwrap(),
            SeifertInvariants::new(1, 0, vec![(2, 1), (2, -1)]).unwrap(),
        ] {
            let d = seifert_data(&s).unwrap();
            let engine = graded_invariants(&echelonize(&d.presentation), 4, &[]).unwrap();
            let closed = closed_form_ranks(&s, 4);
            let phi_bar: Vec<BigInt> = engine.phi_bar.iter().map(|&x| BigInt::from(x)).collect();
            assert_eq!(phi_bar, closed.phi_bar, "{s:?}");
        }
    }

    #[test]
    fn json() {
        let s = SeifertInvariants::from_json(r#"{"genus": 0, "b": 1, "fibers": [[2,1],[3,1]]}"#).unwrap();
        assert_eq!(s.fibers, vec![(2, 1), (3, 1)]);
        assert!(SeifertInvariants::from_json(r#"{"genus": 0, "b": 1, "fibers": [[2,2]]}"#).is_err());
    }
}
