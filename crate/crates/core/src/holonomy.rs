//! Echelon presentations, cup products on degree-1 cohomology, holonomy Lie
//! algebras and their rank tables, and the one-relator Massey formula.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactla::{q_echelon, z_unimodular_echelon, QMatrix, ZMatrix};
use crate::foxmagnus::{epsilon_seq, kappa2};
use crate::freelie::{derived_dims, graded_quotient, GradedLieAlgebra, GradedLiePresentation, LieElement};
use crate::series::{pbw_series, RationalSeries};
use crate::words::{GroupPresentation, Word};
use crate::Rational;

/// A presentation rewritten so its abelianized Jacobian is in staircase form.
#[derive(Clone, Debug)]
pub struct EchelonPresentation {
    base: GroupPresentation,
    /// `c_{l,k}`: `w_k = ∏_l r_l^{c_{l,k}}`.
    transform: ZMatrix,
    jacobian: ZMatrix,
    words: Vec<Word>,
    /// Pivot generators, 1-based.
    pivots: Vec<usize>,
    /// Non-pivot generators in increasing order, 1-based.
    h1_basis: Vec<usize>,
    /// `b × n`; column `s` is the class of `x_s` in the `h1_basis` coordinates.
    projection: QMatrix,
}

impl EchelonPresentation {
    pub fn base(&self) -> &GroupPresentation {
        &self.base
    }

    pub fn transform(&self) -> &ZMatrix {
        &self.transform
    }

    pub fn jacobian(&self) -> &ZMatrix {
        &self.jacobian
    }

    /// The rewritten relators `w_1..w_m`.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn h1_basis(&self) -> &[usize] {
        &self.h1_basis
    }

    /// First Betti number.
    pub fn betti(&self) -> usize {
        self.h1_basis.len()
    }

    /// Relator indices `d+1..=m` spanning second homology, 1-based.
    pub fn h2_basis(&self) -> Vec<usize> {
        (self.rank() + 1..=self.words.len()).collect()
    }

    pub fn projection(&self) -> &QMatrix {
        &self.projection
    }

    /// Names of the homology basis generators.
    pub fn h1_names(&self) -> Vec<String> {
        self.h1_basis.iter().map(|&i| self.base.names()[i - 1].clone()).collect()
    }
}

/// Builds the echelon form of a presentation.
pub fn echelonize(p: &GroupPresentation) -> EchelonPresentation {
    let (n, m) = (p.gen_count(), p.relator_count());
    let jac_rows: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|r| (1..=n).map(|i| BigInt::from(r.exponent_sum(i))).collect())
        .collect();
    let jac = if m == 0 { ZMatrix::zeros(0, n) } else { ZMatrix::from_rows(jac_rows) };
    let ech = z_unimodular_echelon(&jac);
    let u = &ech.transform;

    let words: Vec<Word> = (0..m)
        .map(|k| {
            (0..m).fold(Word::identity(), |acc, l| {
                let e: i64 = (&u[(k, l)]).try_into().expect("transform entries fit in i64");
                acc.mul(&p.relators()[l].pow(e))
            })
        })
        .collect();

    let pivots: Vec<usize> = ech.pivots.iter().map(|&c| c + 1).collect();
    let h1_basis: Vec<usize> = (1..=n).filter(|i| !pivots.contains(i)).collect();

    let rref = q_echelon(&ech.reduced.to_rational());
    let b = h1_basis.len();
    let mut a = QMatrix::zeros(b, n);
    for (j, &s) in h1_basis.iter().enumerate() {
        a[(j, s - 1)] = Rational::one();
    }
    // x_{p_k} + Σ_{i non-pivot} R[k][i] x_i = 0 in H_1
    for (k, &pc) in rref.pivots.iter().enumerate() {
        for (j, &s) in h1_basis.iter().enumerate() {
            a[(j, pc)] = -rref.echelon[(k, s - 1)].clone();
        }
    }

    EchelonPresentation {
        base: p.clone(),
        transform: u.transpose(),
        jacobian: ech.reduced,
        words,
        pivots,
        h1_basis,
        projection: a,
    }
}

/// Values `(u_i ∪ u_j, γ_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupProductTable {
    pub betti: usize,
    /// 1-based relator indices of the second-homology classes.
    pub classes: Vec<usize>,
    /// `values[c]` is the full `b × b` matrix for `classes[c]`.
    pub values: Vec<QMatrix>,
}

impl CupProductTable {
    /// `(u_i ∪ u_j, γ)` for the `c`-th class, 1-based `i, j`.
    pub fn value(&self, i: usize, j: usize, c: usize) -> Rational {
        self.values[c][(i - 1, j - 1)].clone()
    }

    /// `(i, j, class, value)` for `i < j`, ordered by class then pair.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for (c, &k) in self.classes.iter().enumerate() {
            for i in 1..=self.betti {
                for j in i + 1..=self.betti {
                    out.push((i, j, k, self.value(i, j, c)));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|m| (0..m.rows()).all(|i| m.is_zero_row(i)))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HolonomyError {
    #[error("relator {index} has nonzero linear Magnus part after projection")]
    LinearPart { index: usize },
    #[error("index sequence must have length at least 3")]
    ShortIndex,
    #[error("relator has exponent sum {sum} in generator {gen}")]
    NotInCommutator { gen: usize, sum: i64 },
    #[error("index {0} is zero")]
    ZeroIndex(usize),
}

pub fn cup_table(e: &EchelonPresentation) -> Result<CupProductTable, HolonomyError> {
    let classes = e.h2_basis();
    let values = classes
        .iter()
        .map(|&k| kappa2(&e.words[k - 1], &e.projection).map_err(|_| HolonomyError::LinearPart { index: k }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CupProductTable { betti: e.betti(), classes, values })
}

/// Holonomy presentation with the relator bookkeeping kept alongside.
#[derive(Clone, Debug)]
pub struct HolonomyPresentation {
    pub lie: GradedLiePresentation,
    /// Generator names, matching the homology basis.
    pub names: Vec<String>,
    /// 1-based relator index that produced each relation.
    pub sources: Vec<usize>,
    /// Second-homology relators whose quadratic part vanished.
    pub dropped: Vec<usize>,
}

/// `lie(y_1..y_b)` modulo `Σ_{i<j} κ(w_k)_{i,j} [y_i, y_j]` for `k > d`.
pub fn holonomy_presentation(e: &EchelonPresentation) -> Result<HolonomyPresentation, HolonomyError> {
    let table = cup_table(e)?;
    let b = e.betti();
    let mut relations = Vec::new();
    let mut sources = Vec::new();
    let mut dropped = Vec::new();
    for (c, &k) in table.classes.iter().enumerate() {
        let mut terms = Vec::new();
        for i in 1..=b {
            for j in i + 1..=b {
                let v = table.value(i, j, c);
                if !v.is_zero() {
                    terms.push((vec![i, j], v));
                }
            }
        }
        if terms.is_empty() {
            dropped.push(k);
        } else {
            relations.push(LieElement::from_terms(b, terms).expect("pairs i<j are Lyndon"));
            sources.push(k);
        }
    }
    let lie = GradedLiePresentation::new(b, relations).expect("quadratic relations are homogeneous");
    Ok(HolonomyPresentation { lie, names: e.h1_names(), sources, dropped })
}

/// Holonomy ranks, holonomy Chen ranks and the enveloping-algebra series.
#[derive(Clone, Debug)]
pub struct RankReport {
    pub max_degree: usize,
    pub holonomy: GradedLieAlgebra,
    /// `φ̄_1..φ̄_N`.
    pub phi_bar: Vec<usize>,
    /// `θ̄_1..θ̄_N`.
    pub theta_bar: Vec<usize>,
    /// Quotient dimensions `h / h^{(i)}` for each requested level `i`.
    pub derived: Vec<(usize, Vec<usize>)>,
    pub hilbert: RationalSeries,
}

pub fn graded_invariants(
    e: &EchelonPresentation,
    max_degree: usize,
    levels: &[usize],
) -> Result<RankReport, HolonomyError> {
    let hp = holonomy_presentation(e)?;
    Ok(rank_report(&hp.lie, max_degree, levels))
}

/// Rank report for any quadratic presentation.
pub fn rank_report(p: &GradedLiePresentation, max_degree: usize, levels: &[usize]) -> RankReport {
    let holonomy = graded_quotient(p, max_degree).expect("presentation was validated");
    let phi_bar = holonomy.dims();
    let theta_bar = derived_dims(&holonomy, 2).quotient;
    let derived = levels.iter().map(|&i| (i, derived_dims(&holonomy, i).quotient)).collect();
    let hilbert = pbw_series(&phi_bar, max_degree).expect("dimensions are non-negative");
    RankReport { max_degree, holonomy, phi_bar, theta_bar, derived, hilbert }
}

/// Result of the one-relator Massey computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MasseyOutcome {
    /// All lower coefficients vanish; the product takes this value on `[r]`.
    Defined(Rational),
    /// `ε` of the 1-based slice `I[s..t-1]` is nonzero.
    ConditionFails { s: usize, t: usize, indices: Vec<usize>, value: Rational },
}

/// Value of `⟨-u_{i_1}, …, -u_{i_k}⟩` on the relator class of a one-relator group.
pub fn massey_onerelator(r: &Word, index: &[usize]) -> Result<MasseyOutcome, HolonomyError> {
    if index.len() < 3 {
        return Err(HolonomyError::ShortIndex);
    }
    if let Some(&z) = index.iter().find(|&&i| i == 0) {
        return Err(HolonomyError::ZeroIndex(z));
    }
    for gen in 1..=r.max_generator() {
        let sum = r.exponent_sum(gen);
        if sum != 0 {
            return Err(HolonomyError::NotInCommutator { gen, sum });
        }
    }
    let k = index.len();
    for len in 1..k {
        for s in 1..=k + 1 - len {
            let t = s + len;
            let slice = &index[s - 1..t - 1];
            let value = epsilon_seq(r, slice);
            if !value.is_zero() {
                return Ok(MasseyOutcome::ConditionFails { s, t, indices: slice.to_vec(), value });
            }
        }
    }
    Ok(MasseyOutcome::Defined(epsilon_seq(r, index)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_presentation;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    const ECHELON: &str = "gens: x1 x2 x3 x4 x5 x6; rels: x1^2 x2 x3^3 x4^5; x3^2 x4^-2 x6^4; x4^3 x5^-2 x6^3; [x1,x2]";

    #[test]
    fn echelon_example() {
        let e = echelonize(&parse_presentation(ECHELON).unwrap());
        assert_eq!(e.pivots(), &[1, 3, 4]);
        assert_eq!(e.h1_basis(), &[2, 5, 6]);
        assert_eq!(e.h2_basis(), vec![4]);
        let a = e.projection();
        assert_eq!((a[(0, 0)].clone(), a[(1, 0)].clone(), a[(2, 0)].clone()), (q(-1, 2), q(-8, 3), q(7, 1)));
        let t = cup_table(&e).unwrap();
        assert_eq!(t.value(1, 2, 0), q(8, 3));
        assert_eq!(t.value(1, 3, 0), q(-7, 1));
        assert_eq!(t.value(2, 3, 0), q(0, 1));
        assert_eq!(t.value(2, 1, 0), q(-8, 3));
    }

    #[test]
    fn words_match_transform() {
        let p = parse_presentation("gens: a b c; rels: a^2 b; a^4 b^2 c^3; [a,c]").unwrap();
        let e = echelonize(&p);
        let jac = e.jacobian();
        for (k, w) in e.words().iter().enumerate() {
            for i in 1..=3 {
                assert_eq!(BigInt::from(w.exponent_sum(i)), jac[(k, i - 1)]);
            }
        }
        for k in e.rank()..3 {
            assert!(jac.is_zero_row(k));
        }
    }

    #[test]
    fn free_group_echelon() {
        let e = echelonize(&parse_presentation("gens: x y; rels:").unwrap());
        assert_eq!(e.rank(), 0);
        assert_eq!(e.projection(), &QMatrix::identity(2));
        assert!(cup_table(&e).unwrap().values.is_empty());
    }

    #[test]
    fn commutator_relator() {
        let e = echelonize(&parse_presentation("gens: a b c d; rels: [a,b][c,d]").unwrap());
        let t = cup_table(&e).unwrap();
        let nonzero: Vec<_> = t.entries().into_iter().filter(|x| !x.3.is_zero()).collect();
        assert_eq!(nonzero, vec![(1, 2, 1, q(1, 1)), (3, 4, 1, q(1, 1))]);
    }

    #[test]
    fn heisenberg_has_free_holonomy() {
        let e = echelonize(&parse_presentation("gens: x y; rels: [x,[x,y]]; [y,[x,y]]").unwrap());
        let hp = holonomy_presentation(&e).unwrap();
        assert!(hp.lie.relations().is_empty());
        assert_eq!(hp.dropped, vec![1, 2]);
        let r = graded_invariants(&e, 4, &[]).unwrap();
        assert_eq!(r.phi_bar, vec![2, 1, 2, 3]);
    }

    #[test]
    fn non_commutator_relator() {
        let e = echelonize(&parse_presentation("gens: x y; rels: x y x^-1 y").unwrap());
        assert_eq!(e.betti(), 1);
        let hp = holonomy_presentation(&e).unwrap();
        assert_eq!(hp.lie.gen_count(), 1);
        assert!(hp.lie.relations().is_empty());
    }

    #[test]
    fn surface_ranks() {
        let e = echelonize(&parse_presentation("gens: a b c d; rels: [a,b][c,d]").unwrap());
        let r = graded_invariants(&e, 3, &[]).unwrap();
        assert_eq!(r.phi_bar, vec![4, 5, 16]);
        assert_eq!(r.theta_bar, vec![4, 5, 16]);
    }

    #[test]
    fn massey_examples() {
        let p = parse_presentation("gens: x1 x2; rels: [x1,[x1,x2]]; [x1,x2]").unwrap();
        let r3 = &p.relators()[0];
        assert_eq!(massey_onerelator(r3, &[1, 1, 2]).unwrap(), MasseyOutcome::Defined(q(1, 1)));
        match massey_onerelator(&p.relators()[1], &[1, 1, 2]).unwrap() {
            MasseyOutcome::ConditionFails { indices, value, .. } => {
                assert_eq!(indices, vec![1, 2]);
                assert_eq!(value, q(1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(massey_onerelator(r3, &[3, 3, 3]).unwrap(), MasseyOutcome::Defined(q(0, 1)));
        let x = Word::generator(1);
        assert!(massey_onerelator(&x, &[1, 1, 1]).is_err());
    }
}
