//! Finite-dimensional Lie algebras given by structure constants: validation,
//! lower central series, associated graded algebra, and invariants that can
//! tell a nilpotent algebra apart from its associated graded.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactla::{q_echelon, QMatrix};
use crate::sparse::{add_scaled, Echelon, SparseVec};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FdLieError {
    #[error("basis index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("lower central series stabilizes at dimension {0}; the algebra is not nilpotent")]
    NotNilpotent(usize),
    #[error("c^{k}_{{{i},{j}}} and c^{k}_{{{j},{i}}} are not opposite")]
    SymmetryViolation { i: usize, j: usize, k: usize },
    #[error("malformed structure-constant JSON: {0}")]
    Json(String),
}

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` on a basis `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    /// 0-based `table[i][j]`, sparse in the output index.
    table: Vec<Vec<SparseVec<usize>>>,
}

/// First Lie-axiom violation, 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid,
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

impl StructureConstants {
    pub fn abelian(dim: usize) -> Self {
        StructureConstants { dim, table: vec![vec![SparseVec::new(); dim]; dim] }
    }

    /// Brackets `(i, j, [(k, c)])`, 1-based. A missing `(j, i)` entry is
    /// filled in as the negative of `(i, j)`.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self, FdLieError> {
        let mut sc = Self::raw(dim, brackets)?;
        let given: std::collections::HashSet<(usize, usize)> = brackets.iter().map(|(i, j, _)| (*i, *j)).collect();
        for (i, j, _) in brackets {
            if !given.contains(&(*j, *i)) && i != j {
                let v = sc.table[i - 1][j - 1].iter().map(|(k, c)| (*k, -c.clone())).collect();
                sc.table[j - 1][i - 1] = v;
            }
        }
        Ok(sc)
    }

    /// Brackets taken literally, with no antisymmetric completion.
    pub fn raw(dim: usize, brackets: &[(usize, usize, Vec<(usize, Rational)>)]) -> Result<Self, FdLieError> {
        let mut sc = Self::abelian(dim);
        let check = |index: usize| {
            if index == 0 || index > dim {
                Err(FdLieError::IndexOutOfRange { index, dim })
            } else {
                Ok(())
            }
        };
        for (i, j, terms) in brackets {
            check(*i)?;
            check(*j)?;
            for (k, c) in terms {
                check(*k)?;
                crate::sparse::add_entry(&mut sc.table[i - 1][j - 1], k - 1, c.clone());
            }
        }
        Ok(sc)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{i,j}`, 1-based.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i - 1][j - 1].get(&(k - 1)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero brackets `(i, j, [(k, c)])` with `i < j`, 1-based.
    pub fn brackets(&self) -> Vec<(usize, usize, Vec<(usize, Rational)>)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.table[i][j];
                if !v.is_empty() {
                    out.push((i + 1, j + 1, v.iter().map(|(k, c)| (k + 1, c.clone())).collect()));
                }
            }
        }
        out
    }

    /// Bracket of vectors in basis coordinates (0-based keys).
    pub fn bracket(&self, u: &SparseVec<usize>, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        for (i, a) in u {
            for (j, b) in v {
                add_scaled(&mut out, &self.table[*i][*j], &(a * b));
            }
        }
        out
    }

    fn unit(&self, i: usize) -> SparseVec<usize> {
        SparseVec::from([(i, Rational::one())])
    }

    /// Parses `{"dim": n, "brackets": [[i, j, [[k, "p/q"], …]], …]}`.
    pub fn from_json(text: &str) -> Result<Self, FdLieError> {
        let v: Value = serde_json::from_str(text).map_err(|e| FdLieError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self, FdLieError> {
        let bad = |m: &str| FdLieError::Json(m.to_string());
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing integer field `dim`"))? as usize;
        let list = v.get("brackets").and_then(Value::as_array).ok_or_else(|| bad("missing array field `brackets`"))?;
        let mut brackets = Vec::new();
        for entry in list {
            let e = entry.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("bracket entries are [i, j, terms]"))?;
            let i = e[0].as_u64().ok_or_else(|| bad("bracket index must be an integer"))? as usize;
            let j = e[1].as_u64().ok_or_else(|| bad("bracket index must be an integer"))? as usize;
            let mut terms = Vec::new();
            for t in e[2].as_array().ok_or_else(|| bad("terms must be an array"))? {
                let t = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("terms are [k, coefficient]"))?;
                let k = t[0].as_u64().ok_or_else(|| bad("term index must be an integer"))? as usize;
                terms.push((k, parse_rational(&t[1])?));
            }
            brackets.push((i, j, terms));
        }
        Self::from_brackets(dim, &brackets)
    }

    pub fn to_json_value(&self) -> Value {
        let brackets: Vec<Value> = self
            .brackets()
            .into_iter()
            .map(|(i, j, terms)| {
                let t: Vec<Value> = terms.into_iter().map(|(k, c)| json!([k, c.to_string()])).collect();
                json!([i, j, t])
            })
            .collect();
        json!({ "dim": self.dim, "brackets": brackets })
    }
}

/// Accepts `"p/q"`, `"p"` or a JSON integer.
pub fn parse_rational(v: &Value) -> Result<Rational, FdLieError> {
    match v {
        Value::String(s) => s.trim().parse::<Rational>().map_err(|_| FdLieError::Json(format!("bad rational `{s}`"))),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| FdLieError::Json(format!("non-integer number {n}; use \"p/q\""))),
        other => Err(FdLieError::Json(format!("expected a rational, found {other}"))),
    }
}

pub fn validate(sc: &StructureConstants) -> Validation {
    let n = sc.dim;
    for i in 0..n {
        for j in i..n {
            let mut s = sc.table[i][j].clone();
            add_scaled(&mut s, &sc.table[j][i], &Rational::one());
            if !s.is_empty() {
                return Validation::Antisymmetry { i: i + 1, j: j + 1 };
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ei, ej, ek) = (sc.unit(i), sc.unit(j), sc.unit(k));
                let mut s = sc.bracket(&ei, &sc.table[j][k]);
                add_scaled(&mut s, &sc.bracket(&ej, &sc.table[k][i]), &Rational::one());
                add_scaled(&mut s, &sc.bracket(&ek, &sc.table[i][j]), &Rational::one());
                if !s.is_empty() {
                    return Validation::Jacobi { i: i + 1, j: j + 1, k: k + 1 };
                }
            }
        }
    }
    Validation::Valid
}

fn span_of_brackets(sc: &StructureConstants, a: &[SparseVec<usize>], b: &[SparseVec<usize>]) -> Vec<SparseVec<usize>> {
    let mut ech = Echelon::new();
    for u in a {
        for v in b {
            ech.insert(sc.bracket(u, v));
        }
    }
    ech.into_reduced().rows().cloned().collect()
}

fn full_space(n: usize) -> Vec<SparseVec<usize>> {
    (0..n).map(|i| SparseVec::from([(i, Rational::one())])).collect()
}

/// Lower central series and the associated graded algebra.
#[derive(Clone, Debug)]
pub struct Filtration {
    /// `dim Γ_1, dim Γ_2, …`, ending with 0.
    pub lcs_dims: Vec<usize>,
    /// Adapted basis vectors in the original coordinates, grouped by degree.
    pub adapted_basis: Vec<Vec<SparseVec<usize>>>,
    /// `gr(g)` in the adapted basis (degree-1 vectors first).
    pub graded: StructureConstants,
}

pub fn lcs_and_gr(sc: &StructureConstants) -> Result<Filtration, FdLieError> {
    let n = sc.dim;
    let all = full_space(n);
    let mut terms: Vec<Vec<SparseVec<usize>>> = vec![all.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_empty() {
            break;
        }
        let next = span_of_brackets(sc, last, &all);
        if next.len() == last.len() {
            return Err(FdLieError::NotNilpotent(next.len()));
        }
        terms.push(next);
    }
    let lcs_dims: Vec<usize> = terms.iter().map(Vec::len).collect();

    // complements C_k with Γ_k = C_k ⊕ Γ_{k+1}
    let mut adapted_basis = Vec::new();
    for k in 0..terms.len() - 1 {
        let mut ech = Echelon::new();
        for v in &terms[k + 1] {
            ech.insert(v.clone());
        }
        let mut chosen = Vec::new();
        for v in &terms[k] {
            if ech.insert(v.clone()) {
                chosen.push(v.clone());
            }
        }
        adapted_basis.push(chosen);
    }

    let flat: Vec<(usize, &SparseVec<usize>)> =
        adapted_basis.iter().enumerate().flat_map(|(d, vs)| vs.iter().map(move |v| (d + 1, v))).collect();
    let mut bmat = QMatrix::zeros(n, n);
    for (col, (_, v)) in flat.iter().enumerate() {
        for (r, c) in v.iter() {
            bmat[(*r, col)] = c.clone();
        }
    }
    let inv = q_echelon(&bmat).transform;
    let coords = |v: &SparseVec<usize>| -> Vec<Rational> {
        (0..n)
            .map(|r| v.iter().fold(Rational::zero(), |acc, (k, c)| acc + &inv[(r, *k)] * c))
            .collect()
    };

    let mut graded = StructureConstants::abelian(n);
    for (p, (da, u)) in flat.iter().enumerate() {
        for (q, (db, v)) in flat.iter().enumerate() {
            let target = da + db;
            let x = coords(&sc.bracket(u, v));
            let mut out = SparseVec::new();
            for (r, (dr, _)) in flat.iter().enumerate() {
                if *dr == target && !x[r].is_zero() {
                    out.insert(r, x[r].clone());
                }
            }
            graded.table[p][q] = out;
        }
    }
    Ok(Filtration { lcs_dims, adapted_basis, graded })
}

/// Isomorphism invariants of a single algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub center_dim: usize,
    /// `dim g^{(0)}, dim g^{(1)}, …` until the series stabilizes.
    pub derived_dims: Vec<usize>,
    pub metabelian: bool,
}

pub fn profile(sc: &StructureConstants) -> Profile {
    let n = sc.dim;
    // x in the center iff Σ_i x_i c[i][j][k] = 0 for all j, k
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let row: Vec<Rational> = (0..n).map(|i| sc.table[i][j].get(&k).cloned().unwrap_or_else(Rational::zero)).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let center_dim = if rows.is_empty() { n } else { n - q_echelon(&QMatrix::from_rows(rows)).rank };

    let mut derived_dims = vec![n];
    let mut current = full_space(n);
    loop {
        let next = span_of_brackets(sc, &current, &current);
        let stable = next.len() == current.len();
        if !stable {
            derived_dims.push(next.len());
        }
        current = next;
        if stable || current.is_empty() {
            break;
        }
    }
    let metabelian = derived_dims.get(2).map_or(true, |&d| d == 0);
    Profile { center_dim, derived_dims, metabelian }
}

/// Invariants of `g` and `gr(g)`. A mismatch proves `g ≇ gr(g)`; matching
/// profiles are only a necessary condition and prove nothing.
#[derive(Clone, Debug)]
pub struct ObstructionProfile {
    pub lcs_dims: Vec<usize>,
    pub original: Profile,
    pub graded: Profile,
}

impl ObstructionProfile {
    pub fn obstruction_found(&self) -> bool {
        self.original != self.graded
    }
}

pub fn obstruction_profile(sc: &StructureConstants) -> Result<ObstructionProfile, FdLieError> {
    let f = lcs_and_gr(sc)?;
    Ok(ObstructionProfile { lcs_dims: f.lcs_dims, original: profile(sc), graded: profile(&f.graded) })
}

/// The `(n + m)`-dimensional algebra with `[e_i, e_j] = Σ_k c^k_{i,j} e_{n+k}`.
///
/// `c[k][i][j]` is 0-based; entries with `j < i` may be left zero and are
/// then filled in as `-c^k_{i,j}`.
pub fn two_step_malcev(n: usize, m: usize, c: &[Vec<Vec<i64>>]) -> Result<StructureConstants, FdLieError> {
    let mut brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for k in 0..m {
        for i in 0..n {
            for j in 0..n {
                let a = c.get(k).and_then(|r| r.get(i)).and_then(|r| r.get(j)).copied().unwrap_or(0);
                let b = c.get(k).and_then(|r| r.get(j)).and_then(|r| r.get(i)).copied().unwrap_or(0);
                if (i == j && a != 0) || (a != 0 && b != 0 && a != -b) {
                    return Err(FdLieError::SymmetryViolation { i: i + 1, j: j + 1, k: k + 1 });
                }
                if i < j && (a != 0 || b != 0) {
                    let v = if a != 0 { a } else { -b };
                    brackets.entry((i + 1, j + 1)).or_default().push((n + k + 1, Rational::from_integer(v.into())));
                }
            }
        }
    }
    let list: Vec<_> = brackets.into_iter().map(|((i, j), t)| (i, j, t)).collect();
    StructureConstants::from_brackets(n + m, &list)
}
