//! Independent reference computations used by the integration tests.
//! Nothing here calls into the library's algorithms; only its data types.
#![allow(dead_code)]

use std::collections::BTreeMap;

use holokit::freelie::LieElement;
use holokit::words::Word;
use num_traits::{Signed, ToPrimitive};

const P: u128 = (1 << 61) - 1;

fn modp(c: &holokit::Rational) -> u64 {
    let reduce = |x: &holokit::BigInt| -> u128 {
        let r = (x % holokit::BigInt::from(P as u64)).to_i128().unwrap();
        r.rem_euclid(P as i128) as u128
    };
    let n = reduce(c.numer());
    let d = reduce(c.denom());
    (n * inv(d) % P) as u64
}

fn pow(mut b: u128, mut e: u128) -> u128 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn inv(x: u128) -> u128 {
    assert!(x % P != 0);
    pow(x, P - 2)
}

fn lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w[i..].iter().chain(&w[..i]).cmp(w.iter()) == std::cmp::Ordering::Greater)
}

/// Expansion of the standard bracketing of a Lyndon word, integer coefficients.
pub fn bracket_expansion(w: &[usize]) -> BTreeMap<Vec<usize>, i64> {
    if w.len() == 1 {
        return BTreeMap::from([(w.to_vec(), 1)]);
    }
    let split = (1..w.len()).find(|&i| lyndon(&w[i..])).unwrap();
    let a = bracket_expansion(&w[..split]);
    let b = bracket_expansion(&w[split..]);
    let mut out = BTreeMap::new();
    for (u, x) in &a {
        for (v, y) in &b {
            *out.entry([u.clone(), v.clone()].concat()).or_insert(0) += x * y;
            *out.entry([v.clone(), u.clone()].concat()).or_insert(0) -= x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn to_tensor_modp(e: &LieElement) -> BTreeMap<Vec<usize>, u64> {
    let mut out: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for (w, c) in e.terms() {
        let c = modp(c) as u128;
        for (u, k) in bracket_expansion(w) {
            let k = (k as i128).rem_euclid(P as i128) as u128;
            let slot = out.entry(u).or_insert(0);
            *slot = ((*slot as u128 + c * k) % P) as u64;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Dense row space over F_p with incremental insertion.
struct Span {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Span {
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (p, r) in &self.rows {
            let c = v[*p] as u128;
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = ((*x as u128 + P - c * (*y as u128) % P) % P) as u64;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<u64>) {
        let mut v = self.reduce(v);
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let s = inv(v[p] as u128);
            for x in v.iter_mut() {
                *x = ((*x as u128) * s % P) as u64;
            }
            for (_, r) in self.rows.iter_mut() {
                let c = r[p] as u128;
                if c != 0 {
                    for (x, y) in r.iter_mut().zip(&v) {
                        *x = ((*x as u128 + P - c * (*y as u128) % P) % P) as u64;
                    }
                }
            }
            self.rows.push((p, v));
        }
    }
}

fn word_index(w: &[usize], n: usize) -> usize {
    w.iter().fold(0, |acc, &l| acc * n + (l - 1))
}

/// Graded dimensions `1..=max_degree` of `T(V) / ⟨relations⟩`, all generators
/// in degree 1, computed from `J_k = R_k + V·J_{k-1} + J_{k-1}·V`.
pub fn associative_quotient_dims(n: usize, relations: &[LieElement], max_degree: usize) -> Vec<usize> {
    let tensors: Vec<BTreeMap<Vec<usize>, u64>> = relations.iter().map(to_tensor_modp).collect();
    let mut prev: Vec<Vec<u64>> = Vec::new();
    let mut dims = Vec::new();
    for k in 1..=max_degree {
        let size = n.pow(k as u32);
        let mut span = Span { rows: Vec::new() };
        for t in &tensors {
            if t.keys().next().map(Vec::len) == Some(k) {
                let mut v = vec![0; size];
                for (w, c) in t {
                    v[word_index(w, n)] = *c;
                }
                span.insert(v);
            }
        }
        let prev_size = size / n;
        for row in &prev {
            for g in 0..n {
                let mut left = vec![0; size];
                let mut right = vec![0; size];
                for (i, &c) in row.iter().enumerate() {
                    if c != 0 {
                        left[g * prev_size + i] = c;
                        right[i * n + g] = c;
                    }
                }
                span.insert(left);
                span.insert(right);
            }
        }
        dims.push(size - span.rows.len());
        prev = span.rows.into_iter().map(|(_, r)| r).collect();
    }
    dims
}

/// Coefficients `1..=max_degree` of `∏ (1 - t^k)^{-d_k}`.
pub fn pbw_coefficients(d: &[usize], max_degree: usize) -> Vec<u128> {
    let mut s = vec![0u128; max_degree + 1];
    s[0] = 1;
    for (k, &dk) in d.iter().enumerate().map(|(i, x)| (i + 1, x)) {
        for _ in 0..dk {
            for m in k..=max_degree {
                s[m] += s[m - k];
            }
        }
    }
    s[1..].to_vec()
}

/// Coefficient of `x_i x_j` in the Magnus expansion, by counting letter pairs.
pub fn magnus_quadratic(w: &Word, i: usize, j: usize) -> i64 {
    let letters: Vec<(usize, i64)> = w.letters().collect();
    let mut total = 0;
    for (p, &(g, s)) in letters.iter().enumerate() {
        if g == i && i == j && s < 0 {
            total += 1;
        }
        if g == i {
            total += letters[p + 1..].iter().filter(|(h, _)| *h == j).map(|(_, t)| s * t).sum::<i64>();
        }
    }
    total
}

/// Coefficient of `x_i` in the Magnus expansion.
pub fn magnus_linear(w: &Word, i: usize) -> i64 {
    w.letters().filter(|(g, _)| *g == i).map(|(_, s)| s).sum()
}

pub fn rational_to_i64(c: &holokit::Rational) -> i64 {
    assert!(c.is_integer());
    let v = c.to_integer();
    assert!(v.abs() < holokit::BigInt::from(i64::MAX));
    v.to_i64().unwrap()
}
