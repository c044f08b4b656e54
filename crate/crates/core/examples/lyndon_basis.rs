//! Lyndon words, standard bracketings and Witt's formula.

use holokit::freelie::{lyndon_basis, standard_factorization, witt_dimension};

fn main() {
    for k in 1..=5 {
        let words = lyndon_basis(2, k);
        let shown: Vec<String> = words.iter().map(|w| w.iter().map(|&l| ["x", "y"][l - 1]).collect()).collect();
        println!("degree {k}: {} words (Witt {}): {}", words.len(), witt_dimension(2, k as u64), shown.join(" "));
    }
    let w = [1, 1, 2, 1, 2];
    let (u, v) = standard_factorization(&w);
    println!("standard factorization of {w:?}: {u:?} · {v:?}");
}
