//! Weights, initial forms and mildness diagnostics.

use holokit::gradedgr::{mildness_check, onerelator_report};
use holokit::words::parse_presentation;

fn main() {
    for src in [include_str!("../data/whitehead.pres"), include_str!("../data/weight3.pres")] {
        let p = parse_presentation(src).unwrap();
        let r = onerelator_report(&p, 6).unwrap();
        println!("{p}");
        println!("  weight {}, ini = {}", r.weight, r.initial_form.display_with(p.names()));
        println!("  graded-formal: {}", r.graded_formal);
        println!("  holonomy ranks {:?}, LCS ranks {:?}", r.holonomy_dims, r.lcs_dims);
    }

    let p = parse_presentation(include_str!("../data/three_quadratic.pres")).unwrap();
    let m = mildness_check(&p, 6, None).unwrap();
    println!("{p}");
    println!("  leading words {:?}: {:?}", m.leading_words, m.combinatorial);
    println!("  Hilbert check agrees through degree {}: {}", m.hilbert.through_degree, m.hilbert.agrees());
    println!("  Lie ranks {:?}", m.lie_dims);
}
