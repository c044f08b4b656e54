//! Seifert fibered manifolds: presentation, closed-form ranks, engine check.

use holokit::holonomy::{echelonize, graded_invariants};
use holokit::seifert::{closed_form_ranks, seifert_data, SeifertInvariants};

fn main() {
    for src in [include_str!("../data/seifert_g2_b1.json"), include_str!("../data/seifert_g1_euler0.json")] {
        let s = SeifertInvariants::from_json(src).unwrap();
        let d = seifert_data(&s).unwrap();
        println!("{}", d.presentation);
        println!("  e = {}", d.euler);
        let r = closed_form_ranks(&s, 5);
        let show = |v: &[holokit::BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        println!("  phi {} | phi_bar {} | theta {} | theta_bar {}", show(&r.phi), show(&r.phi_bar), show(&r.theta), show(&r.theta_bar));
        let engine = graded_invariants(&echelonize(&d.presentation), 5, &[]).unwrap();
        println!("  engine phi_bar {:?}, theta_bar {:?}", engine.phi_bar, engine.theta_bar);
    }
}
