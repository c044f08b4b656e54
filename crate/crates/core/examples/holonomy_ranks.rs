//! Holonomy Lie algebra of the genus-2 surface group, checked three ways.

use holokit::gradedgr::labute_phi;
use holokit::holonomy::{echelonize, holonomy_presentation, rank_report};
use holokit::series::{pbw_invert, RationalSeries};
use holokit::words::parse_presentation;

fn main() {
    let p = parse_presentation(include_str!("../data/surface2.pres")).unwrap();
    let h = holonomy_presentation(&echelonize(&p)).unwrap();
    for r in h.lie.relations() {
        println!("relation: {}", r.display_with(&h.names));
    }
    let cap = 6;
    let report = rank_report(&h.lie, cap, &[2]);
    let labute: Vec<_> = (1..=cap as u64).map(|k| labute_phi(4, 2, k)).collect();
    let inverted = pbw_invert(&RationalSeries::from_integers(&[1, -4, 1], cap).inverse().unwrap()).unwrap();
    println!("graded quotient: {:?}", report.phi_bar);
    println!("Labute formula:  {:?}", labute.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("PBW inversion:   {:?}", inverted.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("U(h) = {}", report.hilbert);
}
