//! Chen ranks: dimensions of h/h'' computed directly and by closed formula.

use holokit::freelie::{derived_dims, graded_quotient, GradedLiePresentation};
use holokit::holonomy::{echelonize, holonomy_presentation};
use holokit::series::{chen_rank_formulas, ChenMode};
use holokit::words::parse_presentation;

fn main() {
    let cap = 6;
    let free = graded_quotient(&GradedLiePresentation::free(2), cap).unwrap();
    println!("free, computed: {:?}", derived_dims(&free, 2).quotient);
    println!("free, formula:  {:?}", chen_rank_formulas(ChenMode::Free { n: 2 }, cap).unwrap());

    let p = parse_presentation(include_str!("../data/surface2.pres")).unwrap();
    let h = holonomy_presentation(&echelonize(&p)).unwrap();
    let g = graded_quotient(&h.lie, 5).unwrap();
    println!("surface, computed: {:?}", derived_dims(&g, 2).quotient);
    println!("surface, formula:  {:?}", chen_rank_formulas(ChenMode::Surface { g: 2 }, 5).unwrap());
    println!("surface, h/h''':   {:?}", derived_dims(&g, 3).quotient);
}
