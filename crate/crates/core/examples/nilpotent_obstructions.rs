//! Comparing a nilpotent Lie algebra with its associated graded.

use holokit::fdlie::{lcs_and_gr, obstruction_profile, two_step_malcev, StructureConstants};

fn report(name: &str, g: &StructureConstants) {
    let f = lcs_and_gr(g).unwrap();
    let p = obstruction_profile(g).unwrap();
    println!("{name}: LCS dims {:?}", f.lcs_dims);
    println!("  g:     center {}, derived {:?}, metabelian {}", p.original.center_dim, p.original.derived_dims, p.original.metabelian);
    println!("  gr(g): center {}, derived {:?}, metabelian {}", p.graded.center_dim, p.graded.derived_dims, p.graded.metabelian);
    println!("  obstruction: {}", p.obstruction_found());
}

fn main() {
    report("5-dimensional", &StructureConstants::from_json(include_str!("../data/nilpotent5.json")).unwrap());
    report("7-dimensional", &StructureConstants::from_json(include_str!("../data/filiform7.json")).unwrap());
    // two symplectic pairs sharing one central direction
    let c = vec![vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]]];
    report("two-step", &two_step_malcev(4, 1, &c).unwrap());
}
