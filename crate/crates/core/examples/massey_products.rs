//! Massey products on the relator class of a one-relator group.

use holokit::holonomy::{massey_onerelator, MasseyOutcome};
use holokit::words::parse_presentation;

fn main() {
    let p = parse_presentation(include_str!("../data/weight3.pres")).unwrap();
    let r = &p.relators()[0];
    for idx in [vec![1, 2], vec![1, 1, 2], vec![1, 2, 2], vec![2, 1, 1]] {
        match massey_onerelator(r, &idx) {
            Ok(MasseyOutcome::Defined(v)) => println!("{idx:?}: {v}"),
            Ok(MasseyOutcome::ConditionFails { s, t, value, .. }) => {
                println!("{idx:?}: undefined, ε over positions {s}..{t} is {value}")
            }
            Err(e) => println!("{idx:?}: {e}"),
        }
    }
}
