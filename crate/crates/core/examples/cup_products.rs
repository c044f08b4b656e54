//! Cup products on H¹ read from an echelon presentation.

use holokit::holonomy::{cup_table, echelonize};
use holokit::words::parse_presentation;

fn main() {
    let p = parse_presentation(include_str!("../data/echelon6.pres")).unwrap();
    let e = echelonize(&p);
    println!("pivots {:?}, H1 basis {:?}, b1 = {}", e.pivots(), e.h1_names(), e.betti());
    for (k, w) in e.words().iter().enumerate() {
        println!("w{} = {}", k + 1, w.display_with(p.names()));
    }
    let t = cup_table(&e).unwrap();
    for (i, j, c, v) in t.entries() {
        println!("(u{i} ∪ u{j}, w{c}) = {v}");
    }
}
