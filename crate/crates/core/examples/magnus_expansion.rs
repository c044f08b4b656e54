//! Fox derivatives, Magnus expansions and the degree-2 part κ₂ of a word.

use holokit::foxmagnus::{epsilon_seq, fox_derivative, kappa2, magnus_free, weight_and_initial_form};
use holokit::holonomy::echelonize;
use holokit::words::{parse_presentation, parse_word};

fn main() {
    let names: Vec<String> = ["x", "y"].map(String::from).to_vec();
    let w = parse_word("[x,[x,y]]", &names).unwrap();
    println!("w = {}", w.display_with(&names));
    println!("∂w/∂x = {}", fox_derivative(&w, 1, 2).unwrap());
    println!("M(w) to degree 4 = {}", magnus_free(&w, 4));
    println!("ε_(1,1,2)(w) = {}", epsilon_seq(&w, &[1, 1, 2]));

    let f = weight_and_initial_form(&w, 6).unwrap();
    println!("weight {:?}, initial form {}", f.weight, f.ini.unwrap().display_with(&names));

    let p = parse_presentation(include_str!("../data/echelon6.pres")).unwrap();
    let e = echelonize(&p);
    let r4 = &e.words()[3];
    println!("κ₂ of w4 in the basis {:?}:", e.h1_names());
    for row in kappa2(r4, e.projection()).unwrap().to_rows() {
        println!("  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("  "));
    }
}
