//! Power-series utilities: PBW products, their inversion, and the Koszul test.

use holokit::series::{koszul_reciprocal, pbw_invert, pbw_series, RationalSeries, SeriesError};

fn main() {
    let h = RationalSeries::from_integers(&[1, 4, 5], 6);
    let k = koszul_reciprocal(&h).unwrap();
    println!("h(t) = {h}");
    println!("1/h(-t) = {}", k.dual);
    println!("first negative coefficient: {:?}", k.first_negative);

    let u = pbw_series(&[2, 1, 2, 3, 6, 9], 6).unwrap();
    println!("PBW series of the free Lie algebra on two generators: {u}");
    println!("recovered ranks: {:?}", pbw_invert(&u).unwrap());

    match pbw_invert(&RationalSeries::from_integers(&[1, 1, -1], 4)) {
        Err(SeriesError::NotPbw { degree, value }) => println!("1 + t - t^2: degree {degree} would need rank {value}"),
        other => println!("{other:?}"),
    }
}
