//! Diameters one and two
//!
//! This example demonstrates:
//! - the d = 1 family and the two d = 2 families
//! - the three-way outcome of classification at d = 2
//!
//! Run with: cargo run --example small_diameter

use leonard::classify::classify;
use leonard::families::make_family;
use leonard::leonard::{extract_parameter_array, find_leonard_orderings};
use leonard::parray::FamilyParams;
use leonard::scalars::{int, rat};

fn main() {
    let cases = [
        (FamilyParams::D1 { s: int(3) }, 1),
        (FamilyParams::D2a { y: int(3), z: int(2) }, 2),
        (FamilyParams::D2b { s: int(2), t: int(3), z: rat(5, 2) }, 2),
    ];
    for (fam, d) in cases {
        let (a, a_star) = make_family(&fam, d).unwrap().to_dense();
        let sys = &find_leonard_orderings(&a, &a_star).unwrap()[0];
        let pa = extract_parameter_array(sys).unwrap();
        println!("{} d={d}: varphi = {:?}, phi = {:?}", fam.name(), pa.varphi.iter().map(ToString::to_string).collect::<Vec<_>>(),
            pa.phi.iter().map(ToString::to_string).collect::<Vec<_>>());
        for (label, x, y) in [("as built", a.clone(), a_star.clone()), ("anti-transposed", a.anti_transpose(), a_star.anti_transpose())] {
            let r = classify(&x, &y).unwrap();
            println!("  {label}: {} (anti-transpose used: {}, verified: {})", r.family.name(), r.anti_transpose, r.verify(&x, &y));
        }
    }
}
