//! Parameter arrays
//!
//! This example demonstrates:
//! - extracting the parameter array of a Leonard system
//! - comparing split-basis and trace-formula split sequences
//! - the D4 relatives and the fundamental parameter beta
//!
//! Run with: cargo run --example parameter_arrays

use leonard::families::make_family;
use leonard::leonard::{extract_parameter_array, find_leonard_orderings, trace_split_sequence};
use leonard::parray::{d4_relative, fundamental_beta, is_opposite_symmetric, validate, FamilyParams, D4};
use leonard::scalars::int;
use leonard::Scalar;

fn fmt(v: &[Scalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn main() {
    let fam = FamilyParams::QRacahCompact { q: int(2), s: int(3) };
    let (a, a_star) = make_family(&fam, 3).unwrap().to_dense();
    let sys = &find_leonard_orderings(&a, &a_star).unwrap()[0];
    let pa = extract_parameter_array(sys).unwrap();
    println!("theta   = [{}]", fmt(&pa.theta));
    println!("theta*  = [{}]", fmt(&pa.theta_star));
    println!("varphi  = [{}]", fmt(&pa.varphi));
    println!("phi     = [{}]", fmt(&pa.phi));
    println!("beta    = {}", fundamental_beta(&pa).unwrap());
    println!("valid: {}, opposite-symmetric: {}", validate(&pa).all_passed(), is_opposite_symmetric(&pa));

    let (tv, tp) = trace_split_sequence(sys).unwrap();
    println!("trace formula agrees: {}", tv == pa.varphi && tp == pa.phi);

    for m in [D4::Down, D4::DoubleDown, D4::DownDoubleDown] {
        let rel = d4_relative(&pa, m);
        let direct = extract_parameter_array(&sys.relative(m)).unwrap();
        println!("{m:?}: varphi = [{}], matches relative system: {}", fmt(&rel.varphi), rel == direct);
    }
}
