//! Characteristic polynomials of zero-diagonal tridiagonal matrices
//!
//! This example demonstrates:
//! - the band-product formula against a determinant computation
//! - the matching-style sums pi(d, i)
//!
//! Run with: cargo run --example char_poly

use leonard::families::{char_poly_formula, pi_sum, ZeroDiagTD};
use leonard::scalars::{int, rat};
use leonard::Field;

fn main() {
    let z = vec![int(1), rat(2, 3), int(-3), int(5), rat(1, 2)];
    for i in 0..=3 {
        println!("pi(5, {i}) = {}", pi_sum(&z, i).unwrap());
    }
    let m = ZeroDiagTD::new(vec![Field::Rational.one(); 5], z).unwrap();
    let formula = char_poly_formula(&m);
    let det = m.to_dense().char_poly();
    println!("formula:     {formula}");
    println!("determinant: {det}");
    println!("equal: {}", formula == det);

    let general = ZeroDiagTD::new(vec![int(2), int(-1), rat(1, 4)], vec![int(3), int(7), int(8)]).unwrap();
    println!("\ngeneral bands: {}", char_poly_formula(&general));
    println!("equal: {}", char_poly_formula(&general) == general.to_dense().char_poly());
}
