//! Eigenvalues and primitive idempotents
//!
//! This example demonstrates:
//! - exact eigenvalues of a rational matrix
//! - the primitive idempotents and their defining identities
//!
//! Run with: cargo run --example idempotents

use leonard::families::make_family;
use leonard::linalg::{eigenvalues, primitive_idempotents};
use leonard::parray::FamilyParams;
use leonard::scalars::{int, rat};
use leonard::Matrix;

fn main() {
    let (a, _) = make_family(&FamilyParams::QRacahCompact { q: rat(1, 2), s: int(3) }, 3).unwrap().to_dense();
    let eig = eigenvalues(&a).unwrap();
    println!("eigenvalues: {:?}", eig.iter().map(ToString::to_string).collect::<Vec<_>>());
    let set = primitive_idempotents(&a, &eig).unwrap();
    let f = a.field();
    let n = a.dim();
    let mut sum = Matrix::zeros(f, n);
    let mut weighted = Matrix::zeros(f, n);
    for (th, e) in set.eigenvalues.iter().zip(&set.idempotents) {
        println!("E for {th}: idempotent {}, trace {}", &(e * e) == e, e.trace());
        sum = &sum + e;
        weighted = &weighted + &e.scale(th);
    }
    println!("sum is identity: {}", sum == Matrix::identity(f, n));
    println!("sum of theta_i E_i is A: {}", weighted == a);
}
