//! Classifying a disguised pair
//!
//! This example demonstrates:
//! - hiding a family instance behind scaling, diagonal conjugation and anti-transpose
//! - recovering the family, the scalars and the diagonal witness
//! - the solved-equation transcript
//!
//! Run with: cargo run --example classify_pair

use leonard::classify::classify;
use leonard::families::make_family;
use leonard::parray::FamilyParams;
use leonard::scalars::{int, rat};

fn main() {
    let fam = FamilyParams::QRacahLT { q: int(3), s: int(5) };
    let (a, a_star) = make_family(&fam, 4).unwrap().to_dense();
    let dg = vec![int(1), rat(-2, 7), int(3), rat(5, 2), int(-1)];
    let a = a.conjugate_by_diagonal(&dg).unwrap().anti_transpose().scale(&rat(3, 4));
    let a_star = a_star.conjugate_by_diagonal(&dg).unwrap().anti_transpose().scale(&int(-6));

    let r = classify(&a, &a_star).expect("Leonard pair");
    println!("family: {} {:?}", r.family.name(), r.family.scalars().iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>());
    println!("xi = {}, xi* = {}, anti-transpose = {}", r.xi, r.xi_star, r.anti_transpose);
    println!("diagonal = {:?}", r.diagonal.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("witness verifies: {}", r.verify(&a, &a_star));
    println!("\ntranscript:");
    for step in &r.transcript {
        println!("  {}  ({})  {:?}", step.equation, step.reference, step.solved);
    }
}
