//! Verifying a Leonard pair
//!
//! This example demonstrates:
//! - checking the defining conditions on an arbitrary matrix pair
//! - listing the Leonard systems found and their eigenvalue orderings
//! - the report for a pair that fails
//!
//! Run with: cargo run --example verify_pair

use leonard::families::make_family;
use leonard::leonard::analyze;
use leonard::parray::FamilyParams;
use leonard::scalars::int;
use leonard::Matrix;

fn show(a: &Matrix, a_star: &Matrix) {
    let analysis = analyze(a, a_star).expect("eigenvalues split");
    let r = &analysis.report;
    println!("  leonard pair: {} ({} systems)", r.leonard_pair, r.systems_found);
    for c in &r.conditions {
        println!("  [{}] {}{}", if c.passed { "ok" } else { "fail" }, c.condition, if c.witnesses.is_empty() {
            String::new()
        } else {
            format!(" at {:?}", c.witnesses)
        });
    }
    for sys in &analysis.systems {
        let th: Vec<String> = sys.theta().iter().map(ToString::to_string).collect();
        let ths: Vec<String> = sys.theta_star().iter().map(ToString::to_string).collect();
        println!("  theta = {th:?}, theta* = {ths:?}");
    }
}

fn main() {
    let (a, a_star) = make_family(&FamilyParams::BannaiIto { tau: int(2), epsilon: 1 }, 4).unwrap().to_dense();
    println!("Bannai-Ito tau=2, d=4");
    show(&a, &a_star);

    // Rescaling one off-diagonal pair of A* keeps its spectrum but breaks the pair.
    let mut bad = a_star.clone();
    bad.set(1, 0, a_star.get(1, 0) * &int(2));
    bad.set(0, 1, a_star.get(0, 1) / &int(2));
    println!("\nperturbed A*");
    show(&a, &bad);
}
