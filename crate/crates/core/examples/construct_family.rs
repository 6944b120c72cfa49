//! Constructing family instances
//!
//! This example demonstrates:
//! - building the dense TD-TD pair of a Krawtchouk and a q-Racah instance
//! - reading the band vectors x, y, z
//! - admissibility errors for bad parameters
//!
//! Run with: cargo run --example construct_family

use leonard::families::make_family;
use leonard::parray::FamilyParams;
use leonard::scalars::{int, rat};

fn main() {
    let kraw = FamilyParams::Krawtchouk { s: int(2) };
    let pair = make_family(&kraw, 4).expect("admissible");
    println!("Krawtchouk s=2, d=4");
    println!("  x = {:?}", pair.x.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  y = {:?}", pair.y.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  z = {:?}", pair.z.iter().map(ToString::to_string).collect::<Vec<_>>());

    let lt = FamilyParams::QRacahLT { q: int(3), s: rat(1, 3) };
    let (a, a_star) = make_family(&lt, 3).expect("admissible").to_dense();
    println!("\nq-Racah (opposite ratios) q=3, s=1/3, d=3");
    for (name, m) in [("A", &a), ("A*", &a_star)] {
        println!("  {name}:");
        for row in m.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>8}")).collect();
            println!("    {}", cells.join(" "));
        }
    }

    for (fam, d) in [
        (FamilyParams::Krawtchouk { s: int(-1) }, 3),
        (FamilyParams::BannaiIto { tau: int(1), epsilon: 1 }, 4),
        (FamilyParams::QRacahCompact { q: int(2), s: int(4) }, 3),
    ] {
        match make_family(&fam, d) {
            Ok(_) => println!("\n{} d={d}: built", fam.name()),
            Err(e) => println!("\n{} d={d}: rejected ({e})", fam.name()),
        }
    }
}
