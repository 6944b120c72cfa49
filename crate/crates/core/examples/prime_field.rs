//! Working over a prime field
//!
//! This example demonstrates:
//! - building and classifying instances over GF(p)
//! - q recovered from beta by a square root in GF(p)
//! - the Bannai-Ito characteristic restriction
//!
//! Run with: cargo run --example prime_field

use leonard::classify::classify;
use leonard::families::make_family;
use leonard::parray::FamilyParams;
use leonard::Field;

fn main() {
    let f = Field::prime(1_000_003).unwrap();
    for (fam, d) in [
        (FamilyParams::Krawtchouk { s: f.int(7) }, 6),
        (FamilyParams::BannaiIto { tau: f.int(2), epsilon: 1 }, 6),
        (FamilyParams::QRacahEven { q: f.int(5), s: f.ratio(1, 3).unwrap() }, 4),
    ] {
        let (a, a_star) = make_family(&fam, d).unwrap().to_dense();
        let r = classify(&a, &a_star).unwrap();
        println!("{} d={d} over {f}: classified as {} with {:?}", fam.name(), r.family.name(),
            r.family.scalars().iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>());
    }

    let small = Field::prime(5).unwrap();
    let fam = FamilyParams::BannaiIto { tau: small.int(0), epsilon: 1 };
    match make_family(&fam, 4) {
        Ok(pair) => {
            let (a, a_star) = pair.to_dense();
            println!("GF(5), d=4 Bannai-Ito: {:?}", classify(&a, &a_star).map(|r| r.family.name()));
        }
        Err(e) => println!("GF(5), d=4 Bannai-Ito: {e}"),
    }
}
