//! Askey-Wilson relations
//!
//! This example demonstrates:
//! - computing the eight relation coefficients from a Leonard system
//! - comparing them with the family's specialised values
//! - a perturbed coefficient leaving a nonzero residual
//!
//! Run with: cargo run --example askey_wilson

use leonard::awrel::{aw_residuals, closed_form_coefficients, system_coefficients, verify_aw_relations};
use leonard::families::make_family;
use leonard::leonard::find_leonard_orderings;
use leonard::parray::FamilyParams;
use leonard::scalars::int;

fn main() {
    for (fam, d) in [
        (FamilyParams::Krawtchouk { s: int(2) }, 3),
        (FamilyParams::BannaiIto { tau: int(2), epsilon: -1 }, 4),
        (FamilyParams::QRacahCompact { q: int(2), s: int(3) }, 3),
    ] {
        let (a, a_star) = make_family(&fam, d).unwrap().to_dense();
        let sys = &find_leonard_orderings(&a, &a_star).unwrap()[0];
        let c = system_coefficients(sys).unwrap();
        println!("{} d={d}", fam.name());
        println!("  beta={} rho={} rho*={} omega={}", c.beta, c.rho, c.rho_star, c.omega);
        println!("  gamma={} gamma*={} eta={} eta*={}", c.gamma, c.gamma_star, c.eta, c.eta_star);
        let special = closed_form_coefficients(&fam, d).unwrap();
        println!("  matches specialised values: {}", special == c);
        println!("  relations hold: {}", verify_aw_relations(&a, &a_star, &c));

        let mut off = c.clone();
        off.omega = &off.omega + &int(1);
        let (r1, _) = aw_residuals(&a, &a_star, &off);
        println!("  omega + 1: first residual zero? {}", r1.is_zero());
    }
}
