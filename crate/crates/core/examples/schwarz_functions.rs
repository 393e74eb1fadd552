//! Schwarz functions from Schur parameters: coefficients, boundary
//! supremum of |w'| and the coefficient bounds they satisfy.
//!
//! `cargo run --example schwarz_functions`

use univalent::schwarz::{self, lemma1_check, SchurParams, SchwarzFunction, BOUNDARY_GRID};
use univalent::{Complex64, Result};

fn main() -> Result<()> {
    let cases = [
        ("constant 0.5", vec![Complex64::new(0.5, 0.0)]),
        ("two levels", vec![Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)]),
        ("complex, three levels", vec![Complex64::new(0.3, 0.6), Complex64::new(-0.2, 0.1), Complex64::new(0.05, -0.1)]),
    ];
    for (label, gammas) in cases {
        let params = SchurParams::new(gammas)?;
        let omega = SchwarzFunction::new(params.clone(), 16)?;
        let (c1, c2, c3) = (omega.c(1), omega.c(2), omega.c(3));
        let report = lemma1_check(c1, c2, c3, 1e-9);
        println!("{label}:");
        println!("  c1 = {c1:.6}, c2 = {c2:.6}, c3 = {c3:.6}");
        println!(
            "  sup |w'| on |z| = 1: {:.6} ({BOUNDARY_GRID}-point grid, corrected); raw 256-point max {:.6}",
            omega.deriv_sup(),
            schwarz::deriv_boundary_max_observed(&params, 256)?
        );
        println!("  admissible for U (sup < 1): {}", omega.deriv_sup() < 1.0);
        println!("  coefficient bounds hold: {} (slacks {:.4?})", report.pass, report.slacks);
    }

    let koebe = SchwarzFunction::koebe_limit(0.0, 16);
    let r = lemma1_check(koebe.c(1), koebe.c(2), koebe.c(3), 1e-12);
    println!("Koebe limit w(z) = -z: sup |w'| = {}, slacks {:?}", koebe.deriv_sup(), r.slacks);
    Ok(())
}
