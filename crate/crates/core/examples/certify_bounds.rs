//! Interval branch-and-bound certificates for the three auxiliary maxima,
//! plus a refuted claim and a starved budget.
//!
//! `cargo run --release --example certify_bounds`

use std::time::Instant;

use univalent::certify::{certify_max, grid_oracle, AuxKind, DEFAULT_MAX_BOXES, DEFAULT_TOL};
use univalent::Result;

fn main() -> Result<()> {
    for kind in [AuxKind::F1, AuxKind::F2, AuxKind::G] {
        let start = Instant::now();
        let c = certify_max(kind, kind.proved_bound(), DEFAULT_TOL, DEFAULT_MAX_BOXES)?;
        let elapsed = start.elapsed();
        let (grid, at) = grid_oracle(kind, 2001)?;
        println!(
            "{kind}: {:?} sup <= {:.9}, attained {:.9} at ({:.4}, {:.4}); {} boxes, depth {}, {:.1?}; grid max {grid:.9} at {at:?}",
            c.status, c.certified_sup_hi, c.attained_lo, c.witness_x, c.witness_y, c.boxes_processed, c.max_depth,
            elapsed
        );
    }
    let refuted = certify_max(AuxKind::G, 10.5, DEFAULT_TOL, DEFAULT_MAX_BOXES)?;
    println!("g <= 10.5: {:?}, witness ({}, {})", refuted.status, refuted.witness_x, refuted.witness_y);
    let starved = certify_max(AuxKind::F2, 3.0, 1e-9, 100)?;
    println!("f2 at tol 1e-9 with 100 boxes: {:?}", starved.status);
    Ok(())
}
