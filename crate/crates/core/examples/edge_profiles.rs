//! Boundary reduction: the partial derivative in y is positive on G, so the
//! maxima sit on the edges, whose restrictions are certified one by one.
//!
//! `cargo run --release --example edge_profiles`

use univalent::certify::{certify_dy_positive, edge_profiles, AuxKind};

fn main() {
    for kind in [AuxKind::F1, AuxKind::F2, AuxKind::G] {
        let dy = certify_dy_positive(kind);
        println!(
            "{kind}: d/dy >= {:.12} on G ({:?}, {} boxes); closed-form infimum {:.12}",
            dy.certified_inf,
            dy.status,
            dy.boxes_processed,
            kind.dy_infimum()
        );
        // The legacy closed form of the partial disagrees with the function.
        println!("    legacy partial at (0.5, 0.2): {:.6}, actual {:.6}", kind.legacy_dy(0.5, 0.2), kind.dy(0.5f64, 0.2));
        for e in edge_profiles(kind) {
            println!(
                "    {:?}: max {:.12} in [{:.12}, {:.12}] at t = {:.6}; closed-form discrepancy {:.1e}",
                e.edge, e.closed_form_max, e.certified_lo, e.certified_hi, e.certified_argmax, e.max_discrepancy
            );
        }
    }
}
