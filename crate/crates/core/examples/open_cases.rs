//! Exploration of functionals whose bounds are only conjectured on U.
//! Values are reported, never asserted.
//!
//! `cargo run --release --example open_cases -- [RESTARTS]`

use univalent::classu::ClassUFunction;
use univalent::search::{maximize, SearchConfig};
use univalent::{FunctionalSpec, Result, DEFAULT_ORDER};

fn main() -> Result<()> {
    let restarts: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let koebe = ClassUFunction::koebe(0.0, DEFAULT_ORDER);
    for s in ["GZ:3,3", "Z:4", "GZ:2,5", "K:3,2"] {
        let spec: FunctionalSpec = s.parse()?;
        let best = maximize(&SearchConfig {
            restarts,
            ..SearchConfig::new(spec, 3)
        })?;
        println!(
            "{s:<7} conjectured bound {:>6}, Koebe {:>10.6}, search best {:>10.6} (excess {:+.2e})",
            spec.bound(),
            spec.evaluate(&koebe)?,
            best.value,
            best.excess
        );
    }
    Ok(())
}
