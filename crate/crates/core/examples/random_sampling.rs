//! Random members of U: excess of each proven functional, the Schwarz
//! coefficient bounds and the Bieberbach spot-check.
//!
//! `cargo run --release --example random_sampling -- [COUNT] [SEED]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use univalent::functionals::PROVEN_SPECS;
use univalent::schwarz::lemma1_check;
use univalent::search::{sample, DEFAULT_MARGIN};
use univalent::{Result, DEFAULT_ORDER};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2000);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut worst = [f64::NEG_INFINITY; 6];
    let mut lemma_failures = 0;
    let mut bieberbach: f64 = f64::NEG_INFINITY;
    for i in 0..count {
        let f = sample(&mut rng, i % 7, DEFAULT_MARGIN, DEFAULT_ORDER)?.function;
        for (w, spec) in worst.iter_mut().zip(PROVEN_SPECS) {
            *w = w.max(spec.excess(&f)?);
        }
        let om = f.omega();
        lemma_failures += usize::from(!lemma1_check(om.c(1), om.c(2), om.c(3), 1e-9).pass);
        bieberbach = (2..=8).map(|n| f.a(n).norm() - n as f64).fold(bieberbach, f64::max);
    }
    println!("{count} samples, degrees 0..=6, seed {seed}");
    for (w, spec) in worst.iter().zip(PROVEN_SPECS) {
        println!("  {:<7} largest value - bound = {w:+.6}", spec.to_string());
    }
    println!("  coefficient-bound failures: {lemma_failures}");
    println!("  max |a_n| - n for n <= 8: {bieberbach:+.6}");
    Ok(())
}
