//! Multi-restart simplex search for the extremal value of a functional,
//! persisted as JSONL.
//!
//! `cargo run --release --example extremal_search -- [SPEC] [RESTARTS] [SEED]`

use univalent::search::{load_jsonl, run_and_persist, SearchConfig};
use univalent::{FunctionalSpec, Result};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let spec: FunctionalSpec = args.next().as_deref().unwrap_or("Z:3").parse()?;
    let restarts: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let config = SearchConfig {
        restarts,
        ..SearchConfig::new(spec, seed)
    };
    let path = std::env::temp_dir().join(format!("univalent-search-{seed}.jsonl"));
    let records = run_and_persist(&config, &path)?;
    let best = records.last().expect("final record");
    for (i, r) in records[..records.len() - 1].iter().enumerate() {
        println!("restart {i:>3}: {:.8} ({} evaluations, {} ms)", r.value, r.evaluations, r.wall_ms);
    }
    println!("best {spec}: {:.10} vs bound {} (a2 = {:.6}, |g0| = {:.8})", best.value, best.bound, best.a2,
        best.gammas.first().map_or(0.0, |g| g.norm()));
    let reloaded = load_jsonl(&path)?;
    println!("{} records in {}; last re-evaluates to {:.10}", reloaded.len(), path.display(),
        reloaded.last().expect("non-empty").reevaluate()?);
    Ok(())
}
