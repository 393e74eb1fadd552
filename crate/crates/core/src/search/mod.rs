//! Randomized extremal search over class-U parameters.
//!
//! A candidate is `(a2, g_0..g_{d-1})`. The optimizer works in an
//! unconstrained real vector `(p, q, u_0, ..., u_{d-1})`. Each `u_k in R^2`
//! is squashed into the disk by `u -> s tanh|u| u/|u|` with `s = 1 - margin`.
//! `a2` is read in the frame of the ellipse that bounds the admissible `a2`
//! for the constant Schur function `g_0`, so the extremal configurations do
//! not sit at the tip of a needle.
//!
//! Inside the optimizer every candidate is first repaired onto a cheaply
//! screened feasible set; the best screened candidates of a restart are then
//! confirmed with the full membership test before they are recorded.

pub mod simplex;

use std::f64::consts::TAU;
use std::fs::OpenOptions;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classu::{self, ClassUFunction};
use crate::error::{Error, Result};
use crate::functionals::FunctionalSpec;
use crate::schwarz::{self, SchurParams, SchwarzFunction, MAX_GAMMA_MODULUS};

use self::simplex::SimplexOptions;

pub const DEFAULT_DEGREE: usize = 4;
pub const DEFAULT_RESTARTS: usize = 50;
pub const DEFAULT_ITERATIONS: usize = 500;
pub const DEFAULT_MARGIN: f64 = 1e-6;
pub const SAMPLE_RADIUS_A2: f64 = 2.0;
pub const SAMPLE_RADIUS_GAMMA: f64 = 0.999;
pub const MAX_SAMPLE_TRIES: usize = 10_000;

/// Coarse boundary grids used, in order, to reject candidates before the full
/// sweep.
const PREFILTER_GRIDS: [usize; 2] = [32, 256];
/// Boundary grid of the in-optimizer membership screen.
const SCREEN_GRID: usize = 128;
/// Starting samples of the in-optimizer winding walk.
const SCREEN_WINDING_SAMPLES: usize = 32;
/// The `a2` coordinates may leave the constant-function ellipse by this
/// factor; higher Schur parameters reshape the admissible set.
const A2_REACH: f64 = 1.5;
/// Bisection steps used when repairing a candidate.
const REPAIR_STEPS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub spec: FunctionalSpec,
    pub degree: usize,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub order: usize,
    pub margin: f64,
}

impl SearchConfig {
    pub fn new(spec: FunctionalSpec, seed: u64) -> Self {
        Self {
            spec,
            degree: DEFAULT_DEGREE,
            restarts: DEFAULT_RESTARTS,
            iterations: DEFAULT_ITERATIONS,
            seed,
            order: crate::DEFAULT_ORDER,
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidInput("restarts must be at least 1".into()));
        }
        if self.order < self.spec.required_index() {
            return Err(Error::InsufficientOrder {
                needed: self.spec.required_index(),
                order: self.order,
            });
        }
        if !(self.margin > 0.0 && self.margin < 1.0) {
            return Err(Error::InvalidInput(format!("margin must lie in (0, 1), got {}", self.margin)));
        }
        Ok(())
    }
}

/// A feasible sampled function together with its parameters.
#[derive(Debug, Clone)]
pub struct Sample {
    pub a2: Complex64,
    pub gammas: Vec<Complex64>,
    pub function: ClassUFunction,
}

fn uniform_disk(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen::<f64>() * TAU)
}

/// Builds the function for `(a2, gammas)` if it is a member with the given
/// margin. Cheap checks run first.
pub fn feasible_function(
    a2: Complex64,
    gammas: &[Complex64],
    margin: f64,
    order: usize,
) -> Result<Option<ClassUFunction>> {
    let params = match SchurParams::new(gammas.to_vec()) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    for grid in PREFILTER_GRIDS {
        if schwarz::deriv_boundary_max_observed(&params, grid)? > 1.0 - margin {
            return Ok(None);
        }
    }
    if !classu::denominator_zero_free(a2, &params, SCREEN_WINDING_SAMPLES)? {
        return Ok(None);
    }
    let omega = SchwarzFunction::new(params, order)?;
    if omega.deriv_sup() > 1.0 - margin {
        return Ok(None);
    }
    let f = ClassUFunction::build_lenient(a2, omega)?;
    Ok(f.is_member(margin).then_some(f))
}

/// Draws `a2` uniformly from `|a2| <= 2` and each `g_k` uniformly from
/// `|g| <= 0.999 * 2^-k`, rejecting until the function is a member with
/// `margin`.
///
/// Equal radii for every parameter almost never satisfy the `|w'| <= 1`
/// constraint once `d >= 3`; halving the radius per level keeps the
/// acceptance rate usable up to `d = 6` while `g_0` still reaches the
/// boundary.
pub fn sample(rng: &mut impl Rng, degree: usize, margin: f64, order: usize) -> Result<Sample> {
    for _ in 0..MAX_SAMPLE_TRIES {
        let a2 = uniform_disk(rng, SAMPLE_RADIUS_A2);
        let gammas: Vec<Complex64> = (0..degree)
            .map(|k| uniform_disk(rng, SAMPLE_RADIUS_GAMMA * 0.5f64.powi(k as i32))).collect();
        if let Some(function) = feasible_function(a2, &gammas, margin, order)? {
            return Ok(Sample { a2, gammas, function });
        }
    }
    Err(Error::SamplingStarved(MAX_SAMPLE_TRIES))
}

/// Best point found by one restart, or across restarts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestRecord {
    pub spec: FunctionalSpec,
    pub value: f64,
    pub bound: f64,
    pub excess: f64,
    #[serde(with = "complex_pair")]
    pub a2: Complex64,
    #[serde(with = "complex_pairs")]
    pub gammas: Vec<Complex64>,
    #[serde(rename = "margin")]
    pub membership_margin: f64,
    pub pole_free: bool,
    pub seed: u64,
    #[serde(rename = "evals")]
    pub evaluations: usize,
    pub wall_ms: u64,
}

impl BestRecord {
    fn from_function(spec: FunctionalSpec, f: &ClassUFunction, gammas: Vec<Complex64>, seed: u64) -> Result<Self> {
        let value = spec.evaluate(f)?;
        Ok(Self {
            spec,
            value,
            bound: spec.bound(),
            excess: value - spec.bound(),
            a2: f.a2(),
            gammas,
            membership_margin: f.membership_margin(),
            pole_free: f.pole_free(),
            seed,
            evaluations: 0,
            wall_ms: 0,
        })
    }

    /// Rebuilds the function described by the record.
    pub fn rebuild(&self) -> Result<ClassUFunction> {
        let params = SchurParams::new(self.gammas.clone())?;
        ClassUFunction::build_lenient(
            self.a2,
            SchwarzFunction::new(params, self.spec.required_index() + 1)?,
        )
    }

    /// Re-evaluates the functional on the rebuilt function.
    pub fn reevaluate(&self) -> Result<f64> {
        self.spec.evaluate(&self.rebuild()?)
    }

    /// Equality ignoring wall-clock time.
    pub fn same_result(&self, other: &BestRecord) -> bool {
        BestRecord {
            wall_ms: 0,
            ..self.clone()
        } == BestRecord {
            wall_ms: 0,
            ..other.clone()
        }
    }
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

mod complex_pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        zs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

/// `u in R^2 -> s tanh(|u|) u/|u|`.
fn squash(u: [f64; 2], scale: f64) -> Complex64 {
    let r = u[0].hypot(u[1]);
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let k = scale * r.tanh() / r;
    Complex64::new(k * u[0], k * u[1])
}

/// Inverse of [`squash`] for `|g| < scale`.
fn unsquash(g: Complex64, scale: f64) -> [f64; 2] {
    let m = g.norm() / scale;
    if m == 0.0 {
        return [0.0, 0.0];
    }
    let r = m.atanh();
    [g.re / g.norm() * r, g.im / g.norm() * r]
}

fn gamma_scale(margin: f64) -> f64 {
    (1.0 - margin).min(MAX_GAMMA_MODULUS)
}

/// Semi-axes frame of the ellipse of admissible `a2` for a constant Schur
/// function `g0`: `a2 = e^{i phi/2} ((1-|g0|) p + i (1+|g0|) q)` with
/// `phi = arg g0`.
fn a2_frame(g0: Complex64) -> (Complex64, f64, f64) {
    let r = g0.norm();
    let phase = if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, 0.5 * g0.arg())
    };
    (phase, 1.0 - r, 1.0 + r)
}

fn decode(v: &[f64], degree: usize, scale: f64) -> (Complex64, Vec<Complex64>) {
    let gammas: Vec<Complex64> = (0..degree).map(|k| squash([v[2 + 2 * k], v[3 + 2 * k]], scale)).collect();
    let (phase, minor, major) = a2_frame(gammas.first().copied().unwrap_or_default());
    let pq = squash([v[0], v[1]], A2_REACH);
    let a2 = phase * Complex64::new(minor * pq.re, major * pq.im);
    (a2, gammas)
}

fn encode(a2: Complex64, gammas: &[Complex64], scale: f64) -> Vec<f64> {
    let (phase, minor, major) = a2_frame(gammas.first().copied().unwrap_or_default());
    let w = a2 / phase;
    let mut pq = Complex64::new(w.re / minor, w.im / major);
    if pq.norm() >= 0.999 * A2_REACH {
        pq *= 0.999 * A2_REACH / pq.norm();
    }
    let mut v = unsquash(pq, A2_REACH).to_vec();
    for g in gammas {
        v.extend(unsquash(*g, scale));
    }
    v
}

fn restart_seed(seed: u64, restart: usize) -> u64 {
    seed ^ (restart as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn screen_sup_ok(gammas: &[Complex64], margin: f64) -> Result<Option<SchurParams>> {
    let params = match SchurParams::new(gammas.to_vec()) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    Ok((schwarz::deriv_boundary_sup(&params, SCREEN_GRID)? <= 1.0 - margin).then_some(params))
}

/// Largest `t` on a dyadic grid in `[0, 1]` with `ok(t)`, assuming `ok(0)`.
fn bisect_scale(mut ok: impl FnMut(f64) -> Result<bool>) -> Result<f64> {
    if ok(1.0)? {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..REPAIR_STEPS {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Maps a decoded candidate onto the screened feasible set. The tail
/// `g_1..` is shrunk toward zero until the coarse boundary supremum of
/// `|w'|` fits the margin (a constant Schur function always fits), then `a2`
/// is shrunk toward zero until the denominator is zero-free (`a2 = 0`
/// always is).
fn repair(a2: Complex64, gammas: Vec<Complex64>, margin: f64) -> Result<(Complex64, Vec<Complex64>, SchurParams)> {
    let scaled_tail = |t: f64| -> Vec<Complex64> {
        gammas.iter().enumerate().map(|(k, g)| if k == 0 { *g } else { g * t }).collect()
    };
    let t = bisect_scale(|t| Ok(screen_sup_ok(&scaled_tail(t), margin)?.is_some()))?;
    let gammas = scaled_tail(t);
    let params = SchurParams::new(gammas.clone())?;
    let s = bisect_scale(|s| classu::denominator_zero_free(a2 * s, &params, SCREEN_WINDING_SAMPLES))?;
    Ok((a2 * s, gammas, params))
}

fn screened_value(spec: FunctionalSpec, a2: Complex64, params: &SchurParams) -> Result<f64> {
    let omega = schwarz::omega_series(params, spec.required_index() + 1)?;
    spec.evaluate_coeffs(&classu::coefficient_series(a2, &omega)?)
}

/// Screened candidates kept per restart for the final full membership test.
const CANDIDATES: usize = 8;

/// One restart: sample a start point, run the simplex search over repaired
/// candidates, then confirm the best few with the full membership test.
fn run_restart(config: &SearchConfig, restart: usize) -> Result<BestRecord> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(config.seed, restart));
    let scale = gamma_scale(config.margin);
    let initial = sample(&mut rng, config.degree, config.margin, config.order)?;
    let x0 = encode(initial.a2, &initial.gammas, scale);
    let mut candidates: Vec<(f64, Complex64, Vec<Complex64>)> = Vec::new();
    let mut failure = None;

    let objective = |v: &[f64]| -> f64 {
        let (a2, gammas) = decode(v, config.degree, scale);
        let outcome = repair(a2, gammas, config.margin)
            .and_then(|(a2, gammas, params)| Ok((screened_value(config.spec, a2, &params)?, a2, gammas)));
        match outcome {
            Ok((value, a2, gammas)) => {
                let worst = candidates.last().map_or(f64::NEG_INFINITY, |c| c.0);
                if candidates.len() < CANDIDATES || value > worst {
                    let at = candidates.partition_point(|c| c.0 >= value);
                    candidates.insert(at, (value, a2, gammas));
                    candidates.truncate(CANDIDATES);
                }
                -value
            }
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        }
    };
    let result = simplex::minimize(
        objective,
        &x0,
        SimplexOptions {
            max_iters: config.iterations,
            ..Default::default()
        },
    );
    if let Some(e) = failure {
        return Err(e);
    }

    let mut best = BestRecord::from_function(config.spec, &initial.function, initial.gammas, config.seed)?;
    let searched = if config.iterations == 0 { Vec::new() } else { candidates };
    for (value, a2, gammas) in searched {
        if value <= best.value {
            break;
        }
        if let Some(f) = feasible_function(a2, &gammas, config.margin, config.order)? {
            best = BestRecord::from_function(config.spec, &f, gammas, config.seed)?;
            break;
        }
    }
    best.evaluations = result.evals;
    best.wall_ms = start.elapsed().as_millis() as u64;
    Ok(best)
}

/// Runs every restart (in parallel) and returns their records in restart
/// order.
pub fn run_restarts(config: &SearchConfig) -> Result<Vec<BestRecord>> {
    config.validate()?;
    (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(config, r))
        .collect()
}

/// Picks the highest value; ties go to the earliest restart.
pub fn best_of(records: &[BestRecord]) -> Option<BestRecord> {
    let mut best: Option<&BestRecord> = None;
    for r in records {
        if best.is_none_or(|b| r.value > b.value) {
            best = Some(r);
        }
    }
    best.map(|b| {
        let mut out = b.clone();
        out.evaluations = records.iter().map(|r| r.evaluations).sum();
        out.wall_ms = records.iter().map(|r| r.wall_ms).max().unwrap_or(0);
        out
    })
}

/// Multi-restart maximization of the configured functional.
pub fn maximize(config: &SearchConfig) -> Result<BestRecord> {
    let records = run_restarts(config)?;
    Ok(best_of(&records).expect("at least one restart"))
}

/// Runs the search and appends one JSONL line per restart plus a final line
/// with the overall best to `path`.
pub fn run_and_persist(config: &SearchConfig, path: &Path) -> Result<Vec<BestRecord>> {
    let mut records = run_restarts(config)?;
    let best = best_of(&records).expect("at least one restart");
    records.push(best);
    append_jsonl(path, &records)?;
    Ok(records)
}

pub fn append_jsonl(path: &Path, records: &[BestRecord]) -> Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = BufWriter::new(file);
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_jsonl(path: &Path) -> Result<Vec<BestRecord>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect()
}
