//! Command-line driver.
//!
//! Every command writes a single JSON document (or a JSONL stream) to stdout;
//! diagnostics go to stderr. Exit codes: 0 success, 2 refuted certificate,
//! 3 budget exhausted, 64 invalid flags, 1 any other failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{self, AuxKind, Status};
use crate::classu::ClassUFunction;
use crate::error::{Error, Result};
use crate::functionals::{FunctionalSpec, PROVEN_SPECS};
use crate::schwarz::{lemma1_check, SchurParams, SchwarzFunction};
use crate::search::{self, SearchConfig};
use crate::DEFAULT_ORDER;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "univalent", version, about = "Coefficient bounds for the univalence class U")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the maximum of an auxiliary function over G.
    Certify {
        #[arg(long)]
        aux: AuxKind,
        /// Defaults to 4, 3 and 11 for f1, f2 and g.
        #[arg(long, allow_hyphen_values = true)]
        bound: Option<f64>,
        #[arg(long, default_value_t = certify::DEFAULT_TOL)]
        tol: f64,
        #[arg(long = "max-boxes", default_value_t = certify::DEFAULT_MAX_BOXES)]
        max_boxes: usize,
    },
    /// Certified maxima of the three edge restrictions.
    Edges {
        #[arg(long)]
        aux: AuxKind,
    },
    /// Evaluate a functional on a rotated Koebe function.
    Koebe {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        spec: FunctionalSpec,
    },
    /// Evaluate a functional on the function given by a2 and Schur parameters.
    Eval {
        #[arg(long)]
        spec: FunctionalSpec,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a2: Complex64,
        /// `RE,IM;RE,IM;...`
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        gammas: String,
        /// Use the boundary Schwarz function w(z) = -(a2/|a2|)^2 z.
        #[arg(long)]
        koebe: bool,
    },
    /// Stream feasible random samples with the excess of each proven functional.
    Sample {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = search::DEFAULT_DEGREE)]
        degree: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Check the Schwarz-coefficient bounds on random samples.
    Lemma1 {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = search::DEFAULT_DEGREE)]
        degree: usize,
        /// Also check the Koebe Schwarz function, which saturates every bound.
        #[arg(long)]
        include_koebe: bool,
    },
    /// Randomized extremal search with JSONL persistence.
    Search {
        #[arg(long)]
        spec: FunctionalSpec,
        #[arg(long, default_value_t = search::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = search::DEFAULT_ITERATIONS)]
        iters: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = search::DEFAULT_DEGREE)]
        degree: usize,
    },
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got `{s}`"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("bad real part `{re}`: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part `{im}`: {e}"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(format!("non-finite complex value `{s}`"));
    }
    Ok(Complex64::new(re, im))
}

/// Parses `RE,IM;RE,IM;...`; the empty string is the empty list.
pub fn parse_gammas(s: &str) -> std::result::Result<Vec<Complex64>, String> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_complex)
        .collect()
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidInput(_)
                | Error::InvalidSpec(_)
                | Error::InvalidSchurParameter { .. }
                | Error::InsufficientOrder { .. } => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Certify {
            aux,
            bound,
            tol,
            max_boxes,
        } => {
            let bound = bound.unwrap_or_else(|| aux.proved_bound());
            if !bound.is_finite() {
                return Err(Error::InvalidInput(format!("bound must be finite, got {bound}")));
            }
            let cert = certify::certify_max(aux, bound, tol, max_boxes)?;
            write_json(out, &cert)?;
            Ok(match cert.status {
                Status::Proven => EXIT_OK,
                Status::Refuted => EXIT_REFUTED,
                Status::BudgetExceeded => EXIT_BUDGET,
            })
        }
        Command::Edges { aux } => {
            let reports = certify::edge_profiles(aux);
            let maxima: Vec<f64> = reports.iter().map(|r| r.certified_lo).collect();
            write_json(out, &json!({ "aux": aux, "maxima": maxima, "edges": reports }))?;
            Ok(EXIT_OK)
        }
        Command::Koebe { theta, spec } => {
            if !theta.is_finite() {
                return Err(Error::InvalidInput("theta must be finite".into()));
            }
            let f = ClassUFunction::koebe(theta, DEFAULT_ORDER);
            write_json(out, &function_report(&f, spec, json!({ "theta": theta }))?)?;
            Ok(EXIT_OK)
        }
        Command::Eval {
            spec,
            a2,
            gammas,
            koebe,
        } => {
            let gammas = parse_gammas(&gammas).map_err(Error::InvalidInput)?;
            let params = if koebe {
                if !gammas.is_empty() {
                    return Err(Error::InvalidInput("--koebe takes no --gammas".into()));
                }
                if a2.norm() == 0.0 {
                    return Err(Error::InvalidInput("--koebe needs a nonzero a2".into()));
                }
                SchurParams::koebe_limit(a2.arg())
            } else {
                SchurParams::new(gammas)?
            };
            let f = ClassUFunction::from_params(a2, params, DEFAULT_ORDER)?;
            if !f.pole_free() {
                writeln!(err, "warning: denominator vanishes in the disk; f is not analytic")?;
            }
            write_json(out, &function_report(&f, spec, json!({}))?)?;
            Ok(EXIT_OK)
        }
        Command::Sample { count, degree, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let s = search::sample(&mut rng, degree, search::DEFAULT_MARGIN, DEFAULT_ORDER)?;
                let mut excess = serde_json::Map::new();
                for spec in PROVEN_SPECS {
                    excess.insert(spec.to_string(), json!(spec.excess(&s.function)?));
                }
                write_json(
                    out,
                    &json!({
                        "a2": pair(s.a2),
                        "gammas": s.gammas.iter().map(|&g| pair(g)).collect::<Vec<_>>(),
                        "margin": s.function.membership_margin(),
                        "pole_free": s.function.pole_free(),
                        "excess": excess,
                    }),
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Lemma1 {
            count,
            seed,
            degree,
            include_koebe,
        } => {
            let summary = lemma1_summary(count, seed, degree, include_koebe)?;
            write_json(out, &summary)?;
            Ok(EXIT_OK)
        }
        Command::Search {
            spec,
            restarts,
            iters,
            seed,
            out: path,
            degree,
        } => {
            let config = SearchConfig {
                degree,
                restarts,
                iterations: iters,
                ..SearchConfig::new(spec, seed)
            };
            let records = search::run_and_persist(&config, &path)?;
            for r in &records {
                write_json(out, r)?;
            }
            if !spec.is_proven() {
                writeln!(err, "note: bound {} for {spec} is conjectural", spec.bound())?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn function_report(f: &ClassUFunction, spec: FunctionalSpec, mut extra: Value) -> Result<Value> {
    let value = spec.evaluate(f)?;
    let coefficients: serde_json::Map<String, Value> =
        (2..=5).map(|n| (format!("a{n}"), json!(pair(f.a(n))))).collect();
    let report = json!({
        "spec": spec,
        "coefficients": coefficients,
        "value": value,
        "bound": spec.bound(),
        "excess": value - spec.bound(),
        "proven": spec.is_proven(),
        "margin": f.membership_margin(),
        "pole_free": f.pole_free(),
    });
    if let (Value::Object(extra), Value::Object(report)) = (&mut extra, report) {
        extra.extend(report);
    }
    Ok(extra)
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Summary {
    pub checked: usize,
    pub passed: usize,
    /// Componentwise minimum slack, `None` when nothing was checked.
    pub min_slacks: Option<[f64; 3]>,
}

pub const LEMMA1_TOL: f64 = 1e-9;

pub fn lemma1_summary(count: usize, seed: u64, degree: usize, include_koebe: bool) -> Result<Lemma1Summary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut omegas = Vec::with_capacity(count + 1);
    if include_koebe {
        omegas.push(SchwarzFunction::koebe_limit(0.0, 8));
    }
    for _ in 0..count {
        let s = search::sample(&mut rng, degree, search::DEFAULT_MARGIN, 8)?;
        omegas.push(s.function.omega().clone());
    }
    let mut summary = Lemma1Summary {
        checked: 0,
        passed: 0,
        min_slacks: None,
    };
    for w in &omegas {
        let r = lemma1_check(w.c(1), w.c(2), w.c(3), LEMMA1_TOL);
        summary.checked += 1;
        summary.passed += usize::from(r.pass);
        let m = summary.min_slacks.get_or_insert([f64::INFINITY; 3]);
        for (m, s) in m.iter_mut().zip(r.slacks) {
            *m = m.min(s);
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gammas_parse() {
        assert_eq!(parse_gammas("").unwrap(), vec![]);
        assert_eq!(
            parse_gammas("0.5,0;-0.1,0.2").unwrap(),
            vec![Complex64::new(0.5, 0.0), Complex64::new(-0.1, 0.2)]
        );
        assert!(parse_gammas("0.5").is_err());
        assert!(parse_gammas("a,b").is_err());
    }
}
