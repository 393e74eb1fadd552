//! Coefficient problems for the univalence class U.
//!
//! A function `f(z) = z + a_2 z^2 + ...` belongs to U when
//! `|(z/f(z))^2 f'(z) - 1| < 1` on the unit disk. Every such function can be
//! written as `z/f(z) = 1 - a_2 z - z w(z)` with a Schwarz function `w`, and
//! this crate works from that representation:
//!
//! - [`series`] is a truncated complex power-series ring used for all
//!   coefficient extraction.
//! - [`schwarz`] parameterizes `w(z) = z psi(z)` by Schur parameters.
//! - [`classu`] builds class-U functions and checks membership.
//! - [`functionals`] evaluates Zalcman, generalized Zalcman and Krushkal
//!   functionals together with their sharp constants.
//! - [`certify`] proves the auxiliary-function bounds with interval
//!   branch-and-bound.
//! - [`search`] runs a randomized extremal search and persists JSONL records.
//! - [`cli`] is the command-line driver used by the `univalent` binary.

pub mod certify;
pub mod classu;
pub mod cli;
pub mod error;
pub mod functionals;
pub mod schwarz;
pub mod search;
pub mod series;

pub use num_complex::Complex64;

pub use crate::classu::ClassUFunction;
pub use crate::error::{Error, Result};
pub use crate::functionals::FunctionalSpec;
pub use crate::schwarz::{SchurParams, SchwarzFunction};
pub use crate::series::TruncatedSeries;

/// Series order used by every pipeline unless a caller asks otherwise.
pub const DEFAULT_ORDER: usize = 64;
