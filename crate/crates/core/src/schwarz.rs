//! Schwarz functions `w(z) = z psi(z)` parameterized by Schur parameters.
//!
//! `psi` is generated by the Schur recursion
//! `psi_k(z) = (g_k + z psi_{k+1}(z)) / (1 + conj(g_k) z psi_{k+1}(z))`
//! with terminal function `psi_d = 0`. With every `|g_k| < 1` this is a
//! rational self-map of the closed disk, so `w` is analytic across the unit
//! circle and its derivative can be evaluated exactly there.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Largest admissible modulus of an ordinary Schur parameter.
pub const MAX_GAMMA_MODULUS: f64 = 1.0 - 1e-9;

/// Boundary grid used for the membership supremum.
pub const BOUNDARY_GRID: usize = 8192;

/// Smallest grid accepted by [`deriv_boundary_sup`].
pub const MIN_BOUNDARY_GRID: usize = 64;

const DEGENERACY_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurParams {
    gamma: Vec<Complex64>,
    /// Set only by [`SchurParams::koebe_limit`]: a single unimodular parameter.
    #[serde(default)]
    unimodular: bool,
}

impl SchurParams {
    pub fn new(gamma: Vec<Complex64>) -> Result<Self> {
        for (index, g) in gamma.iter().enumerate() {
            let modulus = g.norm();
            if !(modulus <= MAX_GAMMA_MODULUS) {
                return Err(Error::InvalidSchurParameter { index, modulus });
            }
        }
        Ok(Self {
            gamma,
            unimodular: false,
        })
    }

    /// `psi = 0`, i.e. `w = 0`.
    pub fn zero() -> Self {
        Self {
            gamma: Vec::new(),
            unimodular: false,
        }
    }

    /// The boundary case `psi = -e^{2 i theta}`, so `w(z) = -e^{2 i theta} z`.
    ///
    /// This is the Schwarz function of the rotated Koebe function and is the
    /// only admitted parameter set with `|g| = 1`.
    pub fn koebe_limit(theta: f64) -> Self {
        Self {
            gamma: vec![-Complex64::from_polar(1.0, 2.0 * theta)],
            unimodular: true,
        }
    }

    /// Constant `psi = c` with `|c| <= 1`; unimodular constants go through
    /// the Koebe-limit path.
    pub fn constant(c: Complex64) -> Result<Self> {
        if (c.norm() - 1.0).abs() <= 1e-12 {
            let theta = (-c).arg() / 2.0;
            Ok(Self::koebe_limit(theta))
        } else {
            Self::new(vec![c])
        }
    }

    pub fn gammas(&self) -> &[Complex64] {
        &self.gamma
    }

    pub fn degree(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_koebe_limit(&self) -> bool {
        self.unimodular
    }

    /// Parameters of `e^{i theta} w(e^{i theta} z)`: `g_k -> e^{i (k+2) theta} g_k`.
    pub fn rotated(&self, theta: f64) -> Self {
        let gamma = self
            .gamma
            .iter()
            .enumerate()
            .map(|(k, g)| g * Complex64::from_polar(1.0, (k as f64 + 2.0) * theta))
            .collect();
        Self {
            gamma,
            unimodular: self.unimodular,
        }
    }
}

/// Evaluates `psi(z)` by the backward Schur recursion.
pub fn schur_eval(params: &SchurParams, z: Complex64) -> Result<Complex64> {
    Ok(schur_eval_with_derivative(params, z)?.0)
}

/// Evaluates `(psi(z), psi'(z))`, carrying the derivative through the
/// recursion in forward mode.
pub fn schur_eval_with_derivative(params: &SchurParams, z: Complex64) -> Result<(Complex64, Complex64)> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let (mut psi, mut dpsi) = (zero, zero);
    for g in params.gamma.iter().rev() {
        // u = z psi_{k+1}, u' = psi_{k+1} + z psi_{k+1}'
        let u = z * psi;
        let du = psi + z * dpsi;
        let den = one + g.conj() * u;
        let den_sq = den.norm_sqr();
        if den_sq < DEGENERACY_TOLERANCE * DEGENERACY_TOLERANCE {
            return Err(Error::NumericDegeneracy(den.norm()));
        }
        let inv = den.conj() / den_sq;
        psi = (g + u) * inv;
        dpsi = du * (1.0 - g.norm_sqr()) * inv * inv;
    }
    Ok((psi, dpsi))
}

/// `w(z) = z psi(z)` evaluated exactly.
pub fn omega_eval(params: &SchurParams, z: Complex64) -> Result<Complex64> {
    Ok(z * schur_eval(params, z)?)
}

/// `(w(z), w'(z))` with `w' = psi + z psi'`.
pub fn omega_eval_with_derivative(params: &SchurParams, z: Complex64) -> Result<(Complex64, Complex64)> {
    let (psi, dpsi) = schur_eval_with_derivative(params, z)?;
    Ok((z * psi, psi + z * dpsi))
}

/// Taylor series of `w` through `order`, computed by running the Schur
/// recursion in series arithmetic.
pub fn omega_series(params: &SchurParams, order: usize) -> Result<TruncatedSeries> {
    let mut psi = TruncatedSeries::zero(order);
    let one = TruncatedSeries::one(order);
    for g in params.gamma.iter().rev() {
        let u = psi.shift_up(1);
        let num = TruncatedSeries::constant(*g, order).add(&u)?;
        let den = one.add(&u.scale(g.conj()))?;
        psi = num.mul(&den.recip()?)?;
    }
    Ok(psi.shift_up(1))
}

/// Maximum of `|w'|` over `grid_size` equispaced points of the unit circle,
/// inflated by a modulus-of-continuity correction for the gaps between
/// samples.
///
/// The correction is `slope * (pi / grid_size) * (1 + 10 pi / grid_size)`,
/// where `slope` is the largest finite-difference slope of `|w'(e^{it})|`
/// in `t` observed on the grid.
pub fn deriv_boundary_sup(params: &SchurParams, grid_size: usize) -> Result<f64> {
    if grid_size < MIN_BOUNDARY_GRID {
        return Err(Error::InvalidInput(format!(
            "boundary grid must have at least {MIN_BOUNDARY_GRID} points, got {grid_size}"
        )));
    }
    let step = TAU / grid_size as f64;
    let mut values = Vec::with_capacity(grid_size);
    for k in 0..grid_size {
        let z = Complex64::from_polar(1.0, k as f64 * step);
        values.push(omega_eval_with_derivative(params, z)?.1.norm());
    }
    let max = values.iter().copied().fold(0.0, f64::max);
    let slope = (0..grid_size)
        .map(|k| (values[(k + 1) % grid_size] - values[k]).abs() / step)
        .fold(0.0, f64::max);
    let half_gap = std::f64::consts::PI / grid_size as f64;
    Ok(max + slope * half_gap * (1.0 + 10.0 * half_gap))
}

/// Cheap lower bound on the boundary supremum of `|w'|`: the raw grid
/// maximum with no correction. Useful for early rejection.
pub fn deriv_boundary_max_observed(params: &SchurParams, grid_size: usize) -> Result<f64> {
    let step = TAU / grid_size.max(1) as f64;
    let mut max: f64 = 0.0;
    for k in 0..grid_size {
        let z = Complex64::from_polar(1.0, k as f64 * step);
        max = max.max(omega_eval_with_derivative(params, z)?.1.norm());
    }
    Ok(max)
}

/// A Schwarz function with its Taylor series and the cached boundary
/// supremum of `|w'|`.
#[derive(Debug, Clone)]
pub struct SchwarzFunction {
    params: SchurParams,
    series: TruncatedSeries,
    deriv_sup: f64,
}

impl SchwarzFunction {
    pub fn new(params: SchurParams, order: usize) -> Result<Self> {
        let series = omega_series(&params, order)?;
        let deriv_sup = deriv_boundary_sup(&params, BOUNDARY_GRID)?;
        Ok(Self {
            params,
            series,
            deriv_sup,
        })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            params: SchurParams::zero(),
            series: TruncatedSeries::zero(order),
            deriv_sup: 0.0,
        }
    }

    pub fn koebe_limit(theta: f64, order: usize) -> Self {
        let params = SchurParams::koebe_limit(theta);
        let series = omega_series(&params, order).expect("constant Schur recursion cannot degenerate");
        Self {
            params,
            series,
            deriv_sup: 1.0,
        }
    }

    pub fn params(&self) -> &SchurParams {
        &self.params
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// Coefficient `c_k` of `w`.
    pub fn c(&self, k: usize) -> Complex64 {
        self.series.coeff(k)
    }

    pub fn deriv_sup(&self) -> f64 {
        self.deriv_sup
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        omega_eval(&self.params, z)
    }

    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        omega_eval_with_derivative(&self.params, z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub pass: bool,
    pub slacks: [f64; 3],
}

/// Slack in the three coefficient bounds on a Schwarz function with
/// `|w'| <= 1`:
/// `|c1| <= 1`, `|c2| <= (1 - |c1|^2)/2`,
/// `|c3| <= (1 - |c1|^2 - 4|c2|^2 / (1 + |c1|)) / 3`.
pub fn lemma1_check(c1: Complex64, c2: Complex64, c3: Complex64, tol: f64) -> Lemma1Report {
    let (x, y, t) = (c1.norm(), c2.norm(), c3.norm());
    let slacks = [
        1.0 - x,
        0.5 * (1.0 - x * x) - y,
        (1.0 - x * x - 4.0 * y * y / (1.0 + x)) / 3.0 - t,
    ];
    Lemma1Report {
        pass: slacks.iter().all(|&s| s >= -tol),
        slacks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_out_of_disk_parameters() {
        assert!(SchurParams::new(vec![c(0.5, 0.0), c(1.0, 0.0)]).is_err());
        assert!(SchurParams::new(vec![c(f64::NAN, 0.0)]).is_err());
        assert!(SchurParams::new(vec![c(0.0, MAX_GAMMA_MODULUS)]).is_ok());
    }

    #[test]
    fn schur_eval_examples() {
        let zero = SchurParams::zero();
        assert_eq!(schur_eval(&zero, c(0.3, 0.4)).unwrap(), c(0.0, 0.0));
        assert_eq!(omega_eval(&zero, c(0.9, 0.0)).unwrap(), c(0.0, 0.0));

        let koebe = SchurParams::koebe_limit(0.0);
        let z = c(0.25, -0.6);
        assert!((omega_eval(&koebe, z).unwrap() + z).norm() < 1e-15);

        let half = SchurParams::new(vec![c(0.5, 0.0)]).unwrap();
        assert_eq!(schur_eval(&half, c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
    }

    #[test]
    fn omega_series_examples() {
        let s = omega_series(&SchurParams::zero(), 8).unwrap();
        assert_eq!(s, TruncatedSeries::zero(8));

        // (1 - z)^2 = 1 - 2z - z(-z): the Koebe Schwarz function is -z.
        let s = omega_series(&SchurParams::koebe_limit(0.0), 8).unwrap();
        assert_eq!(s.coeff(1), c(-1.0, 0.0));
        for k in (0..=8).filter(|&k| k != 1) {
            assert_eq!(s.coeff(k), c(0.0, 0.0));
        }

        let p = SchurParams::new(vec![c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        let s = omega_series(&p, 8).unwrap();
        assert_eq!(s.coeff(0), c(0.0, 0.0));
        assert!((s.coeff(1) - c(0.5, 0.0)).norm() < 1e-15);
        // First-order Schur coefficient: g1 (1 - |g0|^2).
        assert!((s.coeff(2) - c(0.375, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn series_matches_pointwise_recursion() {
        let p = SchurParams::new(vec![c(0.3, -0.2), c(-0.6, 0.1), c(0.2, 0.7)]).unwrap();
        let s = omega_series(&p, 64).unwrap();
        for &z in &[c(0.3, 0.1), c(-0.2, 0.4), c(0.0, -0.5)] {
            assert!((s.eval(z) - omega_eval(&p, z).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = SchurParams::new(vec![c(0.3, -0.2), c(-0.6, 0.1), c(0.2, 0.7)]).unwrap();
        let z = c(0.4, 0.3);
        let h = 1e-6;
        let fd = (omega_eval(&p, z + h).unwrap() - omega_eval(&p, z - h).unwrap()) / (2.0 * h);
        let (_, d) = omega_eval_with_derivative(&p, z).unwrap();
        assert!((fd - d).norm() < 1e-8);
    }

    #[test]
    fn lemma1_examples() {
        let r = lemma1_check(c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), 1e-12);
        assert!(r.pass);
        assert_eq!(r.slacks, [0.0, 0.0, 0.0]);

        let r = lemma1_check(c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), 1e-12);
        assert!(r.pass);
        assert_eq!(r.slacks[1], 0.0);

        let r = lemma1_check(c(0.0, 0.0), c(0.0, 0.0), c(1.0 / 3.0, 0.0), 1e-12);
        assert!(r.pass);
        assert!(r.slacks[2].abs() < 1e-16);

        let r = lemma1_check(c(0.0, 0.0), c(0.6, 0.0), c(0.0, 0.0), 1e-9);
        assert!(!r.pass);
    }

    #[test]
    fn boundary_sup_examples() {
        assert_eq!(deriv_boundary_sup(&SchurParams::zero(), 128).unwrap(), 0.0);
        let koebe = SchurParams::koebe_limit(0.4);
        assert!((deriv_boundary_sup(&koebe, BOUNDARY_GRID).unwrap() - 1.0).abs() < 1e-15);
        let half = SchurParams::new(vec![c(0.5, 0.0)]).unwrap();
        assert!((deriv_boundary_sup(&half, BOUNDARY_GRID).unwrap() - 0.5).abs() < 1e-15);
        assert!(deriv_boundary_sup(&half, 32).is_err());
    }

    #[test]
    fn boundary_sup_dominates_dense_scan() {
        let p = SchurParams::new(vec![c(0.1, 0.2), c(0.4, -0.3), c(-0.2, 0.1)]).unwrap();
        let coarse = deriv_boundary_sup(&p, 256).unwrap();
        let dense = deriv_boundary_max_observed(&p, 1 << 16).unwrap();
        assert!(coarse >= dense);
    }

    #[test]
    fn rotation_of_parameters_rotates_omega() {
        let p = SchurParams::new(vec![c(0.3, -0.2), c(-0.6, 0.1), c(0.2, 0.7)]).unwrap();
        let theta = 0.9;
        let rot = p.rotated(theta);
        let e = Complex64::from_polar(1.0, theta);
        for &z in &[c(0.3, 0.1), c(-0.7, 0.4)] {
            let lhs = omega_eval(&rot, z).unwrap();
            let rhs = e * omega_eval(&p, e * z).unwrap();
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }

    #[test]
    fn schur_values_stay_in_disk() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = rng.gen_range(0..6);
            let gamma = (0..d)
                .map(|_| Complex64::from_polar(0.99 * rng.gen::<f64>().sqrt(), rng.gen::<f64>() * TAU))
                .collect();
            let p = SchurParams::new(gamma).unwrap();
            for k in 0..256 {
                let z = Complex64::from_polar(1.0, k as f64 * TAU / 256.0);
                assert!(schur_eval(&p, z).unwrap().norm() <= 1.0 + 1e-12);
            }
            let s = omega_series(&p, 16).unwrap();
            assert_eq!(s.coeff(0), c(0.0, 0.0));
            assert!(s.coeff(1).norm() <= 1.0 + 1e-12);
        }
    }
}
