//! Class-U functions built from `z/f(z) = 1 - a2 z - z w(z)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::schwarz::{self, SchurParams, SchwarzFunction};
use crate::series::TruncatedSeries;

/// Radius of the contour used by the winding-number test.
pub const WINDING_RADIUS: f64 = 1.0 - 1e-6;

/// Base sample count of the winding-number contour.
pub const WINDING_SAMPLES: usize = 4096;

/// A function `f(z) = z + a2 z^2 + ...` given by `a2` and its Schwarz
/// function, with coefficients `a_0..a_N` and its membership verdicts.
#[derive(Debug, Clone)]
pub struct ClassUFunction {
    a2: Complex64,
    omega: SchwarzFunction,
    coeffs: TruncatedSeries,
    membership_margin: f64,
    pole_free: bool,
}

impl ClassUFunction {
    /// Builds `f` and fails with [`Error::NotAnalytic`] when the denominator
    /// vanishes inside the disk.
    pub fn build(a2: Complex64, omega: SchwarzFunction) -> Result<Self> {
        let f = Self::build_lenient(a2, omega)?;
        if !f.pole_free {
            return Err(Error::NotAnalytic(f.denominator_winding()?));
        }
        Ok(f)
    }

    /// Like [`ClassUFunction::build`] but returns the object with
    /// `pole_free == false` instead of failing.
    pub fn build_lenient(a2: Complex64, omega: SchwarzFunction) -> Result<Self> {
        let order = omega.series().order();
        let denominator = denominator_series(a2, omega.series())?;
        let coeffs = denominator.recip()?.shift_up(1);
        let membership_margin = 1.0 - omega.deriv_sup();
        let mut f = Self {
            a2,
            omega,
            coeffs,
            membership_margin,
            pole_free: false,
        };
        debug_assert_eq!(f.coeffs.order(), order);
        f.pole_free = f.denominator_winding()? == 0;
        Ok(f)
    }

    /// `f(z) = z`.
    pub fn identity(order: usize) -> Self {
        Self::build(Complex64::new(0.0, 0.0), SchwarzFunction::zero(order))
            .expect("identity denominator is constant")
    }

    /// Rotated Koebe function `e^{-i theta} k(e^{i theta} z)`, with
    /// `a_n = n e^{i (n-1) theta}`.
    pub fn koebe(theta: f64, order: usize) -> Self {
        let a2 = Complex64::from_polar(2.0, theta);
        Self::build(a2, SchwarzFunction::koebe_limit(theta, order))
            .expect("Koebe denominator has its only zero on the unit circle")
    }

    /// `e^{-i theta} f(e^{i theta} z)`, i.e. `a_n -> e^{i (n-1) theta} a_n`.
    pub fn rotate(&self, theta: f64) -> Result<Self> {
        let order = self.order();
        let params = self.omega.params().rotated(theta);
        let omega = if params.is_koebe_limit() {
            SchwarzFunction::koebe_limit(
                (-params.gammas()[0]).arg() / 2.0,
                order,
            )
        } else {
            SchwarzFunction::new(params, order)?
        };
        Self::build_lenient(self.a2 * Complex64::from_polar(1.0, theta), omega)
    }

    /// Convenience constructor from raw Schur parameters.
    pub fn from_params(a2: Complex64, params: SchurParams, order: usize) -> Result<Self> {
        let omega = if params.is_koebe_limit() {
            SchwarzFunction::koebe_limit((-params.gammas()[0]).arg() / 2.0, order)
        } else {
            SchwarzFunction::new(params, order)?
        };
        Self::build_lenient(a2, omega)
    }

    pub fn order(&self) -> usize {
        self.coeffs.order()
    }

    pub fn a2(&self) -> Complex64 {
        self.a2
    }

    /// Coefficient `a_n` (`a_0 = 0`, `a_1 = 1`).
    pub fn a(&self, n: usize) -> Complex64 {
        self.coeffs.coeff(n)
    }

    pub fn coeffs(&self) -> &TruncatedSeries {
        &self.coeffs
    }

    pub fn omega(&self) -> &SchwarzFunction {
        &self.omega
    }

    pub fn membership_margin(&self) -> f64 {
        self.membership_margin
    }

    pub fn pole_free(&self) -> bool {
        self.pole_free
    }

    /// Strict membership with the given margin.
    pub fn is_member(&self, margin: f64) -> bool {
        self.pole_free && self.membership_margin >= margin
    }

    pub fn denominator_series(&self) -> Result<TruncatedSeries> {
        denominator_series(self.a2, self.omega.series())
    }

    /// `D(z) = 1 - a2 z - z w(z)` with `w` evaluated by the Schur recursion.
    pub fn denominator(&self, z: Complex64) -> Result<Complex64> {
        Ok(1.0 - self.a2 * z - z * self.omega.eval(z)?)
    }

    /// Exact pointwise `(f(z), f'(z))` from the rational representation.
    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (w, dw) = self.omega.eval_with_derivative(z)?;
        let d = 1.0 - self.a2 * z - z * w;
        let dd = -self.a2 - w - z * dw;
        Ok((z / d, (d - z * dd) / (d * d)))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(z / self.denominator(z)?)
    }

    /// `(z/f)^2 f' - 1` at a nonzero point, from the exact evaluation.
    pub fn defect_at(&self, z: Complex64) -> Result<Complex64> {
        let (f, df) = self.eval_with_derivative(z)?;
        let q = z / f;
        Ok(q * q * df - 1.0)
    }

    /// Winding number of `D` around the origin along `|z| = 1 - 1e-6`.
    pub fn denominator_winding(&self) -> Result<i64> {
        winding_number(
            |z| {
                let (w, dw) = self.omega.eval_with_derivative(z)?;
                Ok((1.0 - self.a2 * z - z * w, -self.a2 - w - z * dw))
            },
            WINDING_RADIUS,
            WINDING_SAMPLES,
        )
    }

    /// `a3, a4, a5` from the closed forms in `a2` and `c1, c2, c3`.
    pub fn closed_form_a345(&self) -> (Complex64, Complex64, Complex64) {
        closed_form_a345(self.a2, self.omega.c(1), self.omega.c(2), self.omega.c(3))
    }

    /// Series of `(z/f)^2 f' - 1`, computed from the coefficients of `f`
    /// alone. Valid through index `N - 1`.
    pub fn defect_series(&self) -> Result<TruncatedSeries> {
        let order = self.order();
        let quotient = self.coeffs.shift_down(1).recip()?;
        let squared = quotient.mul(&quotient)?;
        squared
            .mul(&self.coeffs.deriv())?
            .sub(&TruncatedSeries::one(order))
    }

    /// Series of `z^2 w'(z)`, the closed form of the defect.
    pub fn defect_identity_series(&self) -> TruncatedSeries {
        self.omega.series().deriv().shift_up(2)
    }
}

/// Coefficients of `f = z / D` from `a2` and the series of `w`.
pub fn coefficient_series(a2: Complex64, omega: &TruncatedSeries) -> Result<TruncatedSeries> {
    Ok(denominator_series(a2, omega)?.recip()?.shift_up(1))
}

/// Whether `D(z) = 1 - a2 z - z w(z)` has no zero inside the winding contour,
/// starting the adaptive contour walk from `samples` points.
pub fn denominator_zero_free(a2: Complex64, params: &SchurParams, samples: usize) -> Result<bool> {
    let g = |z: Complex64| -> Result<(Complex64, Complex64)> {
        let (w, dw) = schwarz::omega_eval_with_derivative(params, z)?;
        Ok((1.0 - a2 * z - z * w, -a2 - w - z * dw))
    };
    match winding_number(g, WINDING_RADIUS, samples) {
        Ok(n) => Ok(n == 0),
        Err(Error::NotAnalytic(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn denominator_series(a2: Complex64, omega: &TruncatedSeries) -> Result<TruncatedSeries> {
    let order = omega.order();
    let linear = TruncatedSeries::from_prefix(&[Complex64::new(1.0, 0.0), -a2], order);
    linear.sub(&omega.shift_up(1))
}

/// `a3 = c1 + a2^2`, `a4 = c2 + 2 a2 c1 + a2^3`,
/// `a5 = c3 + 2 a2 c2 + c1^2 + 3 a2^2 c1 + a2^4`.
pub fn closed_form_a345(
    a2: Complex64,
    c1: Complex64,
    c2: Complex64,
    c3: Complex64,
) -> (Complex64, Complex64, Complex64) {
    let a2sq = a2 * a2;
    let a3 = c1 + a2sq;
    let a4 = c2 + 2.0 * a2 * c1 + a2sq * a2;
    let a5 = c3 + 2.0 * a2 * c2 + c1 * c1 + 3.0 * a2sq * c1 + a2sq * a2sq;
    (a3, a4, a5)
}

/// Winding number of `g` around 0 along the circle of the given radius.
///
/// `g` returns the value and the derivative. A segment is bisected (up to a
/// fixed depth) while its phase increment exceeds `pi/4` or the
/// log-derivative predicts more than `pi/4` of turning, so a zero close to
/// the contour cannot alias a full turn away.
pub fn winding_number<F>(g: F, radius: f64, samples: usize) -> Result<i64>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    const LIMIT: f64 = PI / 4.0;

    fn turning(v: (Complex64, Complex64)) -> f64 {
        v.1.norm() / v.0.norm()
    }

    fn segment<F>(
        g: &F,
        radius: f64,
        (t0, v0): (f64, (Complex64, Complex64)),
        (t1, v1): (f64, (Complex64, Complex64)),
        depth: u32,
    ) -> Result<f64>
    where
        F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
    {
        let dphi = (v1.0 / v0.0).arg();
        let predicted = radius * (t1 - t0) * turning(v0).max(turning(v1));
        if depth == 0 || (dphi.abs() <= LIMIT && predicted <= LIMIT) {
            return Ok(dphi);
        }
        let tm = 0.5 * (t0 + t1);
        let vm = g(Complex64::from_polar(radius, tm))?;
        if vm.0.norm() == 0.0 {
            return Err(Error::NotAnalytic(i64::MAX));
        }
        Ok(segment(g, radius, (t0, v0), (tm, vm), depth - 1)? + segment(g, radius, (tm, vm), (t1, v1), depth - 1)?)
    }

    let step = TAU / samples as f64;
    let first = g(Complex64::from_polar(radius, 0.0))?;
    let mut prev = first;
    let mut total = 0.0;
    for k in 1..=samples {
        let t = k as f64 * step;
        let cur = if k == samples {
            first
        } else {
            g(Complex64::from_polar(radius, t))?
        };
        if prev.0.norm() == 0.0 || cur.0.norm() == 0.0 {
            return Err(Error::NotAnalytic(i64::MAX));
        }
        total += segment(&g, radius, (t - step, prev), (t, cur), 40)?;
        prev = cur;
    }
    Ok((total / TAU).round() as i64)
}
