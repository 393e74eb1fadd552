//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `z^0, ..., z^N`; everything beyond `z^N` is discarded by every operation.
//! Binary operations require equal orders.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Constant terms smaller than this are treated as zero by [`TruncatedSeries::recip`].
pub const RECIP_TOLERANCE: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// An empty vector yields the zero series of order 0.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    /// Builds a series of the given order from a prefix of coefficients,
    /// padding with zeros (or truncating) as needed.
    pub fn from_prefix(prefix: &[Complex64], order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        for (dst, src) in coeffs.iter_mut().zip(prefix) {
            *dst = *src;
        }
        Self { coeffs }
    }

    pub fn from_real(prefix: &[f64], order: usize) -> Self {
        let prefix: Vec<Complex64> = prefix.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        Self::from_prefix(&prefix, order)
    }

    pub fn zero(order: usize) -> Self {
        Self::from_prefix(&[], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        Self::from_prefix(&[c], order)
    }

    /// The series `z` (zero when `order == 0`).
    pub fn identity(order: usize) -> Self {
        Self::from_prefix(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`, or zero beyond the order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self { coeffs })
    }

    /// Multiplicative inverse through the series order.
    ///
    /// Uses the forward recurrence `b_0 = 1/a_0`,
    /// `b_k = -(1/a_0) * sum_{j=1..k} a_j b_{k-j}`.
    pub fn recip(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() < RECIP_TOLERANCE {
            return Err(Error::SingularSeries(a0.norm()));
        }
        let inv0 = a0.inv();
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        out.push(inv0);
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * out[k - j];
            }
            out.push(-inv0 * acc);
        }
        Ok(Self { coeffs: out })
    }

    /// Formal derivative at the same order; the top coefficient becomes zero.
    pub fn deriv(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, c) in coeffs[..n].iter_mut().enumerate() {
            *c = self.coeffs[k + 1] * (k as f64 + 1.0);
        }
        Self { coeffs }
    }

    /// Multiplies by `z^k`, dropping terms beyond the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        if k <= n {
            coeffs[k..].copy_from_slice(&self.coeffs[..=n - k]);
        }
        Self { coeffs }
    }

    /// Divides by `z^k`, discarding the low coefficients; the top `k`
    /// coefficients become zero.
    pub fn shift_down(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        if k <= n {
            coeffs[..=n - k].copy_from_slice(&self.coeffs[k..]);
        }
        Self { coeffs }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Largest coefficientwise distance to `other` over indices `0..=upto`.
    pub fn max_distance(&self, other: &Self, upto: usize) -> f64 {
        (0..=upto)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("order", &self.order())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}
