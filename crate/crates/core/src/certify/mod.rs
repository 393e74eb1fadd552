//! Interval branch-and-bound certificates for the auxiliary bounds.
//!
//! With `x = |c1|` and `y = |c2|`, the coefficient estimates for
//! `|a3^2 - a5|`, `|a2 a4 - a5|` and `|a5 - a2^4|` reduce to maximizing
//!
//! ```text
//! f1(x, y) = (1 - x^2 - 4y^2/(1+x))/3 + 4y + x^2 + 3x
//! f2(x, y) = (1 - x^2 - 4y^2/(1+x))/3 + 2y + 3x
//! g(x, y)  = (1 - x^2 - 4y^2/(1+x))/3 + 4y + 2x^2 + 9x
//! ```
//!
//! over `G = {0 <= x <= 1, 0 <= y <= (1 - x^2)/2}`. This module encloses
//! those maxima rigorously, certifies positivity of the `y`-partials and
//! checks the one-dimensional edge restrictions.

pub mod interval;

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use self::interval::Interval;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_BOXES: usize = 10_000_000;

/// Arithmetic shared by point evaluation (`f64`) and enclosure (`Interval`).
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(c: f64) -> Self;
    fn sqr(self) -> Self;
    fn cube(self) -> Self;
}

impl Scalar for f64 {
    fn cst(c: f64) -> Self {
        c
    }
    fn sqr(self) -> Self {
        self * self
    }
    fn cube(self) -> Self {
        self * self * self
    }
}

impl Scalar for Interval {
    fn cst(c: f64) -> Self {
        Interval::point(c)
    }
    fn sqr(self) -> Self {
        Interval::sqr(&self)
    }
    fn cube(self) -> Self {
        Interval::cube(&self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuxKind {
    F1,
    F2,
    G,
}

impl AuxKind {
    pub const ALL: [AuxKind; 3] = [AuxKind::F1, AuxKind::F2, AuxKind::G];

    /// The constant each function is proved to stay below on `G`.
    pub fn proved_bound(&self) -> f64 {
        match self {
            AuxKind::F1 => 4.0,
            AuxKind::F2 => 3.0,
            AuxKind::G => 11.0,
        }
    }

    /// Constant part of the `y`-partial `c - (8/3) y/(1+x)`.
    fn dy_constant(&self) -> f64 {
        match self {
            AuxKind::F1 | AuxKind::G => 4.0,
            AuxKind::F2 => 2.0,
        }
    }

    /// Infimum of the `y`-partial over `G`, attained at `(0, 1/2)`.
    pub fn dy_infimum(&self) -> f64 {
        self.dy_constant() - 4.0 / 3.0
    }

    /// Evaluates `f(x, y)` in either arithmetic.
    pub fn eval<T: Scalar>(&self, x: T, y: T) -> T {
        let common = (T::cst(1.0) - x.sqr() - y.sqr() * 4.0 / (x + 1.0)) / 3.0;
        match self {
            AuxKind::F1 => common + y * 4.0 + x.sqr() + x * 3.0,
            AuxKind::F2 => common + y * 2.0 + x * 3.0,
            AuxKind::G => common + y * 4.0 + x.sqr() * 2.0 + x * 9.0,
        }
    }

    /// The `y`-partial obtained by differentiating [`AuxKind::eval`].
    pub fn dy<T: Scalar>(&self, x: T, y: T) -> T {
        T::cst(self.dy_constant()) - y / (x + 1.0) * 8.0 / 3.0
    }

    /// Legacy closed form of the `y`-partial. It disagrees with
    /// differentiating [`AuxKind::eval`] and is kept for comparison only;
    /// nothing is certified with it.
    pub fn legacy_dy(&self, x: f64, y: f64) -> f64 {
        let r = y / (1.0 + x);
        match self {
            AuxKind::F1 => 4.0 / 3.0 * r * r + 4.0 / 3.0 * x + 3.0,
            AuxKind::F2 => 4.0 / 3.0 * r * r - 2.0 / 3.0 * x + 3.0,
            AuxKind::G => 10.0 / 3.0 * x + 4.0 / 3.0 * r * r + 9.0,
        }
    }
}

impl fmt::Display for AuxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuxKind::F1 => "f1",
            AuxKind::F2 => "f2",
            AuxKind::G => "g",
        })
    }
}

impl FromStr for AuxKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f1" => Ok(AuxKind::F1),
            "f2" => Ok(AuxKind::F2),
            "g" => Ok(AuxKind::G),
            _ => Err(Error::InvalidInput(format!("unknown auxiliary function `{s}`"))),
        }
    }
}

pub fn aux_eval(kind: AuxKind, x: f64, y: f64) -> f64 {
    kind.eval(x, y)
}

pub fn aux_eval_interval(kind: AuxKind, b: &RegionBox) -> Interval {
    kind.eval(b.x, b.y)
}

/// Axis-aligned box in the `(x, y) = (|c1|, |c2|)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionBox {
    pub x: Interval,
    pub y: Interval,
}

impl RegionBox {
    pub fn new(x: Interval, y: Interval) -> Self {
        Self { x, y }
    }

    /// `[0, 1] x [0, 1/2]`, the bounding rectangle of `G`.
    pub fn rectangle() -> Self {
        Self::new(Interval::new(0.0, 1.0), Interval::new(0.0, 0.5))
    }

    /// Bisects the wider side, ties going to `x`.
    pub fn split(&self) -> (RegionBox, RegionBox) {
        if self.x.width() >= self.y.width() {
            let (l, r) = self.x.split();
            (RegionBox::new(l, self.y), RegionBox::new(r, self.y))
        } else {
            let (l, r) = self.y.split();
            (RegionBox::new(self.x, l), RegionBox::new(self.x, r))
        }
    }

    pub fn mid(&self) -> (f64, f64) {
        (self.x.mid(), self.y.mid())
    }

    fn sample_points(&self) -> [(f64, f64); 5] {
        [
            self.mid(),
            (self.x.lo, self.y.lo),
            (self.x.hi, self.y.lo),
            (self.x.lo, self.y.hi),
            (self.x.hi, self.y.hi),
        ]
    }
}

/// Upper edge of `G`: `y = (1 - x^2)/2`.
pub fn g_ceiling(x: f64) -> f64 {
    0.5 * (1.0 - x * x)
}

/// Whether `(x, y)` lies in `G`.
pub fn in_g(x: f64, y: f64) -> bool {
    (0.0..=1.0).contains(&x) && y >= 0.0 && y <= g_ceiling(x)
}

/// Shrinks `b` to a box that still holds every point of `b` inside `G`,
/// or returns `None` when `b` misses `G`.
///
/// The ceiling is decreasing in `x >= 0`, so its value at `x.lo` (rounded
/// upward) bounds `y` over the whole box.
pub fn clip_to_g(b: &RegionBox) -> Option<RegionBox> {
    let x_lo = Interval::point(b.x.lo.max(0.0));
    let cap = ((Interval::point(1.0) - x_lo.sqr()) * 0.5).hi;
    if b.y.lo > cap {
        return None;
    }
    Some(RegionBox::new(b.x, Interval::new(b.y.lo, b.y.hi.min(cap))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proven,
    Refuted,
    BudgetExceeded,
}

/// Outcome of [`certify_max`]; serializes to the flat JSON record emitted by
/// the CLI.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: AuxKind,
    pub claimed_bound: f64,
    pub certified_sup_hi: f64,
    pub attained_lo: f64,
    pub witness_x: f64,
    pub witness_y: f64,
    pub boxes_processed: usize,
    pub max_depth: usize,
    pub status: Status,
}

/// Proves `sup_G kind <= claimed_bound + tol` by depth-first subdivision.
///
/// Boxes whose enclosure stays below `claimed_bound + tol` are leaves; the
/// rest are bisected. A point evaluation above `claimed_bound + tol` stops
/// the run as refuted.
pub fn certify_max(kind: AuxKind, claimed_bound: f64, tol: f64, max_boxes: usize) -> Result<Certificate> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let threshold = claimed_bound + tol;
    let mut stack = vec![(RegionBox::rectangle(), 0usize)];
    let mut sup_hi = f64::NEG_INFINITY;
    let mut attained = f64::NEG_INFINITY;
    let mut witness = (f64::NAN, f64::NAN);
    let mut processed = 0usize;
    let mut max_depth = 0usize;
    let mut status = Status::Proven;

    while let Some((b, depth)) = stack.pop() {
        if processed >= max_boxes {
            stack.push((b, depth));
            status = Status::BudgetExceeded;
            break;
        }
        processed += 1;
        max_depth = max_depth.max(depth);
        let Some(b) = clip_to_g(&b) else { continue };

        for (px, py) in b.sample_points() {
            if in_g(px, py) {
                let v = aux_eval(kind, px, py);
                if v > attained {
                    attained = v;
                    witness = (px, py);
                }
            }
        }
        let enclosure = aux_eval_interval(kind, &b);
        if attained > threshold {
            sup_hi = sup_hi.max(enclosure.hi);
            status = Status::Refuted;
            break;
        }
        if enclosure.hi <= threshold {
            sup_hi = sup_hi.max(enclosure.hi);
        } else {
            let (l, r) = b.split();
            stack.push((r, depth + 1));
            stack.push((l, depth + 1));
        }
    }

    // Unfinished boxes still bound the supremum.
    for (b, _) in &stack {
        if let Some(b) = clip_to_g(b) {
            sup_hi = sup_hi.max(aux_eval_interval(kind, &b).hi);
        }
    }

    Ok(Certificate {
        kind,
        claimed_bound,
        certified_sup_hi: sup_hi.max(attained),
        attained_lo: attained,
        witness_x: witness.0,
        witness_y: witness.1,
        boxes_processed: processed,
        max_depth,
        status,
    })
}

/// Outcome of [`certify_dy_positive`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityCertificate {
    pub kind: AuxKind,
    /// Rigorous lower bound of the partial over `G`.
    pub certified_inf: f64,
    /// Smallest sampled value of the partial.
    pub attained_min: f64,
    pub witness_x: f64,
    pub witness_y: f64,
    pub boxes_processed: usize,
    pub max_depth: usize,
    pub status: Status,
}

/// Certifies `d kind / dy > 0` on `G`, tightening the lower bound until it is
/// within `1e-10` of the sampled minimum.
pub fn certify_dy_positive(kind: AuxKind) -> PositivityCertificate {
    const REFINE_TOL: f64 = 1e-10;
    const MAX_BOXES: usize = 1_000_000;

    let mut stack = vec![(RegionBox::rectangle(), 0usize)];
    let mut inf_lo = f64::INFINITY;
    let mut attained = f64::INFINITY;
    let mut witness = (f64::NAN, f64::NAN);
    let mut processed = 0;
    let mut max_depth = 0;
    let mut status = Status::Proven;

    while let Some((b, depth)) = stack.pop() {
        if processed >= MAX_BOXES {
            stack.push((b, depth));
            status = Status::BudgetExceeded;
            break;
        }
        processed += 1;
        max_depth = max_depth.max(depth);
        let Some(b) = clip_to_g(&b) else { continue };
        for (px, py) in b.sample_points() {
            if in_g(px, py) {
                let v = kind.dy(px, py);
                if v < attained {
                    attained = v;
                    witness = (px, py);
                }
            }
        }
        if attained <= 0.0 {
            status = Status::Refuted;
            break;
        }
        let enclosure = kind.dy(b.x, b.y);
        if enclosure.lo >= attained - REFINE_TOL {
            inf_lo = inf_lo.min(enclosure.lo);
        } else {
            let (l, r) = b.split();
            stack.push((r, depth + 1));
            stack.push((l, depth + 1));
        }
    }
    for (b, _) in &stack {
        if let Some(b) = clip_to_g(b) {
            inf_lo = inf_lo.min(kind.dy(b.x, b.y).lo);
        }
    }
    if status == Status::Proven && !(inf_lo > 0.0) {
        status = Status::Refuted;
    }
    PositivityCertificate {
        kind,
        certified_inf: inf_lo.min(attained),
        attained_min: attained,
        witness_x: witness.0,
        witness_y: witness.1,
        boxes_processed: processed,
        max_depth,
        status,
    }
}

/// Rigorous bounds on the extremum of a one-variable function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum1d {
    /// Best sampled value (a lower bound for a max, upper bound for a min).
    pub attained: f64,
    /// Certified bound on the other side.
    pub certified: f64,
    pub argbest: f64,
    pub boxes_processed: usize,
}

fn extremum_1d<F>(f: F, domain: Interval, maximize: bool, tol: f64, max_boxes: usize) -> Extremum1d
where
    F: Fn(Interval) -> Interval,
{
    // Work with the maximization of s * f.
    let s = if maximize { 1.0 } else { -1.0 };
    let point = |t: f64| s * f(Interval::point(t)).mid();
    let upper = |iv: Interval| {
        let e = f(iv);
        if maximize {
            e.hi
        } else {
            -e.lo
        }
    };

    let mut stack = vec![domain];
    let mut best = f64::NEG_INFINITY;
    let mut arg = domain.lo;
    let mut bound = f64::NEG_INFINITY;
    let mut processed = 0;
    while let Some(iv) = stack.pop() {
        if processed >= max_boxes {
            bound = bound.max(upper(iv));
            stack.iter().for_each(|&r| bound = bound.max(upper(r)));
            break;
        }
        processed += 1;
        for t in [iv.lo, iv.mid(), iv.hi] {
            let v = point(t);
            if v > best {
                best = v;
                arg = t;
            }
        }
        let u = upper(iv);
        if u <= best + tol || iv.width() == 0.0 {
            bound = bound.max(u);
        } else {
            let (l, r) = iv.split();
            stack.push(r);
            stack.push(l);
        }
    }
    Extremum1d {
        attained: s * best,
        certified: s * bound.max(best),
        argbest: arg,
        boxes_processed: processed,
    }
}

/// Certified maximum of `f` over `domain` to within `tol`.
pub fn certify_max_1d<F>(f: F, domain: Interval, tol: f64) -> Extremum1d
where
    F: Fn(Interval) -> Interval,
{
    extremum_1d(f, domain, true, tol, 1_000_000)
}

/// Certified minimum of `f` over `domain` to within `tol`.
pub fn certify_min_1d<F>(f: F, domain: Interval, tol: f64) -> Extremum1d
where
    F: Fn(Interval) -> Interval,
{
    extremum_1d(f, domain, false, tol, 1_000_000)
}

/// The curved-edge restriction of `f1`, `2 + (10/3)x - x^2 - x^3/3`, is
/// increasing on `[0, 1]`: its derivative `10/3 - 2x - x^2` has a certified
/// positive minimum there. Returns the certified minimum.
pub fn certify_f1_curved_edge_increasing() -> Extremum1d {
    certify_min_1d(
        |x| Interval::point(10.0) / 3.0 - x * 2.0 - x.sqr(),
        Interval::new(0.0, 1.0),
        1e-12,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeId {
    /// `x = 0`, `0 <= y <= 1/2`, parameter `y`.
    XZero,
    /// `y = 0`, `0 <= x <= 1`, parameter `x`.
    YZero,
    /// `y = (1 - x^2)/2`, `0 <= x <= 1`, parameter `x`.
    Ceiling,
}

impl EdgeId {
    pub const ALL: [EdgeId; 3] = [EdgeId::XZero, EdgeId::YZero, EdgeId::Ceiling];

    pub fn domain(&self) -> Interval {
        match self {
            EdgeId::XZero => Interval::new(0.0, 0.5),
            _ => Interval::new(0.0, 1.0),
        }
    }

    /// Point of `G` at edge parameter `t`.
    pub fn point(&self, t: f64) -> (f64, f64) {
        match self {
            EdgeId::XZero => (0.0, t),
            EdgeId::YZero => (t, 0.0),
            EdgeId::Ceiling => (t, g_ceiling(t)),
        }
    }
}

/// Closed-form restriction of `kind` to an edge, as a polynomial in the
/// edge parameter.
pub fn edge_closed_form<T: Scalar>(kind: AuxKind, edge: EdgeId, t: T) -> T {
    let one = T::cst(1.0);
    match (kind, edge) {
        (AuxKind::F1, EdgeId::XZero) => (one - t.sqr() * 4.0) / 3.0 + t * 4.0,
        (AuxKind::F1, EdgeId::YZero) => (one - t.sqr()) / 3.0 + t.sqr() + t * 3.0,
        (AuxKind::F1, EdgeId::Ceiling) => T::cst(2.0) + t * 10.0 / 3.0 - t.sqr() - t.cube() / 3.0,
        (AuxKind::F2, EdgeId::XZero) => (one - t.sqr() * 4.0) / 3.0 + t * 2.0,
        (AuxKind::F2, EdgeId::YZero) => (one - t.sqr()) / 3.0 + t * 3.0,
        (AuxKind::F2, EdgeId::Ceiling) => one + t * 10.0 / 3.0 - t.sqr() - t.cube() / 3.0,
        (AuxKind::G, EdgeId::XZero) => (one + t * 12.0 - t.sqr() * 4.0) / 3.0,
        (AuxKind::G, EdgeId::YZero) => t.sqr() * 5.0 / 3.0 + t * 9.0 + one / 3.0,
        (AuxKind::G, EdgeId::Ceiling) => T::cst(2.0) + t * 28.0 / 3.0 - t.cube() / 3.0,
    }
}

/// Stated maximum and maximizing parameter of each edge restriction.
pub fn edge_stated_max(kind: AuxKind, edge: EdgeId) -> (f64, f64) {
    match (kind, edge) {
        (AuxKind::F1, EdgeId::XZero) => (2.0, 0.5),
        (AuxKind::F2, EdgeId::XZero) => (1.0, 0.5),
        (AuxKind::G, EdgeId::XZero) => (2.0, 0.5),
        (k, _) => (k.proved_bound(), 1.0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeReport {
    pub edge: EdgeId,
    pub closed_form_max: f64,
    pub argmax: f64,
    /// Certified enclosure `[attained, certified]` of the edge maximum.
    pub certified_lo: f64,
    pub certified_hi: f64,
    pub certified_argmax: f64,
    /// Largest `|closed form - aux_eval|` over the edge sample.
    pub max_discrepancy: f64,
}

pub const EDGE_SAMPLES: usize = 1000;

/// Certifies the maximum of each edge restriction and cross-checks the
/// closed forms against direct evaluation on [`EDGE_SAMPLES`] points.
pub fn edge_profiles(kind: AuxKind) -> [EdgeReport; 3] {
    EdgeId::ALL.map(|edge| {
        let (closed_form_max, argmax) = edge_stated_max(kind, edge);
        let ext = certify_max_1d(|t| edge_closed_form(kind, edge, t), edge.domain(), 1e-12);
        let dom = edge.domain();
        let max_discrepancy = (0..EDGE_SAMPLES)
            .map(|i| {
                let t = dom.lo + dom.width() * i as f64 / (EDGE_SAMPLES - 1) as f64;
                let (x, y) = edge.point(t);
                (edge_closed_form(kind, edge, t) - aux_eval(kind, x, y)).abs()
            })
            .fold(0.0, f64::max);
        EdgeReport {
            edge,
            closed_form_max,
            argmax,
            certified_lo: ext.attained,
            certified_hi: ext.certified,
            certified_argmax: ext.argbest,
            max_discrepancy,
        }
    })
}

/// Brute-force maximum over a `resolution x resolution` grid of the
/// bounding rectangle, skipping points outside `G`.
pub fn grid_oracle(kind: AuxKind, resolution: usize) -> Result<(f64, (f64, f64))> {
    if resolution < 101 {
        return Err(Error::InvalidInput(format!("grid resolution must be at least 101, got {resolution}")));
    }
    let step = 1.0 / (resolution - 1) as f64;
    let mut best = f64::NEG_INFINITY;
    let mut arg = (f64::NAN, f64::NAN);
    for i in 0..resolution {
        let x = i as f64 * step;
        for j in 0..resolution {
            let y = 0.5 * j as f64 * step;
            if !in_g(x, y) {
                continue;
            }
            let v = aux_eval(kind, x, y);
            if v > best {
                best = v;
                arg = (x, y);
            }
        }
    }
    Ok((best, arg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn aux_eval_examples() {
        assert_eq!(aux_eval(AuxKind::F1, 1.0, 0.0), 4.0);
        assert_eq!(aux_eval(AuxKind::F2, 0.0, 0.5), 1.0);
        assert_eq!(aux_eval(AuxKind::G, 1.0, 0.0), 11.0);
        // Outside G the rectangle corner exceeds the bound.
        assert!((aux_eval(AuxKind::F1, 1.0, 0.5) - 35.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn aux_interval_examples() {
        let point = RegionBox::new(Interval::point(1.0), Interval::point(0.0));
        let e = aux_eval_interval(AuxKind::F1, &point);
        assert!(e.contains(4.0) && e.width() <= 2e-12);

        let full = aux_eval_interval(AuxKind::F1, &RegionBox::rectangle());
        assert!(full.hi >= 4.0);

        let edge = RegionBox::new(Interval::point(0.0), Interval::new(0.0, 0.5));
        let e = aux_eval_interval(AuxKind::G, &edge);
        assert!(e.contains_interval(&Interval::new(1.0 / 3.0, 2.0)));
    }

    #[test]
    fn clip_examples() {
        let full = RegionBox::rectangle();
        assert_eq!(clip_to_g(&full), Some(full));

        let b = RegionBox::new(Interval::point(1.0), Interval::new(0.1, 0.5));
        assert_eq!(clip_to_g(&b), None);

        let b = RegionBox::new(Interval::new(0.6, 0.8), Interval::new(0.0, 0.5));
        let c = clip_to_g(&b).unwrap();
        assert!(c.y.hi >= 0.32 && c.y.hi - 0.32 < 1e-15);
        assert_eq!(c.x, b.x);
    }

    #[test]
    fn clip_is_sound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20_000 {
            let (x0, x1) = ordered(&mut rng, 1.0);
            let (y0, y1) = ordered(&mut rng, 0.5);
            let b = RegionBox::new(Interval::new(x0, x1), Interval::new(y0, y1));
            let (px, py) = (rng.gen_range(x0..=x1), rng.gen_range(y0..=y1));
            if in_g(px, py) {
                let c = clip_to_g(&b).expect("box meets G");
                assert!(c.x.contains(px) && c.y.contains(py));
            }
        }
    }

    fn ordered(rng: &mut impl Rng, hi: f64) -> (f64, f64) {
        let a = rng.gen_range(0.0..=hi);
        let b = rng.gen_range(0.0..=hi);
        (a.min(b), a.max(b))
    }

    #[test]
    fn enclosure_soundness() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100_000 {
            let (x0, x1) = ordered(&mut rng, 1.0);
            let (y0, y1) = ordered(&mut rng, 0.5);
            let b = RegionBox::new(Interval::new(x0, x1), Interval::new(y0, y1));
            let (px, py) = (rng.gen_range(x0..=x1), rng.gen_range(y0..=y1));
            for kind in AuxKind::ALL {
                let e = aux_eval_interval(kind, &b);
                assert!(e.contains(aux_eval(kind, px, py)), "{kind} {b:?} ({px}, {py})");
                assert!(kind.dy(b.x, b.y).contains(kind.dy(px, py)));
            }
        }
    }

    #[test]
    fn refinement_never_widens() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5_000 {
            let (x0, x1) = ordered(&mut rng, 1.0);
            let (y0, y1) = ordered(&mut rng, 0.5);
            let b = RegionBox::new(Interval::new(x0, x1), Interval::new(y0, y1));
            let (l, r) = b.split();
            for kind in AuxKind::ALL {
                let parent = aux_eval_interval(kind, &b);
                let children = aux_eval_interval(kind, &l).hull(&aux_eval_interval(kind, &r));
                // Allow the widening slack introduced by re-rounding.
                assert!(children.lo >= parent.lo - 1e-13 && children.hi <= parent.hi + 1e-13);
            }
        }
    }

    #[test]
    fn dy_matches_finite_difference_and_legacy_form_does_not() {
        let h = 1e-6;
        for kind in AuxKind::ALL {
            for &(x, y) in &[(0.2, 0.1), (0.5, 0.3), (0.9, 0.05)] {
                let fd = (aux_eval(kind, x, y + h) - aux_eval(kind, x, y - h)) / (2.0 * h);
                assert!((fd - kind.dy(x, y)).abs() < 1e-7);
                assert!((fd - kind.legacy_dy(x, y)).abs() > 1e-3);
            }
        }
    }

    #[test]
    fn certify_max_examples() {
        let c = certify_max(AuxKind::F1, 4.0, 1e-6, DEFAULT_MAX_BOXES).unwrap();
        assert_eq!(c.status, Status::Proven);
        assert!(c.attained_lo >= 4.0 - 1e-6);
        assert!((c.witness_x - 1.0).abs() < 1e-3 && c.witness_y.abs() < 1e-3);

        let c = certify_max(AuxKind::F2, 3.0, 1e-6, DEFAULT_MAX_BOXES).unwrap();
        assert_eq!(c.status, Status::Proven);
        assert!((c.witness_x - 1.0).abs() < 1e-3 && c.witness_y.abs() < 1e-3);

        let c = certify_max(AuxKind::F1, 3.9, 1e-6, DEFAULT_MAX_BOXES).unwrap();
        assert_eq!(c.status, Status::Refuted);
        assert!(aux_eval(AuxKind::F1, c.witness_x, c.witness_y) > 3.9);
        assert!(c.attained_lo <= c.certified_sup_hi);
    }

    #[test]
    fn certify_max_budget() {
        let c = certify_max(AuxKind::F2, 3.0, 1e-9, 100).unwrap();
        assert_eq!(c.status, Status::BudgetExceeded);
        assert_eq!(c.boxes_processed, 100);
        assert!(c.certified_sup_hi >= 3.0);
        assert!(certify_max(AuxKind::F2, 3.0, 0.0, 100).is_err());
    }

    #[test]
    fn dy_positivity() {
        for kind in AuxKind::ALL {
            let c = certify_dy_positive(kind);
            assert_eq!(c.status, Status::Proven, "{kind}");
            assert!(c.certified_inf >= kind.dy_infimum() - 1e-9);
            assert!(c.certified_inf <= kind.dy_infimum() + 1e-9);
        }
    }

    #[test]
    fn curved_edge_monotone() {
        let m = certify_f1_curved_edge_increasing();
        assert!(m.certified > 0.0);
        assert!((m.attained - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn edges() {
        let expected = [
            (AuxKind::F1, [2.0, 4.0, 4.0]),
            (AuxKind::F2, [1.0, 3.0, 3.0]),
            (AuxKind::G, [2.0, 11.0, 11.0]),
        ];
        for (kind, maxima) in expected {
            for (report, m) in edge_profiles(kind).iter().zip(maxima) {
                assert_eq!(report.closed_form_max, m);
                assert!((report.certified_lo - m).abs() <= 1e-9);
                assert!((report.certified_hi - m).abs() <= 1e-9);
                assert!(report.max_discrepancy <= 1e-12);
            }
        }
    }

    #[test]
    fn grid_oracle_examples() {
        for (kind, m) in [(AuxKind::F1, 4.0), (AuxKind::F2, 3.0), (AuxKind::G, 11.0)] {
            let (v, (x, y)) = grid_oracle(kind, 2001).unwrap();
            assert!((v - m).abs() < 1e-4);
            assert!((x - 1.0).abs() < 1e-2 && y.abs() < 1e-2);
        }
        assert!(grid_oracle(AuxKind::F1, 100).is_err());
    }
}
