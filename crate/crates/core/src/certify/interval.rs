//! Closed intervals with outward widening.
//!
//! Each arithmetic result is computed in round-to-nearest and then widened by
//! [`WIDEN_ULPS`] units in the last place on both ends, which encloses the
//! exact real result without touching the FPU rounding mode.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

pub const WIDEN_ULPS: u32 = 4;

#[derive(Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(mut x: f64) -> f64 {
    for _ in 0..WIDEN_ULPS {
        x = x.next_down();
    }
    x
}

fn up(mut x: f64) -> f64 {
    for _ in 0..WIDEN_ULPS {
        x = x.next_up();
    }
    x
}

impl Interval {
    /// Panics if `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// Degenerate interval holding exactly `x`.
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    fn widened(lo: f64, hi: f64) -> Self {
        Self { lo: down(lo), hi: up(hi) }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn split(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }

    /// Tight square: `[0, max^2]` when the interval straddles zero.
    pub fn sqr(&self) -> Interval {
        let (a, b) = (self.lo * self.lo, self.hi * self.hi);
        if self.lo >= 0.0 {
            Self::widened(a, b)
        } else if self.hi <= 0.0 {
            Self::widened(b, a)
        } else {
            Interval { lo: 0.0, hi: up(a.max(b)) }
        }
    }

    /// Odd integer powers are monotone; this handles `x^3` without
    /// dependency blow-up.
    pub fn cube(&self) -> Interval {
        Self::widened(self.lo * self.lo * self.lo, self.hi * self.hi * self.hi)
    }

    pub fn scale(&self, s: f64) -> Interval {
        if s >= 0.0 {
            Self::widened(self.lo * s, self.hi * s)
        } else {
            Self::widened(self.hi * s, self.lo * s)
        }
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::widened(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::widened(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widened(lo, hi)
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Division by an interval containing zero yields the whole real line.
    fn div(self, rhs: Interval) -> Interval {
        if rhs.lo <= 0.0 && rhs.hi >= 0.0 {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        let q = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widened(lo, hi)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $method(self, rhs: f64) -> Interval {
                $tr::$method(self, Interval::point(rhs))
            }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                $tr::$method(Interval::point(self), rhs)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn third_is_enclosed() {
        let third = Interval::point(1.0) / Interval::point(3.0);
        assert!(third.lo < 1.0 / 3.0 && 1.0 / 3.0 < third.hi);
        assert!(third.width() < 1e-15);
    }

    #[test]
    fn division_by_zero_straddle() {
        let q = Interval::point(1.0) / Interval::new(-1.0, 1.0);
        assert_eq!(q.lo, f64::NEG_INFINITY);
        assert_eq!(q.hi, f64::INFINITY);
    }

    #[test]
    fn sqr_straddling_zero() {
        let s = Interval::new(-2.0, 1.0).sqr();
        assert_eq!(s.lo, 0.0);
        assert!(s.hi >= 4.0);
    }

    fn interval_and_point() -> impl Strategy<Value = (Interval, f64)> {
        (-4.0f64..4.0, 0.0f64..3.0, 0.0f64..=1.0).prop_map(|(lo, w, t)| {
            let iv = Interval::new(lo, lo + w);
            (iv, lo + t * w)
        })
    }

    proptest! {
        #[test]
        fn arithmetic_encloses_points((a, x) in interval_and_point(), (b, y) in interval_and_point()) {
            prop_assert!((a + b).contains(x + y));
            prop_assert!((a - b).contains(x - y));
            prop_assert!((a * b).contains(x * y));
            prop_assert!(a.sqr().contains(x * x));
            prop_assert!(a.cube().contains(x * x * x));
            if b.lo > 0.0 || b.hi < 0.0 {
                prop_assert!((a / b).contains(x / y));
            }
        }
    }
}
