//! Zalcman-type coefficient functionals and their sharp constants.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::classu::ClassUFunction;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionalSpec {
    /// `|a_n^2 - a_{2n-1}|`, bound `(n-1)^2`.
    Zalcman { n: u32 },
    /// `|a_m a_n - a_{m+n-1}|`, bound `(m-1)(n-1)`.
    GenZalcman { m: u32, n: u32 },
    /// `|a_n^p - a_2^{p(n-1)}|`, bound `2^{p(n-1)} - n^p`.
    Krushkal { n: u32, p: u32 },
}

/// The six cases with a proof over U.
pub const PROVEN_SPECS: [FunctionalSpec; 6] = [
    FunctionalSpec::Zalcman { n: 2 },
    FunctionalSpec::Zalcman { n: 3 },
    FunctionalSpec::GenZalcman { m: 2, n: 3 },
    FunctionalSpec::GenZalcman { m: 2, n: 4 },
    FunctionalSpec::Krushkal { n: 4, p: 1 },
    FunctionalSpec::Krushkal { n: 5, p: 1 },
];

impl FunctionalSpec {
    pub fn new_zalcman(n: u32) -> Result<Self> {
        Self::Zalcman { n }.validated()
    }

    pub fn new_gen_zalcman(m: u32, n: u32) -> Result<Self> {
        Self::GenZalcman { m, n }.validated()
    }

    pub fn new_krushkal(n: u32, p: u32) -> Result<Self> {
        Self::Krushkal { n, p }.validated()
    }

    fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Zalcman { n } => n >= 2,
            Self::GenZalcman { m, n } => m >= 2 && n >= 2,
            Self::Krushkal { n, p } => n >= 2 && p >= 1,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidSpec(self.to_string()))
        }
    }

    /// Highest coefficient index the functional reads.
    pub fn required_index(&self) -> usize {
        match *self {
            Self::Zalcman { n } => 2 * n as usize - 1,
            Self::GenZalcman { m, n } => (m + n) as usize - 1,
            Self::Krushkal { n, .. } => (n as usize).max(2),
        }
    }

    pub fn is_proven(&self) -> bool {
        PROVEN_SPECS.contains(self)
    }

    pub fn evaluate(&self, f: &ClassUFunction) -> Result<f64> {
        self.evaluate_coeffs(f.coeffs())
    }

    /// Evaluates on a raw coefficient series with `a_k` at index `k`.
    pub fn evaluate_coeffs(&self, coeffs: &TruncatedSeries) -> Result<f64> {
        let needed = self.required_index();
        if needed > coeffs.order() {
            return Err(Error::InsufficientOrder {
                needed,
                order: coeffs.order(),
            });
        }
        let a = |k: u32| coeffs.coeff(k as usize);
        let value: Complex64 = match *self {
            Self::Zalcman { n } => a(n) * a(n) - a(2 * n - 1),
            Self::GenZalcman { m, n } => a(m) * a(n) - a(m + n - 1),
            Self::Krushkal { n, p } => a(n).powu(p) - a(2).powu(p * (n - 1)),
        };
        Ok(value.norm())
    }

    pub fn bound(&self) -> f64 {
        match *self {
            Self::Zalcman { n } => ((n - 1) as f64).powi(2),
            Self::GenZalcman { m, n } => ((m - 1) * (n - 1)) as f64,
            Self::Krushkal { n, p } => 2f64.powi((p * (n - 1)) as i32) - (n as f64).powi(p as i32),
        }
    }

    pub fn excess(&self, f: &ClassUFunction) -> Result<f64> {
        Ok(self.evaluate(f)? - self.bound())
    }
}

impl fmt::Display for FunctionalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Zalcman { n } => write!(f, "Z:{n}"),
            Self::GenZalcman { m, n } => write!(f, "GZ:{m},{n}"),
            Self::Krushkal { n, p } => write!(f, "K:{n},{p}"),
        }
    }
}

impl FromStr for FunctionalSpec {
    type Err = Error;

    /// Parses `Z:n`, `GZ:m,n` or `K:n,p` (ASCII, no spaces).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(s.to_string());
        let (tag, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<u32> = args
            .split(',')
            .map(|t| {
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    Err(bad())
                } else {
                    t.parse().map_err(|_| bad())
                }
            })
            .collect::<Result<_>>()?;
        let spec = match (tag, nums.as_slice()) {
            ("Z", &[n]) => Self::Zalcman { n },
            ("GZ", &[m, n]) => Self::GenZalcman { m, n },
            ("K", &[n, p]) => Self::Krushkal { n, p },
            _ => return Err(bad()),
        };
        spec.validated().map_err(|_| bad())
    }
}

impl Serialize for FunctionalSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FunctionalSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schwarz::SchurParams;

    fn spec(s: &str) -> FunctionalSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(spec("Z:3"), FunctionalSpec::Zalcman { n: 3 });
        assert_eq!(spec("GZ:2,4"), FunctionalSpec::GenZalcman { m: 2, n: 4 });
        assert_eq!(spec("K:5,1"), FunctionalSpec::Krushkal { n: 5, p: 1 });
        for s in ["Z:3", "GZ:2,4", "K:5,1", "GZ:3,3"] {
            assert_eq!(spec(s).to_string(), s);
        }
        for bad in ["Z:1", "Z:", "GZ:2", "K:4,0", "K:4,1.5", "X:2", "Z: 2", "GZ:2,-3", "Z:2,3"] {
            assert!(bad.parse::<FunctionalSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn evaluate_examples() {
        let koebe = ClassUFunction::koebe(0.0, 16);
        assert!((spec("Z:3").evaluate(&koebe).unwrap() - 4.0).abs() < 1e-12);
        assert!((spec("GZ:2,4").evaluate(&koebe).unwrap() - 3.0).abs() < 1e-12);

        let id = ClassUFunction::identity(16);
        for s in ["Z:2", "Z:3", "GZ:2,3", "GZ:3,3", "K:4,1", "K:5,2"] {
            assert_eq!(spec(s).evaluate(&id).unwrap(), 0.0);
        }
    }

    #[test]
    fn insufficient_order() {
        let f = ClassUFunction::identity(4);
        assert!(matches!(
            spec("Z:3").evaluate(&f),
            Err(Error::InsufficientOrder { needed: 5, order: 4 })
        ));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(spec("Z:2").bound(), 1.0);
        assert_eq!(spec("K:5,1").bound(), 11.0);
        assert_eq!(spec("GZ:3,3").bound(), 4.0);
        assert_eq!(spec("K:4,1").bound(), 4.0);
        assert_eq!(spec("K:3,2").bound(), 16.0 - 9.0);
    }

    #[test]
    fn excess_examples() {
        let k = ClassUFunction::koebe(0.7, 16);
        assert!(spec("Z:2").excess(&k).unwrap().abs() < 1e-12);
        assert_eq!(spec("GZ:2,3").excess(&ClassUFunction::identity(16)).unwrap(), -2.0);
        assert!(spec("K:4,1").excess(&ClassUFunction::koebe(0.0, 16)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn koebe_attains_every_proven_bound() {
        for theta in [0.0, 0.7, 1.9, std::f64::consts::PI] {
            let k = ClassUFunction::koebe(theta, 16);
            for s in PROVEN_SPECS {
                assert!((s.evaluate(&k).unwrap() - s.bound()).abs() < 1e-12, "{s} at {theta}");
            }
        }
    }

    #[test]
    fn rotation_invariance() {
        let p = SchurParams::new(vec![
            Complex64::new(0.2, 0.1),
            Complex64::new(-0.3, 0.2),
            Complex64::new(0.1, 0.4),
        ])
        .unwrap();
        let f = ClassUFunction::from_params(Complex64::new(0.5, -0.4), p, 16).unwrap();
        for theta in [0.4, 2.2, 5.1] {
            let r = f.rotate(theta).unwrap();
            for s in ["Z:2", "Z:3", "Z:4", "GZ:2,3", "GZ:3,4", "K:4,1", "K:5,2", "K:3,3"] {
                let s = spec(s);
                assert!((s.evaluate(&r).unwrap() - s.evaluate(&f).unwrap()).abs() < 1e-10);
            }
        }
    }
}
