//! Radial profile library for the field constructors.
//!
//! Each profile knows its value, derivative, and endpoint limits, so the
//! constructors can expose exact Jacobians and the tests can check boundary
//! behaviour without sampling to huge radii.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Smooth radial profile r >= 0 -> value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    /// pi exp(-r/a): starts at pi, decays to 0.
    SkyrmeExp { a: f64 },
    /// 4 arctan(exp(-r/a)): same endpoints as `SkyrmeExp`, kink-shaped body.
    SkyrmeArctan { a: f64 },
    /// f tanh(r/a): vanishes at the origin, saturates at f.
    HiggsTanh { f: f64, a: f64 },
    /// (1/g)(1/r - csch(r/a)/a): zero at the origin, tends to 1/(g r).
    GaugeBps { g: f64, a: f64 },
    /// Constant value (e.g. a frozen vacuum magnitude).
    Const(f64),
}

impl Profile {
    /// Look up a profile by its library name.
    pub fn by_name(name: &str, scale: f64, amplitude: f64) -> Result<Profile> {
        match name {
            "skyrme-exp" => Ok(Profile::SkyrmeExp { a: scale }),
            "skyrme-arctan" => Ok(Profile::SkyrmeArctan { a: scale }),
            "higgs-tanh" => Ok(Profile::HiggsTanh { f: amplitude, a: scale }),
            "gauge-bps" => Ok(Profile::GaugeBps { g: amplitude, a: scale }),
            other => Err(Error::UnknownProfile(other.to_string())),
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        match *self {
            Profile::SkyrmeExp { a } => PI * (-r / a).exp(),
            Profile::SkyrmeArctan { a } => 4.0 * (-r / a).exp().atan(),
            Profile::HiggsTanh { f, a } => f * (r / a).tanh(),
            Profile::GaugeBps { g, a } => {
                let x = r / a;
                if x < 1e-4 {
                    // series of 1/r - csch(r/a)/a near the origin
                    (x / (6.0 * a) - 7.0 * x.powi(3) / (360.0 * a)) / g
                } else {
                    (1.0 / r - 1.0 / (a * x.sinh())) / g
                }
            }
            Profile::Const(v) => v,
        }
    }

    pub fn deriv(&self, r: f64) -> f64 {
        match *self {
            Profile::SkyrmeExp { a } => -PI * (-r / a).exp() / a,
            Profile::SkyrmeArctan { a } => {
                // d/dr 4 atan(e^{-r/a}) = -(2/a) sech(r/a)
                -2.0 / (a * (r / a).cosh())
            }
            Profile::HiggsTanh { f, a } => {
                let c = (r / a).cosh();
                f / (a * c * c)
            }
            Profile::GaugeBps { g, a } => {
                let x = r / a;
                if x < 1e-4 {
                    (1.0 / (6.0 * a * a) - 7.0 * x * x / (120.0 * a * a)) / g
                } else {
                    let sh = x.sinh();
                    (-1.0 / (r * r) + x.cosh() / (a * a * sh * sh)) / g
                }
            }
            Profile::Const(_) => 0.0,
        }
    }

    pub fn at_zero(&self) -> f64 {
        match *self {
            Profile::SkyrmeExp { .. } => PI,
            Profile::SkyrmeArctan { .. } => PI,
            Profile::HiggsTanh { .. } => 0.0,
            Profile::GaugeBps { .. } => 0.0,
            Profile::Const(v) => v,
        }
    }

    pub fn at_infinity(&self) -> f64 {
        match *self {
            Profile::SkyrmeExp { .. } | Profile::SkyrmeArctan { .. } => 0.0,
            Profile::HiggsTanh { f, .. } => f,
            Profile::GaugeBps { .. } => 0.0,
            Profile::Const(v) => v,
        }
    }
}
