use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{bracket, Derivatives3};

/// Relative size below which a bracket counts as zero: `|[a, b]|` is compared
/// with `REGULARITY_TOL · |a|·|b|`, i.e. the sine of the angle between them.
pub const REGULARITY_TOL: f64 = 1e-9;

/// Pointwise orientation sign ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Eps {
    Minus,
    Plus,
}

impl Eps {
    pub fn from_sign(v: f64) -> Eps {
        if v < 0.0 {
            Eps::Minus
        } else {
            Eps::Plus
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Eps::Minus => -1.0,
            Eps::Plus => 1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Eps::Minus => -1,
            Eps::Plus => 1,
        }
    }
}

impl From<Eps> for i8 {
    fn from(e: Eps) -> i8 {
        e.as_i8()
    }
}

impl TryFrom<i8> for Eps {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Eps, String> {
        match v {
            1 => Ok(Eps::Plus),
            -1 => Ok(Eps::Minus),
            other => Err(format!("eps must be -1 or 1, got {other}")),
        }
    }
}

impl std::fmt::Display for Eps {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

/// Invariants at one sample. `s` is the accumulated arc-length, left at 0 by
/// pointwise evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantSample {
    pub s: f64,
    pub eps: Eps,
    pub g: f64,
    pub kappa: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularityStatus {
    pub bracket_pos_tangent: f64,
    pub bracket_tangent_accel: f64,
    pub regular: bool,
}

pub fn regularity(d: &Derivatives3) -> RegularityStatus {
    let a = bracket(d.pos, d.d1);
    let b = bracket(d.d1, d.d2);
    let zero_a = a.abs() <= REGULARITY_TOL * d.pos.norm() * d.d1.norm();
    let zero_b = b.abs() <= REGULARITY_TOL * d.d1.norm() * d.d2.norm();
    RegularityStatus {
        bracket_pos_tangent: a,
        bracket_tangent_accel: b,
        regular: !(zero_a || zero_b) && d.is_finite(),
    }
}

/// ε, metric density g and curvature κ from the first three parameter
/// derivatives.
pub fn invariants_at(d: &Derivatives3) -> Result<InvariantSample> {
    invariants_at_index(d, 0)
}

pub(crate) fn invariants_at_index(d: &Derivatives3, index: usize) -> Result<InvariantSample> {
    let status = regularity(d);
    if !status.regular {
        return Err(Error::IrregularPoint { index });
    }
    let a = status.bracket_pos_tangent;
    let b = status.bracket_tangent_accel;
    let c = bracket(d.pos, d.d2);
    let e = bracket(d.d1, d.d3);
    let ratio = b / a;
    let eps = Eps::from_sign(ratio);
    let g = (eps.as_f64() * ratio).sqrt();
    let kappa = (eps.as_f64() * a / b).sqrt() * (c / a + (c * b - a * e) / (2.0 * b * a));
    Ok(InvariantSample { s: 0.0, eps, g, kappa })
}
