use serde::{Deserialize, Serialize};

/// Speed function β(κ) of the flow `∂C/∂t = β(κ)·C_ss`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BetaSpec {
    /// β ≡ 1: the heat flow.
    #[default]
    ConstantOne,
    /// β = κ^exponent.
    PowerOfKappa { exponent: u32 },
    /// β = Σ coeffs[i]·κ^i.
    PolynomialInKappa { coeffs: Vec<f64> },
}

impl BetaSpec {
    pub fn eval(&self, kappa: f64) -> f64 {
        match self {
            BetaSpec::ConstantOne => 1.0,
            BetaSpec::PowerOfKappa { exponent } => kappa.powi(*exponent as i32),
            BetaSpec::PolynomialInKappa { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * kappa + c),
        }
    }

    /// dβ/dκ.
    pub fn derivative(&self, kappa: f64) -> f64 {
        match self {
            BetaSpec::ConstantOne => 0.0,
            BetaSpec::PowerOfKappa { exponent: 0 } => 0.0,
            BetaSpec::PowerOfKappa { exponent } => *exponent as f64 * kappa.powi(*exponent as i32 - 1),
            BetaSpec::PolynomialInKappa { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (i, c)| acc * kappa + i as f64 * c),
        }
    }

    /// True when β does not depend on κ.
    pub fn is_constant(&self) -> bool {
        match self {
            BetaSpec::ConstantOne => true,
            BetaSpec::PowerOfKappa { exponent } => *exponent == 0,
            BetaSpec::PolynomialInKappa { coeffs } => coeffs.iter().skip(1).all(|c| *c == 0.0),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            BetaSpec::PolynomialInKappa { coeffs } => coeffs.iter().all(|c| c.is_finite()),
            _ => true,
        }
    }
}
