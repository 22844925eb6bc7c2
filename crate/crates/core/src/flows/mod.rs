//! Invariant curve flows `∂C/∂t = β(κ)·C_ss` and the heat flow (β ≡ 1),
//! whose curvature obeys the inviscid Burgers equation `κ_t = κ κ_s`.

mod beta;
mod burgers;
mod exact;
mod rates;
mod state;

pub use beta::BetaSpec;
pub use burgers::{burgers_at, burgers_characteristics, upwind_reference, Profile};
pub use exact::{exact_heat_solution, CharacteristicField, KAPPA_TOL};
pub use rates::{evolution_rates, tangent_normal_coeffs, TangentNormalCoeffs};
pub use state::{
    arclength_rate, evolve, heat_flow_evolve, init_state, kappa_gradient, kappa_over_g, stability_bound, step,
    EvolveOptions, FlowState,
};
