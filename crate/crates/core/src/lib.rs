//! Numerics for Volterra-type integration operators `T_g f = int_0^z f g'`
//! on generalized Fock spaces `F^p_{alpha,A}`: truncated power series, Fock
//! norms by quadrature, the operator and its resolvent, and spectral
//! experiments.

pub mod cli;
pub mod error;
pub mod expr;
pub mod fock;
pub mod series;
pub mod spectral;
pub mod volterra;

pub use error::{FockError, Result};
pub use fock::{
    exp_membership, integral_means, log_monomial_norm, log_series_norm, lp_rhs, monomial_norm, point_eval_bound_check,
    series_norm, weighted_integrals, FockParams, MembershipVerdict, QuadratureScheme, WeightedIntegrals,
};
pub use series::TruncatedSeries;
pub use spectral::{
    boundary_term_decay, boundedness_diagnostic, classify_spectrum, lp_ratio_experiment, membership_scan,
    resolvent_norm_probe, spectral_radius_estimate, weighted_lp_experiment, BoundednessReport, Provenance,
    RadiusEstimate, SpectrumDescription, SpectrumKind, Trend, WeightField,
};
pub use volterra::{apply_tg, resolvent_apply, shift_power_norm, tg_matrix, PolynomialSymbol, ShiftMatrix};
