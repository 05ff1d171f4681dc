//! Gamma function evaluation and exact Gamma-ratio identities.

mod identity;
mod log_gamma;
mod poly;

pub use identity::{
    decide_gamma_identity, default_sample_points, gamma_ratio_factors, gamma_ratio_reduce,
    pochhammer_poly, sample_identity_residual, GammaRatioIdentity, LinearFactors, SAMPLE_COUNT,
    SAMPLE_SEED, SAMPLE_TOLERANCE,
};
pub use log_gamma::log_gamma;
pub use poly::{RationalFunction, RationalPoly};

pub(crate) use identity::{ratio_residual, sample_points_with_offset};
pub(crate) use log_gamma::log_gamma_unchecked;
