//! Monomial-type Toeplitz operators on the Bergman space of
//! Ω_m^n = {z ∈ ℂⁿ : Σ|z_i|^{2m_i} < 1}.
//!
//! The crate decides exactly when two operators T_{r^l ζ^p ζ̄^q} and
//! T_{r^k ζ^s ζ̄^t} commute or semi-commute, builds truncated matrices of
//! the operators and their commutators, and checks the closed forms
//! against Monte-Carlo integration.

pub mod calculus;
pub mod cli;
pub mod condition;
pub mod decide;
pub mod error;
pub mod gamma;
pub mod model;
pub mod multi_index;
pub mod oracle;
pub mod rational;
pub mod search;

pub use condition::{condition_i, coordinatewise, Clause, ConditionI};
pub use error::{Error, Result};
pub use model::{mu_nu_a_b, weighted_degree, Degrees, DomainSpec, MonomialSymbol, MuNuAB, ProblemPair};
pub use multi_index::{delta_index, gamma_index, succeq, MultiIndex};
pub use rational::Rational;

/// Version tag carried by every JSON document we emit or accept.
pub const SCHEMA: &str = "btc/1";
