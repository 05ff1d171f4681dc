use crate::error::{Error, Result};

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma requires a finite x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// ln Γ(x) without the domain check; callers guarantee x > 0.
#[inline]
pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    debug_assert!(x > 0.0, "log_gamma argument {x}");
    libm::lgamma(x)
}
