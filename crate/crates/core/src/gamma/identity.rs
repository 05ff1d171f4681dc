//! Deciding identities ∏Γ(η+x_i) / ∏Γ(η+y_j) = R(η) with R rational.
//!
//! A Gamma ratio is a rational function of η exactly when the shifts can be
//! matched within each residue class mod ℤ; each matched pair then
//! telescopes through Γ(η+1) = ηΓ(η) into a finite product of linear
//! factors. The decision is exact; sampling is a numeric cross-check.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::log_gamma::log_gamma_unchecked;
use super::poly::{RationalFunction, RationalPoly};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Seed for the deterministic sample points of [`default_sample_points`].
pub const SAMPLE_SEED: u64 = 0x5EED_6A33;
/// Number of sample points per identity.
pub const SAMPLE_COUNT: usize = 32;
/// Relative residual accepted by the numeric path.
pub const SAMPLE_TOLERANCE: f64 = 1e-8;

/// Γ(η+base+d) / Γ(η+base) as a rational function of η.
///
/// For d ≥ 0 this is (η+base)(η+base+1)⋯(η+base+d-1); for d < 0 it is the
/// reciprocal of (η+base+d)⋯(η+base-1).
pub fn pochhammer_poly(base: &Rational, d: i64) -> RationalFunction {
    let (num, den) = pochhammer_shifts(base, d);
    RationalFunction::from_shifts(&num, &den)
}

fn pochhammer_shifts(base: &Rational, d: i64) -> (Vec<Rational>, Vec<Rational>) {
    if d >= 0 {
        let num = (0..d).map(|j| base + Rational::from_integer(j)).collect();
        (num, Vec::new())
    } else {
        let den = (d..0).map(|j| base + Rational::from_integer(j)).collect();
        (Vec::new(), den)
    }
}

/// A product ∏(η + num_i) / ∏(η + den_j) of monic linear factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFactors {
    pub num: Vec<Rational>,
    pub den: Vec<Rational>,
}

impl LinearFactors {
    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::from_shifts(&self.num, &self.den)
    }

    /// Cross-multiplied equality. Both sides of
    /// `self.num · other.den = other.num · self.den` are products of monic
    /// linear factors, so they agree iff their root multisets agree.
    pub fn cross_eq(&self, other: &LinearFactors) -> bool {
        let mut lhs: Vec<&Rational> = self.num.iter().chain(&other.den).collect();
        let mut rhs: Vec<&Rational> = other.num.iter().chain(&self.den).collect();
        if lhs.len() != rhs.len() {
            return false;
        }
        lhs.sort();
        rhs.sort();
        lhs == rhs
    }

    pub fn eval_f64(&self, eta: f64) -> f64 {
        let n: f64 = self.num.iter().map(|c| eta + c.to_f64()).product();
        let d: f64 = self.den.iter().map(|c| eta + c.to_f64()).product();
        n / d
    }
}

/// Reduces ∏Γ(η+x_i)/∏Γ(η+y_j) to linear factors, or `None` when the
/// ratio is not a rational function of η.
pub fn gamma_ratio_factors(x: &[Rational], y: &[Rational]) -> Result<Option<LinearFactors>> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "unbalanced Gamma ratio: {} numerator vs {} denominator shifts",
            x.len(),
            y.len()
        )));
    }
    let mut classes: BTreeMap<Rational, (Vec<&Rational>, Vec<&Rational>)> = BTreeMap::new();
    for v in x {
        classes.entry(v.fract()).or_default().0.push(v);
    }
    for v in y {
        classes.entry(v.fract()).or_default().1.push(v);
    }
    let mut out = LinearFactors::default();
    for (_, (mut xs, mut ys)) in classes {
        if xs.len() != ys.len() {
            return Ok(None);
        }
        xs.sort();
        ys.sort();
        for (xv, yv) in xs.into_iter().zip(ys) {
            // Γ(η+x)/Γ(η+y) with x - y ∈ ℤ
            let d = (xv - yv)
                .to_i64()
                .ok_or_else(|| Error::InvalidInput("Gamma shift difference too large".into()))?;
            let (num, den) = pochhammer_shifts(yv, d);
            out.num.extend(num);
            out.den.extend(den);
        }
    }
    Ok(Some(out))
}

/// The Gamma ratio as a rational function, or `None` when it is not one.
pub fn gamma_ratio_reduce(x: &[Rational], y: &[Rational]) -> Result<Option<RationalFunction>> {
    Ok(gamma_ratio_factors(x, y)?.map(|f| f.to_rational_function()))
}

/// ∏Γ(η+x_i) / ∏Γ(η+y_j) = rhs(η) on a right half-plane.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaRatioIdentity {
    x: Vec<Rational>,
    y: Vec<Rational>,
    rhs: RationalFunction,
}

impl GammaRatioIdentity {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>, rhs: RationalFunction) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidInput(format!(
                "unbalanced identity: |x| = {}, |y| = {}",
                x.len(),
                y.len()
            )));
        }
        Ok(GammaRatioIdentity { x, y, rhs })
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }

    pub fn rhs(&self) -> &RationalFunction {
        &self.rhs
    }
}

pub fn decide_gamma_identity(id: &GammaRatioIdentity) -> bool {
    match gamma_ratio_reduce(&id.x, &id.y) {
        Ok(Some(lhs)) => lhs == id.rhs,
        // A non-rational left side never equals a rational right side.
        Ok(None) => false,
        Err(_) => unreachable!("balanced at construction"),
    }
}

/// ln of the Gamma ratio at η; arguments must all be positive.
pub(crate) fn log_gamma_ratio(x: &[f64], y: &[f64], eta: f64) -> f64 {
    let up: f64 = x.iter().map(|&v| log_gamma_unchecked(eta + v)).sum();
    let down: f64 = y.iter().map(|&v| log_gamma_unchecked(eta + v)).sum();
    up - down
}

/// max over points of |Γ-ratio(η) - rhs(η)| / max(1, |rhs(η)|).
pub fn sample_identity_residual(id: &GammaRatioIdentity, points: &[f64]) -> Result<f64> {
    let x: Vec<f64> = id.x.iter().map(Rational::to_f64).collect();
    let y: Vec<f64> = id.y.iter().map(Rational::to_f64).collect();
    for &eta in points {
        if !eta.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite sample point {eta}")));
        }
        if let Some(v) = x.iter().chain(&y).find(|&&v| eta + v <= 0.0) {
            return Err(Error::InvalidInput(format!(
                "sample point {eta} gives Gamma argument {} <= 0",
                eta + v
            )));
        }
        if id.rhs.denominator().eval_f64(eta).abs() < 1e-6 {
            return Err(Error::InvalidInput(format!(
                "sample point {eta} is too close to a pole of the right-hand side"
            )));
        }
    }
    Ok(ratio_residual(&x, &y, |eta| id.rhs.eval_f64(eta), points))
}

pub(crate) fn ratio_residual(
    x: &[f64],
    y: &[f64],
    rhs: impl Fn(f64) -> f64,
    points: &[f64],
) -> f64 {
    points
        .iter()
        .map(|&eta| {
            let lhs = log_gamma_ratio(x, y, eta).exp();
            let r = rhs(eta);
            (lhs - r).abs() / r.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Smallest shift c ≥ 0 such that every η ≥ 1 + c keeps all Gamma arguments
/// ≥ 1 and stays at distance ≥ 1 from every root of `den`.
pub(crate) fn safe_offset(shifts: impl IntoIterator<Item = f64>, den: &RationalPoly) -> f64 {
    let gamma = shifts.into_iter().fold(0.0f64, |acc, v| acc.max(-v));
    gamma.max(den.root_bound()).max(0.0)
}

/// 32 deterministic points drawn from [1, 50], translated right far enough
/// that the identity can be evaluated at every one of them.
pub fn default_sample_points(id: &GammaRatioIdentity) -> Vec<f64> {
    let offset = safe_offset(id.x.iter().chain(&id.y).map(Rational::to_f64), id.rhs.denominator());
    sample_points_with_offset(offset)
}

pub(crate) fn sample_points_with_offset(offset: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..SAMPLE_COUNT)
        .map(|_| offset + rng.gen_range(1.0..=50.0))
        .collect()
}
