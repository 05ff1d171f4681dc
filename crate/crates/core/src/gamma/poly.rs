//! Polynomials and rational functions in one variable η with exact
//! rational coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalPoly(Vec<Rational>);

impl RationalPoly {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        RationalPoly(coefficients)
    }

    pub fn zero() -> Self {
        RationalPoly(Vec::new())
    }

    pub fn one() -> Self {
        RationalPoly(vec![Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        RationalPoly::new(vec![c])
    }

    /// η + c
    pub fn linear(c: Rational) -> Self {
        RationalPoly(vec![c, Rational::one()])
    }

    /// ∏ (η + c) over the given shifts.
    pub fn from_shifts<'a>(shifts: impl IntoIterator<Item = &'a Rational>) -> Self {
        shifts
            .into_iter()
            .fold(RationalPoly::one(), |acc, c| acc.mul(&RationalPoly::linear(c.clone())))
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        if self.is_zero() || other.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        RationalPoly::new(out)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// Cauchy bound: every complex root r satisfies |r| <= the returned value.
    pub fn root_bound(&self) -> f64 {
        match self.0.split_last() {
            None => 0.0,
            Some((lead, rest)) => {
                let lead = lead.to_f64().abs();
                1.0 + rest.iter().map(|c| c.to_f64().abs() / lead).fold(0.0, f64::max)
            }
        }
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})η")?,
                _ => write!(f, "({c})η^{i}")?,
            }
        }
        Ok(())
    }
}

/// num / den with den ≠ 0. Equality is by cross-multiplication, so common
/// factors never need to be cancelled.
#[derive(Clone, Serialize, Deserialize)]
pub struct RationalFunction {
    numerator: RationalPoly,
    denominator: RationalPoly,
}

impl RationalFunction {
    pub fn new(numerator: RationalPoly, denominator: RationalPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidInput("rational function with zero denominator".into()));
        }
        Ok(RationalFunction { numerator, denominator })
    }

    pub fn one() -> Self {
        RationalFunction {
            numerator: RationalPoly::one(),
            denominator: RationalPoly::one(),
        }
    }

    pub fn from_poly(p: RationalPoly) -> Self {
        RationalFunction {
            numerator: p,
            denominator: RationalPoly::one(),
        }
    }

    /// ∏(η + a_i) / ∏(η + b_j)
    pub fn from_shifts(numerator: &[Rational], denominator: &[Rational]) -> Self {
        RationalFunction {
            numerator: RationalPoly::from_shifts(numerator),
            denominator: RationalPoly::from_shifts(denominator),
        }
    }

    pub fn numerator(&self) -> &RationalPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &RationalPoly {
        &self.denominator
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            numerator: self.numerator.mul(&other.numerator),
            denominator: self.denominator.mul(&other.denominator),
        }
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.numerator.eval_f64(x) / self.denominator.eval_f64(x)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.numerator.mul(&other.denominator) == other.numerator.mul(&self.denominator)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.numerator, self.denominator)
    }
}
