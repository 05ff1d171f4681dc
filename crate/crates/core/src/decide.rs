//! Deciding whether two monomial-type Toeplitz operators commute or
//! semi-commute, plus the corollary shortcuts and necessary conditions.
//!
//! T₁ = T_{r^l ζ^p ζ̄^q} and T₂ = T_{r^k ζ^s ζ̄^t} commute iff every
//! coordinate tuple (p_i, q_i, s_i, t_i) satisfies Condition (I) and
//!
//!   Γ(η+P) Γ(η+ν+1) Γ(η+μ+S)     (η+b)(η+a+ν)
//!   ------------------------  =  -------------
//!   Γ(η+S) Γ(η+μ+1) Γ(η+ν+P)     (η+a)(η+b+μ)
//!
//! identically in η, with P = |p̂|, S = |ŝ| and μ, ν, a, b as in
//! [`mu_nu_a_b`]. A finite-rank commutator is already zero.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::condition::{condition_i, coordinatewise, Clause, ConditionI};
use crate::error::{check_len, Error, Result};
use crate::gamma::{
    decide_gamma_identity, gamma_ratio_factors, ratio_residual, sample_points_with_offset,
    GammaRatioIdentity, LinearFactors, RationalFunction, SAMPLE_TOLERANCE,
};
use crate::model::{mu_nu_a_b, Degrees, DomainSpec, MonomialSymbol, MuNuAB, ProblemPair};
use crate::multi_index::MultiIndex;
use crate::rational::{approx_eq_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    fn from_bool(b: bool) -> Answer {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Exact,
    Numeric,
}

/// Why a verdict came out the way it did.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Condition (I) fails at this (1-based) coordinate.
    ConditionFailed { coordinate: usize, tuple: [u32; 4] },
    /// Condition (I) holds everywhere; the Gamma identity decided the rest.
    Identity {
        holds: bool,
        x: Vec<Rational>,
        y: Vec<Rational>,
        rhs_numerator: Vec<Rational>,
        rhs_denominator: Vec<Rational>,
        coordinates: Vec<ConditionI>,
    },
    /// Float radial exponents: the identity was checked by sampling.
    SampledIdentity {
        holds: bool,
        x: Vec<Rational>,
        y: Vec<Rational>,
        a: f64,
        b: f64,
        residual: f64,
        coordinates: Vec<ConditionI>,
    },
    /// Condition (I) on the degree tuple (|p̂|, |q̂|, |ŝ|, |t̂|).
    Degrees { clauses: ConditionI, coordinates: Vec<ConditionI> },
    /// Semi-commuting clauses (i)-(iv) that hold; empty means none.
    Semicommute { clauses: Vec<Clause> },
    /// Second operator against a holomorphic first one.
    Holomorphic { t_zero: bool, k_equals_s_degree: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub mode: Mode,
    pub witness: Witness,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    fn exact(yes: bool, witness: Witness) -> Verdict {
        Verdict { answer: Answer::from_bool(yes), mode: Mode::Exact, witness }
    }
}

fn validate(pair: &ProblemPair) -> Result<()> {
    pair.first.check_domain(&pair.domain)?;
    pair.second.check_domain(&pair.domain)
}

fn first_failure(
    p: &MultiIndex,
    q: &MultiIndex,
    s: &MultiIndex,
    t: &MultiIndex,
) -> Result<std::result::Result<Vec<ConditionI>, Witness>> {
    let coords = coordinatewise(p, q, s, t)?;
    Ok(match coords.iter().position(|c| !c.holds()) {
        Some(i) => Err(Witness::ConditionFailed {
            coordinate: i + 1,
            tuple: [p.get(i), q.get(i), s.get(i), t.get(i)],
        }),
        None => Ok(coords),
    })
}

/// Gamma shifts of the commuting identity: x = {P, ν+1, μ+S}, y = {S, μ+1, ν+P}.
fn commute_shifts(d: &Degrees) -> (Vec<Rational>, Vec<Rational>) {
    let (mu, nu) = (d.mu(), d.nu());
    let one = Rational::one();
    let x = vec![d.p.clone(), &nu + &one, &mu + &d.s];
    let y = vec![d.s.clone(), &mu + &one, &nu + &d.p];
    (x, y)
}

/// Right-hand side (η+b)(η+a+ν) / ((η+a)(η+b+μ)) as linear factors.
fn commute_rhs(v: &MuNuAB) -> LinearFactors {
    LinearFactors {
        num: vec![v.b.clone(), &v.a + &v.nu],
        den: vec![v.a.clone(), &v.b + &v.mu],
    }
}

/// The Gamma-ratio identity that decides commuting once Condition (I) holds.
pub fn commute_identity(pair: &ProblemPair) -> Result<GammaRatioIdentity> {
    validate(pair)?;
    let d = pair.degrees();
    let v = mu_nu_a_b(&pair.domain, &pair.first, &pair.second)?;
    let (x, y) = commute_shifts(&d);
    GammaRatioIdentity::new(x, y, commute_rhs(&v).to_rational_function())
}

pub fn decide_commute(pair: &ProblemPair) -> Result<Verdict> {
    validate(pair)?;
    let (p, q, s, t) = (&pair.first.p, &pair.first.q, &pair.second.p, &pair.second.q);
    let coordinates = match first_failure(p, q, s, t)? {
        Ok(c) => c,
        Err(w) => return Ok(Verdict::exact(false, w)),
    };
    let v = mu_nu_a_b(&pair.domain, &pair.first, &pair.second)?;
    let (x, y) = commute_shifts(&pair.degrees());
    let rhs = commute_rhs(&v);
    let id = GammaRatioIdentity::new(x.clone(), y.clone(), rhs.to_rational_function())?;
    let holds = decide_gamma_identity(&id);
    Ok(Verdict::exact(
        holds,
        Witness::Identity {
            holds,
            x,
            y,
            rhs_numerator: rhs.num,
            rhs_denominator: rhs.den,
            coordinates,
        },
    ))
}

/// Decides many pairs in parallel; output order follows input order.
pub fn decide_commute_batch(pairs: &[ProblemPair]) -> Vec<Result<Verdict>> {
    pairs.par_iter().map(decide_commute).collect()
}

/// Clauses (i)-(iv) of the semi-commuting criterion.
fn semicommute_clauses(
    l_matches: [bool; 4],
    p_zero: bool,
    t_zero: bool,
) -> Vec<Clause> {
    let [l_i, k_ii, l_iii, k_iv] = l_matches;
    let mut out = Vec::new();
    if l_i && t_zero {
        out.push(Clause::I);
    }
    if k_ii && t_zero {
        out.push(Clause::Ii);
    }
    if l_iii && p_zero {
        out.push(Clause::Iii);
    }
    if k_iv && p_zero {
        out.push(Clause::Iv);
    }
    out
}

/// T₁T₂ = T_{φψ} iff one of
/// (i) l = |q̂|-|p̂|, t = 0; (ii) k = |ŝ|, t = 0; (iii) l = |q̂|, p = 0;
/// (iv) k = |ŝ|-|t̂|, p = 0.
pub fn decide_semicommute(pair: &ProblemPair) -> Result<Verdict> {
    validate(pair)?;
    let d = pair.degrees();
    let (l, k) = (&pair.first.l, &pair.second.l);
    let matches = [*l == &d.q - &d.p, *k == d.s, *l == d.q, *k == &d.s - &d.t];
    let clauses = semicommute_clauses(matches, pair.first.p.is_zero(), pair.second.q.is_zero());
    Ok(Verdict::exact(!clauses.is_empty(), Witness::Semicommute { clauses }))
}

/// A radial exponent that is either exact or a plain float.
#[derive(Clone, Debug, PartialEq)]
pub enum Radial {
    Exact(Rational),
    Float(f64),
}

impl Radial {
    pub fn to_f64(&self) -> f64 {
        match self {
            Radial::Exact(r) => r.to_f64(),
            Radial::Float(x) => *x,
        }
    }

    fn equals(&self, r: &Rational) -> bool {
        match self {
            Radial::Exact(x) => x == r,
            Radial::Float(x) => approx_eq_f64(*x, r),
        }
    }
}

impl fmt::Display for Radial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radial::Exact(r) => write!(f, "{r}"),
            Radial::Float(x) => write!(f, "{x}"),
        }
    }
}

/// A pair whose radial exponents may be floats.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPair {
    pub domain: DomainSpec,
    pub l: Radial,
    pub p: MultiIndex,
    pub q: MultiIndex,
    pub k: Radial,
    pub s: MultiIndex,
    pub t: MultiIndex,
}

impl NumericPair {
    pub fn new(
        domain: DomainSpec,
        l: Radial,
        p: MultiIndex,
        q: MultiIndex,
        k: Radial,
        s: MultiIndex,
        t: MultiIndex,
    ) -> Result<Self> {
        let n = domain.dimension();
        for v in [&p, &q, &s, &t] {
            check_len(n, v.len())?;
        }
        for r in [&l, &k] {
            let x = r.to_f64();
            if !x.is_finite() || x < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "radial exponent must be finite and non-negative, got {r}"
                )));
            }
        }
        Ok(NumericPair { domain, l, p, q, k, s, t })
    }

    /// The exact pair, when both radial exponents are exact.
    pub fn exact(&self) -> Option<ProblemPair> {
        match (&self.l, &self.k) {
            (Radial::Exact(l), Radial::Exact(k)) => {
                let first = MonomialSymbol { l: l.clone(), p: self.p.clone(), q: self.q.clone() };
                let second = MonomialSymbol { l: k.clone(), p: self.s.clone(), q: self.t.clone() };
                Some(ProblemPair { domain: self.domain.clone(), first, second })
            }
            _ => None,
        }
    }

    fn degrees(&self) -> Result<Degrees> {
        Degrees::of(&self.domain, &self.p, &self.q, &self.s, &self.t)
    }
}

/// Commuting test for float radial exponents: Condition (I) exactly, then
/// the Gamma identity by sampling at 32 fixed points.
pub fn decide_commute_numeric(pair: &NumericPair) -> Result<Verdict> {
    let coordinates = match first_failure(&pair.p, &pair.q, &pair.s, &pair.t)? {
        Ok(c) => c,
        Err(w) => return Ok(Verdict { answer: Answer::No, mode: Mode::Numeric, witness: w }),
    };
    let d = pair.degrees()?;
    let (x, y) = commute_shifts(&d);
    let (mu, nu) = (d.mu().to_f64(), d.nu().to_f64());
    let a = (pair.l.to_f64() + mu) / 2.0;
    let b = (pair.k.to_f64() + nu) / 2.0;
    let xf: Vec<f64> = x.iter().map(Rational::to_f64).collect();
    let yf: Vec<f64> = y.iter().map(Rational::to_f64).collect();
    let gamma_room = xf.iter().chain(&yf).fold(0.0f64, |acc, &v| acc.max(-v));
    let pole_room = (-a).max(-(b + mu)).max(0.0);
    let points = sample_points_with_offset(gamma_room.max(pole_room));
    let rhs = |eta: f64| (eta + b) * (eta + a + nu) / ((eta + a) * (eta + b + mu));
    let residual = ratio_residual(&xf, &yf, rhs, &points);
    let holds = residual <= SAMPLE_TOLERANCE;
    Ok(Verdict {
        answer: Answer::from_bool(holds),
        mode: Mode::Numeric,
        witness: Witness::SampledIdentity { holds, x, y, a, b, residual, coordinates },
    })
}

/// Semi-commuting test for float radial exponents; the clauses compare a
/// float exponent to an exact degree within 1e-12 relative.
pub fn decide_semicommute_numeric(pair: &NumericPair) -> Result<Verdict> {
    let d = pair.degrees()?;
    let matches = [
        pair.l.equals(&(&d.q - &d.p)),
        pair.k.equals(&d.s),
        pair.l.equals(&d.q),
        pair.k.equals(&(&d.s - &d.t)),
    ];
    let clauses = semicommute_clauses(matches, pair.p.is_zero(), pair.t.is_zero());
    Ok(Verdict {
        answer: Answer::from_bool(!clauses.is_empty()),
        mode: Mode::Numeric,
        witness: Witness::Semicommute { clauses },
    })
}

/// The five ways a commuting pair can be "obvious".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrivialClause {
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl fmt::Display for TrivialClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as u8 + 1;
        write!(f, "c{i}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialityReport {
    pub clauses: Vec<TrivialClause>,
    pub non_trivial: bool,
}

/// Which trivial clauses a pair satisfies:
/// (c1) one operator is the identity;
/// (c2) both symbols analytic: |q̂| = |t̂| = 0, l = |p̂|, k = |ŝ|;
/// (c3) both anti-analytic: |p̂| = |ŝ| = 0, l = |q̂|, k = |t̂|;
/// (c4) Condition (I) everywhere, |p̂| = |q̂|, |ŝ| = |t̂|;
/// (c5) Condition (I) everywhere, |p̂| = |ŝ|, |q̂| = |t̂|, l = k.
pub fn trivial_clauses(pair: &ProblemPair) -> Result<Vec<TrivialClause>> {
    validate(pair)?;
    let cond = coordinatewise(&pair.first.p, &pair.first.q, &pair.second.p, &pair.second.q)?
        .iter()
        .all(ConditionI::holds);
    Ok(trivial_from_degrees(&pair.degrees(), &pair.first.l, &pair.second.l, cond))
}

/// The clauses given the degrees, the radial exponents and whether
/// Condition (I) holds in every coordinate.
pub(crate) fn trivial_from_degrees(d: &Degrees, l: &Rational, k: &Rational, cond: bool) -> Vec<TrivialClause> {
    let mut out = Vec::new();
    if (l.is_zero() && d.p.is_zero() && d.q.is_zero()) || (k.is_zero() && d.s.is_zero() && d.t.is_zero()) {
        out.push(TrivialClause::C1);
    }
    if d.q.is_zero() && d.t.is_zero() && *l == d.p && *k == d.s {
        out.push(TrivialClause::C2);
    }
    if d.p.is_zero() && d.s.is_zero() && *l == d.q && *k == d.t {
        out.push(TrivialClause::C3);
    }
    if cond && d.p == d.q && d.s == d.t {
        out.push(TrivialClause::C4);
    }
    if cond && d.p == d.s && d.q == d.t && l == k {
        out.push(TrivialClause::C5);
    }
    out
}

pub fn classify_trivial(pair: &ProblemPair) -> Result<TrivialityReport> {
    let clauses = trivial_clauses(pair)?;
    let non_trivial = clauses.is_empty() && decide_commute(pair)?.is_yes();
    Ok(TrivialityReport { clauses, non_trivial })
}

/// At least one of (|p̂|,|q̂|), (|ŝ|,|t̂|), (|p̂|,|ŝ|), (|q̂|,|t̂|),
/// (|p̂|-|q̂|, |ŝ|-|t̂|), (|p̂|-|ŝ|, |q̂|-|t̂|) is a pair of integers.
/// Every commuting pair passes.
pub fn necessary_integrality(
    domain: &DomainSpec,
    p: &MultiIndex,
    q: &MultiIndex,
    s: &MultiIndex,
    t: &MultiIndex,
) -> Result<bool> {
    Ok(integrality_of(&Degrees::of(domain, p, q, s, t)?))
}

pub(crate) fn integrality_of(d: &Degrees) -> bool {
    let pairs = [
        (d.p.clone(), d.q.clone()),
        (d.s.clone(), d.t.clone()),
        (d.p.clone(), d.s.clone()),
        (d.q.clone(), d.t.clone()),
        (d.mu(), d.nu()),
        (&d.p - &d.s, &d.q - &d.t),
    ];
    pairs.iter().any(|(x, y)| x.is_integer() && y.is_integer())
}

/// The rational-function equation every commuting pair satisfies:
///
///   (η+P)(η+ν+1)(η+μ+S)      (η+b+1)(η+a+ν+1)(η+a)(η+b+μ)
///   -------------------  =  -------------------------------
///   (η+S)(η+μ+1)(η+ν+P)     (η+b)(η+a+ν)(η+a+1)(η+b+μ+1)
pub fn necessary_eq14(pair: &ProblemPair) -> Result<bool> {
    validate(pair)?;
    let v = mu_nu_a_b(&pair.domain, &pair.first, &pair.second)?;
    let (lhs, rhs) = eq14_factors(&pair.degrees(), &v.a, &v.b);
    Ok(lhs.cross_eq(&rhs))
}

pub(crate) fn eq14_factors(d: &Degrees, a: &Rational, b: &Rational) -> (LinearFactors, LinearFactors) {
    let (mu, nu) = (d.mu(), d.nu());
    let one = Rational::one();
    let lhs = LinearFactors {
        num: vec![d.p.clone(), &nu + &one, &mu + &d.s],
        den: vec![d.s.clone(), &mu + &one, &nu + &d.p],
    };
    let rhs = LinearFactors {
        num: vec![b + &one, a + &nu + &one, a.clone(), b + &mu],
        den: vec![b.clone(), a + &nu, a + &one, b + &mu + &one],
    };
    (lhs, rhs)
}

/// Monomial symbols z^p z̄^q and z^s z̄^t commute iff the degree tuple
/// (|p̂|, |q̂|, |ŝ|, |t̂|) and every coordinate tuple satisfy Condition (I).
pub fn decide_commute_monomial(
    domain: &DomainSpec,
    p: &MultiIndex,
    q: &MultiIndex,
    s: &MultiIndex,
    t: &MultiIndex,
) -> Result<Verdict> {
    let d = Degrees::of(domain, p, q, s, t)?;
    let coordinates = match first_failure(p, q, s, t)? {
        Ok(c) => c,
        Err(w) => return Ok(Verdict::exact(false, w)),
    };
    let clauses = condition_i(&d.p, &d.q, &d.s, &d.t);
    Ok(Verdict::exact(clauses.holds(), Witness::Degrees { clauses, coordinates }))
}

/// T_{z^p} with p ≠ 0 commutes with T_{r^k ζ^s ζ̄^t} iff t = 0 and k = |ŝ|.
pub fn decide_commute_holomorphic(
    domain: &DomainSpec,
    p: &MultiIndex,
    second: &MonomialSymbol,
) -> Result<Verdict> {
    check_len(domain.dimension(), p.len())?;
    second.check_domain(domain)?;
    if p.is_zero() {
        return Err(Error::InvalidInput("the holomorphic symbol z^p needs p ≠ 0".into()));
    }
    let t_zero = second.q.is_zero();
    let k_equals_s_degree = second.l == domain.weighted_degree(&second.p)?;
    Ok(Verdict::exact(t_zero && k_equals_s_degree, Witness::Holomorphic { t_zero, k_equals_s_degree }))
}

/// The identity Γ(η+S)Γ(η+S-T+P) / (Γ(η+S-T+1)Γ(η+P+S)) =
/// (η+a+b) / ((η+b)(η+a+S-T)), which a semi-commuting pair would need;
/// it fails whenever P > 0 and T > 0.
pub fn semicommute_identity(
    p_deg: &Rational,
    s_deg: &Rational,
    t_deg: &Rational,
    a: &Rational,
    b: &Rational,
) -> GammaRatioIdentity {
    let nu = s_deg - t_deg;
    let x = vec![s_deg.clone(), &nu + p_deg];
    let y = vec![&nu + &Rational::one(), p_deg + s_deg];
    let rhs = RationalFunction::from_shifts(&[a + b], &[b.clone(), a + &nu]);
    GammaRatioIdentity::new(x, y, rhs).expect("balanced by construction")
}

/// Fast exact commuting test for search loops: the degree-level Gamma
/// ratio is reduced once and compared against each (a, b).
pub(crate) struct CommuteKey {
    factors: Option<LinearFactors>,
    mu: Rational,
    nu: Rational,
}

impl CommuteKey {
    pub(crate) fn new(d: &Degrees) -> CommuteKey {
        let (x, y) = commute_shifts(d);
        CommuteKey {
            factors: gamma_ratio_factors(&x, &y).expect("balanced"),
            mu: d.mu(),
            nu: d.nu(),
        }
    }

    pub(crate) fn rational(&self) -> bool {
        self.factors.is_some()
    }

    pub(crate) fn holds(&self, l: &Rational, k: &Rational) -> bool {
        let Some(f) = &self.factors else { return false };
        let a = (l + &self.mu).half();
        let b = (k + &self.nu).half();
        let v = MuNuAB { mu: self.mu.clone(), nu: self.nu.clone(), a, b };
        f.cross_eq(&commute_rhs(&v))
    }
}
