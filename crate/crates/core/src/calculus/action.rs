//! Closed-form action of T_{r^l ζ^p ζ̄^q} on monomials z^β.
//!
//! T z^β = c(β) z^{β+p-q} when β+p ⪰ q and 0 otherwise, with
//!
//! c(β) = Γ(E+μ+1) ∏Γ((β_i+p_i+1)/m_i) / [(E+a) Γ(E+|p̂|) ∏Γ((β_i+p_i-q_i+1)/m_i)],
//!
//! where E = |β+1|̂, μ = |p̂|-|q̂| and a = (l+μ)/2. Every Gamma argument is
//! an integer multiple of 1/lcm(m), which is what [`Kernel`] tabulates.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::gamma::{log_gamma, log_gamma_unchecked};
use crate::model::{DomainSpec, MonomialSymbol};
use crate::multi_index::MultiIndex;
use crate::rational::Rational;

/// Magnitudes below this are stored as exact zero.
pub const ZERO_FLUSH: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionResult {
    Zero,
    Shift { target: MultiIndex, coefficient: f64 },
}

impl ActionResult {
    pub fn coefficient(&self) -> f64 {
        match self {
            ActionResult::Zero => 0.0,
            ActionResult::Shift { coefficient, .. } => *coefficient,
        }
    }

    pub fn target(&self) -> Option<&MultiIndex> {
        match self {
            ActionResult::Zero => None,
            ActionResult::Shift { target, .. } => Some(target),
        }
    }
}

/// Table of ln Γ(j / lcm(m)) shared by every symbol on one domain.
pub(crate) struct Kernel {
    weights: Vec<u64>,
    lcm: u64,
    lcm_f: f64,
    table: Vec<f64>,
}

impl Kernel {
    pub(crate) fn new(domain: &DomainSpec, table_len: usize) -> Kernel {
        let lcm = domain.lcm();
        let lcm_f = lcm as f64;
        let table = (0..table_len)
            .map(|j| if j == 0 { f64::NAN } else { log_gamma_unchecked(j as f64 / lcm_f) })
            .collect();
        Kernel { weights: domain.integer_weights(), lcm, lcm_f, table }
    }

    /// ln Γ(j / lcm(m)), j ≥ 1.
    #[inline]
    fn lng(&self, j: u64) -> f64 {
        match self.table.get(j as usize) {
            Some(&v) => v,
            None => log_gamma_unchecked(j as f64 / self.lcm_f),
        }
    }
}

/// A symbol with its degrees pre-scaled by lcm(m).
#[derive(Clone, Debug)]
pub(crate) struct PreparedSymbol {
    p: Vec<u32>,
    q: Vec<u32>,
    p_w: u64,
    q_w: u64,
    /// a·lcm(m)
    a_l: f64,
    /// Coordinates with q_i > 0; the others contribute Γ(x)/Γ(x) = 1.
    active: Vec<usize>,
}

impl PreparedSymbol {
    pub(crate) fn new(domain: &DomainSpec, sym: &MonomialSymbol) -> PreparedSymbol {
        let mu = domain.weighted_degree(&sym.p).unwrap() - domain.weighted_degree(&sym.q).unwrap();
        let a = (&sym.l + &mu).half();
        Self::with_a(domain, &sym.p, &sym.q, &a)
    }

    fn with_a(domain: &DomainSpec, p: &MultiIndex, q: &MultiIndex, a: &Rational) -> PreparedSymbol {
        let w = domain.integer_weights();
        let dot = |v: &MultiIndex| -> u64 {
            v.entries().iter().zip(&w).map(|(&x, &wi)| x as u64 * wi).sum()
        };
        let a_l = (a * Rational::from_integer(domain.lcm() as i64)).to_f64();
        PreparedSymbol {
            p: p.entries().to_vec(),
            q: q.entries().to_vec(),
            p_w: dot(p),
            q_w: dot(q),
            a_l,
            active: (0..q.len()).filter(|&i| q.get(i) > 0).collect(),
        }
    }

    /// Writes β+p-q into `target` and returns the coefficient, or `None` on
    /// the zero branch β+p ⋡ q.
    #[inline]
    pub(crate) fn apply(&self, k: &Kernel, beta: &[u32], target: &mut [u32]) -> Option<f64> {
        for i in 0..beta.len() {
            let up = beta[i] + self.p[i];
            if up < self.q[i] {
                return None;
            }
            target[i] = up - self.q[i];
        }
        let e_w: u64 = beta.iter().zip(&k.weights).map(|(&b, &w)| (b as u64 + 1) * w).sum();
        let l = k.lcm;
        // Γ(E+μ+1)/Γ(E+|p̂|): the arguments differ by 1 - |q̂|.
        let x_w = e_w + self.p_w;
        let mut ln = 0.0;
        let mut prod = 1.0;
        if self.q_w.is_multiple_of(l) && self.q_w / l <= 64 {
            let steps = 1 - (self.q_w / l) as i64;
            if steps == 1 {
                prod = x_w as f64 / k.lcm_f;
            } else {
                for j in 1..=(-steps) as u64 {
                    prod /= (x_w - j * l) as f64 / k.lcm_f;
                }
            }
        } else {
            let y_w = x_w + l - self.q_w;
            ln += k.lng(y_w) - k.lng(x_w);
        }
        for &i in &self.active {
            let top = (beta[i] + self.p[i] + 1) as u64 * k.weights[i];
            let bottom = (beta[i] + self.p[i] - self.q[i] + 1) as u64 * k.weights[i];
            ln += k.lng(top) - k.lng(bottom);
        }
        let denom = (e_w as f64 + self.a_l) / k.lcm_f;
        let c = prod * ln.exp() / denom;
        Some(if c.abs() < ZERO_FLUSH { 0.0 } else { c })
    }
}

/// ‖z^α‖² = πⁿ ∏Γ((α_i+1)/m_i) / ((∏m_i) Γ(|α+1|̂ + 1)).
pub fn norm_sq(domain: &DomainSpec, alpha: &MultiIndex) -> Result<f64> {
    check_len(domain.dimension(), alpha.len())?;
    let mut ln = domain.dimension() as f64 * PI.ln();
    let mut e = 0.0;
    for (&a, &m) in alpha.entries().iter().zip(domain.m()) {
        let eta = (a as f64 + 1.0) / m as f64;
        ln += log_gamma(eta)? - (m as f64).ln();
        e += eta;
    }
    ln -= log_gamma(e + 1.0)?;
    Ok(ln.exp())
}

pub fn action_coefficient(
    domain: &DomainSpec,
    sym: &MonomialSymbol,
    beta: &MultiIndex,
) -> Result<ActionResult> {
    sym.check_domain(domain)?;
    check_len(domain.dimension(), beta.len())?;
    let k = Kernel::new(domain, 0);
    let prepared = PreparedSymbol::new(domain, sym);
    let mut target = vec![0u32; beta.len()];
    Ok(match prepared.apply(&k, beta.entries(), &mut target) {
        None => ActionResult::Zero,
        Some(c) => ActionResult::Shift { target: MultiIndex::new(target), coefficient: c },
    })
}

/// H_{p,q,a}(ξ), evaluated straight from its Gamma-function definition.
pub fn h_value(
    domain: &DomainSpec,
    p: &MultiIndex,
    q: &MultiIndex,
    a: &Rational,
    xi: &MultiIndex,
) -> Result<f64> {
    let n = domain.dimension();
    check_len(n, p.len())?;
    check_len(n, q.len())?;
    check_len(n, xi.len())?;
    let mut e = 0.0;
    let mut ln = 0.0;
    for i in 0..n {
        let m = domain.m()[i] as f64;
        let eta = (xi.get(i) as f64 + 1.0) / m;
        e += eta;
        let top = eta + p.get(i) as f64 / m;
        let bottom = eta + (p.get(i) as f64 - q.get(i) as f64) / m;
        if bottom <= 0.0 {
            return Err(Error::Domain(format!(
                "H undefined at ξ = {xi:?}: Gamma argument {bottom} <= 0 in coordinate {i}"
            )));
        }
        ln += log_gamma(top)? - log_gamma(bottom)?;
    }
    let pdeg = domain.weighted_degree_f64(p);
    let mu = pdeg - domain.weighted_degree_f64(q);
    let up = e + mu + 1.0;
    let down = e + pdeg;
    if up <= 0.0 || down <= 0.0 {
        return Err(Error::Domain(format!("H undefined at ξ = {xi:?}")));
    }
    ln += log_gamma(up)? - log_gamma(down)?;
    let lin = e + a.to_f64();
    if lin == 0.0 {
        return Err(Error::Domain(format!("H has a pole at ξ = {xi:?}")));
    }
    Ok(ln.exp() / lin)
}

/// Where the indices produced by a two-step composition landed.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Composed {
    /// Coefficient of the composition (0 on a zero branch).
    pub value: f64,
    /// Some produced index (intermediate or final) left the basis.
    pub escaped: bool,
}

/// outer ∘ inner applied to z^β; `inside` decides basis membership.
#[inline]
pub(crate) fn compose(
    k: &Kernel,
    outer: &PreparedSymbol,
    inner: &PreparedSymbol,
    beta: &[u32],
    scratch: &mut [u32],
    target: &mut [u32],
    inside: &dyn Fn(&[u32]) -> bool,
) -> Composed {
    let Some(c1) = inner.apply(k, beta, scratch) else {
        return Composed::default();
    };
    let mut escaped = !inside(scratch);
    let Some(c2) = outer.apply(k, scratch, target) else {
        return Composed { value: 0.0, escaped };
    };
    escaped |= !inside(target);
    Composed { value: c1 * c2, escaped }
}

fn flush(x: f64) -> f64 {
    if x.abs() < ZERO_FLUSH {
        0.0
    } else {
        x
    }
}

/// Coefficient of z^{β+p-q+s-t} in [T₁, T₂] z^β, by composing the closed
/// form twice in each order.
pub fn commutator_coefficient(
    domain: &DomainSpec,
    first: &MonomialSymbol,
    second: &MonomialSymbol,
    beta: &MultiIndex,
) -> Result<f64> {
    first.check_domain(domain)?;
    second.check_domain(domain)?;
    check_len(domain.dimension(), beta.len())?;
    let k = Kernel::new(domain, 0);
    let a = PreparedSymbol::new(domain, first);
    let b = PreparedSymbol::new(domain, second);
    let n = domain.dimension();
    let (mut s, mut t) = (vec![0; n], vec![0; n]);
    let all = |_: &[u32]| true;
    let ab = compose(&k, &a, &b, beta.entries(), &mut s, &mut t, &all);
    let ba = compose(&k, &b, &a, beta.entries(), &mut s, &mut t, &all);
    Ok(flush(ab.value - ba.value))
}

/// Coefficient of z^{β+p-q+s-t} in (T₁, T₂] z^β = T₁T₂ z^β - T_{φψ} z^β.
pub fn semicommutator_coefficient(
    domain: &DomainSpec,
    first: &MonomialSymbol,
    second: &MonomialSymbol,
    beta: &MultiIndex,
) -> Result<f64> {
    first.check_domain(domain)?;
    second.check_domain(domain)?;
    check_len(domain.dimension(), beta.len())?;
    let k = Kernel::new(domain, 0);
    let a = PreparedSymbol::new(domain, first);
    let b = PreparedSymbol::new(domain, second);
    let prod = PreparedSymbol::new(domain, &first.product(second)?);
    let n = domain.dimension();
    let (mut s, mut t) = (vec![0; n], vec![0; n]);
    let all = |_: &[u32]| true;
    let ab = compose(&k, &a, &b, beta.entries(), &mut s, &mut t, &all);
    let direct = prod.apply(&k, beta.entries(), &mut t).unwrap_or(0.0);
    Ok(flush(ab.value - direct))
}
