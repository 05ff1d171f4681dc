//! Domains Ω_m^n, monomial-type symbols r^l ζ^p ζ̄^q and pairs of them.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::multi_index::MultiIndex;
use crate::rational::Rational;

/// The exponent vector m of Ω_m^n = {z : Σ|z_i|^{2 m_i} < 1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DomainSpec {
    m: Vec<u32>,
}

impl DomainSpec {
    pub fn new(m: Vec<u32>) -> Result<Self> {
        if m.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "dimension must be at least 2, got {}",
                m.len()
            )));
        }
        if m.contains(&0) {
            return Err(Error::InvalidInput("every m_i must be positive".into()));
        }
        Ok(DomainSpec { m })
    }

    /// The unit ball of ℂⁿ.
    pub fn ball(n: usize) -> Result<Self> {
        DomainSpec::new(vec![1; n])
    }

    pub fn dimension(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn lcm(&self) -> u64 {
        self.m.iter().fold(1u64, |acc, &x| acc.lcm(&(x as u64)))
    }

    /// Integer weights w_i = lcm(m)/m_i, so that |α̂|·lcm(m) = Σ α_i w_i.
    pub fn integer_weights(&self) -> Vec<u64> {
        let l = self.lcm();
        self.m.iter().map(|&x| l / x as u64).collect()
    }

    /// |α̂| = Σ α_i / m_i, exactly.
    pub fn weighted_degree(&self, alpha: &MultiIndex) -> Result<Rational> {
        weighted_degree(self, alpha)
    }

    pub(crate) fn weighted_degree_f64(&self, alpha: &MultiIndex) -> f64 {
        alpha
            .entries()
            .iter()
            .zip(&self.m)
            .map(|(&a, &m)| a as f64 / m as f64)
            .sum()
    }
}

impl<'de> Deserialize<'de> for DomainSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Vec::<u32>::deserialize(d)?;
        DomainSpec::new(m).map_err(serde::de::Error::custom)
    }
}

pub fn weighted_degree(domain: &DomainSpec, alpha: &MultiIndex) -> Result<Rational> {
    check_len(domain.dimension(), alpha.len())?;
    Ok(alpha
        .entries()
        .iter()
        .zip(domain.m())
        .map(|(&a, &m)| Rational::new(a as i64, m as i64))
        .sum())
}

/// The symbol r^l ζ^p ζ̄^q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialSymbol {
    pub l: Rational,
    pub p: MultiIndex,
    pub q: MultiIndex,
}

impl MonomialSymbol {
    pub fn new(l: Rational, p: MultiIndex, q: MultiIndex) -> Result<Self> {
        if l.is_negative() {
            return Err(Error::InvalidInput(format!("radial exponent must be >= 0, got {l}")));
        }
        check_len(p.len(), q.len())?;
        Ok(MonomialSymbol { l, p, q })
    }

    /// The constant symbol 1.
    pub fn identity(n: usize) -> Self {
        MonomialSymbol {
            l: Rational::zero(),
            p: MultiIndex::zeros(n),
            q: MultiIndex::zeros(n),
        }
    }

    /// z^p z̄^q written in m-polar form: l = |p̂| + |q̂|.
    pub fn monomial(domain: &DomainSpec, p: MultiIndex, q: MultiIndex) -> Result<Self> {
        let l = domain.weighted_degree(&p)? + domain.weighted_degree(&q)?;
        MonomialSymbol::new(l, p, q)
    }

    /// The holomorphic monomial z^p.
    pub fn holomorphic(domain: &DomainSpec, p: MultiIndex) -> Result<Self> {
        let n = p.len();
        MonomialSymbol::monomial(domain, p, MultiIndex::zeros(n))
    }

    pub fn dimension(&self) -> usize {
        self.p.len()
    }

    /// The pointwise product r^{l+k} ζ^{p+s} ζ̄^{q+t}.
    pub fn product(&self, other: &MonomialSymbol) -> Result<MonomialSymbol> {
        Ok(MonomialSymbol {
            l: &self.l + &other.l,
            p: self.p.checked_add(&other.p)?,
            q: self.q.checked_add(&other.q)?,
        })
    }

    pub fn check_domain(&self, domain: &DomainSpec) -> Result<()> {
        check_len(domain.dimension(), self.p.len())?;
        check_len(domain.dimension(), self.q.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemPair {
    pub domain: DomainSpec,
    pub first: MonomialSymbol,
    pub second: MonomialSymbol,
}

impl ProblemPair {
    pub fn new(domain: DomainSpec, first: MonomialSymbol, second: MonomialSymbol) -> Result<Self> {
        first.check_domain(&domain)?;
        second.check_domain(&domain)?;
        Ok(ProblemPair { domain, first, second })
    }

    pub fn swapped(&self) -> ProblemPair {
        ProblemPair {
            domain: self.domain.clone(),
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }

    pub fn degrees(&self) -> Degrees {
        Degrees::of(&self.domain, &self.first.p, &self.first.q, &self.second.p, &self.second.q)
            .expect("pair validated at construction")
    }
}

/// The weighted degrees (|p̂|, |q̂|, |ŝ|, |t̂|) of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degrees {
    pub p: Rational,
    pub q: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl Degrees {
    pub fn of(
        domain: &DomainSpec,
        p: &MultiIndex,
        q: &MultiIndex,
        s: &MultiIndex,
        t: &MultiIndex,
    ) -> Result<Self> {
        Ok(Degrees {
            p: domain.weighted_degree(p)?,
            q: domain.weighted_degree(q)?,
            s: domain.weighted_degree(s)?,
            t: domain.weighted_degree(t)?,
        })
    }

    pub fn mu(&self) -> Rational {
        &self.p - &self.q
    }

    pub fn nu(&self) -> Rational {
        &self.s - &self.t
    }
}

/// μ = |p̂| - |q̂|, ν = |ŝ| - |t̂|, a = (l + μ)/2, b = (k + ν)/2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuNuAB {
    pub mu: Rational,
    pub nu: Rational,
    pub a: Rational,
    pub b: Rational,
}

pub fn mu_nu_a_b(
    domain: &DomainSpec,
    first: &MonomialSymbol,
    second: &MonomialSymbol,
) -> Result<MuNuAB> {
    first.check_domain(domain)?;
    second.check_domain(domain)?;
    let d = Degrees::of(domain, &first.p, &first.q, &second.p, &second.q)?;
    let mu = d.mu();
    let nu = d.nu();
    let a = (&first.l + &mu).half();
    let b = (&second.l + &nu).half();
    Ok(MuNuAB { mu, nu, a, b })
}
