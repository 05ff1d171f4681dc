//! Monte-Carlo integration over Ω_m^n, used to check the closed forms.
//!
//! Points are drawn uniformly from the unit polydisc (each coordinate by
//! rejection from the square [-1,1]²) and kept when Σ|z_i|^{2m_i} < 1. The
//! integrand is evaluated in Cartesian coordinates, with r and ζ recomputed
//! from z, so nothing here relies on the polar integration formulas.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::norm_sq;
use crate::error::{check_len, Error, Result};
use crate::model::{DomainSpec, MonomialSymbol};
use crate::multi_index::MultiIndex;

/// Samples per RNG stream. Fixed so results do not depend on scheduling.
const BLOCK: u64 = 4096;

pub const DEFAULT_SAMPLES: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Blocks handed to one worker at a time; affects scheduling only.
    pub chunk: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED, chunk: 16 }
    }
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig { samples, seed, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidInput("samples must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McComplexEstimate {
    pub estimate: Complex,
    pub stderr: Complex,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Default)]
struct Sums {
    inside: u64,
    re: f64,
    im: f64,
    re2: f64,
    im2: f64,
}

impl Sums {
    fn add(self, o: Sums) -> Sums {
        Sums {
            inside: self.inside + o.inside,
            re: self.re + o.re,
            im: self.im + o.im,
            re2: self.re2 + o.re2,
            im2: self.im2 + o.im2,
        }
    }
}

fn unit_disc(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        if x * x + y * y < 1.0 {
            return Complex64::new(x, y);
        }
    }
}

/// Runs `f` on every accepted point and sums the values block by block.
/// Block sums are combined in block order, whatever the thread count.
fn integrate<F>(domain: &DomainSpec, cfg: &McConfig, f: F) -> Result<Sums>
where
    F: Fn(&[Complex64], f64) -> Complex64 + Sync,
{
    cfg.validate()?;
    let n = domain.dimension();
    let m = domain.m();
    let blocks = cfg.samples.div_ceil(BLOCK) as usize;
    let partial: Vec<Sums> = (0..blocks)
        .into_par_iter()
        .with_min_len(cfg.chunk.max(1))
        .map(|b| {
            let b = b as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b);
            let count = BLOCK.min(cfg.samples - b * BLOCK);
            let mut z = vec![Complex64::new(0.0, 0.0); n];
            let mut sums = Sums::default();
            for _ in 0..count {
                let mut s = 0.0;
                for i in 0..n {
                    z[i] = unit_disc(&mut rng);
                    s += z[i].norm_sqr().powi(m[i] as i32);
                }
                if s < 1.0 {
                    let v = f(&z, s);
                    sums.inside += 1;
                    sums.re += v.re;
                    sums.im += v.im;
                    sums.re2 += v.re * v.re;
                    sums.im2 += v.im * v.im;
                }
            }
            sums
        })
        .collect();
    Ok(partial.into_iter().fold(Sums::default(), Sums::add))
}

/// Volume of Ω_m^n.
pub fn mc_volume(domain: &DomainSpec, cfg: &McConfig) -> Result<McEstimate> {
    let sums = integrate(domain, cfg, |_, _| Complex64::new(1.0, 0.0))?;
    let scale = PI.powi(domain.dimension() as i32);
    let n = cfg.samples as f64;
    let p = sums.inside as f64 / n;
    Ok(McEstimate {
        estimate: scale * p,
        stderr: scale * (p * (1.0 - p) / n).sqrt(),
        samples: cfg.samples,
        seed: cfg.seed,
    })
}

/// ⟨T_φ z^β, z^λ⟩ = ∫ r^l ζ^p ζ̄^q z^β z̄^λ dV for φ = r^l ζ^p ζ̄^q.
pub fn mc_inner_product(
    domain: &DomainSpec,
    sym: &MonomialSymbol,
    beta: &MultiIndex,
    lambda: &MultiIndex,
    cfg: &McConfig,
) -> Result<McComplexEstimate> {
    sym.check_domain(domain)?;
    check_len(domain.dimension(), beta.len())?;
    check_len(domain.dimension(), lambda.len())?;
    let l = sym.l.to_f64();
    let m = domain.m();
    let radial_free = sym.l.is_zero() && sym.p.is_zero() && sym.q.is_zero();
    let sums = integrate(domain, cfg, |z, s| {
        let mut v = Complex64::new(1.0, 0.0);
        for (i, zi) in z.iter().enumerate() {
            v *= zi.powu(beta.get(i)) * zi.conj().powu(lambda.get(i));
        }
        if radial_free {
            return v;
        }
        if s == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let r = s.sqrt();
        v *= r.powf(l);
        for (i, zi) in z.iter().enumerate() {
            let zeta = zi / r.powf(1.0 / m[i] as f64);
            v *= zeta.powu(sym.p.get(i)) * zeta.conj().powu(sym.q.get(i));
        }
        v
    })?;
    let scale = PI.powi(domain.dimension() as i32);
    let n = cfg.samples as f64;
    let err = |sum: f64, sum2: f64| {
        let mean = sum / n;
        let var = (sum2 / n - mean * mean).max(0.0);
        scale * (var / n).sqrt()
    };
    Ok(McComplexEstimate {
        estimate: Complex { re: scale * sums.re / n, im: scale * sums.im / n },
        stderr: Complex { re: err(sums.re, sums.re2), im: err(sums.im, sums.im2) },
        samples: cfg.samples,
        seed: cfg.seed,
    })
}

/// Brute-force counterpart of the closed-form action coefficient:
/// ⟨T_φ z^β, z^λ⟩ / ‖z^λ‖² with λ = β+p-q.
pub fn oracle_action_coefficient(
    domain: &DomainSpec,
    sym: &MonomialSymbol,
    beta: &MultiIndex,
    cfg: &McConfig,
) -> Result<McEstimate> {
    sym.check_domain(domain)?;
    check_len(domain.dimension(), beta.len())?;
    let lambda = beta.shifted(&sym.p, &sym.q).ok_or_else(|| {
        Error::InvalidInput(format!("β+p must dominate q, got β={beta:?}, q={:?}", sym.q))
    })?;
    let ip = mc_inner_product(domain, sym, beta, &lambda, cfg)?;
    let norm = norm_sq(domain, &lambda)?;
    Ok(McEstimate {
        estimate: ip.estimate.re / norm,
        stderr: ip.stderr.re / norm,
        samples: cfg.samples,
        seed: cfg.seed,
    })
}
