//! Finite monomial bases {z^α : α ∈ B} in graded-lexicographic order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::DomainSpec;
use crate::multi_index::MultiIndex;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// B = {α : |α̂| ≤ D}
    WeightedDegree(Rational),
    /// B = {α : α_i ≤ N for all i}
    Componentwise(u32),
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::WeightedDegree(d) => write!(f, "D={d}"),
            Truncation::Componentwise(n) => write!(f, "N={n}"),
        }
    }
}

impl FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("truncation must be D=<rational> or N=<natural>, got {s:?}"));
        let (key, value) = s.trim().split_once('=').ok_or_else(bad)?;
        match key.trim() {
            "D" => Ok(Truncation::WeightedDegree(value.parse()?)),
            "N" => Ok(Truncation::Componentwise(value.trim().parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Truncation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Truncation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Upper bound on the number of basis elements we are willing to build.
pub const MAX_BASIS_SIZE: usize = 20_000_000;

#[derive(Clone, Debug)]
pub struct Basis {
    domain: DomainSpec,
    truncation: Truncation,
    weights: Vec<u64>,
    /// Weighted caps use Σ α_i w_i ≤ cap; componentwise caps use α_i ≤ cap.
    cap: u64,
    empty: bool,
    /// Flattened indices, `dimension` entries each.
    flat: Vec<u32>,
}

impl Basis {
    pub fn new(domain: &DomainSpec, truncation: &Truncation) -> Result<Basis> {
        let n = domain.dimension();
        let weights = domain.integer_weights();
        let (cap, empty) = match truncation {
            Truncation::WeightedDegree(d) => {
                if d.is_negative() {
                    (0, true)
                } else {
                    let scaled = d * Rational::from_integer(domain.lcm() as i64);
                    let cap: BigInt = scaled.floor();
                    let cap = cap
                        .to_u64()
                        .ok_or_else(|| Error::InvalidInput(format!("truncation {d} too large")))?;
                    (cap, false)
                }
            }
            Truncation::Componentwise(c) => (*c as u64, false),
        };
        let mut basis = Basis {
            domain: domain.clone(),
            truncation: truncation.clone(),
            weights,
            cap,
            empty,
            flat: Vec::new(),
        };
        if !empty {
            basis.enumerate(n)?;
        }
        Ok(basis)
    }

    fn enumerate(&mut self, n: usize) -> Result<()> {
        let mut lex = Vec::new();
        let mut current = vec![0u32; n];
        let mut count = 0usize;
        self.dfs(0, 0, &mut current, &mut lex, &mut count)?;
        // Stable sort by grade keeps the lexicographic order inside a grade.
        let total = lex.len() / n;
        let grades: Vec<u64> = (0..total).map(|i| self.grade(&lex[i * n..(i + 1) * n])).collect();
        let mut order: Vec<u32> = (0..total as u32).collect();
        order.sort_by_key(|&i| grades[i as usize]);
        let mut flat = Vec::with_capacity(lex.len());
        for i in order {
            let i = i as usize;
            flat.extend_from_slice(&lex[i * n..(i + 1) * n]);
        }
        self.flat = flat;
        Ok(())
    }

    fn dfs(
        &self,
        pos: usize,
        used: u64,
        current: &mut [u32],
        out: &mut Vec<u32>,
        count: &mut usize,
    ) -> Result<()> {
        if pos == current.len() {
            *count += 1;
            if *count > MAX_BASIS_SIZE {
                return Err(Error::InvalidInput(format!(
                    "truncation {} yields more than {MAX_BASIS_SIZE} basis elements",
                    self.truncation
                )));
            }
            out.extend_from_slice(current);
            return Ok(());
        }
        let max = match self.truncation {
            Truncation::WeightedDegree(_) => (self.cap - used) / self.weights[pos],
            Truncation::Componentwise(_) => self.cap,
        };
        for v in 0..=max {
            current[pos] = v as u32;
            let used = match self.truncation {
                Truncation::WeightedDegree(_) => used + v * self.weights[pos],
                Truncation::Componentwise(_) => used,
            };
            self.dfs(pos + 1, used, current, out, count)?;
        }
        current[pos] = 0;
        Ok(())
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn dimension(&self) -> usize {
        self.domain.dimension()
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.dimension()
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    /// The i-th basis index as a slice.
    pub fn get(&self, i: usize) -> &[u32] {
        let n = self.dimension();
        &self.flat[i * n..(i + 1) * n]
    }

    pub fn index(&self, i: usize) -> MultiIndex {
        MultiIndex::new(self.get(i).to_vec())
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.flat.chunks_exact(self.dimension())
    }

    /// |α̂|·lcm(m), an exact integer grade.
    pub fn grade(&self, alpha: &[u32]) -> u64 {
        alpha.iter().zip(&self.weights).map(|(&a, &w)| a as u64 * w).sum()
    }

    pub fn contains(&self, alpha: &[u32]) -> bool {
        if self.empty || alpha.len() != self.dimension() {
            return false;
        }
        match self.truncation {
            Truncation::WeightedDegree(_) => self.grade(alpha) <= self.cap,
            Truncation::Componentwise(_) => alpha.iter().all(|&a| a as u64 <= self.cap),
        }
    }

    /// Largest grade Σ α_i w_i of any basis element.
    pub(crate) fn max_grade(&self) -> u64 {
        match self.truncation {
            Truncation::WeightedDegree(_) => self.cap,
            Truncation::Componentwise(_) => self.cap * self.weights.iter().sum::<u64>(),
        }
    }
}
