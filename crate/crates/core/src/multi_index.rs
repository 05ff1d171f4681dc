//! Multi-indices in ℕⁿ and the index bounds used by the commutator and
//! semi-commutator arguments.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit vector e_i of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn checked_add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        check_len(self.len(), other.len())?;
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `self + plus - minus`, or `None` when some coordinate would be
    /// negative (i.e. `self + plus` does not dominate `minus`).
    ///
    /// Lengths must already agree.
    pub fn shifted(&self, plus: &MultiIndex, minus: &MultiIndex) -> Option<MultiIndex> {
        debug_assert!(self.len() == plus.len() && self.len() == minus.len());
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let up = self.0[i] + plus.0[i];
            out.push(up.checked_sub(minus.0[i])?);
        }
        Some(MultiIndex(out))
    }

    pub fn succeq(&self, other: &MultiIndex) -> Result<bool> {
        succeq(self, other)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// Componentwise order: `alpha ⪰ beta` iff `alpha_i >= beta_i` for all i.
pub fn succeq(alpha: &MultiIndex, beta: &MultiIndex) -> Result<bool> {
    check_len(alpha.len(), beta.len())?;
    Ok(alpha.0.iter().zip(&beta.0).all(|(a, b)| a >= b))
}

fn check_four(p: &MultiIndex, q: &MultiIndex, s: &MultiIndex, t: &MultiIndex) -> Result<()> {
    check_len(p.len(), q.len())?;
    check_len(p.len(), s.len())?;
    check_len(p.len(), t.len())
}

/// γ_i = max{0, q_i - p_i, t_i - s_i, q_i - p_i + t_i - s_i}.
///
/// Above γ every intermediate index of both composition orders of the
/// commutator is a genuine multi-index.
pub fn gamma_index(
    p: &MultiIndex,
    q: &MultiIndex,
    s: &MultiIndex,
    t: &MultiIndex,
) -> Result<MultiIndex> {
    check_four(p, q, s, t)?;
    Ok(MultiIndex(
        (0..p.len())
            .map(|i| {
                let (p, q, s, t) = (p.0[i] as i64, q.0[i] as i64, s.0[i] as i64, t.0[i] as i64);
                [0, q - p, t - s, q - p + t - s].into_iter().max().unwrap() as u32
            })
            .collect(),
    ))
}

/// δ_i = max{0, t_i - s_i, q_i - p_i + t_i - s_i}, the semi-commutator analogue.
pub fn delta_index(
    p: &MultiIndex,
    q: &MultiIndex,
    s: &MultiIndex,
    t: &MultiIndex,
) -> Result<MultiIndex> {
    check_four(p, q, s, t)?;
    Ok(MultiIndex(
        (0..p.len())
            .map(|i| {
                let (p, q, s, t) = (p.0[i] as i64, q.0[i] as i64, s.0[i] as i64, t.0[i] as i64);
                [0, t - s, q - p + t - s].into_iter().max().unwrap() as u32
            })
            .collect(),
    ))
}
