//! Condition (I): the six-clause compatibility test on a quadruple
//! `(x1, x2, y1, y2)`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Result};
use crate::multi_index::MultiIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::I => "i",
            Clause::Ii => "ii",
            Clause::Iii => "iii",
            Clause::Iv => "iv",
            Clause::V => "v",
            Clause::Vi => "vi",
        };
        f.write_str(s)
    }
}

/// Outcome of a Condition (I) test: every satisfied clause, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConditionI(Vec<Clause>);

impl ConditionI {
    pub fn holds(&self) -> bool {
        !self.0.is_empty()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.0
    }
}

/// Works over any exact zero-testable type: natural exponents per
/// coordinate, or rational weighted degrees for the monomial corollary.
pub fn condition_i<T: PartialEq + Zero>(x1: &T, x2: &T, y1: &T, y2: &T) -> ConditionI {
    let checks = [
        (Clause::I, x1.is_zero() && x2.is_zero()),
        (Clause::Ii, y1.is_zero() && y2.is_zero()),
        (Clause::Iii, x1.is_zero() && y1.is_zero()),
        (Clause::Iv, x2.is_zero() && y2.is_zero()),
        (Clause::V, x1 == x2 && y1 == y2),
        (Clause::Vi, x1 == y1 && x2 == y2),
    ];
    ConditionI(checks.iter().filter(|c| c.1).map(|c| c.0).collect())
}

/// Condition (I) on every coordinate tuple `(p_i, q_i, s_i, t_i)`.
pub fn coordinatewise(
    p: &MultiIndex,
    q: &MultiIndex,
    s: &MultiIndex,
    t: &MultiIndex,
) -> Result<Vec<ConditionI>> {
    check_len(p.len(), q.len())?;
    check_len(p.len(), s.len())?;
    check_len(p.len(), t.len())?;
    Ok((0..p.len())
        .map(|i| condition_i(&p.get(i), &q.get(i), &s.get(i), &t.get(i)))
        .collect())
}
