//! Bounded enumeration of commuting and semi-commuting pairs.
//!
//! The commuting search walks the product of per-coordinate tuples that
//! satisfy Condition (I), groups tuples by their degree tuple
//! (|p̂|, |q̂|, |ŝ|, |t̂|), and solves the Gamma identity once per degree
//! tuple and radial pair (l, k).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::condition::{condition_i, Clause};
use crate::decide::{eq14_factors, integrality_of, trivial_from_degrees, CommuteKey, TrivialClause, TrivialityReport};
use crate::error::{Error, Result};
use crate::model::{Degrees, DomainSpec, MonomialSymbol, ProblemPair};
use crate::multi_index::MultiIndex;
use crate::rational::Rational;

/// Refuse searches that would walk more tuples than this.
pub const MAX_TUPLES: u64 = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    #[default]
    All,
    /// No clause c1-c5 holds.
    NonTrivial,
    /// The given clause holds.
    Clause(TrivialClause),
}

/// Exponent vectors that must not be zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NonZero {
    pub p: bool,
    pub q: bool,
    pub s: bool,
    pub t: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpace {
    pub domain: DomainSpec,
    /// Every exponent entry lies in 0..=max_entry.
    pub max_entry: u32,
    /// Radial exponents are j/d with 1 ≤ d ≤ max_denominator ...
    pub max_denominator: u32,
    /// ... and 0 ≤ j/d ≤ radial_cap.
    pub radial_cap: Rational,
    #[serde(default)]
    pub filter: Filter,
    #[serde(default)]
    pub nonzero: NonZero,
    /// Apply the integrality and rational-equation pre-filters.
    #[serde(default = "yes")]
    pub prune: bool,
}

fn yes() -> bool {
    true
}

impl SearchSpace {
    pub fn new(domain: DomainSpec, max_entry: u32, max_denominator: u32, radial_cap: Rational) -> Result<Self> {
        let s = SearchSpace {
            domain,
            max_entry,
            max_denominator,
            radial_cap,
            filter: Filter::All,
            nonzero: NonZero::default(),
            prune: true,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_nonzero(mut self, nonzero: NonZero) -> Self {
        self.nonzero = nonzero;
        self
    }

    pub fn with_prune(mut self, prune: bool) -> Self {
        self.prune = prune;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_denominator == 0 {
            return Err(Error::InvalidInput("max_denominator must be at least 1".into()));
        }
        if self.radial_cap.is_negative() {
            return Err(Error::InvalidInput("radial_cap must be non-negative".into()));
        }
        Ok(())
    }

    /// The admissible radial exponents, ascending.
    pub fn radial_values(&self) -> Vec<Rational> {
        let mut set = BTreeSet::new();
        for d in 1..=self.max_denominator as i64 {
            let top = (&self.radial_cap * Rational::from_integer(d)).floor();
            let top: i64 = top.try_into().unwrap_or(i64::MAX);
            for j in 0..=top {
                set.insert(Rational::new(j, d));
            }
        }
        set.into_iter().collect()
    }

    /// Number of raw tuples (p, q, s, t, l, k) in the space.
    pub fn cardinality(&self) -> BigUint {
        let vectors = BigUint::from(self.max_entry as u64 + 1).pow(self.domain.dimension() as u32);
        let r = BigUint::from(self.radial_values().len());
        vectors.pow(4) * &r * &r
    }

    fn vectors(&self) -> Vec<Vec<u32>> {
        let n = self.domain.dimension();
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=self.max_entry).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutingPair {
    pub pair: ProblemPair,
    pub report: TrivialityReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemicommutingPair {
    pub pair: ProblemPair,
    /// Semi-commuting clauses (i)-(iv) that hold.
    pub clauses: Vec<Clause>,
}

#[derive(Serialize)]
struct Line<'a, C: Serialize> {
    m: &'a [u32],
    l: &'a Rational,
    p: &'a MultiIndex,
    q: &'a MultiIndex,
    k: &'a Rational,
    s: &'a MultiIndex,
    t: &'a MultiIndex,
    clauses: &'a [C],
    #[serde(skip_serializing_if = "Option::is_none")]
    non_trivial: Option<bool>,
}

fn line<C: Serialize>(pair: &ProblemPair, clauses: &[C], non_trivial: Option<bool>) -> String {
    serde_json::to_string(&Line {
        m: pair.domain.m(),
        l: &pair.first.l,
        p: &pair.first.p,
        q: &pair.first.q,
        k: &pair.second.l,
        s: &pair.second.p,
        t: &pair.second.q,
        clauses,
        non_trivial,
    })
    .expect("search line serializes")
}

impl CommutingPair {
    /// One JSON-lines record.
    pub fn to_json_line(&self) -> String {
        line(&self.pair, &self.report.clauses, Some(self.report.non_trivial))
    }
}

impl SemicommutingPair {
    pub fn to_json_line(&self) -> String {
        line(&self.pair, &self.clauses, None)
    }
}

/// A hit before it is turned into symbols: exponent vectors by position in
/// the vector list, radial exponents by position in the radial list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Hit {
    pqst: [u32; 4],
    l: u32,
    k: u32,
}

fn grade(v: &[u32], w: &[u64]) -> u64 {
    v.iter().zip(w).map(|(&x, &wi)| x as u64 * wi).sum()
}

fn degree(g: u64, lcm: u64) -> Rational {
    Rational::new(g as i64, lcm as i64)
}

struct Context<'a> {
    space: &'a SearchSpace,
    radial: Vec<Rational>,
    vectors: Vec<Vec<u32>>,
    weights: Vec<u64>,
    lcm: u64,
    /// Position of a vector in `vectors` (mixed radix, most significant first).
    radix: u64,
}

impl<'a> Context<'a> {
    fn new(space: &'a SearchSpace) -> Result<Self> {
        space.validate()?;
        Ok(Context {
            space,
            radial: space.radial_values(),
            vectors: space.vectors(),
            weights: space.domain.integer_weights(),
            lcm: space.domain.lcm(),
            radix: space.max_entry as u64 + 1,
        })
    }

    fn position(&self, v: &[u32]) -> u32 {
        v.iter().fold(0u64, |acc, &x| acc * self.radix + x as u64) as u32
    }

    fn degrees(&self, key: [u64; 4]) -> Degrees {
        Degrees {
            p: degree(key[0], self.lcm),
            q: degree(key[1], self.lcm),
            s: degree(key[2], self.lcm),
            t: degree(key[3], self.lcm),
        }
    }

    fn pair(&self, hit: &Hit) -> ProblemPair {
        let v = |i: usize| MultiIndex::new(self.vectors[hit.pqst[i] as usize].clone());
        ProblemPair {
            domain: self.space.domain.clone(),
            first: MonomialSymbol { l: self.radial[hit.l as usize].clone(), p: v(0), q: v(1) },
            second: MonomialSymbol { l: self.radial[hit.k as usize].clone(), p: v(2), q: v(3) },
        }
    }

    fn nonzero_ok(&self, pqst: [&[u32]; 4]) -> bool {
        let nz = self.space.nonzero;
        let zero = |v: &[u32]| v.iter().all(|&x| x == 0);
        !((nz.p && zero(pqst[0])) || (nz.q && zero(pqst[1])) || (nz.s && zero(pqst[2])) || (nz.t && zero(pqst[3])))
    }

    fn keep(&self, clauses: &[TrivialClause]) -> bool {
        match self.space.filter {
            Filter::All => true,
            Filter::NonTrivial => clauses.is_empty(),
            Filter::Clause(c) => clauses.contains(&c),
        }
    }
}

/// (index of l, index of k, clauses) into the radial value list.
type RadialHit = (u32, u32, Vec<TrivialClause>);

/// Solutions (l, k, clauses) for one degree tuple, all coordinates already
/// satisfying Condition (I).
fn solve_key(ctx: &Context, key: [u64; 4]) -> Vec<RadialHit> {
    let d = ctx.degrees(key);
    if ctx.space.prune && !integrality_of(&d) {
        return Vec::new();
    }
    let ck = CommuteKey::new(&d);
    if !ck.rational() {
        return Vec::new();
    }
    let (mu, nu) = (d.mu(), d.nu());
    let mut out = Vec::new();
    for (li, l) in ctx.radial.iter().enumerate() {
        let a = (l + &mu).half();
        for (ki, k) in ctx.radial.iter().enumerate() {
            if ctx.space.prune {
                let b = (k + &nu).half();
                let (lhs, rhs) = eq14_factors(&d, &a, &b);
                if !lhs.cross_eq(&rhs) {
                    continue;
                }
            }
            if !ck.holds(l, k) {
                continue;
            }
            let clauses = trivial_from_degrees(&d, l, k, true);
            if ctx.keep(&clauses) {
                out.push((li as u32, ki as u32, clauses));
            }
        }
    }
    out
}

/// Odometer over the product of per-coordinate tuples, starting with a
/// fixed first coordinate.
fn for_each_tuple(
    coords: &[[u32; 4]],
    n: usize,
    first: [u32; 4],
    mut f: impl FnMut(&[Vec<u32>; 4]),
) {
    let mut idx = vec![0usize; n - 1];
    let mut pqst: [Vec<u32>; 4] = std::array::from_fn(|_| vec![0u32; n]);
    loop {
        for j in 0..4 {
            pqst[j][0] = first[j];
        }
        for (c, &i) in idx.iter().enumerate() {
            for j in 0..4 {
                pqst[j][c + 1] = coords[i][j];
            }
        }
        f(&pqst);
        let mut c = n - 1;
        loop {
            if c == 0 {
                return;
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < coords.len() {
                break;
            }
            idx[c] = 0;
            if c == 0 {
                return;
            }
        }
    }
}

/// Every commuting pair in the space that passes the filter, in canonical
/// order, with only the lexicographically smaller orientation of each
/// swapped pair.
pub fn enumerate_commuting(space: &SearchSpace) -> Result<Vec<CommutingPair>> {
    let ctx = Context::new(space)?;
    let n = space.domain.dimension();
    if ctx.radial.is_empty() {
        return Ok(Vec::new());
    }
    let e = space.max_entry;
    let mut coords = Vec::new();
    for x1 in 0..=e {
        for x2 in 0..=e {
            for y1 in 0..=e {
                for y2 in 0..=e {
                    if condition_i(&x1, &x2, &y1, &y2).holds() {
                        coords.push([x1, x2, y1, y2]);
                    }
                }
            }
        }
    }
    let total = (coords.len() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > MAX_TUPLES {
        return Err(Error::InvalidInput(format!(
            "search walks {total} exponent tuples, more than the limit {MAX_TUPLES}"
        )));
    }
    let w = &ctx.weights;
    let key_of = |t: &[Vec<u32>; 4]| std::array::from_fn::<u64, 4, _>(|j| grade(&t[j], w));

    let keys: HashSet<[u64; 4]> = coords
        .par_iter()
        .map(|&first| {
            let mut set = HashSet::new();
            for_each_tuple(&coords, n, first, |t| {
                if ctx.nonzero_ok([&t[0], &t[1], &t[2], &t[3]]) {
                    set.insert(key_of(t));
                }
            });
            set
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut keys: Vec<[u64; 4]> = keys.into_iter().collect();
    keys.sort_unstable();
    let solved: Vec<_> = keys.par_iter().map(|&k| solve_key(&ctx, k)).collect();
    let table: HashMap<[u64; 4], Vec<RadialHit>> =
        keys.into_iter().zip(solved).filter(|(_, v)| !v.is_empty()).collect();

    let mut hits: Vec<(Hit, Vec<TrivialClause>)> = coords
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            for_each_tuple(&coords, n, first, |t| {
                if !ctx.nonzero_ok([&t[0], &t[1], &t[2], &t[3]]) {
                    return;
                }
                let Some(sols) = table.get(&key_of(t)) else { return };
                let pqst = std::array::from_fn(|j| ctx.position(&t[j]));
                let orient = (&t[0], &t[1]).cmp(&(&t[2], &t[3]));
                for (l, k, clauses) in sols {
                    let smaller = match orient {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => l <= k,
                    };
                    if smaller {
                        out.push((Hit { pqst, l: *l, k: *k }, clauses.clone()));
                    }
                }
            });
            out
        })
        .flatten()
        .collect();
    hits.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(hits
        .into_iter()
        .map(|(hit, clauses)| CommutingPair {
            pair: ctx.pair(&hit),
            report: TrivialityReport { non_trivial: clauses.is_empty(), clauses },
        })
        .collect())
}

/// Every semi-commuting pair in the space, in canonical order. A pair
/// semi-commutes only if p = 0 or t = 0, so only those tuples are walked.
/// The filter looks at the trivial clauses c1-c5 of the pair.
pub fn enumerate_semicommuting(space: &SearchSpace) -> Result<Vec<SemicommutingPair>> {
    let ctx = Context::new(space)?;
    let nv = ctx.vectors.len();
    let total = (nv as u64).checked_pow(3).map(|x| x.saturating_mul(2)).unwrap_or(u64::MAX);
    if total > MAX_TUPLES {
        return Err(Error::InvalidInput(format!(
            "search walks {total} exponent tuples, more than the limit {MAX_TUPLES}"
        )));
    }
    let position: HashMap<&Rational, u32> =
        ctx.radial.iter().enumerate().map(|(i, r)| (r, i as u32)).collect();
    let at = |r: &Rational| position.get(r).copied();
    let grades: Vec<u64> = ctx.vectors.iter().map(|v| grade(v, &ctx.weights)).collect();
    let every: Vec<u32> = (0..ctx.radial.len() as u32).collect();

    let visit = |pqst: [usize; 4], out: &mut Vec<(Hit, Vec<Clause>)>| {
        let vs = pqst.map(|i| ctx.vectors[i].as_slice());
        if !ctx.nonzero_ok(vs) {
            return;
        }
        let d = ctx.degrees(pqst.map(|i| grades[i]));
        let (p_zero, t_zero) = (pqst[0] == 0, pqst[3] == 0);
        // (clause, fixed l, fixed k); a missing side ranges over everything.
        let mut rules: Vec<(Clause, Option<u32>, Option<u32>)> = Vec::new();
        if t_zero {
            if let Some(l) = at(&(&d.q - &d.p)) {
                rules.push((Clause::I, Some(l), None));
            }
            if let Some(k) = at(&d.s) {
                rules.push((Clause::Ii, None, Some(k)));
            }
        }
        if p_zero {
            if let Some(l) = at(&d.q) {
                rules.push((Clause::Iii, Some(l), None));
            }
            if let Some(k) = at(&(&d.s - &d.t)) {
                rules.push((Clause::Iv, None, Some(k)));
            }
        }
        if rules.is_empty() {
            return;
        }
        let mut found: BTreeMap<(u32, u32), Vec<Clause>> = BTreeMap::new();
        for (c, l, k) in rules {
            let ls = l.map_or(every.clone(), |x| vec![x]);
            let ks = k.map_or(every.clone(), |x| vec![x]);
            for &li in &ls {
                for &ki in &ks {
                    found.entry((li, ki)).or_default().push(c);
                }
            }
        }
        let cond = (0..vs[0].len()).all(|i| condition_i(&vs[0][i], &vs[1][i], &vs[2][i], &vs[3][i]).holds());
        let pos = pqst.map(|i| i as u32);
        for ((l, k), clauses) in found {
            let trivial = trivial_from_degrees(&d, &ctx.radial[l as usize], &ctx.radial[k as usize], cond);
            if ctx.keep(&trivial) {
                out.push((Hit { pqst: pos, l, k }, clauses));
            }
        }
    };

    let mut hits: Vec<(Hit, Vec<Clause>)> = (0..nv)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for q in 0..nv {
                for s in 0..nv {
                    visit([a, q, s, 0], &mut out);
                    if a != 0 {
                        visit([0, q, s, a], &mut out);
                    }
                }
            }
            out
        })
        .flatten()
        .collect();
    hits.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(hits
        .into_iter()
        .map(|(hit, clauses)| SemicommutingPair { pair: ctx.pair(&hit), clauses })
        .collect())
}
