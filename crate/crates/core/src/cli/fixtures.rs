//! Reference examples bundled with `verify-examples`.

use serde::Serialize;

use crate::calculus::{build_commutator, build_semicommutator, Region, Truncation};
use crate::decide::{
    classify_trivial, decide_commute, decide_commute_holomorphic, decide_commute_monomial,
    decide_semicommute, Answer,
};
use crate::error::Result;
use crate::model::{DomainSpec, MonomialSymbol, ProblemPair};
use crate::multi_index::MultiIndex;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixtureResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

fn sym(l: Rational, p: &[u32], q: &[u32]) -> Result<MonomialSymbol> {
    MonomialSymbol::new(l, mi(p), mi(q))
}

fn weighted_pair() -> Result<ProblemPair> {
    ProblemPair::new(
        DomainSpec::new(vec![4; 6])?,
        sym(Rational::from(3), &[0, 2, 0, 1, 1, 4], &[0, 1, 1, 0, 1, 1])?,
        sym(Rational::from(2), &[2, 0, 0, 8, 2, 4], &[3, 0, 2, 0, 2, 1])?,
    )
}

fn ball_pair(l: i64, p: &[u32], q: &[u32], k: i64, s: &[u32], t: &[u32]) -> Result<ProblemPair> {
    ProblemPair::new(
        DomainSpec::ball(p.len())?,
        sym(Rational::from(l), p, q)?,
        sym(Rational::from(k), s, t)?,
    )
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> FixtureResult {
    match f() {
        Ok((pass, detail)) => FixtureResult { name, pass, detail },
        Err(e) => FixtureResult { name, pass: false, detail: e.to_string() },
    }
}

pub fn verify_examples() -> Vec<FixtureResult> {
    vec![
        check("weighted-domain-pair-commutes", || {
            let v = decide_commute(&weighted_pair()?)?;
            Ok((v.answer == Answer::Yes, format!("{:?}/{:?}", v.answer, v.mode)))
        }),
        check("weighted-domain-pair-is-non-trivial", || {
            let r = classify_trivial(&weighted_pair()?)?;
            Ok((r.non_trivial, format!("clauses {:?}", r.clauses)))
        }),
        check("weighted-domain-commutator-vanishes-D8", || {
            let pair = weighted_pair()?;
            let op = build_commutator(&pair.domain, &pair.first, &pair.second, &Truncation::WeightedDegree(Rational::from(8)))?;
            let max = op.max_abs_entry(Region::Interior);
            Ok((max <= 1e-9, format!("max interior entry {max:e}")))
        }),
        check("ball-family-r7-r4", || {
            let pair = ball_pair(7, &[1, 1, 0], &[1, 0, 0], 4, &[2, 2, 4], &[2, 0, 2])?;
            let v = decide_commute(&pair)?;
            let r = classify_trivial(&pair)?;
            Ok((v.is_yes() && r.non_trivial, format!("{:?}, clauses {:?}", v.answer, r.clauses)))
        }),
        check("ball-family-r9-r12", || {
            let pair = ball_pair(9, &[1, 1, 0], &[1, 0, 0], 12, &[2, 2, 4], &[2, 0, 2])?;
            let v = decide_commute(&pair)?;
            let r = classify_trivial(&pair)?;
            Ok((v.is_yes() && r.non_trivial, format!("{:?}, clauses {:?}", v.answer, r.clauses)))
        }),
        check("monomial-crossed-pair-does-not-commute", || {
            let b2 = DomainSpec::ball(2)?;
            let v = decide_commute_monomial(&b2, &mi(&[1, 0]), &mi(&[0, 1]), &mi(&[0, 1]), &mi(&[1, 0]))?;
            let general = decide_commute(&ball_pair(2, &[1, 0], &[0, 1], 2, &[0, 1], &[1, 0])?)?;
            Ok((!v.is_yes() && !general.is_yes(), format!("{:?}", v.answer)))
        }),
        check("monomial-analytic-pair-commutes", || {
            let b2 = DomainSpec::ball(2)?;
            let z = mi(&[0, 0]);
            let v = decide_commute_monomial(&b2, &mi(&[1, 0]), &z, &mi(&[2, 0]), &z)?;
            let general = decide_commute(&ball_pair(1, &[1, 0], &[0, 0], 2, &[2, 0], &[0, 0])?)?;
            Ok((v.is_yes() && general.is_yes(), format!("{:?}", v.answer)))
        }),
        check("holomorphic-first-symbol", || {
            let d = DomainSpec::new(vec![2, 1])?;
            let p = mi(&[1, 1]);
            let s = mi(&[2, 3]);
            let deg = d.weighted_degree(&s)?;
            let yes = decide_commute_holomorphic(&d, &p, &sym(deg.clone(), &[2, 3], &[0, 0])?)?;
            let zbar = decide_commute_holomorphic(&d, &p, &sym(Rational::one(), &[0, 0], &[1, 0])?)?;
            let off = decide_commute_holomorphic(&d, &p, &sym(deg + Rational::one(), &[2, 3], &[0, 0])?)?;
            Ok((
                yes.is_yes() && !zbar.is_yes() && !off.is_yes(),
                format!("{:?} {:?} {:?}", yes.answer, zbar.answer, off.answer),
            ))
        }),
        check("semicommuting-pair", || {
            let pair = ball_pair(1, &[1, 0], &[1, 1], 3, &[2, 0], &[0, 0])?;
            let v = decide_semicommute(&pair)?;
            let op = build_semicommutator(&pair.domain, &pair.first, &pair.second, &Truncation::WeightedDegree(Rational::from(10)))?;
            let max = op.max_abs_entry(Region::Interior);
            Ok((v.is_yes() && max <= 1e-9, format!("{:?}, max interior entry {max:e}", v.answer)))
        }),
        check("z1-and-conjugate-z1-do-not-semicommute", || {
            let pair = ball_pair(1, &[1, 0], &[0, 0], 1, &[0, 0], &[1, 0])?;
            let v = decide_semicommute(&pair)?;
            Ok((!v.is_yes(), format!("{:?}", v.answer)))
        }),
    ]
}
