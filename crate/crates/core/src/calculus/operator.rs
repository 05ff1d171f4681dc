//! Truncated matrices of Toeplitz operators and their (semi-)commutators.
//!
//! Every operator here is a weighted shift on the monomial basis, so a
//! matrix is one optional slot per basis element plus a constant shift.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::action::{compose, Kernel, PreparedSymbol, ZERO_FLUSH};
use super::basis::{Basis, Truncation};
use crate::error::Result;
use crate::model::{DomainSpec, MonomialSymbol};
use crate::multi_index::MultiIndex;

/// Largest ln Γ table we allocate; larger arguments are evaluated directly.
const MAX_TABLE: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Toeplitz,
    Commutator,
    Semicommutator,
}

/// Which sources to look at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    All,
    /// Sources whose every produced index stays inside the basis.
    #[default]
    Interior,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Slot {
    coeff: f64,
    escaping: bool,
    boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub source: MultiIndex,
    pub target: MultiIndex,
    pub coeff: f64,
    /// The target lies outside the basis.
    pub escaping: bool,
    /// Some intermediate or final index lies outside the basis.
    pub boundary: bool,
}

#[derive(Clone, Debug)]
pub struct SparseOperator {
    kind: OperatorKind,
    basis: Basis,
    shift: Vec<i64>,
    slots: Vec<Option<Slot>>,
}

#[derive(Serialize)]
struct Document<'a> {
    schema: &'static str,
    kind: OperatorKind,
    dimension: usize,
    m: &'a [u32],
    truncation: &'a Truncation,
    ordering: &'static str,
    basis_size: usize,
    entries: Vec<Entry>,
}

impl SparseOperator {
    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// target - source, the same for every entry.
    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn len(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The entry for the i-th basis element, if any.
    pub fn entry(&self, i: usize) -> Option<Entry> {
        let slot = self.slots.get(i)?.as_ref()?;
        let source = self.basis.get(i);
        let target = source
            .iter()
            .zip(&self.shift)
            .map(|(&b, &d)| (b as i64 + d) as u32)
            .collect();
        Some(Entry {
            source: MultiIndex::new(source.to_vec()),
            target: MultiIndex::new(target),
            coeff: slot.coeff,
            escaping: slot.escaping,
            boundary: slot.boundary,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = Entry> + '_ {
        (0..self.slots.len()).filter_map(|i| self.entry(i))
    }

    fn region_slots(&self, region: Region) -> impl Iterator<Item = &Slot> + '_ {
        self.slots
            .iter()
            .flatten()
            .filter(move |s| region == Region::All || !s.boundary)
    }

    /// Largest |coefficient| over the region; 0 when it is empty.
    pub fn max_abs_entry(&self, region: Region) -> f64 {
        self.region_slots(region).fold(0.0, |acc, s| acc.max(s.coeff.abs()))
    }

    /// Largest |coefficient| over sources accepted by `keep`.
    pub fn max_abs_entry_where(&self, keep: impl Fn(&[u32]) -> bool) -> f64 {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().filter(|_| keep(self.basis.get(i))))
            .fold(0.0, |acc, s| acc.max(s.coeff.abs()))
    }

    /// Number of entries above `threshold` in magnitude. Distinct sources of
    /// a weighted shift have distinct targets, so this is the rank of the
    /// thresholded matrix.
    pub fn thresholded_rank(&self, threshold: f64, region: Region) -> usize {
        self.region_slots(region).filter(|s| s.coeff.abs() > threshold).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.document()).expect("operator serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.document()).expect("operator serializes")
    }

    fn document(&self) -> Document<'_> {
        Document {
            schema: crate::SCHEMA,
            kind: self.kind,
            dimension: self.basis.dimension(),
            m: self.basis.domain().m(),
            truncation: self.basis.truncation(),
            ordering: "graded-lex",
            basis_size: self.basis.len(),
            entries: self.entries().collect(),
        }
    }
}

fn shift_of(syms: &[&MonomialSymbol]) -> Vec<i64> {
    let n = syms[0].dimension();
    (0..n)
        .map(|i| syms.iter().map(|s| s.p.get(i) as i64 - s.q.get(i) as i64).sum())
        .collect()
}

fn kernel_for(basis: &Basis, syms: &[&MonomialSymbol]) -> Kernel {
    let domain = basis.domain();
    let w = domain.integer_weights();
    let extra: u64 = syms
        .iter()
        .map(|s| s.p.entries().iter().zip(&w).map(|(&x, &wi)| x as u64 * wi).sum::<u64>())
        .sum();
    let len = basis.max_grade() + extra + w.iter().sum::<u64>() + 2 * domain.lcm() + 1;
    Kernel::new(domain, (len as usize).min(MAX_TABLE))
}

fn target_in(source: &[u32], shift: &[i64], out: &mut [u32]) -> bool {
    for i in 0..source.len() {
        let v = source[i] as i64 + shift[i];
        if v < 0 {
            return false;
        }
        out[i] = v as u32;
    }
    true
}

fn build<F>(basis: Basis, kind: OperatorKind, shift: Vec<i64>, slot: F) -> SparseOperator
where
    F: Fn(&Basis, &[u32], &mut Scratch) -> Option<Slot> + Sync,
{
    let n = basis.dimension();
    let slots = (0..basis.len())
        .into_par_iter()
        .map_init(|| Scratch::new(n), |scratch, i| slot(&basis, basis.get(i), scratch))
        .collect();
    SparseOperator { kind, basis, shift, slots }
}

struct Scratch {
    mid: Vec<u32>,
    target: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch { mid: vec![0; n], target: vec![0; n] }
    }
}

fn flush(x: f64) -> f64 {
    if x.abs() < ZERO_FLUSH {
        0.0
    } else {
        x
    }
}

pub fn build_operator(
    domain: &DomainSpec,
    sym: &MonomialSymbol,
    truncation: &Truncation,
) -> Result<SparseOperator> {
    sym.check_domain(domain)?;
    let basis = Basis::new(domain, truncation)?;
    let kernel = kernel_for(&basis, &[sym]);
    let prepared = PreparedSymbol::new(domain, sym);
    let shift = shift_of(&[sym]);
    Ok(build(basis, OperatorKind::Toeplitz, shift, |basis, beta, scratch| {
        let coeff = prepared.apply(&kernel, beta, &mut scratch.target)?;
        let escaping = !basis.contains(&scratch.target);
        Some(Slot { coeff, escaping, boundary: escaping })
    }))
}

/// Truncated matrix of [T₁, T₂] = T₁T₂ - T₂T₁.
pub fn build_commutator(
    domain: &DomainSpec,
    first: &MonomialSymbol,
    second: &MonomialSymbol,
    truncation: &Truncation,
) -> Result<SparseOperator> {
    first.check_domain(domain)?;
    second.check_domain(domain)?;
    let basis = Basis::new(domain, truncation)?;
    let kernel = kernel_for(&basis, &[first, second]);
    let a = PreparedSymbol::new(domain, first);
    let b = PreparedSymbol::new(domain, second);
    let shift = shift_of(&[first, second]);
    Ok(build(basis, OperatorKind::Commutator, shift.clone(), |basis, beta, sc| {
        if !target_in(beta, &shift, &mut sc.target) {
            return None;
        }
        let inside = |x: &[u32]| basis.contains(x);
        let ab = compose(&kernel, &a, &b, beta, &mut sc.mid, &mut sc.target, &inside);
        let ba = compose(&kernel, &b, &a, beta, &mut sc.mid, &mut sc.target, &inside);
        finish(basis, beta, &shift, sc, ab.value, ba.value, ab.escaped || ba.escaped, ab.value != 0.0 || ba.value != 0.0)
    }))
}

/// Truncated matrix of (T₁, T₂] = T₁T₂ - T_{φψ}.
pub fn build_semicommutator(
    domain: &DomainSpec,
    first: &MonomialSymbol,
    second: &MonomialSymbol,
    truncation: &Truncation,
) -> Result<SparseOperator> {
    first.check_domain(domain)?;
    second.check_domain(domain)?;
    let product = first.product(second)?;
    let basis = Basis::new(domain, truncation)?;
    let kernel = kernel_for(&basis, &[first, second]);
    let a = PreparedSymbol::new(domain, first);
    let b = PreparedSymbol::new(domain, second);
    let ab_sym = PreparedSymbol::new(domain, &product);
    let shift = shift_of(&[first, second]);
    Ok(build(basis, OperatorKind::Semicommutator, shift.clone(), |basis, beta, sc| {
        if !target_in(beta, &shift, &mut sc.target) {
            return None;
        }
        let inside = |x: &[u32]| basis.contains(x);
        let ab = compose(&kernel, &a, &b, beta, &mut sc.mid, &mut sc.target, &inside);
        let direct = ab_sym.apply(&kernel, beta, &mut sc.mid);
        let escaped = ab.escaped || (direct.is_some() && !basis.contains(&sc.mid));
        let direct = direct.unwrap_or(0.0);
        finish(basis, beta, &shift, sc, ab.value, direct, escaped, ab.value != 0.0 || direct != 0.0)
    }))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    basis: &Basis,
    beta: &[u32],
    shift: &[i64],
    sc: &mut Scratch,
    left: f64,
    right: f64,
    escaped: bool,
    present: bool,
) -> Option<Slot> {
    if !present {
        return None;
    }
    target_in(beta, shift, &mut sc.target);
    let escaping = !basis.contains(&sc.target);
    Some(Slot { coeff: flush(left - right), escaping, boundary: escaped || escaping })
}
