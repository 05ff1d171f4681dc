//! JSON shapes accepted by the command-line front end.

use serde::{Deserialize, Deserializer};

use crate::calculus::{OperatorKind, Region, Truncation};
use crate::decide::{NumericPair, Radial};
use crate::error::{Error, Result};
use crate::model::{DomainSpec, MonomialSymbol, ProblemPair};
use crate::multi_index::MultiIndex;
use crate::rational::Rational;
use crate::search::{Filter, NonZero, SearchSpace};

/// A radial exponent: "n/d" for exact work, {"float": x} for the numeric
/// fallback.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialJson(pub Radial);

impl<'de> Deserialize<'de> for RadialJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Float {
            float: f64,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Either {
            Exact(String),
            Float(Float),
        }
        match Either::deserialize(d).map_err(|_| {
            serde::de::Error::custom("radial exponent must be a string \"n/d\" or {\"float\": x}")
        })? {
            Either::Exact(s) => s.parse::<Rational>().map(|r| RadialJson(Radial::Exact(r))).map_err(serde::de::Error::custom),
            Either::Float(f) => Ok(RadialJson(Radial::Float(f.float))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolJson {
    pub l: RadialJson,
    pub p: MultiIndex,
    pub q: MultiIndex,
}

impl SymbolJson {
    fn exact(&self, what: &str) -> Result<MonomialSymbol> {
        match &self.l.0 {
            Radial::Exact(l) => MonomialSymbol::new(l.clone(), self.p.clone(), self.q.clone()),
            Radial::Float(_) => Err(Error::InvalidInput(format!(
                "{what} needs an exact radial exponent \"n/d\""
            ))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairPayload {
    #[serde(default)]
    pub schema: Option<String>,
    pub m: DomainSpec,
    pub first: SymbolJson,
    pub second: SymbolJson,
}

/// A decision input: exact when both radial exponents are exact.
pub enum DecisionInput {
    Exact(ProblemPair),
    Numeric(NumericPair),
}

impl PairPayload {
    pub fn decision_input(&self) -> Result<DecisionInput> {
        let np = NumericPair::new(
            self.m.clone(),
            self.first.l.0.clone(),
            self.first.p.clone(),
            self.first.q.clone(),
            self.second.l.0.clone(),
            self.second.p.clone(),
            self.second.q.clone(),
        )?;
        Ok(match np.exact() {
            Some(pair) => DecisionInput::Exact(ProblemPair::new(pair.domain, pair.first, pair.second)?),
            None => DecisionInput::Numeric(np),
        })
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixPayload {
    #[serde(default)]
    pub schema: Option<String>,
    pub m: DomainSpec,
    #[serde(default = "toeplitz")]
    pub kind: OperatorKind,
    pub first: SymbolJson,
    #[serde(default)]
    pub second: Option<SymbolJson>,
    #[serde(default)]
    pub truncation: Option<Truncation>,
    #[serde(default)]
    pub region: Region,
}

fn toeplitz() -> OperatorKind {
    OperatorKind::Toeplitz
}

impl MatrixPayload {
    pub fn first(&self) -> Result<MonomialSymbol> {
        self.first.exact("matrix")
    }

    pub fn second(&self) -> Result<Option<MonomialSymbol>> {
        self.second.as_ref().map(|s| s.exact("matrix")).transpose()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleQuery {
    Volume,
    InnerProduct,
    ActionCoefficient,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OraclePayload {
    #[serde(default)]
    pub schema: Option<String>,
    pub m: DomainSpec,
    pub query: OracleQuery,
    #[serde(default)]
    pub symbol: Option<SymbolJson>,
    #[serde(default)]
    pub beta: Option<MultiIndex>,
    #[serde(default)]
    pub lambda: Option<MultiIndex>,
    #[serde(default)]
    pub samples: Option<u64>,
}

impl OraclePayload {
    pub fn symbol(&self) -> Result<MonomialSymbol> {
        match &self.symbol {
            Some(s) => s.exact("oracle"),
            None => Ok(MonomialSymbol::identity(self.m.dimension())),
        }
    }

    pub fn beta(&self) -> Result<&MultiIndex> {
        self.beta.as_ref().ok_or_else(|| Error::InvalidInput("oracle query needs \"beta\"".into()))
    }

    pub fn lambda(&self) -> Result<&MultiIndex> {
        self.lambda.as_ref().ok_or_else(|| Error::InvalidInput("inner_product needs \"lambda\"".into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    #[default]
    Commute,
    Semicommute,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchPayload {
    #[serde(default)]
    pub schema: Option<String>,
    pub m: DomainSpec,
    #[serde(default)]
    pub relation: Relation,
    pub max_entry: u32,
    #[serde(default = "one")]
    pub max_denominator: u32,
    pub radial_cap: Rational,
    #[serde(default)]
    pub filter: Filter,
    #[serde(default)]
    pub nonzero: NonZero,
    #[serde(default = "yes")]
    pub prune: bool,
}

fn one() -> u32 {
    1
}

fn yes() -> bool {
    true
}

impl SearchPayload {
    pub fn space(&self) -> Result<SearchSpace> {
        Ok(SearchSpace::new(self.m.clone(), self.max_entry, self.max_denominator, self.radial_cap.clone())?
            .with_filter(self.filter)
            .with_nonzero(self.nonzero)
            .with_prune(self.prune))
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmptyPayload {
    #[serde(default)]
    pub schema: Option<String>,
}
