//! The JSON problem document: prime, Galois group, conductor, optional curve
//! data and the rank table. For example
//!
//! ```json
//! {"p": 3, "group": [[2,1]], "conductor": 20, "curve": {"label": "11.a2", "ap": 0},
//!  "max_level": 1, "ranks": {"0": [0,0], "1": [1,3]}, "assume_fine_sha_finite": true}
//! ```
//!
//! Rank keys are comma-joined tuple entries (`""` for the trivial group) and
//! each row is indexed by level. Unknown fields are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteAbelianGroup, GroupError, IndexTuple};
use crate::hypotheses::{self, FieldDescriptor, HypothesisError, ReductionType};
use crate::rank_data::{RankError, RankTable};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("schema: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("group: {0}")]
    Group(GroupError),
    #[error("bad rank key {0:?}")]
    BadKey(String),
    #[error("{0}")]
    Rank(RankError),
    #[error("max_level {max_level} needs rows of length {}, found {found}", max_level + 1)]
    MaxLevel { max_level: usize, found: usize },
    #[error("hypothesis-field inconsistency: {0}")]
    Field(#[from] HypothesisError),
}

impl InputError {
    /// Stable short name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Schema(_) | InputError::BadKey(_) => "schema",
            InputError::Group(GroupError::RepeatedPrime(_)) => "repeated prime",
            InputError::Group(_) => "schema",
            InputError::Rank(RankError::MissingRow(_)) => "missing tuple row",
            InputError::Rank(RankError::RowLength { .. }) | InputError::MaxLevel { .. } => "row length",
            InputError::Rank(RankError::NonMonotoneLevel { .. }) => "non-monotone ranks",
            InputError::Rank(RankError::NonMonotoneLattice { .. }) => "non-monotone lattice",
            InputError::Rank(_) => "rank table",
            InputError::Field(_) => "hypothesis-field inconsistency",
        }
    }
}

impl From<RankError> for InputError {
    fn from(e: RankError) -> Self {
        match e {
            RankError::Group(g) => InputError::Group(g),
            other => InputError::Rank(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ap: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    p: u64,
    group: Vec<(u64, u32)>,
    conductor: u64,
    #[serde(default)]
    curve: Option<CurveSpec>,
    #[serde(default)]
    max_level: Option<usize>,
    ranks: BTreeMap<String, Vec<u64>>,
    #[serde(default)]
    assume_fine_sha_finite: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept groups with a prime in more than one factor.
    pub allow_repeated_primes: bool,
}

/// A validated problem instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub p: u64,
    pub field: FieldDescriptor,
    pub curve: Option<CurveSpec>,
    pub table: RankTable,
    /// Finiteness of the fine Shafarevich-Tate groups along the tower,
    /// asserted by the input and never checked.
    pub assume_fine_sha_finite: bool,
}

impl Instance {
    pub fn group(&self) -> &FiniteAbelianGroup {
        self.field.group()
    }

    pub fn ap(&self) -> Option<i64> {
        self.curve.as_ref().and_then(|c| c.ap)
    }

    pub fn reduction(&self) -> Option<Result<ReductionType, HypothesisError>> {
        self.ap().map(|a| hypotheses::reduction_type(a, self.p))
    }

    /// The instance cut to levels `0..=max_level`.
    pub fn truncated(&self, max_level: usize) -> Result<Self, InputError> {
        Ok(Self {
            table: self.table.truncate(max_level)?,
            ..self.clone()
        })
    }
}

pub fn parse_input(document: &str) -> Result<Instance, InputError> {
    parse_input_with(document, ParseOptions::default())
}

pub fn parse_input_with(document: &str, opts: ParseOptions) -> Result<Instance, InputError> {
    let doc: Document = serde_json::from_str(document)?;
    let group = if opts.allow_repeated_primes {
        FiniteAbelianGroup::with_repeated_primes(doc.group)
    } else {
        FiniteAbelianGroup::new(doc.group)
    }
    .map_err(InputError::Group)?;
    if let Some(ap) = doc.curve.as_ref().and_then(|c| c.ap) {
        hypotheses::reduction_type(ap, doc.p)?;
    }
    let field = FieldDescriptor::new(group.clone(), doc.conductor)?;
    hypotheses::star_check(&group, doc.p)?;
    let mut rows = BTreeMap::new();
    for (key, row) in doc.ranks {
        let tuple: IndexTuple = key.parse().map_err(|_| InputError::BadKey(key.clone()))?;
        rows.insert(tuple, row);
    }
    let table = RankTable::new(&group, rows)?;
    if let Some(max_level) = doc.max_level {
        if table.levels() != max_level + 1 {
            return Err(InputError::MaxLevel {
                max_level,
                found: table.levels(),
            });
        }
    }
    Ok(Instance {
        p: doc.p,
        field,
        curve: doc.curve,
        table,
        assume_fine_sha_finite: doc.assume_fine_sha_finite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUADRATIC: &str = r#"{"p": 3, "group": [[2,1]], "conductor": 20,
        "curve": {"label": "x", "ap": 0}, "max_level": 1,
        "ranks": {"0": [0,0], "1": [1,3]}, "assume_fine_sha_finite": true}"#;

    #[test]
    fn minimal_document() {
        let inst = parse_input(QUADRATIC).unwrap();
        assert_eq!(inst.p, 3);
        assert_eq!(inst.table.levels(), 2);
        assert!(inst.assume_fine_sha_finite);
        assert_eq!(inst.reduction(), Some(Ok(ReductionType::Supersingular)));
        let trivial = parse_input(r#"{"p":5,"group":[],"conductor":1,"ranks":{"":[0,4]}}"#).unwrap();
        assert!(trivial.group().is_trivial());
        assert!(!trivial.assume_fine_sha_finite);
    }

    fn kind(doc: &str) -> &'static str {
        parse_input(doc).unwrap_err().kind()
    }

    #[test]
    fn error_kinds() {
        assert_eq!(kind(r#"{"p":3,"group":[],"conductor":1,"ranks":{"":[0]},"extra":1}"#), "schema");
        assert_eq!(kind(r#"{"p":3,"group":[],"conductor":1}"#), "schema");
        assert_eq!(
            kind(r#"{"p":3,"group":[[2,1],[5,1]],"conductor":11,"ranks":{"0,0":[0],"0,1":[0],"1,1":[0]}}"#),
            "missing tuple row"
        );
        assert_eq!(kind(r#"{"p":3,"group":[],"conductor":1,"ranks":{"":[3,1]}}"#), "non-monotone ranks");
        assert_eq!(
            kind(r#"{"p":3,"group":[[2,1]],"conductor":20,"ranks":{"0":[2,2],"1":[1,3]}}"#),
            "non-monotone lattice"
        );
        assert_eq!(
            kind(r#"{"p":3,"group":[[2,1]],"conductor":20,"ranks":{"0":[0,0],"1":[1]}}"#),
            "row length"
        );
        assert_eq!(
            kind(r#"{"p":3,"group":[],"conductor":1,"max_level":2,"ranks":{"":[0,0]}}"#),
            "row length"
        );
        assert_eq!(
            kind(r#"{"p":3,"group":[[5,1]],"conductor":20,"ranks":{"0":[0],"1":[0]}}"#),
            "hypothesis-field inconsistency"
        );
        assert_eq!(
            kind(r#"{"p":3,"group":[],"conductor":1,"curve":{"ap":9},"ranks":{"":[0]}}"#),
            "hypothesis-field inconsistency"
        );
        assert_eq!(
            kind(r#"{"p":3,"group":[[3,1],[3,1]],"conductor":9,"ranks":{}}"#),
            "repeated prime"
        );
        assert_eq!(kind(r#"{"p":3,"group":[],"conductor":1,"ranks":{"x":[0]}}"#), "schema");
    }

    #[test]
    fn repeated_primes_with_override() {
        let doc = r#"{"p":5,"group":[[3,1],[3,1]],"conductor":63,
            "ranks":{"0,0":[0],"0,1":[0],"1,0":[0],"1,1":[0]}}"#;
        let opts = ParseOptions { allow_repeated_primes: true };
        assert!(parse_input_with(doc, opts).is_ok());
    }
}
