//! Validation of candidate elementary shapes for dual Selmer groups over
//! the cyclotomic `Z_p`-extension of `Q`,
//! `prod g_i^{l_i} * prod Phi_{a_j}^{f_j} * prod Phi_{b_k}` with `f_j >= 2`,
//! and the Shafarevich-Tate shape they force.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::Sign;
use crate::rank_data::GrowthSummary;
use crate::structure::signed_exponent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("cyclotomic factor Phi({a})^{f} needs exponent at least 2; list it as a simple factor instead")]
    MultiExponent { a: u32, f: u32 },
    #[error("generic factor {label:?} must have positive degree and exponent")]
    Generic { label: String },
}

/// Which Selmer group the shape describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeReduction {
    Ordinary,
    Plus,
    Minus,
}

impl ShapeReduction {
    pub fn sign(self) -> Option<Sign> {
        match self {
            ShapeReduction::Ordinary => None,
            ShapeReduction::Plus => Some(Sign::Plus),
            ShapeReduction::Minus => Some(Sign::Minus),
        }
    }
}

impl fmt::Display for ShapeReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeReduction::Ordinary => "ordinary",
            ShapeReduction::Plus => "supersingular+",
            ShapeReduction::Minus => "supersingular-",
        })
    }
}

/// A factor coprime to every `Phi_n`, known only through its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenericFactor {
    pub label: String,
    pub degree: u64,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelmerShape {
    pub reduction: ShapeReduction,
    #[serde(default)]
    pub generic: Vec<GenericFactor>,
    /// `(a_j, f_j)` for the factors `Phi_{a_j}^{f_j}`.
    #[serde(default)]
    pub cyclo_multi: Vec<(u32, u32)>,
    /// `b_k` for the factors `Phi_{b_k}`.
    #[serde(default)]
    pub cyclo_simple: Vec<u32>,
}

impl SelmerShape {
    pub fn check_well_formed(&self) -> Result<(), ShapeError> {
        if let Some(&(a, f)) = self.cyclo_multi.iter().find(|(_, f)| *f < 2) {
            return Err(ShapeError::MultiExponent { a, f });
        }
        if let Some(g) = self.generic.iter().find(|g| g.degree == 0 || g.exponent == 0) {
            return Err(ShapeError::Generic {
                label: g.label.clone(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// What the constraint says, and on failure what broke it.
    pub detail: String,
}

/// Cyclotomic part `{(a_j, f_j - 1)}` and generic part of the forced
/// Shafarevich-Tate shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShaShape {
    pub cyclotomic: Vec<(u32, u32)>,
    pub generic: Vec<GenericFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub reduction: ShapeReduction,
    pub accepted: bool,
    pub checks: Vec<Check>,
    pub sha: ShaShape,
    /// Every `Phi_{a_j}` occurs in a single summand, so the cyclotomic part
    /// of the Shafarevich-Tate group is cyclic.
    pub cyclic: bool,
}

impl ValidationReport {
    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Runs the constraints in order: distinct `a_j`; parity of the `a_j` for
/// signed shapes; derived Shafarevich-Tate shape; and, when a growth summary
/// is supplied, agreement of the number of cyclotomic summands at each level
/// with the rank growth (`e_n` for ordinary shapes, `r_n^sign` for signed ones).
pub fn validate_selmer_shape(
    s: &SelmerShape,
    gs: Option<&GrowthSummary>,
) -> Result<ValidationReport, ShapeError> {
    s.check_well_formed()?;
    let mut checks = Vec::new();

    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &(a, _) in &s.cyclo_multi {
        *counts.entry(a).or_insert(0) += 1;
    }
    let dups: Vec<u32> = counts.iter().filter(|(_, &c)| c > 1).map(|(&a, _)| a).collect();
    checks.push(check(
        "distinct_a",
        dups.is_empty(),
        if dups.is_empty() {
            "the levels a_j of the non-simple cyclotomic factors are distinct".into()
        } else {
            format!("the levels a_j must be distinct; repeated: {dups:?}")
        },
    ));

    if let Some(sign) = s.reduction.sign() {
        let bad: Vec<u32> = s
            .cyclo_multi
            .iter()
            .map(|&(a, _)| a)
            .filter(|&a| match sign {
                Sign::Plus => a % 2 == 1,
                Sign::Minus => a != 0 && a % 2 == 0,
            })
            .collect();
        let rule = match sign {
            Sign::Plus => "every a_j is even under the plus condition",
            Sign::Minus => "every a_j is odd or 0 under the minus condition",
        };
        checks.push(check(
            "parity",
            bad.is_empty(),
            if bad.is_empty() {
                rule.to_string()
            } else {
                format!("{rule}; violated by {bad:?}")
            },
        ));
    }

    let mut cyclotomic: Vec<(u32, u32)> = s.cyclo_multi.iter().map(|&(a, f)| (a, f - 1)).collect();
    cyclotomic.sort_unstable();
    let sha = ShaShape {
        cyclotomic,
        generic: s.generic.clone(),
    };
    let cyclic = dups.is_empty();

    if let Some(gs) = gs {
        let mut mismatches = Vec::new();
        for n in 0..gs.levels() {
            let found = s.cyclo_multi.iter().filter(|&&(a, _)| a as usize == n).count()
                + s.cyclo_simple.iter().filter(|&&b| b as usize == n).count();
            let expected = match s.reduction.sign() {
                None => gs.e[n],
                Some(sign) => signed_exponent(gs, n, sign),
            };
            if found as u64 != expected {
                mismatches.push(format!("level {n}: {found} summands, rank growth needs {expected}"));
            }
        }
        checks.push(check(
            "rank_growth",
            mismatches.is_empty(),
            if mismatches.is_empty() {
                "cyclotomic summand counts match the rank growth at every level".into()
            } else {
                mismatches.join("; ")
            },
        ));
    }

    Ok(ValidationReport {
        reduction: s.reduction,
        accepted: checks.iter().all(|c| c.passed),
        checks,
        sha,
        cyclic,
    })
}
