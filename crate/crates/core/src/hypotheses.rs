//! Standing hypotheses on the prime, the abelian field and the curve:
//! condition (star) on the group exponent, ramification and disjointness
//! from the cyclotomic tower read off the conductor, and the reduction type
//! at `p` read off `a_p`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::group::FiniteAbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("p = {0} must be an odd prime")]
    BadPrime(u64),
    #[error("a_{p} = {ap} violates the Hasse bound |a_p| <= 2 sqrt(p)")]
    HasseViolation { ap: i64, p: u64 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("group exponent {exponent} does not divide phi({conductor}) = {phi}")]
    ExponentConductor { exponent: u64, conductor: u64, phi: u64 },
}

fn check_odd_prime(p: u64) -> Result<(), HypothesisError> {
    if p % 2 == 1 && arith::is_prime(p) {
        Ok(())
    } else {
        Err(HypothesisError::BadPrime(p))
    }
}

/// Least common multiple of the factor orders; the generator of the
/// annihilator of the group in `Z`.
pub fn group_exponent(g: &FiniteAbelianGroup) -> u64 {
    g.exponent()
}

/// Outcome of condition (star) with the numbers that decide it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarVerdict {
    pub passed: bool,
    /// Group exponent `m = p^r * m'`.
    pub m: u64,
    pub r: u32,
    pub m_prime: u64,
    /// Multiplicative order of `p` modulo `m'`.
    pub order: u64,
    pub phi_m_prime: u64,
}

/// Condition (star): `p` generates `(Z/m')^x`, where `m'` is the prime-to-`p`
/// part of the group exponent. Holds vacuously when `m'` is 1 or 2.
pub fn star_check(g: &FiniteAbelianGroup, p: u64) -> Result<StarVerdict, HypothesisError> {
    check_odd_prime(p)?;
    let m = group_exponent(g);
    let r = arith::valuation(p, m);
    let m_prime = m / p.pow(r);
    let order = arith::multiplicative_order(p, m_prime);
    let phi_m_prime = arith::totient(m_prime);
    Ok(StarVerdict {
        passed: order == phi_m_prime,
        m,
        r,
        m_prime,
        order,
        phi_m_prime,
    })
}

/// An abelian field `K` given by its Galois group and conductor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    group: FiniteAbelianGroup,
    conductor: u64,
}

impl FieldDescriptor {
    /// `K` embeds in `Q(zeta_f)`, so `Gal(K/Q)` is a quotient of
    /// `(Z/f)^x` and its exponent divides `phi(f)`.
    pub fn new(group: FiniteAbelianGroup, conductor: u64) -> Result<Self, HypothesisError> {
        if conductor == 0 {
            return Err(HypothesisError::ZeroConductor);
        }
        let exponent = group.exponent();
        let phi = arith::totient(conductor);
        if !phi.is_multiple_of(exponent) {
            return Err(HypothesisError::ExponentConductor {
                exponent,
                conductor,
                phi,
            });
        }
        Ok(Self { group, conductor })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }
}

/// A yes/no verdict carrying `v_p(conductor)` as witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorVerdict {
    pub passed: bool,
    pub valuation: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldVerdicts {
    /// `p` unramified in `K`: `p` does not divide the conductor.
    pub unramified: ConductorVerdict,
    /// `K` meets the cyclotomic `Z_p`-extension only in `Q`: `p^2` does not
    /// divide the conductor.
    pub disjoint: ConductorVerdict,
}

pub fn field_hypotheses(k: &FieldDescriptor, p: u64) -> Result<FieldVerdicts, HypothesisError> {
    check_odd_prime(p)?;
    let valuation = arith::valuation(p, k.conductor);
    Ok(FieldVerdicts {
        unramified: ConductorVerdict {
            passed: valuation == 0,
            valuation,
        },
        disjoint: ConductorVerdict {
            passed: valuation < 2,
            valuation,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionType {
    /// `p` does not divide `a_p`.
    Ordinary,
    /// `a_p = 0`.
    Supersingular,
    /// `p` divides `a_p != 0`; the signed theory here needs `a_p = 0`.
    Unsupported,
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionType::Ordinary => "ordinary",
            ReductionType::Supersingular => "supersingular",
            ReductionType::Unsupported => "unsupported",
        })
    }
}

/// `a_p^2 <= 4p`.
pub fn within_hasse_bound(ap: i64, p: u64) -> bool {
    i128::from(ap) * i128::from(ap) <= 4 * i128::from(p)
}

pub fn reduction_type(ap: i64, p: u64) -> Result<ReductionType, HypothesisError> {
    check_odd_prime(p)?;
    if !within_hasse_bound(ap, p) {
        return Err(HypothesisError::HasseViolation { ap, p });
    }
    Ok(if ap == 0 {
        ReductionType::Supersingular
    } else if ap.unsigned_abs().is_multiple_of(p) {
        ReductionType::Unsupported
    } else {
        ReductionType::Ordinary
    })
}

/// Curve data as used by the hypothesis checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub label: String,
    /// `a_p` by prime.
    pub ap: BTreeMap<u64, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u64>,
}

impl CurveData {
    /// First stored prime whose `a_p` breaks the Hasse bound.
    pub fn hasse_violation(&self) -> Option<(u64, i64)> {
        self.ap
            .iter()
            .find(|(&p, &a)| !within_hasse_bound(a, p))
            .map(|(&p, &a)| (p, a))
    }

    pub fn has_bad_reduction_at(&self, p: u64) -> bool {
        self.conductor.is_some_and(|n| n % p == 0)
    }
}

/// Everything `check` reports: (star), the two conductor verdicts and, when
/// `a_p` is known, the reduction type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub p: u64,
    pub group: FiniteAbelianGroup,
    pub conductor: u64,
    pub star: StarVerdict,
    pub field: FieldVerdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ap: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionType>,
}

impl HypothesisReport {
    pub fn new(k: &FieldDescriptor, p: u64, ap: Option<i64>) -> Result<Self, HypothesisError> {
        Ok(Self {
            p,
            group: k.group.clone(),
            conductor: k.conductor,
            star: star_check(&k.group, p)?,
            field: field_hypotheses(k, p)?,
            ap,
            reduction: ap.map(|a| reduction_type(a, p)).transpose()?,
        })
    }

    /// Hypotheses of the fine theorem: (star) and disjointness.
    pub fn fine_ok(&self) -> bool {
        self.star.passed && self.field.disjoint.passed
    }

    /// Hypotheses of the signed theorem: (star), `p` unramified in `K`
    /// (which implies disjointness) and `a_p = 0`.
    pub fn pm_ok(&self) -> bool {
        self.star.passed
            && self.field.unramified.passed
            && self.reduction == Some(ReductionType::Supersingular)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.star.passed {
            out.push("star");
        }
        if !self.field.unramified.passed {
            out.push("unramified");
        }
        if !self.field.disjoint.passed {
            out.push("disjoint");
        }
        if self.reduction == Some(ReductionType::Unsupported) {
            out.push("reduction");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(f: &[(u64, u32)]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f.iter().copied()).unwrap()
    }

    #[test]
    fn exponents() {
        assert_eq!(group_exponent(&group(&[(2, 2), (3, 1)])), 12);
        assert_eq!(group_exponent(&group(&[(3, 2)])), 9);
        assert_eq!(group_exponent(&FiniteAbelianGroup::trivial()), 1);
    }

    #[test]
    fn star() {
        let v = star_check(&group(&[(5, 1)]), 3).unwrap();
        assert!(v.passed);
        assert_eq!((v.order, v.phi_m_prime), (4, 4));
        let v = star_check(&group(&[(2, 3)]), 7).unwrap();
        assert!(!v.passed);
        assert_eq!((v.order, v.phi_m_prime), (2, 4));
        let v = star_check(&group(&[(3, 1)]), 3).unwrap();
        assert!(v.passed);
        assert_eq!((v.r, v.m_prime), (1, 1));
        assert_eq!(
            star_check(&group(&[(3, 1)]), 2),
            Err(HypothesisError::BadPrime(2))
        );
    }

    #[test]
    fn conductor_checks() {
        let k = |f| FieldDescriptor::new(group(&[(2, 1)]), f).unwrap();
        let v = field_hypotheses(&k(20), 3).unwrap();
        assert!(v.unramified.passed && v.disjoint.passed);
        let v = field_hypotheses(&k(15), 3).unwrap();
        assert!(!v.unramified.passed && v.disjoint.passed);
        let v = field_hypotheses(&k(9), 3).unwrap();
        assert!(!v.disjoint.passed);
        assert_eq!(v.disjoint.valuation, 2);
        assert!(matches!(
            FieldDescriptor::new(group(&[(5, 1)]), 20),
            Err(HypothesisError::ExponentConductor { .. })
        ));
    }

    #[test]
    fn reduction_types() {
        assert_eq!(reduction_type(0, 5), Ok(ReductionType::Supersingular));
        assert_eq!(reduction_type(1, 5), Ok(ReductionType::Ordinary));
        assert_eq!(reduction_type(3, 3), Ok(ReductionType::Unsupported));
        assert_eq!(
            reduction_type(5, 5),
            Err(HypothesisError::HasseViolation { ap: 5, p: 5 })
        );
    }

    proptest! {
        #[test]
        fn reduction_type_partitions(pi in 1usize..25, ap in -20i64..=20) {
            let p = (3u64..).filter(|&q| arith::is_prime(q)).nth(pi).unwrap();
            let r = reduction_type(ap, p);
            prop_assert_eq!(r.is_ok(), ap * ap <= 4 * p as i64);
            if let Ok(t) = r {
                let ordinary = ap % p as i64 != 0;
                prop_assert_eq!(t == ReductionType::Ordinary, ordinary);
                prop_assert_eq!(t == ReductionType::Supersingular, ap == 0);
            }
        }

        #[test]
        fn exponent_divides_order(
            exps in prop::collection::vec(0u32..3, 4),
        ) {
            let g = FiniteAbelianGroup::new(
                [2u64, 3, 5, 7].into_iter().zip(exps).filter(|&(_, e)| e > 0),
            ).unwrap();
            prop_assert_eq!(g.order() % group_exponent(&g), 0);
            prop_assert_eq!(group_exponent(&g), g.order());
        }
    }
}
