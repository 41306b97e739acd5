//! Structure of the fine and signed Mordell-Weil groups over the cyclotomic
//! tower: characteristic ideals from the growth summary, their refinements
//! as sums over irreducible group representations, and the target ideals
//! over `Q` they are compared with.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::Sign;
use crate::group::{FiniteAbelianGroup, IndexTuple};
use crate::hypotheses::ReductionType;
use crate::ideal::CharIdeal;
use crate::rank_data::{EAlphaTable, GrowthSummary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("pm requires supersingular reduction (got {0})")]
    RequiresSupersingular(ReductionType),
    #[error("t = {t} is below e_0 = {e0}")]
    TBelowE0 { t: u64, e0: u64 },
}

fn exp32(e: u64) -> u32 {
    u32::try_from(e).expect("exponent fits in 32 bits")
}

/// Characteristic ideal of the dual fine Mordell-Weil group with the
/// per-level exponents `e_n - theta_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FineStructure {
    pub ideal: CharIdeal,
    pub exponents: Vec<u64>,
}

/// `prod_n Phi_n^{e_n - theta_n}` with `mu = 0`.
pub fn fine_mw_structure(p: u64, gs: &GrowthSummary) -> FineStructure {
    FineStructure {
        ideal: CharIdeal::from_level_exponents(p, &gs.s.iter().map(|&s| exp32(s)).collect::<Vec<_>>()),
        exponents: gs.s.clone(),
    }
}

/// Signed structure: exponents `r_n^+`, `r_n^-`, both characteristic ideals
/// and their gcd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmStructure {
    pub r_plus: Vec<u64>,
    pub r_minus: Vec<u64>,
    pub char_plus: CharIdeal,
    pub char_minus: CharIdeal,
    pub gcd: CharIdeal,
}

/// `r_n^sign`: `e_0` at level 0; otherwise `e_n` at the levels the sign
/// owns (even for `+`, odd for `-`) and `e_n - theta_n` at the others.
pub fn signed_exponent(gs: &GrowthSummary, n: usize, sign: Sign) -> u64 {
    if n == 0 || sign.owns_level(n as u32) {
        gs.e[n]
    } else {
        gs.s[n]
    }
}

pub fn pm_mw_structure(
    p: u64,
    gs: &GrowthSummary,
    reduction: ReductionType,
) -> Result<PmStructure, StructureError> {
    if reduction != ReductionType::Supersingular {
        return Err(StructureError::RequiresSupersingular(reduction));
    }
    let levels = gs.levels();
    let r = |sign| (0..levels).map(|n| signed_exponent(gs, n, sign)).collect::<Vec<u64>>();
    let (r_plus, r_minus) = (r(Sign::Plus), r(Sign::Minus));
    let ideal = |r: &[u64]| CharIdeal::from_level_exponents(p, &r.iter().map(|&x| exp32(x)).collect::<Vec<_>>());
    let char_plus = ideal(&r_plus);
    let char_minus = ideal(&r_minus);
    let gcd = char_plus.gcd(&char_minus).expect("same prime");
    Ok(PmStructure {
        r_plus,
        r_minus,
        char_plus,
        char_minus,
        gcd,
    })
}

/// `x^{e_0} prod_{n>0} Phi_n^{e_n - theta_n}`, the closed form of the gcd of
/// the signed ideals.
pub fn pm_gcd_closed_form(p: u64, gs: &GrowthSummary) -> CharIdeal {
    CharIdeal::from_exponents(
        p,
        0,
        (0..gs.levels()).map(|n| (n as u32, exp32(if n == 0 { gs.e[0] } else { gs.s[n] }))),
    )
}

/// One summand `(W_a (x) Lambda/Phi_k)^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub tuple: IndexTuple,
    pub level: usize,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantDecomposition {
    pub summands: Vec<Summand>,
}

impl EquivariantDecomposition {
    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// `sum multiplicity * dim W_a` over the summands at `level`, the
    /// `Lambda`-rank of the `Phi_level` part after forgetting the group action.
    pub fn contraction(&self, g: &FiniteAbelianGroup, level: usize) -> u64 {
        self.summands
            .iter()
            .filter(|s| s.level == level)
            .map(|s| s.multiplicity * g.irrep_dim(&s.tuple).expect("tuple of g"))
            .sum()
    }
}

fn decomposition(ea: &EAlphaTable, shift: impl Fn(usize) -> u64) -> EquivariantDecomposition {
    EquivariantDecomposition {
        summands: ea
            .entries()
            .filter_map(|(a, k, e)| {
                let m = e.saturating_sub(shift(k));
                (m > 0).then(|| Summand {
                    tuple: a.clone(),
                    level: k,
                    multiplicity: m,
                })
            })
            .collect(),
    }
}

/// Summands `(a, k, e_{a,k} - 1)` for each `e_{a,k} >= 2`.
pub fn equivariant_fine(ea: &EAlphaTable) -> EquivariantDecomposition {
    decomposition(ea, |_| 1)
}

/// `t_k^+` is 1 at odd `k`; `t_k^-` is 1 at even `k > 0`.
pub fn t_shift(k: usize, sign: Sign) -> u64 {
    u64::from(k > 0 && !sign.owns_level(k as u32))
}

/// Summands `(a, k, e_{a,k} - t_k^sign)` whenever positive.
pub fn equivariant_pm(ea: &EAlphaTable, sign: Sign) -> EquivariantDecomposition {
    decomposition(ea, |k| t_shift(k, sign))
}

/// Levels `n` with `e_n > 0` contribute `Phi_n^{e_n - 1}`, where `Phi_0 = x`.
pub fn greenberg_rhs(p: u64, e: &[u64]) -> CharIdeal {
    CharIdeal::from_exponents(
        p,
        0,
        e.iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(n, &x)| (n as u32, exp32(x - 1))),
    )
}

/// `x^{e_0} prod_{n>0, e_n>0} Phi_n^{e_n - 1}`.
pub fn kp_rhs(p: u64, e: &[u64]) -> CharIdeal {
    CharIdeal::from_exponents(
        p,
        0,
        e.iter().enumerate().map(|(n, &x)| {
            let exp = if n == 0 { x } else { x.saturating_sub(1) };
            (n as u32, exp32(exp))
        }),
    )
}

/// `x^t prod_{n>=1, e_n>1} Phi_n^{e_n - 1}`, defined for `t >= e_0`.
pub fn selmer_gcd(p: u64, e: &[u64], t: u64) -> Result<CharIdeal, StructureError> {
    let e0 = e.first().copied().unwrap_or(0);
    if t < e0 {
        return Err(StructureError::TBelowE0 { t, e0 });
    }
    Ok(CharIdeal::from_exponents(
        p,
        0,
        std::iter::once((0, exp32(t))).chain(
            e.iter()
                .enumerate()
                .skip(1)
                .map(|(n, &x)| (n as u32, exp32(x.saturating_sub(1)))),
        ),
    ))
}
