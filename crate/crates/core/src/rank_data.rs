//! Rank-growth tables `rk E(K_(n)^{G_a})`, the multiplicities `e_{a,k}`
//! solved from them by the inductive formula, and the per-level summary
//! `(e_n, theta_n, s_n)` that the structure theorems consume.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::group::{FiniteAbelianGroup, GroupError, IndexTuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("missing tuple row {0}")]
    MissingRow(IndexTuple),
    #[error("row {tuple} has length {got}, expected {expected}")]
    RowLength {
        tuple: IndexTuple,
        expected: usize,
        got: usize,
    },
    #[error("non-monotone ranks: row {tuple} decreases at level {n}")]
    NonMonotoneLevel { tuple: IndexTuple, n: usize },
    #[error("non-monotone ranks along the lattice: {lower} <= {upper} but rank drops at level {n}")]
    NonMonotoneLattice {
        lower: IndexTuple,
        upper: IndexTuple,
        n: usize,
    },
    #[error("table has no levels")]
    NoLevels,
    #[error("inexact division solving e at {tuple}, level {n}")]
    Inexact { tuple: IndexTuple, n: usize },
    #[error("negative multiplicity solving e at {tuple}, level {n}")]
    Negative { tuple: IndexTuple, n: usize },
    #[error("negative s at level {n}")]
    NegativeS { n: usize },
    #[error("level {requested} is beyond the table's last level {available}")]
    LevelOutOfRange { requested: usize, available: usize },
}

fn phi_level(p: u64, n: usize) -> u64 {
    arith::prime_power_totient(p, n as u32).expect("level small enough")
}

fn check_rows<T>(
    g: &FiniteAbelianGroup,
    rows: &BTreeMap<IndexTuple, Vec<T>>,
) -> Result<usize, RankError> {
    for a in rows.keys() {
        g.check_tuple(a)?;
    }
    let tuples = g.index_tuples();
    let levels = rows
        .get(&tuples[0])
        .ok_or_else(|| RankError::MissingRow(tuples[0].clone()))?
        .len();
    if levels == 0 {
        return Err(RankError::NoLevels);
    }
    for a in &tuples {
        let row = rows.get(a).ok_or_else(|| RankError::MissingRow(a.clone()))?;
        if row.len() != levels {
            return Err(RankError::RowLength {
                tuple: a.clone(),
                expected: levels,
                got: row.len(),
            });
        }
    }
    Ok(levels)
}

/// `ranks[a][n] = rk E(K_(n)^{G_a})` for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTable {
    ranks: BTreeMap<IndexTuple, Vec<u64>>,
    levels: usize,
}

impl RankTable {
    /// Validates shape and monotonicity: a row for every tuple, equal
    /// lengths, nondecreasing in `n`, and nondecreasing along the lattice.
    pub fn new(
        g: &FiniteAbelianGroup,
        ranks: BTreeMap<IndexTuple, Vec<u64>>,
    ) -> Result<Self, RankError> {
        let levels = check_rows(g, &ranks)?;
        let tuples = g.index_tuples();
        for a in &tuples {
            let row = &ranks[a];
            if let Some(n) = (1..levels).find(|&n| row[n] < row[n - 1]) {
                return Err(RankError::NonMonotoneLevel {
                    tuple: a.clone(),
                    n,
                });
            }
        }
        for lower in &tuples {
            for upper in &tuples {
                if lower != upper && lower.leq(upper)? {
                    if let Some(n) = (0..levels).find(|&n| ranks[lower][n] > ranks[upper][n]) {
                        return Err(RankError::NonMonotoneLattice {
                            lower: lower.clone(),
                            upper: upper.clone(),
                            n,
                        });
                    }
                }
            }
        }
        Ok(Self { ranks, levels })
    }

    /// Number of levels `N + 1`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn row(&self, a: &IndexTuple) -> Option<&[u64]> {
        self.ranks.get(a).map(Vec::as_slice)
    }

    pub fn rows(&self) -> &BTreeMap<IndexTuple, Vec<u64>> {
        &self.ranks
    }

    /// The table cut down to levels `0..=max_level`.
    pub fn truncate(&self, max_level: usize) -> Result<Self, RankError> {
        if max_level >= self.levels {
            return Err(RankError::LevelOutOfRange {
                requested: max_level,
                available: self.levels - 1,
            });
        }
        Ok(Self {
            ranks: self
                .ranks
                .iter()
                .map(|(a, r)| (a.clone(), r[..=max_level].to_vec()))
                .collect(),
            levels: max_level + 1,
        })
    }
}

/// Multiplicities `e_{a,k}`, one row of levels per tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EAlphaTable {
    values: BTreeMap<IndexTuple, Vec<u64>>,
    levels: usize,
}

impl EAlphaTable {
    pub fn new(
        g: &FiniteAbelianGroup,
        values: BTreeMap<IndexTuple, Vec<u64>>,
    ) -> Result<Self, RankError> {
        let levels = check_rows(g, &values)?;
        Ok(Self { values, levels })
    }

    /// The table with every entry zero.
    pub fn zeros(g: &FiniteAbelianGroup, levels: usize) -> Self {
        Self {
            values: g
                .index_tuples()
                .into_iter()
                .map(|a| (a, vec![0; levels]))
                .collect(),
            levels,
        }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn get(&self, a: &IndexTuple, k: usize) -> u64 {
        self.values.get(a).and_then(|r| r.get(k)).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> &BTreeMap<IndexTuple, Vec<u64>> {
        &self.values
    }

    /// Nonzero entries as `(tuple, level, value)` in tuple-then-level order.
    pub fn entries(&self) -> impl Iterator<Item = (&IndexTuple, usize, u64)> {
        self.values
            .iter()
            .flat_map(|(a, row)| row.iter().enumerate().map(move |(k, &e)| (a, k, e)))
            .filter(|&(_, _, e)| e > 0)
    }
}

/// Solves the inductive formula
/// `e_{a,n} dim W_a = (rk_a[n] - rk_a[n-1]) / phi(p^n) - sum_{b < a} e_{b,n} dim W_b`
/// with `rk_a[-1] = 0` and `phi(p^0) = 1`, visiting tuples in lexicographic
/// order. Fails at the first `(a, n)` where a division is inexact or the
/// result is negative.
pub fn solve_e_alpha(
    g: &FiniteAbelianGroup,
    p: u64,
    t: &RankTable,
) -> Result<EAlphaTable, RankError> {
    let tuples = g.index_tuples();
    let dims: Vec<i128> = tuples
        .iter()
        .map(|a| i128::from(g.irrep_dim(a).expect("enumerated")))
        .collect();
    let mut values: BTreeMap<IndexTuple, Vec<u64>> = BTreeMap::new();
    for (ai, a) in tuples.iter().enumerate() {
        let row = t.row(a).ok_or_else(|| RankError::MissingRow(a.clone()))?;
        let mut out = Vec::with_capacity(t.levels);
        for n in 0..t.levels {
            let prev = if n == 0 { 0 } else { i128::from(row[n - 1]) };
            let jump = i128::from(row[n]) - prev;
            let phi = i128::from(phi_level(p, n));
            if jump % phi != 0 {
                return Err(RankError::Inexact { tuple: a.clone(), n });
            }
            let mut rest = jump / phi;
            for (bi, b) in tuples[..ai].iter().enumerate() {
                if b.lt(a)? {
                    rest -= i128::from(values[b][n]) * dims[bi];
                }
            }
            if rest % dims[ai] != 0 {
                return Err(RankError::Inexact { tuple: a.clone(), n });
            }
            let e = rest / dims[ai];
            if e < 0 {
                return Err(RankError::Negative { tuple: a.clone(), n });
            }
            out.push(e as u64);
        }
        values.insert(a.clone(), out);
    }
    Ok(EAlphaTable {
        values,
        levels: t.levels,
    })
}

/// `rk_a[n] = sum_{b <= a} sum_{k <= n} e_{b,k} dim W_b phi(p^k)`.
pub fn synthesize_rank_table(g: &FiniteAbelianGroup, p: u64, ea: &EAlphaTable) -> RankTable {
    let tuples = g.index_tuples();
    let ranks = tuples
        .iter()
        .map(|a| {
            let mut row = Vec::with_capacity(ea.levels);
            let mut acc = 0u64;
            for n in 0..ea.levels {
                for b in &tuples {
                    if b.leq(a).expect("same group") {
                        acc += ea.get(b, n) * g.irrep_dim(b).expect("enumerated") * phi_level(p, n);
                    }
                }
                row.push(acc);
            }
            (a.clone(), row)
        })
        .collect();
    RankTable {
        ranks,
        levels: ea.levels,
    }
}

/// `e_n = (rk[n] - rk[n-1]) / phi(p^n)` from a single row, normally the row
/// of the maximal tuple, which holds the ranks over `K_(n)` itself.
pub fn e_from_ranks(p: u64, row: &[u64]) -> Result<Vec<u64>, RankError> {
    let top = IndexTuple(Vec::new());
    (0..row.len())
        .map(|n| {
            let prev = if n == 0 { 0 } else { row[n - 1] };
            let jump = row[n]
                .checked_sub(prev)
                .ok_or(RankError::NonMonotoneLevel { tuple: top.clone(), n })?;
            let phi = phi_level(p, n);
            if jump % phi != 0 {
                return Err(RankError::Inexact { tuple: top.clone(), n });
            }
            Ok(jump / phi)
        })
        .collect()
}

/// Per-level rank growth: `e_n`, `theta_n` and `s_n = e_n - theta_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSummary {
    pub e: Vec<u64>,
    pub theta: Vec<u64>,
    pub s: Vec<u64>,
}

impl GrowthSummary {
    /// Builds a summary from `e` and `theta`, rejecting `theta_n > e_n`.
    pub fn new(e: Vec<u64>, theta: Vec<u64>) -> Result<Self, RankError> {
        assert_eq!(e.len(), theta.len(), "e and theta must have equal length");
        let s = e
            .iter()
            .zip(&theta)
            .enumerate()
            .map(|(n, (&e, &t))| e.checked_sub(t).ok_or(RankError::NegativeS { n }))
            .collect::<Result<_, _>>()?;
        Ok(Self { e, theta, s })
    }

    /// Over `Q` the only representation is trivial, so `theta_n = 1` exactly
    /// when `e_n > 0`.
    pub fn for_rationals(e: Vec<u64>) -> Self {
        let theta = e.iter().map(|&x| u64::from(x > 0)).collect();
        Self::new(e, theta).expect("theta_n <= e_n")
    }

    pub fn levels(&self) -> usize {
        self.e.len()
    }
}

/// `e_n = sum_a e_{a,n} dim W_a` and `theta_n = sum_{a : e_{a,n} > 0} dim W_a`.
pub fn growth_summary(g: &FiniteAbelianGroup, ea: &EAlphaTable) -> Result<GrowthSummary, RankError> {
    let mut e = vec![0u64; ea.levels];
    let mut theta = vec![0u64; ea.levels];
    for (a, row) in &ea.values {
        let d = g.irrep_dim(a)?;
        for (n, &v) in row.iter().enumerate() {
            e[n] += v * d;
            if v > 0 {
                theta[n] += d;
            }
        }
    }
    GrowthSummary::new(e, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(v: &[u32]) -> IndexTuple {
        IndexTuple(v.to_vec())
    }

    fn table(g: &FiniteAbelianGroup, rows: &[(&[u32], &[u64])]) -> Result<RankTable, RankError> {
        RankTable::new(
            g,
            rows.iter().map(|(a, r)| (t(a), r.to_vec())).collect(),
        )
    }

    #[test]
    fn rationals() {
        let g = FiniteAbelianGroup::trivial();
        let tab = table(&g, &[(&[], &[1, 3, 3])]).unwrap();
        let ea = solve_e_alpha(&g, 3, &tab).unwrap();
        assert_eq!(ea.rows()[&t(&[])], vec![1, 1, 0]);
        let gs = growth_summary(&g, &ea).unwrap();
        assert_eq!(gs, GrowthSummary::for_rationals(vec![1, 1, 0]));
        assert_eq!(gs.theta, vec![1, 1, 0]);
    }

    #[test]
    fn quadratic_field() {
        let g = FiniteAbelianGroup::new([(2, 1)]).unwrap();
        let tab = table(&g, &[(&[0], &[0, 0]), (&[1], &[1, 3])]).unwrap();
        let ea = solve_e_alpha(&g, 3, &tab).unwrap();
        assert_eq!(ea.rows()[&t(&[0])], vec![0, 0]);
        assert_eq!(ea.rows()[&t(&[1])], vec![1, 1]);
        let gs = growth_summary(&g, &ea).unwrap();
        assert_eq!((gs.e, gs.theta, gs.s), (vec![1, 1], vec![1, 1], vec![0, 0]));
        assert_eq!(synthesize_rank_table(&g, 3, &ea), tab);
    }

    #[test]
    fn inexact_jump() {
        let g = FiniteAbelianGroup::trivial();
        let tab = table(&g, &[(&[], &[1, 2])]).unwrap();
        assert_eq!(
            solve_e_alpha(&g, 3, &tab),
            Err(RankError::Inexact { tuple: t(&[]), n: 1 })
        );
    }

    #[test]
    fn negative_multiplicity() {
        // Monotone table whose top row grows less than its sub-rows force.
        let g = FiniteAbelianGroup::new([(2, 1), (3, 1)]).unwrap();
        let tab = table(
            &g,
            &[
                (&[0, 0], &[0, 4]),
                (&[0, 1], &[0, 20]),
                (&[1, 0], &[0, 12]),
                (&[1, 1], &[0, 20]),
            ],
        )
        .unwrap();
        assert_eq!(
            solve_e_alpha(&g, 5, &tab),
            Err(RankError::Negative { tuple: t(&[1, 1]), n: 1 })
        );
        let g = FiniteAbelianGroup::new([(3, 1)]).unwrap();
        let tab = table(&g, &[(&[0], &[1, 1]), (&[1], &[2, 2])]).unwrap();
        assert_eq!(
            solve_e_alpha(&g, 5, &tab),
            Err(RankError::Inexact { tuple: t(&[1]), n: 0 })
        );
    }

    #[test]
    fn shape_errors() {
        let g = FiniteAbelianGroup::new([(2, 1), (3, 1)]).unwrap();
        let r = table(&g, &[(&[0, 0], &[0]), (&[0, 1], &[0]), (&[1, 1], &[0])]);
        assert_eq!(r, Err(RankError::MissingRow(t(&[1, 0]))));
        let g = FiniteAbelianGroup::new([(2, 1)]).unwrap();
        assert!(matches!(
            table(&g, &[(&[0], &[0, 0]), (&[1], &[1])]),
            Err(RankError::RowLength { .. })
        ));
        assert!(matches!(
            table(&g, &[(&[0], &[0, 0]), (&[1], &[3, 1])]),
            Err(RankError::NonMonotoneLevel { n: 1, .. })
        ));
        assert!(matches!(
            table(&g, &[(&[0], &[2, 2]), (&[1], &[1, 3])]),
            Err(RankError::NonMonotoneLattice { n: 0, .. })
        ));
    }

    #[test]
    fn synthesis_examples() {
        let g = FiniteAbelianGroup::trivial();
        let ea = EAlphaTable::new(&g, [(t(&[]), vec![1, 1])].into()).unwrap();
        assert_eq!(synthesize_rank_table(&g, 3, &ea).row(&t(&[])).unwrap(), &[1, 3]);
        let g = FiniteAbelianGroup::new([(2, 1), (5, 1)]).unwrap();
        let zero = synthesize_rank_table(&g, 3, &EAlphaTable::zeros(&g, 3));
        assert!(zero.rows().values().all(|r| r.iter().all(|&x| x == 0)));
    }

    #[test]
    fn e_from_top_row() {
        assert_eq!(e_from_ranks(3, &[1, 3, 3]).unwrap(), vec![1, 1, 0]);
        assert!(e_from_ranks(3, &[1, 2]).is_err());
    }

    fn instance() -> impl Strategy<Value = (FiniteAbelianGroup, u64, EAlphaTable)> {
        let groups = prop::sample::select(vec![
            vec![],
            vec![(2u64, 1u32)],
            vec![(2, 2)],
            vec![(5, 1)],
            vec![(2, 1), (5, 1)],
            vec![(2, 1), (7, 1)],
            vec![(2, 3)],
        ]);
        (groups, prop::sample::select(vec![3u64, 5, 7]), 1usize..=5).prop_flat_map(|(f, p, levels)| {
            let g = FiniteAbelianGroup::new(f).unwrap();
            let k = g.index_tuples().len();
            (
                Just(g),
                Just(p),
                prop::collection::vec(prop::collection::vec(0u64..=3, levels), k),
            )
        })
        .prop_map(|(g, p, rows)| {
            let values = g.index_tuples().into_iter().zip(rows).collect();
            let ea = EAlphaTable::new(&g, values).unwrap();
            (g, p, ea)
        })
    }

    proptest! {
        #[test]
        fn round_trip((g, p, ea) in instance()) {
            let tab = synthesize_rank_table(&g, p, &ea);
            // Synthesized tables always pass validation.
            let tab = RankTable::new(&g, tab.rows().clone()).unwrap();
            prop_assert_eq!(solve_e_alpha(&g, p, &tab).unwrap(), ea);
        }

        #[test]
        fn top_row_matches_quick_observation((g, p, ea) in instance()) {
            let tab = synthesize_rank_table(&g, p, &ea);
            let top = tab.row(&g.maximal_tuple()).unwrap();
            let gs = growth_summary(&g, &ea).unwrap();
            prop_assert_eq!(e_from_ranks(p, top).unwrap(), gs.e);
        }

        #[test]
        fn theta_over_rationals(e in prop::collection::vec(0u64..5, 1..6)) {
            let gs = GrowthSummary::for_rationals(e.clone());
            for (n, &x) in e.iter().enumerate() {
                prop_assert_eq!(gs.theta[n] == 1, x > 0);
            }
        }
    }
}
