//! Finite abelian groups given as products of cyclic prime-power factors, the
//! lattice of index tuples naming their rational irreducible representations,
//! and the dimension formulas for those representations.
//!
//! A group `Z/p_1^{n_1} x ... x Z/p_r^{n_r}` has one rational irreducible
//! representation `W_a` per tuple `a = (a_1, ..., a_r)` with `0 <= a_i <= n_i`.
//! Its dimension is the product of `phi(p_i^{a_i})`, and `W_b` is fixed by the
//! subgroup `G_a = prod p_i^{a_i} Z/p_i^{n_i}` exactly when `b <= a`
//! componentwise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cyclic factor Z/{prime}^{exponent} must have exponent at least 1")]
    ZeroExponent { prime: u64, exponent: u32 },
    #[error(
        "prime {0} occurs in more than one factor; repeated primes need the explicit override"
    )]
    RepeatedPrime(u64),
    #[error("group order overflows 64 bits")]
    Overflow,
    #[error("index tuple has {got} entries but the group has {expected} factors")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index tuple entry {index} is {value}, above the factor exponent {max}")]
    EntryOutOfRange { index: usize, value: u32, max: u32 },
    #[error("cannot parse index tuple {0:?}")]
    BadTupleKey(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicFactor {
    pub prime: u64,
    pub exponent: u32,
}

impl CyclicFactor {
    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// `Z/p_1^{n_1} x ... x Z/p_r^{n_r}` with factors kept in input order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u32)>", into = "Vec<(u64, u32)>")]
pub struct FiniteAbelianGroup {
    factors: Vec<CyclicFactor>,
}

impl TryFrom<Vec<(u64, u32)>> for FiniteAbelianGroup {
    type Error = GroupError;
    fn try_from(v: Vec<(u64, u32)>) -> Result<Self, GroupError> {
        Self::with_repeated_primes(v)
    }
}

impl From<FiniteAbelianGroup> for Vec<(u64, u32)> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.factors.iter().map(|f| (f.prime, f.exponent)).collect()
    }
}

impl FiniteAbelianGroup {
    /// Builds a group whose factors have pairwise distinct primes.
    pub fn new(factors: impl IntoIterator<Item = (u64, u32)>) -> Result<Self, GroupError> {
        let g = Self::with_repeated_primes(factors)?;
        if let Some(p) = g.repeated_prime() {
            return Err(GroupError::RepeatedPrime(p));
        }
        Ok(g)
    }

    /// Builds a group allowing the same prime in several factors. The
    /// dimension formulas still apply, but the `W_a` need not be irreducible.
    pub fn with_repeated_primes(
        factors: impl IntoIterator<Item = (u64, u32)>,
    ) -> Result<Self, GroupError> {
        let factors: Vec<CyclicFactor> = factors
            .into_iter()
            .map(|(prime, exponent)| {
                if !arith::is_prime(prime) {
                    Err(GroupError::NotPrime(prime))
                } else if exponent == 0 {
                    Err(GroupError::ZeroExponent { prime, exponent })
                } else {
                    Ok(CyclicFactor { prime, exponent })
                }
            })
            .collect::<Result<_, _>>()?;
        let mut order = 1u64;
        for f in &factors {
            let q = f.prime.checked_pow(f.exponent).ok_or(GroupError::Overflow)?;
            order = order.checked_mul(q).ok_or(GroupError::Overflow)?;
        }
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    /// Number of cyclic factors (the length of every index tuple).
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(CyclicFactor::order).product()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.factors
            .iter()
            .fold(1, |acc, f| arith::lcm(acc, f.order()))
    }

    fn repeated_prime(&self) -> Option<u64> {
        let mut seen: Vec<u64> = self.factors.iter().map(|f| f.prime).collect();
        seen.sort_unstable();
        seen.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
    }

    pub fn has_distinct_support(&self) -> bool {
        self.repeated_prime().is_none()
    }

    /// Every index tuple, in lexicographic order of the entries.
    pub fn index_tuples(&self) -> Vec<IndexTuple> {
        let mut out = vec![IndexTuple(Vec::with_capacity(self.rank()))];
        for f in &self.factors {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..=f.exponent).map(move |a| {
                        let mut next = t.0.clone();
                        next.push(a);
                        IndexTuple(next)
                    })
                })
                .collect();
        }
        out
    }

    /// The tuple `(n_1, ..., n_r)`, whose subgroup `G_a` is trivial.
    pub fn maximal_tuple(&self) -> IndexTuple {
        IndexTuple(self.factors.iter().map(|f| f.exponent).collect())
    }

    pub fn check_tuple(&self, a: &IndexTuple) -> Result<(), GroupError> {
        if a.len() != self.rank() {
            return Err(GroupError::LengthMismatch {
                expected: self.rank(),
                got: a.len(),
            });
        }
        for (index, (&value, f)) in a.0.iter().zip(&self.factors).enumerate() {
            if value > f.exponent {
                return Err(GroupError::EntryOutOfRange {
                    index,
                    value,
                    max: f.exponent,
                });
            }
        }
        Ok(())
    }

    /// `dim W_a = prod phi(p_i^{a_i})`.
    pub fn irrep_dim(&self, a: &IndexTuple) -> Result<u64, GroupError> {
        self.check_tuple(a)?;
        Ok(a.0
            .iter()
            .zip(&self.factors)
            .map(|(&ai, f)| arith::prime_power_totient(f.prime, ai).expect("bounded by order"))
            .product())
    }

    pub fn irrep(&self, a: &IndexTuple) -> Result<IrrepDescriptor, GroupError> {
        Ok(IrrepDescriptor {
            dimension: self.irrep_dim(a)?,
            tuple: a.clone(),
        })
    }

    /// All irreducible representations with their dimensions.
    pub fn irreps(&self) -> Vec<IrrepDescriptor> {
        self.index_tuples()
            .into_iter()
            .map(|t| self.irrep(&t).expect("enumerated tuples are valid"))
            .collect()
    }

    /// `dim W_b^{G_a}`: all of `W_b` when `b <= a`, otherwise nothing.
    pub fn fixed_subspace_dim(&self, beta: &IndexTuple, alpha: &IndexTuple) -> Result<u64, GroupError> {
        self.check_tuple(alpha)?;
        let dim = self.irrep_dim(beta)?;
        Ok(if beta.leq(alpha)? { dim } else { 0 })
    }

    /// Order of `G / G_a`, that is `prod p_i^{a_i}`.
    pub fn quotient_order(&self, a: &IndexTuple) -> Result<u64, GroupError> {
        self.check_tuple(a)?;
        Ok(a.0
            .iter()
            .zip(&self.factors)
            .map(|(&ai, f)| f.prime.pow(ai))
            .product())
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, c) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            if c.exponent == 1 {
                write!(f, "Z/{}", c.prime)?;
            } else {
                write!(f, "Z/{}^{}", c.prime, c.exponent)?;
            }
        }
        Ok(())
    }
}

/// A point of the index lattice; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexTuple(pub Vec<u32>);

impl IndexTuple {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise `<=`.
    pub fn leq(&self, other: &IndexTuple) -> Result<bool, GroupError> {
        if self.len() != other.len() {
            return Err(GroupError::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// Strictly below in the partial order.
    pub fn lt(&self, other: &IndexTuple) -> Result<bool, GroupError> {
        Ok(self != other && self.leq(other)?)
    }

    /// Comma-joined entries, as used for rank-table keys. The empty tuple is `""`.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl FromStr for IndexTuple {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IndexTuple(Vec::new()));
        }
        s.split(',')
            .map(|part| part.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(IndexTuple)
            .map_err(|_| GroupError::BadTupleKey(s.to_string()))
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrrepDescriptor {
    pub tuple: IndexTuple,
    pub dimension: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(v: &[u32]) -> IndexTuple {
        IndexTuple(v.to_vec())
    }

    #[test]
    fn enumerates_lexicographically() {
        let g = FiniteAbelianGroup::new([(2, 1)]).unwrap();
        assert_eq!(g.index_tuples(), vec![t(&[0]), t(&[1])]);
        let g = FiniteAbelianGroup::new([(2, 2)]).unwrap();
        assert_eq!(g.index_tuples(), vec![t(&[0]), t(&[1]), t(&[2])]);
        let g = FiniteAbelianGroup::new([(2, 1), (3, 1)]).unwrap();
        assert_eq!(
            g.index_tuples(),
            vec![t(&[0, 0]), t(&[0, 1]), t(&[1, 0]), t(&[1, 1])]
        );
        assert_eq!(FiniteAbelianGroup::trivial().index_tuples(), vec![t(&[])]);
    }

    #[test]
    fn partial_order() {
        assert!(t(&[0, 1]).leq(&t(&[1, 1])).unwrap());
        assert!(!t(&[2]).leq(&t(&[1])).unwrap());
        assert!(!t(&[1, 0]).leq(&t(&[0, 1])).unwrap());
        assert!(!t(&[0, 1]).leq(&t(&[1, 0])).unwrap());
        assert!(matches!(
            t(&[0]).leq(&t(&[0, 0])),
            Err(GroupError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn dimensions() {
        let g = FiniteAbelianGroup::new([(3, 2)]).unwrap();
        assert_eq!(g.irrep_dim(&t(&[0])).unwrap(), 1);
        assert_eq!(g.irrep_dim(&t(&[2])).unwrap(), 6);
        let g = FiniteAbelianGroup::new([(2, 2), (3, 1)]).unwrap();
        assert_eq!(g.irrep_dim(&t(&[2, 1])).unwrap(), 4);
        assert!(matches!(
            g.irrep_dim(&t(&[3, 0])),
            Err(GroupError::EntryOutOfRange { .. })
        ));
        assert!(matches!(
            g.irrep_dim(&t(&[1])),
            Err(GroupError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn fixed_subspaces() {
        let g = FiniteAbelianGroup::new([(2, 2)]).unwrap();
        assert_eq!(g.fixed_subspace_dim(&t(&[0]), &t(&[0])).unwrap(), 1);
        assert_eq!(g.fixed_subspace_dim(&t(&[2]), &t(&[1])).unwrap(), 0);
        let g = FiniteAbelianGroup::new([(2, 1), (3, 1)]).unwrap();
        assert_eq!(g.fixed_subspace_dim(&t(&[1, 1]), &t(&[1, 1])).unwrap(), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FiniteAbelianGroup::new([(4, 1)]),
            Err(GroupError::NotPrime(4))
        );
        assert!(matches!(
            FiniteAbelianGroup::new([(3, 0)]),
            Err(GroupError::ZeroExponent { .. })
        ));
        assert_eq!(
            FiniteAbelianGroup::new([(3, 1), (3, 1)]),
            Err(GroupError::RepeatedPrime(3))
        );
        assert!(FiniteAbelianGroup::with_repeated_primes([(3, 1), (3, 1)]).is_ok());
        assert_eq!(
            FiniteAbelianGroup::new([(2, 70)]),
            Err(GroupError::Overflow)
        );
    }

    #[test]
    fn order_and_exponent() {
        let g = FiniteAbelianGroup::new([(2, 2), (3, 1)]).unwrap();
        assert_eq!((g.order(), g.exponent()), (12, 12));
        let g = FiniteAbelianGroup::with_repeated_primes([(3, 1), (3, 2)]).unwrap();
        assert_eq!((g.order(), g.exponent()), (27, 9));
        assert_eq!(FiniteAbelianGroup::trivial().exponent(), 1);
    }

    #[test]
    fn tuple_keys() {
        assert_eq!(t(&[1, 0, 2]).key(), "1,0,2");
        assert_eq!("1, 0,2".parse::<IndexTuple>().unwrap(), t(&[1, 0, 2]));
        assert_eq!("".parse::<IndexTuple>().unwrap(), t(&[]));
        assert!("1,x".parse::<IndexTuple>().is_err());
    }

    fn small_group() -> impl Strategy<Value = FiniteAbelianGroup> {
        prop::sample::subsequence(vec![2u64, 3, 5, 7, 11], 0..=3)
            .prop_flat_map(|primes| {
                let n = primes.len();
                (Just(primes), prop::collection::vec(1u32..=3, n))
            })
            .prop_map(|(primes, exps)| {
                FiniteAbelianGroup::new(primes.into_iter().zip(exps)).unwrap()
            })
    }

    proptest! {
        #[test]
        fn regular_representation_dimension(g in small_group()) {
            let tuples = g.index_tuples();
            let expected: usize = g.factors().iter().map(|f| f.exponent as usize + 1).product();
            prop_assert_eq!(tuples.len(), expected);
            let mut dedup = tuples.clone();
            dedup.dedup();
            prop_assert_eq!(dedup.len(), tuples.len());
            let sum: u64 = tuples.iter().map(|a| g.irrep_dim(a).unwrap()).sum();
            prop_assert_eq!(sum, g.order());
        }

        #[test]
        fn fixed_dimension_count(g in small_group()) {
            let tuples = g.index_tuples();
            for a in &tuples {
                let below: u64 = tuples
                    .iter()
                    .map(|b| g.fixed_subspace_dim(b, a).unwrap())
                    .sum();
                prop_assert_eq!(below, g.quotient_order(a).unwrap());
            }
        }

        #[test]
        fn leq_is_partial_order(
            a in prop::collection::vec(0u32..3, 3),
            b in prop::collection::vec(0u32..3, 3),
            c in prop::collection::vec(0u32..3, 3),
        ) {
            let (a, b, c) = (IndexTuple(a), IndexTuple(b), IndexTuple(c));
            prop_assert!(a.leq(&a).unwrap());
            if a.leq(&b).unwrap() && b.leq(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if a.leq(&b).unwrap() && b.leq(&c).unwrap() {
                prop_assert!(a.leq(&c).unwrap());
            }
        }
    }
}
