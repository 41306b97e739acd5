//! Brute-force model of the rational group algebra `Q[G]`, used to check the
//! dimension and fixed-space formulas of [`crate::group`] independently.
//!
//! Group elements are numbered in mixed radix over the factor orders, each
//! generator acts on `Q[G]` as a permutation of that basis, and every
//! subspace is produced by exact integer elimination. Nothing here consults
//! the closed-form formulas.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteAbelianGroup, GroupError, IndexTuple};
use crate::linalg::IntMatrix;

/// Largest group order the model accepts by default.
pub const DEFAULT_MAX_ORDER: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group of order {order} exceeds the oracle limit {limit}")]
    TooLarge { order: u64, limit: u64 },
    #[error("factor primes repeat; the fixed-space oracle needs distinct primes unless overridden")]
    RepeatedPrimes,
}

/// `Q[G]` with the generator actions as permutations of the element basis.
#[derive(Debug, Clone)]
pub struct GroupAlgebraModel {
    group: FiniteAbelianGroup,
    radices: Vec<u64>,
    order: usize,
    /// `generators[i][e]` is the index of `sigma_i * e`.
    generators: Vec<Vec<usize>>,
}

impl GroupAlgebraModel {
    pub fn new(group: &FiniteAbelianGroup) -> Result<Self, OracleError> {
        Self::with_limit(group, DEFAULT_MAX_ORDER)
    }

    pub fn with_limit(group: &FiniteAbelianGroup, limit: u64) -> Result<Self, OracleError> {
        let order = group.order();
        if order > limit {
            return Err(OracleError::TooLarge { order, limit });
        }
        let radices: Vec<u64> = group.factors().iter().map(|f| f.order()).collect();
        let mut model = Self {
            group: group.clone(),
            radices,
            order: order as usize,
            generators: Vec::new(),
        };
        model.generators = (0..model.radices.len())
            .map(|i| {
                let mut shift = vec![0; model.radices.len()];
                shift[i] = 1;
                model.translation(&shift)
            })
            .collect();
        Ok(model)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.order
    }

    /// The permutation of `sigma_i`.
    pub fn generator(&self, i: usize) -> &[usize] {
        &self.generators[i]
    }

    fn coords(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &m) in out.iter_mut().zip(&self.radices).rev() {
            *slot = index as u64 % m;
            index /= m as usize;
        }
        out
    }

    fn index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.radices)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + (c % m) as usize)
    }

    /// Permutation of the basis given by multiplication with the element
    /// whose coordinates are `shift`.
    pub fn translation(&self, shift: &[u64]) -> Vec<usize> {
        (0..self.order)
            .map(|e| {
                let c: Vec<u64> = self
                    .coords(e)
                    .iter()
                    .zip(shift)
                    .map(|(a, b)| a + b)
                    .collect();
                self.index(&c)
            })
            .collect()
    }

    /// Matrix of `sum_k c_k sigma_i^k` on `Q[G]`.
    fn generator_polynomial(&self, i: usize, coeffs: &[(u64, i64)]) -> IntMatrix {
        let n = self.order;
        let mut m = IntMatrix::zeros(n, n);
        for &(k, c) in coeffs {
            let mut shift = vec![0; self.radices.len()];
            shift[i] = k;
            let perm = self.translation(&shift);
            // sigma^k sends basis vector e to perm[e].
            for (e, &image) in perm.iter().enumerate() {
                *m.get_mut(image, e) += c;
            }
        }
        m
    }

    /// Basis of the isotypic component `W_beta`: the common kernel over all
    /// factors of `x - 1` (when `beta_i = 0`) or of
    /// `1 + x^{q} + ... + x^{(p-1)q}` with `q = p^{beta_i - 1}`, evaluated at `sigma_i`.
    pub fn isotypic_basis(&self, beta: &IndexTuple) -> Result<Vec<Vec<BigInt>>, OracleError> {
        self.group.check_tuple(beta)?;
        let n = self.order;
        let mut stacked = IntMatrix::zeros(0, n);
        for (i, (&b, f)) in beta.entries().iter().zip(self.group.factors()).enumerate() {
            let coeffs: Vec<(u64, i64)> = if b == 0 {
                vec![(0, -1), (1, 1)]
            } else {
                let q = f.prime.pow(b - 1);
                (0..f.prime).map(|k| (k * q, 1)).collect()
            };
            stacked.append_rows(&self.generator_polynomial(i, &coeffs));
        }
        Ok(stacked.kernel_basis())
    }

    /// Dimension of the subspace of `span(basis)` fixed by every element of
    /// `elements` (given as coordinate shifts).
    pub fn fixed_dimension(&self, basis: &[Vec<BigInt>], elements: &[Vec<u64>]) -> usize {
        let d = basis.len();
        if d == 0 {
            return 0;
        }
        // Transposed layout: one row per basis vector, holding (g - 1) v for each g.
        let perms: Vec<Vec<usize>> = elements
            .iter()
            .map(|s| self.translation(s))
            .filter(|p| p.iter().enumerate().any(|(e, &x)| e != x))
            .collect();
        if perms.is_empty() {
            return d;
        }
        let width = perms.len() * self.order;
        let rows: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|v| {
                let mut row = vec![BigInt::zero(); width];
                for (g, perm) in perms.iter().enumerate() {
                    let block = &mut row[g * self.order..(g + 1) * self.order];
                    for (e, &image) in perm.iter().enumerate() {
                        block[image] += &v[e];
                    }
                    for (slot, x) in block.iter_mut().zip(v) {
                        *slot -= x;
                    }
                }
                row
            })
            .collect();
        d - IntMatrix::from_rows(rows, width).rank()
    }

    /// Generators `sigma_i^{p_i^{alpha_i}}` of `G_alpha`, as coordinate shifts.
    pub fn subgroup_generators(&self, alpha: &IndexTuple) -> Result<Vec<Vec<u64>>, OracleError> {
        self.group.check_tuple(alpha)?;
        Ok(alpha
            .entries()
            .iter()
            .zip(self.group.factors())
            .enumerate()
            .map(|(i, (&a, f))| {
                let mut shift = vec![0; self.radices.len()];
                shift[i] = f.prime.pow(a);
                shift
            })
            .collect())
    }

    /// `dim W_beta^{G_alpha}` computed from the model. Requires distinct primes.
    pub fn fixed_subspace_dim(&self, beta: &IndexTuple, alpha: &IndexTuple) -> Result<u64, OracleError> {
        if !self.group.has_distinct_support() {
            return Err(OracleError::RepeatedPrimes);
        }
        self.fixed_subspace_dim_unchecked(beta, alpha)
    }

    /// As [`Self::fixed_subspace_dim`] but also accepts repeated primes.
    pub fn fixed_subspace_dim_unchecked(
        &self,
        beta: &IndexTuple,
        alpha: &IndexTuple,
    ) -> Result<u64, OracleError> {
        let basis = self.isotypic_basis(beta)?;
        let gens = self.subgroup_generators(alpha)?;
        Ok(self.fixed_dimension(&basis, &gens) as u64)
    }

    /// One generator for each distinct cyclic subgroup of `G`.
    pub fn cyclic_subgroup_generators(&self) -> Vec<Vec<u64>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for h in 0..self.order {
            let step = self.translation(&self.coords(h));
            let mut members = vec![0usize];
            let mut cur = step[0];
            while cur != 0 {
                members.push(cur);
                cur = step[cur];
            }
            members.sort_unstable();
            if seen.insert(members) {
                out.push(self.coords(h));
            }
        }
        out
    }

    /// Checks `Q[G] = sum_alpha W_alpha` and decides irreducibility of each
    /// `W_alpha` over `Q`.
    ///
    /// A `Q[G]`-stable subspace of `Q[G]` is a sum of simple summands
    /// attached to distinct orbits of characters, and a summand fixed
    /// pointwise by a cyclic subgroup is fixed by it entirely. So `W_alpha`
    /// is irreducible exactly when every cyclic subgroup fixes either all of
    /// it or none of it; otherwise the fixed part is a proper submodule and
    /// the offending element is returned as a witness.
    pub fn decompose(&self) -> RegularDecompositionReport {
        let cyclic = self.cyclic_subgroup_generators();
        let mut components = Vec::new();
        let mut total = 0u64;
        for alpha in self.group.index_tuples() {
            let formula = self.group.irrep_dim(&alpha).expect("enumerated tuple");
            let basis = self.isotypic_basis(&alpha).expect("enumerated tuple");
            let dim = basis.len() as u64;
            total += dim;
            let witness = cyclic.iter().find_map(|h| {
                let fixed = self.fixed_dimension(&basis, std::slice::from_ref(h)) as u64;
                (fixed != 0 && fixed != dim).then(|| ReducibilityWitness {
                    element: h.clone(),
                    fixed_dimension: fixed,
                })
            });
            components.push(ComponentVerdict {
                tuple: alpha,
                formula_dimension: formula,
                oracle_dimension: dim,
                irreducible: witness.is_none(),
                witness,
            });
        }
        let order = self.group.order();
        RegularDecompositionReport {
            group: self.group.clone(),
            order,
            formula_dimension_sum: self.group.irreps().iter().map(|w| w.dimension).sum(),
            oracle_dimension_sum: total,
            all_irreducible: components.iter().all(|c| c.irreducible),
            components,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityWitness {
    /// Coordinates of an element whose cyclic subgroup fixes a proper nonzero subspace.
    pub element: Vec<u64>,
    pub fixed_dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub tuple: IndexTuple,
    pub formula_dimension: u64,
    pub oracle_dimension: u64,
    pub irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ReducibilityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularDecompositionReport {
    pub group: FiniteAbelianGroup,
    pub order: u64,
    pub formula_dimension_sum: u64,
    pub oracle_dimension_sum: u64,
    pub all_irreducible: bool,
    pub components: Vec<ComponentVerdict>,
}

impl RegularDecompositionReport {
    /// Both dimension sums equal `|G|` and every component matches its formula.
    pub fn dimensions_consistent(&self) -> bool {
        self.formula_dimension_sum == self.order
            && self.oracle_dimension_sum == self.order
            && self
                .components
                .iter()
                .all(|c| c.formula_dimension == c.oracle_dimension)
    }

    pub fn reducible(&self) -> impl Iterator<Item = &ComponentVerdict> {
        self.components.iter().filter(|c| !c.irreducible)
    }
}

/// Model-based `dim W_beta^{G_alpha}` for a group with distinct primes.
pub fn oracle_fixed_subspace_dim(
    group: &FiniteAbelianGroup,
    beta: &IndexTuple,
    alpha: &IndexTuple,
) -> Result<u64, OracleError> {
    GroupAlgebraModel::new(group)?.fixed_subspace_dim(beta, alpha)
}

/// Dimension and irreducibility report for `Q[G]`.
pub fn verify_regular_decomposition(
    group: &FiniteAbelianGroup,
) -> Result<RegularDecompositionReport, OracleError> {
    Ok(GroupAlgebraModel::new(group)?.decompose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u32]) -> IndexTuple {
        IndexTuple(v.to_vec())
    }

    #[test]
    fn order_two_all_pairs() {
        let g = FiniteAbelianGroup::new([(2, 1)]).unwrap();
        let model = GroupAlgebraModel::new(&g).unwrap();
        for b in g.index_tuples() {
            for a in g.index_tuples() {
                assert_eq!(
                    model.fixed_subspace_dim(&b, &a).unwrap(),
                    g.fixed_subspace_dim(&b, &a).unwrap()
                );
            }
        }
    }

    #[test]
    fn order_six_top_component() {
        let g = FiniteAbelianGroup::new([(2, 1), (3, 1)]).unwrap();
        assert_eq!(
            oracle_fixed_subspace_dim(&g, &t(&[1, 1]), &t(&[1, 1])).unwrap(),
            2
        );
    }

    #[test]
    fn norm_element_kills_nontrivial_component() {
        let g = FiniteAbelianGroup::new([(5, 1)]).unwrap();
        assert_eq!(oracle_fixed_subspace_dim(&g, &t(&[1]), &t(&[0])).unwrap(), 0);
    }

    #[test]
    fn decomposition_of_order_six() {
        let g = FiniteAbelianGroup::new([(2, 1), (3, 1)]).unwrap();
        let r = verify_regular_decomposition(&g).unwrap();
        assert!(r.dimensions_consistent());
        assert_eq!(r.oracle_dimension_sum, 6);
        assert_eq!(r.components.len(), 4);
        assert!(r.all_irreducible);
    }

    #[test]
    fn decomposition_of_trivial_group() {
        let r = verify_regular_decomposition(&FiniteAbelianGroup::trivial()).unwrap();
        assert_eq!(r.oracle_dimension_sum, 1);
        assert!(r.all_irreducible && r.dimensions_consistent());
    }

    #[test]
    fn repeated_prime_component_splits() {
        let g = FiniteAbelianGroup::with_repeated_primes([(3, 1), (3, 1)]).unwrap();
        let r = verify_regular_decomposition(&g).unwrap();
        assert!(r.dimensions_consistent());
        let bad: Vec<_> = r.reducible().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].tuple, t(&[1, 1]));
        assert_eq!(bad[0].oracle_dimension, 4);
        assert_eq!(bad[0].witness.as_ref().unwrap().fixed_dimension, 2);
        let model = GroupAlgebraModel::new(&g).unwrap();
        assert_eq!(
            model.fixed_subspace_dim(&t(&[0, 0]), &t(&[0, 0])),
            Err(OracleError::RepeatedPrimes)
        );
    }

    #[test]
    fn size_limit() {
        let g = FiniteAbelianGroup::new([(2, 10)]).unwrap();
        assert!(matches!(
            GroupAlgebraModel::new(&g),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
