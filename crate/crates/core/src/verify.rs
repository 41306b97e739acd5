//! Self-checks comparing the closed formulas with independent computations,
//! sized for an interactive run.

use serde::Serialize;

use crate::arith;
use crate::cyclotomic::{bezout_p_power, omega_poly, phi_poly};
use crate::group::FiniteAbelianGroup;
use crate::hypotheses::star_check;
use crate::oracle::{GroupAlgebraModel, OracleError};
use crate::poly::IntPoly;
use crate::rank_data::{solve_e_alpha, synthesize_rank_table, EAlphaTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One group per order: the product of the Sylow subgroups of `Z/n`, for
/// `1 <= n <= max_order`.
pub fn cyclic_groups_up_to(max_order: u64) -> Vec<FiniteAbelianGroup> {
    (1..=max_order)
        .map(|n| FiniteAbelianGroup::new(arith::factorize(n)).expect("distinct primes"))
        .collect()
}

/// Closed-form fixed dimensions against the group-algebra model, plus the
/// count `sum_{b <= a} dim W_b = |G / G_a|`.
pub fn fixed_space_suite(max_order: u64) -> Result<SuiteResult, OracleError> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in cyclic_groups_up_to(max_order) {
        let model = GroupAlgebraModel::new(&g)?;
        let tuples = g.index_tuples();
        for b in &tuples {
            let basis = model.isotypic_basis(b)?;
            for a in &tuples {
                cases += 1;
                let formula = g.fixed_subspace_dim(b, a).expect("tuples of g");
                let oracle = model.fixed_dimension(&basis, &model.subgroup_generators(a)?) as u64;
                if formula != oracle {
                    failures.push(format!("{g}: dim W_{b}^(G_{a}) formula {formula}, oracle {oracle}"));
                }
            }
        }
        for a in &tuples {
            let sum: u64 = tuples
                .iter()
                .filter(|b| b.leq(a).expect("same length"))
                .map(|b| g.irrep_dim(b).expect("tuple of g"))
                .sum();
            let expected: u64 = g
                .factors()
                .iter()
                .zip(a.entries())
                .map(|(f, &k)| f.prime.pow(k))
                .product();
            if sum != expected {
                failures.push(format!("{g}: sum over b <= {a} is {sum}, expected {expected}"));
            }
        }
    }
    Ok(SuiteResult {
        name: "fixed-space dimensions",
        cases,
        failures,
    })
}

/// Regular representation splits into the listed irreducibles for every
/// cyclic group up to `max_order`, and `Z/3 x Z/3` is flagged reducible.
pub fn decomposition_suite(max_order: u64) -> Result<SuiteResult, OracleError> {
    let mut failures = Vec::new();
    let groups = cyclic_groups_up_to(max_order);
    for g in &groups {
        let report = GroupAlgebraModel::new(g)?.decompose();
        if !report.dimensions_consistent() || !report.all_irreducible {
            failures.push(format!("{g}: regular decomposition inconsistent"));
        }
    }
    let repeated = FiniteAbelianGroup::with_repeated_primes([(3, 1), (3, 1)]).expect("valid factors");
    let report = GroupAlgebraModel::new(&repeated)?.decompose();
    if report.all_irreducible {
        failures.push(format!("{repeated}: reducible component not detected"));
    }
    Ok(SuiteResult {
        name: "regular decomposition",
        cases: groups.len() + 1,
        failures,
    })
}

/// `prod_{i<=n} Phi_i = omega_n`, each `Phi_n` distinguished with constant
/// term `p`, and the Bezout certificates re-expand to `p^m`.
pub fn cyclotomic_suite(primes: &[u64], max_level: u32) -> SuiteResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    for &p in primes {
        let mut product = IntPoly::one();
        for n in 0..=max_level {
            cases += 1;
            let phi = phi_poly(p, n);
            product = &product * &phi;
            if product != omega_poly(p, n) {
                failures.push(format!("p={p} n={n}: product of Phi_i differs from (1+x)^(p^n) - 1"));
            }
            if n > 0 && !(phi.is_distinguished(p) && phi.coeff(0) == p.into()) {
                failures.push(format!("p={p} n={n}: Phi_n not distinguished with constant term p"));
            }
            if n > 0 && !bezout_p_power(p, n).verify() {
                failures.push(format!("p={p} n={n}: Bezout certificate does not re-expand"));
            }
        }
    }
    SuiteResult {
        name: "cyclotomic identities",
        cases,
        failures,
    }
}

/// `solve_e_alpha` inverts `synthesize_rank_table` on a fixed family of
/// tables with entries in `0..4`.
pub fn round_trip_suite(max_order: u64, p: u64, levels: usize) -> SuiteResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    for g in cyclic_groups_up_to(max_order) {
        for seed in 0..4u64 {
            cases += 1;
            let tuples = g.index_tuples();
            let rows = tuples
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let row = (0..levels)
                        .map(|k| (seed + 3 * i as u64 + 5 * k as u64 + g.order()) % 4)
                        .collect();
                    (a.clone(), row)
                })
                .collect();
            let ea = EAlphaTable::new(&g, rows).expect("complete table");
            let table = synthesize_rank_table(&g, p, &ea);
            match solve_e_alpha(&g, p, &table) {
                Ok(back) if back == ea => {}
                Ok(_) => failures.push(format!("{g} seed {seed}: round trip changed the table")),
                Err(e) => failures.push(format!("{g} seed {seed}: {e}")),
            }
        }
    }
    SuiteResult {
        name: "rank table round trip",
        cases,
        failures,
    }
}

fn brute_order(p: u64, m: u64) -> u64 {
    if m <= 2 {
        return 1;
    }
    let mut x = p % m;
    let mut k = 1;
    while x != 1 {
        x = x * (p % m) % m;
        k += 1;
    }
    k
}

/// Condition (star) against a direct count: the order of `p` mod `m'` found
/// by repeated multiplication versus the number of units mod `m'`.
pub fn star_suite(max_m: u64, max_p: u64) -> SuiteResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    for p in (3..=max_p).filter(|&p| arith::is_prime(p)) {
        for m in 1..=max_m {
            cases += 1;
            let g = FiniteAbelianGroup::new(arith::factorize(m)).expect("distinct primes");
            let verdict = star_check(&g, p).expect("odd prime");
            let mut m_prime = m;
            while m_prime % p == 0 {
                m_prime /= p;
            }
            let units = (1..=m_prime).filter(|&a| arith::gcd(a, m_prime) == 1).count() as u64;
            let expected = brute_order(p, m_prime) == units;
            if verdict.passed != expected {
                failures.push(format!("p={p} m={m}: star says {}, direct count says {expected}", verdict.passed));
            }
        }
    }
    SuiteResult {
        name: "condition (star)",
        cases,
        failures,
    }
}

/// Everything above at a scale set by `max_order`.
pub fn run_all(max_order: u64) -> Result<Vec<SuiteResult>, OracleError> {
    Ok(vec![
        cyclotomic_suite(&[3, 5, 7], 3),
        fixed_space_suite(max_order)?,
        decomposition_suite(max_order)?,
        round_trip_suite(max_order.min(60), 3, 3),
        star_suite(max_order * 10, 31),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        for suite in run_all(24).unwrap() {
            assert!(suite.passed(), "{}: {:?}", suite.name, suite.failures);
            assert!(suite.cases > 0);
        }
    }

    #[test]
    fn brute_order_small() {
        assert_eq!(brute_order(3, 10), 4);
        assert_eq!(brute_order(5, 1), 1);
        assert_eq!(brute_order(2, 7), 3);
    }
}
