//! Characteristic ideals of finitely generated torsion modules over the
//! Iwasawa algebra, stored by generator: `p^mu` times powers of the
//! cyclotomic polynomials `Phi_n` times powers of other distinguished
//! polynomials. Units are dropped, so equality of values is equality of ideals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::cyclotomic::{phi_degree, phi_poly};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideals over different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("factor {poly} is not a distinguished polynomial of positive degree for p = {p}")]
    NotDistinguished { poly: IntPoly, p: u64 },
    #[error("factor {poly} is divisible by Phi({n}); record it as a cyclotomic factor")]
    CyclotomicFactor { poly: IntPoly, n: u32 },
}

/// A non-cyclotomic distinguished factor with its exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtraFactor {
    pub poly: IntPoly,
    pub exponent: u32,
}

fn poly_order(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// `<p^mu * prod_n Phi_n^{e_n} * prod_j g_j^{k_j}>` in `Z_p[[x]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharIdeal {
    p: u64,
    mu: u32,
    cyclo: BTreeMap<u32, u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    extra: Vec<ExtraFactor>,
}

impl CharIdeal {
    /// The unit ideal.
    pub fn trivial(p: u64) -> Self {
        Self {
            p,
            mu: 0,
            cyclo: BTreeMap::new(),
            extra: Vec::new(),
        }
    }

    /// `p^mu * prod Phi_n^{e_n}`; zero exponents are dropped and repeated
    /// levels add up.
    pub fn from_exponents(p: u64, mu: u32, exps: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut out = Self::trivial(p);
        out.mu = mu;
        for (n, e) in exps {
            if e > 0 {
                *out.cyclo.entry(n).or_insert(0) += e;
            }
        }
        out
    }

    /// Like [`Self::from_exponents`] for a list indexed by level.
    pub fn from_level_exponents(p: u64, exps: &[u32]) -> Self {
        Self::from_exponents(p, 0, exps.iter().enumerate().map(|(n, &e)| (n as u32, e)))
    }

    /// Multiplies in `poly^exponent` for a distinguished `poly` coprime to
    /// every `Phi_n`.
    pub fn with_extra(mut self, poly: IntPoly, exponent: u32) -> Result<Self, IdealError> {
        let p = self.p;
        if poly.degree().unwrap_or(0) == 0 || !poly.is_distinguished(p) {
            return Err(IdealError::NotDistinguished { poly, p });
        }
        // Phi_n is irreducible, so coprime means not divisible; only levels
        // with deg Phi_n <= deg poly can divide.
        let deg = poly.degree().unwrap_or(0) as u64;
        let mut n = 0;
        while phi_degree(p, n) <= deg {
            if poly.divide_exact(&phi_poly(p, n)).is_ok() {
                return Err(IdealError::CyclotomicFactor { poly, n });
            }
            n += 1;
        }
        if exponent == 0 {
            return Ok(self);
        }
        match self.extra.iter_mut().find(|f| f.poly == poly) {
            Some(f) => f.exponent += exponent,
            None => {
                self.extra.push(ExtraFactor { poly, exponent });
                self.extra.sort_by(|a, b| poly_order(&a.poly, &b.poly));
            }
        }
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// Degree of the distinguished part.
    pub fn lambda(&self) -> u64 {
        let cyclo: u64 = self
            .cyclo
            .iter()
            .map(|(&n, &e)| phi_degree(self.p, n) * u64::from(e))
            .sum();
        let extra: u64 = self
            .extra
            .iter()
            .map(|f| f.poly.degree().unwrap_or(0) as u64 * u64::from(f.exponent))
            .sum();
        cyclo + extra
    }

    /// `(lambda, mu)`.
    pub fn invariants(&self) -> (u64, u32) {
        (self.lambda(), self.mu)
    }

    /// Exponent of `Phi_n`, zero when absent.
    pub fn cyclotomic_exponent(&self, n: u32) -> u32 {
        self.cyclo.get(&n).copied().unwrap_or(0)
    }

    pub fn cyclotomic(&self) -> &BTreeMap<u32, u32> {
        &self.cyclo
    }

    pub fn extra(&self) -> &[ExtraFactor] {
        &self.extra
    }

    pub fn is_trivial(&self) -> bool {
        self.mu == 0 && self.cyclo.is_empty() && self.extra.is_empty()
    }

    fn same_prime(&self, other: &Self) -> Result<(), IdealError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(IdealError::PrimeMismatch(self.p, other.p))
        }
    }

    /// Greatest common divisor: componentwise minimum of exponents, with
    /// extra factors matched by equality.
    pub fn gcd(&self, other: &Self) -> Result<Self, IdealError> {
        self.same_prime(other)?;
        let cyclo = self
            .cyclo
            .iter()
            .filter_map(|(n, &e)| {
                let m = e.min(other.cyclotomic_exponent(*n));
                (m > 0).then_some((*n, m))
            })
            .collect();
        let extra = self
            .extra
            .iter()
            .filter_map(|f| {
                let g = other.extra.iter().find(|g| g.poly == f.poly)?;
                Some(ExtraFactor {
                    poly: f.poly.clone(),
                    exponent: f.exponent.min(g.exponent),
                })
            })
            .collect();
        Ok(Self {
            p: self.p,
            mu: self.mu.min(other.mu),
            cyclo,
            extra,
        })
    }

    /// Product of ideals; all exponents add.
    pub fn mul(&self, other: &Self) -> Result<Self, IdealError> {
        self.same_prime(other)?;
        let mut out = self.clone();
        out.mu += other.mu;
        for (&n, &e) in &other.cyclo {
            *out.cyclo.entry(n).or_insert(0) += e;
        }
        for f in &other.extra {
            out = out.with_extra(f.poly.clone(), f.exponent)?;
        }
        Ok(out)
    }

    /// Whether `self` divides `other` (that is, `other` is contained in `self`).
    pub fn divides(&self, other: &Self) -> Result<bool, IdealError> {
        Ok(&self.gcd(other)? == self)
    }

    /// The generator `p^mu * prod Phi_n^{e_n} * prod g_j^{k_j}` expanded in `Z[x]`.
    pub fn generator(&self) -> IntPoly {
        let mut acc = IntPoly::constant(BigInt::from(self.p).pow(self.mu));
        for (&n, &e) in &self.cyclo {
            acc = &acc * &phi_poly(self.p, n).pow(e);
        }
        for f in &self.extra {
            acc = &acc * &f.poly.pow(f.exponent);
        }
        acc
    }
}

/// Constructor mirroring [`CharIdeal::from_exponents`].
pub fn char_ideal_from_exponents(
    p: u64,
    mu: u32,
    exps: impl IntoIterator<Item = (u32, u32)>,
) -> CharIdeal {
    CharIdeal::from_exponents(p, mu, exps)
}

/// Checks that `p` is an odd prime, as every ideal here needs.
pub fn check_prime(p: u64) -> Result<(), IdealError> {
    if p % 2 == 1 && arith::is_prime(p) {
        Ok(())
    } else {
        Err(IdealError::BadPrime(p))
    }
}

impl fmt::Display for CharIdeal {
    /// Canonical text, e.g. `3^0 * x^1 * Phi(1)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.mu)?;
        for (&n, &e) in &self.cyclo {
            if n == 0 {
                write!(f, " * x^{e}")?;
            } else {
                write!(f, " * Phi({n})^{e}")?;
            }
        }
        for g in &self.extra {
            write!(f, " * ({})^{}", g.poly, g.exponent)?;
        }
        Ok(())
    }
}
