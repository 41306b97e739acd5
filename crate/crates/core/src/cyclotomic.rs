//! The `p^n`-cyclotomic polynomials `Phi_n`, the layer polynomials
//! `omega_n = (1+x)^{p^n} - 1`, their signed partial products and Bezout
//! certificates between the two signed products.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::IntPoly;

/// Parity selector for the plus/minus theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Whether the signed product for this sign contains `Phi_i`.
    pub fn owns_level(self, i: u32) -> bool {
        match self {
            Sign::Plus => i.is_multiple_of(2),
            Sign::Minus => i % 2 == 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

fn p_power(p: u64, k: u32) -> u64 {
    p.checked_pow(k).expect("p^n overflows u64")
}

/// `Phi_0 = x`; for `n >= 1`, `Phi_n = sum_{k<p} (1+x)^{k p^{n-1}}`, which is
/// `((1+x)^{p^n} - 1) / ((1+x)^{p^{n-1}} - 1)` written as a geometric sum.
pub fn phi_poly(p: u64, n: u32) -> IntPoly {
    if n == 0 {
        return IntPoly::x();
    }
    let step = p_power(p, n - 1);
    (0..p).fold(IntPoly::zero(), |acc, k| {
        &acc + &IntPoly::one_plus_x_pow(k * step)
    })
}

/// Degree of `Phi_n`: 1 for `n = 0`, else `p^{n-1}(p-1)`.
pub fn phi_degree(p: u64, n: u32) -> u64 {
    if n == 0 {
        1
    } else {
        p_power(p, n - 1) * (p - 1)
    }
}

/// `omega_n = (1+x)^{p^n} - 1`.
pub fn omega_poly(p: u64, n: u32) -> IntPoly {
    &IntPoly::one_plus_x_pow(p_power(p, n)) - &IntPoly::one()
}

/// Product of `Phi_i` over `0 <= i <= n` with `i` even (plus) or odd (minus).
pub fn omega_tilde(p: u64, n: u32, sign: Sign) -> IntPoly {
    (0..=n)
        .filter(|&i| sign.owns_level(i))
        .fold(IntPoly::one(), |acc, i| &acc * &phi_poly(p, i))
}

/// Integer certificate `a * omega_tilde^+ + b * omega_tilde^- = p^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutCertificate {
    pub p: u64,
    pub n: u32,
    pub a: IntPoly,
    pub b: IntPoly,
    pub m: u32,
}

impl BezoutCertificate {
    /// Re-expands the combination and returns it; a valid certificate gives
    /// the constant `p^m`.
    pub fn expand(&self) -> IntPoly {
        let plus = omega_tilde(self.p, self.n, Sign::Plus);
        let minus = omega_tilde(self.p, self.n, Sign::Minus);
        &(&self.a * &plus) + &(&self.b * &minus)
    }

    pub fn verify(&self) -> bool {
        self.expand() == IntPoly::constant(BigInt::from(self.p).pow(self.m))
    }
}

/// Bezout certificate between the plus and minus signed products of level `n`.
///
/// The extended Euclidean algorithm over the rationals gives the unique
/// cofactors of degree below the other operand with `A w+ + B w- = 1`; the
/// least common denominator `L` of those cofactors divides the resultant,
/// which is a power of `p`, so clearing it yields `p^m` with `m = v_p(L)`.
pub fn bezout_p_power(p: u64, n: u32) -> BezoutCertificate {
    assert!(n >= 1, "signed products are only coprime for n >= 1");
    let plus = omega_tilde(p, n, Sign::Plus);
    let minus = omega_tilde(p, n, Sign::Minus);
    let (g, s, t) = QPoly::from_int(&plus).ext_gcd(&QPoly::from_int(&minus));
    assert_eq!(g.degree(), Some(0), "signed products share a factor");
    let inv = g.0[0].recip();
    let s = s.scale(&inv);
    let t = t.scale(&inv);
    let denom = s
        .0
        .iter()
        .chain(t.0.iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let pb = BigInt::from(p);
    let mut rest = denom.clone();
    let mut m = 0u32;
    while rest.is_multiple_of(&pb) {
        rest /= &pb;
        m += 1;
    }
    assert!(rest.is_one(), "denominator {denom} is not a power of {p}");
    BezoutCertificate {
        p,
        n,
        a: s.clear(&denom),
        b: t.clear(&denom),
        m,
    }
}

/// Rational polynomial used only for the Euclidean algorithm.
#[derive(Debug, Clone, PartialEq)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn from_int(p: &IntPoly) -> Self {
        QPoly(p.coeffs().iter().cloned().map(BigRational::from_integer).collect())
    }

    fn norm(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn scale(&self, c: &BigRational) -> Self {
        QPoly(self.0.iter().map(|a| a * c).collect()).norm()
    }

    fn sub(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        QPoly(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
        .norm()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return QPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).norm()
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.0[dd].clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (i, b) in d.0.iter().enumerate() {
                rem[k + i] -= &q * b;
            }
            quot[k] = q;
        }
        (QPoly(quot).norm(), QPoly(rem).norm())
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`.
    fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let one = QPoly(vec![BigRational::one()]);
        let zero = QPoly(Vec::new());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while r1.degree().is_some() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    fn clear(&self, denom: &BigInt) -> IntPoly {
        let d = BigRational::from_integer(denom.clone());
        IntPoly::from_coeffs(
            self.0
                .iter()
                .map(|c| {
                    let v = c * &d;
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    /// The definition: exact long division of consecutive layer polynomials.
    fn phi_by_division(p: u64, n: u32) -> IntPoly {
        omega_poly(p, n).divide_exact(&omega_poly(p, n - 1)).unwrap()
    }

    #[test]
    fn phi_small_values() {
        assert_eq!(phi_poly(3, 0), poly(&[0, 1]));
        assert_eq!(phi_poly(3, 1), poly(&[3, 3, 1]));
        assert_eq!(phi_poly(3, 2), poly(&[3, 9, 18, 21, 15, 6, 1]));
    }

    #[test]
    fn phi_matches_long_division() {
        for p in [3u64, 5, 7, 11] {
            for n in 1..=3 {
                assert_eq!(phi_poly(p, n), phi_by_division(p, n), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn phi_degrees_and_shape() {
        for p in [3u64, 5, 7] {
            for n in 1..=3 {
                let f = phi_poly(p, n);
                assert_eq!(f.degree(), Some(phi_degree(p, n) as usize));
                assert!(f.is_distinguished(p));
                assert_eq!(f.coeff(0), BigInt::from(p));
            }
        }
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega_poly(3, 0), poly(&[0, 1]));
        assert_eq!(omega_poly(3, 1), poly(&[0, 3, 3, 1]));
        assert_eq!(omega_poly(3, 1), &phi_poly(3, 0) * &phi_poly(3, 1));
        assert_eq!(
            omega_poly(3, 2).divide_exact(&omega_poly(3, 1)).unwrap(),
            phi_poly(3, 2)
        );
    }

    #[test]
    fn signed_products() {
        assert_eq!(omega_tilde(3, 1, Sign::Minus), poly(&[3, 3, 1]));
        assert_eq!(omega_tilde(3, 1, Sign::Plus), IntPoly::x());
        assert_eq!(omega_tilde(3, 2, Sign::Plus), &IntPoly::x() * &phi_poly(3, 2));
        for n in 1..=4 {
            let both = &omega_tilde(3, n, Sign::Plus) * &omega_tilde(3, n, Sign::Minus);
            assert_eq!(both, omega_poly(3, n));
        }
    }

    #[test]
    fn bezout_level_one() {
        let cert = bezout_p_power(3, 1);
        assert_eq!(cert.a, poly(&[-3, -1]));
        assert_eq!(cert.b, IntPoly::one());
        assert_eq!(cert.m, 1);
        assert!(cert.verify());
    }

    #[test]
    fn bezout_higher_levels() {
        for (p, n) in [(3, 2), (5, 1), (3, 3), (5, 2), (7, 2)] {
            let cert = bezout_p_power(p, n);
            assert!(cert.verify(), "p={p} n={n}");
            assert!(cert.m >= 1);
        }
    }
}
