//! Dense polynomials over the integers in the Iwasawa variable `x`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: remainder of degree {remainder_degree} is nonzero")]
    Inexact { remainder_degree: usize },
    #[error("inexact division: leading coefficient {divisor_lead} does not divide {coefficient}")]
    NonIntegralQuotient {
        coefficient: BigInt,
        divisor_lead: BigInt,
    },
}

/// Integer polynomial with ascending coefficients. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<BigInt>", into = "Vec<BigInt>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(coeffs)
    }
}

impl From<IntPoly> for Vec<BigInt> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

const KARATSUBA_CUTOFF: usize = 24;

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    /// `(1 + x)^n`, built from the binomial recurrence.
    pub fn one_plus_x_pow(n: u64) -> Self {
        let len = usize::try_from(n).expect("exponent fits in memory") + 1;
        let mut coeffs = Vec::with_capacity(len);
        let mut c = BigInt::one();
        coeffs.push(c.clone());
        for k in 0..n {
            c = c * BigInt::from(n - k) / BigInt::from(k + 1);
            coeffs.push(c.clone());
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Monic, with every lower coefficient divisible by `p`.
    pub fn is_distinguished(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.is_monic()
            && self.coeffs[..self.coeffs.len() - 1]
                .iter()
                .all(|c| c.is_multiple_of(&p))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// Quotient `q` with `self = q * divisor` exactly over the integers.
    pub fn divide_exact(&self, divisor: &IntPoly) -> Result<IntPoly, PolyError> {
        let (q, r) = self.div_rem_integral(divisor)?;
        match r.degree() {
            None => Ok(q),
            Some(remainder_degree) => Err(PolyError::Inexact { remainder_degree }),
        }
    }

    /// Long division that stays in the integers; fails as soon as a quotient
    /// coefficient would be fractional.
    fn div_rem_integral(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly), PolyError> {
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::NonIntegralQuotient {
                    coefficient: top.clone(),
                    divisor_lead: lead.clone(),
                });
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * b;
            }
            quot[k] = q;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(i64::try_from).map(Result::ok).collect()
    }
}

fn add_into(dst: &mut [BigInt], src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Karatsuba on equal-length halves; both inputs must have length `n`.
fn karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if n <= KARATSUBA_CUTOFF {
        return schoolbook(a, b);
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = karatsuba(a0, b0);
    let z2 = mul_slices(a1, b1);
    let mut sa: Vec<BigInt> = a1.to_vec();
    add_into(&mut sa, a0);
    let mut sb: Vec<BigInt> = b1.to_vec();
    add_into(&mut sb, b0);
    let mut z1 = karatsuba(&sa, &sb);
    for (k, c) in z0.iter().enumerate() {
        z1[k] -= c;
    }
    for (k, c) in z2.iter().enumerate() {
        z1[k] -= c;
    }
    let mut out = vec![BigInt::zero(); 2 * n - 1];
    add_into(&mut out, &z0);
    add_into(&mut out[h..], &z1);
    add_into(&mut out[2 * h..], &z2);
    out
}

/// Product of arbitrary-length slices. Unbalanced operands are cut into
/// chunks of the shorter length.
fn mul_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.len() <= KARATSUBA_CUTOFF {
        return schoolbook(long, short);
    }
    let m = short.len();
    let mut out = vec![BigInt::zero(); long.len() + m - 1];
    for (c, chunk) in long.chunks(m).enumerate() {
        let prod = if chunk.len() == m {
            karatsuba(chunk, short)
        } else {
            mul_slices(chunk, short)
        };
        add_into(&mut out[c * m..], &prod);
    }
    out
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_coeffs(mul_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        add_into(&mut coeffs, &short.coeffs);
        IntPoly::from_coeffs(coeffs)
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            match (k, show_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{mag}*x")?,
                (1, false) => f.write_str("x")?,
                (_, true) => write!(f, "{mag}*x^{k}")?,
                (_, false) => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}
