//! Small machine-integer number theory: primality, factoring, totients and
//! multiplicative orders. Inputs here are group orders, conductors and small
//! primes, so trial division is enough.

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Euler's totient, with `totient(1) = 1`.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `phi(p^k)`, equal to 1 for `k = 0`. `None` on overflow.
pub fn prime_power_totient(p: u64, k: u32) -> Option<u64> {
    if k == 0 {
        return Some(1);
    }
    p.checked_pow(k - 1)?.checked_mul(p - 1)
}

/// p-adic valuation of a positive integer.
pub fn valuation(p: u64, mut n: u64) -> u32 {
    debug_assert!(p >= 2 && n > 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `m`, found by stripping prime factors
/// from `phi(m)`. Requires `gcd(a, m) = 1`; returns 1 for `m <= 2`.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m <= 2 {
        return 1;
    }
    assert_eq!(gcd(a % m, m), 1, "order undefined: {a} not a unit mod {m}");
    let mut ord = totient(m);
    for (q, _) in factorize(ord) {
        while ord.is_multiple_of(q) && pow_mod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}
