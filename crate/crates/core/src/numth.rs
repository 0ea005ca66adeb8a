//! Modular arithmetic over machine integers: units, multiplicative orders,
//! primitive roots and primes in arithmetic progressions.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `0..n`.
pub fn residue(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Multiplicative inverse of `a` modulo `n`.
pub fn inv_mod(a: u64, n: u64) -> Result<u64> {
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotAUnit { r: a, n });
    }
    Ok(old_s.rem_euclid(n as i128) as u64)
}

/// Deterministic Miller-Rabin; the base set below is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Least `e >= 1` with `r^e = 1 (mod n)`.
pub fn ord_mod(r: u64, n: u64) -> Result<u64> {
    if n == 0 || gcd(r % n, n) != 1 {
        return Err(Error::NotAUnit { r, n });
    }
    if n == 1 {
        return Ok(1);
    }
    // The order divides phi(n); test divisors of phi in ascending order.
    let phi = totient(n);
    Ok(divisors(phi)
        .into_iter()
        .find(|&e| pow_mod(r, e, n) == 1)
        .expect("r^phi(n) = 1 for units"))
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Least generator of the multiplicative group modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let prime_factors: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| prime_factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or(Error::NotPrime(p))
}

/// `lambda^((p-1)/k)` for the least primitive root `lambda`; an element of order exactly `k`.
pub fn element_of_order(k: u64, p: u64) -> Result<u64> {
    let lambda = primitive_root(p)?;
    if k == 0 || !(p - 1).is_multiple_of(k) {
        return Err(Error::OrderNotDividing { k, p });
    }
    Ok(pow_mod(lambda, (p - 1) / k, p))
}

/// Primes `<= limit` congruent to `a` modulo `b`, ascending.
pub fn primes_in_ap(a: u64, b: u64, limit: u64) -> Result<Vec<u64>> {
    if b == 0 || gcd(a, b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let start = a % b;
    let mut out = Vec::new();
    let mut x = start;
    while x <= limit {
        if is_prime(x) {
            out.push(x);
        }
        x += b;
    }
    Ok(out)
}
