//! Integer plumbing shared by every other module: factorization, divisor
//! enumeration, divisor-count sieves, modular inverses, and a deterministic
//! primality test.
//!
//! All public quantities are `u64`; any product that could overflow is
//! computed in `u128`. Everything here is a pure function, safe to call from
//! any number of threads.

use crate::{Error, Result};

pub use num_integer::gcd;

/// Prime factorization of a positive integer, primes strictly increasing.
///
/// `n == 1` is represented by an empty factor list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Number of divisors: the product of (exponent + 1).
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// Number of odd divisors: the divisor count with any factor 2 removed.
    pub fn odd_divisor_count(&self) -> u64 {
        self.factors
            .iter()
            .filter(|&&(p, _)| p != 2)
            .map(|&(_, e)| u64::from(e) + 1)
            .product()
    }

    /// All divisors of `n`, strictly increasing.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..prev {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True when `n` is a perfect square (all exponents even).
    pub fn is_square(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e % 2 == 0)
    }

    /// Re-checks the structural invariants: primes increasing, each factor
    /// prime, and the product reconstructing `n`.
    pub fn verify(&self) -> Result<()> {
        let mut product: u128 = 1;
        let mut last = 1u64;
        for &(p, e) in &self.factors {
            if p <= last {
                return Err(Error::invariant(format!(
                    "factors of {} not strictly increasing at {p}",
                    self.n
                )));
            }
            if !is_prime(p) {
                return Err(Error::invariant(format!("factor {p} of {} is not prime", self.n)));
            }
            if e == 0 {
                return Err(Error::invariant(format!("zero exponent on {p} in {}", self.n)));
            }
            last = p;
            for _ in 0..e {
                product = product.checked_mul(u128::from(p)).ok_or_else(|| {
                    Error::overflow(format!("factor product of {} exceeds 128 bits", self.n))
                })?;
            }
        }
        if product != u128::from(self.n) {
            return Err(Error::invariant(format!(
                "factor product {product} does not reconstruct {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// Factors `n ≥ 1` by trial division (2, 3, 5, then a mod-30 wheel).
///
/// Intentionally no probabilistic factoring: inputs stay at desk scale
/// (≤ ~10¹²), where trial division up to √n is instantaneous.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize(0): argument must be positive"));
    }
    let mut factors = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    // Candidates coprime to 30; composites among them have smaller prime
    // factors already removed, so only primes can divide m.
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut w = 0usize;
    while p <= m / p {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

/// All divisors of `n ≥ 1`, strictly increasing.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

/// θ(n): the number of divisors of `n ≥ 1`.
pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?.divisor_count())
}

/// θ_odd(n): the number of odd divisors of `n ≥ 1`.
pub fn odd_divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?.odd_divisor_count())
}

/// Divisor counts for every n in `[lo, hi]`, by a segmented sieve.
///
/// Entry `i` of the result is θ(lo + i). Cost is O((hi−lo)·log hi + √hi per
/// segment); memory stays bounded by an internal segment size regardless of
/// the interval width.
pub fn divisor_count_range(lo: u64, hi: u64) -> Result<Vec<u32>> {
    if lo == 0 || lo > hi {
        return Err(Error::domain(format!(
            "divisor_count_range({lo}, {hi}): need 1 <= lo <= hi"
        )));
    }
    const SEGMENT: u64 = 1 << 20;
    let mut out = vec![0u32; usize::try_from(hi - lo + 1).map_err(|_| {
        Error::domain(format!("divisor_count_range({lo}, {hi}): interval does not fit memory"))
    })?];
    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = seg_lo.saturating_add(SEGMENT - 1).min(hi);
        // Each v has divisor pairs (d, v/d) with d ≤ √v; count 2 per pair,
        // 1 when d² = v. Iterating multiples of d starting at max(d², seg_lo)
        // enumerates exactly the pairs with d ≤ √v.
        let d_max = seg_hi.isqrt();
        for d in 1..=d_max {
            let start = (seg_lo.div_ceil(d) * d).max(d * d);
            let mut v = start;
            while v <= seg_hi {
                out[(v - lo) as usize] += if v == d * d { 1 } else { 2 };
                v += d;
            }
        }
        seg_lo = seg_hi + 1;
    }
    Ok(out)
}

/// Multiplicative inverse of `a` modulo `m ≥ 2`, in `[1, m−1]`.
pub fn mod_inverse(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::domain(format!("mod_inverse({a}, {m}): modulus must be >= 2")));
    }
    // Extended Euclid on (a mod m, m); old_s tracks the coefficient of a.
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::domain(format!(
            "mod_inverse({a}, {m}): not invertible (gcd {old_r})"
        )));
    }
    let inv = old_s.rem_euclid(i128::from(m));
    Ok(inv as u64)
}

/// Deterministic Miller–Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This base set decides primality exactly for every 64-bit integer.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

/// All primes `p ≤ limit`, ascending (simple Eratosthenes sieve).
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let size = (limit + 1) as usize;
    let mut composite = vec![false; size];
    let mut primes = Vec::new();
    for p in 2..size {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q < size {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
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
