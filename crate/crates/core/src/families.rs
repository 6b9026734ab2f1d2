//! Closed-form counts and constructive solution families: the reduced
//! count θ(n)θ(n−1)/2, the closed form for M(n,2), the k = (n+1)/3 equality
//! family, the a = 1 / a = n witness families from divisor congruences, the
//! Granville-style lower-bound certificate, and the two-squares family with
//! M(n,4) = 0.

use crate::arith::{self, divisor_count, odd_divisor_count};
use crate::solver::{count_f, k_profile, Solution};
use crate::{Error, Result};
use serde::Serialize;

/// M(n,1) = θ(n)·θ(n−1)/2: reduced solutions correspond to the divisor
/// pairs of n and of n−1 = X·Y. The product is always even — n and n−1
/// cannot both be squares — and that impossibility is checked rather than
/// assumed.
pub fn reduced_count(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::domain(format!("reduced_count({n}): n must be at least 2")));
    }
    let product = divisor_count(n)? * divisor_count(n - 1)?;
    if product % 2 != 0 {
        return Err(Error::invariant(format!(
            "θ({n})·θ({}) = {product} is odd, which needs two consecutive squares",
            n - 1
        )));
    }
    Ok(product / 2)
}

/// M(n,2) in closed form: θ(n)·θ(n−2)/2 − 1 for odd n (the product is even
/// because n and n−2 cannot both be squares), θ_odd(n)·θ_odd(n−2) − 1 for
/// even n.
pub fn m2_closed_form(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::domain(format!("m2_closed_form({n}): n must be at least 3")));
    }
    let value = if n % 2 == 1 {
        let product = divisor_count(n)? * divisor_count(n - 2)?;
        if product % 2 != 0 {
            return Err(Error::invariant(format!(
                "θ({n})·θ({}) = {product} is odd, which needs two squares differing by 2",
                n - 2
            )));
        }
        product / 2 - 1
    } else {
        odd_divisor_count(n)? * odd_divisor_count(n - 2)? - 1
    };
    Ok(value)
}

/// The equality family of the k-range bound: [1, 2, 2t−1, 3] solves
/// n = 3t−1 with k = t = (n+1)/3, the largest k any solution of n allows.
pub fn extremal_k_family(t: u64) -> Result<Solution> {
    if t < 1 {
        return Err(Error::domain("extremal_k_family: t must be positive"));
    }
    let n = 3u64
        .checked_mul(t)
        .and_then(|v| v.checked_sub(1))
        .ok_or_else(|| Error::overflow(format!("extremal_k_family({t}): 3t−1 leaves u64")))?;
    let s = Solution::from_quadruple(n, 1, 2, 2 * t - 1, 3)?;
    if s.k != t {
        return Err(Error::invariant(format!("family member {s} has k={} instead of t={t}", s.k)));
    }
    Ok(s)
}

/// The two divisor-condition families of solutions with level k, one per
/// extreme witness. Solutions are stored in construction orientation, so
/// every `unit_witness` entry has a = 1 and every `n_witness` entry has
/// a = n; the two lists can contain transposes of each other.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessFamilies {
    pub n: u64,
    pub k: u64,
    /// a = 1 family: X | n−k with k | X+1 and X+1 > k.
    pub unit_witness: Vec<Solution>,
    /// a = n family: X | n−k with k | n+X and (n−k)/X + 1 > k.
    pub n_witness: Vec<Solution>,
}

/// Builds both witness families for coprime n, k: each divisor X of n−k
/// passing the congruence and strictness filters yields the verified
/// solution [X, x, Y, y] with Y = (n−k)/X and
///   a = 1: y = (X+1)/k,       x = (n+Y)/k;
///   a = n: y = (n+X)/k,       x = (Y+1)/k.
/// Integrality of the second denominator in each line is forced by the
/// first (mod k, X·Y ≡ n and gcd(n,k) = 1), and the strictness filters are
/// exactly what keeps the denominators ≥ 2.
pub fn witness_families(n: u64, k: u64) -> Result<WitnessFamilies> {
    if n < 2 || k < 1 {
        return Err(Error::domain(format!("witness_families({n},{k}): need n ≥ 2, k ≥ 1")));
    }
    if arith::gcd(n, k) != 1 {
        return Err(Error::domain(format!(
            "witness_families({n},{k}): the construction requires gcd(n,k) = 1"
        )));
    }
    let mut unit_witness = Vec::new();
    let mut n_witness = Vec::new();
    if k < n {
        for &x_int in &arith::divisors(n - k)? {
            let y_int = (n - k) / x_int;
            if (x_int + 1) % k == 0 && x_int + 1 > k {
                let y_den = (x_int + 1) / k;
                debug_assert_eq!((n + y_int) % k, 0);
                let x_den = (n + y_int) / k;
                let s = Solution::from_quadruple(n, x_int, x_den, y_int, y_den)?;
                debug_assert_eq!(s.a, 1);
                unit_witness.push(s);
            }
            if (n + x_int) % k == 0 && y_int + 1 > k {
                let y_den = (n + x_int) / k;
                debug_assert_eq!((y_int + 1) % k, 0);
                let x_den = (y_int + 1) / k;
                let s = Solution::from_quadruple(n, x_int, x_den, y_int, y_den)?;
                debug_assert_eq!(s.a, n);
                n_witness.push(s);
            }
        }
    }
    Ok(WitnessFamilies { n, k, unit_witness, n_witness })
}

/// Ceiling for "additionally verify f(n) directly" in certificates: full
/// enumeration stays cheap up to here.
const CERT_ENUMERATION_MAX: u64 = 10_000_000;

/// A self-verifying lower-bound certificate: n = k + Π pᵢ over the primes
/// pᵢ ≡ −1 (mod k) up to the cap, together with the explicitly constructed
/// a = 1 solutions witnessing f(n) ≥ |certified_solutions|.
///
/// Odd-size subsets of the primes give X ≡ −1 (mod k), so 2^{pi_count−1}
/// divisors of n−k pass the congruence filter; of those only X = k−1 can
/// fail the strictness filter (it would force y = 1), hence the certified
/// count is 2^{pi_count−1} or one less. `lower_bound` records the
/// uncorrected 2^{pi_count−1}.
#[derive(Clone, Debug, Serialize)]
pub struct GranvilleCertificate {
    pub k: u64,
    pub prime_cap: u64,
    pub primes: Vec<u64>,
    pub n: u64,
    pub pi_count: u32,
    pub certified_solutions: Vec<Solution>,
    pub lower_bound: u64,
    /// f(n) by direct enumeration when n is small enough; None otherwise.
    pub f_n: Option<u64>,
}

impl GranvilleCertificate {
    /// Re-checks everything the certificate claims, from primality of the
    /// listed primes to the per-solution invariants.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: String| Err(Error::invariant(format!("certificate (k={}): {what}", self.k)));
        let mut product: u64 = 1;
        for &p in &self.primes {
            if !arith::is_prime(p) || p > self.prime_cap || p % self.k != self.k - 1 {
                return fail(format!("{p} is not a prime ≡ −1 mod k below the cap"));
            }
            product = match product.checked_mul(p) {
                Some(v) => v,
                None => return fail("prime product overflows".into()),
            };
        }
        if self.primes.len() != self.pi_count as usize {
            return fail("pi_count does not match the prime list".into());
        }
        if self.n != self.k + product {
            return fail(format!("n = {} is not k + Π p = {}", self.n, self.k + product));
        }
        if arith::gcd(self.n, self.k) != 1 {
            return fail("gcd(n, k) ≠ 1".into());
        }
        let expected = if self.pi_count == 0 { 0 } else { 1u64 << (self.pi_count - 1) };
        if self.lower_bound != expected {
            return fail(format!("lower_bound {} should be {expected}", self.lower_bound));
        }
        for s in &self.certified_solutions {
            s.verify()?;
            if s.n != self.n || s.a != 1 || s.k != self.k {
                return fail(format!("{s} is not an a=1, level-k solution of n={}", self.n));
            }
        }
        let certified = self.certified_solutions.len() as u64;
        if certified + 1 < self.lower_bound {
            return fail(format!(
                "only {certified} certified solutions against a bound of {}",
                self.lower_bound
            ));
        }
        if let Some(f) = self.f_n {
            if f < certified || f < self.lower_bound {
                return fail(format!("f(n) = {f} is below the certified count or the bound"));
            }
        }
        Ok(())
    }
}

/// Builds and verifies the certificate for modulus k ≥ 2 and prime cap
/// M ≥ k; f(n) is additionally enumerated when n is small enough.
pub fn granville(k: u64, max_prime: u64) -> Result<GranvilleCertificate> {
    if k < 2 || max_prime < k {
        return Err(Error::domain(format!(
            "granville({k},{max_prime}): need k ≥ 2 and a prime cap ≥ k"
        )));
    }
    let primes: Vec<u64> =
        arith::sieve_primes(max_prime).into_iter().filter(|p| p % k == k - 1).collect();
    let mut product: u64 = 1;
    for &p in &primes {
        product = product.checked_mul(p).ok_or_else(|| {
            Error::overflow(format!(
                "granville({k},{max_prime}): Π p exceeds u64 after including {p}"
            ))
        })?;
    }
    let n = k
        .checked_add(product)
        .ok_or_else(|| Error::overflow(format!("granville({k},{max_prime}): n = k + Π p overflows")))?;
    let pi_count = u32::try_from(primes.len()).expect("π(M) fits u32");
    let lower_bound = if pi_count == 0 { 0 } else { 1u64 << (pi_count - 1) };
    let certified_solutions = witness_families(n, k)?.unit_witness;
    let f_n = if n <= CERT_ENUMERATION_MAX { Some(count_f(n)?) } else { None };
    let cert = GranvilleCertificate {
        k,
        prime_cap: max_prime,
        primes,
        n,
        pi_count,
        certified_solutions,
        lower_bound,
        f_n,
    };
    cert.verify()?;
    Ok(cert)
}

/// A member of the n = 2m²+2m+5 family (m ≢ 1 mod 3): both n and n−4 are
/// primitive sums of two squares, every prime factor of either is ≡ 1
/// (mod 4), and the solution profile of n has no k = 4 entry.
#[derive(Clone, Debug, Serialize)]
pub struct SkalbaWitness {
    pub m: u64,
    pub n: u64,
    /// n = (m−1)² + (m+2)²
    pub n_squares: (u64, u64),
    /// n−4 = m² + (m+1)²
    pub n_minus_4_squares: (u64, u64),
    pub n_factors: Vec<(u64, u32)>,
    pub n_minus_4_factors: Vec<(u64, u32)>,
    /// M(n, 4), asserted to be 0.
    pub m4: u64,
}

/// Cost ceiling on m: the M(n,4) check enumerates all solutions of
/// n ≈ 2m².
const SKALBA_MAX_M: u64 = 10_000;

/// Verifies one member of the two-squares family: the identities exactly,
/// the ≡ 1 (mod 4) condition on every prime factor of n and n−4, and
/// M(n,4) = 0 by enumeration. m ≡ 1 (mod 3) is rejected — 3 would then
/// divide n and the primitivity argument collapses.
pub fn skalba(m: u64) -> Result<SkalbaWitness> {
    if m < 1 || m % 3 == 1 {
        return Err(Error::domain(format!(
            "skalba({m}): the family needs m ≥ 1 with m ≢ 1 (mod 3)"
        )));
    }
    if m > SKALBA_MAX_M {
        return Err(Error::domain(format!(
            "skalba({m}): checking M(n,4) enumerates ~2m² values; m is capped at {SKALBA_MAX_M}"
        )));
    }
    let n = 2 * m * m + 2 * m + 5;
    let n_squares = (m - 1, m + 2);
    let n_minus_4_squares = (m, m + 1);
    if n_squares.0 * n_squares.0 + n_squares.1 * n_squares.1 != n
        || n_minus_4_squares.0 * n_minus_4_squares.0 + n_minus_4_squares.1 * n_minus_4_squares.1
            != n - 4
    {
        return Err(Error::invariant(format!("two-square identities fail at m={m}")));
    }
    let n_factors = arith::factorize(n)?.factors;
    let n_minus_4_factors = arith::factorize(n - 4)?.factors;
    for &(p, _) in n_factors.iter().chain(&n_minus_4_factors) {
        if p % 4 != 1 {
            return Err(Error::invariant(format!(
                "prime factor {p} of n or n−4 is not ≡ 1 (mod 4) at m={m}"
            )));
        }
    }
    let m4 = k_profile(n)?.m(4);
    if m4 != 0 {
        return Err(Error::invariant(format!("M({n},4) = {m4} refutes the family claim at m={m}")));
    }
    Ok(SkalbaWitness {
        m,
        n,
        n_squares,
        n_minus_4_squares,
        n_factors,
        n_minus_4_factors,
        m4,
    })
}
