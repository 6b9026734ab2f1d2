//! Exact directed-rounding interval arithmetic over big rationals.
//!
//! [`RatInterval<BITS>`] encloses a real number between two rationals whose
//! gap is kept near 2⁻ᴮᴵᵀˢ through `ln` and `sqrt`. Field operations are
//! exact (outward-rounded only by the enclosure width already present), so
//! any comparison that is *definite* on the interval is a proof about the
//! underlying real number. The bounds module uses this to decide exceedance
//! predicates and threshold signs that floating point cannot certify.

use crate::real::Real;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Sub};

/// A closed interval `[lo, hi]` of rationals enclosing one real value.
///
/// `BITS` is the precision target: `ln` and `sqrt` produce enclosures of
/// width about 2⁻ᴮᴵᵀˢ. Exact inputs stay exact (`lo == hi`) until a
/// transcendental op widens them.
#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval<const BITS: u32> {
    lo: BigRational,
    hi: BigRational,
}

impl<const BITS: u32> RatInterval<BITS> {
    fn point(r: BigRational) -> Self {
        Self { lo: r.clone(), hi: r }
    }

    pub fn from_int(n: u64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn lower(&self) -> &BigRational {
        &self.lo
    }

    pub fn upper(&self) -> &BigRational {
        &self.hi
    }

    /// `Some(true)` iff the enclosed value is provably ≥ n, `Some(false)`
    /// iff provably < n, `None` when the interval straddles n.
    pub fn definitely_at_least(&self, n: u64) -> Option<bool> {
        let n = BigRational::from_integer(BigInt::from(n));
        if self.lo >= n {
            Some(true)
        } else if self.hi < n {
            Some(false)
        } else {
            None
        }
    }

    /// Definite sign of the enclosed value: 1, -1, or 0 (exact zero only).
    pub fn definite_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

impl<const BITS: u32> Add for RatInterval<BITS> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { lo: self.lo + rhs.lo, hi: self.hi + rhs.hi }
    }
}

impl<const BITS: u32> Sub for RatInterval<BITS> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { lo: self.lo - rhs.hi, hi: self.hi - rhs.lo }
    }
}

impl<const BITS: u32> Mul for RatInterval<BITS> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let candidates = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Self { lo, hi }
    }
}

impl<const BITS: u32> Div for RatInterval<BITS> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // Formulas guarantee sign-definite denominators; anything else is a
        // caller bug, not a numerical condition to recover from.
        assert!(
            rhs.lo.is_positive() || rhs.hi.is_negative(),
            "division by an interval containing zero"
        );
        let candidates = [
            &self.lo / &rhs.lo,
            &self.lo / &rhs.hi,
            &self.hi / &rhs.lo,
            &self.hi / &rhs.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Self { lo, hi }
    }
}

impl<const BITS: u32> Zero for RatInterval<BITS> {
    fn zero() -> Self {
        Self::point(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl<const BITS: u32> One for RatInterval<BITS> {
    fn one() -> Self {
        Self::point(BigRational::one())
    }
}

impl<const BITS: u32> PartialOrd for RatInterval<BITS> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.lo == self.hi && other.lo == other.hi {
            return self.lo.partial_cmp(&other.lo);
        }
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl<const BITS: u32> FromPrimitive for RatInterval<BITS> {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::point(BigRational::from_integer(BigInt::from(n))))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::from_int(n))
    }
    fn from_f64(n: f64) -> Option<Self> {
        BigRational::from_float(n).map(Self::point)
    }
}

impl<const BITS: u32> Real for RatInterval<BITS> {
    fn ln(self) -> Self {
        assert!(self.lo.is_positive(), "ln of a non-positive interval");
        let (lo, _) = ln_bounds(&self.lo, BITS);
        let (_, hi) = ln_bounds(&self.hi, BITS);
        Self { lo, hi }
    }

    fn sqrt(self) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        let (lo, _) = sqrt_bounds(&self.lo, BITS);
        let (_, hi) = sqrt_bounds(&self.hi, BITS);
        Self { lo, hi }
    }
}

/// `[s, s+1] / (q·2^bits)` enclosure of √(p/q) via one integer square root
/// of p·q·4^bits: the lower bound squares to ≤ p/q, the upper to > p/q.
fn sqrt_bounds(r: &BigRational, bits: u32) -> (BigRational, BigRational) {
    if r.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let scaled = (p * q) << (2 * bits as usize);
    let s = scaled.sqrt();
    let den = BigInt::from(q << (bits as usize));
    (
        BigRational::new(BigInt::from(s.clone()), den.clone()),
        BigRational::new(BigInt::from(s + 1u32), den),
    )
}

/// Enclosure of ln(p/q) for positive rationals: normalize to m·2^e with
/// m ∈ [1,2), then ln m = 2·atanh((m−1)/(m+1)) and ln 2 = 2·atanh(1/3).
fn ln_bounds(r: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(r.is_positive(), "ln of a non-positive rational");
    if r.is_one() {
        return (BigRational::zero(), BigRational::zero());
    }
    let mut e = r.numer().magnitude().bits() as i64 - r.denom().magnitude().bits() as i64;
    let mut m = r * pow2(-e);
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    while m < one {
        m = &m * &two;
        e -= 1;
    }
    while m >= two {
        m = &m / &two;
        e += 1;
    }
    let u = (&m - &one) / (&m + &one);
    let (m_lo, m_hi) = atanh_twice_bounds(&u, bits);
    if e == 0 {
        return (m_lo, m_hi);
    }
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let (ln2_lo, ln2_hi) = atanh_twice_bounds(&third, bits);
    let e_rat = BigRational::from_integer(BigInt::from(e));
    if e > 0 {
        (m_lo + &e_rat * ln2_lo, m_hi + &e_rat * ln2_hi)
    } else {
        (m_lo + &e_rat * ln2_hi, m_hi + &e_rat * ln2_lo)
    }
}

/// `[S, S + R]` enclosure of 2·atanh(u) for 0 ≤ u ≤ 1/3, where S is the
/// partial sum 2Σ u^(2j+1)/(2j+1) and the tail is bounded by its first
/// omitted term times Σ u^(2t) ≤ 1/(1−u²) ≤ 9/8.
fn atanh_twice_bounds(u: &BigRational, bits: u32) -> (BigRational, BigRational) {
    if u.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    debug_assert!(u.is_positive() && *u <= BigRational::new(BigInt::from(1), BigInt::from(3)));
    let eps = pow2(-(bits as i64));
    let two = BigRational::from_integer(BigInt::from(2));
    let tail_factor = BigRational::new(BigInt::from(9), BigInt::from(4)); // 2 · 9/8
    let u2 = u * u;
    let mut upow = u.clone();
    let mut sum = BigRational::zero();
    let mut idx = 1u64;
    loop {
        sum = sum + &two * &upow / BigRational::from_integer(BigInt::from(idx));
        upow = &upow * &u2;
        idx += 2;
        let rem = &tail_factor * &upow / BigRational::from_integer(BigInt::from(idx));
        if rem < eps {
            return (sum.clone(), sum + rem);
        }
    }
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::from(1) << e as usize)
    } else {
        BigRational::new(BigInt::from(1), BigInt::from(1) << (-e) as usize)
    }
}
