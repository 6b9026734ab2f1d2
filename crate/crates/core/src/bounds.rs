//! The upper-bound machinery: the windowed divisor sum, the ρ/ρ′ bounds,
//! the functions g and h driving the f(n) < n threshold, the divisor ratio
//! C(n) = θ(n)/n^{1/4} and its champion search, and the exceedance
//! predicate that decides which n need direct enumeration.
//!
//! Formula cores are generic over [`Real`], so every bound can be evaluated
//! both in f64 (fast paths, reports) and in exact rational intervals
//! (borderline exceedance decisions). All logarithms are natural: the 0.6
//! constant is a harmonic-sum estimate that only holds for ln.
//!
//! A note on g: the two printed forms of its third term differ by a factor
//! of √n in the denominator (2√n − α versus 2n − α√n). Only the 2√n − α
//! form is consistent with the ρ′ bound, with h as printed, and with the
//! identity h = n^{1/4} − C·g/(2√n); it is the default here, and the damped
//! variant is kept behind [`GVariant`] for comparison.
//!
//! A second note, on the exceedance survey: the reference counts this
//! library reproduces (3030 + 3482 + 11 = 6523 interval exceedances, 118
//! square exceedances) do not come out under either form above. They are
//! recovered exactly — across all four independent tallies — by the same
//! bound with the second term weakened from 2(1+0.6/α)√n to 2√n, and with
//! the interval tallies weighting every n by θ(n) while the separate
//! square survey weights by θ(n)+1. That weakened envelope is
//! [`GVariant::Survey`], and it is what [`exceedance`] evaluates; the
//! sharper `Standard` form remains the proven bound used everywhere else.

use crate::arith::{divisor_count, divisor_count_range};
use crate::exact::RatInterval;
use crate::real::Real;
use crate::{Error, Result};
use num_traits::FromPrimitive;
use serde::Serialize;

/// Upper bound for the divisor ratio C(n) = θ(n)/n^{1/4}; every n satisfies
/// C(n) < C_UPPER, with the champion n = 21621600 coming within 10⁻⁵ of it.
pub const C_UPPER: f64 = 8.44697;

/// The α used throughout the exceedance computation.
pub const EXCEED_ALPHA: f64 = 2.95;

/// Which form of g to use (see the module notes). `Standard` is the
/// reconciled form used everywhere; `Damped` is the alternative printed
/// form, kept only so the two can be compared; `Survey` is the weakened
/// envelope the exceedance survey counts reproduce under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GVariant {
    /// third term 2(2n−1)α/(2√n − α)
    Standard,
    /// third term 2(2n−1)α/(2n − α√n)
    Damped,
    /// `Standard` with the second term weakened to 2√n (no 0.6/α part)
    Survey,
}

/// (1/α)·√n·ln n + 2(1 + 0.6/α)·√n — the first two terms shared by every
/// bound in this module.
fn leading_terms<S: Real>(n: u64, alpha: &S) -> S {
    let sqrt_n = S::from_int(n).sqrt();
    let ln_n = S::from_int(n).ln();
    let inv_alpha = S::one() / alpha.clone();
    inv_alpha.clone() * sqrt_n.clone() * ln_n
        + S::from_int(2) * (S::one() + S::from_ratio(3, 5) * inv_alpha) * sqrt_n
}

/// (2n−1)·α/(2√n − α), the tail term of the ρ bound. 2√n is computed as
/// √(4n) so exact backends need a single enclosure.
fn tail_term<S: Real>(n: u64, alpha: &S) -> S {
    let two_sqrt_n = S::from_int(4 * n).sqrt();
    S::from_int(2 * n - 1) * alpha.clone() / (two_sqrt_n - alpha.clone())
}

/// The ρ(a,b) bound for a·b = n: leading terms plus (2n−1)α/(2√n−α).
pub fn rho_bound_value<S: Real>(n: u64, alpha: S) -> S {
    leading_terms(n, &alpha) + tail_term(n, &alpha)
}

/// The ρ′(a,b) bound: same with the tail term doubled.
pub fn rho_prime_bound_value<S: Real>(n: u64, alpha: S) -> S {
    leading_terms(n, &alpha) + S::from_int(2) * tail_term(n, &alpha)
}

/// g(n, α): the per-divisor-pair bound with f(n) ≤ ½θ(n)·g(n,α).
pub fn g_value<S: Real>(n: u64, alpha: S, variant: GVariant) -> S {
    let base = match variant {
        GVariant::Survey => {
            let sqrt_n = S::from_int(n).sqrt();
            let ln_n = S::from_int(n).ln();
            S::one() / alpha.clone() * sqrt_n.clone() * ln_n + S::from_int(2) * sqrt_n
        }
        _ => leading_terms(n, &alpha),
    };
    let tail = match variant {
        GVariant::Standard | GVariant::Survey => S::from_int(2) * tail_term(n, &alpha),
        GVariant::Damped => {
            let sqrt_n = S::from_int(n).sqrt();
            S::from_int(2) * S::from_int(2 * n - 1) * alpha.clone()
                / (S::from_int(2 * n) - alpha.clone() * sqrt_n)
        }
    };
    base + tail
}

/// h(n, α, C) = n^{1/4} − (C/(2α))·ln n − (1 + 0.6/α)·C − C·(2n−1)α/(2n−α√n);
/// positive h certifies ½·C·n^{1/4}·g(n,α) < n, hence f(n) < n.
/// Algebraically h = n^{1/4} − C·g(n,α)/(2√n) with the standard g.
pub fn h_value<S: Real>(n: u64, alpha: S, c: S) -> S {
    let sqrt_n = S::from_int(n).sqrt();
    let quarter_root = sqrt_n.clone().sqrt();
    let ln_n = S::from_int(n).ln();
    let inv_alpha = S::one() / alpha.clone();
    let damped_tail = S::from_int(2 * n - 1) * alpha.clone()
        / (S::from_int(2 * n) - alpha.clone() * sqrt_n);
    quarter_root
        - c.clone() * inv_alpha.clone() / S::from_int(2) * ln_n
        - (S::one() + S::from_ratio(3, 5) * inv_alpha) * c.clone()
        - damped_tail * c
}

fn check_alpha_le_sqrt_n(n: u64, alpha: f64, what: &str) -> Result<()> {
    if !(alpha >= 1.0 && alpha * alpha <= n as f64) {
        return Err(Error::domain(format!("{what}: need 1 ≤ α ≤ √n, got α={alpha}, n={n}")));
    }
    Ok(())
}

fn check_alpha_below_2_sqrt_n(n: u64, alpha: f64, what: &str) -> Result<()> {
    if n < 1 || !(alpha >= 1.0 && alpha * (n as f64).sqrt() < 2.0 * n as f64) {
        return Err(Error::domain(format!("{what}: need 1 ≤ α and α√n < 2n, got α={alpha}, n={n}")));
    }
    Ok(())
}

/// The windowed divisor sum Σ_{j=1}^{⌊√n/α⌋} θ(n−j) together with its
/// proven strict upper bound (1/α)√n·ln n + 2(1+0.6/α)√n.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WindowSum {
    pub n: u64,
    pub alpha: f64,
    /// ⌊√n/α⌋, the number of summed divisor counts.
    pub terms: u64,
    pub sum: u64,
    pub bound: f64,
}

/// Evaluates the windowed divisor sum for n ≥ 22 and 1 ≤ α ≤ √n and checks
/// the strict inequality sum < bound; its failure would refute the bound
/// and is reported as an invariant error.
pub fn window_theta_sum(n: u64, alpha: f64) -> Result<WindowSum> {
    if n < 22 {
        return Err(Error::domain(format!(
            "window_theta_sum({n}): the bound requires n ≥ 22"
        )));
    }
    check_alpha_le_sqrt_n(n, alpha, "window_theta_sum")?;
    let terms = ((n as f64).sqrt() / alpha).floor() as u64;
    debug_assert!(terms >= 1);
    let sum = divisor_count_range(n - terms, n - 1)?.into_iter().map(u64::from).sum();
    let bound = leading_terms::<f64>(n, &alpha);
    let out = WindowSum { n, alpha, terms, sum, bound };
    if !((sum as f64) < bound) {
        return Err(Error::invariant(format!(
            "window sum refuted: Σθ = {sum} is not below {bound} for n={n}, α={alpha}"
        )));
    }
    Ok(out)
}

/// Validated f64 evaluation of the ρ bound (1 ≤ α ≤ √n).
pub fn rho_bound(n: u64, alpha: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("rho_bound: n must be positive"));
    }
    check_alpha_le_sqrt_n(n, alpha, "rho_bound")?;
    Ok(rho_bound_value(n, alpha))
}

/// Validated f64 evaluation of the ρ′ bound (1 ≤ α ≤ √n).
pub fn rho_prime_bound(n: u64, alpha: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("rho_prime_bound: n must be positive"));
    }
    check_alpha_le_sqrt_n(n, alpha, "rho_prime_bound")?;
    Ok(rho_prime_bound_value(n, alpha))
}

/// Validated f64 evaluation of g with the standard third term. The domain
/// is the weaker α√n < 2n (not α ≤ √n): the square sweep evaluates g down
/// to n = 4 with α = 2.95.
pub fn g_bound(n: u64, alpha: f64) -> Result<f64> {
    check_alpha_below_2_sqrt_n(n, alpha, "g_bound")?;
    Ok(g_value(n, alpha, GVariant::Standard))
}

/// Validated f64 evaluation of h.
pub fn h_margin(n: u64, alpha: f64, c: f64) -> Result<f64> {
    check_alpha_below_2_sqrt_n(n, alpha, "h_margin")?;
    if !(c > 0.0) {
        return Err(Error::domain(format!("h_margin: need C > 0, got {c}")));
    }
    Ok(h_value(n, alpha, c))
}

/// H_n − ln n, the harmonic gap behind the 0.6 constant: below 0.6 for all
/// n ≥ 22 and decreasing in n.
pub fn harmonic_gap(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("harmonic_gap: n must be positive"));
    }
    if n > 100_000_000 {
        return Err(Error::domain(format!("harmonic_gap({n}): summing that far is pointless")));
    }
    let h: f64 = (1..=n).map(|j| 1.0 / j as f64).sum();
    Ok(h - (n as f64).ln())
}

/// C(n) = θ(n)/n^{1/4}.
pub fn c_ratio(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("c_ratio: n must be positive"));
    }
    Ok(divisor_count(n)? as f64 / (n as f64).powf(0.25))
}

/// A maximizer of C(n) = θ(n)/n^{1/4} over the candidate set.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Champion {
    pub n: u64,
    pub theta: u64,
    pub c: f64,
}

const CHAMPION_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// True when θa⁴/na > θb⁴/nb, decided exactly by cross-multiplication;
/// ties go to the smaller n.
fn champion_beats(a: (u64, u64), b: (u64, u64)) -> bool {
    let lhs = u128::from(a.1).pow(4) * u128::from(b.0);
    let rhs = u128::from(b.1).pow(4) * u128::from(a.0);
    lhs > rhs || (lhs == rhs && a.0 < b.0)
}

fn champion_search(primes: &[u64], limit: u64, n: u64, theta: u64, max_exp: u32, best: &mut (u64, u64)) {
    let Some((&p, rest)) = primes.split_first() else { return };
    let mut m = n;
    for e in 1..=max_exp {
        m = match m.checked_mul(p) {
            Some(v) if v <= limit => v,
            _ => return,
        };
        let t = theta * u64::from(e + 1);
        if champion_beats((m, t), *best) {
            *best = (m, t);
        }
        champion_search(rest, limit, m, t, e, best);
    }
}

/// Finds the maximizer of C(n) for n ≤ limit over the candidate set of
/// products of consecutive smallest primes with non-increasing exponents
/// (any maximizer has this shape: θ only sees the exponent multiset, and
/// reassigning exponents decreasingly onto 2, 3, 5, … can only shrink n).
/// Comparisons are exact; only the reported C value is floating point.
pub fn find_champion(limit: u64) -> Result<Champion> {
    if limit < 2 {
        return Err(Error::domain(format!("find_champion({limit}): need limit ≥ 2")));
    }
    let table_span: u64 = CHAMPION_PRIMES.iter().product();
    if limit > table_span {
        return Err(Error::domain(format!(
            "find_champion({limit}): the {} hard-coded primes only cover limits up to {table_span}",
            CHAMPION_PRIMES.len()
        )));
    }
    let mut best = (1, 1);
    champion_search(&CHAMPION_PRIMES, limit, 1, 1, 63, &mut best);
    let (n, theta) = best;
    Ok(Champion { n, theta, c: theta as f64 / (n as f64).powf(0.25) })
}

/// Exceedance verdicts for one n: does the counting bound fail to stay
/// below n, forcing direct enumeration? Both flags evaluate the survey
/// envelope ([`GVariant::Survey`]; see the module notes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Exceedance {
    pub n: u64,
    /// ½·θ(n)·g(n,α) ≥ n — the plain-weight predicate behind the interval
    /// tallies, evaluated for every n.
    pub nonsquare: bool,
    /// ½·(θ(n)+1)·g(n,α) ≥ n, evaluated only when n is a perfect square
    /// (false otherwise): a square's divisor √n pairs with itself and
    /// contributes the extra ½·g. This drives the separate square survey.
    pub square: bool,
    pub is_square: bool,
}

/// Relative width of the borderline band around n inside which the f64
/// comparison is re-decided in exact interval arithmetic.
const EXCEED_GUARD: f64 = 1e-6;

/// Decides weight·g(n,α) ≥ 2n exactly, at the given interval precision;
/// None when the enclosure still straddles.
fn exceeds_exact<const BITS: u32>(n: u64, weight: u64, alpha: f64) -> Option<bool> {
    let a = RatInterval::<BITS>::from_f64(alpha).expect("finite alpha");
    let g = g_value(n, a, GVariant::Survey);
    (g * RatInterval::<BITS>::from_int(weight)).definitely_at_least(2 * n)
}

/// weight·g ≥ 2n (the halved comparison cleared of the ½), with the f64
/// path guarded: borderline values within EXCEED_GUARD·n are escalated to
/// exact interval arithmetic at 192, 384, then 768 bits. α enters the
/// exact evaluation as the exact rational value of the f64 argument.
fn exceeds_weighted(n: u64, weight: u64, alpha: f64) -> Result<bool> {
    let g = g_value::<f64>(n, alpha, GVariant::Survey);
    let lhs = weight as f64 * g;
    let rhs = 2.0 * n as f64;
    if (lhs - rhs).abs() > EXCEED_GUARD * rhs {
        return Ok(lhs >= rhs);
    }
    exceeds_exact::<192>(n, weight, alpha)
        .or_else(|| exceeds_exact::<384>(n, weight, alpha))
        .or_else(|| exceeds_exact::<768>(n, weight, alpha))
        .ok_or_else(|| {
            Error::invariant(format!(
                "exceedance at n={n}, α={alpha} is undecided at 768-bit precision"
            ))
        })
}

/// Evaluates both exceedance predicates for n ≥ 2 (the square one only for
/// squares), with exact fallback on borderline values.
pub fn exceedance(n: u64, alpha: f64) -> Result<Exceedance> {
    exceedance_with_theta(n, divisor_count(n)?, alpha)
}

/// [`exceedance`] when θ(n) is already known (the range scans sieve it).
pub fn exceedance_with_theta(n: u64, theta: u64, alpha: f64) -> Result<Exceedance> {
    if n < 2 {
        return Err(Error::domain(format!("exceedance({n}): n must be at least 2")));
    }
    check_alpha_below_2_sqrt_n(n, alpha, "exceedance")?;
    let is_square = {
        let r = n.isqrt();
        r * r == n
    };
    let nonsquare = exceeds_weighted(n, theta, alpha)?;
    let square = is_square && exceeds_weighted(n, theta + 1, alpha)?;
    Ok(Exceedance { n, nonsquare, square, is_square })
}

/// Inputs of a bound report; ε is the exponent in n^ε = n^{1/4} inside h
/// and is fixed — the constant C_UPPER is tied to that exponent.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundParams {
    pub n: u64,
    pub alpha: f64,
    pub c: f64,
    pub epsilon: f64,
}

impl BoundParams {
    pub fn new(n: u64, alpha: f64) -> Self {
        BoundParams { n, alpha, c: C_UPPER, epsilon: 0.25 }
    }

    pub fn with_c(n: u64, alpha: f64, c: f64) -> Self {
        BoundParams { n, alpha, c, epsilon: 0.25 }
    }
}

/// Every bound of this module evaluated at one (n, α, C). `g` is the
/// standard (proven) form; the two exceed flags come from [`exceedance`]
/// and therefore use the survey envelope.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub alpha: f64,
    pub rho_bound: f64,
    pub rho_prime_bound: f64,
    pub g: f64,
    pub h: f64,
    pub c_ratio: f64,
    pub exceed_nonsquare: bool,
    pub exceed_square: bool,
}

/// Assembles a [`BoundReport`], also re-checking that ρ′ ≥ ρ and that the
/// h-vs-g identity holds to 10⁻⁹ relative accuracy.
pub fn bound_report(params: &BoundParams) -> Result<BoundReport> {
    let BoundParams { n, alpha, c, epsilon } = *params;
    if n < 2 {
        return Err(Error::domain(format!("bound_report: n must be at least 2, got {n}")));
    }
    if epsilon != 0.25 {
        return Err(Error::domain(format!("bound_report: only ε = 1/4 is supported, got {epsilon}")));
    }
    let rho = rho_bound(n, alpha)?;
    let rho_prime = rho_prime_bound(n, alpha)?;
    let g = g_bound(n, alpha)?;
    let h = h_margin(n, alpha, c)?;
    let exceed = exceedance(n, alpha)?;
    if rho_prime < rho {
        return Err(Error::invariant(format!("ρ′ bound {rho_prime} below ρ bound {rho} at n={n}")));
    }
    let quarter_root = (n as f64).powf(0.25);
    let via_g = quarter_root - c * g / (2.0 * (n as f64).sqrt());
    if (h - via_g).abs() > 1e-9 * quarter_root {
        return Err(Error::invariant(format!(
            "h = {h} and n^(1/4) − C·g/(2√n) = {via_g} disagree beyond 1e−9 relative at n={n}"
        )));
    }
    Ok(BoundReport {
        n,
        alpha,
        rho_bound: rho,
        rho_prime_bound: rho_prime,
        g,
        h,
        c_ratio: c_ratio(n)?,
        exceed_nonsquare: exceed.nonsquare,
        exceed_square: exceed.square,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn window_sum_hand_values() {
        let w = window_theta_sum(22, 1.0).unwrap();
        assert_eq!(w.terms, 4);
        // θ(21)+θ(20)+θ(19)+θ(18) = 4+6+2+6
        assert_eq!(w.sum, 18);
        assert!(close(w.bound, 29.505, 0.01), "bound = {}", w.bound);

        let tight = window_theta_sum(22, (22f64).sqrt()).unwrap();
        assert_eq!(tight.terms, 1);
        assert_eq!(tight.sum, 4);

        assert!(window_theta_sum(21, 1.0).is_err());
        assert!(window_theta_sum(22, 0.5).is_err());
        assert!(window_theta_sum(1_000_000, 2.95).is_ok());
    }

    #[test]
    fn rho_bound_hand_value() {
        // 2·ln4 + 2·1.6·2 + 7/3
        let b = rho_bound(4, 1.0).unwrap();
        assert!(close(b, 2.0 * 4f64.ln() + 6.4 + 7.0 / 3.0, 1e-12), "got {b}");
        assert!(close(b, 11.506, 0.001));
        let bp = rho_prime_bound(4, 1.0).unwrap();
        assert!(close(bp, b + 7.0 / 3.0, 1e-12));
        assert!(rho_bound(4, 2.95).is_err(), "α must stay below √n");
    }

    #[test]
    fn g_hand_value_and_variants() {
        // Standard third term at (4,1): 2·7·1/(2·2−1) = 14/3.
        let g = g_bound(4, 1.0).unwrap();
        assert!(close(g, 2.0 * 4f64.ln() + 6.4 + 14.0 / 3.0, 1e-12), "got {g}");
        // Damped: 2·7·1/(8−2) = 14/6.
        let damped = g_value::<f64>(4, 1.0, GVariant::Damped);
        assert!(close(damped, 2.0 * 4f64.ln() + 6.4 + 14.0 / 6.0, 1e-12));
        assert!(damped < g);
        // g is defined below α = √n, where the ρ bound is not.
        assert!(g_bound(4, 2.95).is_ok());
        assert!(g_bound(1, 2.95).is_err());
    }

    #[test]
    fn h_threshold_behaviour() {
        let at_threshold = h_margin(11_621_000, EXCEED_ALPHA, C_UPPER).unwrap();
        assert!(at_threshold > 0.0, "h = {at_threshold}");
        assert!(at_threshold < 0.05, "h = {at_threshold}");
        assert!(h_margin(11_620_000, EXCEED_ALPHA, C_UPPER).unwrap() < at_threshold);
        assert!(h_margin(1_000_000_000_000, EXCEED_ALPHA, C_UPPER).unwrap() > 0.0);
    }

    #[test]
    fn h_equals_quarter_root_minus_scaled_g() {
        for &n in &[100u64, 5000, 123_456, 11_621_000, 1_000_000_000_000] {
            let g = g_value::<f64>(n, EXCEED_ALPHA, GVariant::Standard);
            let h = h_value::<f64>(n, EXCEED_ALPHA, C_UPPER);
            let via_g = (n as f64).powf(0.25) - C_UPPER * g / (2.0 * (n as f64).sqrt());
            assert!(
                (h - via_g).abs() <= 1e-9 * (n as f64).powf(0.25),
                "identity off at n={n}: {h} vs {via_g}"
            );
        }
    }

    #[test]
    fn champion_tiny_limits() {
        // Candidates ≤ 10 are 2, 4, 8, 6, with θ⁴/n = 16/2, 81/4, 256/8,
        // 256/6; the squarefree 6 = 2·3 wins at ≈ 42.7.
        let c = find_champion(10).unwrap();
        assert_eq!((c.n, c.theta), (6, 4));
        let c = find_champion(2).unwrap();
        assert_eq!((c.n, c.theta), (2, 2));
        assert!(find_champion(1).is_err());
    }

    #[test]
    fn champion_comparison_is_exact_with_ties_to_smaller_n() {
        // 3 = 2⁰3¹ has increasing exponents and is not a candidate, so the
        // limit-3 champion is still 2.
        assert_eq!(find_champion(3).unwrap().n, 2);
        // The comparator itself: strict beats, and equal ratios go to the
        // smaller n (θ⁴/n equal for (2,2) vs (32,4) since 16/2 = 256/32).
        assert!(champion_beats((32, 4), (48, 4)));
        assert!(champion_beats((2, 2), (32, 4)));
        assert!(!champion_beats((32, 4), (2, 2)));
    }

    #[test]
    fn c_ratio_values() {
        assert!(close(c_ratio(1).unwrap(), 1.0, 1e-15));
        assert!(close(c_ratio(2).unwrap(), 2.0 / 2f64.powf(0.25), 1e-12));
    }

    #[test]
    fn exceedance_spot_values() {
        // A prime: θ = 2, and ½·2·g(99991) ≈ 1480 is far below n.
        let p = exceedance(99_991, EXCEED_ALPHA).unwrap();
        assert!(!p.nonsquare && !p.square && !p.is_square);
        // Small n exceed trivially: ½θ(30)g(30) ≫ 30.
        let s = exceedance(30, EXCEED_ALPHA).unwrap();
        assert!(s.nonsquare);
        // A square: both predicates apply.
        let q = exceedance(1_587_600, EXCEED_ALPHA).unwrap();
        assert!(q.is_square && q.square);
    }

    #[test]
    fn exact_escalation_agrees_with_f64_far_from_the_boundary() {
        for &(n, weight) in &[(99_991u64, 2u64), (30, 8), (1_587_600, 226), (5_045_040, 480)] {
            let g = g_value::<f64>(n, EXCEED_ALPHA, GVariant::Standard);
            let fast = weight as f64 * g >= 2.0 * n as f64;
            let exact = exceeds_exact::<192>(n, weight, EXCEED_ALPHA).unwrap();
            assert_eq!(fast, exact, "n={n}, weight={weight}");
        }
    }

    #[test]
    fn report_is_internally_consistent() {
        let r = bound_report(&BoundParams::new(360, 2.95)).unwrap();
        assert!(r.rho_prime_bound >= r.rho_bound);
        assert!(r.g > r.rho_bound, "g doubles the tail, so it dominates ρ's bound");
        assert!(!r.exceed_square, "360 is not a square");
        assert!(bound_report(&BoundParams::new(1, 1.0)).is_err());
        let mut p = BoundParams::new(360, 2.95);
        p.epsilon = 0.3;
        assert!(bound_report(&p).is_err());
    }

    #[test]
    fn harmonic_gap_decreases_below_point_six() {
        let mut prev = harmonic_gap(22).unwrap();
        assert!(prev < 0.6);
        for &n in &[50u64, 100, 1000, 10_000, 100_000] {
            let gap = harmonic_gap(n).unwrap();
            assert!(gap < prev, "gap must decrease: {gap} at n={n} after {prev}");
            prev = gap;
        }
        assert!(prev > 0.577, "the gap approaches the Euler–Mascheroni constant from above");
    }
}
