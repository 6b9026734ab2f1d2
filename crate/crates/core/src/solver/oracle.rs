//! Two deliberately dumb solvers used to cross-validate the fast
//! enumeration, plus the congruence-side counting operations.
//!
//! Both oracles share nothing with [`super::enumerate`] beyond the
//! [`Solution`] verifier: one searches the cleared equation directly over
//! its proven-finite box, the other sweeps the congruence
//! a·x + b·y ≡ 1 (mod x·y). Keep them slow and obvious.

use super::solution::{Solution, SolutionSet};
use crate::arith::{divisors, mod_inverse};
use crate::{Error, Result};

/// Default refusal threshold for [`oracle_quadruple`], which does on the
/// order of n²·log n divisions.
pub const ORACLE_QUADRUPLE_CAP: u64 = 500;

/// Default refusal threshold for [`oracle_congruence`], which does on the
/// order of θ(n)·n modular inversions.
pub const ORACLE_CONGRUENCE_CAP: u64 = 10_000;

/// Hard ceiling on n for the quadruple search even under a caller-supplied
/// cap; beyond it the intermediate products x·k and X·x could leave u64
/// (and the search would take years regardless).
const QUAD_SEARCH_MAX: u64 = 3_000_000_000;

/// Hard ceiling on a·b for congruence sweeps: 2ab modular inversions is
/// seconds of work here and keeps every intermediate product inside u64.
const RHO_SWEEP_MAX: u64 = 100_000_000;

/// Brute-force search of the cleared equation (X·x+1)(Y·y+1) = n·x·y over
/// every X, Y ≥ 1 with X·Y ≤ n−1 and every 2 ≤ x, y ≤ 2n−1.
///
/// The box is exhaustive: X·Y < n because 1/x and 1/y are positive, and
/// max(x, y) ≤ (2n−1)/(2k−1) ≤ 2n−1 for every solution. Rather than loop
/// over y, the search derives the unique y-candidate for each (X, Y, x)
/// from the cleared equation, y·(x·k − Y) = X·x + 1 with k = n − X·Y,
/// then tests the equation on the resulting quadruple; this visits exactly
/// the lattice points of the box that any y-loop would accept. Every
/// solution is found twice (once per orientation of the two pairs), which
/// is asserted after deduplication.
pub fn oracle_quadruple(n: u64) -> Result<SolutionSet> {
    oracle_quadruple_with_cap(n, ORACLE_QUADRUPLE_CAP)
}

/// [`oracle_quadruple`] with an explicit refusal threshold, for tests that
/// accept the quadratic cost.
pub fn oracle_quadruple_with_cap(n: u64, cap: u64) -> Result<SolutionSet> {
    if n < 2 {
        return Err(Error::domain(format!("oracle_quadruple({n}): n must be at least 2")));
    }
    if n > cap.min(QUAD_SEARCH_MAX) {
        return Err(Error::domain(format!(
            "oracle_quadruple({n}) refused: the search is quadratic in n and capped at {cap}"
        )));
    }
    let mut raw = Vec::new();
    for x_int in 1..=(n - 1) {
        for y_int in 1..=((n - 1) / x_int) {
            let k = n - x_int * y_int;
            for x_den in 2..=(2 * n - 1) {
                // y·(x·k − Y) = X·x + 1, so a solution needs a positive
                // divisor relation here.
                let Some(d) = (x_den * k).checked_sub(y_int) else { continue };
                if d == 0 {
                    continue;
                }
                let num = x_int * x_den + 1;
                if num % d != 0 {
                    continue;
                }
                let y_den = num / d;
                if !(2..=(2 * n - 1)).contains(&y_den) {
                    continue;
                }
                let lhs = u128::from(x_int * x_den + 1) * u128::from(y_int * y_den + 1);
                let rhs = u128::from(n) * u128::from(x_den) * u128::from(y_den);
                if lhs == rhs {
                    raw.push(Solution::from_quadruple(n, x_int, x_den, y_int, y_den)?);
                }
            }
        }
    }
    let found = raw.len();
    let set = SolutionSet::from_unsorted(n, raw)?;
    if found != 2 * set.solutions.len() {
        return Err(Error::invariant(format!(
            "oracle_quadruple({n}) hit {found} orientations for {} solutions; expected exactly 2 each",
            set.solutions.len()
        )));
    }
    Ok(set)
}

/// Solves n via the congruence a·x + b·y ≡ 1 (mod x·y): for each ordered
/// factorization a·b = n and each y in [2, 2n−1] coprime to a, the only
/// possible x below y is the inverse of a modulo y; pairs passing the full
/// congruence convert back through X = (b·y−1)/x, Y = (a·x−1)/y.
///
/// Every solution of the equation, oriented so that x < y, arises from
/// exactly one (a, b, y); transposition then reconciles this with the
/// X-side canonical order.
pub fn oracle_congruence(n: u64) -> Result<SolutionSet> {
    oracle_congruence_with_cap(n, ORACLE_CONGRUENCE_CAP)
}

/// [`oracle_congruence`] with an explicit refusal threshold.
pub fn oracle_congruence_with_cap(n: u64, cap: u64) -> Result<SolutionSet> {
    if n < 2 {
        return Err(Error::domain(format!("oracle_congruence({n}): n must be at least 2")));
    }
    if n > cap.min(RHO_SWEEP_MAX) {
        return Err(Error::domain(format!(
            "oracle_congruence({n}) refused: the sweep costs θ(n)·n inversions and is capped at {cap}"
        )));
    }
    let mut solutions = Vec::new();
    for &a in &divisors(n)? {
        let b = n / a;
        for (x_den, y_den) in rho_scan(a, b) {
            let s_x = u128::from(b) * u128::from(y_den) - 1;
            let s_y = u128::from(a) * u128::from(x_den) - 1;
            debug_assert_eq!(s_x % u128::from(x_den), 0);
            debug_assert_eq!(s_y % u128::from(y_den), 0);
            let x_int = u64::try_from(s_x / u128::from(x_den)).expect("X fits u64 for u64 n");
            let y_int = u64::try_from(s_y / u128::from(y_den)).expect("Y fits u64 for u64 n");
            let s = Solution::from_quadruple(n, x_int, x_den, y_int, y_den)?;
            if (s.a, s.b) != (a, b) {
                return Err(Error::invariant(format!(
                    "congruence pair (a,b)=({a},{b}) produced {s} with witnesses ({},{})",
                    s.a, s.b
                )));
            }
            solutions.push(s.canonicalized());
        }
    }
    solutions.sort_unstable();
    for w in solutions.windows(2) {
        if w[0] == w[1] {
            return Err(Error::invariant(format!(
                "oracle_congruence({n}): the (a,b,y) ↦ solution map is not injective at {}",
                w[0]
            )));
        }
    }
    let set = SolutionSet { n, solutions };
    set.verify()?;
    Ok(set)
}

/// All pairs (x, y) with 1 < x < y and x·y | a·x + b·y − 1, in increasing
/// y order. |result| = ρ(a, b).
///
/// For fixed y, reducing the congruence modulo y forces a·x ≡ 1, so the
/// single candidate below y is the modular inverse. Any such pair yields a
/// solution of the equation for n = a·b, whence y ≤ 2ab−1 bounds the
/// sweep; for a·b = 1 the congruence forces x·y | x+y−1 < x·y, so the
/// empty sweep is also exhaustive.
pub(crate) fn rho_scan(a: u64, b: u64) -> Vec<(u64, u64)> {
    let n = a.checked_mul(b).expect("a·b fits u64");
    assert!(n <= RHO_SWEEP_MAX, "rho sweep over a·b = {n} exceeds the cost ceiling");
    let mut pairs = Vec::new();
    for y in 2..=(2 * n).saturating_sub(1) {
        let Ok(x) = mod_inverse(a, y) else { continue };
        if x < 2 {
            continue;
        }
        let residue = u128::from(a) * u128::from(x) + u128::from(b) * u128::from(y) - 1;
        if residue % (u128::from(x) * u128::from(y)) == 0 {
            pairs.push((x, y));
        }
    }
    pairs
}

/// The two congruence solution counts attached to an ordered pair (a, b):
/// `rho` counts pairs with 1 < x < y, `rho_prime` counts ordered pairs
/// with x, y > 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoCounts {
    pub rho: u64,
    pub rho_prime: u64,
}

/// Counts ρ(a,b) and ρ′(a,b) by direct sweep.
///
/// ρ′ is assembled as ρ(a,b) + ρ(b,a): the congruence expression is
/// symmetric under swapping (a,x) ↔ (b,y), so the x > y solutions for
/// (a,b) are exactly the transposed x < y solutions for (b,a), and x = y
/// is impossible (it would force x | 1). Summing ρ over the ordered
/// factorizations of n gives f(n).
pub fn rho_counts(a: u64, b: u64) -> Result<RhoCounts> {
    let n = a
        .checked_mul(b)
        .ok_or_else(|| Error::domain(format!("rho_counts({a},{b}): a·b overflows u64")))?;
    if a < 1 || b < 1 || n < 2 {
        return Err(Error::domain(format!("rho_counts({a},{b}): need a,b ≥ 1 and a·b ≥ 2")));
    }
    if n > RHO_SWEEP_MAX {
        return Err(Error::domain(format!(
            "rho_counts({a},{b}): the sweep costs 2ab inversions; a·b is capped at {RHO_SWEEP_MAX}"
        )));
    }
    let rho = rho_scan(a, b).len() as u64;
    let rho_prime = rho + rho_scan(b, a).len() as u64;
    Ok(RhoCounts { rho, rho_prime })
}

/// One boundary line (x = 1 or y = 1) of the congruence solution set,
/// described parametrically instead of enumerated: with x = 1 the
/// congruence collapses to y | a−1, which for a = 1 is every y at once —
/// that is the only way the solution set becomes infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryFamily {
    /// x = 1 and y ranges over every positive integer (requires a = 1).
    XOneAnyY,
    /// x = 1 and y ranges over the divisors of the given value (= a−1 ≥ 1).
    XOneYDivides(u64),
    /// y = 1 and x ranges over every positive integer (requires b = 1).
    YOneAnyX,
    /// y = 1 and x ranges over the divisors of the given value (= b−1 ≥ 1).
    YOneXDivides(u64),
}

/// The complete solution set of a·x + b·y ≡ 1 (mod x·y) over x, y ≥ 1:
/// boundary lines parametrically, interior points exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSolutions {
    pub a: u64,
    pub b: u64,
    /// True exactly when a = 1 or b = 1 — the infinitude criterion.
    pub infinite_family: bool,
    pub boundary: Vec<BoundaryFamily>,
    /// All ordered pairs with x, y ≥ 2, sorted.
    pub interior: Vec<(u64, u64)>,
}

/// Describes every (x, y) with x, y ≥ 1 solving the congruence for the
/// ordered pair (a, b): the x = 1 / y = 1 boundary as divisor conditions
/// (infinite exactly when a = 1 or b = 1), the x, y ≥ 2 interior as an
/// explicit finite list.
pub fn congruence_solutions(a: u64, b: u64) -> Result<CongruenceSolutions> {
    if a < 1 || b < 1 {
        return Err(Error::domain(format!("congruence_solutions({a},{b}): need a,b ≥ 1")));
    }
    let n = a
        .checked_mul(b)
        .ok_or_else(|| Error::domain(format!("congruence_solutions({a},{b}): a·b overflows u64")))?;
    if n > RHO_SWEEP_MAX {
        return Err(Error::domain(format!(
            "congruence_solutions({a},{b}): the sweep costs 2ab inversions; a·b is capped at {RHO_SWEEP_MAX}"
        )));
    }
    let boundary = vec![
        if a == 1 { BoundaryFamily::XOneAnyY } else { BoundaryFamily::XOneYDivides(a - 1) },
        if b == 1 { BoundaryFamily::YOneAnyX } else { BoundaryFamily::YOneXDivides(b - 1) },
    ];
    let mut interior = rho_scan(a, b);
    interior.extend(rho_scan(b, a).into_iter().map(|(x, y)| (y, x)));
    interior.sort_unstable();
    Ok(CongruenceSolutions { a, b, infinite_family: a == 1 || b == 1, boundary, interior })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::enumerate::enumerate_solutions;

    #[test]
    fn quadruple_oracle_small_values() {
        let two = oracle_quadruple(2).unwrap();
        assert_eq!(two.f(), 1);
        let three = oracle_quadruple(3).unwrap();
        assert_eq!(three.f(), 2);
        assert!(three.solutions.iter().all(|s| s.k == 1));
        let eleven = oracle_quadruple(11).unwrap();
        assert!(eleven
            .solutions
            .iter()
            .any(|s| (s.x_int, s.x_den, s.y_int, s.y_den) == (1, 2, 7, 3)));
    }

    #[test]
    fn quadruple_oracle_refuses_beyond_cap() {
        assert!(oracle_quadruple(ORACLE_QUADRUPLE_CAP + 1).is_err());
        assert!(oracle_quadruple_with_cap(501, 501).is_ok());
    }

    #[test]
    fn congruence_oracle_small_values() {
        assert_eq!(oracle_congruence(2).unwrap().f(), 1);
        assert_eq!(oracle_congruence(5).unwrap(), oracle_quadruple(5).unwrap());
        assert!(oracle_congruence(ORACLE_CONGRUENCE_CAP + 1).is_err());
    }

    #[test]
    fn oracles_agree_with_enumeration() {
        for n in 2..=120 {
            let fast = enumerate_solutions(n).unwrap();
            assert_eq!(fast, oracle_quadruple(n).unwrap(), "quadruple oracle at n={n}");
            assert_eq!(fast, oracle_congruence(n).unwrap(), "congruence oracle at n={n}");
        }
    }

    #[test]
    fn rho_matches_the_spot_values() {
        assert_eq!(rho_counts(2, 1).unwrap(), RhoCounts { rho: 1, rho_prime: 1 });
        assert_eq!(rho_counts(1, 2).unwrap(), RhoCounts { rho: 0, rho_prime: 1 });
        assert_eq!(rho_scan(2, 1), vec![(2, 3)]);
        assert!(rho_counts(1, 1).is_err());
    }

    #[test]
    fn rho_prime_against_a_direct_double_loop() {
        for (a, b) in [(1, 2), (2, 1), (3, 5), (5, 3), (4, 4), (1, 12), (7, 1)] {
            let n = a * b;
            let mut direct = 0;
            for x in 2..=(2 * n - 1) {
                for y in 2..=(2 * n - 1) {
                    let num = u128::from(a) * u128::from(x) + u128::from(b) * u128::from(y) - 1;
                    if num % (u128::from(x) * u128::from(y)) == 0 {
                        direct += 1;
                    }
                }
            }
            assert_eq!(rho_counts(a, b).unwrap().rho_prime, direct, "(a,b)=({a},{b})");
        }
    }

    #[test]
    fn rho_sums_to_f() {
        for n in [5u64, 9, 12, 30] {
            let total: u64 = crate::arith::divisors(n)
                .unwrap()
                .iter()
                .map(|&a| rho_counts(a, n / a).unwrap().rho)
                .sum();
            assert_eq!(total, enumerate_solutions(n).unwrap().f(), "n={n}");
        }
    }

    #[test]
    fn congruence_solution_structure() {
        let inf = congruence_solutions(1, 5).unwrap();
        assert!(inf.infinite_family);
        assert_eq!(inf.boundary[0], BoundaryFamily::XOneAnyY);
        assert_eq!(inf.boundary[1], BoundaryFamily::YOneXDivides(4));

        let edge = congruence_solutions(2, 1).unwrap();
        assert!(edge.infinite_family);
        // x = 1 forces y | a−1 = 1: only y = 1 on that line.
        assert_eq!(edge.boundary[0], BoundaryFamily::XOneYDivides(1));
        assert_eq!(edge.interior, vec![(2, 3)]);

        let finite = congruence_solutions(3, 5).unwrap();
        assert!(!finite.infinite_family);
        assert_eq!(finite.boundary.len(), 2);
        // Every interior point satisfies the congruence.
        for &(x, y) in &finite.interior {
            assert!(x >= 2 && y >= 2);
            assert_eq!((3 * x + 5 * y - 1) % (x * y), 0);
        }
    }
}
