//! The fast enumeration path: a divisor-pair bijection walks (a, X, k)
//! triples instead of searching quadruples.
//!
//! For each divisor a of n (with cofactor b = n/a), each X in
//! [1, ⌊√(n−1)⌋], and each divisor k of a+X with k ≤ n − X²: accept when
//! X | n−k, Y := (n−k)/X ≥ X, k | b+Y, and x := (b+Y)/k, y := (a+X)/k are
//! both ≥ 2. Each desymmetrized solution arises from exactly one triple,
//! except X = Y solutions which would arise once per ordering of (a, b);
//! keeping only a < b and swapping (x, y) into canonical position restores
//! uniqueness.
//!
//! Divisor lists for the whole window a+1 .. a+⌊√(n−1)⌋ come from one
//! windowed sieve per a, so a full enumeration costs about
//! Σ_{a|n} (√n·log n + √n) plus the emitted solutions.

use super::solution::{KProfile, Solution, SolutionSet};
use crate::arith;
use crate::{Error, Result};

/// Divisor lists for a contiguous window of integers, with buffers reused
/// across refills.
struct DivisorWindow {
    lo: u64,
    lists: Vec<Vec<u64>>,
}

impl DivisorWindow {
    fn new() -> Self {
        DivisorWindow { lo: 0, lists: Vec::new() }
    }

    /// Fills divisor lists for every v in [lo, hi]. For each d ≤ √hi the
    /// multiples v ≥ d² get the pair (d, v/d); that enumerates every divisor
    /// of every v exactly once (unsorted).
    fn fill(&mut self, lo: u64, hi: u64) {
        debug_assert!(1 <= lo && lo <= hi);
        self.lo = lo;
        let len = usize::try_from(hi - lo + 1).expect("window exceeds memory");
        for list in self.lists.iter_mut().take(len) {
            list.clear();
        }
        self.lists.resize_with(len.max(self.lists.len()), Vec::new);
        let d_max = hi.isqrt();
        for d in 1..=d_max {
            let start = (lo.div_ceil(d) * d).max(d * d);
            let mut v = start;
            while v <= hi {
                let slot = &mut self.lists[(v - lo) as usize];
                slot.push(d);
                if v != d * d {
                    slot.push(v / d);
                }
                v += d;
            }
        }
    }

    fn divisors_of(&self, v: u64) -> &[u64] {
        &self.lists[(v - self.lo) as usize]
    }
}

/// Invokes `emit` once per desymmetrized solution of n, in no particular
/// order; every emitted solution is fully verified and canonical.
fn for_each_solution(n: u64, mut emit: impl FnMut(Solution) -> Result<()>) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("solutions of n={n}: n must be at least 2")));
    }
    let w = (n - 1).isqrt();
    let mut window = DivisorWindow::new();
    for &a in &arith::divisors(n)? {
        let b = n / a;
        window.fill(a + 1, a + w);
        for x_int in 1..=w {
            let cap = n - x_int * x_int; // Y ≥ X ⟺ k ≤ n − X² (also forces k < n)
            for &k in window.divisors_of(a + x_int) {
                if k > cap || (n - k) % x_int != 0 {
                    continue;
                }
                let y_int = (n - k) / x_int;
                if (b + y_int) % k != 0 {
                    continue;
                }
                let x_den = (b + y_int) / k;
                let y_den = (a + x_int) / k;
                if x_den < 2 || y_den < 2 {
                    continue;
                }
                let s = if x_int == y_int {
                    // This solution reappears under the (b, a) ordering;
                    // keep one, with (x, y) swapped into x < y position.
                    if a >= b {
                        continue;
                    }
                    Solution::from_quadruple(n, x_int, y_den, y_int, x_den)?
                } else {
                    Solution::from_quadruple(n, x_int, x_den, y_int, y_den)?
                };
                debug_assert!(s.is_canonical());
                emit(s)?;
            }
        }
    }
    Ok(())
}

/// All desymmetrized solutions of n, canonical and sorted: |result| = f(n).
pub fn enumerate_solutions(n: u64) -> Result<SolutionSet> {
    let mut solutions = Vec::new();
    for_each_solution(n, |s| {
        solutions.push(s);
        Ok(())
    })?;
    solutions.sort_unstable();
    for w in solutions.windows(2) {
        if w[0] == w[1] {
            return Err(Error::invariant(format!("duplicate solution {} for n={n}", w[0])));
        }
    }
    Ok(SolutionSet { n, solutions })
}

/// f(n) alone, without materializing the set.
pub fn count_f(n: u64) -> Result<u64> {
    let mut count = 0u64;
    for_each_solution(n, |_| {
        count += 1;
        Ok(())
    })?;
    Ok(count)
}

/// The histogram k ↦ M(n,k), without materializing the set.
pub fn k_profile(n: u64) -> Result<KProfile> {
    let mut entries = std::collections::BTreeMap::new();
    for_each_solution(n, |s| {
        *entries.entry(s.k).or_insert(0u64) += 1;
        Ok(())
    })?;
    Ok(KProfile { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_n() {
        assert!(enumerate_solutions(0).is_err());
        assert!(enumerate_solutions(1).is_err());
    }

    #[test]
    fn n_two_has_the_single_solution() {
        let set = enumerate_solutions(2).unwrap();
        assert_eq!(set.f(), 1);
        let s = &set.solutions[0];
        assert_eq!(
            (s.x_int, s.x_den, s.y_int, s.y_den, s.a, s.b, s.k),
            (1, 2, 1, 3, 2, 1, 1)
        );
    }

    #[test]
    fn n_five_matches_the_known_four() {
        let set = enumerate_solutions(5).unwrap();
        set.verify().unwrap();
        let quads: Vec<(u64, u64, u64, u64)> = set
            .solutions
            .iter()
            .map(|s| (s.x_int, s.x_den, s.y_int, s.y_den))
            .collect();
        assert_eq!(quads, vec![(1, 2, 3, 3), (1, 5, 4, 6), (1, 9, 4, 2), (2, 3, 2, 7)]);
        assert_eq!(count_f(5).unwrap(), 4);
    }

    #[test]
    fn eleven_contains_the_extremal_family_member() {
        let set = enumerate_solutions(11).unwrap();
        assert!(set
            .solutions
            .iter()
            .any(|s| (s.x_int, s.x_den, s.y_int, s.y_den) == (1, 2, 7, 3) && s.k == 4));
    }

    #[test]
    fn profile_of_nine() {
        let profile = k_profile(9).unwrap();
        assert_eq!(profile.m(1), 6);
        assert_eq!(profile.m(2), 2);
        assert_eq!(profile.total(), 8);
        assert_eq!(count_f(9).unwrap(), 8);
    }

    #[test]
    fn counts_agree_with_enumeration_for_small_n() {
        for n in 2..=300u64 {
            let set = enumerate_solutions(n).unwrap();
            set.verify().unwrap();
            assert_eq!(set.f(), count_f(n).unwrap(), "n = {n}");
            let profile = k_profile(n).unwrap();
            profile.verify(set.f()).unwrap();
            assert_eq!(profile, set.k_profile(), "n = {n}");
        }
    }
}
