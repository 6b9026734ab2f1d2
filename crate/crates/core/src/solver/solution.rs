//! The central certified objects: a single solution quadruple with its
//! derived witnesses, the canonical solution set of one n, and the histogram
//! of solutions by k.

use crate::arith::gcd;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// One solution of (X + 1/x)(Y + 1/y) = n in positive integers with
/// x, y ≥ 2, stored as the quadruple [X, x, Y, y] plus the derived
/// witnesses (a, b) and the level k.
///
/// The invariants (see [`Solution::verify`]) tie every field together:
/// a·x = y·Y + 1, b·y = x·X + 1, a·b = n, a·x + b·y − 1 = k·x·y, and
/// k = n − X·Y. Two quadruples that differ by swapping the pairs
/// (X,x) ↔ (Y,y) describe the same solution; the canonical representative
/// has X < Y, or X = Y and x < y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Solution {
    pub n: u64,
    #[serde(rename = "X")]
    pub x_int: u64,
    #[serde(rename = "x")]
    pub x_den: u64,
    #[serde(rename = "Y")]
    pub y_int: u64,
    #[serde(rename = "y")]
    pub y_den: u64,
    pub a: u64,
    pub b: u64,
    pub k: u64,
}

impl Solution {
    /// Builds a solution from the bare quadruple, deriving (a, b, k) by
    /// exact division and verifying every invariant. The quadruple need not
    /// be canonical (reduction chains and elementary transforms produce
    /// non-canonical orientations on purpose).
    pub fn from_quadruple(n: u64, x_int: u64, x_den: u64, y_int: u64, y_den: u64) -> Result<Self> {
        let bad = |what: &str| {
            Error::invariant(format!(
                "[{x_int},{x_den},{y_int},{y_den}] is not a solution for n={n}: {what}"
            ))
        };
        if x_int < 1 || y_int < 1 || x_den < 2 || y_den < 2 {
            return Err(bad("parts out of range"));
        }
        let a_num = u128::from(y_den) * u128::from(y_int) + 1;
        if a_num % u128::from(x_den) != 0 {
            return Err(bad("witness a is not integral"));
        }
        let b_num = u128::from(x_den) * u128::from(x_int) + 1;
        if b_num % u128::from(y_den) != 0 {
            return Err(bad("witness b is not integral"));
        }
        let a = u64::try_from(a_num / u128::from(x_den)).map_err(|_| bad("witness a overflows"))?;
        let b = u64::try_from(b_num / u128::from(y_den)).map_err(|_| bad("witness b overflows"))?;
        let xy = u128::from(x_int) * u128::from(y_int);
        if u128::from(n) <= xy {
            return Err(bad("X·Y is not below n"));
        }
        let k = n - u64::try_from(xy).unwrap();
        let s = Solution { n, x_int, x_den, y_int, y_den, a, b, k };
        s.verify()?;
        Ok(s)
    }

    /// Checks every arithmetic invariant in exact (128-bit) arithmetic.
    /// Canonical orientation is deliberately *not* required here; see
    /// [`Solution::is_canonical`].
    pub fn verify(&self) -> Result<()> {
        let Solution { n, x_int, x_den, y_int, y_den, a, b, k } = *self;
        let fail = |what: &str| {
            Err(Error::invariant(format!(
                "solution [{x_int},{x_den},{y_int},{y_den}] for n={n}: {what}"
            )))
        };
        if n < 2 {
            return fail("n must be at least 2");
        }
        if x_int < 1 || y_int < 1 || x_den < 2 || y_den < 2 || a < 1 || b < 1 || k < 1 {
            return fail("fields out of range");
        }
        let (n, x_int, x_den, y_int, y_den, a, b, k) = (
            u128::from(n),
            u128::from(x_int),
            u128::from(x_den),
            u128::from(y_int),
            u128::from(y_den),
            u128::from(a),
            u128::from(b),
            u128::from(k),
        );
        // Pairwise products of u64 values fit in u128; the three-factor
        // products below must be checked (they can exceed 128 bits only for
        // fields far outside any range the algorithms produce).
        let cleared_lhs = (x_int * x_den + 1).checked_mul(y_int * y_den + 1);
        let cleared_rhs = (n * x_den).checked_mul(y_den);
        let witness_sum = (a * x_den).checked_add(b * y_den);
        let kxy = (k * x_den).checked_mul(y_den);
        let max_den_bound = x_den.max(y_den).checked_mul(2 * k - 1);
        let (Some(cleared_lhs), Some(cleared_rhs), Some(witness_sum), Some(kxy), Some(max_den_bound)) =
            (cleared_lhs, cleared_rhs, witness_sum, kxy, max_den_bound)
        else {
            return fail("fields exceed the 128-bit verification range");
        };
        // the defining equation, cleared of denominators
        if cleared_lhs != cleared_rhs {
            return fail("cleared equation fails");
        }
        if a * x_den != y_den * y_int + 1 {
            return fail("a·x = y·Y + 1 fails");
        }
        if b * y_den != x_den * x_int + 1 {
            return fail("b·y = x·X + 1 fails");
        }
        if a * b != n {
            return fail("a·b = n fails");
        }
        if witness_sum - 1 != kxy {
            return fail("a·x + b·y − 1 = k·x·y fails");
        }
        if x_int * y_int >= n || k != n - x_int * y_int {
            return fail("k = n − X·Y fails");
        }
        if k * x_den != b + y_int {
            return fail("x = (b+Y)/k fails");
        }
        if k * y_den != a + x_int {
            return fail("y = (a+X)/k fails");
        }
        if gcd(self.x_den, self.y_den) != 1 {
            return fail("x and y are not coprime");
        }
        if x_den == y_den {
            return fail("x = y is impossible");
        }
        if max_den_bound > 2 * n - 1 {
            return fail("max(x,y) ≤ (2n−1)/(2k−1) fails");
        }
        if 3 * k > n + 1 {
            return fail("k ≤ (n+1)/3 fails");
        }
        Ok(())
    }

    /// Canonical orientation: X < Y, or X = Y with x < y. Exactly one of
    /// a solution and its transpose is canonical (X = Y with x = y would
    /// need x = y = 1, excluded).
    pub fn is_canonical(&self) -> bool {
        self.x_int < self.y_int || (self.x_int == self.y_int && self.x_den < self.y_den)
    }

    /// The transpose τ: (X,x,Y,y,a,b) ↦ (Y,y,X,x,b,a); same n and k.
    pub fn transposed(&self) -> Self {
        Solution {
            n: self.n,
            x_int: self.y_int,
            x_den: self.y_den,
            y_int: self.x_int,
            y_den: self.x_den,
            a: self.b,
            b: self.a,
            k: self.k,
        }
    }

    /// Whichever of `self` / transpose is canonical.
    pub fn canonicalized(&self) -> Self {
        if self.is_canonical() {
            *self
        } else {
            self.transposed()
        }
    }

    pub fn verify_canonical(&self) -> Result<()> {
        self.verify()?;
        if !self.is_canonical() {
            return Err(Error::invariant(format!("{self} is not in canonical orientation")));
        }
        Ok(())
    }

    /// True when k = 1, equivalently X·Y = n − 1, equivalently X < y and
    /// Y < x (no reduction step applies).
    pub fn is_reduced(&self) -> bool {
        self.k == 1
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.x_int, self.x_den, self.y_int, self.y_den)
    }
}

/// The full desymmetrized solution set of one n: canonical representatives,
/// sorted by (X, x, Y, y), free of duplicates and transposes. Its size is
/// f(n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub n: u64,
    pub solutions: Vec<Solution>,
}

impl SolutionSet {
    /// f(n): the number of desymmetrized solutions.
    pub fn f(&self) -> u64 {
        self.solutions.len() as u64
    }

    /// Canonicalizes, sorts, and dedups raw quadruples (used by the brute
    /// force oracles, whose searches revisit orientations freely).
    pub fn from_unsorted(n: u64, raw: Vec<Solution>) -> Result<Self> {
        let mut solutions: Vec<Solution> = raw.iter().map(Solution::canonicalized).collect();
        solutions.sort_unstable();
        solutions.dedup();
        let set = SolutionSet { n, solutions };
        set.verify()?;
        Ok(set)
    }

    /// Re-checks the whole set: membership of every solution for this n,
    /// all per-solution invariants, canonical orientation, and strict
    /// (X, x, Y, y) ordering. Strictly sorted canonical solutions cannot
    /// contain a transposed pair, since a transpose of a canonical solution
    /// is never canonical.
    pub fn verify(&self) -> Result<()> {
        for s in &self.solutions {
            if s.n != self.n {
                return Err(Error::invariant(format!(
                    "solution {s} has n={} in a set for n={}",
                    s.n, self.n
                )));
            }
            s.verify_canonical()?;
        }
        for w in self.solutions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::invariant(format!(
                    "set for n={} is not strictly sorted at {} / {}",
                    self.n, w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// Histogram k ↦ M(n,k) over the set.
    pub fn k_profile(&self) -> KProfile {
        let mut entries = BTreeMap::new();
        for s in &self.solutions {
            *entries.entry(s.k).or_insert(0u64) += 1;
        }
        KProfile { n: self.n, entries }
    }
}

/// The histogram k ↦ M(n,k); the values sum to f(n) and every key obeys
/// 1 ≤ k ≤ ⌊(n+1)/3⌋.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KProfile {
    pub n: u64,
    pub entries: BTreeMap<u64, u64>,
}

impl KProfile {
    /// M(n,k), zero when the key is absent.
    pub fn m(&self, k: u64) -> u64 {
        self.entries.get(&k).copied().unwrap_or(0)
    }

    /// Σ_k M(n,k) = f(n).
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Largest k present (0 for an empty profile, which only n with f(n)=0
    /// would produce — and no n ≥ 2 has f(n) = 0).
    pub fn k_max(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn verify(&self, f: u64) -> Result<()> {
        if self.total() != f {
            return Err(Error::invariant(format!(
                "profile for n={} sums to {} instead of f={f}",
                self.n,
                self.total()
            )));
        }
        for &k in self.entries.keys() {
            if k < 1 || 3 * k > self.n + 1 {
                return Err(Error::invariant(format!(
                    "profile for n={} holds out-of-range k={k}",
                    self.n
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_solution_roundtrip() {
        let s = Solution::from_quadruple(2, 1, 2, 1, 3).unwrap();
        assert_eq!((s.a, s.b, s.k), (2, 1, 1));
        assert!(s.is_canonical());
        assert!(s.is_reduced());
        let t = s.transposed();
        assert!(!t.is_canonical());
        t.verify().unwrap();
        assert_eq!(t.canonicalized(), s);
        assert_eq!(s.to_string(), "[1,2,1,3]");
    }

    #[test]
    fn non_solutions_are_rejected() {
        assert!(Solution::from_quadruple(2, 1, 2, 1, 4).is_err());
        assert!(Solution::from_quadruple(7, 1, 2, 1, 3).is_err());
        assert!(Solution::from_quadruple(2, 1, 1, 1, 3).is_err());
    }

    #[test]
    fn set_verification_catches_disorder() {
        let a = Solution::from_quadruple(5, 1, 2, 3, 3).unwrap();
        let b = Solution::from_quadruple(5, 2, 3, 2, 7).unwrap();
        let good = SolutionSet { n: 5, solutions: vec![a.clone(), b.clone()] };
        good.verify().unwrap();
        let bad = SolutionSet { n: 5, solutions: vec![b, a] };
        assert!(bad.verify().is_err());
    }

    #[test]
    fn profile_accounting() {
        let set = SolutionSet {
            n: 5,
            solutions: vec![
                Solution::from_quadruple(5, 1, 2, 3, 3).unwrap(),
                Solution::from_quadruple(5, 1, 5, 4, 6).unwrap(),
                Solution::from_quadruple(5, 1, 9, 4, 2).unwrap(),
                Solution::from_quadruple(5, 2, 3, 2, 7).unwrap(),
            ],
        };
        set.verify().unwrap();
        let profile = set.k_profile();
        assert_eq!(profile.m(1), 3);
        assert_eq!(profile.m(2), 1);
        assert_eq!(profile.k_max(), 2);
        profile.verify(set.f()).unwrap();
    }
}
