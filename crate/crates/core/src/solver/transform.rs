//! Elementary transformations between solutions of different n: pumping a
//! solution up by [X, x, Y, y] ↦ [X+r·y, x, Y+t·x, y] (which raises k by
//! r+t), and walking back down one k-level at a time to the reduced
//! solution underneath.

use super::solution::Solution;
use crate::{Error, Result};

/// Applies the elementary transformation [X, x, Y, y] ↦ [X+r·y, x, Y+t·x, y],
/// a solution of the new value N = (a + t·y)(b + r·x) with level k + r + t.
///
/// Requires r + t ≥ 1 (the identity transform is excluded by contract).
/// The result keeps the orientation of the input rather than
/// re-canonicalizing, so chains act on fixed (x, y).
pub fn apply_elementary(s: &Solution, r: u64, t: u64) -> Result<Solution> {
    s.verify()?;
    if r == 0 && t == 0 {
        return Err(Error::domain("apply_elementary: r + t must be at least 1"));
    }
    let too_big = || {
        Error::overflow(format!(
            "apply_elementary({s}, r={r}, t={t}): the transformed solution leaves the 64-bit range"
        ))
    };
    let x_int = r
        .checked_mul(s.y_den)
        .and_then(|ry| s.x_int.checked_add(ry))
        .ok_or_else(too_big)?;
    let y_int = t
        .checked_mul(s.x_den)
        .and_then(|tx| s.y_int.checked_add(tx))
        .ok_or_else(too_big)?;
    let new_a = t.checked_mul(s.y_den).and_then(|ty| s.a.checked_add(ty)).ok_or_else(too_big)?;
    let new_b = r.checked_mul(s.x_den).and_then(|rx| s.b.checked_add(rx)).ok_or_else(too_big)?;
    let n = new_a.checked_mul(new_b).ok_or_else(too_big)?;
    let out = Solution::from_quadruple(n, x_int, s.x_den, y_int, s.y_den)?;
    let expected_k =
        s.k.checked_add(r)
            .and_then(|v| v.checked_add(t))
            .ok_or_else(too_big)?;
    if out.k != expected_k {
        return Err(Error::invariant(format!(
            "apply_elementary({s}, r={r}, t={t}): k went {} → {} instead of {expected_k}",
            s.k, out.k
        )));
    }
    Ok(out)
}

/// Reduces a solution one k-level: X ↦ X−y when X > y (the new value is
/// n − a·x), otherwise Y ↦ Y−x when Y > x (the new value is n − b·y).
///
/// For k ≥ 2 at least one branch applies: if both X ≤ y and Y ≤ x held,
/// then a ≥ (k−1)y and b ≥ (k−1)x (from ky = a+X, kx = b+Y), and
/// substituting into a·x + b·y − 1 = k·x·y leaves p·x + q·y = 1 with
/// p, q ≥ 0 and x, y ≥ 2 — impossible. A reduced solution (k = 1) has
/// X < y and Y < x, so neither branch applies and reduction stops.
fn reduce_step(s: &Solution) -> Result<Option<Solution>> {
    // n − a·x (resp. n − b·y) in 128 bits: a·x = y·Y+1 can leave u64 even
    // when the reduced value itself is small.
    let drop_to = |witness: u64, den: u64| -> Result<u64> {
        u128::from(s.n)
            .checked_sub(u128::from(witness) * u128::from(den))
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| {
                Error::invariant(format!("reduction of {s} for n={} left the value range", s.n))
            })
    };
    let next = if s.x_int > s.y_den {
        let value = drop_to(s.a, s.x_den)?;
        Solution::from_quadruple(value, s.x_int - s.y_den, s.x_den, s.y_int, s.y_den)?
    } else if s.y_int > s.x_den {
        let value = drop_to(s.b, s.y_den)?;
        Solution::from_quadruple(value, s.x_int, s.x_den, s.y_int - s.x_den, s.y_den)?
    } else {
        if !s.is_reduced() {
            return Err(Error::invariant(format!(
                "{s} for n={} has k={} > 1 but no reduction step applies",
                s.n, s.k
            )));
        }
        return Ok(None);
    };
    if next.k != s.k - 1 {
        return Err(Error::invariant(format!(
            "reduction step {s} → {next} moved k from {} to {} instead of decrementing",
            s.k, next.k
        )));
    }
    Ok(Some(next))
}

/// Walks a solution down to its reduced form, one k-level per step,
/// preferring the X branch when both apply. Returns the k−1 successive
/// solutions (of strictly decreasing values n), ending in the reduced one;
/// a reduced input yields an empty chain. The orientation and (x, y) are
/// preserved along the chain, so intermediate entries need not be
/// canonical.
pub fn reduce_chain(s: &Solution) -> Result<Vec<Solution>> {
    s.verify()?;
    let mut chain = Vec::new();
    let mut cur = *s;
    while let Some(next) = reduce_step(&cur)? {
        chain.push(next);
        cur = next;
    }
    if chain.len() as u64 != s.k - 1 {
        return Err(Error::invariant(format!(
            "reduction of {s} took {} steps for k={}",
            chain.len(),
            s.k
        )));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sol(n: u64, q: (u64, u64, u64, u64)) -> Solution {
        Solution::from_quadruple(n, q.0, q.1, q.2, q.3).unwrap()
    }

    #[test]
    fn pump_up_from_the_base_solution() {
        let base = sol(2, (1, 2, 1, 3));
        let r1 = apply_elementary(&base, 1, 0).unwrap();
        assert_eq!((r1.n, r1.x_int, r1.x_den, r1.y_int, r1.y_den, r1.k), (6, 4, 2, 1, 3, 2));
        let t1 = apply_elementary(&base, 0, 1).unwrap();
        assert_eq!((t1.n, t1.x_int, t1.x_den, t1.y_int, t1.y_den, t1.k), (5, 1, 2, 3, 3, 2));
        assert!(apply_elementary(&base, 0, 0).is_err());
    }

    #[test]
    fn pump_overflow_is_refused() {
        let base = sol(2, (1, 2, 1, 3));
        let err = apply_elementary(&base, u64::MAX / 2, 0).unwrap_err();
        assert!(err.to_string().contains("64-bit"));
    }

    #[test]
    fn the_extremal_family_member_reduces_stepwise() {
        let s = sol(11, (1, 2, 7, 3));
        let chain = reduce_chain(&s).unwrap();
        let stops: Vec<(u64, u64, u64, u64, u64)> =
            chain.iter().map(|c| (c.n, c.x_int, c.x_den, c.y_int, c.y_den)).collect();
        assert_eq!(stops, vec![(8, 1, 2, 5, 3), (5, 1, 2, 3, 3), (2, 1, 2, 1, 3)]);
        assert!(chain.last().unwrap().is_reduced());
    }

    #[test]
    fn reduced_solutions_have_empty_chains() {
        assert!(reduce_chain(&sol(5, (2, 3, 2, 7))).unwrap().is_empty());
        assert!(reduce_chain(&sol(2, (1, 2, 1, 3))).unwrap().is_empty());
    }

    #[test]
    fn every_solution_of_small_n_reduces_fully() {
        for n in 2..=200u64 {
            for s in &crate::solver::enumerate_solutions(n).unwrap().solutions {
                let chain = reduce_chain(s).unwrap();
                assert_eq!(chain.len() as u64, s.k - 1, "chain length for {s} of n={n}");
                for c in &chain {
                    assert_eq!((c.x_den, c.y_den), (s.x_den, s.y_den), "x,y drifted for {s}");
                }
            }
        }
    }

    proptest! {
        // Pumping a reduced solution up and reducing again returns to it:
        // the X branch strips the r X-steps first, then the Y branch the
        // t Y-steps, because a reduced solution has X < y and Y < x.
        #[test]
        fn pump_then_reduce_roundtrips(n in 2u64..=60, r in 0u64..5, t in 0u64..5) {
            prop_assume!(r + t >= 1);
            let set = crate::solver::enumerate_solutions(n).unwrap();
            // Every n has at least one reduced solution (M(n,1) ≥ 1).
            for s in set.solutions.iter().filter(|s| s.is_reduced()) {
                let up = apply_elementary(s, r, t).unwrap();
                let chain = reduce_chain(&up).unwrap();
                prop_assert_eq!(chain.len() as u64, r + t);
                prop_assert_eq!(chain.last().unwrap(), s);
            }
        }
    }
}
