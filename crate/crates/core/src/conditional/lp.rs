//! Exact feasibility of `A x = b, x ≥ 0` by phase-one simplex.
//!
//! The tableau holds exact rationals and Bland's rule picks both the entering
//! and the leaving column, so the method terminates and the answer is exact.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Returns a nonnegative solution of `rows · x = rhs`, or `None` if there is
/// none. Every row must have the same length.
pub fn feasible_point(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let width = n + m + 1;

    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = b.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, a) in row.iter().enumerate() {
            t[j] = if flip { -a } else { a.clone() };
        }
        t[n + i] = Rational::from_integer(1.into());
        t[width - 1] = if flip { -b } else { b.clone() };
        tab.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective Σ artificials.
    let mut cost = vec![Rational::zero(); width];
    for t in &tab {
        for j in (0..n).chain(core::iter::once(width - 1)) {
            if !t[j].is_zero() {
                cost[j] -= &t[j];
            }
        }
    }

    while let Some(enter) = (0..n).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, t) in tab.iter().enumerate() {
            if !t[enter].is_positive() {
                continue;
            }
            let ratio = &t[width - 1] / &t[enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, row, enter);
        basis[row] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        if !v.is_zero() {
            *v /= &p;
        }
    }
    let pivot_row = tab[row].clone();
    let eliminate = |target: &mut [Rational]| {
        let factor = target[col].clone();
        if factor.is_zero() {
            return;
        }
        for (t, r) in target.iter_mut().zip(&pivot_row) {
            if !r.is_zero() {
                *t -= &factor * r;
            }
        }
    };
    for (i, t) in tab.iter_mut().enumerate() {
        if i != row {
            eliminate(t);
        }
    }
    eliminate(cost);
}
