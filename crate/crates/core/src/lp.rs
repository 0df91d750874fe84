//! A small exact linear-programming solver (two-phase simplex, Bland's rule).
//!
//! Used for incidence questions in arbitrary ambient dimension, where the
//! closed-form predicates of [`crate::predicates`] do not apply.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: Vec<Rat> },
}

/// Maximizes `c·x` subject to `A x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // phase 1 tableau over columns x (n) and artificials (m); rows normalized to b >= 0
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rat> = a[i].iter().map(|v| if flip { -v } else { v.clone() }).collect();
        row.extend((0..m).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let width = n + m;
    // phase 1 objective: maximize -sum(artificials)
    let mut obj1 = vec![Rat::zero(); width];
    for j in n..n + m {
        obj1[j] = -Rat::one();
    }
    run_simplex(&mut t, &mut basis, &obj1, width);
    let phase1: Rat = basis
        .iter()
        .enumerate()
        .filter(|(_, &j)| j >= n)
        .fold(Rat::zero(), |acc, (i, _)| acc + &t[i][width]);
    if !phase1.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive remaining (zero-valued) artificials out of the basis where possible
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            }
        }
    }
    // phase 2: forbid artificial columns
    let mut obj2 = vec![Rat::zero(); width];
    obj2[..n].clone_from_slice(c);
    let allowed = n;
    if !run_simplex_limited(&mut t, &mut basis, &obj2, allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width].clone();
        }
    }
    let value = x.iter().zip(c).fold(Rat::zero(), |acc, (xi, ci)| acc + xi * ci);
    LpOutcome::Optimal { value, x }
}

/// Whether `A x = b, x >= 0` has a solution.
pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    !matches!(maximize(a, b, &vec![Rat::zero(); n]), LpOutcome::Infeasible)
}

fn pivot(t: &mut [Vec<Rat>], basis: &mut [usize], r: usize, col: usize) {
    let p = t[r][col].clone();
    for v in t[r].iter_mut() {
        *v = &*v / &p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[col].is_zero() {
            continue;
        }
        let f = row[col].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    basis[r] = col;
}

fn run_simplex(t: &mut [Vec<Rat>], basis: &mut [usize], obj: &[Rat], width: usize) {
    let ok = run_simplex_limited(t, basis, obj, width);
    debug_assert!(ok, "phase 1 is bounded");
}

/// Returns false if unbounded. Only columns `< allowed` may enter the basis.
fn run_simplex_limited(t: &mut [Vec<Rat>], basis: &mut [usize], obj: &[Rat], allowed: usize) -> bool {
    let rhs = t.first().map_or(0, |r| r.len() - 1);
    loop {
        // reduced costs: c_j - c_B B^{-1} A_j; Bland: smallest improving index
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let z = basis.iter().enumerate().fold(Rat::zero(), |acc, (i, &bj)| acc + &obj[bj] * &t[i][j]);
            (&obj[j] - z).is_positive()
        });
        let Some(col) = entering else { return true };
        let mut best: Option<(Rat, usize)> = None;
        for i in 0..t.len() {
            if t[i][col].is_positive() {
                let ratio = &t[i][rhs] / &t[i][col];
                let better = match &best {
                    None => true,
                    Some((r, bi)) => ratio < *r || (ratio == *r && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((ratio, i));
                }
            }
        }
        let Some((_, r)) = best else { return false };
        pivot(t, basis, r, col);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn simple_max() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![
            vec![rat(1), rat(2), rat(1), rat(0)],
            vec![rat(3), rat(1), rat(0), rat(1)],
        ];
        let out = maximize(&a, &[rat(4), rat(6)], &[rat(1), rat(1), rat(0), rat(0)]);
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(14, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![rat(1), rat(1)]];
        assert_eq!(maximize(&a, &[rat(-1)], &[rat(0), rat(0)]), LpOutcome::Infeasible);
        let a = vec![vec![rat(1), rat(-1)]];
        assert_eq!(maximize(&a, &[rat(1)], &[rat(1), rat(0)]), LpOutcome::Unbounded);
        assert!(feasible(&[vec![rat(1), rat(-1)]], &[rat(1)]));
    }
}
