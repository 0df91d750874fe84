//! Realizing symmetric forms by twists: every twist along a functional `s` with
//! `l` full turns adds `2 l s sᵀ` to the linking form.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seifert::SymForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub s: Vec<i64>,
    pub l: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSchedule {
    pub moves: Vec<Move>,
}

impl TwistSchedule {
    pub fn validate(&self, n: usize) -> Result<()> {
        for (i, m) in self.moves.iter().enumerate() {
            if m.s.len() != n {
                return Err(Error::DimensionMismatch(format!("move {i} has {} entries, rank is {n}", m.s.len())));
            }
            if m.s.iter().all(|&x| x == 0) {
                return Err(Error::Parse(format!("move {i} has a zero functional")));
            }
        }
        Ok(())
    }
}

/// Writes `m` as `Σ a_i s_i s_iᵀ` using
/// `x_i y_j + x_j y_i = (x_i + x_j)(y_i + y_j) - x_i y_i - x_j y_j` for every
/// off-diagonal entry; functionals `e_i` come first, then `e_i + e_j`.
pub fn decompose_symmetric(m: &SymForm) -> Vec<(i64, Vec<i64>)> {
    let n = m.n;
    let unit = |i: usize| (0..n).map(|k| i64::from(k == i)).collect::<Vec<_>>();
    let mut diag: Vec<i64> = (0..n).map(|i| m.matrix[i][i]).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = m.matrix[i][j];
            if a != 0 {
                diag[i] -= a;
                diag[j] -= a;
                let s = (0..n).map(|k| i64::from(k == i || k == j)).collect();
                pairs.push((a, s));
            }
        }
    }
    let mut out: Vec<(i64, Vec<i64>)> = diag.into_iter().enumerate().filter(|(_, a)| *a != 0).map(|(i, a)| (a, unit(i))).collect();
    out.extend(pairs);
    out
}

/// `Σ a s sᵀ`.
pub fn reconstruct(n: usize, terms: &[(i64, Vec<i64>)]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for (a, s) in terms {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += a * s[i] * s[j];
            }
        }
    }
    m
}

pub fn apply_twists(l: &SymForm, sched: &TwistSchedule) -> Result<SymForm> {
    sched.validate(l.n)?;
    let terms: Vec<(i64, Vec<i64>)> = sched.moves.iter().map(|m| (2 * m.l, m.s.clone())).collect();
    let delta = reconstruct(l.n, &terms);
    let matrix = (0..l.n).map(|i| (0..l.n).map(|j| l.matrix[i][j] + delta[i][j]).collect()).collect();
    Ok(SymForm::new(matrix)?.with_basis_ref(l.basis_ref.clone()))
}

/// A schedule taking `base` to `target`. The difference must be even in every
/// entry: both forms reduce mod 2 to the intersection form of the surface.
pub fn twist_schedule(base: &SymForm, target: &SymForm) -> Result<TwistSchedule> {
    let diff = target.sub(base)?;
    let odd: Vec<String> = (0..diff.n)
        .flat_map(|i| (i..diff.n).map(move |j| (i, j)))
        .filter(|&(i, j)| diff.matrix[i][j] % 2 != 0)
        .map(|(i, j)| format!("({i},{j})"))
        .collect();
    if !odd.is_empty() {
        return Err(Error::Parity(format!(
            "target and base differ by an odd amount at {}; the mod-2 reductions of both must equal the intersection form",
            odd.join(", ")
        )));
    }
    let half = SymForm::new(diff.matrix.iter().map(|r| r.iter().map(|x| x / 2).collect()).collect())?;
    let moves = decompose_symmetric(&half).into_iter().map(|(a, s)| Move { s, l: a }).collect();
    Ok(TwistSchedule { moves })
}

/// Largest search space accepted by [`enumerate_reachable`].
pub const MAX_STATES: u64 = 2_000_000;

/// Forms with entries in `[-bound, bound]` reachable from `base` by twists. The
/// search walks single moves `±2 s sᵀ` with `s ∈ {e_i, e_i ± e_j}`, allowing
/// intermediate entries up to `bound + 2`.
pub fn enumerate_reachable(base: &SymForm, bound: i64) -> Result<Vec<SymForm>> {
    let n = base.n;
    if n > 4 || !(0..=6).contains(&bound) {
        return Err(Error::Bounds(format!("rank {n} (at most 4) and bound {bound} (0 to 6)")));
    }
    let outer = bound + 2;
    if base.matrix.iter().flatten().any(|x| x.abs() > outer) {
        return Err(Error::Bounds(format!("base entries exceed {outer}")));
    }
    let per_entry = |x: i64| (-outer..=outer).filter(|v| (v - x) % 2 == 0).count() as u64;
    let states: u64 = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| per_entry(base.matrix[i][j])).product();
    if states > MAX_STATES {
        return Err(Error::Bounds(format!("search space of {states} forms exceeds {MAX_STATES}")));
    }
    let mut dirs: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            for sgn in [1, -1] {
                dirs.push((0..n).map(|k| if k == i { 1 } else if k == j { sgn } else { 0 }).collect());
            }
        }
    }
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(base.matrix.clone());
    queue.push_back(base.matrix.clone());
    while let Some(m) = queue.pop_front() {
        for s in &dirs {
            for l in [1, -1] {
                let next: Vec<Vec<i64>> =
                    (0..n).map(|i| (0..n).map(|j| m[i][j] + 2 * l * s[i] * s[j]).collect()).collect();
                if next.iter().flatten().all(|x| x.abs() <= outer) && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen
        .into_iter()
        .filter(|m| m.iter().flatten().all(|x| x.abs() <= bound))
        .map(|m| SymForm::new(m).expect("symmetric by construction"))
        .collect())
}

/// `{φ : φ ≡ base mod 2, |φ_ij| <= bound}`, listed directly.
pub fn parity_class(base: &SymForm, bound: i64) -> Vec<SymForm> {
    let n = base.n;
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let choices: Vec<Vec<i64>> = slots
        .iter()
        .map(|&(i, j)| (-bound..=bound).filter(|v| (v - base.matrix[i][j]).rem_euclid(2) == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let mut m = vec![vec![0; n]; n];
        for (k, &(i, j)) in slots.iter().enumerate() {
            m[i][j] = choices[k][idx[k]];
            m[j][i] = choices[k][idx[k]];
        }
        out.push(SymForm::new(m).expect("symmetric"));
        let mut k = 0;
        loop {
            if k == slots.len() {
                out.sort_by(|a, b| a.matrix.cmp(&b.matrix));
                return out;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(m: Vec<Vec<i64>>) -> SymForm {
        SymForm::new(m).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let h = form(vec![vec![0, 1], vec![1, 0]]);
        let d = decompose_symmetric(&h);
        assert_eq!(d, vec![(-1, vec![1, 0]), (-1, vec![0, 1]), (1, vec![1, 1])]);
        let m = form(vec![vec![2, 1], vec![1, 4]]);
        assert_eq!(decompose_symmetric(&m), vec![(1, vec![1, 0]), (3, vec![0, 1]), (1, vec![1, 1])]);
        assert!(decompose_symmetric(&SymForm::zero(3)).is_empty());
    }

    #[test]
    fn twist_examples() {
        let h = form(vec![vec![0, 1], vec![1, 0]]);
        let one = TwistSchedule { moves: vec![Move { s: vec![1, 0], l: 1 }] };
        assert_eq!(apply_twists(&h, &one).unwrap().matrix, vec![vec![2, 1], vec![1, 0]]);
        assert_eq!(apply_twists(&h, &TwistSchedule::default()).unwrap(), h);
        let back = TwistSchedule { moves: vec![Move { s: vec![1, 1], l: 3 }, Move { s: vec![1, 1], l: -3 }] };
        assert_eq!(apply_twists(&h, &back).unwrap(), h);
        let target = form(vec![vec![2, 1], vec![1, 0]]);
        assert_eq!(twist_schedule(&h, &target).unwrap().moves, vec![Move { s: vec![1, 0], l: 1 }]);
        assert!(twist_schedule(&h, &h).unwrap().moves.is_empty());
        let odd = form(vec![vec![1, 1], vec![1, 0]]);
        assert!(matches!(twist_schedule(&h, &odd), Err(Error::Parity(_))));
        let bad = TwistSchedule { moves: vec![Move { s: vec![1], l: 1 }] };
        assert!(matches!(apply_twists(&h, &bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn reachable_examples() {
        let r = enumerate_reachable(&form(vec![vec![0]]), 4).unwrap();
        let vals: Vec<i64> = r.iter().map(|f| f.matrix[0][0]).collect();
        assert_eq!(vals, vec![-4, -2, 0, 2, 4]);
        let h = form(vec![vec![0, 1], vec![1, 0]]);
        let r = enumerate_reachable(&h, 2).unwrap();
        assert_eq!(r, parity_class(&h, 2));
        assert_eq!(r.len(), 3 * 2 * 3);
        assert_eq!(enumerate_reachable(&SymForm::zero(0), 3).unwrap(), vec![SymForm::zero(0)]);
        assert!(matches!(enumerate_reachable(&SymForm::zero(5), 2), Err(Error::Bounds(_))));
        assert!(matches!(enumerate_reachable(&h, 7), Err(Error::Bounds(_))));
    }

    #[test]
    fn reachable_with_tight_bound() {
        let h = form(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(enumerate_reachable(&h, 1).unwrap(), parity_class(&h, 1));
        let t = form(vec![vec![1, 0, 1], vec![0, 0, 1], vec![1, 1, 1]]);
        assert_eq!(enumerate_reachable(&t, 1).unwrap(), parity_class(&t, 1));
    }
}
