//! Smith normal form over a Euclidean domain, with unimodular transforms.
//!
//! Pivots are chosen as the entry of smallest norm in the remaining block, which
//! keeps intermediate integers small on the boundary matrices met in practice.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The arithmetic needed by the elimination.
pub trait Pid: Clone + PartialEq + Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Euclidean division `a = q b + r` with `norm(r) < norm(b)`.
    fn euclid(&self, b: &Self) -> (Self, Self);
    /// `(g, x, y)` with `g = x a + y b` a greatest common divisor.
    fn xgcd(&self, b: &Self) -> (Self, Self, Self);
    /// Exact quotient `self / b` when `b` divides `self`.
    fn exact_div(&self, b: &Self) -> Self {
        self.euclid(b).0
    }
    /// Euclidean norm as an unsigned magnitude.
    fn norm(&self) -> BigInt;
    /// Unit `u` with `u * self` the normalized associate.
    fn normalizing_unit(&self) -> Self;
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
}

impl Pid for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn euclid(&self, b: &Self) -> (Self, Self) {
        // round to nearest so that |r| <= |b| / 2
        let (q, r) = Integer::div_mod_floor(self, b);
        let twice: BigInt = &r * 2;
        if twice.abs() > b.abs() {
            (q + 1, r - b)
        } else {
            (q, r)
        }
    }
    fn xgcd(&self, b: &Self) -> (Self, Self, Self) {
        let e = Integer::extended_gcd(self, b);
        (e.gcd, e.x, e.y)
    }
    fn norm(&self) -> BigInt {
        self.abs()
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf2(pub bool);

impl Pid for Gf2 {
    fn nil() -> Self {
        Gf2(false)
    }
    fn unit() -> Self {
        Gf2(true)
    }
    fn is_nil(&self) -> bool {
        !self.0
    }
    fn plus(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn times(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn negate(&self) -> Self {
        *self
    }
    fn euclid(&self, b: &Self) -> (Self, Self) {
        assert!(b.0, "division by zero in GF(2)");
        (*self, Gf2(false))
    }
    fn xgcd(&self, b: &Self) -> (Self, Self, Self) {
        if self.0 {
            (Gf2(true), Gf2(true), Gf2(false))
        } else {
            (*b, Gf2(false), Gf2(true))
        }
    }
    fn norm(&self) -> BigInt {
        BigInt::from(self.0 as u8)
    }
    fn normalizing_unit(&self) -> Self {
        Gf2(true)
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: Pid>(n: usize) -> Matrix<T> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::unit() } else { T::nil() }).collect()).collect()
}

pub fn matmul<T: Pid>(a: &Matrix<T>, b: &Matrix<T>, inner: usize, cols: usize) -> Matrix<T> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::nil(), |acc, k| {
                        if row[k].is_nil() {
                            acc
                        } else {
                            acc.plus(&row[k].times(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: Pid> SmithDecomposition<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

struct Elim<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
    rows: usize,
    cols: usize,
}

impl<T: Pid> Elim<T> {
    /// row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &T) {
        if c.is_nil() {
            return;
        }
        for k in 0..self.cols {
            if !self.a[j][k].is_nil() {
                let t = self.a[j][k].times(c);
                self.a[i][k] = self.a[i][k].plus(&t);
            }
        }
        for k in 0..self.rows {
            if !self.u[j][k].is_nil() {
                let t = self.u[j][k].times(c);
                self.u[i][k] = self.u[i][k].plus(&t);
            }
        }
        for k in 0..self.rows {
            if !self.u_inv[k][i].is_nil() {
                let t = self.u_inv[k][i].times(c);
                self.u_inv[k][j] = self.u_inv[k][j].minus(&t);
            }
        }
    }

    /// col_i += c * col_j
    fn col_add(&mut self, i: usize, j: usize, c: &T) {
        if c.is_nil() {
            return;
        }
        for k in 0..self.rows {
            if !self.a[k][j].is_nil() {
                let t = self.a[k][j].times(c);
                self.a[k][i] = self.a[k][i].plus(&t);
            }
        }
        for k in 0..self.cols {
            if !self.v[k][j].is_nil() {
                let t = self.v[k][j].times(c);
                self.v[k][i] = self.v[k][i].plus(&t);
            }
        }
        for k in 0..self.cols {
            if !self.v_inv[i][k].is_nil() {
                let t = self.v_inv[i][k].times(c);
                self.v_inv[j][k] = self.v_inv[j][k].minus(&t);
            }
        }
    }

    /// Replaces rows `(t, i)` by `M (row_t, row_i)` with `M = [[x, y], [p, q]]`, `det M = 1`.
    fn row_mix(&mut self, t: usize, i: usize, m: [&T; 4]) {
        let [x, y, p, q] = m;
        let mix = |rt: &T, ri: &T| (rt.times(x).plus(&ri.times(y)), rt.times(p).plus(&ri.times(q)));
        for k in 0..self.cols {
            let (a, b) = mix(&self.a[t][k], &self.a[i][k]);
            self.a[t][k] = a;
            self.a[i][k] = b;
        }
        for k in 0..self.rows {
            let (a, b) = mix(&self.u[t][k], &self.u[i][k]);
            self.u[t][k] = a;
            self.u[i][k] = b;
        }
        // U^{-1} <- U^{-1} M^{-1}, M^{-1} = [[q, -y], [-p, x]]
        for k in 0..self.rows {
            let (ct, ci) = (self.u_inv[k][t].clone(), self.u_inv[k][i].clone());
            self.u_inv[k][t] = ct.times(q).minus(&ci.times(p));
            self.u_inv[k][i] = ci.times(x).minus(&ct.times(y));
        }
    }

    /// Replaces columns `(t, j)` by `(col_t, col_j) M^T` with `M = [[x, y], [p, q]]`, `det M = 1`.
    fn col_mix(&mut self, t: usize, j: usize, m: [&T; 4]) {
        let [x, y, p, q] = m;
        let mix = |ct: &T, cj: &T| (ct.times(x).plus(&cj.times(y)), ct.times(p).plus(&cj.times(q)));
        for k in 0..self.rows {
            let (a, b) = mix(&self.a[k][t], &self.a[k][j]);
            self.a[k][t] = a;
            self.a[k][j] = b;
        }
        for k in 0..self.cols {
            let (a, b) = mix(&self.v[k][t], &self.v[k][j]);
            self.v[k][t] = a;
            self.v[k][j] = b;
        }
        for k in 0..self.cols {
            let (rt, rj) = (self.v_inv[t][k].clone(), self.v_inv[j][k].clone());
            self.v_inv[t][k] = rt.times(q).minus(&rj.times(p));
            self.v_inv[j][k] = rj.times(x).minus(&rt.times(y));
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i *= unit
    fn row_scale_unit(&mut self, i: usize, unit: &T) {
        for x in self.a[i].iter_mut() {
            *x = x.times(unit);
        }
        for x in self.u[i].iter_mut() {
            *x = x.times(unit);
        }
        // units of Z and GF(2) are self-inverse
        for row in self.u_inv.iter_mut() {
            row[i] = row[i].times(unit);
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.a[i][j].is_nil() {
                    continue;
                }
                let n = self.a[i][j].norm();
                if best.as_ref().is_none_or(|(b, _, _)| n < *b) {
                    let is_one = n.is_one();
                    best = Some((n, i, j));
                    if is_one {
                        return best.map(|(_, i, j)| (i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Computes the Smith normal form of an `rows x cols` matrix.
pub fn smith_normal_form<T: Pid>(a: &Matrix<T>, rows: usize, cols: usize) -> SmithDecomposition<T> {
    let mut e = Elim {
        a: a.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = e.smallest_in_block(t) else { break };
        e.row_swap(t, pi);
        e.col_swap(t, pj);
        loop {
            for i in t + 1..rows {
                if e.a[i][t].is_nil() {
                    continue;
                }
                let (q, r) = e.a[i][t].euclid(&e.a[t][t]);
                if r.is_nil() {
                    e.row_add(i, t, &q.negate());
                } else {
                    let (a, b) = (e.a[t][t].clone(), e.a[i][t].clone());
                    let (g, x, y) = a.xgcd(&b);
                    let (p, q) = (b.exact_div(&g).negate(), a.exact_div(&g));
                    e.row_mix(t, i, [&x, &y, &p, &q]);
                }
            }
            let mut changed = false;
            for j in t + 1..cols {
                if e.a[t][j].is_nil() {
                    continue;
                }
                let (q, r) = e.a[t][j].euclid(&e.a[t][t]);
                if r.is_nil() {
                    e.col_add(j, t, &q.negate());
                } else {
                    let (a, b) = (e.a[t][t].clone(), e.a[t][j].clone());
                    let (g, x, y) = a.xgcd(&b);
                    let (p, q) = (b.exact_div(&g).negate(), a.exact_div(&g));
                    e.col_mix(t, j, [&x, &y, &p, &q]);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: pull a non-multiple into row t and repeat
            let mut bad = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !e.a[i][j].is_nil() && !e.a[i][j].euclid(&e.a[t][t]).1.is_nil() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => e.row_add(t, i, &T::unit()),
                None => break,
            }
        }
        let unit = e.a[t][t].normalizing_unit();
        e.row_scale_unit(t, &unit);
        t += 1;
    }
    SmithDecomposition { u: e.u, d: e.a, v: e.v, u_inv: e.u_inv, v_inv: e.v_inv, rank: t }
}

/// Convenience for integer matrices given as `i64`.
pub fn smith_normal_form_i64(a: &[Vec<i64>]) -> SmithDecomposition<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let m: Matrix<BigInt> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    smith_normal_form(&m, rows, cols)
}

/// Determinant of a square integer matrix (Bareiss), used to certify unimodularity.
pub fn det_bigint(m: &Matrix<BigInt>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn to_big(a: &[Vec<i64>]) -> Matrix<BigInt> {
        a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn check(a: &[Vec<i64>]) -> SmithDecomposition<BigInt> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let s = smith_normal_form_i64(a);
        let uav = matmul(&matmul(&s.u, &to_big(a), rows, cols), &s.v, cols, cols);
        assert_eq!(uav, s.d, "U A V = D");
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain {diag:?}");
        }
        assert!(diag.iter().all(|d| d.is_positive()));
        assert_eq!(det_bigint(&s.u).abs(), BigInt::one());
        assert_eq!(det_bigint(&s.v).abs(), BigInt::one());
        assert_eq!(matmul(&s.u, &s.u_inv, rows, rows), identity(rows));
        assert_eq!(matmul(&s.v, &s.v_inv, cols, cols), identity(cols));
        s
    }

    #[test]
    fn diag_2_3() {
        let s = check(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&[vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(s.rank, 0);
        assert_eq!(s.u, identity(2));
        assert_eq!(s.v, identity(3));
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let a: Vec<Vec<i64>> =
                (0..6).map(|_| (0..8).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            check(&a);
        }
    }

    #[test]
    fn gf2_rank() {
        let m: Matrix<Gf2> = vec![
            vec![Gf2(true), Gf2(true), Gf2(false)],
            vec![Gf2(false), Gf2(true), Gf2(true)],
            vec![Gf2(true), Gf2(false), Gf2(true)],
        ];
        let s = smith_normal_form(&m, 3, 3);
        assert_eq!(s.rank, 2);
        assert_eq!(matmul(&matmul(&s.u, &m, 3, 3), &s.v, 3, 3), s.d);
    }
}
