//! Independent oracles used by the integration tests. Nothing here calls into the
//! exact linking or homology code.
#![allow(dead_code)]

use num_traits::ToPrimitive;
use plink::{GeoChain, SimplicialComplex};

type V = [f64; 3];

fn f(p: &[plink::rational::Rat]) -> V {
    [p[0].to_f64().unwrap(), p[1].to_f64().unwrap(), p[2].to_f64().unwrap()]
}

fn sub(a: V, b: V) -> V {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: V, b: V) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V, b: V) -> V {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: V) -> f64 {
    dot(a, a).sqrt()
}

/// Signed solid angle of the spherical triangle spanned by `a`, `b`, `c`.
fn solid_angle(a: V, b: V, c: V) -> f64 {
    let (la, lb, lc) = (norm(a), norm(b), norm(c));
    let num = dot(a, cross(b, c));
    let den = la * lb * lc + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
    2.0 * num.atan2(den)
}

/// The Gauss double integral of two closed polygonal 1-cycles in R³, summed
/// segment pair by segment pair as solid angles of spherical quadrilaterals.
pub fn gauss_linking(a: &GeoChain, b: &GeoChain) -> f64 {
    let mut total = 0.0;
    for (pa, ca) in a.terms() {
        let (p1, p2) = (f(&pa[0]), f(&pa[1]));
        for (pb, cb) in b.terms() {
            let (q1, q2) = (f(&pb[0]), f(&pb[1]));
            let (r11, r12, r21, r22) = (sub(q1, p1), sub(q2, p1), sub(q1, p2), sub(q2, p2));
            let quad = solid_angle(r11, r12, r22) + solid_angle(r11, r22, r21);
            total += (ca * cb) as f64 * quad;
        }
    }
    -total / (4.0 * std::f64::consts::PI)
}

/// Gauss linking number rounded to an integer; `None` when the integral is
/// further than `tol` from every integer.
pub fn gauss_lk(a: &GeoChain, b: &GeoChain, tol: f64) -> Option<i64> {
    let x = gauss_linking(a, b);
    ((x - x.round()).abs() < tol).then(|| x.round() as i64)
}

/// Rank of an integer matrix over the prime field F_p.
pub fn rank_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    if p == 2 {
        return rank_mod_2(&m);
    }
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let inv = |a: i64| {
        let (mut base, mut e, mut acc) = (a, p - 2, 1i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let k = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * k % p;
        }
        for i in r + 1..rows {
            if m[i][c] != 0 {
                let t = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - t * m[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

fn rank_mod_2(m: &[Vec<i64>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let words = cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            let mut bits = vec![0u64; words];
            for (j, x) in row.iter().enumerate() {
                if x.rem_euclid(2) == 1 {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][w] & b != 0) else { continue };
        rows.swap(r, piv);
        let pivot = rows[r].clone();
        for row in rows[r + 1..].iter_mut() {
            if row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Matrix of the boundary map `C_d -> C_{d-1}` with the alternating sign
/// convention on sorted vertex lists.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Vec<Vec<i64>> {
    let lower = k.simplices(d - 1);
    let lookup: std::collections::HashMap<&[usize], usize> =
        lower.iter().enumerate().map(|(i, s)| (s.vertices(), i)).collect();
    let index = |vs: &[usize]| lookup[vs];
    let mut m = vec![vec![0; k.n_simplices(d)]; lower.len()];
    for (j, s) in k.simplices(d).iter().enumerate() {
        let v = s.vertices();
        for i in 0..v.len() {
            let mut face = v.to_vec();
            face.remove(i);
            m[index(&face)][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Betti number of `K` in degree `d` over F_p. A large prime stands in for Q.
pub fn betti(k: &SimplicialComplex, d: usize, p: i64) -> usize {
    let n = if d <= k.dim() { k.n_simplices(d) } else { 0 };
    let out = if d == 0 || n == 0 { 0 } else { rank_mod_p(boundary_matrix(k, d), p) };
    let inn = if d + 1 > k.dim() { 0 } else { rank_mod_p(boundary_matrix(k, d + 1), p) };
    n - out - inn
}

pub const BIG_PRIME: i64 = 1_000_003;
