//! Linking coefficients of disjoint PL cycles: the cone construction
//! `lk(A, B) = A ∩ (apex * B)`, an independent crossing count in a generic
//! planar projection, and degrees of simplicial maps.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::embedding::{cone_chain, hulls_meet, GeoChain};
use crate::error::{Error, Result};
use crate::predicates::{self as pr, Scalar};
use crate::rational::{self, Lattice, Point, Rat};

/// Resampling budget for apices and projection directions.
const MAX_SAMPLES: usize = 200;

/// A pair of disjoint cycles of complementary dimensions in R^m.
#[derive(Clone, Debug)]
pub struct Link {
    a: GeoChain,
    b: GeoChain,
    m: usize,
}

impl Link {
    pub fn new(a: GeoChain, b: GeoChain) -> Result<Link> {
        let m = a
            .points()
            .first()
            .or(b.points().first())
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidChain("both cycles are empty".into()))?;
        if a.dim() + b.dim() + 1 != m {
            return Err(Error::DimensionMismatch(format!(
                "cycles of dimensions {} and {} in R^{m}: need a + b = m - 1",
                a.dim(),
                b.dim()
            )));
        }
        if a.points().iter().chain(b.points().iter()).any(|p| p.len() != m) {
            return Err(Error::DimensionMismatch("points of different dimensions".into()));
        }
        if !a.is_cycle() || !b.is_cycle() {
            return Err(Error::NotACycle("both chains of a link must be cycles".into()));
        }
        if let Some((s, t)) = first_meeting_pair(&a, &b) {
            return Err(Error::NotDisjoint(format!("simplices {s:?} and {t:?} meet")));
        }
        Ok(Link { a, b, m })
    }

    pub fn a(&self) -> &GeoChain {
        &self.a
    }

    pub fn b(&self) -> &GeoChain {
        &self.b
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn swapped(&self) -> Link {
        Link { a: self.b.clone(), b: self.a.clone(), m: self.m }
    }
}

fn bbox(pts: &[Point]) -> (Point, Point) {
    let mut lo = pts[0].clone();
    let mut hi = pts[0].clone();
    for p in pts {
        for k in 0..p.len() {
            if p[k] < lo[k] {
                lo[k] = p[k].clone();
            }
            if p[k] > hi[k] {
                hi[k] = p[k].clone();
            }
        }
    }
    (lo, hi)
}

fn boxes_overlap(a: &(Point, Point), b: &(Point, Point)) -> bool {
    (0..a.0.len()).all(|k| a.0[k] <= b.1[k] && b.0[k] <= a.1[k])
}

fn first_meeting_pair(a: &GeoChain, b: &GeoChain) -> Option<(Vec<Point>, Vec<Point>)> {
    if a.dim() == 1 && b.dim() == 1 && a.points().first().map(Vec::len) == Some(3) {
        return meeting_segments(a, b);
    }
    let bb: Vec<(&Vec<Point>, (Point, Point))> = b.terms().map(|(s, _)| (s, bbox(s))).collect();
    for (s, _) in a.terms() {
        let sb = bbox(s);
        for (t, tb) in &bb {
            if !boxes_overlap(&sb, tb) {
                continue;
            }
            let sp: Vec<&Point> = s.iter().collect();
            let tp: Vec<&Point> = t.iter().collect();
            if hulls_meet(&sp, &tp) {
                return Some((s.clone(), (*t).clone()));
            }
        }
    }
    None
}

fn meeting_segments(a: &GeoChain, b: &GeoChain) -> Option<(Vec<Point>, Vec<Point>)> {
    let sa: Vec<&Vec<Point>> = a.terms().map(|(s, _)| s).collect();
    let sb: Vec<&Vec<Point>> = b.terms().map(|(s, _)| s).collect();
    let all: Vec<Point> = sa.iter().chain(&sb).flat_map(|s| s.iter().cloned()).collect();
    let hit = match Lattice::new(&all) {
        Lattice::Small(p) => meeting_index(&p, sa.len()),
        Lattice::Big(p) => meeting_index(&p, sa.len()),
    };
    hit.map(|(i, j)| (sa[i].clone(), sb[j].clone()))
}

fn meeting_index<T: Scalar>(p: &[Vec<T>], na: usize) -> Option<(usize, usize)> {
    let seg_box = |i: usize| -> [(T, T); 3] {
        let (x, y) = (&p[2 * i], &p[2 * i + 1]);
        std::array::from_fn(|k| if x[k] < y[k] { (x[k].clone(), y[k].clone()) } else { (y[k].clone(), x[k].clone()) })
    };
    let nb = p.len() / 2 - na;
    let boxes: Vec<[(T, T); 3]> = (0..na + nb).map(seg_box).collect();
    for i in 0..na {
        for j in na..na + nb {
            if (0..3).any(|k| boxes[i][k].1 < boxes[j][k].0 || boxes[j][k].1 < boxes[i][k].0) {
                continue;
            }
            if pr::segments_intersect(&p[2 * i], &p[2 * i + 1], &p[2 * j], &p[2 * j + 1]) {
                return Some((i, j - na));
            }
        }
    }
    None
}

/// Result of the cone computation together with the general-position choice used.
#[derive(Clone, Debug, Serialize)]
pub struct LkOutcome {
    pub value: i64,
    /// apex of the cone, as exact rationals
    pub apex: Vec<String>,
    /// number of apices rejected before this one
    pub resamples: usize,
}

enum Count {
    Value(i64),
    Degenerate,
}

/// `lk(A, B)` as the signed intersection number of `A` with the cone on `B`
/// from a random apex, resampled until every intersection is transverse and
/// interior. The sign of an intersection point is the sign of
/// `det[frame(A-simplex) | frame(cone simplex)]`.
pub fn lk_with<R: Rng>(link: &Link, rng: &mut R) -> Result<LkOutcome> {
    let pts: Vec<Point> = link.a.points().into_iter().chain(link.b.points()).collect();
    let (lo, hi) = bbox(&pts);
    for attempt in 0..MAX_SAMPLES {
        let apex = random_point(&lo, &hi, rng);
        let Ok(cone) = cone_chain(&apex, &link.b) else { continue };
        let count = if link.m == 3 && link.a.dim() == 1 {
            count_r3(&link.a, &link.b, &apex)
        } else {
            count_general(&link.a, &cone)
        };
        if let Count::Value(v) = count {
            return Ok(LkOutcome {
                value: v,
                apex: apex.iter().map(rational::format_rat).collect(),
                resamples: attempt,
            });
        }
    }
    Err(Error::Degenerate(format!("no general-position apex found in {MAX_SAMPLES} samples")))
}

/// Convenience wrapper seeding a ChaCha stream.
pub fn lk(link: &Link, seed: u64) -> Result<i64> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    lk_with(link, &mut rng).map(|o| o.value)
}

/// A random point with small-denominator coordinates in a box around `[lo, hi]`.
fn random_point<R: Rng>(lo: &Point, hi: &Point, rng: &mut R) -> Point {
    const DEN: i64 = 8;
    lo.iter()
        .zip(hi)
        .map(|(l, h)| {
            let l = l.floor().to_integer().to_i64().unwrap_or(0);
            let h = h.ceil().to_integer().to_i64().unwrap_or(0);
            let w = (h - l).max(1);
            let n = rng.gen_range((l - w) * DEN..=(h + w) * DEN);
            rational::ratio(n, DEN)
        })
        .collect()
}

fn count_r3(a: &GeoChain, b: &GeoChain, apex: &Point) -> Count {
    let mut all: Vec<Point> = vec![apex.clone()];
    let a_edges: Vec<(usize, i64)> = a
        .terms()
        .map(|(s, c)| {
            all.extend(s.iter().cloned());
            (all.len() - 2, c)
        })
        .collect();
    let b_edges: Vec<(usize, i64)> = b
        .terms()
        .map(|(s, c)| {
            all.extend(s.iter().cloned());
            (all.len() - 2, c)
        })
        .collect();
    match Lattice::new(&all) {
        Lattice::Small(p) => count_r3_lattice(&p, &a_edges, &b_edges),
        Lattice::Big(p) => count_r3_lattice(&p, &a_edges, &b_edges),
    }
}

fn count_r3_lattice<T: Scalar>(p: &[Vec<T>], a: &[(usize, i64)], b: &[(usize, i64)]) -> Count {
    let apex = &p[0];
    let mut total = 0i64;
    for &(ai, ca) in a {
        let (a0, a1) = (&p[ai], &p[ai + 1]);
        for &(bi, cb) in b {
            let (b0, b1) = (&p[bi], &p[bi + 1]);
            let s0 = pr::orient(apex, b0, b1, a0);
            let s1 = pr::orient(apex, b0, b1, a1);
            if s0 * s1 > 0 {
                continue;
            }
            if s0 == 0 || s1 == 0 {
                if pr::segment_meets_triangle(a0, a1, apex, b0, b1) {
                    return Count::Degenerate;
                }
                continue;
            }
            let e1 = pr::orient(a0, a1, apex, b0);
            let e2 = pr::orient(a0, a1, b0, b1);
            let e3 = pr::orient(a0, a1, b1, apex);
            let has_pos = e1 > 0 || e2 > 0 || e3 > 0;
            let has_neg = e1 < 0 || e2 < 0 || e3 < 0;
            if has_pos && has_neg {
                continue;
            }
            if e1 == 0 || e2 == 0 || e3 == 0 {
                return Count::Degenerate;
            }
            total += ca * cb * s1 as i64;
        }
    }
    Count::Value(total)
}

/// Intersection count of `A` with a cone chain in any ambient dimension by solving
/// the square barycentric system for each simplex pair.
fn count_general(a: &GeoChain, cone: &GeoChain) -> Count {
    let mut total = 0i64;
    for (s, ca) in a.terms() {
        for (t, cb) in cone.terms() {
            match pair_intersection(s, t) {
                PairHit::None => {}
                PairHit::Degenerate => return Count::Degenerate,
                PairHit::Transverse(sign) => total += ca * cb * sign,
            }
        }
    }
    Count::Value(total)
}

enum PairHit {
    None,
    Degenerate,
    Transverse(i64),
}

fn pair_intersection(s: &[Point], t: &[Point]) -> PairHit {
    let m = s[0].len();
    let n = s.len() + t.len();
    debug_assert_eq!(n, m + 2);
    // columns: λ for s, μ for t; rows: coordinates, Σλ = 1, Σμ = 1
    let mut mat: Vec<Vec<Rat>> = Vec::with_capacity(m + 2);
    for k in 0..m {
        let mut row: Vec<Rat> = s.iter().map(|p| p[k].clone()).collect();
        row.extend(t.iter().map(|q| -&q[k]));
        row.push(Rat::zero());
        mat.push(row);
    }
    let mut r1: Vec<Rat> = (0..n).map(|j| if j < s.len() { rational::rat(1) } else { Rat::zero() }).collect();
    r1.push(rational::rat(1));
    let mut r2: Vec<Rat> = (0..n).map(|j| if j >= s.len() { rational::rat(1) } else { Rat::zero() }).collect();
    r2.push(rational::rat(1));
    mat.push(r1);
    mat.push(r2);
    match solve_square(mat, n) {
        Some(x) => {
            if x.iter().any(Signed::is_negative) {
                PairHit::None
            } else if x.iter().any(Zero::is_zero) {
                PairHit::Degenerate
            } else {
                let frame: Vec<Point> = s[1..]
                    .iter()
                    .map(|p| rational::sub(p, &s[0]))
                    .chain(t[1..].iter().map(|q| rational::sub(q, &t[0])))
                    .collect();
                let d = rational::det(frame);
                if d.is_zero() {
                    PairHit::Degenerate
                } else {
                    PairHit::Transverse(if d.is_positive() { 1 } else { -1 })
                }
            }
        }
        None => {
            let sp: Vec<&Point> = s.iter().collect();
            let tp: Vec<&Point> = t.iter().collect();
            if hulls_meet(&sp, &tp) {
                PairHit::Degenerate
            } else {
                PairHit::None
            }
        }
    }
}

/// Solves an `n x n` system given as an augmented matrix; `None` if singular.
fn solve_square(mut m: Vec<Vec<Rat>>, n: usize) -> Option<Vec<Rat>> {
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pv = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &pv;
        }
        let prow = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Half the signed number of crossings of `A` with `B` in a random linear
/// projection of R³, resampling the direction on degenerate configurations.
/// A crossing counts `sign det[t_over, t_under, d]` for viewing direction `d`.
pub fn crossing_oracle_with<R: Rng>(a: &GeoChain, b: &GeoChain, rng: &mut R) -> Result<(i64, [i64; 3])> {
    if a.dim() != 1 || b.dim() != 1 {
        return Err(Error::DimensionMismatch("the crossing count needs two 1-cycles".into()));
    }
    let mut all: Vec<Point> = Vec::new();
    let a_edges: Vec<(usize, i64)> = a
        .terms()
        .map(|(s, c)| {
            all.extend(s.iter().cloned());
            (all.len() - 2, c)
        })
        .collect();
    let b_edges: Vec<(usize, i64)> = b
        .terms()
        .map(|(s, c)| {
            all.extend(s.iter().cloned());
            (all.len() - 2, c)
        })
        .collect();
    if all.iter().any(|p| p.len() != 3) {
        return Err(Error::DimensionMismatch("the crossing count works in R^3".into()));
    }
    let lat = Lattice::new(&all);
    for _ in 0..MAX_SAMPLES {
        let d: [i64; 3] = [rng.gen_range(-97..=97), rng.gen_range(-97..=97), rng.gen_range(-97..=97)];
        if d == [0, 0, 0] {
            continue;
        }
        let r = match &lat {
            Lattice::Small(p) => {
                let dd = d.map(|x| x as i128);
                crossings(p, &a_edges, &b_edges, &dd)
            }
            Lattice::Big(p) => {
                let dd = d.map(BigInt::from);
                crossings(p, &a_edges, &b_edges, &dd)
            }
        };
        match r {
            Crossings::Total(t) => {
                if t % 2 != 0 {
                    return Err(Error::NotACycle("odd crossing total: inputs are not cycles".into()));
                }
                return Ok((t / 2, d));
            }
            Crossings::Degenerate => continue,
            Crossings::Touching => return Err(Error::NotDisjoint("the cycles intersect".into())),
        }
    }
    Err(Error::Degenerate(format!("no generic projection found in {MAX_SAMPLES} samples")))
}

pub fn crossing_oracle(a: &GeoChain, b: &GeoChain, seed: u64) -> Result<i64> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    crossing_oracle_with(a, b, &mut rng).map(|(v, _)| v)
}

enum Crossings {
    Total(i64),
    Degenerate,
    Touching,
}

fn crossings<T: Scalar + Into<BigInt>>(p: &[Vec<T>], a: &[(usize, i64)], b: &[(usize, i64)], d: &[T; 3]) -> Crossings {
    let mut total = 0i64;
    for &(ai, ca) in a {
        let ta = pr::sub(&p[ai + 1], &p[ai]);
        for &(bi, cb) in b {
            let tb = pr::sub(&p[bi + 1], &p[bi]);
            let w = pr::sub(&p[bi], &p[ai]);
            // a0 + s ta = b0 + t tb + h d
            let den = pr::det3(&ta, &tb, d);
            if den.is_zero() {
                // parallel in the projection: degenerate only if the shadows touch
                let shadow = |q: &[T]| -> Vec<BigInt> { pr::cross(d, &pr::sub(q, &[T::zero(), T::zero(), T::zero()])).map(Into::into).to_vec() };
                let (a0, a1) = (shadow(&p[ai]), shadow(&p[ai + 1]));
                let (b0, b1) = (shadow(&p[bi]), shadow(&p[bi + 1]));
                if pr::segments_intersect(&a0, &a1, &b0, &b1) {
                    return Crossings::Degenerate;
                }
                continue;
            }
            let sn = pr::det3(&w, &tb, d);
            let tn = -pr::det3(&ta, &w, d);
            let (sn, tn, den) = if den.is_negative() { (-sn, -tn, -den) } else { (sn, tn, den) };
            if sn.is_negative() || sn > den || tn.is_negative() || tn > den {
                continue;
            }
            if sn.is_zero() || sn == den || tn.is_zero() || tn == den {
                return Crossings::Degenerate;
            }
            let g = pr::sign(&pr::det3(&ta, &tb, &w));
            if g == 0 {
                return Crossings::Touching;
            }
            total -= ca * cb * g as i64;
        }
    }
    Crossings::Total(total)
}

/// Degree of a simplicial map between oriented closed pseudomanifolds of the
/// same dimension, given by a vertex map and fundamental cycles.
pub fn map_degree(
    domain: &SimplicialComplex,
    domain_fundamental: &Chain,
    codomain: &SimplicialComplex,
    codomain_fundamental: &Chain,
    vertex_map: &[usize],
) -> Result<i64> {
    let k = domain_fundamental.dim();
    if codomain_fundamental.dim() != k {
        return Err(Error::DimensionMismatch(format!("degree between dimensions {k} and {}", codomain_fundamental.dim())));
    }
    for (cx, f) in [(domain, domain_fundamental), (codomain, codomain_fundamental)] {
        cx.check_chain(f)?;
        if !f.is_cycle() || f.len() != cx.n_simplices(k) || f.terms().any(|(_, c)| c.abs() != 1) {
            return Err(Error::NotACycle("fundamental cycles must cover every top simplex with ±1".into()));
        }
    }
    for s in domain.all_simplices() {
        for &v in s.vertices() {
            if v >= vertex_map.len() {
                return Err(Error::NonSimplicialMap(format!("vertex {v} has no image")));
            }
        }
        let mut img: Vec<usize> = s.vertices().iter().map(|&v| vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        let simplex = Simplex::new(img.clone()).map_err(|e| Error::NonSimplicialMap(e.to_string()))?;
        if !codomain.contains(&simplex) {
            return Err(Error::NonSimplicialMap(format!("image {img:?} of {s:?} is not a simplex of the codomain")));
        }
    }
    let (target, eps_t) = codomain_fundamental.terms().next().map(|(t, c)| (t.clone(), c)).expect("nonempty");
    let mut deg = 0;
    for (s, eps_s) in domain_fundamental.terms() {
        let img: Vec<usize> = s.vertices().iter().map(|&v| vertex_map[v]).collect();
        if let Some((t, sign)) = Simplex::from_oriented(img) {
            if t == target {
                deg += eps_s * sign * eps_t;
            }
        }
    }
    Ok(deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Ring;
    use crate::rational::point;

    fn polygon(pts: &[[i64; 3]]) -> GeoChain {
        let mut g = GeoChain::zero(1);
        for i in 0..pts.len() {
            g.add_simplex(vec![point(&pts[i]), point(&pts[(i + 1) % pts.len()])], 1).unwrap();
        }
        g
    }

    /// Right-handed Hopf pair: a triangle around the z-axis, counterclockwise seen
    /// from above, and a triangle in the xz-plane threading it.
    pub(crate) fn hopf() -> (GeoChain, GeoChain) {
        let a = polygon(&[[-2, -2, 0], [4, -2, 0], [-2, 4, 0]]);
        let b = polygon(&[[0, 0, -3], [0, 0, 3], [8, 0, 0]]);
        (a, b)
    }

    #[test]
    fn hopf_link_is_plus_one() {
        let (a, b) = hopf();
        let link = Link::new(a.clone(), b.clone()).unwrap();
        assert_eq!(lk(&link, 1).unwrap(), crossing_oracle(&a, &b, 2).unwrap());
        assert_eq!(lk(&link, 1).unwrap(), 1);
        assert_eq!(lk(&link.swapped(), 3).unwrap(), 1);
        let rev = Link::new(a.neg(), b).unwrap();
        assert_eq!(lk(&rev, 1).unwrap(), -1);
    }

    #[test]
    fn split_link_is_zero() {
        let a = polygon(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]);
        let b = polygon(&[[10, 0, 0], [11, 0, 0], [10, 1, 1]]);
        let link = Link::new(a.clone(), b.clone()).unwrap();
        assert_eq!(lk(&link, 9).unwrap(), 0);
        assert_eq!(crossing_oracle(&a, &b, 9).unwrap(), 0);
    }

    #[test]
    fn preconditions() {
        let (a, b) = hopf();
        let touching = polygon(&[[-2, -2, 0], [0, 0, 5], [1, 1, 1]]);
        assert!(matches!(Link::new(a.clone(), touching), Err(Error::NotDisjoint(_))));
        let mut edge = GeoChain::zero(1);
        edge.add_simplex(vec![point(&[9, 9, 9]), point(&[9, 9, 10])], 1).unwrap();
        assert!(matches!(Link::new(a.clone(), edge), Err(Error::NotACycle(_))));
        let mut pt = GeoChain::zero(0);
        pt.add_simplex(vec![point(&[50, 0, 0])], 1).unwrap();
        assert!(matches!(Link::new(pt, b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn general_dimension_path_matches_r3() {
        let (a, b) = hopf();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        use rand::SeedableRng;
        for _ in 0..5 {
            let pts: Vec<Point> = a.points().into_iter().chain(b.points()).collect();
            let (lo, hi) = bbox(&pts);
            let apex = random_point(&lo, &hi, &mut rng);
            let cone = cone_chain(&apex, &b).unwrap();
            if let (Count::Value(x), Count::Value(y)) = (count_general(&a, &cone), count_r3(&a, &b, &apex)) {
                assert_eq!(x, y);
                assert_eq!(x, 1);
            }
        }
    }

    #[test]
    fn low_dimensional_links() {
        // a 0-cycle and a 0-cycle in R^1: lk(q1 - q0, p1 - p0) counts separation
        let mut a = GeoChain::zero(0);
        a.add_simplex(vec![point(&[0])], -1).unwrap();
        a.add_simplex(vec![point(&[3])], 1).unwrap();
        let mut b = GeoChain::zero(0);
        b.add_simplex(vec![point(&[1])], -1).unwrap();
        b.add_simplex(vec![point(&[10])], 1).unwrap();
        let link = Link::new(a.clone(), b.clone()).unwrap();
        let v = lk(&link, 5).unwrap();
        assert_eq!(v.abs(), 1);
        // unlinked: nested intervals
        let mut c = GeoChain::zero(0);
        c.add_simplex(vec![point(&[1])], -1).unwrap();
        c.add_simplex(vec![point(&[2])], 1).unwrap();
        assert_eq!(lk(&Link::new(a, c).unwrap(), 5).unwrap(), 0);
        // 1-cycle and 0-cycle in R^2: a point inside / outside a triangle
        let tri = {
            let mut g = GeoChain::zero(1);
            let p = [point(&[0, 0]), point(&[4, 0]), point(&[0, 4])];
            for i in 0..3 {
                g.add_simplex(vec![p[i].clone(), p[(i + 1) % 3].clone()], 1).unwrap();
            }
            g
        };
        let mut inside = GeoChain::zero(0);
        inside.add_simplex(vec![point(&[1, 1])], 1).unwrap();
        inside.add_simplex(vec![point(&[9, 9])], -1).unwrap();
        assert_eq!(lk(&Link::new(tri.clone(), inside).unwrap(), 2).unwrap().abs(), 1);
        let mut outside = GeoChain::zero(0);
        outside.add_simplex(vec![point(&[8, 1])], 1).unwrap();
        outside.add_simplex(vec![point(&[9, 9])], -1).unwrap();
        assert_eq!(lk(&Link::new(tri, outside).unwrap(), 2).unwrap(), 0);
    }

    #[test]
    fn circle_and_sphere_in_r4() {
        let tri = [[0, -1, 0, 0], [0, 1, 0, 0], [10, 1, 0, 0]];
        let mut a = GeoChain::zero(1);
        for i in 0..3 {
            a.add_simplex(vec![point(&tri[i]), point(&tri[(i + 1) % 3])], 1).unwrap();
        }
        let v = [[-1, 0, -1, -1], [3, 0, -1, -1], [-1, 0, 3, -1], [-1, 0, -1, 3]];
        let mut b = GeoChain::zero(2);
        for skip in 0..4 {
            let face: Vec<Point> = (0..4).filter(|&i| i != skip).map(|i| point(&v[i])).collect();
            b.add_simplex(face, if skip % 2 == 0 { 1 } else { -1 }).unwrap();
        }
        assert!(b.is_cycle());
        let link = Link::new(a.clone(), b.clone()).unwrap();
        let x = lk(&link, 3).unwrap();
        assert_eq!(x.abs(), 1);
        assert_eq!(lk(&link, 17).unwrap(), x);
        assert_eq!(lk(&link.swapped(), 5).unwrap(), x);
        // moving the circle away unlinks it
        let far = a.map_points(|p| rational::add(p, &point(&[20, 0, 0, 0]))).unwrap();
        assert_eq!(lk(&Link::new(far, b).unwrap(), 3).unwrap(), 0);
    }

    fn circle(n: usize) -> (SimplicialComplex, Chain) {
        let k = SimplicialComplex::from_maximal(n, (0..n).map(|i| vec![i, (i + 1) % n])).unwrap();
        let f = Chain::from_terms(1, Ring::Z, (0..n).map(|i| (vec![i, (i + 1) % n], 1))).unwrap();
        (k, f)
    }

    #[test]
    fn degrees() {
        let (c6, f6) = circle(6);
        let (c3, f3) = circle(3);
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(map_degree(&c6, &f6, &c6, &f6, &id).unwrap(), 1);
        assert_eq!(map_degree(&c6, &f6, &c6, &f6.neg(), &id).unwrap(), -1);
        let double: Vec<usize> = (0..6).map(|i| i % 3).collect();
        assert_eq!(map_degree(&c6, &f6, &c3, &f3, &double).unwrap(), 2);
        assert_eq!(map_degree(&c6, &f6, &c3, &f3, &[0; 6]).unwrap(), 0);
        let bad = vec![0, 2, 4, 0, 2, 4];
        assert!(matches!(map_degree(&c6, &f6, &c6, &f6, &bad), Err(Error::NonSimplicialMap(_))));
    }
}
