//! Simplexwise-linear embeddings with exact rational coordinates, geometric
//! chains, cones, normal fields on oriented surfaces in R³, and pushoffs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::{Chain, Simplex, SimplicialComplex, Subdivision};
use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::predicates::{self as pr, Scalar};
use crate::rational::{self, Lattice, Point, Rat};

/// A simplicial complex with a rational point of R^m for each vertex label.
#[derive(Clone, Debug)]
pub struct EmbeddedComplex {
    complex: SimplicialComplex,
    coords: Vec<Point>,
    ambient_dim: usize,
}

/// Outcome of [`EmbeddedComplex::validate`]: degenerate simplices and pairs of
/// simplices meeting outside their common face, in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct EmbeddingReport {
    pub degenerate: Vec<Simplex>,
    pub violations: Vec<(Simplex, Simplex)>,
}

impl EmbeddingReport {
    pub fn is_valid(&self) -> bool {
        self.degenerate.is_empty() && self.violations.is_empty()
    }
}

impl EmbeddedComplex {
    pub fn new(complex: SimplicialComplex, coords: Vec<Point>) -> Result<EmbeddedComplex> {
        if coords.len() != complex.n_vertices() {
            return Err(Error::InvalidComplex(format!(
                "{} coordinate rows for {} vertices",
                coords.len(),
                complex.n_vertices()
            )));
        }
        let ambient_dim = coords.first().map_or(3, Vec::len);
        if coords.iter().any(|p| p.len() != ambient_dim) {
            return Err(Error::InvalidComplex("points of different dimensions".into()));
        }
        Ok(EmbeddedComplex { complex, coords, ambient_dim })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn point(&self, v: usize) -> &Point {
        &self.coords[v]
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simplex_points(&self, s: &Simplex) -> Vec<Point> {
        s.vertices().iter().map(|&v| self.coords[v].clone()).collect()
    }

    /// Checks nondegeneracy of every simplex and that any two simplices meet
    /// exactly in their common face.
    pub fn validate(&self) -> EmbeddingReport {
        let all: Vec<Simplex> = self.complex.all_simplices().cloned().collect();
        check_simplices(&self.coords, &all, |_, _| true, false)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Barycentric subdivision with barycenters at exact averages.
    pub fn subdivide(&self) -> (EmbeddedComplex, Subdivision) {
        let (k, sd) = self.complex.subdivide();
        let coords = sd
            .barycenter_of
            .iter()
            .map(|s| {
                let pts: Vec<&Point> = s.vertices().iter().map(|&v| &self.coords[v]).collect();
                rational::centroid(&pts)
            })
            .collect();
        (EmbeddedComplex { complex: k, coords, ambient_dim: self.ambient_dim }, sd)
    }

    /// Image under `x -> M x + t`.
    pub fn affine_image(&self, m: &[Vec<Rat>], t: &[Rat]) -> EmbeddedComplex {
        let coords = self.coords.iter().map(|p| affine_apply(m, t, p)).collect();
        EmbeddedComplex { complex: self.complex.clone(), coords, ambient_dim: self.ambient_dim }
    }
}

pub fn affine_apply(m: &[Vec<Rat>], t: &[Rat], p: &[Rat]) -> Point {
    m.iter()
        .zip(t)
        .map(|(row, ti)| row.iter().zip(p).fold(ti.clone(), |acc, (a, x)| acc + a * x))
        .collect()
}

/// Runs the pairwise embedding checks on the given simplices (vertex labels index
/// `coords`), restricted to pairs accepted by `want`. With `first_only` the scan
/// stops at the first problem.
pub(crate) fn check_simplices(
    coords: &[Point],
    simplices: &[Simplex],
    want: impl Fn(usize, usize) -> bool + Sync,
    first_only: bool,
) -> EmbeddingReport {
    let m = coords.first().map_or(3, Vec::len);
    let mut report = EmbeddingReport::default();
    for s in simplices {
        let pts: Vec<Point> = s.vertices().iter().map(|&v| coords[v].clone()).collect();
        if !affinely_independent(&pts) {
            report.degenerate.push(s.clone());
            if first_only {
                return report;
            }
        }
    }
    if !report.degenerate.is_empty() {
        report.degenerate.sort();
        return report;
    }
    let mut pairs = match Lattice::new(coords) {
        Lattice::Small(p) => sweep(&p, simplices, &want, m, coords, first_only),
        Lattice::Big(p) => sweep(&p, simplices, &want, m, coords, first_only),
    };
    for (a, b) in pairs.iter_mut() {
        if b < a {
            std::mem::swap(a, b);
        }
    }
    pairs.sort();
    report.violations = pairs;
    report
}

pub fn affinely_independent(pts: &[Point]) -> bool {
    let diffs: Vec<Point> = pts[1..].iter().map(|p| rational::sub(p, &pts[0])).collect();
    diffs.is_empty() || rational::rank(&diffs) == diffs.len()
}

fn sweep<T: Scalar>(
    pts: &[Vec<T>],
    simplices: &[Simplex],
    want: &impl Fn(usize, usize) -> bool,
    m: usize,
    coords: &[Point],
    first_only: bool,
) -> Vec<(Simplex, Simplex)> {
    let boxes: Vec<(Vec<T>, Vec<T>)> = simplices
        .iter()
        .map(|s| {
            let mut lo = pts[s.vertices()[0]].clone();
            let mut hi = lo.clone();
            for &v in &s.vertices()[1..] {
                for k in 0..m {
                    if pts[v][k] < lo[k] {
                        lo[k] = pts[v][k].clone();
                    }
                    if pts[v][k] > hi[k] {
                        hi[k] = pts[v][k].clone();
                    }
                }
            }
            (lo, hi)
        })
        .collect();
    let mut order: Vec<usize> = (0..simplices.len()).collect();
    order.sort_by(|&a, &b| boxes[a].0[0].partial_cmp(&boxes[b].0[0]).expect("total order"));
    let mut out = Vec::new();
    for (oi, &i) in order.iter().enumerate() {
        for &j in &order[oi + 1..] {
            if boxes[j].0[0] > boxes[i].1[0] {
                break;
            }
            if (1..m).any(|k| boxes[j].0[k] > boxes[i].1[k] || boxes[i].0[k] > boxes[j].1[k]) {
                continue;
            }
            if !want(i, j) {
                continue;
            }
            let (s, t) = (&simplices[i], &simplices[j]);
            let bad = if m == 3 && s.dim() <= 2 && t.dim() <= 2 {
                improper_r3(pts, s, t)
            } else {
                improper_lp(coords, s, t)
            };
            if bad {
                out.push((s.clone(), t.clone()));
                if first_only {
                    return out;
                }
            }
        }
    }
    out
}

/// Whether two nondegenerate simplices of dimension at most 2 in R³ meet outside
/// the face spanned by their common vertices.
pub(crate) fn improper_r3<T: Scalar>(pts: &[Vec<T>], s: &Simplex, t: &Simplex) -> bool {
    let (s, t) = if s.dim() <= t.dim() { (s, t) } else { (t, s) };
    if s.is_face_of(t) {
        return false;
    }
    let shared = s.shared_vertices(t);
    let p = |v: usize| pts[v].as_slice();
    let others = |x: &Simplex| -> Vec<usize> {
        x.vertices().iter().copied().filter(|v| !shared.contains(v)).collect()
    };
    let sv = s.vertices();
    let tv = t.vertices();
    match (s.dim(), t.dim(), shared.len()) {
        (0, 0, _) => pr::points_equal(p(sv[0]), p(tv[0])),
        (0, 1, _) => pr::point_on_segment(p(sv[0]), p(tv[0]), p(tv[1])),
        (0, 2, _) => pr::point_in_triangle(p(sv[0]), p(tv[0]), p(tv[1]), p(tv[2])),
        (1, 1, 0) => pr::segments_intersect(p(sv[0]), p(sv[1]), p(tv[0]), p(tv[1])),
        (1, 1, _) => {
            let v = shared[0];
            pr::segments_overlap_at(p(v), p(others(s)[0]), p(others(t)[0]))
        }
        (1, 2, 0) => pr::segment_meets_triangle(p(sv[0]), p(sv[1]), p(tv[0]), p(tv[1]), p(tv[2])),
        (1, 2, _) => {
            let v = shared[0];
            let o = others(t);
            pr::segment_enters_triangle_at(p(v), p(others(s)[0]), p(o[0]), p(o[1]))
        }
        (2, 2, 0) => pr::triangles_intersect([p(sv[0]), p(sv[1]), p(sv[2])], [p(tv[0]), p(tv[1]), p(tv[2])]),
        (2, 2, 1) => {
            let (a, b) = (others(s), others(t));
            pr::segment_meets_triangle(p(a[0]), p(a[1]), p(tv[0]), p(tv[1]), p(tv[2]))
                || pr::segment_meets_triangle(p(b[0]), p(b[1]), p(sv[0]), p(sv[1]), p(sv[2]))
        }
        (2, 2, _) => pr::triangles_fold_at_edge(p(shared[0]), p(shared[1]), p(others(s)[0]), p(others(t)[0])),
        _ => unreachable!("dimensions are at most 2"),
    }
}

/// General-dimension test by linear programming: maximize the barycentric weight
/// of `s` outside the common face over points of `s ∩ t`.
pub(crate) fn improper_lp(coords: &[Point], s: &Simplex, t: &Simplex) -> bool {
    let shared = s.shared_vertices(t);
    let ps: Vec<&Point> = s.vertices().iter().map(|&v| &coords[v]).collect();
    let pt: Vec<&Point> = t.vertices().iter().map(|&v| &coords[v]).collect();
    let outside: Vec<bool> = s.vertices().iter().map(|v| !shared.contains(v)).collect();
    match intersection_lp(&ps, &pt, &outside) {
        LpOutcome::Infeasible => false,
        LpOutcome::Optimal { value, .. } => shared.is_empty() || value.is_positive(),
        LpOutcome::Unbounded => unreachable!("weights are bounded"),
    }
}

/// LP over `(λ, μ) >= 0` with `Σλ p = Σμ q`, `Σλ = Σμ = 1`, maximizing the sum
/// of the marked `λ`.
pub(crate) fn intersection_lp(ps: &[&Point], qs: &[&Point], marked: &[bool]) -> LpOutcome {
    let m = ps[0].len();
    let n = ps.len() + qs.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(m + 2);
    for k in 0..m {
        let mut row: Vec<Rat> = ps.iter().map(|p| p[k].clone()).collect();
        row.extend(qs.iter().map(|q| -&q[k]));
        a.push(row);
    }
    let mut r1 = vec![Rat::zero(); n];
    let mut r2 = vec![Rat::zero(); n];
    for x in r1.iter_mut().take(ps.len()) {
        *x = Rat::one();
    }
    for x in r2.iter_mut().skip(ps.len()) {
        *x = Rat::one();
    }
    a.push(r1);
    a.push(r2);
    let mut b = vec![Rat::zero(); m];
    b.push(Rat::one());
    b.push(Rat::one());
    let mut c = vec![Rat::zero(); n];
    for (i, &mk) in marked.iter().enumerate() {
        if mk {
            c[i] = Rat::one();
        }
    }
    lp::maximize(&a, &b, &c)
}

/// Whether the closed convex hulls of two point sets meet.
pub fn hulls_meet(ps: &[&Point], qs: &[&Point]) -> bool {
    !matches!(intersection_lp(ps, qs, &vec![false; ps.len()]), LpOutcome::Infeasible)
}

/// An integer combination of oriented geometric simplices, each given by its
/// vertex points. Simplices are stored with points in ascending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeoChain {
    dim: usize,
    terms: BTreeMap<Vec<Point>, i64>,
}

impl GeoChain {
    pub fn zero(dim: usize) -> GeoChain {
        GeoChain { dim, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `coeff` times the simplex with the given ordered vertices. Repeated
    /// points are rejected.
    pub fn add_simplex(&mut self, mut pts: Vec<Point>, coeff: i64) -> Result<()> {
        if pts.len() != self.dim + 1 {
            return Err(Error::DimensionMismatch(format!("{} points for a {}-simplex", pts.len(), self.dim)));
        }
        let mut sign = 1;
        for i in 1..pts.len() {
            let mut j = i;
            while j > 0 && pts[j - 1] > pts[j] {
                pts.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Degenerate("repeated vertex in geometric simplex".into()));
        }
        let e = self.terms.entry(pts).or_insert(0);
        *e += sign * coeff;
        if *e == 0 {
            let key: Vec<Vec<Point>> = self.terms.iter().filter(|(_, &c)| c == 0).map(|(k, _)| k.clone()).collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
        Ok(())
    }

    /// The chain `c` placed by the vertex coordinates.
    pub fn from_chain(c: &Chain, coords: &[Point]) -> Result<GeoChain> {
        let mut g = GeoChain::zero(c.dim());
        for (s, k) in c.terms() {
            let pts = s
                .vertices()
                .iter()
                .map(|&v| {
                    coords.get(v).cloned().ok_or_else(|| Error::InvalidChain(format!("vertex {v} has no coordinates")))
                })
                .collect::<Result<Vec<Point>>>()?;
            g.add_simplex(pts, k)?;
        }
        Ok(g)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Point>, i64)> + '_ {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn boundary(&self) -> GeoChain {
        let mut out = GeoChain::zero(self.dim.saturating_sub(1));
        if self.dim == 0 {
            return out;
        }
        for (pts, c) in self.terms() {
            for i in 0..pts.len() {
                let mut f = pts.clone();
                f.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                out.add_simplex(f, sign * c).expect("faces of a nondegenerate simplex");
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.dim == 0 || self.boundary().is_empty()
    }

    pub fn neg(&self) -> GeoChain {
        GeoChain { dim: self.dim, terms: self.terms.iter().map(|(k, &c)| (k.clone(), -c)).collect() }
    }

    pub fn add(&self, other: &GeoChain) -> Result<GeoChain> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim, other.dim)));
        }
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_simplex(k.clone(), c)?;
        }
        Ok(out)
    }

    /// Distinct points used by the chain.
    pub fn points(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.terms.keys().flatten().cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<GeoChain> {
        let mut out = GeoChain::zero(self.dim);
        for (k, c) in self.terms() {
            out.add_simplex(k.iter().map(&f).collect(), c)?;
        }
        Ok(out)
    }

    /// Barycentric subdivision of every simplex, as a chain (for dimension 1: midpoints).
    pub fn subdivide(&self) -> GeoChain {
        let mut out = GeoChain::zero(self.dim);
        for (pts, c) in self.terms() {
            for (simplex, sign) in subdivide_simplex(pts) {
                out.add_simplex(simplex, sign * c).expect("subdivision simplices are nondegenerate");
            }
        }
        out
    }
}

/// Ordered simplices of the barycentric subdivision of one oriented simplex, with signs.
fn subdivide_simplex(pts: &[Point]) -> Vec<(Vec<Point>, i64)> {
    if pts.len() == 1 {
        return vec![(pts.to_vec(), 1)];
    }
    let refs: Vec<&Point> = pts.iter().collect();
    let b = rational::centroid(&refs);
    let mut out = Vec::new();
    for i in 0..pts.len() {
        let mut f = pts.to_vec();
        f.remove(i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (mut s, c) in subdivide_simplex(&f) {
            s.insert(0, b.clone());
            out.push((s, sign * c));
        }
    }
    out
}

/// The cone `apex * B` with `∂(apex * B) = B` for a cycle `B`. Fails if some cone
/// simplex is degenerate.
pub fn cone_chain(apex: &Point, b: &GeoChain) -> Result<GeoChain> {
    let mut out = GeoChain::zero(b.dim() + 1);
    for (pts, c) in b.terms() {
        let mut s = Vec::with_capacity(pts.len() + 1);
        s.push(apex.clone());
        s.extend(pts.iter().cloned());
        if !affinely_independent(&s) {
            return Err(Error::Degenerate("apex is affinely dependent on a simplex of B".into()));
        }
        out.add_simplex(s, c)?;
    }
    Ok(out)
}

/// A vector at each vertex of an embedded surface in R³.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalField {
    pub vectors: Vec<Point>,
}

impl NormalField {
    pub fn negated(&self) -> NormalField {
        NormalField { vectors: self.vectors.iter().map(|v| v.iter().map(|x| -x).collect()).collect() }
    }

    pub fn scaled(&self, k: &Rat) -> NormalField {
        NormalField { vectors: self.vectors.iter().map(|v| rational::scale(v, k)).collect() }
    }

    pub fn linear_image(&self, m: &[Vec<Rat>]) -> NormalField {
        let zero = vec![Rat::zero(); m.len()];
        NormalField { vectors: self.vectors.iter().map(|v| affine_apply(m, &zero, v)).collect() }
    }

    /// Checks that at every vertex the vector has positive dot product with the
    /// oriented normal of each incident triangle. `orientation` is a coherent
    /// 2-chain with coefficients ±1.
    pub fn validate(&self, e: &EmbeddedComplex, orientation: &Chain) -> Result<()> {
        if self.vectors.len() != e.coords().len() {
            return Err(Error::InvalidField(format!(
                "{} vectors for {} vertices",
                self.vectors.len(),
                e.coords().len()
            )));
        }
        for (t, sign) in orientation.terms() {
            let n = oriented_normal(e, t, sign);
            for &v in t.vertices() {
                if !rational::dot(&self.vectors[v], &n).is_positive() {
                    return Err(Error::InvalidField(format!("vector at vertex {v} is not on the positive side of {t:?}")));
                }
            }
        }
        Ok(())
    }
}

fn oriented_normal(e: &EmbeddedComplex, t: &Simplex, sign: i64) -> Point {
    let v = t.vertices();
    let (p0, p1, p2) = (e.point(v[0]), e.point(v[1]), e.point(v[2]));
    let n = rational::cross(&rational::sub(p1, p0), &rational::sub(p2, p0));
    if sign < 0 {
        n.iter().map(|x| -x).collect()
    } else {
        n
    }
}

/// Checks that `orientation` is a coherent orientation of the surface `e` in R³.
pub fn check_oriented_surface(e: &EmbeddedComplex, orientation: &Chain) -> Result<()> {
    if e.ambient_dim() != 3 {
        return Err(Error::DimensionMismatch(format!("surface in R^{}, R^3 expected", e.ambient_dim())));
    }
    e.complex().check_surface(false)?;
    if orientation.dim() != 2
        || orientation.len() != e.complex().n_simplices(2)
        || orientation.terms().any(|(t, c)| c.abs() != 1 || !e.complex().contains(t))
    {
        return Err(Error::InvalidChain("orientation must give every triangle a sign ±1".into()));
    }
    let b = orientation.boundary();
    let bd: Vec<Simplex> = e.complex().boundary_edges();
    if b.terms().any(|(s, _)| !bd.contains(s)) {
        return Err(Error::InvalidChain("orientation is not coherent".into()));
    }
    Ok(())
}

/// The field whose vector at a vertex is the sum of the oriented normals of the
/// incident triangles.
pub fn surface_normal_field(e: &EmbeddedComplex, orientation: &Chain) -> Result<NormalField> {
    check_oriented_surface(e, orientation)?;
    let mut vectors = vec![vec![Rat::zero(); 3]; e.coords().len()];
    for (t, sign) in orientation.terms() {
        let n = oriented_normal(e, t, sign);
        for &v in t.vertices() {
            vectors[v] = rational::add(&vectors[v], &n);
        }
    }
    let f = NormalField { vectors };
    f.validate(e, orientation)?;
    Ok(f)
}

/// A cycle pushed off a surface along a normal field.
#[derive(Clone, Debug)]
pub struct Pushoff {
    pub cycle: GeoChain,
    pub epsilon: Rat,
}

/// Pushes the 1-cycle `y` of `e` off the surface by `ε ξ`, halving `ε` from 1
/// until the pushed cycle and the straight tracks from `y` to it meet `e` only
/// along `y`, at both `ε` and `ε/2`.
pub fn pushoff(e: &EmbeddedComplex, y: &Chain, xi: &NormalField) -> Result<Pushoff> {
    if y.dim() != 1 {
        return Err(Error::DimensionMismatch(format!("pushoff of a {}-chain", y.dim())));
    }
    e.complex().check_chain(y)?;
    if !y.is_cycle() {
        return Err(Error::NotACycle("pushoff needs a cycle".into()));
    }
    if xi.vectors.len() != e.coords().len() {
        return Err(Error::InvalidField("field size does not match the complex".into()));
    }
    let mut eps = Rat::one();
    let half = Rat::new(BigInt::from(1), BigInt::from(2));
    let mut ok_prev: Option<bool> = None;
    for _ in 0..=64 {
        let ok = track_is_clean(e, y, xi, &eps);
        if ok && ok_prev == Some(true) {
            // the previous (larger) ε is certified at ε and ε/2
            let eps_ok = &eps / &half;
            return Ok(Pushoff { cycle: pushed_cycle(e, y, xi, &eps_ok)?, epsilon: eps_ok });
        }
        ok_prev = Some(ok);
        eps = &eps * &half;
    }
    Err(Error::PushoffFailed("no stable ε after 64 halvings".into()))
}

fn pushed_point(e: &EmbeddedComplex, xi: &NormalField, v: usize, eps: &Rat) -> Point {
    rational::add(e.point(v), &rational::scale(&xi.vectors[v], eps))
}

pub fn pushed_cycle(e: &EmbeddedComplex, y: &Chain, xi: &NormalField, eps: &Rat) -> Result<GeoChain> {
    let mut g = GeoChain::zero(1);
    for (s, c) in y.terms() {
        let v = s.vertices();
        g.add_simplex(vec![pushed_point(e, xi, v[0], eps), pushed_point(e, xi, v[1], eps)], c)?;
    }
    Ok(g)
}

/// Builds `e` together with the pushed copy of `y` and its track strip and checks
/// every pair involving a new simplex.
fn track_is_clean(e: &EmbeddedComplex, y: &Chain, xi: &NormalField, eps: &Rat) -> bool {
    let n = e.coords().len();
    let verts = y.support_vertices();
    let plus: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, n + i)).collect();
    let mut coords: Vec<Point> = e.coords().to_vec();
    for &v in &verts {
        coords.push(pushed_point(e, xi, v, eps));
    }
    let mut simplices: Vec<Simplex> = e.complex().all_simplices().cloned().collect();
    let old = simplices.len();
    let mut extra: Vec<Vec<usize>> = Vec::new();
    for &v in &verts {
        extra.push(vec![plus[&v]]);
        extra.push(vec![v, plus[&v]]);
    }
    for (s, _) in y.terms() {
        let (u, v) = (s.vertices()[0], s.vertices()[1]);
        let (up, vp) = (plus[&u], plus[&v]);
        extra.push(vec![up, vp]);
        extra.push(vec![u, vp]);
        extra.push(vec![u, v, vp]);
        extra.push(vec![u, up, vp]);
    }
    for x in extra {
        let (s, _) = Simplex::from_oriented(x).expect("distinct labels");
        simplices.push(s);
    }
    let report = check_simplices(&coords, &simplices, |i, j| i >= old || j >= old, true);
    report.is_valid()
}
