//! Exactly embedded twisted ribbons and genus-one band surfaces.
//!
//! Everything is laid out on an integer grid in the plane z = 0. A ribbon follows
//! a rectilinear core path; each cross-section is a short row of points across the
//! core, and consecutive sections are joined by triangulated quads. Twisting
//! rotates the cross-section direction about the core through rational unit
//! vectors `((1 - t²)/(1 + t²), 2t/(1 + t²))`, so all coordinates stay rational.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Chain, Ring, SimplicialComplex};
use crate::embedding::{surface_normal_field, EmbeddedComplex, GeoChain};
use crate::error::{Error, Result};
use crate::linking::map_degree;
use crate::rational::{self, Point, Rat};
use crate::seifert::{SeifertInput, SymForm};

/// Number of refinements of the rotation table tried before giving up.
const MAX_REFINE: u32 = 8;

// Orientation conventions, fixed so that a positive parameter gives a positive
// linking contribution (see the calibration tests below).
const TWIST_SIGN: i64 = 1;
const NECK_SIGN: i64 = 1;
const CROSSING_LIFT: i64 = -2;
const SURFACE_SIDE: i64 = -1;

/// Rational unit vectors `(cos, sin)` for one full turn in `8 * 2^refine` steps.
pub fn turn_table(refine: u32) -> Vec<(Rat, Rat)> {
    let q = 2i64 << refine;
    let quarter: Vec<(Rat, Rat)> = (0..q)
        .map(|i| {
            let t = rational::ratio(i, q);
            let d = Rat::one() + &t * &t;
            ((Rat::one() - &t * &t) / &d, (&t + &t) / &d)
        })
        .collect();
    let mut out = Vec::with_capacity(4 * quarter.len());
    for k in 0..4 {
        for (c, s) in &quarter {
            let (mut c, mut s) = (c.clone(), s.clone());
            for _ in 0..k {
                (c, s) = (-s, c);
            }
            out.push((c, s));
        }
    }
    out
}

/// Sample point along a rectilinear core path.
#[derive(Clone, Debug)]
struct Frame {
    p: [i64; 2],
    /// left normal of the path on straight runs, or the corner diagonal
    left: [i64; 2],
    corner: bool,
}

fn left_of(d: [i64; 2]) -> [i64; 2] {
    [-d[1], d[0]]
}

fn unit_dir(a: [i64; 2], b: [i64; 2]) -> [i64; 2] {
    [(b[0] - a[0]).signum(), (b[1] - a[1]).signum()]
}

/// Frames along the path through `waypoints` (axis-parallel legs). Interior
/// waypoints are corners with a diagonal section; samples one step away from a
/// corner are skipped so that the quads next to it stay nondegenerate.
fn path_frames(waypoints: &[[i64; 2]], closed: bool) -> Vec<Frame> {
    let n = waypoints.len();
    let legs = if closed { n } else { n - 1 };
    let is_corner = |i: usize| closed || (i > 0 && i < n - 1);
    let mut out = Vec::new();
    for l in 0..legs {
        let (a, b) = (waypoints[l], waypoints[(l + 1) % n]);
        let d = unit_dir(a, b);
        let len = (b[0] - a[0]).abs() + (b[1] - a[1]).abs();
        if is_corner(l) {
            let prev = waypoints[(l + n - 1) % n];
            let din = unit_dir(prev, a);
            let (li, lo) = (left_of(din), left_of(d));
            out.push(Frame { p: a, left: [li[0] + lo[0], li[1] + lo[1]], corner: true });
        }
        let start = if is_corner(l) { 2 } else { 0 };
        let end_corner = is_corner((l + 1) % n) && (closed || l + 1 < n - 1);
        let stop = if end_corner { len - 2 } else { len };
        for s in start..=stop {
            out.push(Frame { p: [a[0] + d[0] * s, a[1] + d[1] * s], left: left_of(d), corner: false });
        }
    }
    out
}

/// Places a frame: `2 hw + 1` points `p + lift ẑ + m h w` for `m = hw, …, -hw`, with
/// `w = cos·left + sin·ẑ` the rotated section direction.
fn section(f: &Frame, unit: &Rat, hw: i64, h: &Rat, lift: &Rat, rot: &(Rat, Rat)) -> Vec<Point> {
    let base = [Rat::from_integer(f.p[0].into()) * unit, Rat::from_integer(f.p[1].into()) * unit, lift * unit];
    let left = [Rat::from_integer(f.left[0].into()), Rat::from_integer(f.left[1].into())];
    let w: [Rat; 3] = if f.corner {
        [left[0].clone(), left[1].clone(), Rat::zero()]
    } else {
        [&rot.0 * &left[0], &rot.0 * &left[1], rot.1.clone()]
    };
    (-hw..=hw)
        .rev()
        .map(|m| {
            let k = Rat::from_integer(m.into()) * h;
            (0..3).map(|i| &base[i] + &k * &w[i]).collect()
        })
        .collect()
}

#[derive(Default)]
struct Mesh {
    index: HashMap<Point, usize>,
    coords: Vec<Point>,
    tris: Vec<[usize; 3]>,
}

impl Mesh {
    fn vertex(&mut self, p: Point) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        self.coords.push(p.clone());
        self.index.insert(p, self.coords.len() - 1);
        self.coords.len() - 1
    }

    /// Joins consecutive sections by quads split along a diagonal.
    fn strip(&mut self, sections: Vec<Vec<Point>>, closed: bool) -> Vec<Vec<usize>> {
        let ids: Vec<Vec<usize>> =
            sections.into_iter().map(|s| s.into_iter().map(|p| self.vertex(p)).collect()).collect();
        let n = ids.len();
        let pairs = if closed { n } else { n - 1 };
        for i in 0..pairs {
            let (a, b) = (&ids[i], &ids[(i + 1) % n]);
            for j in 0..a.len() - 1 {
                self.tris.push([a[j], a[j + 1], b[j + 1]]);
                self.tris.push([a[j], b[j + 1], b[j]]);
            }
        }
        ids
    }

    fn finish(self) -> Result<EmbeddedComplex> {
        let k = SimplicialComplex::from_maximal(self.coords.len(), self.tris.iter().map(|t| t.to_vec()))?;
        EmbeddedComplex::new(k, self.coords)
    }
}

fn closed_path(ring: Ring, verts: &[usize]) -> Result<Chain> {
    let n = verts.len();
    Chain::from_terms(1, ring, (0..n).map(|i| (vec![verts[i], verts[(i + 1) % n]], 1)))
}

/// Parameters of a twisted annulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonSpec {
    /// full twists
    pub twists: i64,
    /// minimum number of grid steps per side of the core square
    pub segments: i64,
    /// half-width of the band, capped at one grid step
    pub width: Rat,
    /// half the side length of the core square
    pub radius: Rat,
}

impl RibbonSpec {
    pub fn new(twists: i64) -> RibbonSpec {
        RibbonSpec { twists, segments: 8, width: rational::ratio(1, 2), radius: rational::rat(4) }
    }
}

/// A twisted annulus and its boundary circles, oriented parallel to the core.
#[derive(Clone, Debug)]
pub struct Ribbon {
    pub embedded: EmbeddedComplex,
    pub inner: Chain,
    pub outer: Chain,
    pub core: Chain,
    /// rotation step of each core section, in `0..steps_per_turn`
    pub twist_index: Vec<usize>,
    pub steps_per_turn: usize,
    pub refinement: u32,
}

impl Ribbon {
    pub fn boundary_pair(&self) -> Result<(GeoChain, GeoChain)> {
        let c = self.embedded.coords();
        Ok((GeoChain::from_chain(&self.outer, c)?, GeoChain::from_chain(&self.inner, c)?))
    }

    /// Degree of the map from the core circle to the circle of section directions.
    pub fn twist_degree(&self) -> Result<i64> {
        let n = self.twist_index.len();
        let t = self.steps_per_turn;
        let circle = |m: usize| -> Result<(SimplicialComplex, Chain)> {
            let k = SimplicialComplex::from_maximal(m, (0..m).map(|i| vec![i, (i + 1) % m]))?;
            let f = closed_path(Ring::Z, &(0..m).collect::<Vec<_>>())?;
            Ok((k, f))
        };
        let (dk, df) = circle(n)?;
        let (ck, cf) = circle(t)?;
        map_degree(&dk, &df, &ck, &cf, &self.twist_index)
    }
}

pub fn gen_ribbon(spec: &RibbonSpec) -> Result<Ribbon> {
    if !spec.width.is_positive() || !spec.radius.is_positive() || spec.segments < 8 {
        return Err(Error::Bounds("ribbon needs positive width and radius and at least 8 segments".into()));
    }
    for r in 0..=MAX_REFINE {
        let ribbon = build_ribbon(spec, r)?;
        if ribbon.embedded.is_valid() {
            return Ok(ribbon);
        }
    }
    Err(Error::EmbeddingFailed(format!("ribbon still self-intersects after {MAX_REFINE} refinements")))
}

fn build_ribbon(spec: &RibbonSpec, refine: u32) -> Result<Ribbon> {
    let table = turn_table(refine);
    let t = table.len() as i64;
    let span = t * spec.twists.abs();
    let side = spec.segments.max(span + 4);
    let unit = &spec.radius * rational::ratio(2, side);
    let h = if spec.width < unit { spec.width.clone() / &unit } else { Rat::one() };
    let frames = path_frames(&[[0, 0], [side, 0], [side, side], [0, side]], true);
    let sign = spec.twists.signum() * TWIST_SIGN;
    let mut index = Vec::with_capacity(frames.len());
    let mut sections = Vec::with_capacity(frames.len());
    let zero = Rat::zero();
    for f in &frames {
        let k = if !f.corner && f.p[0] == side { sign * (f.p[1] - 2).clamp(0, span) } else { 0 };
        let ki = k.rem_euclid(t) as usize;
        index.push(ki);
        sections.push(section(f, &unit, 1, &(&h * &unit), &zero, &table[ki]));
    }
    let mut mesh = Mesh::default();
    let ids = mesh.strip(sections, true);
    let embedded = mesh.finish()?;
    let column = |j: usize| ids.iter().map(|s| s[j]).collect::<Vec<_>>();
    Ok(Ribbon {
        embedded,
        inner: closed_path(Ring::Z, &column(0))?,
        outer: closed_path(Ring::Z, &column(2))?,
        core: closed_path(Ring::Z, &column(1))?,
        twist_index: index,
        steps_per_turn: t as usize,
        refinement: refine,
    })
}

/// Full twists of band `a`, of band `b`, and the signed crossing parameter `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandSurfaceSpec {
    pub ta: i64,
    pub tb: i64,
    pub c: i64,
}

/// A punctured torus built from a disk with two interleaved bands, together with
/// the cores `x` (through band a) and `y` (through band b).
#[derive(Clone, Debug)]
pub struct BandSurface {
    pub spec: BandSurfaceSpec,
    pub input: SeifertInput,
    pub refinement: u32,
}

impl BandSurface {
    /// `[[2 ta, 2c + 1], [2c + 1, 2 tb]]`
    pub fn predicted(&self) -> SymForm {
        let BandSurfaceSpec { ta, tb, c } = self.spec;
        SymForm::new(vec![vec![2 * ta, 2 * c + 1], vec![2 * c + 1, 2 * tb]]).expect("symmetric")
    }
}

/// Builds the band surface. The disk is a long strip along the x-axis whose
/// middle part (the neck) carries `c` full twists; both cores pass through the
/// neck, so each neck twist adds the same amount to every entry of the form.
/// The bands carry `ta - c` and `tb - c` twists, and band b crosses over band a once.
pub fn gen_band_surface(spec: BandSurfaceSpec) -> Result<BandSurface> {
    for r in 0..=MAX_REFINE {
        if let Some(input) = build_band_surface(spec, r)? {
            return Ok(BandSurface { spec, input, refinement: r });
        }
    }
    Err(Error::EmbeddingFailed(format!("band surface still self-intersects after {MAX_REFINE} refinements")))
}

fn build_band_surface(spec: BandSurfaceSpec, refine: u32) -> Result<Option<SeifertInput>> {
    let table = turn_table(refine);
    let t = table.len() as i64;
    let (tau_a, tau_b, c) = (spec.ta - spec.c, spec.tb - spec.c, spec.c);
    let neck = (t * c.abs()).max(2);
    let w = 16 + neck;
    let ha = (7 + t * tau_a.abs()).max(8);
    let hb = (ha + 5).max(7 + t * tau_b.abs());
    let unit = Rat::one();
    let one = Rat::one();
    let zero = Rat::zero();
    let twist = |sign: i64, steps: i64, span: i64| -> usize { (sign * steps.clamp(0, span)).rem_euclid(t) as usize };

    let mut mesh = Mesh::default();
    // the disk, sections at every integer x, points y = 4, …, 0
    let disk: Vec<Vec<Point>> = path_frames(&[[0, 2], [w, 2]], false)
        .iter()
        .map(|f| {
            let k = twist(c.signum() * NECK_SIGN, f.p[0] - 8, t * c.abs());
            section(f, &unit, 2, &one, &zero, &table[k])
        })
        .collect();
    let d = mesh.strip(disk, false);

    let band_a = path_frames(&[[2, 4], [2, ha], [10 + neck, ha], [10 + neck, 4]], false);
    let a_sections: Vec<Vec<Point>> = band_a
        .iter()
        .map(|f| {
            let k = if !f.corner && f.p[0] == 2 {
                twist(tau_a.signum() * TWIST_SIGN, f.p[1] - 5, t * tau_a.abs())
            } else {
                0
            };
            section(f, &unit, 1, &one, &zero, &table[k])
        })
        .collect();
    let a = mesh.strip(a_sections, false);

    let right_b = 14 + neck;
    let band_b = path_frames(&[[6, 4], [6, hb], [right_b, hb], [right_b, 4]], false);
    let lift = Rat::from_integer(BigInt::from(CROSSING_LIFT));
    let b_sections: Vec<Vec<Point>> = band_b
        .iter()
        .map(|f| {
            let on_left = !f.corner && f.p[0] == 6;
            let z = if on_left && (ha - 2..=ha + 2).contains(&f.p[1]) { lift.clone() } else { zero.clone() };
            // the step count grows with y, against the direction of travel on this leg
            let k = if !f.corner && f.p[0] == right_b {
                twist(-tau_b.signum() * TWIST_SIGN, f.p[1] - 5, t * tau_b.abs())
            } else {
                0
            };
            section(f, &unit, 1, &one, &z, &table[k])
        })
        .collect();
    let b = mesh.strip(b_sections, false);

    let embedded = mesh.finish()?;
    if !embedded.is_valid() {
        return Ok(None);
    }
    // disk vertex at grid point (x, y)
    let dv = |x: i64, y: i64| d[x as usize][(4 - y) as usize];
    let mut xs: Vec<usize> = vec![dv(2, 4), dv(2, 3)];
    xs.extend((2..=10 + neck).map(|x| dv(x, 2)));
    xs.push(dv(10 + neck, 3));
    xs.extend(a.iter().rev().map(|s| s[1]).take(a.len() - 1));
    let mut ys: Vec<usize> = (1..=4).rev().map(|y| dv(6, y)).collect();
    ys.extend((7..=right_b).map(|x| dv(x, 1)));
    ys.extend((2..=3).map(|y| dv(right_b, y)));
    ys.extend(b.iter().rev().map(|s| s[1]).take(b.len() - 1));
    let x = closed_path(Ring::Z, &xs)?;
    let y = closed_path(Ring::Z, &ys)?;

    let o = embedded
        .complex()
        .coherent_orientation()
        .ok_or_else(|| Error::InvalidComplex("band surface is not orientable".into()))?;
    let o = if SURFACE_SIDE > 0 { o } else { o.neg() };
    let field = match surface_normal_field(&embedded, &o) {
        Ok(f) => f,
        Err(_) => return Ok(None),
    };
    SeifertInput::new(embedded, field, vec![x, y]).map(Some)
}

/// Right-handed Hopf link: a triangle around the z-axis and a triangle in the
/// xz-plane threading it.
pub fn hopf_link() -> (GeoChain, GeoChain) {
    let poly = |pts: &[[i64; 3]]| {
        let mut g = GeoChain::zero(1);
        for i in 0..pts.len() {
            g.add_simplex(vec![rational::point(&pts[i]), rational::point(&pts[(i + 1) % pts.len()])], 1)
                .expect("distinct points");
        }
        g
    };
    (poly(&[[-2, -2, 0], [4, -2, 0], [-2, 4, 0]]), poly(&[[0, 0, -3], [0, 0, 3], [8, 0, 0]]))
}

/// A closed polygon with `n` random integer vertices in `[-r, r]³`; `None` when two
/// consecutive vertices coincide.
pub fn random_polygon<R: Rng>(rng: &mut R, n: usize, r: i64, offset: [i64; 3]) -> Option<GeoChain> {
    let pts: Vec<Point> = (0..n)
        .map(|_| rational::point(&[0, 1, 2].map(|k| rng.gen_range(-r..=r) + offset[k])))
        .collect();
    let mut g = GeoChain::zero(1);
    for i in 0..n {
        g.add_simplex(vec![pts[i].clone(), pts[(i + 1) % n].clone()], 1).ok()?;
    }
    g.is_cycle().then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::{crossing_oracle, lk, Link};
    use crate::seifert::seifert_terms;
    use rand::SeedableRng;

    #[test]
    fn turn_table_is_on_the_unit_circle() {
        for r in 0..3 {
            let t = turn_table(r);
            assert_eq!(t.len(), 8 << r);
            for (c, s) in &t {
                assert_eq!(c * c + s * s, Rat::one());
            }
            assert_eq!(t[2 << r], (Rat::zero(), Rat::one()));
        }
        assert_eq!(turn_table(0)[1], (rational::ratio(3, 5), rational::ratio(4, 5)));
    }

    #[test]
    fn frames_skip_samples_next_to_corners() {
        let f = path_frames(&[[0, 0], [0, 5], [5, 5]], false);
        let pts: Vec<[i64; 2]> = f.iter().map(|f| f.p).collect();
        assert_eq!(pts, vec![[0, 0], [0, 1], [0, 2], [0, 3], [0, 5], [2, 5], [3, 5], [4, 5], [5, 5]]);
        assert!(f[4].corner);
        assert_eq!(f[4].left, [-1, 1]);
        let closed = path_frames(&[[0, 0], [4, 0], [4, 4], [0, 4]], true);
        assert_eq!(closed.len(), 4 * 2);
    }

    #[test]
    fn ribbon_boundary_links_by_twists() {
        for l in [-2, 0, 1, 2] {
            let rb = gen_ribbon(&RibbonSpec::new(l)).unwrap();
            let (a, b) = rb.boundary_pair().unwrap();
            let link = Link::new(a.clone(), b.clone()).unwrap();
            assert_eq!(lk(&link, 7).unwrap(), l, "cone, l = {l}");
            assert_eq!(crossing_oracle(&a, &b, 7).unwrap(), l, "oracle, l = {l}");
            assert_eq!(rb.twist_degree().unwrap(), l);
        }
    }

    #[test]
    fn band_surface_calibration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for spec in [
            BandSurfaceSpec { ta: 0, tb: 0, c: 0 },
            BandSurfaceSpec { ta: 1, tb: 0, c: 0 },
            BandSurfaceSpec { ta: 0, tb: 1, c: 0 },
            BandSurfaceSpec { ta: 0, tb: 0, c: 1 },
            BandSurfaceSpec { ta: 0, tb: 0, c: -1 },
        ] {
            let s = gen_band_surface(spec).unwrap();
            let terms = seifert_terms(&s.input, &mut rng).unwrap();
            assert_eq!(terms.form.matrix, s.predicted().matrix, "{spec:?}: {terms:?}");
            if spec == (BandSurfaceSpec { ta: 0, tb: 0, c: 0 }) {
                assert_eq!(terms.backward[0][1], 1, "{terms:?}");
            }
        }
    }
}
