//! Exact incidence predicates for points, segments and triangles in R³ with
//! integer coordinates. Generic over the integer type so that the same code runs
//! on `i128` (bounded inputs) and on `BigInt`.

use num_traits::Signed;

/// Integer scalar usable by the predicates.
pub trait Scalar: Clone + PartialOrd + Signed {}
impl<T: Clone + PartialOrd + Signed> Scalar for T {}

pub type V3<T> = [T; 3];

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> V3<T> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone(), a[2].clone() - b[2].clone()]
}

pub fn cross<T: Scalar>(u: &V3<T>, v: &V3<T>) -> V3<T> {
    [
        u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ]
}

pub fn dot<T: Scalar>(u: &V3<T>, v: &V3<T>) -> T {
    u[0].clone() * v[0].clone() + u[1].clone() * v[1].clone() + u[2].clone() * v[2].clone()
}

pub fn det3<T: Scalar>(u: &V3<T>, v: &V3<T>, w: &V3<T>) -> T {
    dot(u, &cross(v, w))
}

pub fn sign<T: Scalar>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `det[b - a, c - a, d - a]`.
pub fn orient<T: Scalar>(a: &[T], b: &[T], c: &[T], d: &[T]) -> i8 {
    sign(&det3(&sub(b, a), &sub(c, a), &sub(d, a)))
}

/// Coordinate axis to drop when projecting a planar configuration to 2D: an axis
/// along which the given nonzero normal has a nonzero component.
fn drop_axis<T: Scalar>(n: &V3<T>) -> usize {
    (0..3).find(|&k| !n[k].is_zero()).unwrap_or(2)
}

fn proj<T: Scalar>(p: &[T], axis: usize) -> [T; 2] {
    match axis {
        0 => [p[1].clone(), p[2].clone()],
        1 => [p[0].clone(), p[2].clone()],
        _ => [p[0].clone(), p[1].clone()],
    }
}

fn orient2<T: Scalar>(a: &[T; 2], b: &[T; 2], c: &[T; 2]) -> i8 {
    let u0 = b[0].clone() - a[0].clone();
    let u1 = b[1].clone() - a[1].clone();
    let v0 = c[0].clone() - a[0].clone();
    let v1 = c[1].clone() - a[1].clone();
    sign(&(u0 * v1 - u1 * v0))
}

fn in_box2<T: Scalar>(p: &[T; 2], a: &[T; 2], b: &[T; 2]) -> bool {
    (0..2).all(|k| {
        let (lo, hi) = if a[k] <= b[k] { (&a[k], &b[k]) } else { (&b[k], &a[k]) };
        *lo <= p[k] && p[k] <= *hi
    })
}

fn seg_seg_2d<T: Scalar>(a: &[T; 2], b: &[T; 2], c: &[T; 2], d: &[T; 2]) -> bool {
    let o1 = orient2(a, b, c);
    let o2 = orient2(a, b, d);
    let o3 = orient2(c, d, a);
    let o4 = orient2(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && in_box2(c, a, b))
        || (o2 == 0 && in_box2(d, a, b))
        || (o3 == 0 && in_box2(a, c, d))
        || (o4 == 0 && in_box2(b, c, d))
}

fn point_in_tri_2d<T: Scalar>(p: &[T; 2], a: &[T; 2], b: &[T; 2], c: &[T; 2]) -> bool {
    let s1 = orient2(a, b, p);
    let s2 = orient2(b, c, p);
    let s3 = orient2(c, a, p);
    !((s1 < 0 || s2 < 0 || s3 < 0) && (s1 > 0 || s2 > 0 || s3 > 0))
}

/// Projection axis for points spanning at most a plane: uses the normal of the
/// first non-collinear triple, or for collinear points an axis transverse to the line.
fn planar_axis<T: Scalar>(pts: &[&[T]]) -> usize {
    let o = pts[0];
    for i in 1..pts.len() {
        for j in i + 1..pts.len() {
            let n = cross(&sub(pts[i], o), &sub(pts[j], o));
            if n.iter().any(|x| !x.is_zero()) {
                return drop_axis(&n);
            }
        }
    }
    // collinear: drop an axis along which the line is not the only variation
    let dir = pts.iter().skip(1).map(|p| sub(*p, o)).find(|d| d.iter().any(|x| !x.is_zero()));
    match dir {
        // dropping axis k keeps the projection injective on the line unless the line is parallel to e_k
        Some(d) => (0..3).find(|&k| d.iter().enumerate().any(|(i, x)| i != k && !x.is_zero())).unwrap_or(2),
        None => 2,
    }
}

pub fn points_equal<T: Scalar>(a: &[T], b: &[T]) -> bool {
    a.iter().zip(b).all(|(x, y)| x == y)
}

/// `p` on the closed segment `[a, b]`.
pub fn point_on_segment<T: Scalar>(p: &[T], a: &[T], b: &[T]) -> bool {
    let u = sub(b, a);
    let w = sub(p, a);
    if cross(&u, &w).iter().any(|x| !x.is_zero()) {
        return false;
    }
    let t = dot(&u, &w);
    !t.is_negative() && t <= dot(&u, &u)
}

/// `p` in the closed triangle `abc` (nondegenerate).
pub fn point_in_triangle<T: Scalar>(p: &[T], a: &[T], b: &[T], c: &[T]) -> bool {
    if orient(a, b, c, p) != 0 {
        return false;
    }
    let axis = drop_axis(&cross(&sub(b, a), &sub(c, a)));
    point_in_tri_2d(&proj(p, axis), &proj(a, axis), &proj(b, axis), &proj(c, axis))
}

/// Closed segments `[a, b]` and `[c, d]` intersect.
pub fn segments_intersect<T: Scalar>(a: &[T], b: &[T], c: &[T], d: &[T]) -> bool {
    if orient(a, b, c, d) != 0 {
        return false;
    }
    let axis = planar_axis(&[a, b, c, d]);
    seg_seg_2d(&proj(a, axis), &proj(b, axis), &proj(c, axis), &proj(d, axis))
}

/// Closed segment `[p, q]` meets the closed triangle `abc` (nondegenerate).
pub fn segment_meets_triangle<T: Scalar>(p: &[T], q: &[T], a: &[T], b: &[T], c: &[T]) -> bool {
    let s1 = orient(a, b, c, p);
    let s2 = orient(a, b, c, q);
    if s1 * s2 > 0 {
        return false;
    }
    if s1 == 0 && s2 == 0 {
        let axis = drop_axis(&cross(&sub(b, a), &sub(c, a)));
        let (p2, q2) = (proj(p, axis), proj(q, axis));
        let (a2, b2, c2) = (proj(a, axis), proj(b, axis), proj(c, axis));
        return point_in_tri_2d(&p2, &a2, &b2, &c2)
            || point_in_tri_2d(&q2, &a2, &b2, &c2)
            || seg_seg_2d(&p2, &q2, &a2, &b2)
            || seg_seg_2d(&p2, &q2, &b2, &c2)
            || seg_seg_2d(&p2, &q2, &c2, &a2);
    }
    // the line pq crosses the plane in one point, which lies on the closed segment;
    // it is in the triangle iff the line passes the three edges consistently
    let e1 = orient(p, q, a, b);
    let e2 = orient(p, q, b, c);
    let e3 = orient(p, q, c, a);
    !((e1 < 0 || e2 < 0 || e3 < 0) && (e1 > 0 || e2 > 0 || e3 > 0))
}

/// Closed triangles meet (both nondegenerate).
pub fn triangles_intersect<T: Scalar>(t: [&[T]; 3], s: [&[T]; 3]) -> bool {
    (0..3).any(|i| segment_meets_triangle(t[i], t[(i + 1) % 3], s[0], s[1], s[2]))
        || (0..3).any(|i| segment_meets_triangle(s[i], s[(i + 1) % 3], t[0], t[1], t[2]))
}

/// With `v` a common vertex, the closed segment `[v, a]` and closed triangle `vcd`
/// meet in more than `v`.
pub fn segment_enters_triangle_at<T: Scalar>(v: &[T], a: &[T], c: &[T], d: &[T]) -> bool {
    if orient(v, c, d, a) != 0 {
        return false;
    }
    let n = cross(&sub(c, v), &sub(d, v));
    let axis = drop_axis(&n);
    let (v2, a2, c2, d2) = (proj(v, axis), proj(a, axis), proj(c, axis), proj(d, axis));
    // a - v in the closed cone spanned by c - v and d - v
    let s = orient2(&v2, &c2, &d2);
    let o1 = orient2(&v2, &c2, &a2);
    let o2 = orient2(&v2, &a2, &d2);
    if o1 * s < 0 || o2 * s < 0 {
        return false;
    }
    if o1 == 0 {
        // along the ray v -> c?
        let u = sub(c, v);
        return dot(&u, &sub(a, v)).is_positive();
    }
    if o2 == 0 {
        let u = sub(d, v);
        return dot(&u, &sub(a, v)).is_positive();
    }
    true
}

/// Segments `[v, a]` and `[v, b]` overlap beyond their common endpoint `v`.
pub fn segments_overlap_at<T: Scalar>(v: &[T], a: &[T], b: &[T]) -> bool {
    let u = sub(a, v);
    let w = sub(b, v);
    cross(&u, &w).iter().all(|x| x.is_zero()) && dot(&u, &w).is_positive()
}

/// Triangles `vwa` and `vwb` sharing the edge `vw` overlap beyond it.
pub fn triangles_fold_at_edge<T: Scalar>(v: &[T], w: &[T], a: &[T], b: &[T]) -> bool {
    if orient(v, w, a, b) != 0 {
        return false;
    }
    // same side of the line vw inside the common plane
    let axis = drop_axis(&cross(&sub(w, v), &sub(a, v)));
    let (v2, w2) = (proj(v, axis), proj(w, axis));
    orient2(&v2, &w2, &proj(a, axis)) * orient2(&v2, &w2, &proj(b, axis)) > 0
}
