//! Builders of standard triangulations and of exactly embedded test surfaces.

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

mod surfaces;

pub use surfaces::{
    gen_band_surface, gen_ribbon, hopf_link, random_polygon, turn_table, BandSurface, BandSurfaceSpec, Ribbon,
    RibbonSpec,
};

/// Names accepted by [`standard_complex`].
pub const STANDARD_NAMES: &[&str] = &[
    "torus7",
    "rp2_6",
    "klein8",
    "sphere_0",
    "sphere_1",
    "sphere_2",
    "sphere_3",
    "sphere_4",
    "disk",
    "annulus",
    "punctured_torus",
];

/// A named standard triangulation.
pub fn standard_complex(name: &str) -> Result<SimplicialComplex> {
    let tris = |n: usize, t: &[[usize; 3]]| {
        SimplicialComplex::from_maximal(n, t.iter().map(|x| x.to_vec()))
    };
    match name {
        "torus7" => tris(7, &torus7_triangles()),
        "punctured_torus" => tris(7, &torus7_triangles()[1..]),
        "rp2_6" => tris(
            6,
            &[
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 5],
                [0, 5, 1],
                [1, 2, 4],
                [2, 3, 5],
                [3, 4, 1],
                [4, 5, 2],
                [5, 1, 3],
            ],
        ),
        "klein8" => tris(
            8,
            &[
                [0, 1, 5],
                [0, 1, 6],
                [0, 2, 6],
                [0, 2, 7],
                [0, 3, 4],
                [0, 3, 7],
                [0, 4, 5],
                [1, 2, 5],
                [1, 2, 7],
                [1, 3, 4],
                [1, 3, 6],
                [1, 4, 7],
                [2, 5, 6],
                [3, 5, 6],
                [3, 5, 7],
                [4, 5, 7],
            ],
        ),
        "disk" => tris(7, &[[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 6], [0, 1, 6]]),
        "annulus" => tris(6, &[[0, 1, 3], [1, 3, 4], [1, 2, 4], [2, 4, 5], [0, 2, 5], [0, 3, 5]]),
        _ => {
            let k = name
                .strip_prefix("sphere_")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k <= 4)
                .ok_or_else(|| Error::UnknownName(format!("no standard complex named '{name}'")))?;
            sphere(k)
        }
    }
}

fn torus7_triangles() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..7 {
        out.push([i, (i + 1) % 7, (i + 3) % 7]);
        out.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    out
}

/// Boundary of the `(k+1)`-simplex.
fn sphere(k: usize) -> Result<SimplicialComplex> {
    let full: Vec<usize> = (0..k + 2).collect();
    let tops = (0..k + 2).map(|skip| full.iter().copied().filter(|&v| v != skip).collect::<Vec<_>>());
    SimplicialComplex::from_maximal(k + 2, tops)
}

/// Boundary edges of a surface arranged as a closed vertex path, if they form a single circle.
pub fn boundary_circle(k: &SimplicialComplex) -> Option<Vec<usize>> {
    let edges = k.boundary_edges();
    circle_order(&edges)
}

/// Orders the edges of a single closed circle into a cyclic vertex sequence.
pub fn circle_order(edges: &[Simplex]) -> Option<Vec<usize>> {
    let first = edges.first()?;
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for e in edges {
        let v = e.vertices();
        adj.entry(v[0]).or_default().push(v[1]);
        adj.entry(v[1]).or_default().push(v[0]);
    }
    if adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = first.vertices()[0];
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = first.vertices()[1];
    while cur != start {
        order.push(cur);
        let n = &adj[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
        if order.len() > edges.len() {
            return None;
        }
    }
    (order.len() == edges.len()).then_some(order)
}
