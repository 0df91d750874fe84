//! Abstract simplicial complexes, oriented simplices and integer / mod-2 chains.
//!
//! A simplex is stored as its strictly ascending vertex list; that order is its
//! canonical orientation. Reversed orientations live in chain coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simplex given by strictly ascending vertex indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from vertices in any order, returning it with the sign of
    /// the sorting permutation. Repeated vertices yield `None`.
    pub fn from_oriented(mut vertices: Vec<usize>) -> Option<(Simplex, i64)> {
        let mut sign = 1;
        // insertion sort keeps track of the permutation parity
        for i in 1..vertices.len() {
            let mut j = i;
            while j > 0 && vertices[j - 1] > vertices[j] {
                vertices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex(vertices), sign))
    }

    /// Builds a simplex from sorted, distinct vertices.
    pub fn new(vertices: Vec<usize>) -> Result<Simplex> {
        if vertices.is_empty() {
            return Err(Error::InvalidComplex("empty simplex".into()));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidComplex(format!(
                "simplex {vertices:?} is not strictly ascending"
            )));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: usize) -> Simplex {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces with their boundary signs, in the order `i = 0..=dim`.
    pub fn boundary_faces(&self) -> Vec<(Simplex, i64)> {
        if self.0.len() <= 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut f = self.0.clone();
                f.remove(i);
                (Simplex(f), if i % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// All nonempty faces including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    /// Vertices shared with `other`, ascending.
    pub fn shared_vertices(&self, other: &Simplex) -> Vec<usize> {
        self.0.iter().copied().filter(|v| other.0.binary_search(v).is_ok()).collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Coefficient ring of chains and homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "z2")]
    Z2,
}

impl Ring {
    fn normalize(self, c: i64) -> i64 {
        match self {
            Ring::Z => c,
            Ring::Z2 => c.rem_euclid(2),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Ring::Z),
            "z2" => Ok(Ring::Z2),
            other => Err(Error::Parse(format!("unknown ring '{other}' (expected z or z2)"))),
        }
    }
}

/// A formal combination of oriented simplices of one dimension, in canonical sparse form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    ring: Ring,
    terms: BTreeMap<Simplex, i64>,
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain{}{:?}", self.dim, self.terms)
    }
}

impl Chain {
    pub fn zero(dim: usize, ring: Ring) -> Chain {
        Chain { dim, ring, terms: BTreeMap::new() }
    }

    /// Sums the given terms; vertex lists may be in any order (orientation is
    /// folded into the sign). Degenerate vertex lists are rejected.
    pub fn from_terms<I>(dim: usize, ring: Ring, terms: I) -> Result<Chain>
    where
        I: IntoIterator<Item = (Vec<usize>, i64)>,
    {
        let mut chain = Chain::zero(dim, ring);
        for (verts, c) in terms {
            if verts.len() != dim + 1 {
                return Err(Error::InvalidChain(format!(
                    "simplex {verts:?} does not have dimension {dim}"
                )));
            }
            let (s, sign) = Simplex::from_oriented(verts.clone())
                .ok_or_else(|| Error::InvalidChain(format!("degenerate simplex {verts:?}")))?;
            chain.add_term(s, sign * c);
        }
        Ok(chain)
    }

    pub fn single(s: Simplex, coeff: i64, ring: Ring) -> Chain {
        let mut c = Chain::zero(s.dim(), ring);
        c.add_term(s, coeff);
        c
    }

    fn add_term(&mut self, s: Simplex, c: i64) {
        debug_assert_eq!(s.dim(), self.dim);
        let ring = self.ring;
        let entry = self.terms.entry(s.clone()).or_insert(0);
        *entry = ring.normalize(*entry + c);
        if *entry == 0 {
            self.terms.remove(&s);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, i64)> + '_ {
        self.terms.iter().map(|(s, c)| (s, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &Simplex) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    /// Vertices touched by the chain, ascending.
    pub fn support_vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> =
            self.terms.keys().flat_map(|s| s.vertices().iter().copied()).collect();
        set.into_iter().collect()
    }

    fn check_compatible(&self, other: &Chain) -> Result<()> {
        if self.dim != other.dim || self.ring != other.ring {
            return Err(Error::InvalidChain(format!(
                "cannot combine a {:?} {}-chain with a {:?} {}-chain",
                self.ring, self.dim, other.ring, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Chain {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Chain {
        let mut out = Chain::zero(self.dim, self.ring);
        for (s, c) in self.terms() {
            out.add_term(s.clone(), c * k);
        }
        out
    }

    /// Same simplices with coefficients reduced mod 2.
    pub fn to_z2(&self) -> Chain {
        let mut out = Chain::zero(self.dim, Ring::Z2);
        for (s, c) in self.terms() {
            out.add_term(s.clone(), c);
        }
        out
    }

    /// Simplicial boundary with the alternating face rule. The boundary of a
    /// 0-chain is the zero 0-chain (no augmentation).
    pub fn boundary(&self) -> Chain {
        if self.dim == 0 {
            return Chain::zero(0, self.ring);
        }
        let mut out = Chain::zero(self.dim - 1, self.ring);
        for (s, c) in self.terms() {
            for (f, sign) in s.boundary_faces() {
                out.add_term(f, sign * c);
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.dim == 0 || self.boundary().is_zero()
    }

    /// Relabels vertices through `map`, dropping terms that become degenerate.
    pub fn map_vertices(&self, map: impl Fn(usize) -> usize) -> Chain {
        let mut out = Chain::zero(self.dim, self.ring);
        for (s, c) in self.terms() {
            if let Some((t, sign)) =
                Simplex::from_oriented(s.vertices().iter().map(|&v| map(v)).collect())
            {
                out.add_term(t, sign * c);
            }
        }
        out
    }
}

/// A finite abstract simplicial complex with vertex labels in `0..n_vertices`.
/// Complexes built with [`SimplicialComplex::from_maximal`] use every label;
/// subcomplexes keep the parent's label space.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.simplices == other.simplices
    }
}

impl SimplicialComplex {
    /// Builds a complex from an explicit per-dimension listing; every face of every
    /// simplex must be listed and no simplex may repeat.
    pub fn new(n_vertices: usize, by_dim: Vec<Vec<Simplex>>) -> Result<SimplicialComplex> {
        let mut index: Vec<HashMap<Simplex, usize>> = Vec::with_capacity(by_dim.len());
        for (d, list) in by_dim.iter().enumerate() {
            let mut map = HashMap::with_capacity(list.len());
            for (i, s) in list.iter().enumerate() {
                if s.dim() != d {
                    return Err(Error::InvalidComplex(format!(
                        "simplex {s:?} listed in dimension {d}"
                    )));
                }
                if let Some(&v) = s.vertices().last() {
                    if v >= n_vertices {
                        return Err(Error::InvalidComplex(format!(
                            "vertex {v} out of range (n = {n_vertices})"
                        )));
                    }
                }
                if map.insert(s.clone(), i).is_some() {
                    return Err(Error::InvalidComplex(format!("duplicate simplex {s:?}")));
                }
            }
            index.push(map);
        }
        let mut by_dim = by_dim;
        while by_dim.last().is_some_and(|l| l.is_empty()) && by_dim.len() > 1 {
            by_dim.pop();
            index.pop();
        }
        let k = SimplicialComplex { n_vertices, simplices: by_dim, index };
        for d in 1..k.simplices.len() {
            for s in &k.simplices[d] {
                for (f, _) in s.boundary_faces() {
                    if !k.contains(&f) {
                        return Err(Error::InvalidComplex(format!(
                            "face {f:?} of {s:?} is missing"
                        )));
                    }
                }
            }
        }
        Ok(k)
    }

    /// Downward closure of the given simplices (vertex lists in any order).
    /// Simplices are ordered lexicographically within each dimension.
    pub fn from_maximal<I, V>(n_vertices: usize, tops: I) -> Result<SimplicialComplex>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<usize>>,
    {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        sets.push((0..n_vertices).map(Simplex::vertex).collect());
        for t in tops {
            let verts: Vec<usize> = t.into();
            let (s, _) = Simplex::from_oriented(verts.clone())
                .ok_or_else(|| Error::InvalidComplex(format!("degenerate simplex {verts:?}")))?;
            for f in s.all_faces() {
                let d = f.dim();
                while sets.len() <= d {
                    sets.push(BTreeSet::new());
                }
                sets[d].insert(f);
            }
        }
        SimplicialComplex::new(n_vertices, sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn n_simplices(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Every simplex of every dimension, lowest dimension first.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().flatten()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Checks that every simplex of `chain` belongs to this complex.
    pub fn check_chain(&self, chain: &Chain) -> Result<()> {
        for (s, _) in chain.terms() {
            if !self.contains(s) {
                return Err(Error::InvalidChain(format!("simplex {s:?} is not in the complex")));
            }
        }
        Ok(())
    }

    /// True iff every simplex of `sub` is a simplex of `self` and `sub` is closed under faces.
    pub fn is_subcomplex(&self, sub: &SimplicialComplex) -> bool {
        sub.n_vertices <= self.n_vertices && sub.all_simplices().all(|s| self.contains(s))
    }

    /// Sum of all top simplices with coefficient 1 (a cycle only mod 2 in general).
    pub fn sum_of_top(&self, ring: Ring) -> Chain {
        let d = self.dim();
        let mut c = Chain::zero(d, ring);
        for s in self.simplices(d) {
            c.add_term(s.clone(), 1);
        }
        c
    }

    /// Number of `d+1`-simplices containing each `d`-simplex.
    pub fn cofaces_count(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; self.n_simplices(d)];
        for s in self.simplices(d + 1) {
            for (f, _) in s.boundary_faces() {
                counts[self.index_of(&f).expect("closed under faces")] += 1;
            }
        }
        counts
    }

    /// Top-dimensional simplices incident to each vertex.
    pub fn vertex_stars(&self, d: usize) -> Vec<Vec<usize>> {
        let mut stars = vec![Vec::new(); self.n_vertices];
        for (i, s) in self.simplices(d).iter().enumerate() {
            for &v in s.vertices() {
                stars[v].push(i);
            }
        }
        stars
    }

    /// Subcomplex generated by the given simplices of this complex (same vertex labels).
    pub fn subcomplex(&self, gens: &[Simplex]) -> Result<SimplicialComplex> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::NotSubcomplex(format!("{g:?} is not a simplex of the complex")));
            }
        }
        let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); self.simplices.len().max(1)];
        for g in gens {
            for f in g.all_faces() {
                sets[f.dim()].insert(f);
            }
        }
        // the vertex label space is shared with the parent complex
        SimplicialComplex::new(
            self.n_vertices,
            sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        )
    }

    /// Barycentric subdivision. Vertex `i` of the result is the barycenter of
    /// `Subdivision::barycenter_of[i]`.
    pub fn subdivide(&self) -> (SimplicialComplex, Subdivision) {
        let mut barycenter_of = Vec::new();
        let mut offset = Vec::new();
        for d in 0..self.simplices.len() {
            offset.push(barycenter_of.len());
            barycenter_of.extend(self.simplices[d].iter().cloned());
        }
        let mut tops: Vec<Vec<usize>> = Vec::new();
        // flags of faces σ0 < σ1 < ... < σk, one per maximal chain through each simplex
        for d in 0..self.simplices.len() {
            for s in &self.simplices[d] {
                let mut flags: Vec<Vec<Simplex>> = vec![vec![s.clone()]];
                for _ in 0..d {
                    let mut next = Vec::new();
                    for flag in flags {
                        let last = flag.last().expect("nonempty").clone();
                        for (f, _) in last.boundary_faces() {
                            let mut nf = flag.clone();
                            nf.push(f);
                            next.push(nf);
                        }
                    }
                    flags = next;
                }
                for flag in flags {
                    tops.push(
                        flag.iter()
                            .map(|f| offset[f.dim()] + self.index_of(f).expect("face present"))
                            .collect(),
                    );
                }
            }
        }
        let sd = SimplicialComplex::from_maximal(barycenter_of.len(), tops)
            .expect("barycentric subdivision is a simplicial complex");
        (sd, Subdivision { barycenter_of, offset, source: self.clone() })
    }
}

/// Surface-specific queries on 2-dimensional complexes.
impl SimplicialComplex {
    /// Edges lying in exactly one triangle.
    pub fn boundary_edges(&self) -> Vec<Simplex> {
        let counts = self.cofaces_count(1);
        self.simplices(1)
            .iter()
            .zip(counts)
            .filter(|(_, c)| *c == 1)
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Checks that the complex is a surface, possibly with boundary: pure of
    /// dimension 2, every edge in one or two triangles, and every vertex link a
    /// single path or cycle. With `closed`, boundary edges are rejected.
    pub fn check_surface(&self, closed: bool) -> Result<()> {
        let fail = |m: String| Err(Error::NotClosedSurface(m));
        if self.dim() != 2 {
            return fail(format!("dimension {} != 2", self.dim()));
        }
        for (e, c) in self.simplices(1).iter().zip(self.cofaces_count(1)) {
            if c == 0 || c > 2 || (closed && c != 2) {
                return fail(format!("edge {e:?} lies in {c} triangles"));
            }
        }
        let stars = self.vertex_stars(2);
        for v in self.simplices(0).iter().map(|s| s.vertices()[0]) {
            let link: Vec<(usize, usize)> = stars[v]
                .iter()
                .map(|&t| {
                    let o: Vec<usize> =
                        self.simplices(2)[t].vertices().iter().copied().filter(|&w| w != v).collect();
                    (o[0], o[1])
                })
                .collect();
            if link.is_empty() {
                return fail(format!("vertex {v} lies in no triangle"));
            }
            let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
            for &(a, b) in &link {
                *deg.entry(a).or_default() += 1;
                *deg.entry(b).or_default() += 1;
            }
            let ends = deg.values().filter(|&&d| d == 1).count();
            if closed && ends != 0 || ends > 2 || deg.values().any(|&d| d > 2) {
                return fail(format!("link of vertex {v} is not a circle or arc"));
            }
            // connectivity of the link graph
            let mut seen = BTreeSet::new();
            let mut stack = vec![link[0].0];
            while let Some(x) = stack.pop() {
                if !seen.insert(x) {
                    continue;
                }
                for &(a, b) in &link {
                    if a == x {
                        stack.push(b);
                    } else if b == x {
                        stack.push(a);
                    }
                }
            }
            if seen.len() != deg.len() {
                return fail(format!("link of vertex {v} is disconnected"));
            }
        }
        Ok(())
    }

    /// A coherent orientation of a 2-dimensional pseudo-surface as a 2-chain with
    /// coefficients +-1, fixing the first triangle of each component positively.
    /// Returns `None` if the complex is not orientable.
    pub fn coherent_orientation(&self) -> Option<Chain> {
        let tris = self.simplices(2);
        let mut edge_tris: HashMap<&Simplex, Vec<usize>> = HashMap::new();
        let faces: Vec<Vec<(Simplex, i64)>> = tris.iter().map(Simplex::boundary_faces).collect();
        for (t, fs) in faces.iter().enumerate() {
            for (e, _) in fs {
                edge_tris.entry(e).or_default().push(t);
            }
        }
        let mut sign = vec![0i64; tris.len()];
        for start in 0..tris.len() {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for (e, es) in &faces[t] {
                    for &u in &edge_tris[e] {
                        if u == t {
                            continue;
                        }
                        let eu = faces[u].iter().find(|(f, _)| f == e).expect("shared edge").1;
                        // induced orientations on a shared edge must cancel
                        let want = -sign[t] * es * eu;
                        if sign[u] == 0 {
                            sign[u] = want;
                            stack.push(u);
                        } else if sign[u] != want {
                            return None;
                        }
                    }
                }
            }
        }
        let mut c = Chain::zero(2, Ring::Z);
        for (t, s) in tris.iter().zip(sign) {
            c.add_term(t.clone(), s);
        }
        Some(c)
    }
}

/// Barycentric subdivision data: vertex provenance and the subdivision chain map.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub barycenter_of: Vec<Simplex>,
    offset: Vec<usize>,
    source: SimplicialComplex,
}

impl Subdivision {
    pub fn barycenter_vertex(&self, s: &Simplex) -> Option<usize> {
        Some(self.offset[s.dim()] + self.source.index_of(s)?)
    }

    /// The subdivision chain map: `sd(v) = v`, `sd(σ) = b_σ * sd(∂σ)`.
    pub fn carry(&self, chain: &Chain) -> Result<Chain> {
        self.source.check_chain(chain)?;
        let mut out = Chain::zero(chain.dim(), chain.ring());
        for (s, c) in chain.terms() {
            for (verts, sign) in self.carry_simplex(s) {
                let (t, p) = Simplex::from_oriented(verts).expect("flag simplices are nondegenerate");
                out.add_term(t, p * sign * c);
            }
        }
        Ok(out)
    }

    fn carry_simplex(&self, s: &Simplex) -> Vec<(Vec<usize>, i64)> {
        let b = self.barycenter_vertex(s).expect("simplex of source complex");
        if s.dim() == 0 {
            return vec![(vec![b], 1)];
        }
        let mut out = Vec::new();
        for (f, sign) in s.boundary_faces() {
            for (verts, c) in self.carry_simplex(&f) {
                let mut v = Vec::with_capacity(verts.len() + 1);
                v.push(b);
                v.extend(verts);
                out.push((v, sign * c));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(v: [usize; 3]) -> Chain {
        Chain::from_terms(2, Ring::Z, [(v.to_vec(), 1)]).unwrap()
    }

    #[test]
    fn boundary_of_triangle() {
        let b = tri([0, 1, 2]).boundary();
        let expected =
            Chain::from_terms(1, Ring::Z, [(vec![1, 2], 1), (vec![0, 2], -1), (vec![0, 1], 1)]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn boundary_twice_is_zero_on_tetrahedron() {
        let c = Chain::from_terms(3, Ring::Z, [(vec![0, 1, 2, 3], 1)]).unwrap();
        assert!(c.boundary().boundary().is_zero());
    }

    #[test]
    fn zero_dim_boundary_is_zero() {
        let c = Chain::from_terms(0, Ring::Z, [(vec![3], 5)]).unwrap();
        assert!(c.boundary().is_zero());
        assert!(c.is_cycle());
    }

    #[test]
    fn from_oriented_sign() {
        assert_eq!(Simplex::from_oriented(vec![2, 0, 1]).unwrap().1, 1);
        assert_eq!(Simplex::from_oriented(vec![1, 0, 2]).unwrap().1, -1);
        assert!(Simplex::from_oriented(vec![1, 1]).is_none());
    }

    #[test]
    fn z2_coefficients_reduce() {
        let c = Chain::from_terms(1, Ring::Z2, [(vec![0, 1], 3), (vec![1, 2], 2)]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.coefficient(&Simplex::new(vec![0, 1]).unwrap()), 1);
    }

    #[test]
    fn cycle_checks() {
        let circle =
            Chain::from_terms(1, Ring::Z, [(vec![0, 1], 1), (vec![1, 2], 1), (vec![2, 0], 1)]).unwrap();
        assert!(circle.is_cycle());
        let edge = Chain::from_terms(1, Ring::Z, [(vec![0, 1], 1)]).unwrap();
        assert!(!edge.is_cycle());
    }

    #[test]
    fn missing_face_rejected() {
        let r = SimplicialComplex::new(
            3,
            vec![
                (0..3).map(Simplex::vertex).collect(),
                vec![Simplex::new(vec![0, 1]).unwrap()],
                vec![Simplex::new(vec![0, 1, 2]).unwrap()],
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn duplicate_rejected() {
        let r = SimplicialComplex::new(
            2,
            vec![
                (0..2).map(Simplex::vertex).collect(),
                vec![Simplex::new(vec![0, 1]).unwrap(), Simplex::new(vec![0, 1]).unwrap()],
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn orientation_of_tetrahedron_boundary_is_a_cycle() {
        let k = SimplicialComplex::from_maximal(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].map(Vec::from))
            .unwrap();
        k.check_surface(true).unwrap();
        let o = k.coherent_orientation().unwrap();
        assert!(o.is_cycle());
        assert_eq!(o.len(), 4);
    }

    #[test]
    fn disk_has_boundary() {
        let k = SimplicialComplex::from_maximal(4, [vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
        k.check_surface(false).unwrap();
        assert!(k.check_surface(true).is_err());
        assert_eq!(k.boundary_edges().len(), 4);
    }

    #[test]
    fn subdivide_triangle_counts() {
        let k = SimplicialComplex::from_maximal(3, [vec![0, 1, 2]]).unwrap();
        let (sd, _) = k.subdivide();
        assert_eq!(sd.n_vertices(), 7);
        assert_eq!(sd.n_simplices(2), 6);
        assert_eq!(sd.euler_characteristic(), 1);
    }

    #[test]
    fn carrier_of_cycle_is_cycle_and_commutes_with_boundary() {
        let k = SimplicialComplex::from_maximal(4, [vec![0, 1, 2, 3]]).unwrap();
        let (_, sub) = k.subdivide();
        let c = Chain::from_terms(3, Ring::Z, [(vec![0, 1, 2, 3], 1)]).unwrap();
        let lhs = sub.carry(&c).unwrap().boundary();
        let rhs = sub.carry(&c.boundary()).unwrap();
        assert_eq!(lhs, rhs);
        let loop_ =
            Chain::from_terms(1, Ring::Z, [(vec![0, 1], 1), (vec![1, 2], 1), (vec![2, 0], 1)]).unwrap();
        assert!(sub.carry(&loop_).unwrap().is_cycle());
    }
}
