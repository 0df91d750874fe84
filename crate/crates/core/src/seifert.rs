//! The symmetric Seifert linking form of a punctured oriented surface in R³:
//! `L(X, Y) = lk(f(X), ξ(Y)) + lk(ξ(X), f(Y))`, where `ξ(Y)` is `Y` pushed off the
//! surface along a normal field.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{Chain, Ring, Simplex, SimplicialComplex};
use crate::embedding::{pushoff, EmbeddedComplex, GeoChain, NormalField};
use crate::error::{Error, Result};
use crate::generators::boundary_circle;
use crate::homology::{intersection_form_mod2, HomologyBasis};
use crate::linking::{lk_with, Link};
use crate::rational::{self, Rat};

/// A symmetric integer matrix over a named basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymForm {
    pub n: usize,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub basis_ref: String,
}

impl SymForm {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<SymForm> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("form matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotSymmetric(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(SymForm { n, matrix, basis_ref: String::new() })
    }

    pub fn zero(n: usize) -> SymForm {
        SymForm { n, matrix: vec![vec![0; n]; n], basis_ref: String::new() }
    }

    pub fn with_basis_ref(mut self, r: impl Into<String>) -> SymForm {
        self.basis_ref = r.into();
        self
    }

    /// Re-checks the invariants, e.g. after deserialization.
    pub fn validated(self) -> Result<SymForm> {
        let r = self.basis_ref.clone();
        let f = SymForm::new(self.matrix)?;
        if f.n != self.n {
            return Err(Error::DimensionMismatch(format!("declared rank {} but matrix has {} rows", self.n, f.n)));
        }
        Ok(f.with_basis_ref(r))
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn mod2(&self) -> Vec<Vec<u8>> {
        self.matrix.iter().map(|r| r.iter().map(|x| x.rem_euclid(2) as u8).collect()).collect()
    }

    pub fn sub(&self, other: &SymForm) -> Result<SymForm> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("forms of rank {} and {}", self.n, other.n)));
        }
        let m = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.matrix[i][j] - other.matrix[i][j]).collect())
            .collect();
        Ok(SymForm { n: self.n, matrix: m, basis_ref: self.basis_ref.clone() })
    }
}

/// A punctured oriented surface in R³ with a normal field and a basis of `H_1`
/// given by edge cycles.
#[derive(Clone, Debug)]
pub struct SeifertInput {
    pub embedded: EmbeddedComplex,
    /// coherent orientation for which `field` points to the positive side
    pub orientation: Chain,
    pub field: NormalField,
    pub basis: HomologyBasis,
}

impl SeifertInput {
    pub fn new(embedded: EmbeddedComplex, field: NormalField, cycles: Vec<Chain>) -> Result<SeifertInput> {
        let k = embedded.complex();
        k.check_surface(false)?;
        if boundary_circle(k).is_none() {
            return Err(Error::NotClosedSurface("the boundary must be a single circle".into()));
        }
        let o = k
            .coherent_orientation()
            .ok_or_else(|| Error::InvalidComplex("surface is not orientable".into()))?;
        let orientation = if field.validate(&embedded, &o).is_ok() { o } else { o.neg() };
        field.validate(&embedded, &orientation)?;
        let basis = HomologyBasis::from_cycles(k, Ring::Z, cycles)?;
        check_unimodular(k, &basis)?;
        Ok(SeifertInput { embedded, orientation, field, basis })
    }

    pub fn cycles(&self) -> &[Chain] {
        &self.basis.free_generators
    }

    pub fn rank(&self) -> usize {
        self.basis.free_generators.len()
    }

    pub fn with_field(&self, field: NormalField) -> Result<SeifertInput> {
        SeifertInput::new(self.embedded.clone(), field, self.cycles().to_vec())
    }

    pub fn with_cycles(&self, cycles: Vec<Chain>) -> Result<SeifertInput> {
        SeifertInput::new(self.embedded.clone(), self.field.clone(), cycles)
    }

    /// Image under `x -> m x + t`; the field is carried by the linear part.
    pub fn affine_image(&self, m: &[Vec<Rat>], t: &[Rat]) -> Result<SeifertInput> {
        let e = self.embedded.affine_image(m, t);
        SeifertInput::new(e, self.field.linear_image(m), self.cycles().to_vec())
    }

    /// Short digest identifying the basis cycles.
    pub fn basis_ref(&self) -> String {
        let mut h = Sha256::new();
        for c in self.cycles() {
            for (s, k) in c.terms() {
                h.update(format!("{:?}:{k};", s.vertices()).as_bytes());
            }
            h.update(b"|");
        }
        hex::encode(&h.finalize()[..8])
    }

    /// The closed surface obtained by coning off the boundary circle, with the
    /// basis cycles read mod 2 in it.
    pub fn closed_up(&self) -> Result<(SimplicialComplex, HomologyBasis)> {
        let k = self.embedded.complex();
        let circle = boundary_circle(k).ok_or_else(|| Error::NotClosedSurface("no single boundary circle".into()))?;
        let c = k.n_vertices();
        let mut tops: Vec<Vec<usize>> = k.simplices(2).iter().map(|t| t.vertices().to_vec()).collect();
        for i in 0..circle.len() {
            tops.push(vec![c, circle[i], circle[(i + 1) % circle.len()]]);
        }
        let closed = SimplicialComplex::from_maximal(c + 1, tops)?;
        let basis = HomologyBasis::from_cycles(&closed, Ring::Z2, self.cycles().to_vec())?;
        Ok((closed, basis))
    }
}

/// The cycles must be a basis of `H_1(F; Z)`, which is free for a punctured surface.
fn check_unimodular(k: &SimplicialComplex, basis: &HomologyBasis) -> Result<()> {
    let rows = graph_coordinates(k, &basis.free_generators)?;
    let n = rows.first().map_or(basis.free_generators.len(), Vec::len);
    if basis.free_generators.len() != n {
        return Err(Error::BasisMismatch(format!("{} cycles given, H_1 has rank {n}", basis.free_generators.len())));
    }
    let rows: Vec<Vec<Rat>> = rows.into_iter().map(|r| r.into_iter().map(rational::rat).collect()).collect();
    if n > 0 && rational::det(rows).abs() != Rat::from_integer(BigInt::from(1)) {
        return Err(Error::BasisMismatch("the cycles do not form a basis of H_1".into()));
    }
    Ok(())
}

/// Coordinates of 1-cycles of a connected surface with nonempty boundary in a
/// basis of `H_1`. The surface collapses onto a graph: walking a spanning tree of
/// the dual graph from the root outward, each triangle is pushed through the
/// edge towards its parent (the root through a boundary edge). Cycles are moved
/// onto the graph the same way, and the coefficients on the edges outside a
/// spanning tree of the graph are their coordinates.
fn graph_coordinates(k: &SimplicialComplex, cycles: &[Chain]) -> Result<Vec<Vec<i64>>> {
    let tris = k.simplices(2);
    let edges = k.simplices(1);
    let edge_index = |s: &Simplex| k.index_of(s).expect("face of the complex");
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (t, tri) in tris.iter().enumerate() {
        for (f, _) in tri.boundary_faces() {
            incident[edge_index(&f)].push(t);
        }
    }
    let root = (0..tris.len())
        .find(|&t| tris[t].boundary_faces().iter().any(|(f, _)| incident[edge_index(f)].len() == 1))
        .ok_or_else(|| Error::NotClosedSurface("the surface has no boundary".into()))?;
    let root_edge = tris[root]
        .boundary_faces()
        .into_iter()
        .map(|(f, _)| edge_index(&f))
        .find(|&e| incident[e].len() == 1)
        .expect("boundary edge");
    // BFS over the dual graph; `pushed[t]` is the edge triangle t is pushed through.
    let mut pushed = vec![usize::MAX; tris.len()];
    pushed[root] = root_edge;
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let t = order[head];
        head += 1;
        for (f, _) in tris[t].boundary_faces() {
            let e = edge_index(&f);
            for &u in &incident[e] {
                if pushed[u] == usize::MAX {
                    pushed[u] = e;
                    order.push(u);
                }
            }
        }
    }
    if order.len() != tris.len() {
        return Err(Error::InvalidComplex("the surface is not connected".into()));
    }
    let mut removed = vec![false; edges.len()];
    for &e in &pushed {
        removed[e] = true;
    }
    // spanning forest of the remaining graph by union-find; its complement indexes H_1
    let mut parent: Vec<usize> = (0..k.n_vertices()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut free_edges = Vec::new();
    for (e, edge) in edges.iter().enumerate() {
        if removed[e] {
            continue;
        }
        let v = edge.vertices();
        let (a, b) = (find(&mut parent, v[0]), find(&mut parent, v[1]));
        if a == b {
            free_edges.push(e);
        } else {
            parent[a] = b;
        }
    }
    cycles
        .iter()
        .map(|c| {
            k.check_chain(c)?;
            let mut coeff = vec![0i128; edges.len()];
            for (s, x) in c.terms() {
                coeff[edge_index(s)] += i128::from(x);
            }
            for &t in &order {
                let faces = tris[t].boundary_faces();
                let sign = faces.iter().find(|(f, _)| edge_index(f) == pushed[t]).expect("edge of t").1;
                let a = coeff[pushed[t]] * i128::from(sign);
                if a != 0 {
                    for (f, sf) in &faces {
                        coeff[edge_index(f)] -= a * i128::from(*sf);
                    }
                }
            }
            free_edges
                .iter()
                .map(|&e| i64::try_from(coeff[e]).map_err(|_| Error::Bounds("cycle coefficients overflow".into())))
                .collect()
        })
        .collect()
}

/// The form together with its individual linking terms.
#[derive(Clone, Debug, Serialize)]
pub struct SeifertTerms {
    pub form: SymForm,
    /// `forward[i][j] = lk(f(X_i), ξ(X_j))`
    pub forward: Vec<Vec<i64>>,
    /// `backward[i][j] = lk(ξ(X_i), f(X_j))`
    pub backward: Vec<Vec<i64>>,
    /// pushoff distance used for each basis cycle
    pub epsilons: Vec<String>,
}

pub fn seifert_terms<R: Rng>(input: &SeifertInput, rng: &mut R) -> Result<SeifertTerms> {
    let e = &input.embedded;
    let n = input.rank();
    let mut placed = Vec::with_capacity(n);
    let mut pushed = Vec::with_capacity(n);
    let mut epsilons = Vec::with_capacity(n);
    for c in input.cycles() {
        placed.push(GeoChain::from_chain(c, e.coords())?);
        let p = pushoff(e, c, &input.field)?;
        epsilons.push(rational::format_rat(&p.epsilon));
        pushed.push(p.cycle);
    }
    let mut forward = vec![vec![0; n]; n];
    let mut backward = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            forward[i][j] = lk_with(&Link::new(placed[i].clone(), pushed[j].clone())?, rng)?.value;
            backward[i][j] = if i == j {
                forward[i][i]
            } else {
                lk_with(&Link::new(pushed[i].clone(), placed[j].clone())?, rng)?.value
            };
        }
    }
    let matrix: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| forward[i][j] + backward[i][j]).collect()).collect();
    let form = SymForm::new(matrix)?.with_basis_ref(input.basis_ref());
    Ok(SeifertTerms { form, forward, backward, epsilons })
}

pub fn seifert_form<R: Rng>(input: &SeifertInput, rng: &mut R) -> Result<SymForm> {
    seifert_terms(input, rng).map(|t| t.form)
}

#[derive(Clone, Debug, Serialize)]
pub struct Mod2Report {
    pub pass: bool,
    pub form_mod2: Vec<Vec<u8>>,
    pub intersection: Vec<Vec<u8>>,
    pub mismatches: Vec<(usize, usize)>,
}

/// Compares `L mod 2` with the mod-2 intersection form of the closed surface `k`
/// in the corresponding basis.
pub fn mod2_check(l: &SymForm, k: &SimplicialComplex, basis: &HomologyBasis) -> Result<Mod2Report> {
    let rank = basis.free_generators.len() + basis.torsion.len();
    if rank != l.n {
        return Err(Error::BasisMismatch(format!("form of rank {} against a basis of {rank} cycles", l.n)));
    }
    let intersection = intersection_form_mod2(k, basis)?;
    let form_mod2 = l.mod2();
    let mismatches: Vec<(usize, usize)> = (0..l.n)
        .flat_map(|i| (0..l.n).map(move |j| (i, j)))
        .filter(|&(i, j)| form_mod2[i][j] != intersection[i][j])
        .collect();
    Ok(Mod2Report { pass: mismatches.is_empty(), form_mod2, intersection, mismatches })
}

pub fn mod2_check_input(input: &SeifertInput, l: &SymForm) -> Result<Mod2Report> {
    let (k, basis) = input.closed_up()?;
    mod2_check(l, &k, &basis)
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldIndependenceReport {
    pub pass: bool,
    pub base: SeifertTerms,
    pub opposite: SeifertTerms,
    pub perturbed: SeifertTerms,
    /// some individual lk term differs between the fields
    pub terms_changed: bool,
}

/// Recomputes the form with the opposite field and with a randomly perturbed field.
pub fn field_independence_check<R: Rng>(input: &SeifertInput, rng: &mut R) -> Result<FieldIndependenceReport> {
    let base = seifert_terms(input, rng)?;
    let opposite = seifert_terms(&input.with_field(input.field.negated())?, rng)?;
    let perturbed_input = perturbed(input, rng)?;
    let perturbed = seifert_terms(&perturbed_input, rng)?;
    let pass = base.form.matrix == opposite.form.matrix && base.form.matrix == perturbed.form.matrix;
    let terms_changed = [&opposite, &perturbed].iter().any(|t| t.forward != base.forward || t.backward != base.backward);
    Ok(FieldIndependenceReport { pass, base, opposite, perturbed, terms_changed })
}

/// `ξ + δ |ξ|∞ r` with a random integer direction `r` per vertex, shrinking `δ`
/// until the result is again a normal field.
pub fn perturbed<R: Rng>(input: &SeifertInput, rng: &mut R) -> Result<SeifertInput> {
    let mut delta = Rat::new(BigInt::from(1), BigInt::from(2));
    let noise: Vec<Vec<i64>> =
        input.field.vectors.iter().map(|_| (0..3).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    for _ in 0..16 {
        let vectors = input
            .field
            .vectors
            .iter()
            .zip(&noise)
            .map(|(v, r)| {
                let norm = v.iter().map(Signed::abs).max().unwrap_or_else(Rat::zero);
                let k = &delta * &norm;
                v.iter().zip(r).map(|(x, &ri)| x + &k * Rat::from_integer(BigInt::from(ri))).collect()
            })
            .collect();
        let field = NormalField { vectors };
        if field.validate(&input.embedded, &input.orientation).is_ok() {
            return input.with_field(field);
        }
        delta = delta / Rat::from_integer(BigInt::from(2));
    }
    Err(Error::InvalidField("no valid perturbation after 16 attempts".into()))
}

/// `X + ∂c` for a random 2-chain `c` supported on a few triangles.
pub fn homologous_replacement<R: Rng>(input: &SeifertInput, i: usize, rng: &mut R) -> Result<SeifertInput> {
    let k = input.embedded.complex();
    let tris = k.simplices(2);
    let mut c = Chain::zero(2, Ring::Z);
    for _ in 0..rng.gen_range(1..=4) {
        let t: &Simplex = &tris[rng.gen_range(0..tris.len())];
        c = c.add(&Chain::single(t.clone(), if rng.gen_bool(0.5) { 1 } else { -1 }, Ring::Z))?;
    }
    let mut cycles = input.cycles().to_vec();
    cycles[i] = cycles[i].add(&c.boundary())?;
    input.with_cycles(cycles)
}

/// A random orientation-preserving affine map with small rational entries.
pub fn random_affine<R: Rng>(rng: &mut R) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    loop {
        let m: Vec<Vec<Rat>> = (0..3)
            .map(|_| (0..3).map(|_| rational::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect())
            .collect();
        let d = rational::det(m.clone());
        if d.is_positive() {
            let t = (0..3).map(|_| rational::ratio(rng.gen_range(-20..=20), rng.gen_range(1..=4))).collect();
            return (m, t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_construction() {
        assert!(SymForm::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(matches!(SymForm::new(vec![vec![0, 1], vec![2, 0]]), Err(Error::NotSymmetric(_))));
        assert!(matches!(SymForm::new(vec![vec![0, 1]]), Err(Error::DimensionMismatch(_))));
        assert_eq!(SymForm::new(vec![vec![2, -1], vec![-1, 3]]).unwrap().mod2(), vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn mod2_examples_on_the_torus() {
        let t = crate::generators::standard_complex("torus7").unwrap();
        let b = crate::homology::homology(&t, 1, Ring::Z2);
        let i = intersection_form_mod2(&t, &b).unwrap();
        let as_form = SymForm::new(i.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()).unwrap();
        assert!(mod2_check(&as_form, &t, &b).unwrap().pass);
        let shifted = SymForm::new(
            as_form.matrix.iter().enumerate().map(|(r, row)| row.iter().enumerate().map(|(c, &x)| if r == c { x + 2 } else { x }).collect()).collect(),
        )
        .unwrap();
        assert!(mod2_check(&shifted, &t, &b).unwrap().pass);
        let mut odd = as_form.clone();
        odd.matrix[0][0] += 1;
        let rep = mod2_check(&odd, &t, &b).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.mismatches, vec![(0, 0)]);
        assert!(matches!(mod2_check(&SymForm::zero(3), &t, &b), Err(Error::BasisMismatch(_))));
    }
}
