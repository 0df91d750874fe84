//! Simplicial homology over Z and Z/2 through Smith normal forms, relative
//! homology, and the mod-2 intersection form of a closed surface computed from
//! Alexander–Whitney cup products of dual cocycles.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::complex::{Chain, Ring, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::{self, BitRow, Echelon};
use crate::snf::{self, Gf2, Matrix, Pid};

/// Generators of `H_d(K)` or `H_d(K, L)`: free generator cycles followed by
/// torsion generators with their orders.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub dim: usize,
    pub ring: Ring,
    pub free_generators: Vec<Chain>,
    pub torsion: Vec<(Chain, u64)>,
    source: Source,
}

#[derive(Clone, Debug)]
enum Source {
    Computed(Arc<Presentation>),
    Supplied { complex: Arc<SimplicialComplex>, canonical: Arc<OnceLock<Result<Arc<Presentation>>>> },
}

/// The data needed to read off coordinates of a (relative) cycle.
#[derive(Debug)]
struct Presentation {
    dim: usize,
    ring: Ring,
    cells: Vec<Simplex>,
    cell_index: HashMap<Simplex, usize>,
    relative_to: Option<SimplicialComplex>,
    /// rows `r..n` of `V^{-1}` from the SNF of the boundary out of degree `d`
    kernel_coords: Matrix<BigInt>,
    /// columns `r..n` of `V`, stored as rows: a basis of the cycles
    kernel_basis: Matrix<BigInt>,
    /// `U` from the SNF of the boundaries written in kernel coordinates, and its inverse
    u_b: Matrix<BigInt>,
    u_b_inv: Matrix<BigInt>,
    /// invariant factors of the boundary lattice (units included)
    factors: Vec<BigInt>,
}

impl HomologyBasis {
    pub fn free_rank(&self) -> usize {
        self.free_generators.len()
    }

    pub fn torsion_orders(&self) -> Vec<u64> {
        self.torsion.iter().map(|(_, o)| *o).collect()
    }

    /// All generators, free first.
    pub fn generators(&self) -> Vec<Chain> {
        self.free_generators.iter().cloned().chain(self.torsion.iter().map(|(c, _)| c.clone())).collect()
    }

    /// A basis given by explicit cycles of `complex` (no torsion). Coordinates
    /// against it are computed by comparing with the canonical basis on demand.
    pub fn from_cycles(complex: &SimplicialComplex, ring: Ring, cycles: Vec<Chain>) -> Result<HomologyBasis> {
        let dim = cycles.first().map_or(1, Chain::dim);
        for c in &cycles {
            if c.dim() != dim {
                return Err(Error::InvalidChain("basis cycles of different dimensions".into()));
            }
            complex.check_chain(c)?;
            if !c.is_cycle() {
                return Err(Error::NotACycle(format!("basis element {c:?}")));
            }
        }
        let cycles = match ring {
            Ring::Z => cycles,
            Ring::Z2 => cycles.iter().map(Chain::to_z2).collect(),
        };
        Ok(HomologyBasis {
            dim,
            ring,
            free_generators: cycles,
            torsion: Vec::new(),
            source: Source::Supplied {
                complex: Arc::new(complex.clone()),
                canonical: Arc::new(OnceLock::new()),
            },
        })
    }

    /// Reduces a basis to Z/2 coefficients by reducing its generators; torsion
    /// generators of even order survive as free Z/2 generators only through the
    /// recomputation in `homology(.., Ring::Z2)`, so this is meant for torsion-free bases.
    pub fn cycles_mod2(&self) -> Vec<Chain> {
        self.free_generators.iter().map(Chain::to_z2).collect()
    }
}

/// Absolute homology `H_d(K; ring)`.
pub fn homology(k: &SimplicialComplex, d: usize, ring: Ring) -> HomologyBasis {
    let p = Arc::new(present(k, None, d, ring));
    basis_from_presentation(p)
}

/// Relative homology `H_d(K, L; ring)`; generators are relative cycles, i.e.
/// chains on simplices of `K` outside `L` whose boundary lies in `L`.
pub fn relative_homology(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    d: usize,
    ring: Ring,
) -> Result<HomologyBasis> {
    if !k.is_subcomplex(l) {
        return Err(Error::NotSubcomplex("L has simplices that are not in K".into()));
    }
    for s in l.all_simplices() {
        for (f, _) in s.boundary_faces() {
            if !l.contains(&f) {
                return Err(Error::NotSubcomplex(format!("L is not closed under faces at {f:?}")));
            }
        }
    }
    let p = Arc::new(present(k, Some(l), d, ring));
    Ok(basis_from_presentation(p))
}

/// Coefficient vector of `[c]`: free coordinates, then torsion coordinates reduced
/// into `0..order`.
pub fn coordinates(c: &Chain, basis: &HomologyBasis) -> Result<Vec<i64>> {
    if c.dim() != basis.dim {
        return Err(Error::DimensionMismatch(format!("chain of dim {} vs basis dim {}", c.dim(), basis.dim)));
    }
    match &basis.source {
        Source::Computed(p) => p.coordinates(c),
        Source::Supplied { complex, canonical } => {
            let p = canonical
                .get_or_init(|| Ok(Arc::new(present(complex, None, basis.dim, basis.ring))))
                .as_ref()
                .map_err(|e| Error::InvalidComplex(e.to_string()))?
                .clone();
            let target = p.coordinates(c)?;
            let cols: Vec<Vec<i64>> =
                basis.free_generators.iter().map(|g| p.coordinates(g)).collect::<Result<_>>()?;
            solve_change_of_basis(&cols, &target, basis.ring)
        }
    }
}

fn solve_change_of_basis(cols: &[Vec<i64>], target: &[i64], ring: Ring) -> Result<Vec<i64>> {
    let n = cols.len();
    if cols.iter().any(|c| c.len() != target.len()) || target.len() != n {
        return Err(Error::BasisMismatch(format!(
            "{n} supplied cycles for a group of rank {}",
            target.len()
        )));
    }
    // Solve sum_j x_j cols[j] = target over Q, then check integrality.
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| q(cols[j][i])).collect();
            row.push(q(target[i]));
            row
        })
        .collect();
    if ring == Ring::Z2 {
        let bits: Vec<Vec<bool>> =
            (0..n).map(|i| (0..n).map(|j| cols[j][i].rem_euclid(2) == 1).collect()).collect();
        let inv = gf2::invert(&bits)
            .ok_or_else(|| Error::BasisMismatch("supplied cycles are not a basis".into()))?;
        let t: Vec<Vec<bool>> = target.iter().map(|&x| vec![x.rem_euclid(2) == 1]).collect();
        return Ok(gf2::matmul(&inv, &t).into_iter().map(|r| r[0] as i64).collect());
    }
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::BasisMismatch("supplied cycles are not a basis".into()))?;
        m.swap(col, p);
        let pv = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &pv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.iter()
        .map(|row| {
            let x = &row[n];
            if x.is_integer() {
                x.to_integer().to_i64().ok_or_else(|| Error::BasisMismatch("coordinate overflow".into()))
            } else {
                Err(Error::BasisMismatch("supplied cycles do not form a Z-basis".into()))
            }
        })
        .collect()
}

fn basis_from_presentation(p: Arc<Presentation>) -> HomologyBasis {
    let (free_generators, torsion) = p.generators();
    HomologyBasis { dim: p.dim, ring: p.ring, free_generators, torsion, source: Source::Computed(p) }
}

fn cells_outside(k: &SimplicialComplex, l: Option<&SimplicialComplex>, d: usize) -> Vec<Simplex> {
    k.simplices(d).iter().filter(|s| l.is_none_or(|l| !l.contains(s))).cloned().collect()
}

fn boundary_matrix(rows: &[Simplex], cols: &[Simplex]) -> Vec<Vec<i64>> {
    let index: HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, s) in cols.iter().enumerate() {
        for (f, sign) in s.boundary_faces() {
            if let Some(&i) = index.get(&f) {
                m[i][j] += sign;
            }
        }
    }
    m
}

fn present(k: &SimplicialComplex, l: Option<&SimplicialComplex>, d: usize, ring: Ring) -> Presentation {
    let cells = cells_outside(k, l, d);
    let below = if d == 0 { Vec::new() } else { cells_outside(k, l, d - 1) };
    let above = cells_outside(k, l, d + 1);
    let bd = boundary_matrix(&below, &cells);
    let bd_up = boundary_matrix(&cells, &above);
    let Reduced { kernel_coords, kernel_basis, u_b, u_b_inv, factors } = match ring {
        Ring::Z => reduce::<BigInt>(&bd, &bd_up, cells.len(), &BigInt::from, &|x: &BigInt| x.clone()),
        Ring::Z2 => reduce::<Gf2>(
            &bd,
            &bd_up,
            cells.len(),
            &|x| Gf2(x.rem_euclid(2) == 1),
            &|x: &Gf2| BigInt::from(x.0 as u8),
        ),
    };
    let cell_index = cells.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Presentation {
        dim: d,
        ring,
        cells,
        cell_index,
        relative_to: l.cloned(),
        kernel_coords,
        kernel_basis,
        u_b,
        u_b_inv,
        factors,
    }
}

struct Reduced {
    kernel_coords: Matrix<BigInt>,
    kernel_basis: Matrix<BigInt>,
    u_b: Matrix<BigInt>,
    u_b_inv: Matrix<BigInt>,
    factors: Vec<BigInt>,
}

fn reduce<T: Pid>(
    bd: &[Vec<i64>],
    bd_up: &[Vec<i64>],
    n: usize,
    conv: &dyn Fn(i64) -> T,
    back: &dyn Fn(&T) -> BigInt,
) -> Reduced {
    let a: Matrix<T> = bd.iter().map(|r| r.iter().map(|&x| conv(x)).collect()).collect();
    let sa = snf::smith_normal_form(&a, bd.len(), n);
    let r = sa.rank;
    let z_rows: Matrix<T> = sa.v_inv[r..].to_vec();
    let k = n - r;
    let up: Matrix<T> = bd_up.iter().map(|row| row.iter().map(|&x| conv(x)).collect()).collect();
    let m_up = bd_up.first().map_or(0, Vec::len);
    let b = snf::matmul(&z_rows, &up, n, m_up);
    let sb = snf::smith_normal_form(&b, k, m_up);
    let factors = sb.diagonal().iter().map(back).collect();
    let to_big = |m: &Matrix<T>| -> Matrix<BigInt> { m.iter().map(|r| r.iter().map(back).collect()).collect() };
    let basis: Matrix<T> = (r..n).map(|j| (0..n).map(|i| sa.v[i][j].clone()).collect()).collect();
    Reduced {
        kernel_coords: to_big(&z_rows),
        kernel_basis: to_big(&basis),
        u_b: to_big(&sb.u),
        u_b_inv: to_big(&sb.u_inv),
        factors,
    }
}

impl Presentation {
    fn vector_of(&self, c: &Chain) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.cells.len()];
        for (s, coeff) in c.terms() {
            if let Some(&i) = self.cell_index.get(s) {
                v[i] += coeff;
            } else if self.relative_to.as_ref().is_none_or(|l| !l.contains(s)) {
                return Err(Error::InvalidChain(format!("simplex {s:?} is not in the complex")));
            }
        }
        Ok(v)
    }

    fn is_relative_cycle(&self, c: &Chain) -> bool {
        let b = c.boundary();
        match &self.relative_to {
            None => b.is_zero() || c.dim() == 0,
            Some(l) => c.dim() == 0 || b.terms().all(|(s, _)| l.contains(s)),
        }
    }

    fn coordinates(&self, c: &Chain) -> Result<Vec<i64>> {
        let c = match self.ring {
            Ring::Z => c.clone(),
            Ring::Z2 => c.to_z2(),
        };
        if !self.is_relative_cycle(&c) {
            return Err(Error::NotACycle(format!("{c:?}")));
        }
        let v = self.vector_of(&c)?;
        let k = self.kernel_coords.len();
        let w: Vec<BigInt> = self
            .kernel_coords
            .iter()
            .map(|row| row.iter().zip(&v).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        let y: Vec<BigInt> =
            self.u_b.iter().map(|row| row.iter().zip(&w).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)).collect();
        let s = self.factors.len();
        let mut out = Vec::new();
        for yi in y.iter().take(k).skip(s) {
            out.push(self.reduce_scalar(yi.clone()));
        }
        for (i, f) in self.factors.iter().enumerate() {
            if !f.is_one() {
                out.push(y[i].mod_floor(f).to_i64().expect("small torsion coordinate"));
            }
        }
        Ok(out)
    }

    fn reduce_scalar(&self, x: BigInt) -> i64 {
        match self.ring {
            Ring::Z => x.to_i64().expect("coordinate fits i64"),
            Ring::Z2 => x.mod_floor(&BigInt::from(2)).to_i64().expect("bit"),
        }
    }

    fn generators(&self) -> (Vec<Chain>, Vec<(Chain, u64)>) {
        // generator i = Z * U_B^{-1} e_i with Z = V[:, r..]
        let z = &self.kernel_basis;
        let k = z.len();
        let u_inv = &self.u_b_inv;
        let chain_of = |coeffs: Vec<BigInt>| -> Chain {
            let terms = self.cells.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(s, c)| {
                (s.vertices().to_vec(), self.reduce_scalar(c))
            });
            Chain::from_terms(self.dim, self.ring, terms).expect("cells are simplices")
        };
        let gen = |i: usize| -> Vec<BigInt> {
            (0..self.cells.len())
                .map(|cell| (0..k).fold(BigInt::zero(), |acc, j| acc + &z[j][cell] * &u_inv[j][i]))
                .collect()
        };
        let s = self.factors.len();
        let free = (s..k).map(|i| chain_of(gen(i))).collect();
        let torsion = (0..s)
            .filter(|&i| !self.factors[i].is_one())
            .map(|i| (chain_of(gen(i)), self.factors[i].to_u64().expect("small torsion")))
            .collect();
        (free, torsion)
    }
}

/// Matrix of the mod-2 intersection pairing on `H_1(K; Z/2)` of a closed surface,
/// in the given basis. Computed as `E^T C^{-1} E` where `C` is the cup-product
/// form `<a ∪ b, [K]>` on a cocycle basis of `H^1` and `E` evaluates those
/// cocycles on the basis cycles.
pub fn intersection_form_mod2(k: &SimplicialComplex, basis: &HomologyBasis) -> Result<Vec<Vec<u8>>> {
    k.check_surface(true)?;
    if basis.dim != 1 {
        return Err(Error::DimensionMismatch(format!("basis of H_{} given, H_1 expected", basis.dim)));
    }
    let cycles: Vec<Chain> = basis.generators().iter().map(Chain::to_z2).collect();
    for c in &cycles {
        k.check_chain(c)?;
        if !c.is_cycle() {
            return Err(Error::NotACycle(format!("{c:?}")));
        }
    }
    let cocycles = cohomology1_mod2(k);
    let r = cocycles.len();
    if cycles.len() != r {
        return Err(Error::BasisMismatch(format!("{} basis cycles for H_1(K; Z/2) of rank {r}", cycles.len())));
    }
    if r == 0 {
        return Ok(Vec::new());
    }
    let edges = k.simplices(1);
    let eval = |phi: &BitRow, c: &Chain| -> bool {
        c.terms().fold(false, |acc, (e, _)| acc ^ phi.get(k.index_of(e).expect("edge of K")))
    };
    let e_mat: Vec<Vec<bool>> = cocycles.iter().map(|phi| cycles.iter().map(|c| eval(phi, c)).collect()).collect();
    let c_mat: Vec<Vec<bool>> =
        cocycles.iter().map(|a| cocycles.iter().map(|b| cup_on_fundamental(k, a, b)).collect()).collect();
    debug_assert_eq!(edges.len(), cocycles[0].len());
    let c_inv = gf2::invert(&c_mat)
        .ok_or_else(|| Error::NotClosedSurface("cup-product form is degenerate".into()))?;
    if gf2::invert(&e_mat).is_none() {
        return Err(Error::BasisMismatch("cycles do not form a basis of H_1(K; Z/2)".into()));
    }
    let form = gf2::matmul(&gf2::matmul(&gf2::transpose(&e_mat), &c_inv), &e_mat);
    Ok(form.into_iter().map(|r| r.into_iter().map(u8::from).collect()).collect())
}

/// `<a ∪ b, [K]>` with the Alexander–Whitney formula in ascending vertex order:
/// `(a ∪ b)[v0, v1, v2] = a[v0, v1] b[v1, v2]`, summed over all triangles.
pub fn cup_on_fundamental(k: &SimplicialComplex, a: &BitRow, b: &BitRow) -> bool {
    k.simplices(2).iter().fold(false, |acc, t| {
        let v = t.vertices();
        let front = k.index_of(&Simplex::from_oriented(vec![v[0], v[1]]).expect("edge").0).expect("edge");
        let back = k.index_of(&Simplex::from_oriented(vec![v[1], v[2]]).expect("edge").0).expect("edge");
        acc ^ (a.get(front) & b.get(back))
    })
}

/// Cocycle representatives of a basis of `H^1(K; Z/2)`, as bit rows over the edges.
pub fn cohomology1_mod2(k: &SimplicialComplex) -> Vec<BitRow> {
    let ne = k.n_simplices(1);
    let delta1: Vec<BitRow> = k
        .simplices(2)
        .iter()
        .map(|t| {
            BitRow::from_indices(ne, t.boundary_faces().into_iter().map(|(e, _)| k.index_of(&e).expect("edge")))
        })
        .collect();
    let cocycles = gf2::nullspace(&delta1, ne);
    let mut span = Echelon::new();
    let vertex_of: HashMap<usize, usize> =
        k.simplices(0).iter().enumerate().map(|(i, s)| (s.vertices()[0], i)).collect();
    let mut cob: Vec<BitRow> = vec![BitRow::zeros(ne); k.n_simplices(0)];
    for (i, e) in k.simplices(1).iter().enumerate() {
        for &v in e.vertices() {
            cob[vertex_of[&v]].flip(i);
        }
    }
    for row in &cob {
        span.insert(row);
    }
    cocycles.into_iter().filter(|z| span.insert(z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::standard_complex;

    #[test]
    fn torus_h1() {
        let k = standard_complex("torus7").unwrap();
        let h = homology(&k, 1, Ring::Z);
        assert_eq!(h.free_rank(), 2);
        assert!(h.torsion.is_empty());
        for g in &h.free_generators {
            assert!(g.is_cycle());
        }
    }

    #[test]
    fn rp2_torsion() {
        let k = standard_complex("rp2_6").unwrap();
        let h = homology(&k, 1, Ring::Z);
        assert_eq!(h.free_rank(), 0);
        assert_eq!(h.torsion_orders(), vec![2]);
        assert_eq!(homology(&k, 2, Ring::Z).free_rank(), 0);
        assert_eq!(homology(&k, 1, Ring::Z2).free_rank(), 1);
        assert_eq!(homology(&k, 2, Ring::Z2).free_rank(), 1);
    }

    #[test]
    fn generator_coordinates() {
        let k = standard_complex("torus7").unwrap();
        let h = homology(&k, 1, Ring::Z);
        let g0 = &h.free_generators[0];
        assert_eq!(coordinates(g0, &h).unwrap(), vec![1, 0]);
        let t = Chain::from_terms(2, Ring::Z, [(k.simplices(2)[3].vertices().to_vec(), 3)]).unwrap();
        let shifted = g0.add(&t.boundary()).unwrap();
        assert_eq!(coordinates(&shifted, &h).unwrap(), vec![1, 0]);
        let sum = g0.add(&h.free_generators[1]).unwrap();
        assert_eq!(coordinates(&sum, &h).unwrap(), vec![1, 1]);
        let edge = Chain::from_terms(1, Ring::Z, [(vec![0, 1], 1)]).unwrap();
        assert!(matches!(coordinates(&edge, &h), Err(Error::NotACycle(_))));
    }

    #[test]
    fn relative_disk_rel_boundary_is_trivial() {
        let k = standard_complex("disk").unwrap();
        let l = k.subcomplex(&k.boundary_edges()).unwrap();
        let h = relative_homology(&k, &l, 1, Ring::Z).unwrap();
        assert_eq!(h.free_rank(), 0);
        assert_eq!(relative_homology(&k, &l, 2, Ring::Z).unwrap().free_rank(), 1);
    }

    #[test]
    fn relative_annulus() {
        let k = standard_complex("annulus").unwrap();
        let l = k.subcomplex(&k.boundary_edges()).unwrap();
        let h = relative_homology(&k, &l, 1, Ring::Z).unwrap();
        assert_eq!(h.free_rank(), 1);
        assert!(h.torsion.is_empty());
        let g = &h.free_generators[0];
        assert!(g.boundary().terms().all(|(s, _)| l.contains(s)));
        assert_eq!(coordinates(g, &h).unwrap(), vec![1]);
    }

    #[test]
    fn relative_rejects_non_subcomplex() {
        let k = standard_complex("disk").unwrap();
        let other = SimplicialComplex::from_maximal(9, [vec![7, 8]]).unwrap();
        assert!(matches!(relative_homology(&k, &other, 1, Ring::Z), Err(Error::NotSubcomplex(_))));
    }

    #[test]
    fn torus_intersection_form() {
        let k = standard_complex("torus7").unwrap();
        let h = homology(&k, 1, Ring::Z2);
        let f = intersection_form_mod2(&k, &h).unwrap();
        assert_eq!(f, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn sphere_form_is_empty() {
        let k = standard_complex("sphere_2").unwrap();
        let h = homology(&k, 1, Ring::Z2);
        assert!(intersection_form_mod2(&k, &h).unwrap().is_empty());
    }

    #[test]
    fn form_rejects_surface_with_boundary() {
        let k = standard_complex("disk").unwrap();
        let h = homology(&k, 1, Ring::Z2);
        assert!(matches!(intersection_form_mod2(&k, &h), Err(Error::NotClosedSurface(_))));
    }

    #[test]
    fn supplied_basis_coordinates() {
        let k = standard_complex("torus7").unwrap();
        let h = homology(&k, 1, Ring::Z);
        let a = h.free_generators[0].clone();
        let b = h.free_generators[1].add(&a).unwrap();
        let user = HomologyBasis::from_cycles(&k, Ring::Z, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(coordinates(&b, &user).unwrap(), vec![0, 1]);
        assert_eq!(coordinates(&h.free_generators[1], &user).unwrap(), vec![-1, 1]);
    }
}
