//! The end-to-end verification suite run by `verify-all`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::Ring;
use crate::embedding::GeoChain;
use crate::error::{Error, Result};
use crate::generators::{gen_band_surface, gen_ribbon, random_polygon, standard_complex, BandSurface, BandSurfaceSpec, RibbonSpec};
use crate::homology::{homology, relative_homology};
use crate::linking::{crossing_oracle_with, lk_with, Link};
use crate::realize::{apply_twists, decompose_symmetric, enumerate_reachable, parity_class, reconstruct, twist_schedule, Move, TwistSchedule};
use crate::report::Check;
use crate::seifert::{
    field_independence_check, homologous_replacement, mod2_check_input, random_affine, seifert_form, seifert_terms,
    SeifertTerms, SymForm,
};

/// Time limits of the suite.
pub const RIBBON_LIMIT: Duration = Duration::from_secs(10);
pub const BAND_LIMIT: Duration = Duration::from_secs(180);
pub const DECOMPOSE_LIMIT: Duration = Duration::from_secs(5);
pub const SUITE_LIMIT: Duration = Duration::from_secs(300);

/// Outcome of one numbered criterion. Elapsed time is kept out of the serialized
/// form so that reports stay reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Outcome {
    pub fn check(&self) -> Check {
        Check::new(format!("{}. {}", self.id, self.name), self.pass, self.detail.clone())
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {} ({:.2?}): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.detail
        )
    }
}

fn outcome(id: u32, name: &str, start: Instant, r: Result<(bool, String)>) -> Outcome {
    let (pass, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome { id, name: name.into(), pass, detail, elapsed: start.elapsed() }
}

fn sub_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn ribbon_linking(seed: u64) -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let mut rng = sub_rng(seed, 1);
        let mut bad = Vec::new();
        for l in -3..=3 {
            let ribbon = gen_ribbon(&RibbonSpec::new(l))?;
            let (a, b) = ribbon.boundary_pair()?;
            let cone = lk_with(&Link::new(a.clone(), b.clone())?, &mut rng)?.value;
            let (oracle, _) = crossing_oracle_with(&a, &b, &mut rng)?;
            if cone != l || oracle != l {
                bad.push(format!("l={l}: cone {cone}, oracle {oracle}"));
            }
        }
        let in_time = start.elapsed() < RIBBON_LIMIT;
        Ok((
            bad.is_empty() && in_time,
            if bad.is_empty() { format!("lk = l for l in -3..3 by both methods; within {RIBBON_LIMIT:?}: {in_time}") } else { bad.join("; ") },
        ))
    })();
    outcome(1, "twisted ribbon linking", start, r)
}

/// Forms of all band surfaces with parameters in `[-2, 2]³`.
pub struct BandTable {
    pub surfaces: BTreeMap<(i64, i64, i64), (BandSurface, SeifertTerms)>,
    pub elapsed: Duration,
}

pub fn band_table(seed: u64) -> Result<BandTable> {
    let start = Instant::now();
    let mut rng = sub_rng(seed, 2);
    let mut surfaces = BTreeMap::new();
    for ta in -2..=2 {
        for tb in -2..=2 {
            for c in -2..=2 {
                let s = gen_band_surface(BandSurfaceSpec { ta, tb, c })?;
                let terms = seifert_terms(&s.input, &mut rng)?;
                surfaces.insert((ta, tb, c), (s, terms));
            }
        }
    }
    Ok(BandTable { surfaces, elapsed: start.elapsed() })
}

pub fn band_forms(table: &Result<BandTable>) -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let t = table.as_ref().map_err(clone_err)?;
        let wrong: Vec<String> = t
            .surfaces
            .iter()
            .filter(|(_, (s, terms))| terms.form.matrix != s.predicted().matrix)
            .map(|(k, (_, terms))| format!("{k:?} -> {:?}", terms.form.matrix))
            .collect();
        let standard = &t.surfaces[&(0, 0, 0)].1;
        let single = standard.backward[0][1];
        let in_time = t.elapsed < BAND_LIMIT;
        Ok((
            wrong.is_empty() && single == 1 && in_time,
            format!(
                "{} of {} forms equal [[2ta, 2c+1], [2c+1, 2tb]]; lk(ξ(x), f(y)) = {single} at (0,0,0); within {BAND_LIMIT:?}: {in_time}{}",
                t.surfaces.len() - wrong.len(),
                t.surfaces.len(),
                if wrong.is_empty() { String::new() } else { format!("; wrong: {}", wrong.join(", ")) }
            ),
        ))
    })();
    Outcome { elapsed: table.as_ref().map(|t| t.elapsed).unwrap_or_default() + start.elapsed(), ..outcome(2, "band surface Seifert forms", start, r) }
}

fn clone_err(e: &Error) -> Error {
    Error::EmbeddingFailed(e.to_string())
}

pub fn band_mod2(table: &Result<BandTable>) -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let t = table.as_ref().map_err(clone_err)?;
        let mut failed = Vec::new();
        for (k, (s, terms)) in &t.surfaces {
            if !mod2_check_input(&s.input, &terms.form)?.pass {
                failed.push(format!("{k:?}"));
            }
        }
        Ok((failed.is_empty(), format!("{} of {} capped surfaces agree mod 2 with the cup-product form{}", t.surfaces.len() - failed.len(), t.surfaces.len(), if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) })))
    })();
    outcome(3, "mod-2 reduction equals intersection form", start, r)
}

pub fn invariances(seed: u64) -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let mut rng = sub_rng(seed, 4);
        let mut problems = Vec::new();
        let mut term_changes = 0;
        for _ in 0..10 {
            let spec = BandSurfaceSpec { ta: rng.gen_range(-2..=2), tb: rng.gen_range(-2..=2), c: rng.gen_range(-2..=2) };
            let s = gen_band_surface(spec)?;
            let fi = field_independence_check(&s.input, &mut rng)?;
            if !fi.pass {
                problems.push(format!("{spec:?}: field change"));
            }
            if fi.terms_changed {
                term_changes += 1;
            }
            let base = &fi.base.form.matrix;
            for i in 0..s.input.rank() {
                let h = homologous_replacement(&s.input, i, &mut rng)?;
                if &seifert_form(&h, &mut rng)?.matrix != base {
                    problems.push(format!("{spec:?}: homologous replacement of cycle {i}"));
                }
            }
            let (m, t) = random_affine(&mut rng);
            if &seifert_form(&s.input.affine_image(&m, &t)?, &mut rng)?.matrix != base {
                problems.push(format!("{spec:?}: affine map"));
            }
        }
        Ok((
            problems.is_empty() && term_changes > 0,
            format!("10 surfaces; single terms changed under a field change on {term_changes}{}", if problems.is_empty() { String::new() } else { format!("; broken: {}", problems.join(", ")) }),
        ))
    })();
    outcome(4, "invariance of the form", start, r)
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

pub fn decomposition(seed: u64) -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let mut rng = sub_rng(seed, 5);
        let mut bad = 0;
        for _ in 0..500 {
            let n = rng.gen_range(0..=6);
            let m = SymForm::new(random_symmetric(&mut rng, n, 9))?;
            if reconstruct(n, &decompose_symmetric(&m)) != m.matrix {
                bad += 1;
            }
        }
        let in_time = start.elapsed() < DECOMPOSE_LIMIT;
        Ok((bad == 0 && in_time, format!("{} of 500 reconstructed exactly; within {DECOMPOSE_LIMIT:?}: {in_time}", 500 - bad)))
    })();
    outcome(5, "symmetric decomposition", start, r)
}

pub fn realization(seed: u64) -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let mut rng = sub_rng(seed, 6);
        let mut bad = Vec::new();
        for k in 0..200 {
            let n = rng.gen_range(1..=6);
            let base = SymForm::new(random_symmetric(&mut rng, n, 9))?;
            let delta = random_symmetric(&mut rng, n, 5);
            let target = SymForm::new((0..n).map(|i| (0..n).map(|j| base.matrix[i][j] + 2 * delta[i][j]).collect()).collect())?;
            if apply_twists(&base, &twist_schedule(&base, &target)?)? != target {
                bad.push(format!("pair {k}"));
            }
        }
        let mut sets = 0;
        for n in 0..=2 {
            for _ in 0..4 {
                let base = SymForm::new(random_symmetric(&mut rng, n, 2))?;
                if enumerate_reachable(&base, 2)? != parity_class(&base, 2) {
                    bad.push(format!("reachable set from {:?}", base.matrix));
                }
                sets += 1;
            }
        }
        let mut rejected = 0;
        for _ in 0..20 {
            let n = rng.gen_range(1..=4);
            let base = SymForm::new(random_symmetric(&mut rng, n, 9))?;
            let mut target = base.clone();
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            target.matrix[i][j] += 1;
            if i != j {
                target.matrix[j][i] += 1;
            }
            if matches!(twist_schedule(&base, &target), Err(Error::Parity(_))) {
                rejected += 1;
            }
        }
        if rejected != 20 {
            bad.push(format!("{} of 20 odd targets rejected", rejected));
        }
        Ok((
            bad.is_empty(),
            format!("200 schedules realize their targets; {sets} reachable sets equal parity classes; {rejected}/20 odd targets rejected{}", if bad.is_empty() { String::new() } else { format!("; failures: {}", bad.join(", ")) }),
        ))
    })();
    outcome(6, "twist realization", start, r)
}

pub fn twist_consistency(table: &Result<BandTable>) -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let t = table.as_ref().map_err(clone_err)?;
        let mut bad = Vec::new();
        let mut count = 0;
        for tb in -2..=2 {
            for c in -2..=2 {
                let base = &t.surfaces[&(0, tb, c)].1.form;
                for l in -2..=2 {
                    let moved = &t.surfaces[&(l, tb, c)].1.form;
                    let sched = TwistSchedule { moves: if l == 0 { vec![] } else { vec![Move { s: vec![1, 0], l }] } };
                    count += 1;
                    if apply_twists(base, &sched)?.matrix != moved.matrix {
                        bad.push(format!("(tb, c, l) = ({tb}, {c}, {l})"));
                    }
                }
            }
        }
        Ok((bad.is_empty(), format!("{} of {count} twist increments match 2l e1 e1ᵀ{}", count - bad.len(), if bad.is_empty() { String::new() } else { format!("; wrong: {}", bad.join(", ")) })))
    })();
    outcome(7, "geometric twists match the algebra", start, r)
}

/// A random pair of disjoint closed polygons in R³.
pub fn random_link<R: Rng>(rng: &mut R) -> (GeoChain, GeoChain) {
    loop {
        let na = rng.gen_range(3..=7);
        let nb = rng.gen_range(3..=7);
        let (Some(a), Some(b)) = (random_polygon(rng, na, 4, [0, 0, 0]), random_polygon(rng, nb, 4, [1, 0, 0])) else {
            continue;
        };
        if Link::new(a.clone(), b.clone()).is_ok() {
            return (a, b);
        }
    }
}

pub fn linking_properties(seed: u64) -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let mut rng = sub_rng(seed, 8);
        let mut bad = Vec::new();
        let mut nonzero = 0;
        for k in 0..200 {
            let (a, b) = random_link(&mut rng);
            let link = Link::new(a.clone(), b.clone())?;
            let v = lk_with(&link, &mut rng)?.value;
            let (o, _) = crossing_oracle_with(&a, &b, &mut rng)?;
            if v != 0 {
                nonzero += 1;
            }
            if v != o {
                bad.push(format!("pair {k}: cone {v}, oracle {o}"));
            }
            if k < 40 {
                if lk_with(&link.swapped(), &mut rng)?.value != v {
                    bad.push(format!("pair {k}: symmetry"));
                }
                for _ in 0..5 {
                    if lk_with(&link, &mut rng)?.value != v {
                        bad.push(format!("pair {k}: apex dependence"));
                    }
                }
                let sub = Link::new(a.subdivide(), b.clone())?;
                if lk_with(&sub, &mut rng)?.value != v {
                    bad.push(format!("pair {k}: subdivision"));
                }
                let (a2, _) = random_link(&mut rng);
                if let Ok(l2) = Link::new(a2.clone(), b.clone()) {
                    let sum = a.add(&a2)?;
                    if let Ok(ls) = Link::new(sum, b.clone()) {
                        let w2 = lk_with(&l2, &mut rng)?.value;
                        if lk_with(&ls, &mut rng)?.value != v + w2 {
                            bad.push(format!("pair {k}: bilinearity"));
                        }
                    }
                }
            }
        }
        Ok((
            bad.is_empty() && nonzero > 0,
            format!("200 random pairs ({nonzero} linked), zero discrepancies: {}{}", bad.is_empty(), if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }),
        ))
    })();
    outcome(8, "linking engine properties", start, r)
}

pub fn homology_corpus() -> Outcome {
    let start = Instant::now();
    let r = (|| {
        let mut bad = Vec::new();
        let mut expect = |name: &str, d: usize, ring: Ring, free: usize, torsion: &[u64]| -> Result<()> {
            let h = homology(&standard_complex(name)?, d, ring);
            if h.free_rank() != free || h.torsion_orders() != torsion {
                bad.push(format!("{name} H{d}: rank {} torsion {:?}", h.free_rank(), h.torsion_orders()));
            }
            Ok(())
        };
        expect("torus7", 0, Ring::Z, 1, &[])?;
        expect("torus7", 1, Ring::Z, 2, &[])?;
        expect("torus7", 2, Ring::Z, 1, &[])?;
        expect("rp2_6", 1, Ring::Z, 0, &[2])?;
        expect("rp2_6", 2, Ring::Z, 0, &[])?;
        expect("klein8", 1, Ring::Z, 1, &[2])?;
        expect("punctured_torus", 1, Ring::Z, 2, &[])?;
        expect("sphere_0", 0, Ring::Z, 2, &[])?;
        for k in 1..=4 {
            for d in 0..=k {
                let free = usize::from(d == 0 || d == k);
                expect(&format!("sphere_{k}"), d, Ring::Z, free, &[])?;
            }
        }
        let pt = standard_complex("punctured_torus")?;
        let boundary = pt.subcomplex(&pt.boundary_edges())?;
        let rel = relative_homology(&pt, &boundary, 1, Ring::Z)?;
        if rel.free_rank() != 2 || !rel.torsion.is_empty() {
            bad.push(format!("relative H1 rank {}", rel.free_rank()));
        }
        Ok((bad.is_empty(), if bad.is_empty() { "torus, RP², Klein bottle, spheres, punctured torus and its relative H1 as expected".to_string() } else { bad.join("; ") }))
    })();
    outcome(9, "homology corpus", start, r)
}

/// Runs every criterion; the last entry checks the total running time.
pub fn verify_all(seed: u64) -> Vec<Outcome> {
    let start = Instant::now();
    let mut out = vec![ribbon_linking(seed)];
    let table = band_table(seed);
    out.push(band_forms(&table));
    out.push(band_mod2(&table));
    out.push(invariances(seed));
    out.push(decomposition(seed));
    out.push(realization(seed));
    out.push(twist_consistency(&table));
    out.push(linking_properties(seed));
    out.push(homology_corpus());
    let total = start.elapsed();
    let in_time = total < SUITE_LIMIT;
    out.push(Outcome { id: 10, name: "suite running time".into(), pass: in_time, detail: format!("within {SUITE_LIMIT:?}: {in_time}"), elapsed: total });
    out
}
