//! End-to-end acceptance run. Each criterion combines the library's own check with
//! an independent oracle from `common` and prints one PASS/FAIL line.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{betti, gauss_lk, BIG_PRIME};
use plink::embedding::pushoff;
use plink::generators::{gen_band_surface, gen_ribbon, standard_complex, BandSurfaceSpec, RibbonSpec};
use plink::linking::{lk, Link};
use plink::realize::{apply_twists, decompose_symmetric, enumerate_reachable, twist_schedule};
use plink::seifert::{random_affine, seifert_form, SeifertInput};
use plink::verify::{self, random_link, random_symmetric, BandTable, Outcome};
use plink::{GeoChain, Result, SymForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240611;
/// Distance from the nearest integer accepted for a floating Gauss integral.
const GAUSS_TOL: f64 = 1e-3;

fn report(outcome: &Outcome, oracle: std::result::Result<(), String>) -> bool {
    let pass = outcome.pass && oracle.is_ok();
    println!(
        "[{}] criterion {}: {} ({:.2?}) | library: {} | oracle: {}",
        if pass { "PASS" } else { "FAIL" },
        outcome.id,
        outcome.name,
        outcome.elapsed,
        outcome.detail,
        oracle.map(|()| "agrees".to_string()).unwrap_or_else(|e| format!("MISMATCH {e}"))
    );
    pass
}

fn ok_or(errors: Vec<String>) -> std::result::Result<(), String> {
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}

fn placed_and_pushed(input: &SeifertInput) -> Result<Vec<(GeoChain, GeoChain)>> {
    input
        .cycles()
        .iter()
        .map(|c| Ok((GeoChain::from_chain(c, input.embedded.coords())?, pushoff(&input.embedded, c, &input.field)?.cycle)))
        .collect()
}

/// `L_ij = lk(X_i, ξX_j) + lk(ξX_i, X_j)` evaluated by Gauss integrals.
fn gauss_form(input: &SeifertInput) -> std::result::Result<Vec<Vec<i64>>, String> {
    let cyc = placed_and_pushed(input).map_err(|e| e.to_string())?;
    let n = cyc.len();
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let f = gauss_lk(&cyc[i].0, &cyc[j].1, GAUSS_TOL).ok_or("Gauss integral not near an integer")?;
            let b = gauss_lk(&cyc[i].1, &cyc[j].0, GAUSS_TOL).ok_or("Gauss integral not near an integer")?;
            m[i][j] = f + b;
        }
    }
    Ok(m)
}

fn band_formula(ta: i64, tb: i64, c: i64) -> Vec<Vec<i64>> {
    vec![vec![2 * ta, 2 * c + 1], vec![2 * c + 1, 2 * tb]]
}

fn oracle_ribbons() -> std::result::Result<(), String> {
    let mut bad = Vec::new();
    for l in -3..=3 {
        let r = gen_ribbon(&RibbonSpec::new(l)).map_err(|e| e.to_string())?;
        let (a, b) = r.boundary_pair().map_err(|e| e.to_string())?;
        if gauss_lk(&a, &b, GAUSS_TOL) != Some(l) {
            bad.push(format!("l={l}: Gauss {:?}", common::gauss_linking(&a, &b)));
        }
    }
    ok_or(bad)
}

fn oracle_bands(table: &Result<BandTable>) -> std::result::Result<(), String> {
    let t = table.as_ref().map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for (&(ta, tb, c), (s, terms)) in &t.surfaces {
        let expected = band_formula(ta, tb, c);
        if terms.form.matrix != expected {
            bad.push(format!("({ta},{tb},{c}) form {:?}", terms.form.matrix));
        }
        match gauss_form(&s.input) {
            Ok(g) if g == expected => {}
            Ok(g) => bad.push(format!("({ta},{tb},{c}) Gauss form {g:?}")),
            Err(e) => bad.push(format!("({ta},{tb},{c}) {e}")),
        }
    }
    let (s, terms) = &t.surfaces[&(0, 0, 0)];
    let cyc = placed_and_pushed(&s.input).map_err(|e| e.to_string())?;
    if gauss_lk(&cyc[0].1, &cyc[1].0, GAUSS_TOL) != Some(1) || terms.backward[0][1] != 1 {
        bad.push("single term lk(ξ(x), f(y)) at (0,0,0) is not 1".into());
    }
    ok_or(bad)
}

fn oracle_mod2(table: &Result<BandTable>) -> std::result::Result<(), String> {
    let t = table.as_ref().map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for (k, (s, terms)) in &t.surfaces {
        if terms.form.mod2() != vec![vec![0, 1], vec![1, 0]] {
            bad.push(format!("{k:?}: L mod 2 = {:?}", terms.form.mod2()));
        }
        let (closed, _) = s.input.closed_up().map_err(|e| e.to_string())?;
        if (betti(&closed, 1, 2), betti(&closed, 2, 2)) != (2, 1) {
            bad.push(format!("{k:?}: capped surface is not a torus"));
        }
    }
    ok_or(bad)
}

fn oracle_invariance() -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut bad = Vec::new();
    for spec in [BandSurfaceSpec { ta: 1, tb: -1, c: 0 }, BandSurfaceSpec { ta: -2, tb: 0, c: 1 }] {
        let s = gen_band_surface(spec).map_err(|e| e.to_string())?;
        let (m, t) = random_affine(&mut rng);
        let moved = s.input.affine_image(&m, &t).map_err(|e| e.to_string())?;
        let expected = band_formula(spec.ta, spec.tb, spec.c);
        match gauss_form(&moved) {
            Ok(g) if g == expected => {}
            other => bad.push(format!("{spec:?} after affine map: {other:?}")),
        }
        let flipped = moved.with_field(moved.field.negated()).map_err(|e| e.to_string())?;
        match gauss_form(&flipped) {
            Ok(g) if g == expected => {}
            other => bad.push(format!("{spec:?} with opposite field: {other:?}")),
        }
        let lib = seifert_form(&moved, &mut rng).map_err(|e| e.to_string())?;
        if lib.matrix != expected {
            bad.push(format!("{spec:?}: library form {:?}", lib.matrix));
        }
    }
    ok_or(bad)
}

fn oracle_decomposition() -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut bad = Vec::new();
    for k in 0..500 {
        let n = rng.gen_range(0..=6);
        let m = random_symmetric(&mut rng, n, 9);
        let terms = decompose_symmetric(&SymForm::new(m.clone()).unwrap());
        let mut sum = vec![vec![0i64; n]; n];
        for (a, s) in &terms {
            let support: Vec<i64> = s.iter().copied().filter(|&x| x != 0).collect();
            if !(support == [1] || support == [1, 1]) {
                bad.push(format!("case {k}: functional {s:?}"));
            }
            for i in 0..n {
                for j in 0..n {
                    sum[i][j] += a * s[i] * s[j];
                }
            }
        }
        if sum != m || terms.len() > n * (n + 1) / 2 {
            bad.push(format!("case {k}"));
        }
    }
    ok_or(bad)
}

fn oracle_realization() -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut bad = Vec::new();
    for k in 0..200 {
        let n = rng.gen_range(1..=6);
        let base = random_symmetric(&mut rng, n, 9);
        let delta = random_symmetric(&mut rng, n, 4);
        let target: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| base[i][j] + 2 * delta[i][j]).collect()).collect();
        let sched = twist_schedule(&SymForm::new(base.clone()).unwrap(), &SymForm::new(target.clone()).unwrap())
            .map_err(|e| e.to_string())?;
        let mut m = base.clone();
        for mv in &sched.moves {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] += 2 * mv.l * mv.s[i] * mv.s[j];
                }
            }
        }
        if m != target {
            bad.push(format!("pair {k}"));
        }
    }
    for base in [vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 2]], vec![vec![-1]], vec![]] {
        let n = base.len();
        let f = SymForm::new(base.clone()).unwrap();
        let reach = enumerate_reachable(&f, 2).map_err(|e| e.to_string())?;
        let size: usize = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| if base[i][j] % 2 == 0 { 3 } else { 2 })
            .product();
        let parity_ok = reach.iter().all(|r| {
            (0..n).all(|i| (0..n).all(|j| (r.matrix[i][j] - base[i][j]) % 2 == 0 && r.matrix[i][j].abs() <= 2))
        });
        if reach.len() != size || !parity_ok {
            bad.push(format!("reachable set of {base:?} has {} forms, expected {size}", reach.len()));
        }
    }
    let h = SymForm::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
    let odd = SymForm::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
    match twist_schedule(&h, &odd) {
        Err(e) if e.kind() == "parity-violation" => {}
        other => bad.push(format!("odd target gave {other:?}")),
    }
    ok_or(bad)
}

fn oracle_twists(table: &Result<BandTable>) -> std::result::Result<(), String> {
    let t = table.as_ref().map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for tb in -2..=2 {
        for c in -2..=2 {
            for l in -2..=2 {
                let base = &t.surfaces[&(0, tb, c)].1.form.matrix;
                let moved = &t.surfaces[&(l, tb, c)].1.form.matrix;
                let diff = [[moved[0][0] - base[0][0], moved[0][1] - base[0][1]], [moved[1][0] - base[1][0], moved[1][1] - base[1][1]]];
                if diff != [[2 * l, 0], [0, 0]] {
                    bad.push(format!("(tb, c, l) = ({tb}, {c}, {l}): difference {diff:?}"));
                }
                let sched = plink::realize::TwistSchedule { moves: vec![plink::realize::Move { s: vec![1, 0], l }] };
                let lib = apply_twists(&t.surfaces[&(0, tb, c)].1.form, &sched).map_err(|e| e.to_string())?;
                if &lib.matrix != moved {
                    bad.push(format!("apply_twists disagrees at ({tb}, {c}, {l})"));
                }
            }
        }
    }
    ok_or(bad)
}

fn oracle_links() -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut bad = Vec::new();
    for k in 0..200 {
        let (a, b) = random_link(&mut rng);
        let exact = lk(&Link::new(a.clone(), b.clone()).map_err(|e| e.to_string())?, SEED + k).map_err(|e| e.to_string())?;
        if gauss_lk(&a, &b, GAUSS_TOL) != Some(exact) {
            bad.push(format!("pair {k}: exact {exact}, Gauss {}", common::gauss_linking(&a, &b)));
        }
    }
    ok_or(bad)
}

fn oracle_homology() -> std::result::Result<(), String> {
    let mut bad = Vec::new();
    // (name, degree, Betti over Q, over F2, over F3)
    let table: &[(&str, usize, usize, usize, usize)] = &[
        ("torus7", 0, 1, 1, 1),
        ("torus7", 1, 2, 2, 2),
        ("torus7", 2, 1, 1, 1),
        ("rp2_6", 1, 0, 1, 0),
        ("rp2_6", 2, 0, 1, 0),
        ("klein8", 1, 1, 2, 1),
        ("klein8", 2, 0, 1, 0),
        ("punctured_torus", 1, 2, 2, 2),
        ("sphere_2", 1, 0, 0, 0),
        ("sphere_2", 2, 1, 1, 1),
        ("sphere_3", 3, 1, 1, 1),
    ];
    for &(name, d, q, f2, f3) in table {
        let k = standard_complex(name).map_err(|e| e.to_string())?;
        let got = (betti(&k, d, BIG_PRIME), betti(&k, d, 2), betti(&k, d, 3));
        if got != (q, f2, f3) {
            bad.push(format!("{name} degree {d}: {got:?}"));
        }
    }
    ok_or(bad)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut all = true;
    all &= report(&verify::ribbon_linking(SEED), oracle_ribbons());
    let table = verify::band_table(SEED);
    all &= report(&verify::band_forms(&table), oracle_bands(&table));
    all &= report(&verify::band_mod2(&table), oracle_mod2(&table));
    all &= report(&verify::invariances(SEED), oracle_invariance());
    all &= report(&verify::decomposition(SEED), oracle_decomposition());
    all &= report(&verify::realization(SEED), oracle_realization());
    all &= report(&verify::twist_consistency(&table), oracle_twists(&table));
    all &= report(&verify::linking_properties(SEED), oracle_links());
    all &= report(&verify::homology_corpus(), oracle_homology());
    let total = start.elapsed();
    let in_time = total < verify::SUITE_LIMIT;
    println!("[{}] whole suite in {total:.2?} (limit {:?})", if in_time { "PASS" } else { "FAIL" }, verify::SUITE_LIMIT);
    if all && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
