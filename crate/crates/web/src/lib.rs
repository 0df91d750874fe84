//! WebAssembly bindings for the browser demo. Every export returns a JSON string,
//! either `{"ok": …}` or `{"error": {"kind": …, "message": …}}`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use plink::generators::{gen_band_surface, BandSurfaceSpec};
use plink::io::FormFile;
use plink::linking::{crossing_oracle, lk_with, Link};
use plink::rational::parse_rat;
use plink::realize::{apply_twists, twist_schedule};
use plink::seifert::{mod2_check_input, seifert_terms};
use plink::{Error, GeoChain, Result, SymForm};

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }),
        Err(e) => json!({ "error": { "kind": e.kind(), "message": e.to_string() } }),
    }
    .to_string()
}

/// A closed polygon from text with one vertex `x y z` per line; coordinates may
/// be integers, fractions or decimals.
pub fn parse_polygon(text: &str) -> Result<GeoChain> {
    let pts = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, line)| {
            let p = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(parse_rat).collect::<Result<Vec<_>>>()?;
            if p.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected 3 coordinates, got {}", i + 1, p.len())));
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    if pts.len() < 3 {
        return Err(Error::Parse("a polygon needs at least 3 vertices".into()));
    }
    let mut g = GeoChain::zero(1);
    for i in 0..pts.len() {
        g.add_simplex(vec![pts[i].clone(), pts[(i + 1) % pts.len()].clone()], 1)?;
    }
    Ok(g)
}

fn parse_form(text: &str) -> Result<SymForm> {
    plink::io::parse::<Vec<Vec<i64>>>(text, "form").and_then(SymForm::new)
}

/// Linking number of two polygons, by the cone construction and by crossings.
#[wasm_bindgen]
pub fn linking_number(a: &str, b: &str, seed: u64) -> String {
    respond((|| {
        let (a, b) = (parse_polygon(a)?, parse_polygon(b)?);
        let out = lk_with(&Link::new(a.clone(), b.clone())?, &mut ChaCha8Rng::seed_from_u64(seed))?;
        let oracle = crossing_oracle(&a, &b, seed)?;
        Ok(json!({ "lk": out.value, "oracle": oracle, "apex": out.apex }))
    })())
}

/// Builds the band surface with parameters `(ta, tb, c)` and computes its form.
#[wasm_bindgen]
pub fn band_surface_form(ta: i32, tb: i32, c: i32, seed: u64) -> String {
    respond((|| {
        if [ta, tb, c].iter().any(|x| x.abs() > 4) {
            return Err(Error::Bounds("parameters are limited to [-4, 4] in the demo".into()));
        }
        let s = gen_band_surface(BandSurfaceSpec { ta: ta.into(), tb: tb.into(), c: c.into() })?;
        let terms = seifert_terms(&s.input, &mut ChaCha8Rng::seed_from_u64(seed))?;
        let mod2 = mod2_check_input(&s.input, &terms.form)?;
        Ok(json!({
            "form": terms.form.matrix,
            "expected": s.predicted().matrix,
            "forward": terms.forward,
            "backward": terms.backward,
            "mod2_pass": mod2.pass,
            "vertices": s.input.embedded.coords().len(),
            "triangles": s.input.embedded.complex().n_simplices(2),
        }))
    })())
}

/// Twist schedule from `base` to `target`, both given as JSON integer matrices.
#[wasm_bindgen]
pub fn schedule(base: &str, target: &str) -> String {
    respond((|| {
        let (b, t) = (parse_form(base)?, parse_form(target)?);
        let s = twist_schedule(&b, &t)?;
        let check = apply_twists(&b, &s)?;
        Ok(json!({ "moves": s.moves, "result": FormFile::from_form(&check).matrix }))
    })())
}
