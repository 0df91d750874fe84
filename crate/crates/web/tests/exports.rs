use plink_web::{band_surface_form, linking_number, parse_polygon, schedule};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn hopf_link_from_text() {
    let a = "-2 -2 0\n4 -2 0\n-2 4 0\n";
    let b = "0 0 -3\n0, 0, 3\n8 0 0";
    let v = parse(linking_number(a, b, 1));
    assert_eq!(v["ok"]["lk"].as_i64().unwrap().abs(), 1);
    assert_eq!(v["ok"]["lk"], v["ok"]["oracle"]);
    let reversed = "-2 4 0\n4 -2 0\n-2 -2 0";
    let w = parse(linking_number(reversed, b, 1));
    assert_eq!(w["ok"]["lk"].as_i64(), v["ok"]["lk"].as_i64().map(|x| -x));
}

#[test]
fn bad_polygons_are_reported() {
    let v = parse(linking_number("0 0\n1 0 0\n0 1 0", "0 0 1\n1 0 1\n0 1 1", 0));
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 1"));
    let v = parse(linking_number("0 0 0\n2 0 0\n0 2 0", "1 0 0\n1 1 1\n1 -1 1", 0));
    assert_eq!(v["error"]["kind"], "not-disjoint");
    assert!(parse_polygon("1/2 0 0\n1 0 0\n0 1 0").is_ok());
}

#[test]
fn band_surface_in_the_browser() {
    let v = parse(band_surface_form(1, 0, -1, 0));
    assert_eq!(v["ok"]["form"], serde_json::json!([[2, -1], [-1, 0]]));
    assert_eq!(v["ok"]["form"], v["ok"]["expected"]);
    assert_eq!(v["ok"]["mod2_pass"], true);
    assert_eq!(parse(band_surface_form(9, 0, 0, 0))["error"]["kind"], "bounds-exceeded");
}

#[test]
fn schedules_in_the_browser() {
    let v = parse(schedule("[[0,1],[1,0]]", "[[2,3],[3,-4]]"));
    assert_eq!(v["ok"]["result"], serde_json::json!([[2, 3], [3, -4]]));
    let odd = parse(schedule("[[0,1],[1,0]]", "[[1,1],[1,0]]"));
    assert_eq!(odd["error"]["kind"], "parity-violation");
    assert_eq!(parse(schedule("[[0,1],[2,0]]", "[[0,1],[1,0]]"))["error"]["kind"], "not-symmetric");
}

#[test]
fn page_uses_the_exports() {
    let page = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/www/index.html")).unwrap();
    for name in ["linking_number", "band_surface_form", "schedule", "./pkg/plink_web.js"] {
        assert!(page.contains(name), "{name}");
    }
}
