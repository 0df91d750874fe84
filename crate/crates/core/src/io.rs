//! JSON file formats.
//!
//! * complex: `{"vertices": N, "simplices": {"0": [[i]], "1": [[i, j]], …}}`, with an
//!   optional `"coords": [["p/q", …], …]` for embedded complexes;
//! * chain: `{"dim": d, "terms": [{"s": [indices], "c": int}]}`;
//! * normal field: `{"vectors": [["p/q", …], …]}`;
//! * basis: `{"cycles": [chain, …]}`;
//! * geometric chain: `{"dim": d, "terms": [{"points": [["p/q", …], …], "c": int}]}`;
//! * form: `{"matrix": [[int]]}`; twist schedule: `{"moves": [{"s": [int], "l": int}]}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::complex::{Chain, Ring, Simplex, SimplicialComplex};
use crate::embedding::{EmbeddedComplex, GeoChain, NormalField};
use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat, Point};
use crate::seifert::SymForm;

/// Parses JSON text; syntax and shape errors carry line and column.
pub fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: usize,
    pub simplices: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<String>>>,
}

impl ComplexFile {
    pub fn from_complex(k: &SimplicialComplex) -> ComplexFile {
        let simplices = (0..=k.dim())
            .map(|d| (d.to_string(), k.simplices(d).iter().map(|s| s.vertices().to_vec()).collect()))
            .collect();
        ComplexFile { vertices: k.n_vertices(), simplices, coords: None }
    }

    pub fn from_embedded(e: &EmbeddedComplex) -> ComplexFile {
        let mut f = ComplexFile::from_complex(e.complex());
        f.coords = Some(e.coords().iter().map(|p| point_strings(p)).collect());
        f
    }

    /// The complex generated by the listed simplices: missing faces are added. When
    /// no vertices are listed, every vertex `0..vertices` belongs to the complex.
    pub fn complex(&self) -> Result<SimplicialComplex> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new()];
        if !self.simplices.contains_key("0") {
            by_dim[0].extend((0..self.vertices).map(Simplex::vertex));
        }
        for (key, list) in &self.simplices {
            key.parse::<usize>().map_err(|_| Error::Parse(format!("simplex dimension key '{key}'")))?;
            for verts in list {
                let (s, _) = Simplex::from_oriented(verts.clone())
                    .ok_or_else(|| Error::InvalidComplex(format!("degenerate simplex {verts:?}")))?;
                for f in s.all_faces() {
                    while by_dim.len() <= f.dim() {
                        by_dim.push(BTreeSet::new());
                    }
                    by_dim[f.dim()].insert(f);
                }
            }
        }
        SimplicialComplex::new(self.vertices, by_dim.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    pub fn embedded(&self) -> Result<EmbeddedComplex> {
        let coords = self
            .coords
            .as_ref()
            .ok_or_else(|| Error::Parse("embedded complex needs \"coords\"".into()))?
            .iter()
            .map(|p| parse_point(p))
            .collect::<Result<Vec<Point>>>()?;
        EmbeddedComplex::new(self.complex()?, coords)
    }
}

pub fn point_strings(p: &Point) -> Vec<String> {
    p.iter().map(format_rat).collect()
}

pub fn parse_point(p: &[String]) -> Result<Point> {
    p.iter().map(|s| parse_rat(s)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermFile {
    pub s: Vec<usize>,
    pub c: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainFile {
    pub dim: usize,
    pub terms: Vec<TermFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
}

impl ChainFile {
    pub fn from_chain(c: &Chain) -> ChainFile {
        ChainFile {
            dim: c.dim(),
            terms: c.terms().map(|(s, k)| TermFile { s: s.vertices().to_vec(), c: k }).collect(),
            ring: (c.ring() == Ring::Z2).then(|| "z2".to_string()),
        }
    }

    pub fn chain(&self) -> Result<Chain> {
        let ring = match &self.ring {
            Some(r) => r.parse()?,
            None => Ring::Z,
        };
        Chain::from_terms(self.dim, ring, self.terms.iter().map(|t| (t.s.clone(), t.c)))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldFile {
    pub vectors: Vec<Vec<String>>,
}

impl FieldFile {
    pub fn from_field(f: &NormalField) -> FieldFile {
        FieldFile { vectors: f.vectors.iter().map(point_strings).collect() }
    }

    pub fn field(&self) -> Result<NormalField> {
        Ok(NormalField { vectors: self.vectors.iter().map(|v| parse_point(v)).collect::<Result<_>>()? })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisFile {
    pub cycles: Vec<ChainFile>,
}

impl BasisFile {
    pub fn from_cycles(cycles: &[Chain]) -> BasisFile {
        BasisFile { cycles: cycles.iter().map(ChainFile::from_chain).collect() }
    }

    pub fn cycles(&self) -> Result<Vec<Chain>> {
        self.cycles.iter().map(ChainFile::chain).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeoTermFile {
    pub points: Vec<Vec<String>>,
    pub c: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeoChainFile {
    pub dim: usize,
    pub terms: Vec<GeoTermFile>,
}

impl GeoChainFile {
    pub fn from_geo(g: &GeoChain) -> GeoChainFile {
        GeoChainFile {
            dim: g.dim(),
            terms: g.terms().map(|(pts, c)| GeoTermFile { points: pts.iter().map(point_strings).collect(), c }).collect(),
        }
    }

    pub fn geo(&self) -> Result<GeoChain> {
        let mut g = GeoChain::zero(self.dim);
        for t in &self.terms {
            g.add_simplex(t.points.iter().map(|p| parse_point(p)).collect::<Result<_>>()?, t.c)?;
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormFile {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub basis_ref: String,
}

impl FormFile {
    pub fn from_form(f: &SymForm) -> FormFile {
        FormFile { matrix: f.matrix.clone(), basis_ref: f.basis_ref.clone() }
    }

    pub fn form(&self) -> Result<SymForm> {
        Ok(SymForm::new(self.matrix.clone())?.with_basis_ref(self.basis_ref.clone()))
    }
}

/// Input of the `degree` command: a vertex map between two oriented closed
/// pseudomanifolds given with fundamental cycles.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub domain: ComplexFile,
    pub domain_fundamental: ChainFile,
    pub codomain: ComplexFile,
    pub codomain_fundamental: ChainFile,
    pub vertex_map: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::standard_complex;

    #[test]
    fn complex_round_trip() {
        let k = standard_complex("torus7").unwrap();
        let text = to_string(&ComplexFile::from_complex(&k));
        let back: ComplexFile = parse(&text, "torus").unwrap();
        assert_eq!(back.complex().unwrap(), k);
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = parse::<ComplexFile>("{\"vertices\": 3,\n \"simplices\": [", "bad.json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bad.json") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn chains_and_points() {
        let f: ChainFile = parse(r#"{"dim":1,"terms":[{"s":[1,0],"c":2}]}"#, "c").unwrap();
        let c = f.chain().unwrap();
        assert_eq!(c.terms().next().unwrap().1, -2);
        let p = parse_point(&["1/2".into(), "-3".into(), "0.25".into()]).unwrap();
        assert_eq!(point_strings(&p), vec!["1/2", "-3", "1/4"]);
        assert!(parse_point(&["x".into()]).is_err());
    }
}
