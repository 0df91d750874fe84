//! Exact computational topology for piecewise-linear cycles and surfaces.
//!
//! The crate computes linking coefficients of disjoint PL cycles, the symmetric
//! Seifert linking form of embedded punctured surfaces in R³, mod-2 intersection
//! forms through simplicial cup products, and twist schedules realizing a target
//! symmetric form. Every geometric decision is made with exact rational or
//! integer arithmetic.

pub mod complex;
pub mod embedding;
pub mod error;
pub mod generators;
pub mod gf2;
pub mod homology;
pub mod io;
pub mod linking;
pub mod lp;
pub mod predicates;
pub mod rational;
pub mod realize;
pub mod report;
pub mod seifert;
pub mod snf;
pub mod verify;

pub use complex::{Chain, Ring, Simplex, SimplicialComplex};
pub use embedding::{EmbeddedComplex, GeoChain, NormalField};
pub use error::{Error, Result};
pub use homology::HomologyBasis;
pub use seifert::{SeifertInput, SymForm};
