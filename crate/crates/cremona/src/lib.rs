//! Exact symbolic computation with plane Cremona maps.
//!
//! The library represents birational self-maps of the projective plane as
//! coprime homogeneous polynomial triples over the rationals (optionally
//! extended by up to two parameter symbols), resolves their base points
//! including infinitely near ones, classifies cubic maps into the 31
//! equivalence types with exact witnesses, and verifies quadratic-length
//! decompositions and bounds.

pub mod batch;
pub mod bubble;
pub mod catalog;
pub mod classify;
pub mod elim;
pub mod error;
pub mod germ;
pub mod graph;
pub mod hompoly;
pub mod lang;
pub mod lengths;
pub mod maps;
pub mod mpoly;
pub mod proj;
pub mod report;
pub mod roots;
pub mod scalar;

pub use classify::{classify, equivalent, param_orbit, Classification, Params};
pub use error::{Error, Result};
pub use lang::{parse_decomposition, parse_map, parse_point, Factor, ParamEnv};
pub use lengths::{
    heights, inverse_from_decomposition, length_facts, oq_lower_bound, transport_point,
    verify_decomposition, InvolutoryQuadratic,
};
pub use maps::{degree_drop, resolve_base_points, BasePointTree, CremonaMap};
pub use proj::{ProjAut, ProjPoint};
pub use scalar::Scalar;
