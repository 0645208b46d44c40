//! Combinatorial layer of instanton Floer theory for (1,1)-knots: diagram
//! algebra, knot Floer ranks and gradings, bypass certificates, Farey slope
//! arithmetic, grading bookkeeping and surgery certificates.

pub mod bypass;
pub mod curve;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod laurent;
pub mod ledger;
pub mod parse;
pub mod slope;
pub mod surgery;
pub mod svg;
pub mod triangle;

pub use error::{Error, Result};
