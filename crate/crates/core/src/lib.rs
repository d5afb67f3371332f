//! Exact computation of SL(2,C) character varieties of finitely presented
//! groups, and a Groebner-basis test for whether the coordinate ring is a
//! finitely generated module over the polynomial ring of one trace function.
//!
//! The pipeline is
//!
//! 1. [`presentation`]: parse generators, relators and peripheral words;
//! 2. [`trace`]: rewrite trace functions of words as polynomials in the
//!    canonical trace coordinates;
//! 3. [`variety`]: build the defining ideal and adjoin a slope coordinate `s`;
//! 4. [`poly`]: compute a reduced Groebner basis under a block order;
//! 5. [`finiteness`]: read off module finiteness over `Q[s]` and report.

pub mod cli;
pub mod error;
pub mod finiteness;
pub mod poly;
pub mod presentation;
pub mod trace;
pub mod variety;

pub use error::{Error, Result};
pub use finiteness::{detect, module_finiteness, Conclusion, DetectionReport, FinitenessVerdict};
pub use poly::{buchberger, normal_form, GroebnerBasis, Monomial, MonomialOrder, Polynomial};
pub use presentation::{GroupPresentation, Letter, Word};
pub use trace::{basis_coordinates, numeric_trace, Mat2, ReductionEngine, TraceCoordinate};
pub use variety::{augment_with_slope, free_group_relations, relator_equations, variety_ideal, variety_ideal_with, VarietyIdeal};
