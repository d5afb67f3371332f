//! Sparse polynomials over the rationals and Groebner bases.

mod cache;
mod groebner;
mod monomial;
mod order;
mod polynomial;

pub use cache::GroebnerCache;
pub use groebner::{buchberger, normal_form, resume, Budget, BuchbergerOptions, Checkpoint, GroebnerBasis, GroebnerStats};
pub use monomial::Monomial;
pub use order::{MonomialOrder, SubOrder};
pub use polynomial::{rat, Polynomial};
