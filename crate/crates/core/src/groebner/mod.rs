//! Polynomials over Q, Groebner bases under grevlex, affine dimension and
//! radical membership.

mod buchberger;
mod dimension;
mod monomial;
mod poly;
mod radical;

pub use buchberger::{
    buchberger, buchberger_with_stats, BuchbergerConfig, BuchbergerStats, GroebnerBasis, PairStrategy,
};
pub use dimension::{ideal_dimension, MAX_DIMENSION_VARS};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::MultiPoly;
pub use radical::radical_membership;
