//! Exact computation of cores of polynomial ideals.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`]: sparse polynomials over the rationals and prime fields;
//! * [`groebner`]: Buchberger's algorithm and ideal arithmetic (membership,
//!   products, intersections, colons, elimination, dimension);
//! * [`newton`]: Newton polyhedra of monomial ideals, integral closure and
//!   adjoint (multiplier) ideals;
//! * [`cores`]: minimal reductions, reduction numbers and the core of an
//!   ideal, computed by a colon formula, by the adjoint formula for monomial
//!   ideals, and by intersecting sampled reductions.

pub mod error;
pub mod poly;

pub use error::{Error, Result};
pub mod cores;
pub mod groebner;
pub mod newton;

pub use groebner::{GroebnerBasis, Ideal};
pub use poly::{Field, Monomial, MonomialOrder, Polynomial, Ring};
