//! Exact computations with unimodular valuations on planar lattice polygons.
//!
//! Polynomials and power series have exact rational coefficients. Lattice
//! polygons are triangulated into unimodular triangles, and valuations are
//! evaluated either triangle by triangle or through vertex cones.

pub mod algebra;
pub mod checks;
pub mod cone;
pub mod error;
pub mod invariant;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod valuation;

pub use algebra::{BivariatePolynomial, LinearForm, Rational, TruncatedSeries};
pub use error::{Error, Result};
pub use lattice::{LatticePoint, LatticePolygon, Triangulation, UnimodularMap};
