//! Rational cones, Hilbert decompositions and vertex-cone valuations.
//!
//! Every vertex term `e^v * N / (l1 l2 ...)` is a [`MeromorphicTerm`]; sums of
//! them are turned into power series by [`resolve`], which fails unless the
//! poles cancel.

mod brion;
mod cones;
mod meromorphic;
mod zeta;

pub use brion::{brion_lattice_gen, exp_integral, exp_integral_cone, lattice_exp_sum, standard_triangle_integral};
pub use cones::{
    balanced_decomposition, hilbert_basis, hilbert_decomposition, primitive, vertex_cone, ConeKind, RationalCone,
};
pub use meromorphic::{resolve, MeromorphicTerm};
pub use zeta::{zeta0, zeta_p, zeta_p_rational, ConeValuationInput, RationalPolygon};
