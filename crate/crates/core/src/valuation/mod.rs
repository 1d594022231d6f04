//! Concrete valuations on lattice polygons and the calculus used to probe them.

mod calculus;
mod dims;
mod moments;
mod one_two;
mod probes;

pub use calculus::{
    associated_valuations, dilative_components, homogeneous_components, rank_of_family, Evaluator,
    SeriesEvaluator, ValuationHandle, ValuationTags,
};
pub use dims::{predicted_dilative_dim, predicted_tensor_dim, DilativeRow, DimensionProbe, DimsRow};
pub use moments::{discrete_moment, ehrhart_tensor_coeffs, interpolate_polys, EhrhartTensorTable};
pub use one_two::{
    basis_generator, basis_valuation, triangle_generators, z2_from_f, z_f, z_f_on, TwoHomogeneousLift,
};
pub use probes::{
    fixed_probes, probe_set, random_hull, random_translation, random_unimodular_map, DEFAULT_PROBE_SEED,
};
