//! Lattice points, unimodular maps, lattice polygons and their unimodular
//! triangulations.

mod map;
mod point;
mod polygon;
mod triangulation;

pub use map::UnimodularMap;
pub use point::{orient, LatticePoint};
pub use polygon::{convex_hull, is_unimodular_triangle, LatticePolygon};
pub use triangulation::{triangle_frame, unimodular_triangulate, Triangulation, UnimodularTriangle};
