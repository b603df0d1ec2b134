//! Planar primitives in projected metres: shapes, exact predicates, hulls,
//! polyline simplification, containment, clipping and distance queries.

mod assemble;
mod clip;
mod distance;
mod hull;
mod line;
mod pip;
mod point;
pub mod predicates;
mod segment_set;
mod shapes;

pub use assemble::dissolve;
pub use clip::{clip_polygon_to_convex, clip_segments_to_polygon};
pub use distance::{
    min_distance_segment_to_boundary, point_segment_distance, segment_distance, SegmentGrid,
};
pub use hull::convex_hull;
pub use line::{densify_closed, densify_count, simplify_dp, simplify_ring};
pub use pip::{
    locate_in_multipolygon, locate_in_polygon, locate_in_ring, point_in_multipolygon,
    point_in_polygon, Location,
};
pub use point::{BBox, Point2D, Segment};
pub use segment_set::SegmentSet;
pub use shapes::{is_reflex, signed_area, PlanarMultiPolygon, PlanarPolygon, Polyline, Ring};
