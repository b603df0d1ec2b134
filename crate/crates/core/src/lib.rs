//! Approximate medial axes of planar districts and the compactness measures
//! built on them: the medial-hull ratio and Handley's meanderingness measure.
//!
//! Everything here is pure computation over projected (metre) coordinates.
//! The crate is `no_std` and only needs `alloc`; file formats, projections
//! and the command line live in the companion `meander` crate.
//!
//! The main entry points are [`medial::approximate_medial_axis`],
//! [`metrics::medial_hull_ratio`] and [`handley::meanderingness`].
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

mod error;
pub mod geometry;
pub mod handley;
pub mod medial;
pub mod metrics;
pub mod synthetic;
pub mod voronoi;

pub use error::{Error, Result};
pub use geometry::{
    BBox, PlanarMultiPolygon, PlanarPolygon, Point2D, Polyline, Ring, Segment, SegmentSet,
};
pub use handley::{MeanderReport, SeedResult, SeedSampling};
pub use medial::PipelineParams;
pub use metrics::RatioReport;
pub use voronoi::{Triangulation, VoronoiDiagram};
