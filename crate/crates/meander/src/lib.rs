//! Batch processing of district files for the medial-hull ratio and
//! Handley's meanderingness measure.
//!
//! Reads GeoJSON and polygon shapefiles, projects lon/lat to UTM, runs the
//! `meander-core` pipeline and writes CSV reports and SVG overlays. The
//! [`cli`] module holds the `meander` command line.

pub mod cli;
mod error;
pub mod feature;
pub mod geojson;
pub mod report;
pub mod shapefile;
pub mod svg;
pub mod utm;

pub use error::IoError;
pub use feature::{Feature, FeatureGeometry};
pub use meander_core;
