use std::io;

use thiserror::Error;

/// Failures while reading, projecting or writing district data.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("unsupported geometry type {0}")]
    UnsupportedGeometry(String),
    #[error("bad shapefile magic number {0} (expected 9994)")]
    BadMagic(i32),
    #[error("unsupported shape type {0} (only polygons, type 5, are read)")]
    ShapeTypeUnsupported(i32),
    #[error("record {record} does not match its declared length")]
    RecordLengthMismatch { record: usize },
    #[error("dbf: {0}")]
    Dbf(String),
    #[error("latitude {0} outside the UTM domain")]
    OutOfDomain(f64),
    #[error("invalid UTM zone {0:?}")]
    InvalidZone(String),
    #[error("feature {feature}: {source}")]
    Geometry {
        feature: usize,
        #[source]
        source: meander_core::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}
