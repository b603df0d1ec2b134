//! Minimal ESRI shapefile reader: polygon (type 5) `.shp` plus `.dbf` attributes.
//!
//! Coordinates are taken as lon/lat degrees, as in TIGER/Line files.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use meander_core::geometry::{PlanarMultiPolygon, Point2D};

use crate::error::IoError;
use crate::feature::{nest_rings, Feature, FeatureGeometry};

const FILE_CODE: i32 = 9994;
const HEADER_LEN: usize = 100;
const RECORD_HEADER_LEN: usize = 8;
const SHAPE_NULL: i32 = 0;
const SHAPE_POLYGON: i32 = 5;

fn be_i32(b: &[u8], at: usize) -> i32 {
    i32::from_be_bytes(b[at..at + 4].try_into().unwrap())
}

fn le_i32(b: &[u8], at: usize) -> i32 {
    i32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

fn le_f64(b: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(b[at..at + 8].try_into().unwrap())
}

/// Reads a `.shp`/`.dbf` pair. Null shapes are skipped along with their
/// attribute row.
pub fn read_shapefile<S: Read, D: Read>(mut shp: S, mut dbf: D) -> Result<Vec<Feature>, IoError> {
    let mut shp_bytes = Vec::new();
    shp.read_to_end(&mut shp_bytes)?;
    let mut dbf_bytes = Vec::new();
    dbf.read_to_end(&mut dbf_bytes)?;
    let shapes = parse_shp(&shp_bytes)?;
    let rows = parse_dbf(&dbf_bytes)?;
    if rows.len() != shapes.len() {
        return Err(IoError::Dbf(format!(
            "{} attribute rows for {} shapes",
            rows.len(),
            shapes.len()
        )));
    }
    Ok(shapes
        .into_iter()
        .zip(rows)
        .filter_map(|(shape, properties)| {
            shape.map(|g| Feature {
                geometry: FeatureGeometry::Geographic(g),
                properties,
            })
        })
        .collect())
}

/// Opens `path` and the `.dbf` beside it.
pub fn read_shapefile_path(path: &Path) -> Result<Vec<Feature>, IoError> {
    let mut dbf_path = path.with_extension("dbf");
    if !dbf_path.exists() {
        let upper = path.with_extension("DBF");
        if upper.exists() {
            dbf_path = upper;
        }
    }
    read_shapefile(fs::File::open(path)?, fs::File::open(dbf_path)?)
}

/// Parses every record of a `.shp` file; `None` marks a null shape.
pub fn parse_shp(bytes: &[u8]) -> Result<Vec<Option<PlanarMultiPolygon>>, IoError> {
    if bytes.len() < HEADER_LEN {
        return Err(IoError::RecordLengthMismatch { record: 0 });
    }
    let code = be_i32(bytes, 0);
    if code != FILE_CODE {
        return Err(IoError::BadMagic(code));
    }
    let declared = usize::try_from(be_i32(bytes, 24)).unwrap_or(0) * 2;
    let shape_type = le_i32(bytes, 32);
    if shape_type != SHAPE_POLYGON {
        return Err(IoError::ShapeTypeUnsupported(shape_type));
    }
    if declared < HEADER_LEN {
        return Err(IoError::RecordLengthMismatch { record: 0 });
    }
    let end = declared;
    let mut shapes = Vec::new();
    let mut at = HEADER_LEN;
    while at < end {
        let record = shapes.len() + 1;
        let mismatch = IoError::RecordLengthMismatch { record };
        if at + RECORD_HEADER_LEN > end.min(bytes.len()) {
            return Err(mismatch);
        }
        let len = usize::try_from(be_i32(bytes, at + 4))
            .map_err(|_| IoError::RecordLengthMismatch { record })?
            * 2;
        let start = at + RECORD_HEADER_LEN;
        if start + len > end.min(bytes.len()) {
            return Err(mismatch);
        }
        shapes.push(parse_record(&bytes[start..start + len], record)?);
        at = start + len;
    }
    Ok(shapes)
}

fn parse_record(b: &[u8], record: usize) -> Result<Option<PlanarMultiPolygon>, IoError> {
    let mismatch = || IoError::RecordLengthMismatch { record };
    if b.len() < 4 {
        return Err(mismatch());
    }
    match le_i32(b, 0) {
        SHAPE_NULL => return Ok(None),
        SHAPE_POLYGON => {}
        other => return Err(IoError::ShapeTypeUnsupported(other)),
    }
    if b.len() < 44 {
        return Err(mismatch());
    }
    let parts = usize::try_from(le_i32(b, 36)).map_err(|_| mismatch())?;
    let points = usize::try_from(le_i32(b, 40)).map_err(|_| mismatch())?;
    let points_at = 44 + 4 * parts;
    if parts
        .checked_mul(4)
        .zip(points.checked_mul(16))
        .map(|(a, c)| 44 + a + c)
        != Some(b.len())
    {
        return Err(mismatch());
    }
    let mut starts = (0..parts)
        .map(|i| usize::try_from(le_i32(b, 44 + 4 * i)).map_err(|_| mismatch()))
        .collect::<Result<Vec<_>, _>>()?;
    starts.push(points);
    if parts == 0 {
        return Err(IoError::Malformed(format!("record {record} has no rings")));
    }
    if starts[0] != 0 || starts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(mismatch());
    }
    let rings = starts
        .windows(2)
        .map(|w| {
            (w[0]..w[1])
                .map(|k| {
                    let o = points_at + 16 * k;
                    Point2D::new(le_f64(b, o), le_f64(b, o + 8))
                })
                .collect()
        })
        .collect();
    nest_rings(rings, record - 1).map(Some)
}

/// Parses a dBASE III table, returning every field as trimmed text.
pub fn parse_dbf(bytes: &[u8]) -> Result<Vec<BTreeMap<String, String>>, IoError> {
    let short = || IoError::Dbf("file is truncated".into());
    if bytes.len() < 32 {
        return Err(short());
    }
    let count = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let header_len = u16::from_le_bytes([bytes[8], bytes[9]]) as usize;
    let record_len = u16::from_le_bytes([bytes[10], bytes[11]]) as usize;
    let mut fields = Vec::new();
    let mut at = 32;
    while at < header_len && bytes.get(at).copied() != Some(0x0d) {
        let desc = bytes.get(at..at + 32).ok_or_else(short)?;
        let name_end = desc[..11].iter().position(|&c| c == 0).unwrap_or(11);
        let name = String::from_utf8_lossy(&desc[..name_end])
            .trim()
            .to_string();
        fields.push((name, desc[16] as usize));
        at += 32;
    }
    let width: usize = 1 + fields.iter().map(|(_, w)| w).sum::<usize>();
    if width != record_len {
        return Err(IoError::Dbf(format!(
            "field widths sum to {width}, header says {record_len}"
        )));
    }
    let mut rows = Vec::with_capacity(count);
    for r in 0..count {
        let start = header_len + r * record_len;
        let rec = bytes.get(start..start + record_len).ok_or_else(short)?;
        let mut row = BTreeMap::new();
        let mut o = 1;
        for (name, w) in &fields {
            let text = String::from_utf8_lossy(&rec[o..o + w]).trim().to_string();
            row.insert(name.clone(), text);
            o += w;
        }
        rows.push(row);
    }
    Ok(rows)
}
