//! GeoJSON FeatureCollections of Polygon and MultiPolygon features.
//!
//! Coordinates are geographic unless the document carries a legacy `crs`
//! member naming something other than a lon/lat system, in which case they
//! are read as projected metres.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use meander_core::geometry::{PlanarMultiPolygon, PlanarPolygon, Point2D, Ring};
use serde_json::{json, Map, Value};

use crate::error::IoError;
use crate::feature::{self, Feature, FeatureGeometry};

/// CRS name written for planar collections when the caller supplies none.
pub const DEFAULT_PLANAR_CRS: &str = "urn:ogc:def:crs:meander::planar";

const GEOGRAPHIC_EPSG: [&str; 5] = ["4326", "4269", "4258", "4267", "4979"];

pub fn read_geojson<R: Read>(mut input: R) -> Result<Vec<Feature>, IoError> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    parse_geojson(&bytes)
}

pub fn parse_geojson(bytes: &[u8]) -> Result<Vec<Feature>, IoError> {
    let doc: Value = serde_json::from_slice(bytes).map_err(|e| IoError::Parse {
        offset: byte_offset(bytes, e.line(), e.column()),
        message: e.to_string(),
    })?;
    let planar = doc
        .get("crs")
        .and_then(crs_name)
        .is_some_and(|n| !is_geographic_crs(n));
    let features: Vec<&Value> = match doc.get("type").and_then(Value::as_str) {
        Some("FeatureCollection") => doc
            .get("features")
            .and_then(Value::as_array)
            .ok_or_else(|| IoError::Malformed("FeatureCollection without a features array".into()))?
            .iter()
            .collect(),
        Some("Feature") => vec![&doc],
        Some(other) => {
            return Err(IoError::Malformed(format!(
                "expected a FeatureCollection, found {other}"
            )))
        }
        None => return Err(IoError::Malformed("missing type member".into())),
    };
    features
        .into_iter()
        .enumerate()
        .map(|(i, f)| read_feature(f, i, planar))
        .collect()
}

fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    let line_start: usize = bytes
        .split_inclusive(|&b| b == b'\n')
        .take(line.saturating_sub(1))
        .map(<[u8]>::len)
        .sum();
    (line_start + column.saturating_sub(1)).min(bytes.len())
}

fn crs_name(crs: &Value) -> Option<&str> {
    crs.get("properties")?.get("name")?.as_str()
}

fn is_geographic_crs(name: &str) -> bool {
    let upper = name.to_ascii_uppercase();
    if upper.contains("CRS84") || upper.contains("CRS83") {
        return true;
    }
    let code = upper
        .rsplit(|c: char| !c.is_ascii_digit())
        .next()
        .unwrap_or("");
    upper.contains("EPSG") && GEOGRAPHIC_EPSG.contains(&code)
}

fn read_feature(value: &Value, index: usize, planar: bool) -> Result<Feature, IoError> {
    let geometry = value
        .get("geometry")
        .ok_or_else(|| IoError::Malformed(format!("feature {index} has no geometry member")))?;
    let kind = geometry
        .get("type")
        .and_then(Value::as_str)
        .unwrap_or("null");
    let coords = geometry.get("coordinates");
    let parts = match (kind, coords) {
        ("Polygon", Some(c)) => vec![read_polygon(c, index)?],
        ("MultiPolygon", Some(c)) => as_array(c, index)?
            .iter()
            .map(|p| read_polygon(p, index))
            .collect::<Result<Vec<_>, _>>()?,
        ("Polygon" | "MultiPolygon", None) => {
            return Err(IoError::Malformed(format!(
                "feature {index} geometry has no coordinates"
            )))
        }
        (other, _) => return Err(IoError::UnsupportedGeometry(other.to_string())),
    };
    let geom = PlanarMultiPolygon::new(parts);
    let mut properties = BTreeMap::new();
    if let Some(props) = value.get("properties").and_then(Value::as_object) {
        for (k, v) in props {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                other => other.to_string(),
            };
            properties.insert(k.clone(), text);
        }
    }
    let geometry = if planar {
        FeatureGeometry::Planar(geom)
    } else {
        FeatureGeometry::Geographic(geom)
    };
    Ok(Feature {
        geometry,
        properties,
    })
}

fn as_array(v: &Value, index: usize) -> Result<&Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| {
        IoError::Malformed(format!("feature {index}: expected an array of coordinates"))
    })
}

fn read_polygon(v: &Value, index: usize) -> Result<PlanarPolygon, IoError> {
    let rings = as_array(v, index)?
        .iter()
        .map(|r| {
            as_array(r, index)?
                .iter()
                .map(|pos| read_position(pos, index))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    feature::polygon(rings, index)
}

fn read_position(v: &Value, index: usize) -> Result<Point2D, IoError> {
    let pos = as_array(v, index)?;
    match (
        pos.first().and_then(Value::as_f64),
        pos.get(1).and_then(Value::as_f64),
    ) {
        (Some(x), Some(y)) => Ok(Point2D::new(x, y)),
        _ => Err(IoError::Malformed(format!(
            "feature {index}: position needs two numbers"
        ))),
    }
}

/// Writes a FeatureCollection. Planar collections get a `crs` member so the
/// reader keeps them planar; `planar_crs` names it.
pub fn write_geojson<W: Write>(
    features: &[Feature],
    planar_crs: Option<&str>,
    mut out: W,
) -> Result<(), IoError> {
    let mut doc = Map::new();
    doc.insert("type".into(), json!("FeatureCollection"));
    if features.iter().any(|f| !f.geometry.is_geographic()) {
        let name = planar_crs.unwrap_or(DEFAULT_PLANAR_CRS);
        doc.insert(
            "crs".into(),
            json!({"type": "name", "properties": {"name": name}}),
        );
    }
    let list: Vec<Value> = features
        .iter()
        .map(|f| {
            json!({
                "type": "Feature",
                "properties": f.properties,
                "geometry": geometry_value(f.geometry.multipolygon()),
            })
        })
        .collect();
    doc.insert("features".into(), Value::Array(list));
    serde_json::to_writer(&mut out, &Value::Object(doc)).map_err(std::io::Error::from)?;
    out.flush()?;
    Ok(())
}

fn ring_value(ring: &Ring) -> Value {
    let vs = ring.vertices();
    Value::Array(
        vs.iter()
            .chain(vs.first())
            .map(|p| json!([p.x, p.y]))
            .collect(),
    )
}

fn geometry_value(mp: &PlanarMultiPolygon) -> Value {
    let polygon = |p: &PlanarPolygon| Value::Array(p.rings().map(ring_value).collect());
    match mp.parts() {
        [single] => json!({"type": "Polygon", "coordinates": polygon(single)}),
        parts => {
            json!({"type": "MultiPolygon", "coordinates": parts.iter().map(polygon).collect::<Vec<_>>()})
        }
    }
}
