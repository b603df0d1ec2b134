#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use meander::geojson::write_geojson;
use meander::{Feature, FeatureGeometry};
use meander_core::geometry::{PlanarMultiPolygon, Point2D};

pub fn p(x: f64, y: f64) -> Point2D {
    Point2D::new(x, y)
}

pub fn props(state: &str, district: &str) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("STATEFP".to_string(), state.to_string()),
        ("CD115FP".to_string(), district.to_string()),
    ])
}

pub fn planar(state: &str, district: &str, geom: impl Into<PlanarMultiPolygon>) -> Feature {
    Feature {
        geometry: FeatureGeometry::Planar(geom.into()),
        properties: props(state, district),
    }
}

pub fn geographic(state: &str, district: &str, geom: impl Into<PlanarMultiPolygon>) -> Feature {
    Feature {
        geometry: FeatureGeometry::Geographic(geom.into()),
        properties: props(state, district),
    }
}

pub fn write_features(dir: &Path, name: &str, features: &[Feature]) -> PathBuf {
    let path = dir.join(name);
    let file = std::fs::File::create(&path).unwrap();
    write_geojson(features, None, file).unwrap();
    path
}

/// Runs the `meander` binary.
pub fn meander(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meander"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Builds `.shp` bytes for polygon records, following the published layout:
/// a 100-byte header with big-endian file code and length, then records with
/// big-endian headers and little-endian content.
/// Rings of one record; `None` is a null shape.
pub type Record = Option<Vec<Vec<(f64, f64)>>>;

pub fn shp_bytes(records: &[Record]) -> Vec<u8> {
    let mut body = Vec::new();
    let mut all = Vec::new();
    for (i, rec) in records.iter().enumerate() {
        let mut content = Vec::new();
        match rec {
            None => content.extend(0i32.to_le_bytes()),
            Some(rings) => {
                let pts: Vec<(f64, f64)> = rings.iter().flatten().copied().collect();
                all.extend(pts.iter().copied());
                content.extend(5i32.to_le_bytes());
                for v in bbox(&pts) {
                    content.extend(v.to_le_bytes());
                }
                content.extend((rings.len() as i32).to_le_bytes());
                content.extend((pts.len() as i32).to_le_bytes());
                let mut start = 0i32;
                for r in rings {
                    content.extend(start.to_le_bytes());
                    start += r.len() as i32;
                }
                for (x, y) in pts {
                    content.extend(x.to_le_bytes());
                    content.extend(y.to_le_bytes());
                }
            }
        }
        body.extend((i as i32 + 1).to_be_bytes());
        body.extend(((content.len() / 2) as i32).to_be_bytes());
        body.extend(content);
    }
    let mut out = Vec::new();
    out.extend(9994i32.to_be_bytes());
    out.extend([0u8; 20]);
    out.extend((((100 + body.len()) / 2) as i32).to_be_bytes());
    out.extend(1000i32.to_le_bytes());
    out.extend(5i32.to_le_bytes());
    for v in bbox(&all) {
        out.extend(v.to_le_bytes());
    }
    out.extend([0u8; 32]);
    assert_eq!(out.len(), 100);
    out.extend(body);
    out
}

fn bbox(pts: &[(f64, f64)]) -> [f64; 4] {
    let mut b = [
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    ];
    for &(x, y) in pts {
        b = [b[0].min(x), b[1].min(y), b[2].max(x), b[3].max(y)];
    }
    if pts.is_empty() {
        [0.0; 4]
    } else {
        b
    }
}

/// Builds a dBASE III table with character fields.
pub fn dbf_bytes(fields: &[(&str, usize)], rows: &[Vec<&str>]) -> Vec<u8> {
    let record_len = 1 + fields.iter().map(|f| f.1).sum::<usize>();
    let header_len = 32 + 32 * fields.len() + 1;
    let mut out = vec![0x03, 118, 1, 1];
    out.extend((rows.len() as u32).to_le_bytes());
    out.extend((header_len as u16).to_le_bytes());
    out.extend((record_len as u16).to_le_bytes());
    out.extend([0u8; 20]);
    for (name, width) in fields {
        let mut desc = [0u8; 32];
        desc[..name.len()].copy_from_slice(name.as_bytes());
        desc[11] = b'C';
        desc[16] = *width as u8;
        out.extend(desc);
    }
    out.push(0x0d);
    for row in rows {
        out.push(b' ');
        for ((_, width), value) in fields.iter().zip(row) {
            let mut cell = value.as_bytes().to_vec();
            cell.resize(*width, b' ');
            out.extend(cell);
        }
    }
    out.push(0x1a);
    out
}
