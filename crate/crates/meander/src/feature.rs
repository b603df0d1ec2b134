use std::collections::BTreeMap;

use meander_core::geometry::{
    locate_in_ring, signed_area, Location, PlanarMultiPolygon, PlanarPolygon, Point2D, Ring,
};

use crate::error::IoError;

pub const STATE_FIELD: &str = "STATEFP";
pub const DISTRICT_FIELD: &str = "CD115FP";

/// Feature geometry tagged with its coordinate reference.
#[derive(Clone, Debug, PartialEq)]
pub enum FeatureGeometry {
    /// Projected metres.
    Planar(PlanarMultiPolygon),
    /// Longitude/latitude degrees, stored as x = lon, y = lat.
    Geographic(PlanarMultiPolygon),
}

impl FeatureGeometry {
    pub fn multipolygon(&self) -> &PlanarMultiPolygon {
        match self {
            FeatureGeometry::Planar(g) | FeatureGeometry::Geographic(g) => g,
        }
    }

    pub fn is_geographic(&self) -> bool {
        matches!(self, FeatureGeometry::Geographic(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Feature {
    pub geometry: FeatureGeometry,
    pub properties: BTreeMap<String, String>,
}

impl Feature {
    pub fn property(&self, key: &str) -> Option<&str> {
        self.properties.get(key).map(String::as_str)
    }

    pub fn state_fips(&self) -> Option<&str> {
        self.property(STATE_FIELD)
    }

    pub fn district_code(&self) -> Option<&str> {
        self.property(DISTRICT_FIELD)
    }
}

pub(crate) fn ring(points: Vec<Point2D>, feature: usize) -> Result<Ring, IoError> {
    Ring::new(points).map_err(|source| IoError::Geometry { feature, source })
}

/// Builds a polygon from an outer ring followed by its holes.
pub(crate) fn polygon(rings: Vec<Vec<Point2D>>, feature: usize) -> Result<PlanarPolygon, IoError> {
    let mut rings = rings.into_iter();
    let outer = rings.next().ok_or(IoError::Malformed(format!(
        "feature {feature}: polygon without rings"
    )))?;
    let outer = ring(outer, feature)?;
    let holes = rings
        .map(|r| ring(r, feature))
        .collect::<Result<Vec<_>, _>>()?;
    PlanarPolygon::new(outer, holes).map_err(|source| IoError::Geometry { feature, source })
}

/// Groups an unordered list of rings into polygons: clockwise rings are
/// exteriors, counter-clockwise rings are holes of the smallest exterior
/// containing them. A hole that fits no exterior is promoted to an exterior.
pub(crate) fn nest_rings(
    rings: Vec<Vec<Point2D>>,
    feature: usize,
) -> Result<PlanarMultiPolygon, IoError> {
    let mut outers: Vec<(Ring, Vec<Ring>)> = Vec::new();
    let mut holes = Vec::new();
    for pts in rings {
        let r = ring(pts, feature)?;
        if signed_area(r.vertices()) < 0.0 {
            outers.push((r, Vec::new()));
        } else {
            holes.push(r);
        }
    }
    for hole in holes {
        let probe = hole.vertices()[0];
        let host = outers
            .iter()
            .enumerate()
            .filter(|(_, (o, _))| locate_in_ring(probe, o) != Location::Outside)
            .min_by(|(_, (a, _)), (_, (b, _))| {
                a.signed_area().abs().total_cmp(&b.signed_area().abs())
            })
            .map(|(i, _)| i);
        match host {
            Some(i) => outers[i].1.push(hole),
            None => outers.push((hole, Vec::new())),
        }
    }
    let parts = outers
        .into_iter()
        .map(|(o, h)| {
            PlanarPolygon::new(o, h).map_err(|source| IoError::Geometry { feature, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PlanarMultiPolygon::new(parts))
}
