//! Geographic (GRS80 lon/lat) to UTM projection.
//!
//! Transverse Mercator via Krüger's series in the sixth-order form given by
//! Karney (2011), accurate to well under a millimetre within a zone.

use std::fmt;
use std::str::FromStr;

use meander_core::geometry::{PlanarMultiPolygon, Point2D};

use crate::error::IoError;
use crate::feature::{Feature, FeatureGeometry};

/// GRS80 semi-major axis, metres.
pub const SEMI_MAJOR: f64 = 6_378_137.0;
/// GRS80 flattening.
pub const FLATTENING: f64 = 1.0 / 298.257_222_101;
pub const SCALE_FACTOR: f64 = 0.9996;
pub const FALSE_EASTING: f64 = 500_000.0;
pub const FALSE_NORTHING_SOUTH: f64 = 10_000_000.0;
/// Largest absolute latitude accepted, degrees.
pub const MAX_LATITUDE: f64 = 84.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hemisphere {
    North,
    South,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UtmZoneSpec {
    pub zone: u8,
    pub hemisphere: Hemisphere,
}

impl UtmZoneSpec {
    pub fn new(zone: u8, hemisphere: Hemisphere) -> Result<UtmZoneSpec, IoError> {
        if !(1..=60).contains(&zone) {
            return Err(IoError::InvalidZone(zone.to_string()));
        }
        Ok(UtmZoneSpec { zone, hemisphere })
    }

    /// The zone containing a lon/lat point (degrees).
    pub fn containing(lon: f64, lat: f64) -> UtmZoneSpec {
        let lon = (lon + 180.0).rem_euclid(360.0) - 180.0;
        let zone = (((lon + 180.0) / 6.0).floor() as i64 + 1).clamp(1, 60) as u8;
        let hemisphere = if lat >= 0.0 {
            Hemisphere::North
        } else {
            Hemisphere::South
        };
        UtmZoneSpec { zone, hemisphere }
    }

    /// Longitude of the zone's central meridian, degrees.
    pub fn central_meridian(&self) -> f64 {
        6.0 * self.zone as f64 - 183.0
    }

    fn false_northing(&self) -> f64 {
        match self.hemisphere {
            Hemisphere::North => 0.0,
            Hemisphere::South => FALSE_NORTHING_SOUTH,
        }
    }
}

impl fmt::Display for UtmZoneSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.hemisphere {
            Hemisphere::North => 'N',
            Hemisphere::South => 'S',
        };
        write!(f, "{}{}", self.zone, h)
    }
}

impl FromStr for UtmZoneSpec {
    type Err = IoError;

    /// Parses `18N`, `17s` and the like.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || IoError::InvalidZone(s.to_string());
        let (digits, h) = s.split_at(s.len().checked_sub(1).ok_or_else(bad)?);
        let hemisphere = match h {
            "N" | "n" => Hemisphere::North,
            "S" | "s" => Hemisphere::South,
            _ => return Err(bad()),
        };
        let zone: u8 = digits.parse().map_err(|_| bad())?;
        UtmZoneSpec::new(zone, hemisphere).map_err(|_| bad())
    }
}

struct Series {
    e: f64,
    /// Rectifying radius times the scale factor.
    k0a: f64,
    alpha: [f64; 6],
    beta: [f64; 6],
}

fn series() -> Series {
    let f = FLATTENING;
    let n = f / (2.0 - f);
    let (n2, n3, n4, n5, n6) = (n * n, n.powi(3), n.powi(4), n.powi(5), n.powi(6));
    let a = SEMI_MAJOR / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
    let alpha = [
        n / 2.0 - 2.0 * n2 / 3.0 + 5.0 * n3 / 16.0 + 41.0 * n4 / 180.0 - 127.0 * n5 / 288.0
            + 7891.0 * n6 / 37800.0,
        13.0 * n2 / 48.0 - 3.0 * n3 / 5.0 + 557.0 * n4 / 1440.0 + 281.0 * n5 / 630.0
            - 1_983_433.0 * n6 / 1_935_360.0,
        61.0 * n3 / 240.0 - 103.0 * n4 / 140.0
            + 15061.0 * n5 / 26880.0
            + 167_603.0 * n6 / 181_440.0,
        49561.0 * n4 / 161_280.0 - 179.0 * n5 / 168.0 + 6_601_661.0 * n6 / 7_257_600.0,
        34729.0 * n5 / 80640.0 - 3_418_889.0 * n6 / 1_995_840.0,
        212_378_941.0 * n6 / 319_334_400.0,
    ];
    let beta = [
        n / 2.0 - 2.0 * n2 / 3.0 + 37.0 * n3 / 96.0 - n4 / 360.0 - 81.0 * n5 / 512.0
            + 96199.0 * n6 / 604_800.0,
        n2 / 48.0 + n3 / 15.0 - 437.0 * n4 / 1440.0 + 46.0 * n5 / 105.0
            - 1_118_711.0 * n6 / 3_870_720.0,
        17.0 * n3 / 480.0 - 37.0 * n4 / 840.0 - 209.0 * n5 / 4480.0 + 5569.0 * n6 / 90720.0,
        4397.0 * n4 / 161_280.0 - 11.0 * n5 / 504.0 - 830_251.0 * n6 / 7_257_600.0,
        4583.0 * n5 / 161_280.0 - 108_847.0 * n6 / 3_991_680.0,
        20_648_693.0 * n6 / 638_668_800.0,
    ];
    Series {
        e: (f * (2.0 - f)).sqrt(),
        k0a: SCALE_FACTOR * a,
        alpha,
        beta,
    }
}

/// Conformal latitude tangent from the geodetic latitude tangent.
fn conformal_tan(tau: f64, e: f64) -> f64 {
    let sigma = (e * (e * tau / (1.0 + tau * tau).sqrt()).atanh()).sinh();
    tau * (1.0 + sigma * sigma).sqrt() - sigma * (1.0 + tau * tau).sqrt()
}

/// Projects lon/lat degrees to (easting, northing) metres in `zone`.
pub fn forward(zone: UtmZoneSpec, lon: f64, lat: f64) -> Result<(f64, f64), IoError> {
    if !lat.is_finite() || !lon.is_finite() || lat.abs() > MAX_LATITUDE {
        return Err(IoError::OutOfDomain(lat));
    }
    let s = series();
    let phi = lat.to_radians();
    let lambda = (lon - zone.central_meridian()).to_radians();
    let tau_p = conformal_tan(phi.tan(), s.e);
    let xi_p = tau_p.atan2(lambda.cos());
    let eta_p = (lambda.sin() / (tau_p * tau_p + lambda.cos().powi(2)).sqrt()).asinh();
    let (mut xi, mut eta) = (xi_p, eta_p);
    for (j, a) in s.alpha.iter().enumerate() {
        let k = 2.0 * (j + 1) as f64;
        xi += a * (k * xi_p).sin() * (k * eta_p).cosh();
        eta += a * (k * xi_p).cos() * (k * eta_p).sinh();
    }
    Ok((
        FALSE_EASTING + s.k0a * eta,
        zone.false_northing() + s.k0a * xi,
    ))
}

/// Inverse of [`forward`]: (easting, northing) metres to lon/lat degrees.
pub fn inverse(zone: UtmZoneSpec, easting: f64, northing: f64) -> (f64, f64) {
    let s = series();
    let xi = (northing - zone.false_northing()) / s.k0a;
    let eta = (easting - FALSE_EASTING) / s.k0a;
    let (mut xi_p, mut eta_p) = (xi, eta);
    for (j, b) in s.beta.iter().enumerate() {
        let k = 2.0 * (j + 1) as f64;
        xi_p -= b * (k * xi).sin() * (k * eta).cosh();
        eta_p -= b * (k * xi).cos() * (k * eta).sinh();
    }
    let tau_p = xi_p.sin() / (eta_p.sinh().powi(2) + xi_p.cos().powi(2)).sqrt();
    let lambda = eta_p.sinh().atan2(xi_p.cos());
    let e2 = s.e * s.e;
    let mut tau = tau_p;
    for _ in 0..8 {
        let tp = conformal_tan(tau, s.e);
        let step = (tau_p - tp) * (1.0 + (1.0 - e2) * tau * tau)
            / ((1.0 - e2) * (1.0 + tau * tau).sqrt() * (1.0 + tp * tp).sqrt());
        tau += step;
        if step.abs() < 1e-14 * tau.abs().max(1.0) {
            break;
        }
    }
    (
        zone.central_meridian() + lambda.to_degrees(),
        tau.atan().to_degrees(),
    )
}

/// Projects every vertex of a lon/lat multipolygon.
pub fn project_multipolygon(
    geom: &PlanarMultiPolygon,
    zone: UtmZoneSpec,
) -> Result<PlanarMultiPolygon, IoError> {
    // Check the domain once so the infallible map below cannot fail.
    for v in geom.vertices() {
        forward(zone, v.x, v.y)?;
    }
    Ok(geom.map(|v| {
        let (e, n) = forward(zone, v.x, v.y).expect("domain checked above");
        Point2D::new(e, n)
    }))
}

/// Projects a geographic feature; planar features are returned unchanged.
pub fn project_to_utm(feature: &Feature, zone: UtmZoneSpec) -> Result<Feature, IoError> {
    let geometry = match &feature.geometry {
        FeatureGeometry::Geographic(g) => FeatureGeometry::Planar(project_multipolygon(g, zone)?),
        planar @ FeatureGeometry::Planar(_) => planar.clone(),
    };
    Ok(Feature {
        geometry,
        properties: feature.properties.clone(),
    })
}
