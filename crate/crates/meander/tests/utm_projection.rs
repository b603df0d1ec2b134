mod common;

use common::{geographic, p};
use meander::utm::{
    forward, inverse, project_to_utm, Hemisphere, UtmZoneSpec, FLATTENING, SEMI_MAJOR,
};
use meander::IoError;
use meander_core::geometry::{PlanarPolygon, Ring};
use proj4rs::proj::Proj;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zone(s: &str) -> UtmZoneSpec {
    s.parse().unwrap()
}

fn oracle(z: UtmZoneSpec, lon: f64, lat: f64) -> (f64, f64) {
    let south = if z.hemisphere == Hemisphere::South {
        " +south"
    } else {
        ""
    };
    let utm = Proj::from_proj_string(&format!(
        "+proj=utm +zone={}{south} +ellps=GRS80 +units=m +no_defs",
        z.zone
    ))
    .unwrap();
    let geo = Proj::from_proj_string("+proj=longlat +ellps=GRS80 +no_defs").unwrap();
    let mut pt = (lon.to_radians(), lat.to_radians(), 0.0);
    proj4rs::transform::transform(&geo, &utm, &mut pt).unwrap();
    (pt.0, pt.1)
}

#[test]
fn central_meridian_easting_is_exact() {
    for lat in [-80.0, -33.3, 0.0, 12.5, 40.0, 83.9] {
        for z in ["1N", "18N", "18S", "60S"] {
            let z = zone(z);
            assert_eq!(forward(z, z.central_meridian(), lat).unwrap().0, 500_000.0);
        }
    }
}

#[test]
fn single_point_matches_oracle() {
    let z = zone("18N");
    let (e, n) = forward(z, -75.0, 40.0).unwrap();
    let (oe, on) = oracle(z, -75.0, 40.0);
    assert!(
        (e - oe).abs() < 1e-3 && (n - on).abs() < 1e-3,
        "{e} {n} vs {oe} {on}"
    );
}

#[test]
fn random_points_match_oracle_within_a_millimetre() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for z in [zone("18N"), zone("18S"), zone("33N")] {
        let cm = z.central_meridian();
        for _ in 0..100 {
            let lon = cm + rng.gen_range(-3.0..3.0);
            let lat: f64 = rng.gen_range(0.0..84.0);
            let lat = if z.hemisphere == Hemisphere::South {
                -lat
            } else {
                lat
            };
            let (e, n) = forward(z, lon, lat).unwrap();
            let (oe, on) = oracle(z, lon, lat);
            assert!(
                (e - oe).abs() < 1e-3 && (n - on).abs() < 1e-3,
                "{lon} {lat}: {e} {n} vs {oe} {on}"
            );
        }
    }
}

#[test]
fn three_degrees_outside_the_zone_stays_within_a_metre() {
    let z = zone("18N");
    for lat in [10.0, 30.0, 45.0, 60.0] {
        for lon in [-84.0, -66.0] {
            let (e, n) = forward(z, lon, lat).unwrap();
            let (oe, on) = oracle(z, lon, lat);
            assert!((e - oe).abs() < 1.0 && (n - on).abs() < 1.0, "{lon} {lat}");
        }
    }
}

#[test]
fn round_trip_is_tight() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for z in [zone("18N"), zone("17S")] {
        for _ in 0..100 {
            let lon = z.central_meridian() + rng.gen_range(-3.0..3.0);
            let lat: f64 = rng.gen_range(0.0..84.0);
            let lat = if z.hemisphere == Hemisphere::South {
                -lat
            } else {
                lat
            };
            let (e, n) = forward(z, lon, lat).unwrap();
            let (lon2, lat2) = inverse(z, e, n);
            assert!(
                (lon - lon2).abs() < 1e-6 && (lat - lat2).abs() < 1e-6,
                "{lon} {lat} -> {lon2} {lat2}"
            );
        }
    }
}

/// Meridian arc length between two latitudes by Simpson's rule.
fn meridian_arc(lat0: f64, lat1: f64) -> f64 {
    let e2 = FLATTENING * (2.0 - FLATTENING);
    let m = |phi: f64| SEMI_MAJOR * (1.0 - e2) / (1.0 - e2 * phi.sin().powi(2)).powf(1.5);
    let (a, b) = (lat0.to_radians(), lat1.to_radians());
    let n = 64;
    let h = (b - a) / n as f64;
    let mut s = m(a) + m(b);
    for i in 1..n {
        s += m(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn local_scale_at_the_central_meridian() {
    let z = zone("18N");
    let lat0 = 40.0;
    let dlat = 1000.0 / meridian_arc(lat0, lat0 + 0.01) * 0.01;
    let arc = meridian_arc(lat0, lat0 + dlat);
    let (_, n0) = forward(z, -75.0, lat0).unwrap();
    let (_, n1) = forward(z, -75.0, lat0 + dlat).unwrap();
    let ratio = (n1 - n0) / arc;
    assert!((ratio / 0.9996 - 1.0).abs() < 1e-4, "{ratio}");

    // Along the parallel: radius of curvature in the prime vertical.
    let e2 = FLATTENING * (2.0 - FLATTENING);
    let phi = lat0.to_radians();
    let nu = SEMI_MAJOR / (1.0 - e2 * phi.sin().powi(2)).sqrt();
    let dlon = (1000.0 / (nu * phi.cos())).to_degrees();
    let (e0, _) = forward(z, -75.0 - dlon / 2.0, lat0).unwrap();
    let (e1, _) = forward(z, -75.0 + dlon / 2.0, lat0).unwrap();
    assert!(((e1 - e0) / 1000.0 / 0.9996 - 1.0).abs() < 1e-4);
}

#[test]
fn high_latitudes_are_rejected() {
    assert!(matches!(
        forward(zone("18N"), -75.0, 84.01),
        Err(IoError::OutOfDomain(_))
    ));
    assert!(matches!(
        forward(zone("18S"), -75.0, -85.0),
        Err(IoError::OutOfDomain(_))
    ));
}

#[test]
fn features_are_projected_vertex_by_vertex() {
    let z = zone("18N");
    let poly = PlanarPolygon::from_exterior(
        Ring::new(vec![
            p(-75.5, 40.0),
            p(-75.0, 40.0),
            p(-75.0, 40.5),
            p(-75.5, 40.5),
        ])
        .unwrap(),
    )
    .unwrap();
    let f = geographic("42", "01", poly.clone());
    let projected = project_to_utm(&f, z).unwrap();
    assert!(!projected.geometry.is_geographic());
    assert_eq!(projected.properties, f.properties);
    for (g, q) in poly
        .outer()
        .vertices()
        .iter()
        .zip(projected.geometry.multipolygon().vertices())
    {
        let (e, n) = forward(z, g.x, g.y).unwrap();
        assert_eq!((e, n), (q.x, q.y));
    }
    // Already planar features pass through.
    assert_eq!(project_to_utm(&projected, z).unwrap(), projected);

    let polar = geographic(
        "02",
        "00",
        PlanarPolygon::from_exterior(
            Ring::new(vec![p(-75.0, 83.0), p(-74.0, 83.0), p(-74.0, 85.0)]).unwrap(),
        )
        .unwrap(),
    );
    assert!(matches!(
        project_to_utm(&polar, z),
        Err(IoError::OutOfDomain(_))
    ));
}
