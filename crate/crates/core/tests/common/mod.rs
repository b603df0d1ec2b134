#![allow(dead_code)]

use std::f64::consts::PI;

use meander_core::geometry::{PlanarMultiPolygon, PlanarPolygon, Point2D, Ring};
use meander_core::synthetic::rectangle;
use rand::Rng;

pub fn p(x: f64, y: f64) -> Point2D {
    Point2D::new(x, y)
}

/// A state big enough never to clip anything near the origin.
pub fn permissive_state() -> PlanarMultiPolygon {
    rectangle(-1e7, -1e7, 2e7, 2e7).into()
}

/// Strictly convex polygon: `n` points at distinct random angles on a
/// rotated ellipse whose major axis is `diameter` long.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, n: usize, diameter: f64) -> PlanarPolygon {
    let a = diameter / 2.0;
    let b = a * rng.gen_range(0.3..1.0);
    let tilt = rng.gen_range(0.0..PI);
    let center = p(rng.gen_range(-1e5..1e5), rng.gen_range(-1e5..1e5));
    let mut angles: Vec<f64> = Vec::with_capacity(n);
    while angles.len() < n {
        let t = rng.gen_range(0.0..2.0 * PI);
        if angles.iter().all(|u| (u - t).abs() > 1e-3) {
            angles.push(t);
        }
    }
    angles.sort_by(f64::total_cmp);
    let (s, c) = tilt.sin_cos();
    let vertices = angles
        .iter()
        .map(|t| {
            let (x, y) = (a * t.cos(), b * t.sin());
            center + p(c * x - s * y, s * x + c * y)
        })
        .collect();
    PlanarPolygon::from_exterior(Ring::new(vertices).unwrap()).unwrap()
}

/// Simple star-shaped polygon with radii drawn from `[r_min, r_max]` at
/// evenly spaced angles.
pub fn random_star_polygon<R: Rng>(rng: &mut R, n: usize, r_min: f64, r_max: f64) -> PlanarPolygon {
    let vertices = (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            let r = rng.gen_range(r_min..r_max);
            p(r * t.cos(), r * t.sin())
        })
        .collect();
    PlanarPolygon::from_exterior(Ring::new(vertices).unwrap()).unwrap()
}
