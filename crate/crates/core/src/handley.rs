//! Handley's meanderingness measure.
//!
//! From a seed point, rays are cast around the compass at a fixed angular
//! step; the nearest boundary hit on each ray becomes a vertex of the
//! coverage polygon. The measure is the largest coverage area over a set of
//! seeds divided by the district area, so a district that meanders has a
//! small value.

use alloc::vec::Vec;

use crate::geometry::{
    locate_in_polygon, Location, PlanarMultiPolygon, PlanarPolygon, Point2D, Ring, Segment,
};
use crate::{Error, Result};

/// How seed points are chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum SeedSampling {
    /// Cell centres of a square grid with this spacing over the bounding box.
    Grid(f64),
    /// Exactly these seeds.
    Provided(Vec<Point2D>),
    /// Every `n`-th seed of the list, starting with the first.
    EveryNth(Vec<Point2D>, usize),
    /// A grid yielding about 100 seeds plus the centroid of each part.
    Auto,
}

/// Coverage of one seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeedResult {
    pub seed: Point2D,
    pub coverage_area: f64,
    pub ratio: f64,
}

/// The measure together with every seed that contributed to it.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanderReport {
    pub mu: f64,
    pub seed_results: Vec<SeedResult>,
}

/// Number of rays for a step that divides the full circle, or `InvalidStep`.
pub fn ray_count(step_degrees: f64) -> Result<usize> {
    if !step_degrees.is_finite() || step_degrees <= 0.0 {
        return Err(Error::InvalidStep);
    }
    let n = libm::round(360.0 / step_degrees);
    if n < 3.0 || libm::fabs(n * step_degrees - 360.0) > 1e-9 {
        return Err(Error::InvalidStep);
    }
    Ok(n as usize)
}

/// Compass direction of a bearing in degrees, clockwise from north.
fn bearing_direction(bearing_degrees: f64) -> Point2D {
    let r = bearing_degrees.to_radians();
    Point2D::new(libm::sin(r), libm::cos(r))
}

/// Distance along the ray `origin + t * dir` to the nearest boundary segment.
fn nearest_hit(origin: Point2D, dir: Point2D, reach: f64, boundary: &[Segment]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for e in boundary {
        let f = e.b - e.a;
        let denom = dir.cross(f);
        if denom == 0.0 {
            continue;
        }
        let w = e.a - origin;
        let t = w.cross(f) / denom;
        let u = w.cross(dir) / denom;
        if t > 0.0 && t <= reach && (0.0..=1.0).contains(&u) && best.is_none_or(|b| t < b) {
            best = Some(t);
        }
    }
    best
}

fn coverage_ring(
    seed: Point2D,
    boundary: &[Segment],
    reach: f64,
    rays: usize,
    step: f64,
    start: f64,
) -> Result<Ring> {
    let mut vertices = Vec::with_capacity(rays);
    for i in 0..rays {
        let dir = bearing_direction(start + i as f64 * step);
        let t = nearest_hit(seed, dir, reach, boundary).ok_or(Error::SeedOutsideDistrict)?;
        vertices.push(seed + dir * t);
    }
    Ring::new(vertices)
}

/// Coverage polygon of `seed`: the nearest boundary hit on each ray, in
/// bearing order (clockwise) starting at `start_bearing`.
pub fn coverage_polygon(
    seed: Point2D,
    district: &PlanarPolygon,
    step_degrees: f64,
    start_bearing: f64,
) -> Result<Ring> {
    let rays = ray_count(step_degrees)?;
    if !seed.is_finite() || locate_in_polygon(seed, district) != Location::Inside {
        return Err(Error::SeedOutsideDistrict);
    }
    let boundary: Vec<Segment> = district.boundary_segments().collect();
    coverage_ring(
        seed,
        &boundary,
        2.0 * district.bbox().diagonal(),
        rays,
        step_degrees,
        start_bearing,
    )
}

fn grid_seeds(district: &PlanarMultiPolygon, spacing: f64) -> Vec<Point2D> {
    let Some(b) = district.bbox() else {
        return Vec::new();
    };
    let nx = libm::floor(b.width() / spacing) as usize + 1;
    let ny = libm::floor(b.height() / spacing) as usize + 1;
    let mut seeds = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            seeds.push(Point2D::new(
                b.min.x + (i as f64 + 0.5) * spacing,
                b.min.y + (j as f64 + 0.5) * spacing,
            ));
        }
    }
    seeds
}

/// Candidate seeds of a sampling strategy, before the inside test.
pub fn candidate_seeds(
    district: &PlanarMultiPolygon,
    sampling: &SeedSampling,
) -> Result<Vec<Point2D>> {
    Ok(match sampling {
        SeedSampling::Grid(spacing) => {
            if !spacing.is_finite() || *spacing <= 0.0 {
                return Err(Error::InvalidParams("seed grid spacing must be positive"));
            }
            grid_seeds(district, *spacing)
        }
        SeedSampling::Provided(seeds) => seeds.clone(),
        SeedSampling::EveryNth(seeds, n) => {
            if *n == 0 {
                return Err(Error::InvalidParams("seed stride must be at least 1"));
            }
            seeds.iter().copied().step_by(*n).collect()
        }
        SeedSampling::Auto => {
            let spacing = libm::sqrt(district.area() / 100.0);
            let mut seeds = if spacing > 0.0 {
                grid_seeds(district, spacing)
            } else {
                Vec::new()
            };
            seeds.extend(district.parts().iter().map(|p| p.centroid()));
            seeds
        }
    })
}

/// Meanderingness: the largest coverage-polygon area over the valid seeds
/// divided by the total district area. Seeds not strictly inside the
/// district are skipped.
pub fn meanderingness(
    district: &PlanarMultiPolygon,
    sampling: &SeedSampling,
    step_degrees: f64,
) -> Result<MeanderReport> {
    let rays = ray_count(step_degrees)?;
    let area = district.area();
    if area.is_nan() || area <= 0.0 {
        return Err(Error::DegenerateInput("district has no area"));
    }
    let boundaries: Vec<Vec<Segment>> = district
        .parts()
        .iter()
        .map(|p| p.boundary_segments().collect())
        .collect();
    let reaches: Vec<f64> = district
        .parts()
        .iter()
        .map(|p| 2.0 * p.bbox().diagonal())
        .collect();

    let mut seed_results = Vec::new();
    for seed in candidate_seeds(district, sampling)? {
        if !seed.is_finite() {
            continue;
        }
        let Some(k) = district
            .parts()
            .iter()
            .position(|p| locate_in_polygon(seed, p) == Location::Inside)
        else {
            continue;
        };
        let ring = coverage_ring(seed, &boundaries[k], reaches[k], rays, step_degrees, 0.0)?;
        let coverage_area = libm::fabs(ring.signed_area());
        seed_results.push(SeedResult {
            seed,
            coverage_area,
            ratio: coverage_area / area,
        });
    }
    let mu = seed_results
        .iter()
        .map(|s| s.ratio)
        .fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))))
        .ok_or(Error::NoValidSeeds)?;
    Ok(MeanderReport { mu, seed_results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic;

    #[test]
    fn step_validation() {
        assert_eq!(ray_count(5.0).unwrap(), 72);
        assert_eq!(ray_count(90.0).unwrap(), 4);
        assert_eq!(ray_count(7.0), Err(Error::InvalidStep));
        assert_eq!(ray_count(180.0), Err(Error::InvalidStep));
        assert_eq!(ray_count(0.0), Err(Error::InvalidStep));
    }

    #[test]
    fn unit_square_diamond() {
        let sq = synthetic::rectangle(-0.5, -0.5, 1.0, 1.0);
        let ring = coverage_polygon(Point2D::new(0.0, 0.0), &sq, 90.0, 0.0).unwrap();
        let expected = [(0.0, 0.5), (0.5, 0.0), (0.0, -0.5), (-0.5, 0.0)];
        for (v, e) in ring.vertices().iter().zip(expected) {
            assert!(
                (v.x - e.0).abs() < 1e-12 && (v.y - e.1).abs() < 1e-12,
                "{v:?}"
            );
        }
        assert!((libm::fabs(ring.signed_area()) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn outside_seed_rejected() {
        let sq = synthetic::rectangle(0.0, 0.0, 1.0, 1.0);
        assert_eq!(
            coverage_polygon(Point2D::new(2.0, 2.0), &sq, 5.0, 0.0),
            Err(Error::SeedOutsideDistrict)
        );
        assert_eq!(
            coverage_polygon(Point2D::new(0.0, 0.5), &sq, 5.0, 0.0),
            Err(Error::SeedOutsideDistrict)
        );
        let mp: PlanarMultiPolygon = sq.into();
        assert_eq!(
            meanderingness(
                &mp,
                &SeedSampling::Provided(alloc::vec![Point2D::new(3.0, 3.0)]),
                5.0
            ),
            Err(Error::NoValidSeeds)
        );
    }

    #[test]
    fn every_nth_takes_a_stride() {
        let mp: PlanarMultiPolygon = synthetic::rectangle(0.0, 0.0, 10.0, 10.0).into();
        let seeds: Vec<Point2D> = (0..10).map(|i| Point2D::new(i as f64 + 0.5, 5.0)).collect();
        let c = candidate_seeds(&mp, &SeedSampling::EveryNth(seeds.clone(), 3)).unwrap();
        assert_eq!(c, alloc::vec![seeds[0], seeds[3], seeds[6], seeds[9]]);
    }
}
