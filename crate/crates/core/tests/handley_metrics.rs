mod common;

use std::f64::consts::PI;

use common::{p, permissive_state, random_convex_polygon};
use meander_core::geometry::{
    point_in_polygon, point_segment_distance, PlanarMultiPolygon, Point2D,
};
use meander_core::handley::{coverage_polygon, meanderingness, SeedSampling};
use meander_core::medial::PipelineParams;
use meander_core::metrics::{categorize, medial_hull_ratio, statewide_average, RatioReport};
use meander_core::synthetic::{rectangle, regular_polygon, three_arm_spiral, SpiralParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Area ratio of a regular `rays`-gon inscribed in a circle, relative to the circle.
fn inscribed_ratio(rays: usize) -> f64 {
    rays as f64 / (2.0 * PI) * (2.0 * PI / rays as f64).sin()
}

#[test]
fn disk_center_seed_gives_inscribed_72_gon() {
    let disk = regular_polygon(p(0.0, 0.0), 10_000.0, 360, 0.0);
    let ring = coverage_polygon(p(0.0, 0.0), &disk, 5.0, 0.0).unwrap();
    assert_eq!(ring.len(), 72);
    let report = meanderingness(
        &disk.clone().into(),
        &SeedSampling::Provided(vec![p(0.0, 0.0)]),
        5.0,
    )
    .unwrap();
    let circle_ratio = report.seed_results[0].coverage_area / (PI * 1e8);
    assert!(
        (circle_ratio - inscribed_ratio(72)).abs() < 1e-12 + 2e-4,
        "{circle_ratio}"
    );
    // Relative to the 360-gon itself the value is slightly higher.
    assert!((report.mu - 0.99873).abs() < 5e-4, "{}", report.mu);
}

#[test]
fn unit_square_grid_seeds() {
    let sq: PlanarMultiPolygon = rectangle(0.0, 0.0, 1.0, 1.0).into();
    let report = meanderingness(&sq, &SeedSampling::Grid(0.02), 5.0).unwrap();
    assert_eq!(report.seed_results.len(), 2500);
    assert!(report.mu < 1.0 && report.mu > 0.99, "{}", report.mu);
}

#[test]
fn spiral_arm_seed_sees_little() {
    let params = SpiralParams::default();
    let spiral = three_arm_spiral(&params).unwrap();
    // Second corner of the first arm, on its centre line.
    let (r, t) = (
        params.first_corner_radius + params.corner_step,
        params.phase + 2.0 * PI / 3.0,
    );
    let seed = p(r * t.cos(), r * t.sin());
    assert!(point_in_polygon(seed, &spiral));
    let arm = coverage_polygon(seed, &spiral, 5.0, 0.0).unwrap();
    let core = coverage_polygon(p(0.0, 0.0), &spiral, 5.0, 0.0).unwrap();
    assert!(arm.signed_area().abs() < 0.1 * core.signed_area().abs());
}

#[test]
fn coverage_vertices_lie_on_the_boundary() {
    let spiral = three_arm_spiral(&SpiralParams::default()).unwrap();
    let ring = coverage_polygon(p(100.0, -50.0), &spiral, 5.0, 0.0).unwrap();
    let edges: Vec<_> = spiral.boundary_segments().collect();
    for v in ring.vertices() {
        let d = edges
            .iter()
            .map(|e| point_segment_distance(*v, e.a, e.b))
            .fold(f64::INFINITY, f64::min);
        assert!(d < 1e-6, "{v:?} is {d} from the boundary");
    }
}

#[test]
fn convex_districts_contain_their_coverage() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let poly = random_convex_polygon(&mut rng, 30, 20_000.0);
        let c = poly.centroid();
        let ring = coverage_polygon(c, &poly, 5.0, 0.0).unwrap();
        for v in ring.vertices() {
            let shrunk = c + (*v - c) * (1.0 - 1e-9);
            assert!(point_in_polygon(shrunk, &poly));
        }
        let report = meanderingness(&poly.into(), &SeedSampling::Auto, 5.0).unwrap();
        assert!(report.mu <= 1.0 + 1e-12);
    }
}

#[test]
fn mu_is_invariant_under_rigid_motion() {
    let spiral: PlanarMultiPolygon = three_arm_spiral(&SpiralParams::default()).unwrap().into();
    let seeds: Vec<Point2D> = (0..20)
        .map(|i| p(-4_000.0 + 400.0 * i as f64, 300.0 * (i % 3) as f64))
        .collect();
    let base = meanderingness(&spiral, &SeedSampling::Provided(seeds.clone()), 5.0)
        .unwrap()
        .mu;
    // Rays are tied to the compass, so only translations and quarter turns
    // map the ray fan onto itself.
    let motions: [fn(Point2D) -> Point2D; 3] = [
        |q| q + Point2D::new(512_000.0, 4_096_000.0),
        |q| Point2D::new(-q.y, q.x),
        |q| Point2D::new(q.y, -q.x) + Point2D::new(-1_024.0, 2_048.0),
    ];
    for m in motions {
        let moved = spiral.map(m);
        let mu = meanderingness(
            &moved,
            &SeedSampling::Provided(seeds.iter().map(|&s| m(s)).collect()),
            5.0,
        )
        .unwrap()
        .mu;
        assert!((mu - base).abs() < 1e-9, "{mu} vs {base}");
    }
}

#[test]
fn convex_district_ratio_is_exactly_one() {
    let district: PlanarMultiPolygon = rectangle(0.0, 0.0, 40_000.0, 10_000.0).into();
    let report =
        medial_hull_ratio(&district, &permissive_state(), &PipelineParams::default()).unwrap();
    assert_eq!(report.ratio, 1.0);
    assert_eq!(report.category, 1);
}

#[test]
fn spiral_is_category_four() {
    let spiral: PlanarMultiPolygon = three_arm_spiral(&SpiralParams::default()).unwrap().into();
    let report =
        medial_hull_ratio(&spiral, &permissive_state(), &PipelineParams::default()).unwrap();
    assert!(report.ratio >= 2.8, "{report:?}");
    assert_eq!(report.category, 4);
    assert!(
        (report.ratio * report.hull_length - report.medial_length).abs()
            <= 1e-9 * report.medial_length
    );
    let mu = meanderingness(&spiral, &SeedSampling::Auto, 5.0)
        .unwrap()
        .mu;
    assert!((0.5..=0.75).contains(&mu), "{mu}");
}

#[test]
fn statewide_average_is_order_independent() {
    let r = |id: &str, ratio: f64| {
        RatioReport::from_lengths(ratio * 10.0, 10.0)
            .unwrap()
            .labeled("42", id)
    };
    let a = [r("01", 1.3), r("02", 2.9), r("03", 2.1), r("04", 1.7)];
    let mut b = a.clone();
    b.reverse();
    assert_eq!(
        statewide_average(&a).unwrap(),
        statewide_average(&b).unwrap()
    );
}

proptest! {
    #[test]
    fn categorize_is_monotone(a in 0f64..10.0, b in 0f64..10.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (cl, ch) = (categorize(lo).unwrap(), categorize(hi).unwrap());
        prop_assert!(cl <= ch);
        prop_assert!((1..=4).contains(&cl) && (1..=4).contains(&ch));
    }
}
