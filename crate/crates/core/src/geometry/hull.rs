use alloc::vec::Vec;

use super::predicates::orient2d;
use super::{Point2D, Ring};
use crate::{Error, Result};

/// Convex hull by Andrew's monotone chain with exact orientation tests.
///
/// The ring is counterclockwise, starts at the lexicographically smallest
/// point and has no collinear vertices.
pub fn convex_hull(points: &[Point2D]) -> Result<Ring> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut pts: Vec<Point2D> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateInput(
            "convex hull needs 3 distinct points",
        ));
    }

    let mut hull: Vec<Point2D> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        return Err(Error::DegenerateInput("all points are collinear"));
    }
    Ok(Ring::from_vertices_unchecked(hull))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point2D {
        Point2D::new(x, y)
    }

    #[test]
    fn interior_point_dropped() {
        let h = convex_hull(&[p(0., 0.), p(1., 1.), p(0.5, 0.5), p(1., 0.), p(0., 1.)]).unwrap();
        assert_eq!(h.vertices(), &[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]);
    }

    #[test]
    fn triangle_comes_back_ccw() {
        let h = convex_hull(&[p(0., 0.), p(0., 3.), p(4., 0.)]).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h.signed_area(), 6.0);
    }

    #[test]
    fn collinear_boundary_points_dropped() {
        let h = convex_hull(&[
            p(0., 0.),
            p(1., 0.),
            p(2., 0.),
            p(2., 2.),
            p(0., 2.),
            p(0., 1.),
        ])
        .unwrap();
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            convex_hull(&[p(0., 0.), p(1., 1.), p(2., 2.), p(3., 3.)]),
            Err(Error::DegenerateInput(_))
        ));
        assert!(convex_hull(&[p(0., 0.), p(0., 0.), p(1., 0.)]).is_err());
    }

    /// O(n^3) oracle: (i, j) is a hull edge iff every other point is
    /// strictly left of i->j or on the open segment between them.
    fn brute_force_hull_vertices(pts: &[Point2D]) -> Vec<Point2D> {
        let n = pts.len();
        let mut is_vertex = vec![false; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let edge = (0..n).filter(|&k| k != i && k != j).all(|k| {
                    let o = orient2d(pts[i], pts[j], pts[k]);
                    o > 0.0
                        || (o == 0.0
                            && super::super::predicates::on_segment(pts[k], pts[i], pts[j]))
                });
                if edge {
                    is_vertex[i] = true;
                    is_vertex[j] = true;
                }
            }
        }
        let mut out: Vec<Point2D> = (0..n).filter(|&i| is_vertex[i]).map(|i| pts[i]).collect();
        out.sort_by(|a, b| a.lex_cmp(b));
        out
    }

    #[test]
    fn random_disk_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<Point2D> = (0..200)
            .map(|_| loop {
                let x: f64 = rng.gen_range(-1.0..1.0);
                let y: f64 = rng.gen_range(-1.0..1.0);
                if x * x + y * y <= 1.0 {
                    break p(x * 1000.0, y * 1000.0);
                }
            })
            .collect();
        let hull = convex_hull(&pts).unwrap();
        let mut got = hull.vertices().to_vec();
        got.sort_by(|a, b| a.lex_cmp(b));
        assert_eq!(got, brute_force_hull_vertices(&pts));
        // idempotent
        assert_eq!(convex_hull(hull.vertices()).unwrap(), hull);
    }
}
