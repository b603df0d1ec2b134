//! Exact orientation and in-circle tests.
//!
//! Both wrap Shewchuk's adaptive-precision predicates, so the sign is always
//! correct even when the naive floating-point determinant rounds to zero.

use core::cmp::Ordering;

use super::Point2D;

fn coord(p: Point2D) -> robust::Coord<f64> {
    robust::Coord { x: p.x, y: p.y }
}

/// Twice the signed area of (a, b, c): positive when the turn is
/// counterclockwise, negative when clockwise, exactly zero when collinear.
pub fn orient2d(a: Point2D, b: Point2D, c: Point2D) -> f64 {
    robust::orient2d(coord(a), coord(b), coord(c))
}

pub fn orientation(a: Point2D, b: Point2D, c: Point2D) -> Ordering {
    let o = orient2d(a, b, c);
    if o > 0.0 {
        Ordering::Greater
    } else if o < 0.0 {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Positive when `d` lies strictly inside the circle through the
/// counterclockwise triangle (a, b, c), zero when cocircular.
pub fn incircle(a: Point2D, b: Point2D, c: Point2D, d: Point2D) -> f64 {
    robust::incircle(coord(a), coord(b), coord(c), coord(d))
}

/// Exact test for `p` lying on the closed segment `a`-`b`.
pub fn on_segment(p: Point2D, a: Point2D, b: Point2D) -> bool {
    orient2d(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Exact test for the closed segments `p1`-`p2` and `q1`-`q2` sharing a point.
pub fn segments_intersect(p1: Point2D, p2: Point2D, q1: Point2D, q2: Point2D) -> bool {
    let d1 = orient2d(q1, q2, p1);
    let d2 = orient2d(q1, q2, p2);
    let d3 = orient2d(p1, p2, q1);
    let d4 = orient2d(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p1, q1, q2))
        || (d2 == 0.0 && on_segment(p2, q1, q2))
        || (d3 == 0.0 && on_segment(q1, p1, p2))
        || (d4 == 0.0 && on_segment(q2, p1, p2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        let a = Point2D::new(0.0, 0.0);
        let b = Point2D::new(1.0, 0.0);
        assert!(orient2d(a, b, Point2D::new(0.0, 1.0)) > 0.0);
        assert!(orient2d(a, b, Point2D::new(0.0, -1.0)) < 0.0);
        assert_eq!(orient2d(a, b, Point2D::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn near_collinear_is_exact() {
        // The naive determinant of these points rounds to zero.
        let a = Point2D::new(0.5, 0.5);
        let b = Point2D::new(12.0, 12.0);
        let c = Point2D::new(24.0, 24.0 + 4.0 * f64::EPSILON * 24.0);
        assert!(orient2d(a, b, c) > 0.0);
    }

    #[test]
    fn incircle_square_is_cocircular() {
        let a = Point2D::new(0.0, 0.0);
        let b = Point2D::new(1.0, 0.0);
        let c = Point2D::new(1.0, 1.0);
        assert_eq!(incircle(a, b, c, Point2D::new(0.0, 1.0)), 0.0);
        assert!(incircle(a, b, c, Point2D::new(0.5, 0.5)) > 0.0);
        assert!(incircle(a, b, c, Point2D::new(2.0, 2.0)) < 0.0);
    }

    #[test]
    fn touching_segments_intersect() {
        let o = Point2D::new(0.0, 0.0);
        assert!(segments_intersect(
            o,
            Point2D::new(1.0, 0.0),
            Point2D::new(1.0, 0.0),
            Point2D::new(1.0, 1.0)
        ));
        assert!(!segments_intersect(
            o,
            Point2D::new(1.0, 0.0),
            Point2D::new(0.0, 1.0),
            Point2D::new(1.0, 1.0)
        ));
    }
}
