//! Synthetic district shapes with known medial axes, used by tests and
//! demos: regular polygons, rectangles and a three-arm spiral.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::geometry::{PlanarPolygon, Point2D, Ring};
use crate::Result;

fn polar(angle: f64, radius: f64) -> Point2D {
    Point2D::new(radius * libm::cos(angle), radius * libm::sin(angle))
}

/// Regular `n`-gon inscribed in a circle; the first vertex sits at angle
/// `phase` (radians, counterclockwise from +x).
pub fn regular_polygon(center: Point2D, radius: f64, n: usize, phase: f64) -> PlanarPolygon {
    let vertices = (0..n)
        .map(|i| center + polar(phase + 2.0 * PI * i as f64 / n as f64, radius))
        .collect();
    PlanarPolygon::from_exterior(Ring::new(vertices).expect("n >= 3")).expect("non-zero area")
}

/// Axis-aligned rectangle with lower-left corner `(x0, y0)`.
pub fn rectangle(x0: f64, y0: f64, width: f64, height: f64) -> PlanarPolygon {
    let ring = Ring::new(alloc::vec![
        Point2D::new(x0, y0),
        Point2D::new(x0 + width, y0),
        Point2D::new(x0 + width, y0 + height),
        Point2D::new(x0, y0 + height),
    ])
    .expect("four corners");
    PlanarPolygon::from_exterior(ring).expect("non-zero area")
}

/// Length of the medial axis of a `length` x `width` rectangle
/// (`length >= width`) after trimming a `buffer` band along the boundary:
/// the central spine plus four corner bisectors, each shortened by the
/// part that lies within `buffer` of the sides.
pub fn pruned_rectangle_axis_length(length: f64, width: f64, buffer: f64) -> f64 {
    let sqrt2 = core::f64::consts::SQRT_2;
    (length - width) + 2.0 * sqrt2 * width - 4.0 * sqrt2 * buffer
}

/// Shape of [`three_arm_spiral`]. Lengths are in metres.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpiralParams {
    /// Circumradius of the triangular core.
    pub core_radius: f64,
    pub arm_width: f64,
    /// Distance from the centre to the first corner of every arm.
    pub first_corner_radius: f64,
    /// Growth of the corner radius from one corner to the next.
    pub corner_step: f64,
    /// Number of legs after the first corner; a fractional part shortens
    /// the last leg.
    pub legs: f64,
    /// Sideways swing of the zigzag each leg follows; 0 gives straight legs.
    pub zigzag_amplitude: f64,
    /// Approximate distance along a leg between zigzag vertices.
    pub zigzag_spacing: f64,
    /// Direction of the first arm, radians counterclockwise from +x.
    pub phase: f64,
}

impl Default for SpiralParams {
    fn default() -> Self {
        SpiralParams {
            core_radius: 13_000.0,
            arm_width: 1_000.0,
            first_corner_radius: 15_000.0,
            corner_step: 3_200.0,
            legs: 1.5,
            zigzag_amplitude: 400.0,
            zigzag_spacing: 2_000.0,
            phase: PI / 2.0,
        }
    }
}

/// Intersection of the lines `p + s*d` and `q + t*e`.
fn line_intersection(p: Point2D, d: Point2D, q: Point2D, e: Point2D) -> Point2D {
    let denom = d.cross(e);
    if denom == 0.0 {
        return q;
    }
    p + d * ((q - p).cross(e) / denom)
}

/// Right and left offsets of an open polyline. Corners use miter joins,
/// except that the outer side of turns sharper than 120 degrees is bevelled.
fn offset_sides(line: &[Point2D], half_width: f64) -> (Vec<Point2D>, Vec<Point2D>) {
    let dirs: Vec<Point2D> = line
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            d * (1.0 / d.norm())
        })
        .collect();
    let right_of = |d: Point2D| Point2D::new(d.y, -d.x) * half_width;
    let mut right = Vec::with_capacity(line.len());
    let mut left = Vec::with_capacity(line.len());
    for (i, &p) in line.iter().enumerate() {
        if i == 0 || i == line.len() - 1 {
            let d = dirs[i.min(dirs.len() - 1)];
            right.push(p + right_of(d));
            left.push(p - right_of(d));
        } else {
            let (d0, d1) = (dirs[i - 1], dirs[i]);
            let turn = d0.cross(d1);
            let sharp = d0.dot(d1) < -0.5 - 1e-12;
            let right_miter = line_intersection(p + right_of(d0), d0, p + right_of(d1), d1);
            let left_miter = line_intersection(p - right_of(d0), d0, p - right_of(d1), d1);
            if sharp && turn > 0.0 {
                right.extend([p + right_of(d0), p + right_of(d1)]);
            } else {
                right.push(right_miter);
            }
            if sharp && turn < 0.0 {
                left.extend([p - right_of(d0), p - right_of(d1)]);
            } else {
                left.push(left_miter);
            }
        }
    }
    (right, left)
}

/// Centre line of one arm: from inside the core out to the first corner,
/// then counterclockwise along legs that each turn 120 degrees.
fn arm_centerline(params: &SpiralParams, direction: f64) -> Vec<Point2D> {
    let third = 2.0 * PI / 3.0;
    let base = params.core_radius - params.arm_width * libm::sqrt(3.0) / 2.0;
    let corner = |j: f64| {
        polar(
            direction + j * third,
            params.first_corner_radius + j * params.corner_step,
        )
    };
    let mut line = alloc::vec![polar(direction, base), corner(0.0)];
    let whole = libm::floor(params.legs) as usize;
    for j in 1..=whole {
        zigzag_to(&mut line, corner(j as f64), params);
    }
    let frac = params.legs - whole as f64;
    if frac > 0.0 {
        let last = corner(whole as f64);
        zigzag_to(
            &mut line,
            last.lerp(corner(whole as f64 + 1.0), frac),
            params,
        );
    }
    line
}

/// Appends a zigzag leg from the last point of `line` to `end`.
fn zigzag_to(line: &mut Vec<Point2D>, end: Point2D, params: &SpiralParams) {
    let start = line[line.len() - 1];
    let along = end - start;
    let length = along.norm();
    let pieces = if params.zigzag_amplitude > 0.0 {
        (libm::round(length / params.zigzag_spacing) as usize).max(2)
    } else {
        1
    };
    let normal = Point2D::new(-along.y, along.x) * (params.zigzag_amplitude / length);
    for i in 1..pieces {
        let side = if i % 2 == 1 { 1.0 } else { -1.0 };
        line.push(start.lerp(end, i as f64 / pieces as f64) + normal * side);
    }
    line.push(end);
}

/// A triangular core with three identical arms winding counterclockwise
/// around it, each a copy of the previous one rotated by 120 degrees.
///
/// The arms follow triangular legs so the convex hull stays close to a
/// triangle; this keeps the hull's medial axis short while the district's
/// own axis runs along every arm.
pub fn three_arm_spiral(params: &SpiralParams) -> Result<PlanarPolygon> {
    let mut outline = Vec::new();
    for k in 0..3 {
        let direction = params.phase + k as f64 * 2.0 * PI / 3.0;
        let (right, left) =
            offset_sides(&arm_centerline(params, direction), params.arm_width / 2.0);
        outline.extend(right);
        outline.extend(left.into_iter().rev());
    }
    PlanarPolygon::from_exterior(Ring::new(outline)?)
}
