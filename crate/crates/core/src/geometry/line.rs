use alloc::vec;
use alloc::vec::Vec;

use super::distance::point_segment_distance;
use super::{Point2D, Polyline, Ring};

/// Douglas-Peucker simplification.
///
/// Endpoints are always kept; a vertex survives only when it lies more than
/// `tolerance` from the chord it would otherwise be dropped onto. A
/// tolerance of zero returns the line untouched.
pub fn simplify_dp(line: &Polyline, tolerance: f64) -> Polyline {
    let vs = line.vertices();
    if tolerance <= 0.0 || vs.len() <= 2 {
        return line.clone();
    }
    let keep = dp_keep(vs, tolerance);
    Polyline::from_vertices_unchecked(
        vs.iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(p, _)| *p)
            .collect(),
    )
}

fn dp_keep(vs: &[Point2D], tolerance: f64) -> Vec<bool> {
    let n = vs.len();
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0usize, n - 1)];
    while let Some((first, last)) = stack.pop() {
        if last <= first + 1 {
            continue;
        }
        let (a, b) = (vs[first], vs[last]);
        let mut far = (first, -1.0);
        for (i, &p) in vs.iter().enumerate().take(last).skip(first + 1) {
            let d = point_segment_distance(p, a, b);
            if d > far.1 {
                far = (i, d);
            }
        }
        if far.1 > tolerance {
            keep[far.0] = true;
            stack.push((far.0, last));
            stack.push((first, far.0));
        }
    }
    keep
}

/// Simplifies a ring as a closed polyline anchored at its lexicographically
/// smallest vertex. The result may have fewer than three vertices when the
/// whole ring fits within the tolerance of a single chord.
pub fn simplify_ring(ring: &Ring, tolerance: f64) -> Vec<Point2D> {
    let closed = ring.canonical_start().to_closed_polyline();
    let mut vs = simplify_dp(&closed, tolerance).into_vertices();
    vs.pop();
    vs
}

/// Inserts `k` equally spaced vertices inside every segment.
pub fn densify_count(line: &Polyline, k: usize) -> Polyline {
    let vs = line.vertices();
    if k == 0 || vs.len() < 2 {
        return line.clone();
    }
    let mut out = Vec::with_capacity((vs.len() - 1) * (k + 1) + 1);
    let steps = (k + 1) as f64;
    for w in vs.windows(2) {
        out.push(w[0]);
        for j in 1..=k {
            out.push(w[0].lerp(w[1], j as f64 / steps));
        }
    }
    out.push(vs[vs.len() - 1]);
    Polyline::from_vertices_unchecked(out)
}

/// Densifies a closed loop of vertices (closing edge included) and returns
/// the open vertex list.
pub fn densify_closed(vertices: &[Point2D], k: usize) -> Vec<Point2D> {
    if vertices.len() < 2 {
        return vertices.to_vec();
    }
    let mut closed = vertices.to_vec();
    closed.push(vertices[0]);
    let mut out = densify_count(&Polyline::from_vertices_unchecked(closed), k).into_vertices();
    out.pop();
    out
}
