use alloc::vec::Vec;

use super::assemble::assemble;
use super::pip::{locate_in_multipolygon, locate_in_polygon, locate_in_ring, Location};
use super::predicates::{orient2d, segments_intersect};
use super::{PlanarMultiPolygon, PlanarPolygon, Point2D, Ring, Segment, SegmentSet};

/// Intersection of `subject` with the region bounded by the convex,
/// counterclockwise `clip` ring.
///
/// Each ring is clipped by the successive half-planes of `clip`
/// (Sutherland-Hodgman). The zero-width bridges that concave subjects leave
/// along the clip edges are cancelled and the result is re-assembled into
/// polygons, dropping zero-area rings. An empty result means no overlap.
pub fn clip_polygon_to_convex(subject: &PlanarMultiPolygon, clip: &Ring) -> PlanarMultiPolygon {
    let clip = if clip.is_ccw() {
        clip.clone()
    } else {
        clip.reversed()
    };
    let cb = clip.bbox();
    let area_eps = 1e-12 * cb.diagonal() * cb.diagonal();
    let line_eps = 1e-10 * cb.diagonal().max(f64::MIN_POSITIVE);

    let mut parts = Vec::new();
    for part in subject.parts() {
        if !part.bbox().intersects(&cb) {
            continue;
        }
        if ring_inside_polygon(&clip, part) {
            parts.push(PlanarPolygon::from_parts_unchecked(
                clip.clone(),
                Vec::new(),
            ));
            continue;
        }
        let mut edges = Vec::new();
        for ring in part.rings() {
            let clipped = clip_ring(ring.vertices(), &clip);
            let n = clipped.len();
            if n < 3 {
                continue;
            }
            for i in 0..n {
                edges.push(Segment::new(clipped[i], clipped[(i + 1) % n]));
            }
        }
        let edges = split_on_clip_lines(edges, &clip, line_eps);
        parts.extend(assemble(edges, area_eps).into_parts());
    }
    PlanarMultiPolygon::new(parts)
}

/// True when `ring` lies in the interior of `poly` without touching any
/// of its rings and without enclosing a hole.
fn ring_inside_polygon(ring: &Ring, poly: &PlanarPolygon) -> bool {
    if !ring
        .vertices()
        .iter()
        .all(|&v| locate_in_polygon(v, poly) == Location::Inside)
    {
        return false;
    }
    let rb = ring.bbox();
    for r in poly.rings() {
        for e in r.edges() {
            if !e.bbox().intersects(&rb) {
                continue;
            }
            if ring.edges().any(|c| segments_intersect(c.a, c.b, e.a, e.b)) {
                return false;
            }
        }
    }
    poly.holes()
        .iter()
        .all(|h| locate_in_ring(h.vertices()[0], ring) == Location::Outside)
}

/// Sutherland-Hodgman against every edge of a convex CCW ring.
fn clip_ring(subject: &[Point2D], clip: &Ring) -> Vec<Point2D> {
    let mut output: Vec<Point2D> = subject.to_vec();
    for edge in clip.edges() {
        if output.is_empty() {
            break;
        }
        let input = core::mem::take(&mut output);
        let n = input.len();
        for i in 0..n {
            let s = input[(i + n - 1) % n];
            let e = input[i];
            let os = orient2d(edge.a, edge.b, s);
            let oe = orient2d(edge.a, edge.b, e);
            if oe >= 0.0 {
                if os < 0.0 {
                    output.push(cross_point(s, e, os, oe));
                }
                output.push(e);
            } else if os > 0.0 {
                // An s exactly on the line was already emitted.
                output.push(cross_point(s, e, os, oe));
            }
        }
        output.dedup();
        while output.len() > 1 && output.first() == output.last() {
            output.pop();
        }
    }
    output
}

fn cross_point(s: Point2D, e: Point2D, os: f64, oe: f64) -> Point2D {
    let t = os / (os - oe);
    s.lerp(e, t)
}

/// Splits edges lying on a clip line at the endpoints of other edges on the
/// same line, so overlapping opposite runs cancel exactly.
fn split_on_clip_lines(mut edges: Vec<Segment>, clip: &Ring, eps: f64) -> Vec<Segment> {
    for line in clip.edges() {
        let dir = line.b - line.a;
        let len = dir.norm();
        let on_line = |p: Point2D| ((p - line.a).cross(dir) / len).abs() <= eps;
        let param = |p: Point2D| (p - line.a).dot(dir);

        let mut stops: Vec<(f64, Point2D)> = Vec::new();
        let mut idx = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            if on_line(e.a) && on_line(e.b) {
                idx.push(i);
                stops.push((param(e.a), e.a));
                stops.push((param(e.b), e.b));
            }
        }
        if idx.len() < 2 {
            continue;
        }
        stops.sort_by(|a, b| a.0.total_cmp(&b.0));
        stops.dedup_by(|a, b| a.1 == b.1);

        let mut out = Vec::with_capacity(edges.len() + stops.len());
        let mut next_on = idx.iter().peekable();
        for (i, e) in edges.iter().enumerate() {
            if next_on.peek() != Some(&&i) {
                out.push(*e);
                continue;
            }
            next_on.next();
            let (ta, tb) = (param(e.a), param(e.b));
            let (lo, hi) = if ta < tb { (ta, tb) } else { (tb, ta) };
            let mut inner: Vec<(f64, Point2D)> = stops
                .iter()
                .copied()
                .filter(|(t, q)| *t > lo && *t < hi && *q != e.a && *q != e.b)
                .collect();
            if ta > tb {
                inner.reverse();
            }
            let mut prev = e.a;
            for (_, q) in inner {
                out.push(Segment::new(prev, q));
                prev = q;
            }
            out.push(Segment::new(prev, e.b));
        }
        edges = out;
    }
    edges
}

/// Keeps the parts of each segment that lie inside (or on the boundary of)
/// `poly`, splitting segments where they cross the boundary.
pub fn clip_segments_to_polygon(segs: &SegmentSet, poly: &PlanarMultiPolygon) -> SegmentSet {
    let boundary: Vec<Segment> = poly.boundary_segments().collect();
    let mut out = SegmentSet::new();
    for (seg, prov) in segs.iter() {
        let sb = seg.bbox();
        let d = seg.b - seg.a;
        let mut ts: Vec<f64> = alloc::vec![0.0, 1.0];
        for e in &boundary {
            if !e.bbox().intersects(&sb) || !segments_intersect(seg.a, seg.b, e.a, e.b) {
                continue;
            }
            let f = e.b - e.a;
            let denom = d.cross(f);
            if denom == 0.0 {
                let dd = d.dot(d);
                ts.push(((e.a - seg.a).dot(d) / dd).clamp(0.0, 1.0));
                ts.push(((e.b - seg.a).dot(d) / dd).clamp(0.0, 1.0));
            } else {
                ts.push(((e.a - seg.a).cross(f) / denom).clamp(0.0, 1.0));
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup();

        let mut run: Option<f64> = None;
        for w in ts.windows(2) {
            let mid = seg.at(0.5 * (w[0] + w[1]));
            let inside = locate_in_multipolygon(mid, poly) != Location::Outside;
            match (inside, run) {
                (true, None) => run = Some(w[0]),
                (false, Some(t0)) => {
                    out.push(piece(seg, t0, w[0]), prov);
                    run = None;
                }
                _ => {}
            }
        }
        if let Some(t0) = run {
            out.push(piece(seg, t0, 1.0), prov);
        }
    }
    out
}

fn piece(seg: &Segment, t0: f64, t1: f64) -> Segment {
    let a = if t0 == 0.0 { seg.a } else { seg.at(t0) };
    let b = if t1 == 1.0 { seg.b } else { seg.at(t1) };
    Segment::new(a, b)
}
