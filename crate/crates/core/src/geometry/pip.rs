use super::predicates::{on_segment, orient2d};
use super::{PlanarMultiPolygon, PlanarPolygon, Point2D, Ring};

/// Where a point sits relative to a ring or polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Even-odd ray crossing against one ring, with exact boundary detection.
pub fn locate_in_ring(p: Point2D, ring: &Ring) -> Location {
    let vs = ring.vertices();
    let n = vs.len();
    let mut inside = false;
    for i in 0..n {
        let a = vs[i];
        let b = vs[(i + 1) % n];
        if on_segment(p, a, b) {
            return Location::Boundary;
        }
        // Half-open rule on y so vertices are counted once.
        if (a.y > p.y) != (b.y > p.y) {
            let o = orient2d(a, b, p);
            if (b.y > a.y && o > 0.0) || (b.y < a.y && o < 0.0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

pub fn locate_in_polygon(p: Point2D, poly: &PlanarPolygon) -> Location {
    match locate_in_ring(p, poly.outer()) {
        Location::Inside => {}
        other => return other,
    }
    for hole in poly.holes() {
        match locate_in_ring(p, hole) {
            Location::Inside => return Location::Outside,
            Location::Boundary => return Location::Boundary,
            Location::Outside => {}
        }
    }
    Location::Inside
}

pub fn locate_in_multipolygon(p: Point2D, mp: &PlanarMultiPolygon) -> Location {
    let mut best = Location::Outside;
    for part in mp.parts() {
        if !part.bbox().contains(p) {
            continue;
        }
        match locate_in_polygon(p, part) {
            Location::Inside => return Location::Inside,
            Location::Boundary => best = Location::Boundary,
            Location::Outside => {}
        }
    }
    best
}

/// Containment with holes excluded; points on the boundary count as inside.
pub fn point_in_polygon(p: Point2D, poly: &PlanarPolygon) -> bool {
    locate_in_polygon(p, poly) != Location::Outside
}

pub fn point_in_multipolygon(p: Point2D, mp: &PlanarMultiPolygon) -> bool {
    locate_in_multipolygon(p, mp) != Location::Outside
}
