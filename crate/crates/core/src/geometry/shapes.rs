use alloc::vec::Vec;

use super::predicates::orient2d;
use super::{BBox, Point2D, Segment};
use crate::{Error, Result};

/// A closed ring of vertices; the last vertex connects back to the first.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring {
    vertices: Vec<Point2D>,
}

impl Ring {
    /// Builds a ring, dropping an explicit closing vertex and consecutive
    /// duplicates. Fails when fewer than three distinct vertices remain.
    pub fn new(vertices: Vec<Point2D>) -> Result<Ring> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut vs: Vec<Point2D> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if vs.last() != Some(&p) {
                vs.push(p);
            }
        }
        while vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        if vs.len() < 3 {
            return Err(Error::DegenerateInput(
                "ring needs at least 3 distinct vertices",
            ));
        }
        Ok(Ring { vertices: vs })
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point2D>) -> Ring {
        Ring { vertices }
    }

    pub fn vertices(&self) -> &[Point2D] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2D> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges in ring order, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area() > 0.0
    }

    pub fn reversed(&self) -> Ring {
        let mut vs = self.vertices.clone();
        vs.reverse();
        Ring { vertices: vs }
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|e| e.length()).sum()
    }

    pub fn bbox(&self) -> BBox {
        BBox::from_points(self.vertices.iter().copied()).expect("ring is non-empty")
    }

    /// The same ring, rotated to start at its lexicographically smallest vertex.
    pub fn canonical_start(&self) -> Ring {
        let start = self
            .vertices
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.lex_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut vs = Vec::with_capacity(self.vertices.len());
        vs.extend_from_slice(&self.vertices[start..]);
        vs.extend_from_slice(&self.vertices[..start]);
        Ring { vertices: vs }
    }

    /// Closed polyline view: the vertices followed by the first vertex again.
    pub fn to_closed_polyline(&self) -> Polyline {
        let mut vs = self.vertices.clone();
        vs.push(self.vertices[0]);
        Polyline { vertices: vs }
    }

    pub fn map(&self, f: impl Fn(Point2D) -> Point2D) -> Ring {
        Ring {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
        }
    }

    /// True when the interior angle at `index` exceeds pi.
    pub fn is_reflex(&self, index: usize) -> bool {
        is_reflex(self, index)
    }
}

/// Shoelace area of a closed vertex loop (closing edge implicit).
/// Positive for counterclockwise order.
pub fn signed_area(vertices: &[Point2D]) -> f64 {
    let n = vertices.len();
    if n < 3 {
        return 0.0;
    }
    // Relative to the first vertex to keep projected coordinates well conditioned.
    let o = vertices[0];
    let mut twice = 0.0;
    for i in 1..n - 1 {
        twice += (vertices[i] - o).cross(vertices[i + 1] - o);
    }
    0.5 * twice
}

/// Reflex-vertex test for a simple ring of either orientation.
///
/// A vertex is reflex when its interior angle exceeds pi; a straight
/// (collinear) vertex is not reflex.
pub fn is_reflex(ring: &Ring, index: usize) -> bool {
    let vs = ring.vertices();
    let n = vs.len();
    let prev = vs[(index + n - 1) % n];
    let cur = vs[index % n];
    let next = vs[(index + 1) % n];
    let turn = orient2d(prev, cur, next);
    if ring.is_ccw() {
        turn < 0.0
    } else {
        turn > 0.0
    }
}

/// An open chain of at least two vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point2D>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point2D>) -> Result<Polyline> {
        if vertices.len() < 2 {
            return Err(Error::DegenerateInput("polyline needs at least 2 vertices"));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Polyline { vertices })
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point2D>) -> Polyline {
        Polyline { vertices }
    }

    pub fn vertices(&self) -> &[Point2D] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2D> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|s| s.length()).sum()
    }
}

/// A polygon with a counterclockwise outer ring and clockwise holes.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarPolygon {
    outer: Ring,
    holes: Vec<Ring>,
}

impl PlanarPolygon {
    /// Builds a polygon, re-orienting rings to outer-CCW / holes-CW.
    pub fn new(outer: Ring, holes: Vec<Ring>) -> Result<PlanarPolygon> {
        let area = outer.signed_area();
        if area == 0.0 || !area.is_finite() {
            return Err(Error::DegenerateInput("outer ring has zero area"));
        }
        let outer = if area < 0.0 { outer.reversed() } else { outer };
        let holes = holes
            .into_iter()
            .map(|h| {
                if h.signed_area() > 0.0 {
                    h.reversed()
                } else {
                    h
                }
            })
            .collect();
        Ok(PlanarPolygon { outer, holes })
    }

    pub fn from_exterior(outer: Ring) -> Result<PlanarPolygon> {
        PlanarPolygon::new(outer, Vec::new())
    }

    pub(crate) fn from_parts_unchecked(outer: Ring, holes: Vec<Ring>) -> PlanarPolygon {
        PlanarPolygon { outer, holes }
    }

    pub fn outer(&self) -> &Ring {
        &self.outer
    }

    pub fn holes(&self) -> &[Ring] {
        &self.holes
    }

    /// Outer ring followed by the holes.
    pub fn rings(&self) -> impl Iterator<Item = &Ring> {
        core::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn boundary_segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.rings().flat_map(|r| r.edges())
    }

    /// Enclosed area, holes subtracted.
    pub fn area(&self) -> f64 {
        self.rings().map(|r| r.signed_area()).sum()
    }

    pub fn bbox(&self) -> BBox {
        self.outer.bbox()
    }

    /// Area centroid (may lie outside a concave polygon).
    pub fn centroid(&self) -> Point2D {
        let o = self.outer.vertices()[0];
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for ring in self.rings() {
            for e in ring.edges() {
                let p = e.a - o;
                let q = e.b - o;
                let c = p.cross(q);
                a2 += c;
                cx += (p.x + q.x) * c;
                cy += (p.y + q.y) * c;
            }
        }
        Point2D::new(o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2))
    }

    pub fn map(&self, f: impl Fn(Point2D) -> Point2D + Copy) -> PlanarPolygon {
        let outer = self.outer.map(f);
        let holes = self.holes.iter().map(|h| h.map(f)).collect();
        // Reflections flip orientation; re-normalise.
        PlanarPolygon::new(outer, holes).expect("affine image of a valid polygon")
    }
}

/// A set of interior-disjoint polygons, e.g. a district with islands.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlanarMultiPolygon {
    parts: Vec<PlanarPolygon>,
}

impl PlanarMultiPolygon {
    pub fn new(parts: Vec<PlanarPolygon>) -> PlanarMultiPolygon {
        PlanarMultiPolygon { parts }
    }

    pub fn empty() -> PlanarMultiPolygon {
        PlanarMultiPolygon { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[PlanarPolygon] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<PlanarPolygon> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.parts.iter().map(|p| p.area()).sum()
    }

    pub fn bbox(&self) -> Option<BBox> {
        self.parts
            .iter()
            .map(|p| p.bbox())
            .reduce(|a, b| a.union(&b))
    }

    pub fn boundary_segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.parts.iter().flat_map(|p| p.boundary_segments())
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point2D> + '_ {
        self.parts
            .iter()
            .flat_map(|p| p.rings().flat_map(|r| r.vertices().iter().copied()))
    }

    /// Area-weighted centroid of all parts.
    pub fn centroid(&self) -> Option<Point2D> {
        let total = self.area();
        if self.parts.is_empty() || total == 0.0 {
            return None;
        }
        let (mut x, mut y) = (0.0, 0.0);
        for p in &self.parts {
            let c = p.centroid();
            let a = p.area();
            x += c.x * a;
            y += c.y * a;
        }
        Some(Point2D::new(x / total, y / total))
    }

    pub fn map(&self, f: impl Fn(Point2D) -> Point2D + Copy) -> PlanarMultiPolygon {
        PlanarMultiPolygon {
            parts: self.parts.iter().map(|p| p.map(f)).collect(),
        }
    }
}

impl From<PlanarPolygon> for PlanarMultiPolygon {
    fn from(p: PlanarPolygon) -> Self {
        PlanarMultiPolygon {
            parts: alloc::vec![p],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn unit_square() -> Vec<Point2D> {
        vec![
            Point2D::new(0.0, 0.0),
            Point2D::new(1.0, 0.0),
            Point2D::new(1.0, 1.0),
            Point2D::new(0.0, 1.0),
        ]
    }

    #[test]
    fn signed_area_examples() {
        let ccw = Ring::new(unit_square()).unwrap();
        assert_eq!(ccw.signed_area(), 1.0);
        assert_eq!(ccw.reversed().signed_area(), -1.0);
        let tri = Ring::new(vec![
            Point2D::new(0.0, 0.0),
            Point2D::new(4.0, 0.0),
            Point2D::new(0.0, 3.0),
        ])
        .unwrap();
        assert_eq!(tri.signed_area(), 6.0);
        assert_eq!(
            signed_area(&[Point2D::new(0.0, 0.0), Point2D::new(1.0, 1.0)]),
            0.0
        );
    }

    #[test]
    fn ring_drops_closing_and_repeated_vertices() {
        let mut vs = unit_square();
        vs.insert(1, vs[0]);
        vs.push(vs[0]);
        let r = Ring::new(vs).unwrap();
        assert_eq!(r.len(), 4);
        assert!(Ring::new(vec![Point2D::new(0.0, 0.0), Point2D::new(1.0, 0.0)]).is_err());
        assert_eq!(
            Ring::new(vec![Point2D::new(f64::NAN, 0.0); 3]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn polygon_normalises_orientation() {
        let outer = Ring::new(unit_square()).unwrap().reversed();
        let hole = Ring::new(vec![
            Point2D::new(0.25, 0.25),
            Point2D::new(0.75, 0.25),
            Point2D::new(0.75, 0.75),
            Point2D::new(0.25, 0.75),
        ])
        .unwrap();
        let poly = PlanarPolygon::new(outer, vec![hole]).unwrap();
        assert!(poly.outer().is_ccw());
        assert!(poly.holes()[0].signed_area() < 0.0);
        assert!((poly.area() - 0.75).abs() < 1e-15);
        let c = poly.centroid();
        assert!((c.x - 0.5).abs() < 1e-12 && (c.y - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reflex_corner_of_l_shape() {
        // L-shaped hexagon; the inner corner is at (1, 1).
        let l = Ring::new(vec![
            Point2D::new(0.0, 0.0),
            Point2D::new(2.0, 0.0),
            Point2D::new(2.0, 1.0),
            Point2D::new(1.0, 1.0),
            Point2D::new(1.0, 2.0),
            Point2D::new(0.0, 2.0),
        ])
        .unwrap();
        let reflex: Vec<bool> = (0..6).map(|i| l.is_reflex(i)).collect();
        assert_eq!(reflex, vec![false, false, false, true, false, false]);
        // Orientation does not matter.
        let cw = l.reversed();
        assert_eq!((0..6).filter(|&i| cw.is_reflex(i)).count(), 1);
        let sq = Ring::new(unit_square()).unwrap();
        assert!((0..4).all(|i| !sq.is_reflex(i)));
    }
}
