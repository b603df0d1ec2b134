use alloc::vec;
use alloc::vec::Vec;

use super::predicates::segments_intersect;
use super::{BBox, Point2D, Polyline, Segment};

/// Euclidean distance from `p` to the closed segment `a`-`b`.
pub fn point_segment_distance(p: Point2D, a: Point2D, b: Point2D) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Exact-zero when the segments touch; otherwise the smallest endpoint-to-segment distance.
pub fn segment_distance(s: &Segment, t: &Segment) -> f64 {
    if segments_intersect(s.a, s.b, t.a, t.b) {
        return 0.0;
    }
    point_segment_distance(s.a, t.a, t.b)
        .min(point_segment_distance(s.b, t.a, t.b))
        .min(point_segment_distance(t.a, s.a, s.b))
        .min(point_segment_distance(t.b, s.a, s.b))
}

/// Minimum distance between `seg` and any segment of the boundary polylines.
///
/// Returns `f64::INFINITY` if the boundary has no segments.
pub fn min_distance_segment_to_boundary(seg: &Segment, boundary: &[Polyline]) -> f64 {
    boundary
        .iter()
        .flat_map(|line| line.segments())
        .map(|b| segment_distance(seg, &b))
        .fold(f64::INFINITY, f64::min)
}

/// Uniform-grid bucket index over a fixed set of segments, answering
/// "is any indexed segment within distance r of this query segment".
#[derive(Debug, Clone)]
pub struct SegmentGrid {
    segments: Vec<Segment>,
    origin: Point2D,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
}

impl SegmentGrid {
    pub fn new(segments: Vec<Segment>) -> SegmentGrid {
        let bbox = BBox::from_points(segments.iter().flat_map(|s| [s.a, s.b])).unwrap_or(BBox {
            min: Point2D::default(),
            max: Point2D::default(),
        });
        let n = segments.len().max(1);
        // Roughly one segment per cell along the boundary.
        let extent = bbox.width().max(bbox.height()).max(f64::MIN_POSITIVE);
        let mut cell = (bbox.width() + bbox.height()).max(extent) / libm::sqrt(n as f64).max(1.0);
        let total: f64 = segments.iter().map(|s| s.length()).sum();
        cell = cell.max(2.0 * total / n as f64).max(extent / 1024.0);
        let nx = ((bbox.width() / cell) as usize + 1).min(1024);
        let ny = ((bbox.height() / cell) as usize + 1).min(1024);
        let mut grid = SegmentGrid {
            segments,
            origin: bbox.min,
            cell,
            nx,
            ny,
            buckets: vec![Vec::new(); nx * ny],
        };
        for (i, s) in grid.segments.iter().enumerate() {
            let (x0, y0, x1, y1) = grid.cell_range(&s.bbox());
            for cy in y0..=y1 {
                for cx in x0..=x1 {
                    grid.buckets[cy * nx + cx].push(i as u32);
                }
            }
        }
        grid
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    fn cell_range(&self, bb: &BBox) -> (usize, usize, usize, usize) {
        let clamp = |v: f64, n: usize| -> usize {
            if v.is_nan() || v <= 0.0 {
                0
            } else {
                (v as usize).min(n - 1)
            }
        };
        (
            clamp((bb.min.x - self.origin.x) / self.cell, self.nx),
            clamp((bb.min.y - self.origin.y) / self.cell, self.ny),
            clamp((bb.max.x - self.origin.x) / self.cell, self.nx),
            clamp((bb.max.y - self.origin.y) / self.cell, self.ny),
        )
    }

    /// True when some indexed segment lies within `radius` (inclusive) of `seg`.
    pub fn any_within(&self, seg: &Segment, radius: f64) -> bool {
        let query = seg.bbox().expanded(radius);
        let (x0, y0, x1, y1) = self.cell_range(&query);
        let mut seen: Vec<u32> = Vec::new();
        for cy in y0..=y1 {
            for cx in x0..=x1 {
                for &i in &self.buckets[cy * self.nx + cx] {
                    let s = &self.segments[i as usize];
                    if !s.bbox().intersects(&query) || seen.contains(&i) {
                        continue;
                    }
                    if segment_distance(seg, s) <= radius {
                        return true;
                    }
                    seen.push(i);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point2D {
        Point2D::new(x, y)
    }

    #[test]
    fn parallel_and_touching() {
        let boundary = [Polyline::new(vec![p(0., 0.), p(1., 0.)]).unwrap()];
        let d = min_distance_segment_to_boundary(&Segment::new(p(0., 1.), p(1., 1.)), &boundary);
        assert_eq!(d, 1.0);
        let d = min_distance_segment_to_boundary(&Segment::new(p(1., 0.), p(2., 5.)), &boundary);
        assert_eq!(d, 0.0);
        let d = min_distance_segment_to_boundary(&Segment::new(p(0.5, -1.), p(0.5, 1.)), &boundary);
        assert_eq!(d, 0.0);
    }

    /// Dense sampling oracle: 100 samples on each segment, each measured
    /// against the other segment by clamped projection (10^4 evaluations).
    fn sampled_distance(s: &Segment, t: &Segment) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..100 {
            let f = i as f64 / 99.0;
            best = best.min(point_segment_distance(s.at(f), t.a, t.b));
            best = best.min(point_segment_distance(t.at(f), s.a, s.b));
        }
        best
    }

    #[test]
    fn random_pairs_match_sampling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut crossing = 0;
        for _ in 0..100 {
            let mut r = || p(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let s = Segment::new(r(), r());
            let t = Segment::new(r(), r());
            let exact = segment_distance(&s, &t);
            let sampled = sampled_distance(&s, &t);
            if exact == 0.0 {
                crossing += 1;
                // Samples are at most ~0.3 apart along these segments.
                assert!(sampled < 0.3, "{sampled}");
            } else {
                assert!(
                    (exact - sampled).abs() <= 1e-6 * exact,
                    "exact {exact} sampled {sampled}"
                );
            }
        }
        assert!(crossing > 0 && crossing < 100);
    }

    #[test]
    fn grid_agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ring: Vec<Point2D> = (0..300)
            .map(|i| {
                let a = i as f64 / 300.0 * core::f64::consts::TAU;
                let r = 1000.0 + rng.gen_range(-200.0..200.0);
                p(r * libm::cos(a), r * libm::sin(a))
            })
            .collect();
        let mut closed = ring.clone();
        closed.push(ring[0]);
        let line = Polyline::new(closed).unwrap();
        let grid = SegmentGrid::new(line.segments().collect());
        for _ in 0..500 {
            let mut r = || {
                p(
                    rng.gen_range(-1300.0..1300.0),
                    rng.gen_range(-1300.0..1300.0),
                )
            };
            let q = Segment::new(r(), r());
            let radius = rng.gen_range(0.0..150.0);
            let brute = min_distance_segment_to_boundary(&q, core::slice::from_ref(&line));
            assert_eq!(grid.any_within(&q, radius), brute <= radius);
        }
    }
}
