//! Approximate medial axis of a planar region from the Voronoi diagram of
//! densified boundary samples.
//!
//! For each polygon part: every ring is simplified and densified, the
//! resulting vertices become Voronoi sites, and the Voronoi edges that stay
//! more than `buffer` away from the original boundary are kept whole and
//! then clipped to the part. The buffer also removes the axis tips near
//! corners, so the result is slightly shorter than the true medial axis.

use crate::geometry::{
    clip_polygon_to_convex, clip_segments_to_polygon, convex_hull, densify_closed, simplify_ring,
    PlanarMultiPolygon, PlanarPolygon, Point2D, SegmentGrid,
};
use crate::voronoi::voronoi_edges;
use crate::{Error, Result};

pub use crate::geometry::SegmentSet;

/// Tuning parameters of the medial-axis pipeline. Lengths are in metres.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineParams {
    /// Voronoi edges within this distance of the boundary are dropped.
    pub buffer: f64,
    /// Douglas-Peucker tolerance applied to each boundary ring.
    pub simplify_tolerance: f64,
    /// Extra vertices inserted into every simplified boundary segment.
    pub densify_k: usize,
    /// Sentinel sites sit this many bounding-box diagonals outside the part.
    pub sentinel_margin_factor: f64,
    /// Edges longer than this many bounding-box diagonals are discarded.
    pub fragment_length_cap_factor: f64,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            buffer: 200.0,
            simplify_tolerance: 500.0,
            densify_k: 10,
            sentinel_margin_factor: 10.0,
            fragment_length_cap_factor: 2.0,
        }
    }
}

impl PipelineParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.buffer > 0.0 && self.buffer.is_finite()) {
            return Err(Error::InvalidParams("buffer must be positive"));
        }
        if !(self.simplify_tolerance >= 0.0 && self.simplify_tolerance.is_finite()) {
            return Err(Error::InvalidParams(
                "simplify tolerance must be non-negative",
            ));
        }
        if !(self.sentinel_margin_factor > 0.0 && self.sentinel_margin_factor.is_finite()) {
            return Err(Error::InvalidParams(
                "sentinel margin factor must be positive",
            ));
        }
        if !(self.fragment_length_cap_factor > 0.0 && self.fragment_length_cap_factor.is_finite()) {
            return Err(Error::InvalidParams(
                "fragment length cap factor must be positive",
            ));
        }
        Ok(())
    }

    /// The same parameters for a region scaled by `s`. The factors are
    /// relative to the region size and stay as they are.
    pub fn scaled(&self, s: f64) -> PipelineParams {
        PipelineParams {
            buffer: self.buffer * s,
            simplify_tolerance: self.simplify_tolerance * s,
            ..*self
        }
    }
}

/// Total Euclidean length of an axis.
pub fn axis_length(axis: &SegmentSet) -> f64 {
    axis.total_length()
}

/// Boundary samples of one part: each ring simplified and densified.
pub fn boundary_sites(part: &PlanarPolygon, params: &PipelineParams) -> alloc::vec::Vec<Point2D> {
    part.rings()
        .flat_map(|ring| {
            densify_closed(
                &simplify_ring(ring, params.simplify_tolerance),
                params.densify_k,
            )
        })
        .collect()
}

fn part_axis(part: &PlanarPolygon, params: &PipelineParams) -> Result<SegmentSet> {
    let sites = boundary_sites(part, params);
    let extent = part.bbox();
    let diag = extent.diagonal();
    let diagram = voronoi_edges(&sites, &extent, params.sentinel_margin_factor * diag)?;
    let boundary = SegmentGrid::new(part.boundary_segments().collect());
    let cap = params.fragment_length_cap_factor * diag;

    let mut kept = SegmentSet::new();
    for (seg, pair) in diagram.segments() {
        if seg.length().is_nan() || seg.length() > cap || boundary.any_within(&seg, params.buffer) {
            continue;
        }
        kept.push(seg, Some(pair));
    }
    Ok(clip_segments_to_polygon(
        &kept,
        &PlanarMultiPolygon::from(part.clone()),
    ))
}

/// Approximate medial axis of `region`, computed independently per part.
///
/// Returns an empty set when the region is thinner than twice the buffer.
pub fn approximate_medial_axis(
    region: &PlanarMultiPolygon,
    params: &PipelineParams,
) -> Result<SegmentSet> {
    params.validate()?;
    let mut axis = SegmentSet::new();
    for part in region.parts() {
        axis.extend(part_axis(part, params)?);
    }
    Ok(axis)
}

/// The hull axis of a district together with the geometry it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct HullAxis {
    pub axis: SegmentSet,
    /// Convex hull of the district clipped to the state.
    pub hull: PlanarMultiPolygon,
    /// Set when a noticeable part of the district lies outside the state,
    /// which usually means mismatched data rather than a real district.
    pub district_outside_state: bool,
}

/// Medial axis of the convex hull of all district vertices, clipped to the
/// state.
pub fn hull_axis(
    district: &PlanarMultiPolygon,
    state: &PlanarMultiPolygon,
    params: &PipelineParams,
) -> Result<HullAxis> {
    params.validate()?;
    let vertices: alloc::vec::Vec<Point2D> = district.vertices().collect();
    if vertices.is_empty() {
        return Err(Error::DegenerateInput("district has no vertices"));
    }
    let hull_ring = convex_hull(&vertices)?;
    let hull = clip_polygon_to_convex(state, &hull_ring);
    if hull.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let district_outside_state = hull.area() < district.area() * (1.0 - 1e-6);
    let axis = approximate_medial_axis(&hull, params)?;
    Ok(HullAxis {
        axis,
        hull,
        district_outside_state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{min_distance_segment_to_boundary, point_in_multipolygon, Polyline};
    use crate::synthetic;

    #[test]
    fn defaults_validate() {
        let p = PipelineParams::default();
        assert_eq!(
            (p.buffer, p.simplify_tolerance, p.densify_k),
            (200.0, 500.0, 10)
        );
        assert!(p.validate().is_ok());
        assert!(PipelineParams { buffer: 0.0, ..p }.validate().is_err());
        assert!(PipelineParams {
            simplify_tolerance: -1.0,
            ..p
        }
        .validate()
        .is_err());
        assert!(PipelineParams {
            fragment_length_cap_factor: 0.0,
            ..p
        }
        .validate()
        .is_err());
    }

    #[test]
    fn axis_length_sums_segments() {
        assert_eq!(axis_length(&SegmentSet::new()), 0.0);
        let s: SegmentSet = [
            crate::Segment::new(Point2D::new(0., 0.), Point2D::new(1., 0.)),
            crate::Segment::new(Point2D::new(0., 1.), Point2D::new(0., 2.)),
        ]
        .into_iter()
        .collect();
        assert_eq!(axis_length(&s), 2.0);
    }

    #[test]
    fn thin_region_has_empty_axis() {
        let strip = synthetic::rectangle(0.0, 0.0, 10_000.0, 300.0);
        let axis = approximate_medial_axis(&strip.into(), &PipelineParams::default()).unwrap();
        assert!(axis.is_empty());
    }

    #[test]
    fn retained_segments_respect_buffer_and_interior() {
        let region: PlanarMultiPolygon = synthetic::rectangle(0.0, 0.0, 20_000.0, 6_000.0).into();
        let params = PipelineParams {
            simplify_tolerance: 0.0,
            densify_k: 20,
            ..Default::default()
        };
        let axis = approximate_medial_axis(&region, &params).unwrap();
        assert!(!axis.is_empty());
        let boundary: alloc::vec::Vec<Polyline> = region.parts()[0]
            .rings()
            .map(|r| r.to_closed_polyline())
            .collect();
        for (seg, _) in axis.iter() {
            assert!(min_distance_segment_to_boundary(seg, &boundary) > params.buffer);
            assert!(point_in_multipolygon(seg.midpoint(), &region));
        }
    }
}
