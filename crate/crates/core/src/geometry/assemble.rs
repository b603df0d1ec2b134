//! Rebuilding polygons from loose directed edges.
//!
//! Opposite directed copies of the same edge cancel, the survivors are
//! chained into rings by always taking the leftmost turn, and rings are
//! sorted into outers (counterclockwise) and holes (clockwise).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::pip::{locate_in_ring, Location};
use super::{PlanarMultiPolygon, PlanarPolygon, Point2D, Ring, Segment};

type Key = (u64, u64);

pub(crate) fn assemble(edges: Vec<Segment>, area_eps: f64) -> PlanarMultiPolygon {
    let edges = cancel_opposites(edges);
    let rings = stitch(&edges);

    let mut outers: Vec<(Ring, f64)> = Vec::new();
    let mut holes: Vec<Ring> = Vec::new();
    for r in rings {
        let a = r.signed_area();
        if a > area_eps {
            outers.push((r, a));
        } else if a < -area_eps {
            holes.push(r);
        }
    }
    let mut assigned: Vec<Vec<Ring>> = alloc::vec![Vec::new(); outers.len()];
    for h in holes {
        let hb = h.bbox();
        let owner = outers
            .iter()
            .enumerate()
            .filter(|(_, (o, _))| {
                o.bbox().union(&hb) == o.bbox()
                    && h.vertices()
                        .iter()
                        .all(|&v| locate_in_ring(v, o) != Location::Outside)
            })
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .map(|(i, _)| i);
        if let Some(i) = owner {
            assigned[i].push(h);
        }
    }
    PlanarMultiPolygon::new(
        outers
            .into_iter()
            .zip(assigned)
            .map(|((o, _), hs)| PlanarPolygon::from_parts_unchecked(o, hs))
            .collect(),
    )
}

fn cancel_opposites(edges: Vec<Segment>) -> Vec<Segment> {
    let mut open: BTreeMap<(Key, Key), Vec<usize>> = BTreeMap::new();
    let mut alive = alloc::vec![true; edges.len()];
    for (i, e) in edges.iter().enumerate() {
        if e.a == e.b {
            alive[i] = false;
            continue;
        }
        let rev = (e.b.bits(), e.a.bits());
        if let Some(list) = open.get_mut(&rev) {
            if let Some(j) = list.pop() {
                alive[i] = false;
                alive[j] = false;
                continue;
            }
        }
        open.entry((e.a.bits(), e.b.bits())).or_default().push(i);
    }
    edges
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect()
}

fn turn_angle(din: Point2D, dout: Point2D) -> f64 {
    libm::atan2(din.cross(dout), din.dot(dout))
}

fn stitch(edges: &[Segment]) -> Vec<Ring> {
    let mut outgoing: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        outgoing.entry(e.a.bits()).or_default().push(i);
    }
    let mut used = alloc::vec![false; edges.len()];
    let mut rings = Vec::new();
    for first in 0..edges.len() {
        if used[first] {
            continue;
        }
        used[first] = true;
        let start = edges[first].a;
        let mut verts = alloc::vec![start];
        let mut cur = first;
        let mut closed = false;
        loop {
            let e = edges[cur];
            if e.b == start {
                closed = true;
                break;
            }
            verts.push(e.b);
            let din = e.b - e.a;
            let next = outgoing.get(&e.b.bits()).and_then(|cands| {
                cands
                    .iter()
                    .copied()
                    .filter(|&c| !used[c])
                    .max_by(|&x, &y| {
                        let ax = turn_angle(din, edges[x].b - edges[x].a);
                        let ay = turn_angle(din, edges[y].b - edges[y].a);
                        ax.total_cmp(&ay).then(y.cmp(&x))
                    })
            });
            match next {
                Some(n) => {
                    used[n] = true;
                    cur = n;
                }
                None => break,
            }
        }
        if closed {
            if let Ok(r) = Ring::new(verts) {
                rings.push(r);
            }
        }
    }
    rings
}

/// Union of polygons that meet along shared edges with identical vertices,
/// e.g. the districts of one state. Overlapping interiors are not resolved.
pub fn dissolve(polygons: &[PlanarPolygon]) -> PlanarMultiPolygon {
    let mut edges = Vec::new();
    let mut bbox = None;
    for p in polygons {
        edges.extend(p.boundary_segments());
        bbox = Some(match bbox {
            None => p.bbox(),
            Some(b) => p.bbox().union(&b),
        });
    }
    let eps = bbox.map_or(0.0, |b| 1e-12 * b.diagonal() * b.diagonal());
    assemble(edges, eps)
}
