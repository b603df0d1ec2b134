//! Delaunay triangulation of point sites and its dual Voronoi edge set.
//!
//! Construction is incremental Bowyer-Watson over exact predicates, with
//! "ghost" triangles hanging off every convex-hull edge so the hull is
//! exact without a super-triangle. Sites closer than [`MERGE_DISTANCE`]
//! are merged. When four or more sites are cocircular, the diagonal that
//! touches the lowest site index wins, which makes the output independent
//! of insertion accidents.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::predicates::{incircle, on_segment, orient2d};
use crate::geometry::{BBox, Point2D, Segment};
use crate::{Error, Result};

/// Sites within this distance (metres) of each other are treated as one.
pub const MERGE_DISTANCE: f64 = 1e-9;

/// Number of sentinel sites ringed around the extent by [`voronoi_edges`].
pub const SENTINEL_COUNT: usize = 8;

const GHOST: usize = usize::MAX;
const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Tri {
    v: [usize; 3],
    n: [usize; 3],
    alive: bool,
}

impl Tri {
    fn is_ghost(&self) -> bool {
        self.v[2] == GHOST
    }

    fn index_not_in(&self, a: usize, b: usize) -> usize {
        (0..3)
            .find(|&k| self.v[k] != a && self.v[k] != b)
            .expect("edge belongs to triangle")
    }

    fn replace_neighbor(&mut self, old: usize, new: usize) {
        for k in 0..3 {
            if self.n[k] == old {
                self.n[k] = new;
                return;
            }
        }
    }
}

struct Mesh<'a> {
    pts: &'a [Point2D],
    tris: Vec<Tri>,
    free: Vec<usize>,
    last: usize,
}

impl<'a> Mesh<'a> {
    fn alloc(&mut self, t: Tri) -> usize {
        if let Some(i) = self.free.pop() {
            self.tris[i] = t;
            i
        } else {
            self.tris.push(t);
            self.tris.len() - 1
        }
    }

    fn start(pts: &'a [Point2D], a: usize, b: usize, c: usize) -> Mesh<'a> {
        let (b, c) = if orient2d(pts[a], pts[b], pts[c]) > 0.0 {
            (b, c)
        } else {
            (c, b)
        };
        let mut mesh = Mesh {
            pts,
            tris: Vec::new(),
            free: Vec::new(),
            last: 0,
        };
        let ids: Vec<usize> = [[a, b, c], [b, a, GHOST], [c, b, GHOST], [a, c, GHOST]]
            .iter()
            .map(|&v| {
                mesh.alloc(Tri {
                    v,
                    n: [NONE; 3],
                    alive: true,
                })
            })
            .collect();
        mesh.link(&ids);
        mesh
    }

    /// Sets mutual adjacency among the given triangles by matching edges.
    fn link(&mut self, ids: &[usize]) {
        let mut edges: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for &t in ids {
            let v = self.tris[t].v;
            for k in 0..3 {
                edges.insert((v[(k + 1) % 3], v[(k + 2) % 3]), (t, k));
            }
        }
        for &t in ids {
            let v = self.tris[t].v;
            for k in 0..3 {
                if let Some(&(u, _)) = edges.get(&(v[(k + 2) % 3], v[(k + 1) % 3])) {
                    self.tris[t].n[k] = u;
                }
            }
        }
    }

    fn in_conflict(&self, t: usize, p: Point2D) -> bool {
        let tri = &self.tris[t];
        let [a, b, c] = tri.v;
        if tri.is_ghost() {
            let (pa, pb) = (self.pts[a], self.pts[b]);
            let o = orient2d(pa, pb, p);
            o > 0.0 || (o == 0.0 && on_segment(p, pa, pb) && p != pa && p != pb)
        } else {
            incircle(self.pts[a], self.pts[b], self.pts[c], p) > 0.0
        }
    }

    /// Visibility walk towards `p`; returns a triangle whose closure
    /// contains `p`, or the ghost beyond a hull edge `p` is outside of.
    fn locate(&self, p: Point2D) -> usize {
        let mut t = self.last;
        if !self.tris[t].alive {
            t = self
                .tris
                .iter()
                .position(|t| t.alive)
                .expect("mesh is non-empty");
        }
        if self.tris[t].is_ghost() {
            t = self.tris[t].n[2];
        }
        let limit = 4 * self.tris.len() + 16;
        let mut rot = 0usize;
        'walk: for _ in 0..limit {
            let tri = &self.tris[t];
            for j in 0..3 {
                let k = (j + rot) % 3;
                let a = self.pts[tri.v[(k + 1) % 3]];
                let b = self.pts[tri.v[(k + 2) % 3]];
                if orient2d(a, b, p) < 0.0 {
                    let next = tri.n[k];
                    if self.tris[next].is_ghost() {
                        return next;
                    }
                    t = next;
                    rot = rot.wrapping_add(1);
                    continue 'walk;
                }
            }
            return t;
        }
        // Fallback scan; not reached on a valid Delaunay mesh.
        (0..self.tris.len())
            .find(|&i| self.tris[i].alive && self.in_conflict(i, p))
            .expect("some triangle conflicts with a new site")
    }

    fn insert(&mut self, site: usize) {
        let p = self.pts[site];
        let start = self.locate(p);

        let mut cavity = vec![start];
        self.tris[start].alive = false;
        let mut i = 0;
        while i < cavity.len() {
            let t = cavity[i];
            i += 1;
            for k in 0..3 {
                let u = self.tris[t].n[k];
                if self.tris[u].alive && self.in_conflict(u, p) {
                    self.tris[u].alive = false;
                    cavity.push(u);
                }
            }
        }

        // Boundary edges (u, v) in cavity-CCW order with the outside neighbour.
        let mut boundary: Vec<(usize, usize, usize)> = Vec::new();
        for &t in &cavity {
            let tri = self.tris[t];
            for k in 0..3 {
                let out = tri.n[k];
                if self.tris[out].alive {
                    boundary.push((tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], out));
                }
            }
        }
        self.free.extend_from_slice(&cavity);

        let ids: Vec<usize> = boundary
            .iter()
            .map(|_| {
                self.alloc(Tri {
                    v: [NONE; 3],
                    n: [NONE; 3],
                    alive: true,
                })
            })
            .collect();
        for (j, &(u, v, out)) in boundary.iter().enumerate() {
            let next = ids[boundary
                .iter()
                .position(|e| e.0 == v)
                .expect("closed cavity")];
            let prev = ids[boundary
                .iter()
                .position(|e| e.1 == u)
                .expect("closed cavity")];
            // Logical triangle (u, v, p): opposite u is (v, p), opposite v is (p, u).
            let mut verts = [u, v, site];
            let mut nbrs = [next, prev, out];
            let r = if u == GHOST {
                1
            } else if v == GHOST {
                2
            } else {
                0
            };
            verts.rotate_left(r);
            nbrs.rotate_left(r);
            self.tris[ids[j]] = Tri {
                v: verts,
                n: nbrs,
                alive: true,
            };
            let back = self.tris[out].index_not_in(u, v);
            self.tris[out].n[back] = ids[j];
        }
        self.last = ids
            .iter()
            .copied()
            .find(|&t| !self.tris[t].is_ghost())
            .unwrap_or(ids[0]);
    }

    /// Flips cocircular diagonals so each one touches the lowest site index
    /// of its quadrilateral.
    fn canonicalize_cocircular(&mut self) {
        let mut work: Vec<(usize, usize)> = Vec::new();
        for t in 0..self.tris.len() {
            if self.tris[t].alive && !self.tris[t].is_ghost() {
                work.extend((0..3).map(|k| (t, k)));
            }
        }
        while let Some((t, k)) = work.pop() {
            if !self.tris[t].alive || self.tris[t].is_ghost() {
                continue;
            }
            let tri = self.tris[t];
            let u = tri.n[k];
            if u == NONE || self.tris[u].is_ghost() {
                continue;
            }
            let (a, b, c) = (tri.v[k], tri.v[(k + 1) % 3], tri.v[(k + 2) % 3]);
            let j = self.tris[u].index_not_in(b, c);
            let d = self.tris[u].v[j];
            let (pa, pb, pc, pd) = (self.pts[a], self.pts[b], self.pts[c], self.pts[d]);
            if incircle(pa, pb, pc, pd) != 0.0 {
                continue;
            }
            if orient2d(pa, pb, pd) <= 0.0 || orient2d(pa, pd, pc) <= 0.0 {
                continue;
            }
            let low = a.min(b).min(c).min(d);
            if low == b || low == c {
                continue;
            }
            self.flip(t, k, u, j);
            work.extend((0..3).map(|m| (t, m)));
            work.extend((0..3).map(|m| (u, m)));
        }
    }

    fn flip(&mut self, t: usize, k: usize, u: usize, j: usize) {
        let tt = self.tris[t];
        let uu = self.tris[u];
        let (a, b, c) = (tt.v[k], tt.v[(k + 1) % 3], tt.v[(k + 2) % 3]);
        let d = uu.v[j];
        let nt_ab = tt.n[(k + 2) % 3];
        let nt_ca = tt.n[(k + 1) % 3];
        let nu_bd = uu.n[(j + 1) % 3];
        let nu_dc = uu.n[(j + 2) % 3];
        self.tris[t] = Tri {
            v: [a, b, d],
            n: [nu_bd, u, nt_ab],
            alive: true,
        };
        self.tris[u] = Tri {
            v: [a, d, c],
            n: [nu_dc, nt_ca, t],
            alive: true,
        };
        self.tris[nu_bd].replace_neighbor(u, t);
        self.tris[nt_ca].replace_neighbor(t, u);
    }
}

/// Maps every site to the lowest index of the cluster of sites within
/// [`MERGE_DISTANCE`] of it.
fn merge_duplicates(sites: &[Point2D]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sites.len()).collect();
    order.sort_by(|&i, &j| sites[i].lex_cmp(&sites[j]).then(i.cmp(&j)));
    let mut rep: Vec<usize> = (0..sites.len()).collect();
    let mut assigned = vec![false; sites.len()];
    for (oi, &i) in order.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        let mut cluster = vec![i];
        for &j in &order[oi + 1..] {
            if sites[j].x - sites[i].x > MERGE_DISTANCE {
                break;
            }
            if !assigned[j] && sites[i].distance(sites[j]) <= MERGE_DISTANCE {
                assigned[j] = true;
                cluster.push(j);
            }
        }
        let low = *cluster.iter().min().expect("cluster has its seed");
        for &m in &cluster {
            rep[m] = low;
        }
    }
    rep
}

/// Builds the mesh over the representative sites; returns the mesh and the
/// representative map.
fn build_mesh(sites: &[Point2D]) -> Result<(Mesh<'_>, Vec<usize>)> {
    if sites.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    let rep = merge_duplicates(sites);
    let unique: Vec<usize> = (0..sites.len()).filter(|&i| rep[i] == i).collect();
    if unique.len() < 3 {
        return Err(Error::DegenerateInput("need at least 3 distinct sites"));
    }
    let a = unique[0];
    let b = unique[1];
    let c = unique[2..]
        .iter()
        .copied()
        .find(|&c| orient2d(sites[a], sites[b], sites[c]) != 0.0)
        .ok_or(Error::DegenerateInput("all sites are collinear"))?;
    let mut mesh = Mesh::start(sites, a, b, c);
    for &s in &unique {
        if s != a && s != b && s != c {
            mesh.insert(s);
        }
    }
    mesh.canonicalize_cocircular();
    Ok((mesh, rep))
}

/// A Delaunay triangulation: counterclockwise site-index triples.
///
/// Merged duplicate sites are represented by the lowest index of their cluster.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangulation {
    pub sites: Vec<Point2D>,
    pub triangles: Vec<[usize; 3]>,
}

impl Triangulation {
    /// Undirected edges, each once, as (low, high) site index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |k| (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]))))
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }
}

/// Delaunay triangulation of `sites`.
pub fn delaunay(sites: &[Point2D]) -> Result<Triangulation> {
    let (mesh, _) = build_mesh(sites)?;
    let triangles = mesh
        .tris
        .iter()
        .filter(|t| t.alive && !t.is_ghost())
        .map(|t| t.v)
        .collect();
    Ok(Triangulation {
        sites: sites.to_vec(),
        triangles,
    })
}

/// One finite Voronoi edge: two circumcentre indices and the two sites
/// whose cells it separates (lower index first).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VoronoiEdge {
    pub vertices: (usize, usize),
    pub sites: (usize, usize),
}

/// The Voronoi edges separating cells of real (non-sentinel) sites.
#[derive(Clone, Debug, PartialEq)]
pub struct VoronoiDiagram {
    pub sites: Vec<Point2D>,
    pub sentinels: Vec<Point2D>,
    pub vertices: Vec<Point2D>,
    pub edges: Vec<VoronoiEdge>,
}

impl VoronoiDiagram {
    pub fn segment(&self, edge: &VoronoiEdge) -> Segment {
        Segment::new(
            self.vertices[edge.vertices.0],
            self.vertices[edge.vertices.1],
        )
    }

    pub fn segments(&self) -> impl Iterator<Item = (Segment, (usize, usize))> + '_ {
        self.edges.iter().map(move |e| (self.segment(e), e.sites))
    }
}

/// Eight sentinel sites `margin` outside `extent`: its corners and edge midpoints.
pub fn sentinel_sites(extent: &BBox, margin: f64) -> [Point2D; SENTINEL_COUNT] {
    let b = extent.expanded(margin);
    let c = b.center();
    [
        b.min,
        Point2D::new(c.x, b.min.y),
        Point2D::new(b.max.x, b.min.y),
        Point2D::new(b.max.x, c.y),
        b.max,
        Point2D::new(c.x, b.max.y),
        Point2D::new(b.min.x, b.max.y),
        Point2D::new(b.min.x, c.y),
    ]
}

fn circumcenter(a: Point2D, b: Point2D, c: Point2D) -> Point2D {
    let bp = b - a;
    let cp = c - a;
    let d = 2.0 * orient2d(a, b, c);
    let b2 = bp.dot(bp);
    let c2 = cp.dot(cp);
    Point2D::new(
        a.x + (cp.y * b2 - bp.y * c2) / d,
        a.y + (bp.x * c2 - cp.x * b2) / d,
    )
}

/// Voronoi edges of `sites`, computed as the dual of a Delaunay
/// triangulation that also contains eight sentinel sites placed
/// `sentinel_margin` outside `extent`.
///
/// Edges bordering a sentinel cell are discarded, so every returned edge is
/// a finite segment between two real sites' cells. Each cell border appears
/// once; zero-length borders (cocircular sites) are dropped.
pub fn voronoi_edges(
    sites: &[Point2D],
    extent: &BBox,
    sentinel_margin: f64,
) -> Result<VoronoiDiagram> {
    if sites.is_empty() {
        return Err(Error::DegenerateInput("no Voronoi sites"));
    }
    if !sentinel_margin.is_finite() || sentinel_margin <= 0.0 {
        return Err(Error::InvalidParams("sentinel margin must be positive"));
    }
    let sentinels = sentinel_sites(extent, sentinel_margin);
    let n_real = sites.len();
    let mut all = Vec::with_capacity(n_real + SENTINEL_COUNT);
    all.extend_from_slice(sites);
    all.extend_from_slice(&sentinels);
    let (mesh, _) = build_mesh(&all)?;

    let mut vertices = Vec::new();
    let mut vertex_of = vec![NONE; mesh.tris.len()];
    for (i, t) in mesh.tris.iter().enumerate() {
        if t.alive && !t.is_ghost() {
            vertex_of[i] = vertices.len();
            vertices.push(circumcenter(all[t.v[0]], all[t.v[1]], all[t.v[2]]));
        }
    }

    let mut edges = Vec::new();
    for (t, tri) in mesh.tris.iter().enumerate() {
        if !tri.alive || tri.is_ghost() {
            continue;
        }
        for k in 0..3 {
            let u = tri.n[k];
            if u < t || mesh.tris[u].is_ghost() {
                continue;
            }
            let (s0, s1) = (tri.v[(k + 1) % 3], tri.v[(k + 2) % 3]);
            if s0 >= n_real || s1 >= n_real {
                continue;
            }
            let (va, vb) = (vertex_of[t], vertex_of[u]);
            let (pa, pb) = (vertices[va], vertices[vb]);
            if pa == pb || !pa.is_finite() || !pb.is_finite() {
                continue;
            }
            edges.push(VoronoiEdge {
                vertices: (va, vb),
                sites: (s0.min(s1), s0.max(s1)),
            });
        }
    }
    Ok(VoronoiDiagram {
        sites: sites.to_vec(),
        sentinels: sentinels.to_vec(),
        vertices,
        edges,
    })
}
