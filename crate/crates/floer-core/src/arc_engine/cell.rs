//! Planar cell complex with half-edges, rotation systems and corner angles.

use super::ArcError;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// Directions in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    N,
    W,
    S,
    E,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::W, Dir::S, Dir::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Dir {
        Dir::ALL[i % 4]
    }
}

/// Generator slot carried by an intersection point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Decoration {
    Hat,
    Check,
    Critical,
    Contact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexKind {
    /// Critical value. `top` marks the upper row in Capped mode.
    Marked { label: usize, wall: usize, top: bool },
    /// Transverse crossing of fixed arc `fixed` with moving arc `moving`.
    Crossing { fixed: usize, moving: usize },
    /// Moving arc crossing an auxiliary segment that joins a top point to the boundary.
    Aux { wall: usize, moving: usize },
    /// Point on the boundary circle.
    Anchor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub pos: [i64; 2],
    /// Outgoing half-edge per direction.
    pub rot: [Option<usize>; 4],
    pub slots: Vec<Decoration>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Boundary,
    Fixed,
    Moving,
    Aux,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub kind: EdgeKind,
    /// Arc index (1-based) for fixed and moving edges.
    pub arc: Option<usize>,
    /// `h[0]` runs along the arc orientation.
    pub h: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdge {
    pub origin: usize,
    pub target: usize,
    pub edge: usize,
    pub twin: usize,
    /// Direction in which it leaves `origin`.
    pub dir: Dir,
    /// Corner angle at `target` between this half-edge and `next`, in quarter turns.
    pub gap: u8,
    pub next: usize,
    /// Face on the left.
    pub face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Boundary cycle of half-edges, face on the left.
    pub cycle: Vec<usize>,
    /// The unbounded side of the disk boundary.
    pub outer: bool,
    /// Touches the boundary circle; never part of a domain.
    pub excluded: bool,
    pub marked_corners: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Layout {
    Capped,
    HalfArc,
    /// Standalone grid of two fixed and two moving chords.
    Grid,
}

/// Possible generator component: a vertex together with the arc pair meeting there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointSite {
    pub vertex: usize,
    pub fixed: usize,
    pub moving: usize,
    pub slots: Vec<Decoration>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub layout: Layout,
    pub strands: usize,
    pub vertices: Vec<Vertex>,
    pub halfedges: Vec<HalfEdge>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// Vertices along fixed arc `i` (index `i-1`), following its orientation.
    pub fixed_seq: Vec<Vec<usize>>,
    /// Vertices along moving arc `i` (index `i-1`), from start to end.
    pub moving_seq: Vec<Vec<usize>>,
    pub outside: usize,
    pub sites: Vec<PointSite>,
}

pub(crate) struct Builder {
    pub vertices: Vec<Vertex>,
    pub halfedges: Vec<HalfEdge>,
    pub edges: Vec<Edge>,
}

impl Builder {
    pub fn new() -> Self {
        Builder { vertices: Vec::new(), halfedges: Vec::new(), edges: Vec::new() }
    }

    pub fn add_vertex(&mut self, kind: VertexKind, pos: [i64; 2]) -> usize {
        self.vertices.push(Vertex { kind, pos, rot: [None; 4], slots: Vec::new() });
        self.vertices.len() - 1
    }

    pub fn add_edge(
        &mut self,
        u: usize,
        du: Dir,
        v: usize,
        dv: Dir,
        kind: EdgeKind,
        arc: Option<usize>,
    ) -> Result<usize, ArcError> {
        if self.vertices[u].rot[du.index()].is_some() || self.vertices[v].rot[dv.index()].is_some() {
            return Err(ArcError::DegeneratePosition("two edges leave a vertex in the same direction"));
        }
        let e = self.edges.len();
        let h0 = self.halfedges.len();
        let h1 = h0 + 1;
        let he = |origin, target, twin, dir| HalfEdge { origin, target, edge: e, twin, dir, gap: 0, next: 0, face: 0 };
        self.halfedges.push(he(u, v, h1, du));
        self.halfedges.push(he(v, u, h0, dv));
        self.vertices[u].rot[du.index()] = Some(h0);
        self.vertices[v].rot[dv.index()] = Some(h1);
        self.edges.push(Edge { kind, arc, h: [h0, h1] });
        Ok(e)
    }

    /// Traces faces (turning clockwise at every vertex) and checks planarity.
    /// `outside_on_left` says on which side of the boundary edges' `h[0]` the
    /// unbounded region lies.
    pub fn finish(
        mut self,
        layout: Layout,
        strands: usize,
        fixed_seq: Vec<Vec<usize>>,
        moving_seq: Vec<Vec<usize>>,
        outside_on_left: bool,
    ) -> Result<CellComplex, ArcError> {
        let nh = self.halfedges.len();
        for h in 0..nh {
            let v = self.halfedges[h].target;
            let back = self.halfedges[self.halfedges[h].twin].dir.index();
            let mut found = None;
            for step in 1..=4usize {
                let d = (back + 4 - step) % 4;
                if let Some(nx) = self.vertices[v].rot[d] {
                    found = Some((nx, step as u8));
                    break;
                }
            }
            let (nx, gap) = found.ok_or(ArcError::DegeneratePosition("isolated vertex"))?;
            self.halfedges[h].next = nx;
            self.halfedges[h].gap = gap;
        }
        let mut faces: Vec<Face> = Vec::new();
        let mut seen = vec![false; nh];
        for h in 0..nh {
            if seen[h] {
                continue;
            }
            let fid = faces.len();
            let mut cycle = Vec::new();
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                self.halfedges[x].face = fid;
                x = self.halfedges[x].next;
            }
            if x != h {
                return Err(ArcError::DegeneratePosition("face boundary is not a single cycle"));
            }
            let marked_corners = cycle
                .iter()
                .filter(|&&x| matches!(self.vertices[self.halfedges[x].target].kind, VertexKind::Marked { .. }))
                .count();
            faces.push(Face { cycle, outer: false, excluded: false, marked_corners });
        }
        let v = self.vertices.len() as i64;
        let e = self.edges.len() as i64;
        if v - e + faces.len() as i64 != 2 {
            return Err(ArcError::DegeneratePosition("diagram is not planar"));
        }
        let (out_side, in_side) = if outside_on_left { (0, 1) } else { (1, 0) };
        let boundary: Vec<[usize; 2]> =
            self.edges.iter().filter(|e| e.kind == EdgeKind::Boundary).map(|e| e.h).collect();
        let outside = self.halfedges[boundary[0][out_side]].face;
        let mut excluded = BTreeSet::new();
        for h in &boundary {
            if self.halfedges[h[out_side]].face != outside {
                return Err(ArcError::DegeneratePosition("boundary circle is not a single face"));
            }
            excluded.insert(self.halfedges[h[in_side]].face);
        }
        faces[outside].outer = true;
        for f in excluded {
            if f == outside {
                return Err(ArcError::DegeneratePosition("boundary touches itself"));
            }
            faces[f].excluded = true;
        }
        let mut cx = CellComplex {
            layout,
            strands,
            vertices: self.vertices,
            halfedges: self.halfedges,
            edges: self.edges,
            faces,
            fixed_seq,
            moving_seq,
            outside,
            sites: Vec::new(),
        };
        cx.sites = cx.compute_sites();
        for s in cx.sites.clone() {
            for d in &s.slots {
                if !cx.vertices[s.vertex].slots.contains(d) {
                    cx.vertices[s.vertex].slots.push(*d);
                }
            }
        }
        Ok(cx)
    }
}

impl CellComplex {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `V - E + F` counting only faces inside the disk; always 1.
    pub fn euler_characteristic(&self) -> i64 {
        let inside = self.faces.iter().filter(|f| !f.outer).count() as i64;
        self.vertices.len() as i64 - self.edges.len() as i64 + inside
    }

    pub fn is_marked(&self, v: usize) -> bool {
        matches!(self.vertices[v].kind, VertexKind::Marked { .. })
    }

    pub fn marked_label(&self, v: usize) -> Option<usize> {
        match self.vertices[v].kind {
            VertexKind::Marked { label, .. } => Some(label),
            _ => None,
        }
    }

    /// Marked vertices in label order.
    pub fn marked_vertices(&self) -> Vec<usize> {
        let mut m: Vec<(usize, usize)> =
            (0..self.vertices.len()).filter_map(|v| self.marked_label(v).map(|l| (l, v))).collect();
        m.sort_unstable();
        m.into_iter().map(|(_, v)| v).collect()
    }

    /// Faces around vertex `v`, one per outgoing half-edge.
    pub fn faces_around(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices[v].rot.iter().flatten().map(move |&h| self.halfedges[h].face)
    }

    /// Corner vertices of a face (targets of its half-edges).
    pub fn face_corners(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        self.faces[f].cycle.iter().map(move |&h| self.halfedges[h].target)
    }

    fn compute_sites(&self) -> Vec<PointSite> {
        let mut out = Vec::new();
        for (fi, seq) in self.fixed_seq.iter().enumerate() {
            let i = fi + 1;
            for (t, &v) in seq.iter().enumerate() {
                match self.vertices[v].kind {
                    VertexKind::Crossing { moving, .. } => {
                        let contact = self.layout == Layout::HalfArc
                            && t + 2 == seq.len()
                            && self.moving_seq[moving - 1].get(1) == Some(&v)
                            && moving == i;
                        let slots = if contact {
                            vec![Decoration::Contact]
                        } else {
                            vec![Decoration::Hat, Decoration::Check]
                        };
                        out.push(PointSite { vertex: v, fixed: i, moving, slots });
                    }
                    VertexKind::Marked { .. } => {
                        for (mi, ms) in self.moving_seq.iter().enumerate() {
                            if ms.first() == Some(&v) || ms.last() == Some(&v) {
                                out.push(PointSite {
                                    vertex: v,
                                    fixed: i,
                                    moving: mi + 1,
                                    slots: vec![Decoration::Critical],
                                });
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        out
    }
}
