//! Arc diagrams over the marked disk and their planar cell complexes.
//!
//! The disk is cut by `κ` vertical walls, one through each fixed arc. Wall `j`
//! is split by its marked point(s) into segments, and a moving arc is recorded
//! as the sequence of wall segments it crosses (a *walk*). Walks come from the
//! free-group action of half twists; their relative order along each wall is
//! recovered combinatorially when the diagram is compiled into a
//! [`CellComplex`].

mod cell;
mod compile;
pub mod free_group;
mod model;

pub use cell::{
    CellComplex, Decoration, Dir, Edge, EdgeKind, Face, HalfEdge, Layout, PointSite, Vertex,
    VertexKind,
};
pub use compile::build_cell_complex;
pub use model::build_model_2x2;

use crate::braid_core::BraidWord;
use alloc::vec;
use alloc::vec::Vec;
use free_group::{route, FreeArc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("arcs are not embedded: {0}")]
    NonEmbeddedInput(&'static str),
    #[error("degenerate position: {0}")]
    DegeneratePosition(&'static str),
    #[error("braid on {braid} strands does not fit a diagram with {diagram} strands")]
    StrandMismatch { braid: usize, diagram: usize },
    #[error("arc passes above a top marked point; half twists act only on the bottom row")]
    NotBraidable,
}

/// Capped: `2κ` marked points in two rows joined by the fixed arcs.
/// HalfArc: `κ` marked points, fixed arcs run straight up to the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Capped,
    HalfArc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramConfig {
    pub mode: Mode,
    pub strands: usize,
    /// Complex half-dimension of the fibre; only 2 is supported.
    pub fiber_dim_n: u32,
}

impl DiagramConfig {
    pub fn new(mode: Mode, strands: usize) -> Self {
        DiagramConfig { mode, strands, fiber_dim_n: 2 }
    }
}

/// Wall segment. HalfArc walls are `U` (above the marked point) and `L`
/// (below). Capped walls are `T` (above the top point), `G` (the fixed arc
/// itself) and `L` (below the bottom point).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Seg {
    U,
    L,
    T,
    G,
}

/// One crossing of a wall segment; `dir = +1` means left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub wall: usize,
    pub seg: Seg,
    pub dir: i8,
}

impl Crossing {
    pub fn new(wall: usize, seg: Seg, dir: i8) -> Self {
        Crossing { wall, seg, dir }
    }

    fn cancels(&self, o: &Crossing) -> bool {
        self.wall == o.wall && self.seg == o.seg && self.dir == -o.dir
    }

    pub fn strip_after(&self) -> usize {
        if self.dir > 0 {
            self.wall
        } else {
            self.wall - 1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcStart {
    /// On the boundary circle at the top of strip `strip` (HalfArc).
    Boundary { strip: usize },
    /// At the top marked point of wall `wall`, leaving to `side` (Capped).
    Top { wall: usize, side: i8 },
}

/// Arrival at the bottom marked point of wall `wall` from `side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcEnd {
    pub wall: usize,
    pub side: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcWalk {
    pub start: ArcStart,
    pub events: Vec<Crossing>,
    pub end: ArcEnd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPoint {
    /// Capped: `1..=κ` on the bottom row, `κ+1..=2κ` on the top row.
    pub label: usize,
    pub wall: usize,
    pub top: bool,
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDiagram {
    pub config: DiagramConfig,
    pub marked_points: Vec<MarkedPoint>,
    /// Fixed arc `i` is wall `i`; moving arc `i` is `moving[i-1]`.
    pub moving: Vec<ArcWalk>,
}

impl ArcDiagram {
    pub fn strands(&self) -> usize {
        self.config.strands
    }

    pub fn mode(&self) -> Mode {
        self.config.mode
    }

    /// Endpoints (marked labels) of fixed arc `i`; HalfArc arcs end on the boundary.
    pub fn fixed_arc_endpoints(&self, i: usize) -> (usize, Option<usize>) {
        match self.config.mode {
            Mode::HalfArc => (i, None),
            Mode::Capped => (i, Some(self.config.strands + i)),
        }
    }

    /// Marked label where moving arc `i` ends.
    pub fn moving_end_label(&self, i: usize) -> usize {
        self.moving[i - 1].end.wall
    }

    /// Number of transverse crossings with fixed arcs, counted per arc.
    pub fn crossing_count(&self) -> usize {
        let fixed_seg = match self.config.mode {
            Mode::HalfArc => Seg::U,
            Mode::Capped => Seg::G,
        };
        self.moving.iter().map(|w| w.events.iter().filter(|e| e.seg == fixed_seg).count()).sum()
    }
}

fn marked_points(cfg: &DiagramConfig) -> Vec<MarkedPoint> {
    let k = cfg.strands;
    let mut out = Vec::new();
    for j in 1..=k {
        match cfg.mode {
            Mode::HalfArc => out.push(MarkedPoint { label: j, wall: j, top: false, x: 2 * j as i64, y: 0 }),
            Mode::Capped => {
                out.push(MarkedPoint { label: k + j, wall: j, top: true, x: 2 * j as i64, y: 2 });
                out.push(MarkedPoint { label: j, wall: j, top: false, x: 2 * j as i64, y: 0 });
            }
        }
    }
    out
}

/// Fixed arcs and their pushoffs: the moving arc leaves each shared marked
/// point counterclockwise of the fixed arc.
pub fn build_base_diagram(cfg: DiagramConfig) -> ArcDiagram {
    let moving = (1..=cfg.strands)
        .map(|i| match cfg.mode {
            Mode::HalfArc => ArcWalk {
                start: ArcStart::Boundary { strip: i },
                events: vec![Crossing::new(i, Seg::U, -1)],
                end: ArcEnd { wall: i, side: -1 },
            },
            Mode::Capped => ArcWalk {
                start: ArcStart::Top { wall: i, side: 1 },
                events: Vec::new(),
                end: ArcEnd { wall: i, side: 1 },
            },
        })
        .collect();
    ArcDiagram { config: cfg, marked_points: marked_points(&cfg), moving }
}

fn free_arc_of(walk: &ArcWalk) -> Result<FreeArc, ArcError> {
    let mut word = Vec::new();
    for e in &walk.events {
        match e.seg {
            Seg::L => word.push((e.wall, e.dir)),
            Seg::T => return Err(ArcError::NotBraidable),
            Seg::U | Seg::G => {}
        }
    }
    let half_twists = if walk.end.side < 0 { 0 } else { -1 };
    Ok(FreeArc { word: free_group::reduce(word), end: walk.end.wall, half_twists })
}

fn walk_of(mode: Mode, index: usize, arc: &FreeArc) -> ArcWalk {
    match mode {
        Mode::HalfArc => {
            let (ev, side) = route(arc, index - 1);
            let mut events = vec![Crossing::new(index, Seg::U, -1)];
            events.extend(ev.into_iter().map(|(up, w, d)| Crossing::new(w, if up { Seg::U } else { Seg::L }, d)));
            ArcWalk { start: ArcStart::Boundary { strip: index }, events, end: ArcEnd { wall: arc.end, side } }
        }
        Mode::Capped => {
            let (ev, side) = route(arc, index);
            let events = ev.into_iter().map(|(up, w, d)| Crossing::new(w, if up { Seg::G } else { Seg::L }, d)).collect();
            ArcWalk { start: ArcStart::Top { wall: index, side: 1 }, events, end: ArcEnd { wall: arc.end, side } }
        }
    }
}

/// Replaces the moving arcs by their images under the half twists of `b`,
/// letters applied in word order (positive letter = positive half twist).
/// The output is generally not in minimal position.
pub fn apply_braid(d: &ArcDiagram, b: &BraidWord) -> Result<ArcDiagram, ArcError> {
    if b.strands > d.config.strands {
        return Err(ArcError::StrandMismatch { braid: b.strands, diagram: d.config.strands });
    }
    let mut moving = Vec::with_capacity(d.moving.len());
    for (idx, w) in d.moving.iter().enumerate() {
        let mut arc = free_arc_of(w)?;
        for &l in &b.letters {
            arc = arc.twist(l.unsigned_abs() as usize, l.signum());
        }
        moving.push(walk_of(d.config.mode, idx + 1, &arc.canonical()));
    }
    Ok(ArcDiagram { config: d.config, marked_points: d.marked_points.clone(), moving })
}

fn start_strip(start: &ArcStart) -> usize {
    match *start {
        ArcStart::Boundary { strip } => strip,
        ArcStart::Top { wall, side } => {
            if side > 0 {
                wall
            } else {
                wall - 1
            }
        }
    }
}

fn validate(mode: Mode, k: usize, w: &ArcWalk) -> Result<(), ArcError> {
    let mut s = start_strip(&w.start);
    if s > k {
        return Err(ArcError::NonEmbeddedInput("start outside the disk"));
    }
    for e in &w.events {
        let ok_seg = match mode {
            Mode::HalfArc => matches!(e.seg, Seg::U | Seg::L),
            Mode::Capped => matches!(e.seg, Seg::T | Seg::G | Seg::L),
        };
        if !ok_seg || e.wall == 0 || e.wall > k || (e.dir != 1 && e.dir != -1) {
            return Err(ArcError::NonEmbeddedInput("crossing of a nonexistent wall segment"));
        }
        let from = if e.dir > 0 { e.wall - 1 } else { e.wall };
        if from != s {
            return Err(ArcError::NonEmbeddedInput("walk jumps between non-adjacent strips"));
        }
        s = e.strip_after();
    }
    let need = if w.end.side < 0 { w.end.wall.wrapping_sub(1) } else { w.end.wall };
    if w.end.wall == 0 || w.end.wall > k || need != s {
        return Err(ArcError::NonEmbeddedInput("walk does not reach its endpoint"));
    }
    Ok(())
}

/// Cancels adjacent back-and-forth crossings (empty bigons), and bigons with
/// a corner at an arc's own marked endpoint. A HalfArc contact crossing next
/// to the boundary is kept: that part of the arc is fixed by the boundary
/// condition.
pub fn minimal_position(d: &ArcDiagram) -> Result<ArcDiagram, ArcError> {
    let k = d.config.strands;
    let mode = d.config.mode;
    let mut moving = Vec::with_capacity(d.moving.len());
    let mut ends = Vec::new();
    for w in &d.moving {
        validate(mode, k, w)?;
        let pinned = match (mode, w.start) {
            (Mode::HalfArc, ArcStart::Boundary { strip }) => matches!(
                w.events.first(),
                Some(e) if e.wall == strip && e.seg == Seg::U && e.dir == -1
            ),
            _ => false,
        };
        let (head, body) = w.events.split_at(usize::from(pinned));
        let mut ev: Vec<Crossing> = head.to_vec();
        let base = ev.len();
        for e in body {
            match ev.last() {
                Some(l) if ev.len() > base && l.cancels(e) => {
                    ev.pop();
                }
                _ => ev.push(*e),
            }
        }
        let mut end = w.end;
        while ev.len() > base {
            let l = *ev.last().unwrap();
            if l.wall == end.wall && l.dir == end.side && l.seg != Seg::T {
                ev.pop();
                end.side = -end.side;
            } else {
                break;
            }
        }
        let mut start = w.start;
        if let ArcStart::Top { wall, mut side } = start {
            let mut i = 0;
            while i < ev.len() {
                let f = ev[i];
                if f.wall == wall && f.dir == -side && matches!(f.seg, Seg::G | Seg::T) {
                    side = -side;
                    i += 1;
                } else {
                    break;
                }
            }
            ev.drain(..i);
            start = ArcStart::Top { wall, side };
        }
        ends.push(end.wall);
        moving.push(ArcWalk { start, events: ev, end });
    }
    ends.sort_unstable();
    ends.dedup();
    if ends.len() != d.moving.len() {
        return Err(ArcError::NonEmbeddedInput("two moving arcs share an endpoint"));
    }
    Ok(ArcDiagram { config: d.config, marked_points: d.marked_points.clone(), moving })
}

/// Base diagram, braided and put in minimal position.
pub fn braid_diagram(mode: Mode, b: &BraidWord) -> Result<ArcDiagram, ArcError> {
    let base = build_base_diagram(DiagramConfig::new(mode, b.strands));
    minimal_position(&apply_braid(&base, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(k: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(k, l.to_vec()).unwrap()
    }

    #[test]
    fn identity_is_minimal_base() {
        for mode in [Mode::HalfArc, Mode::Capped] {
            let base = build_base_diagram(DiagramConfig::new(mode, 3));
            assert_eq!(minimal_position(&base).unwrap(), base);
            let d = braid_diagram(mode, &BraidWord::identity(3)).unwrap();
            assert_eq!(d, base);
        }
    }

    #[test]
    fn cancelling_twists_restore_base() {
        for mode in [Mode::HalfArc, Mode::Capped] {
            let base = build_base_diagram(DiagramConfig::new(mode, 2));
            let d = braid_diagram(mode, &bw(2, &[1, -1])).unwrap();
            assert_eq!(d.moving, base.moving);
        }
    }

    #[test]
    fn removable_bigon_is_removed() {
        let mut d = build_base_diagram(DiagramConfig::new(Mode::HalfArc, 2));
        let before = d.crossing_count();
        // detour of arc 2 across wall 1 and straight back
        d.moving[1].events.push(Crossing::new(1, Seg::U, -1));
        d.moving[1].events.push(Crossing::new(1, Seg::U, 1));
        assert_eq!(d.crossing_count(), before + 2);
        let m = minimal_position(&d).unwrap();
        assert_eq!(m.crossing_count(), before);
    }

    #[test]
    fn minimal_position_is_idempotent() {
        let d = braid_diagram(Mode::HalfArc, &crate::braid_core::bp_braid(3)).unwrap();
        assert_eq!(minimal_position(&d).unwrap(), d);
    }

    #[test]
    fn broken_walk_is_rejected() {
        let mut d = build_base_diagram(DiagramConfig::new(Mode::HalfArc, 3));
        d.moving[0].events.push(Crossing::new(3, Seg::U, 1));
        assert!(matches!(minimal_position(&d), Err(ArcError::NonEmbeddedInput(_))));
    }
}
