//! Weighted domains between generators, their index and the count rules.
//!
//! Index of a domain `D: y -> y'` (quarter units throughout):
//!
//! ```text
//! ind(D) = 2 e(D) + crit(D) + off(y) - off(y')
//! ```
//!
//! `e` is the Euler measure (each face contributes `1 - sum (2 - q)/4` over
//! its corners, `q` the corner angle in quarter turns, so convex corners cost
//! 1/4 and concave ones give 1/4 back). `crit` adds, at every critical value,
//! half the jump in multiplicity between the sector inside the right angle
//! formed by the fixed and moving arc and the sector across from it.
//! `off` is a per-point table over decorations.

use crate::arc_engine::{CellComplex, Decoration, EdgeKind, Layout};
use crate::floer_complex::{domain_weights, Generator, IntersectionPoint};
use crate::quarters::Quarters;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("no index offset for decoration {0:?} in this layout")]
    UncalibratedDecoration(Decoration),
    #[error("count requested for a domain of index {0}, expected 1")]
    PreconditionViolated(Quarters),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub from: Generator,
    pub to: Generator,
    /// One nonnegative weight per face of the complex.
    pub weights: Vec<i64>,
}

impl Domain {
    pub fn total_weight(&self) -> i64 {
        self.weights.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroReason {
    /// Empty domain between two decorations of the same point tuple.
    DecorationOnly,
    /// A point only changes decoration while no face around it is covered.
    ConstantStrand,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IndeterminateReason {
    Annulus,
    Multiplicity,
    Corners,
    CriticalCorner,
    CriticalValues,
    PointConstraint,
    CriticalBigon,
    WeightBound,
    NotEmbedded,
}

impl IndeterminateReason {
    pub fn code(self) -> &'static str {
        match self {
            IndeterminateReason::Annulus => "annulus",
            IndeterminateReason::Multiplicity => "multiplicity",
            IndeterminateReason::Corners => "corners",
            IndeterminateReason::CriticalCorner => "critical-corner",
            IndeterminateReason::CriticalValues => "critical-values",
            IndeterminateReason::PointConstraint => "point-constraint",
            IndeterminateReason::CriticalBigon => "critical-bigon",
            IndeterminateReason::WeightBound => "weight-bound",
            IndeterminateReason::NotEmbedded => "not-embedded",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CountVerdict {
    /// Counts once, contributing `hbar^hbar`.
    One { hbar: i64 },
    Zero(ZeroReason),
    Indeterminate(IndeterminateReason),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub faces: Vec<usize>,
    pub chi: i64,
    pub corners: usize,
    /// Critical values with every surrounding face covered.
    pub covered_critical: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentResolution {
    pub components: Vec<Component>,
    pub trivial_strips: usize,
    pub chi_total: i64,
    pub hbar_power: i64,
}

/// Marker for domains with some weight above 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotEmbedded;

/// Index offset of one generator point.
pub fn decoration_offset(layout: Layout, d: Decoration) -> Result<Quarters, DomainError> {
    match (layout, d) {
        (_, Decoration::Hat) => Ok(Quarters::ZERO),
        (_, Decoration::Check) => Ok(Quarters::from_int(1)),
        (Layout::HalfArc | Layout::Capped, Decoration::Critical) => Ok(Quarters::halves(1)),
        (Layout::HalfArc, Decoration::Contact) => Ok(Quarters::ZERO),
        (_, d) => Err(DomainError::UncalibratedDecoration(d)),
    }
}

/// Data shared by every index and count computation on one complex.
#[derive(Clone, Debug)]
pub struct DomainContext<'a> {
    pub cx: &'a CellComplex,
    /// `2 e(f)` per face.
    face_2e: Vec<Quarters>,
    /// `(inside, across)` faces at each critical value.
    crit: Vec<(usize, usize)>,
    marked: Vec<usize>,
}

impl<'a> DomainContext<'a> {
    pub fn new(cx: &'a CellComplex) -> Self {
        let face_2e = cx
            .faces
            .iter()
            .map(|f| {
                let loss: i64 = f.cycle.iter().map(|&h| 2 - cx.halfedges[h].gap as i64).sum();
                Quarters(2 * (4 - loss))
            })
            .collect();
        let marked = cx.marked_vertices();
        let crit = marked
            .iter()
            .map(|&v| {
                let r = &cx.vertices[v].rot;
                let arcs: Vec<usize> = (0..4)
                    .filter(|&d| {
                        r[d].is_some_and(|h| {
                            matches!(cx.edges[cx.halfedges[h].edge].kind, EdgeKind::Fixed | EdgeKind::Moving)
                        })
                    })
                    .collect();
                assert_eq!(arcs.len(), 2, "a critical value meets one fixed and one moving arc");
                let (d1, d2) = (arcs[0], arcs[1]);
                // the face left of an outgoing half-edge is the sector counterclockwise after it
                let (small, big) = if (d2 + 4 - d1) % 4 == 1 {
                    (r[d1].unwrap(), r[d2].unwrap())
                } else if (d1 + 4 - d2) % 4 == 1 {
                    (r[d2].unwrap(), r[d1].unwrap())
                } else {
                    panic!("arcs at a critical value must meet at a right angle");
                };
                (cx.halfedges[small].face, cx.halfedges[big].face)
            })
            .collect();
        DomainContext { cx, face_2e, crit, marked }
    }

    pub fn euler_measure(&self, w: &[i64]) -> Quarters {
        let two_e: i64 = w.iter().zip(&self.face_2e).map(|(&x, q)| x * q.0).sum();
        Quarters(two_e / 2)
    }

    /// `2 e(D) + crit(D)`; linear in the weights.
    pub fn shape_index(&self, w: &[i64]) -> Quarters {
        let two_e: i64 = w.iter().zip(&self.face_2e).map(|(&x, q)| x * q.0).sum();
        let crit: i64 = self.crit.iter().map(|&(s, b)| 2 * (w[s] - w[b])).sum();
        Quarters(two_e + crit)
    }

    pub fn offset(&self, g: &Generator) -> Result<Quarters, DomainError> {
        g.points.iter().try_fold(Quarters::ZERO, |acc, p| Ok(acc + decoration_offset(self.cx.layout, p.decoration)?))
    }

    pub fn index(&self, d: &Domain) -> Result<Quarters, DomainError> {
        Ok(self.shape_index(&d.weights) + self.offset(&d.from)? - self.offset(&d.to)?)
    }

    fn covered(&self, w: &[i64]) -> Vec<usize> {
        self.marked.iter().copied().filter(|&v| self.cx.faces_around(v).all(|f| w[f] > 0)).collect()
    }

    fn components(&self, w: &[i64]) -> Vec<Vec<usize>> {
        let cx = self.cx;
        let mut comp = vec![usize::MAX; cx.faces.len()];
        let mut out = Vec::new();
        for f in 0..cx.faces.len() {
            if w[f] <= 0 || comp[f] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[f] = id;
            let mut faces = vec![f];
            let mut k = 0;
            while k < faces.len() {
                let g = faces[k];
                k += 1;
                for &h in &cx.faces[g].cycle {
                    let o = cx.halfedges[cx.halfedges[h].twin].face;
                    if w[o] > 0 && comp[o] == usize::MAX {
                        comp[o] = id;
                        faces.push(o);
                    }
                }
            }
            faces.sort_unstable();
            out.push(faces);
        }
        out
    }

    fn chi(&self, faces: &[usize]) -> i64 {
        let cx = self.cx;
        let inside: BTreeSet<usize> = faces.iter().copied().collect();
        let mut edges = BTreeSet::new();
        let mut verts = BTreeSet::new();
        for &f in faces {
            for &h in &cx.faces[f].cycle {
                let he = &cx.halfedges[h];
                if inside.contains(&cx.halfedges[he.twin].face) {
                    edges.insert(he.edge);
                }
                if cx.faces_around(he.origin).all(|g| inside.contains(&g)) {
                    verts.insert(he.origin);
                }
            }
        }
        faces.len() as i64 - edges.len() as i64 + verts.len() as i64
    }

    fn corner_vertices(d: &Domain) -> BTreeSet<usize> {
        let moved = |a: &Generator, b: &Generator| -> Vec<IntersectionPoint> {
            a.points.iter().copied().filter(|p| !b.points.contains(p)).collect()
        };
        moved(&d.from, &d.to).iter().chain(&moved(&d.to, &d.from)).map(|p| p.vertex).collect()
    }

    fn moved_count(d: &Domain) -> usize {
        d.from.points.iter().filter(|p| !d.to.points.contains(p)).count()
    }

    pub fn component_resolution(&self, d: &Domain) -> Result<ComponentResolution, NotEmbedded> {
        if d.weights.iter().any(|&x| !(0..=1).contains(&x)) {
            return Err(NotEmbedded);
        }
        let corners = Self::corner_vertices(d);
        let covered = self.covered(&d.weights);
        let mut components = Vec::new();
        let mut chi_total = 0;
        for faces in self.components(&d.weights) {
            let cv: BTreeSet<usize> =
                faces.iter().flat_map(|&f| self.cx.faces[f].cycle.iter().map(|&h| self.cx.halfedges[h].origin)).collect();
            let chi = self.chi(&faces);
            chi_total += chi;
            components.push(Component {
                chi,
                corners: cv.iter().filter(|v| corners.contains(v)).count(),
                covered_critical: covered.iter().copied().filter(|v| cv.contains(v)).collect(),
                faces,
            });
        }
        let k = self.cx.strands;
        let moved = Self::moved_count(d);
        let trivial_strips = k - moved;
        chi_total += trivial_strips as i64;
        Ok(ComponentResolution { components, trivial_strips, chi_total, hbar_power: k as i64 - chi_total })
    }

    /// Count of a domain of index 1.
    pub fn classify(&self, d: &Domain) -> Result<CountVerdict, DomainError> {
        let ind = self.index(d)?;
        if ind != Quarters::from_int(1) {
            return Err(DomainError::PreconditionViolated(ind));
        }
        Ok(self.classify_unchecked(d))
    }

    /// The rules behind [`Self::classify`], without the index check.
    pub fn classify_unchecked(&self, d: &Domain) -> CountVerdict {
        use IndeterminateReason as R;
        let cx = self.cx;
        let w = &d.weights;
        if w.iter().all(|&x| x == 0) {
            return CountVerdict::Zero(ZeroReason::DecorationOnly);
        }
        for a in &d.from.points {
            for b in &d.to.points {
                if a.vertex == b.vertex
                    && a.fixed == b.fixed
                    && a.decoration != b.decoration
                    && cx.faces_around(a.vertex).all(|f| w[f] == 0)
                {
                    return CountVerdict::Zero(ZeroReason::ConstantStrand);
                }
            }
        }
        let res = match self.component_resolution(d) {
            Ok(r) => r,
            Err(NotEmbedded) => return CountVerdict::Indeterminate(R::Multiplicity),
        };
        let corners = Self::corner_vertices(d);
        let mut reason = None;
        let mut note = |r: R| {
            reason.get_or_insert(r);
        };
        for comp in &res.components {
            if comp.chi != 1 {
                note(R::Annulus);
            }
            if comp.corners != 2 && comp.corners != 4 {
                note(R::Corners);
            }
            let cv: BTreeSet<usize> =
                comp.faces.iter().flat_map(|&f| cx.faces[f].cycle.iter().map(|&h| cx.halfedges[h].origin)).collect();
            if cv.iter().any(|&v| corners.contains(&v) && cx.is_marked(v)) {
                note(R::CriticalCorner);
            }
            match comp.covered_critical.len() {
                0 => {}
                1 => {
                    let from_ok = d
                        .from
                        .points
                        .iter()
                        .filter(|p| !d.to.points.contains(p) && cv.contains(&p.vertex))
                        .all(|p| p.decoration == Decoration::Hat);
                    let to_ok = d
                        .to
                        .points
                        .iter()
                        .filter(|p| !d.from.points.contains(p) && cv.contains(&p.vertex))
                        .all(|p| matches!(p.decoration, Decoration::Hat | Decoration::Contact));
                    if !(from_ok && to_ok) {
                        note(R::PointConstraint);
                    }
                }
                _ => note(R::CriticalValues),
            }
            if comp.corners == 2 && !comp.covered_critical.is_empty() {
                note(R::CriticalBigon);
            }
        }
        if self.covered(w).len() > 2 {
            note(R::CriticalValues);
        }
        match reason {
            Some(r) => CountVerdict::Indeterminate(r),
            None => CountVerdict::One { hbar: res.hbar_power },
        }
    }
}

/// Nonnegative domains from `y` to `y2` with total weight at most
/// `max_weight`. Translates by the period lattice have zero planar
/// shadow, so there is at most one.
pub fn enumerate_domains(c: &CellComplex, y: &Generator, y2: &Generator, max_weight: i64) -> Vec<Domain> {
    match domain_weights(c, y, y2) {
        Some(w) if w.iter().all(|&x| x >= 0) && w.iter().sum::<i64>() <= max_weight => {
            vec![Domain { from: y.clone(), to: y2.clone(), weights: w }]
        }
        _ => Vec::new(),
    }
}

pub fn euler_measure(c: &CellComplex, d: &Domain) -> Quarters {
    DomainContext::new(c).euler_measure(&d.weights)
}

pub fn fredholm_index(c: &CellComplex, d: &Domain) -> Result<Quarters, DomainError> {
    DomainContext::new(c).index(d)
}

pub fn component_resolution(c: &CellComplex, d: &Domain) -> Result<ComponentResolution, NotEmbedded> {
    DomainContext::new(c).component_resolution(d)
}

pub fn classify_count(c: &CellComplex, d: &Domain) -> Result<CountVerdict, DomainError> {
    DomainContext::new(c).classify(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc_engine::build_model_2x2;
    use crate::floer_complex::enumerate_generators;

    fn find(gens: &[Generator], pred: impl Fn(&Generator) -> bool) -> Generator {
        gens.iter().find(|g| pred(g)).cloned().expect("generator present")
    }

    #[test]
    fn model_square() {
        let c = build_model_2x2();
        let g = enumerate_generators(&c);
        let cross = |g: &Generator, moving_of_1: usize, d1: Decoration, d2: Decoration| {
            g.points[0].moving == moving_of_1 && g.points[0].decoration == d1 && g.points[1].decoration == d2
        };
        let a = find(&g, |x| cross(x, 2, Decoration::Check, Decoration::Check));
        let b = find(&g, |x| cross(x, 1, Decoration::Hat, Decoration::Check));
        let doms = enumerate_domains(&c, &a, &b, 8);
        assert_eq!(doms.len(), 1);
        let d = &doms[0];
        assert_eq!(d.total_weight(), 1);
        assert_eq!(euler_measure(&c, d), Quarters::ZERO);
        assert_eq!(fredholm_index(&c, d).unwrap(), Quarters::from_int(1));
        assert_eq!(classify_count(&c, d).unwrap(), CountVerdict::One { hbar: 1 });
        // reverse direction is not a positive domain
        assert!(enumerate_domains(&c, &b, &a, 8).is_empty());
    }

    #[test]
    fn trivial_strip() {
        let c = build_model_2x2();
        let g = enumerate_generators(&c);
        let d = enumerate_domains(&c, &g[0], &g[0], 8).pop().unwrap();
        assert_eq!(fredholm_index(&c, &d).unwrap(), Quarters::ZERO);
        let r = component_resolution(&c, &d).unwrap();
        assert_eq!((r.trivial_strips, r.hbar_power), (2, 0));
        assert!(matches!(classify_count(&c, &d), Err(DomainError::PreconditionViolated(_))));
    }

    #[test]
    fn offsets_cover_layouts() {
        assert!(decoration_offset(Layout::Grid, Decoration::Critical).is_err());
        assert!(decoration_offset(Layout::Capped, Decoration::Contact).is_err());
        assert_eq!(decoration_offset(Layout::HalfArc, Decoration::Critical).unwrap(), Quarters::halves(1));
    }
}
