//! Generators, splitting classes, capping potentials, the coefficient
//! lattice and relative gradings.
//!
//! A domain between two generators is determined by its boundary: walk each
//! fixed arc from the old point to the new one and each moving arc back. On a
//! disk that boundary bounds at most one 2-chain vanishing on the outer face,
//! so weights are recovered by a breadth-first sweep from the outside.

use crate::arc_engine::{CellComplex, EdgeKind, Layout, VertexKind};
use crate::quarters::Quarters;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::arc_engine::Decoration;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error("generators {0} and {1} are not connected inside their class")]
    DisconnectedClass(usize, usize),
    #[error("inconsistent relative grading between generators {from} and {to}")]
    GradingAnomaly { from: usize, to: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub vertex: usize,
    pub fixed: usize,
    pub moving: usize,
    pub decoration: Decoration,
}

/// One point per fixed arc, sorted by fixed arc; moving arcs used once each.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub points: Vec<IntersectionPoint>,
}

impl Generator {
    /// Underlying point tuple with decorations dropped.
    pub fn support(&self) -> Vec<(usize, usize, usize)> {
        self.points.iter().map(|p| (p.vertex, p.fixed, p.moving)).collect()
    }

    pub fn label(&self, c: &CellComplex) -> String {
        let mut s = String::from("{");
        for (k, p) in self.points.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let dec = match p.decoration {
                Decoration::Hat => "^",
                Decoration::Check => "v",
                Decoration::Critical => "*",
                Decoration::Contact => "x",
            };
            let name = match c.vertices[p.vertex].kind {
                VertexKind::Marked { label, .. } => format!("z{}", label),
                _ => format!("v{}", p.vertex),
            };
            s.push_str(&format!("{}[{}{}]{}", name, p.fixed, p.moving, dec));
        }
        s.push('}');
        s
    }
}

/// All matchings with all decoration choices. Generators sharing a point
/// tuple are contiguous.
pub fn enumerate_generators(c: &CellComplex) -> Vec<Generator> {
    let k = c.strands;
    let by_fixed: Vec<Vec<usize>> =
        (1..=k).map(|i| (0..c.sites.len()).filter(|&s| c.sites[s].fixed == i).collect()).collect();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    let mut used = vec![false; k + 1];
    fn rec(
        c: &CellComplex,
        by_fixed: &[Vec<usize>],
        pick: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Generator>,
    ) {
        let i = pick.len();
        if i == by_fixed.len() {
            let mut dec = vec![0usize; pick.len()];
            loop {
                let points = pick
                    .iter()
                    .zip(&dec)
                    .map(|(&s, &d)| {
                        let site = &c.sites[s];
                        IntersectionPoint {
                            vertex: site.vertex,
                            fixed: site.fixed,
                            moving: site.moving,
                            decoration: site.slots[d],
                        }
                    })
                    .collect();
                out.push(Generator { points });
                // odometer, last position fastest
                let mut t = dec.len();
                loop {
                    if t == 0 {
                        return;
                    }
                    t -= 1;
                    dec[t] += 1;
                    if dec[t] < c.sites[pick[t]].slots.len() {
                        break;
                    }
                    dec[t] = 0;
                }
            }
        }
        for &s in &by_fixed[i] {
            let m = c.sites[s].moving;
            if used[m] {
                continue;
            }
            used[m] = true;
            pick.push(s);
            rec(c, by_fixed, pick, used, out);
            pick.pop();
            used[m] = false;
        }
    }
    rec(c, &by_fixed, &mut pick, &mut used, &mut out);
    out
}

/// Per arc, the edges along it as `(edge, +1 if h[0] follows the arc)`.
#[derive(Clone, Debug)]
pub struct ArcPaths {
    fixed: Vec<Vec<(usize, i64)>>,
    moving: Vec<Vec<(usize, i64)>>,
}

impl ArcPaths {
    pub fn new(c: &CellComplex) -> Self {
        let along = |seq: &[usize], kind: EdgeKind| -> Vec<(usize, i64)> {
            seq.windows(2)
                .map(|p| {
                    let h = c.vertices[p[0]]
                        .rot
                        .iter()
                        .flatten()
                        .copied()
                        .find(|&h| c.halfedges[h].target == p[1] && c.edges[c.halfedges[h].edge].kind == kind)
                        .expect("consecutive arc vertices share an edge");
                    let e = c.halfedges[h].edge;
                    (e, if c.edges[e].h[0] == h { 1 } else { -1 })
                })
                .collect()
        };
        ArcPaths {
            fixed: c.fixed_seq.iter().map(|s| along(s, EdgeKind::Fixed)).collect(),
            moving: c.moving_seq.iter().map(|s| along(s, EdgeKind::Moving)).collect(),
        }
    }
}

fn add_path(coef: &mut [i64], seq: &[usize], path: &[(usize, i64)], a: usize, b: usize, sign: i64) {
    let ia = seq.iter().position(|&v| v == a).expect("point lies on its arc");
    let ib = seq.iter().position(|&v| v == b).expect("point lies on its arc");
    if ia < ib {
        for &(e, s) in &path[ia..ib] {
            coef[e] += sign * s;
        }
    } else {
        for &(e, s) in &path[ib..ia] {
            coef[e] -= sign * s;
        }
    }
}

/// Boundary 1-chain of a domain from point tuple `y` to `y2`: fixed arcs
/// from `y` to `y2`, moving arcs from `y2` to `y`.
pub fn chain(c: &CellComplex, paths: &ArcPaths, y: &[(usize, usize, usize)], y2: &[(usize, usize, usize)]) -> Vec<i64> {
    let mut coef = vec![0i64; c.edges.len()];
    for &(v, i, m) in y {
        let a = y2.iter().find(|q| q.1 == i).expect("same fixed arcs").0;
        add_path(&mut coef, &c.fixed_seq[i - 1], &paths.fixed[i - 1], v, a, 1);
        let b = y2.iter().find(|q| q.2 == m).expect("same moving arcs").0;
        add_path(&mut coef, &c.moving_seq[m - 1], &paths.moving[m - 1], b, v, 1);
    }
    coef
}

/// The unique face weights with the given boundary, zero outside and on
/// faces touching the disk boundary; `None` if there is none.
pub fn weights_from_chain(c: &CellComplex, coef: &[i64]) -> Option<Vec<i64>> {
    let mut w: Vec<Option<i64>> = vec![None; c.faces.len()];
    w[c.outside] = Some(0);
    let mut queue = VecDeque::from([c.outside]);
    while let Some(f) = queue.pop_front() {
        let wf = w[f].unwrap();
        for &h in &c.faces[f].cycle {
            let he = &c.halfedges[h];
            let g = c.halfedges[he.twin].face;
            let mut k = coef[he.edge];
            if c.edges[he.edge].h[0] != h {
                k = -k;
            }
            let wg = wf - k;
            match w[g] {
                None => {
                    w[g] = Some(wg);
                    queue.push_back(g);
                }
                Some(x) if x != wg => return None,
                _ => {}
            }
        }
    }
    let w: Vec<i64> = w.into_iter().map(|x| x.unwrap_or(0)).collect();
    if c.faces.iter().zip(&w).any(|(f, &x)| f.excluded && x != 0) {
        return None;
    }
    Some(w)
}

/// Integer solution of the corner system between two generators, if any.
pub fn domain_weights(c: &CellComplex, y: &Generator, y2: &Generator) -> Option<Vec<i64>> {
    weights_for(c, &ArcPaths::new(c), &y.support(), &y2.support())
}

fn weights_for(c: &CellComplex, paths: &ArcPaths, y: &[(usize, usize, usize)], y2: &[(usize, usize, usize)]) -> Option<Vec<i64>> {
    weights_from_chain(c, &chain(c, paths, y, y2))
}

/// Point tuples, their splitting classes and potentials relative to each
/// class representative. Potentials are additive:
/// `weights(y -> y2) = potential(y2) - potential(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleData {
    pub tuples: Vec<Vec<(usize, usize, usize)>>,
    /// Tuple index per generator.
    pub tuple_of: Vec<usize>,
    pub class_of_tuple: Vec<usize>,
    pub potential: Vec<Vec<i64>>,
    pub class_count: usize,
}

impl TupleData {
    pub fn new(c: &CellComplex, gens: &[Generator]) -> Self {
        let paths = ArcPaths::new(c);
        let mut tuples = Vec::new();
        let mut index: BTreeMap<Vec<(usize, usize, usize)>, usize> = BTreeMap::new();
        let mut tuple_of = Vec::with_capacity(gens.len());
        for g in gens {
            let s = g.support();
            let t = *index.entry(s.clone()).or_insert_with(|| {
                tuples.push(s);
                tuples.len() - 1
            });
            tuple_of.push(t);
        }
        let n = tuples.len();
        let mut class_of_tuple = vec![usize::MAX; n];
        let mut potential = vec![Vec::new(); n];
        let mut class_count = 0;
        for r in 0..n {
            if class_of_tuple[r] != usize::MAX {
                continue;
            }
            for t in r..n {
                if class_of_tuple[t] != usize::MAX {
                    continue;
                }
                if let Some(w) = weights_for(c, &paths, &tuples[r], &tuples[t]) {
                    class_of_tuple[t] = class_count;
                    potential[t] = w;
                }
            }
            class_count += 1;
        }
        TupleData { tuples, tuple_of, class_of_tuple, potential, class_count }
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of_tuple[self.tuple_of[g]]
    }

    /// Weights of the domain between two generators of one class.
    pub fn weights(&self, from: usize, to: usize) -> Option<Vec<i64>> {
        let (a, b) = (self.tuple_of[from], self.tuple_of[to]);
        if self.class_of_tuple[a] != self.class_of_tuple[b] {
            return None;
        }
        Some(self.potential[b].iter().zip(&self.potential[a]).map(|(x, y)| x - y).collect())
    }
}

/// Generators grouped by solvability of the corner system between them.
pub fn splitting_classes(gens: &[Generator], c: &CellComplex) -> Vec<Vec<usize>> {
    let td = TupleData::new(c, gens);
    let mut out = vec![Vec::new(); td.class_count];
    for g in 0..gens.len() {
        out[td.class_of(g)].push(g);
    }
    out
}

/// Face-weight potential of each generator in `class`, relative to the first.
pub fn capping_potentials(class: &[usize], gens: &[Generator], c: &CellComplex) -> Result<Vec<Vec<i64>>, FloerError> {
    let Some(&base) = class.first() else { return Ok(Vec::new()) };
    let paths = ArcPaths::new(c);
    let b = gens[base].support();
    class
        .iter()
        .map(|&g| weights_for(c, &paths, &b, &gens[g].support()).ok_or(FloerError::DisconnectedClass(base, g)))
        .collect()
}

/// The coefficient lattice. Periodic classes are spanned by the closed
/// cycles that alternate fixed and moving arcs through shared critical
/// values; the lattice is generated by their differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodLattice {
    /// Marked labels indexing basis coordinates.
    pub labels: Vec<usize>,
    /// Integer basis vectors over `labels`.
    pub basis: Vec<Vec<i64>>,
}

impl PeriodLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn zero_class(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if m[r][col] != 0 {
                let (a, b) = (m[rank][col], m[r][col]);
                for c2 in col..cols {
                    m[r][c2] = m[r][c2] * a - m[rank][c2] * b;
                }
                let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds the lattice from the arc endpoint relations at critical values.
pub fn period_lattice(c: &CellComplex) -> PeriodLattice {
    let mut labels: Vec<usize> = c.marked_vertices().iter().filter_map(|&v| c.marked_label(v)).collect();
    labels.sort_unstable();
    let pos = |l: usize| labels.iter().position(|&x| x == l).expect("label exists");
    let label_at = |v: usize| c.marked_label(v);
    let mut rel: Vec<Vec<i64>> = Vec::new();
    let mut relate = |a: usize, b: usize| {
        if a != b {
            let mut r = vec![0i64; labels.len()];
            r[pos(a)] += 1;
            r[pos(b)] -= 1;
            rel.push(r);
        }
    };
    // each arc joins the critical values at its two ends
    for seq in c.fixed_seq.iter().chain(&c.moving_seq) {
        if let (Some(a), Some(b)) = (label_at(seq[0]), label_at(*seq.last().unwrap())) {
            relate(a, b);
        }
    }
    // in HalfArc mode a moving arc and the fixed arc it leaves from close up
    // along the boundary
    if c.layout == Layout::HalfArc {
        for (m, seq) in c.moving_seq.iter().enumerate() {
            if let Some(b) = label_at(*seq.last().unwrap()) {
                relate(m + 1, b);
            }
        }
    }
    let rank = integer_rank(&rel);
    let classes = labels.len() - rank;
    // class representatives: union the relations
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for r in &rel {
        let a = r.iter().position(|&x| x == 1).unwrap();
        let b = r.iter().position(|&x| x == -1).unwrap();
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut reps: Vec<usize> = (0..labels.len()).filter(|&x| find(&mut parent, x) == x).collect();
    reps.sort_unstable();
    debug_assert_eq!(reps.len(), classes);
    let basis = reps
        .iter()
        .skip(1)
        .map(|&r| {
            let mut v = vec![0i64; labels.len()];
            v[r] = 1;
            v[reps[0]] = -1;
            v
        })
        .collect();
    PeriodLattice { labels, basis }
}

/// Relative gradings from index data; `value[g]` is meaningful up to one
/// shift per entry of `component`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub value: Vec<Quarters>,
    pub component: Vec<usize>,
}

/// Solves `gr(to) - gr(from) = index` over the graph of known domains.
pub fn relative_grading(n: usize, domains: &[(usize, usize, Quarters)]) -> Result<Grading, FloerError> {
    let mut adj: Vec<Vec<(usize, Quarters)>> = vec![Vec::new(); n];
    for &(a, b, ind) in domains {
        adj[a].push((b, ind));
        adj[b].push((a, -ind));
    }
    let mut value = vec![Quarters::ZERO; n];
    let mut component = vec![usize::MAX; n];
    let mut comp = 0;
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        component[s] = comp;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for &(b, ind) in &adj[a] {
                let want = value[a] + ind;
                if component[b] == usize::MAX {
                    component[b] = comp;
                    value[b] = want;
                    stack.push(b);
                } else if value[b] != want {
                    return Err(FloerError::GradingAnomaly { from: a, to: b });
                }
            }
        }
        comp += 1;
    }
    Ok(Grading { value, component })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc_engine::{braid_diagram, build_cell_complex, build_model_2x2, Mode};
    use crate::braid_core::{bp_braid, BraidWord};

    fn complex(mode: Mode, k: usize, w: &[i32]) -> CellComplex {
        build_cell_complex(&braid_diagram(mode, &BraidWord::new(k, w.to_vec()).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn capped_unknot_has_two_generators_in_one_class() {
        let c = complex(Mode::Capped, 1, &[]);
        let g = enumerate_generators(&c);
        assert_eq!(g.len(), 2);
        assert_eq!(splitting_classes(&g, &c).len(), 1);
    }

    #[test]
    fn model_generators_and_classes() {
        let c = build_model_2x2();
        let g = enumerate_generators(&c);
        assert_eq!(g.len(), 8);
        let classes = splitting_classes(&g, &c);
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn potentials_are_additive() {
        let c = complex(Mode::HalfArc, 3, &[1, -2, 1]);
        let g = enumerate_generators(&c);
        let td = TupleData::new(&c, &g);
        for a in (0..g.len()).step_by(7) {
            for b in (0..g.len()).step_by(5) {
                let direct = domain_weights(&c, &g[a], &g[b]);
                assert_eq!(direct, td.weights(a, b));
            }
        }
    }

    #[test]
    fn lattice_rank_tracks_components() {
        for k in 1..=4 {
            assert_eq!(period_lattice(&complex(Mode::Capped, k, &[])).rank(), k - 1);
            assert_eq!(period_lattice(&complex(Mode::HalfArc, k, &[])).rank(), k - 1);
        }
        assert_eq!(period_lattice(&complex(Mode::Capped, 2, &[1])).rank(), 0);
        let bp = build_cell_complex(&braid_diagram(Mode::HalfArc, &bp_braid(3)).unwrap()).unwrap();
        assert_eq!(period_lattice(&bp).rank(), 1);
        assert_eq!(period_lattice(&build_model_2x2()).rank(), 0);
    }

    #[test]
    fn grading_detects_inconsistency() {
        let q = Quarters::from_int;
        let g = relative_grading(3, &[(0, 1, q(1)), (1, 2, q(1))]).unwrap();
        assert_eq!(g.value[2] - g.value[0], q(2));
        assert!(relative_grading(3, &[(0, 1, q(1)), (1, 2, q(1)), (0, 2, q(1))]).is_err());
        let free = relative_grading(2, &[]).unwrap();
        assert_ne!(free.component[0], free.component[1]);
    }

    #[test]
    fn integer_rank_basics() {
        assert_eq!(integer_rank(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(integer_rank(&[]), 0);
    }
}
