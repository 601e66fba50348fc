//! Differential assembly and the invariants built on it.
//!
//! Assembly is split into [`Assembly::new`], a per-generator [`Assembly::row`]
//! and [`Assembly::finish`] so callers can farm rows out to worker threads;
//! [`FloerComplex::build`] runs the rows in order.

mod homology;
mod psi;
mod stabilization;

pub use homology::{homology_specialized, HomologyRank};
pub use psi::{psi_sharp, psi_sharp_status, PsiSharp, VanishingCertificate};
pub use stabilization::{stabilization_keys, stabilization_map, stabilize_and_compare, StabilizationMap};

use crate::arc_engine::{braid_diagram, build_cell_complex, ArcError, CellComplex, Decoration, Layout, Mode, VertexKind};
use crate::braid_core::BraidWord;
use crate::domain_counter::{CountVerdict, Domain, DomainContext, DomainError, IndeterminateReason};
use crate::floer_complex::{
    enumerate_generators, period_lattice, relative_grading, FloerError, Generator, Grading, PeriodLattice, TupleData,
};
use crate::quarters::Quarters;
use crate::ring::{Monomial, RingElement, DEFAULT_WINDOW};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Floer(#[from] FloerError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("diagram has no contact generator")]
    MissingContactPoint,
    #[error("generator sets do not correspond ({small} vs {big})")]
    NotBijective { small: usize, big: usize },
    #[error("stabilization does not commute with the differential at ({from}, {to})")]
    ChainMapViolation { from: usize, to: usize },
    #[error("only positive stabilization is supported")]
    UnsupportedStabilization,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    /// Inclusive range of kept `hbar` exponents.
    pub hbar_window: (i64, i64),
    /// Largest total weight of a counted domain; `None` means `4κ`.
    pub max_weight: Option<i64>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { hbar_window: DEFAULT_WINDOW, max_weight: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub value: RingElement,
    pub determinate: bool,
    pub reason: Option<IndeterminateReason>,
}

/// Sparse matrix of `<d y, y'>`; rows are sources. Only nonzero or
/// undetermined entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialMatrix {
    pub rows: Vec<BTreeMap<usize, Entry>>,
    pub window: (i64, i64),
}

impl DifferentialMatrix {
    pub fn zero(n: usize, window: (i64, i64)) -> Self {
        DifferentialMatrix { rows: vec![BTreeMap::new(); n], window }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, from: usize, to: usize) -> Option<&Entry> {
        self.rows[from].get(&to)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Entry)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, e)| (i, j, e)))
    }

    pub fn indeterminate_count(&self) -> usize {
        self.entries().filter(|e| !e.2.determinate).count()
    }

    pub fn is_fully_determinate(&self) -> bool {
        self.indeterminate_count() == 0
    }

    /// Determinate share of stored entries (1 when nothing is stored).
    pub fn determinate_fraction(&self) -> f64 {
        let total = self.entries().count();
        if total == 0 {
            1.0
        } else {
            1.0 - self.indeterminate_count() as f64 / total as f64
        }
    }

    pub fn row_is_determinate(&self, i: usize) -> bool {
        self.rows[i].values().all(|e| e.determinate)
    }
}

/// Result of `d∘d` on the determinate part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSquaredReport {
    /// Pairs where `d∘d` is nonzero although every path between them is determinate.
    pub counterexamples: Vec<(usize, usize)>,
    /// Pairs reachable in two steps through some undetermined entry.
    pub blocked: Vec<(usize, usize)>,
}

impl DSquaredReport {
    pub fn is_ok(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn is_conclusive(&self) -> bool {
        self.blocked.is_empty()
    }
}

pub fn verify_d_squared(m: &DifferentialMatrix) -> DSquaredReport {
    let mut counterexamples = Vec::new();
    let mut blocked = Vec::new();
    for i in 0..m.len() {
        let mut acc: BTreeMap<usize, RingElement> = BTreeMap::new();
        let mut blk: BTreeMap<usize, ()> = BTreeMap::new();
        for (&j, e1) in &m.rows[i] {
            for (&k, e2) in &m.rows[j] {
                if !e1.determinate || !e2.determinate {
                    blk.insert(k, ());
                    continue;
                }
                acc.entry(k).or_insert_with(|| RingElement::zero_in(m.window)).add_assign(&e1.value.mul(&e2.value));
            }
        }
        for (k, v) in acc {
            if !v.is_zero() && !blk.contains_key(&k) {
                counterexamples.push((i, k));
            }
        }
        blocked.extend(blk.keys().map(|&k| (i, k)));
    }
    DSquaredReport { counterexamples, blocked }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactClass {
    pub generator: usize,
    /// Twist level: the class is `hbar^p x`.
    pub p: i64,
}

/// Every point a contact point (HalfArc), or every point the critical value
/// at the top end of its fixed arc, away from the braiding (Capped).
pub fn contact_generator(c: &CellComplex, gens: &[Generator]) -> Option<usize> {
    let is_contact = |g: &Generator| {
        g.points.iter().all(|p| match c.layout {
            Layout::HalfArc => p.decoration == Decoration::Contact,
            Layout::Capped => {
                p.decoration == Decoration::Critical
                    && matches!(c.vertices[p.vertex].kind, VertexKind::Marked { top: true, .. })
            }
            Layout::Grid => false,
        })
    };
    gens.iter().position(is_contact)
}

pub fn contact_class(fc: &FloerComplex) -> Result<ContactClass, InvariantError> {
    fc.contact.map(|generator| ContactClass { generator, p: 0 }).ok_or(InvariantError::MissingContactPoint)
}

/// One row of the differential together with the index of every nonnegative
/// domain leaving the generator.
#[derive(Clone, Debug, Default)]
pub struct Row {
    pub entries: Vec<(usize, Entry)>,
    pub indices: Vec<(usize, Quarters)>,
}

/// Everything needed to compute rows independently.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub cx: CellComplex,
    pub generators: Vec<Generator>,
    pub tuples: TupleData,
    pub lattice: PeriodLattice,
    pub options: BuildOptions,
    max_weight: i64,
    /// Generators per tuple, as a contiguous range.
    tuple_gens: Vec<(usize, usize)>,
    /// Tuples per class.
    class_tuples: Vec<Vec<usize>>,
    tuple_shape: Vec<Quarters>,
    gen_offset: Vec<Quarters>,
}

impl Assembly {
    pub fn new(cx: CellComplex, options: BuildOptions) -> Result<Self, InvariantError> {
        let generators = enumerate_generators(&cx);
        let tuples = TupleData::new(&cx, &generators);
        let lattice = period_lattice(&cx);
        let mut tuple_gens = vec![(usize::MAX, 0); tuples.tuples.len()];
        for (g, &t) in tuples.tuple_of.iter().enumerate() {
            let r = &mut tuple_gens[t];
            if r.0 == usize::MAX {
                r.0 = g;
            }
            r.1 = g + 1;
        }
        let mut class_tuples = vec![Vec::new(); tuples.class_count];
        for (t, &c) in tuples.class_of_tuple.iter().enumerate() {
            class_tuples[c].push(t);
        }
        let ctx = DomainContext::new(&cx);
        let tuple_shape = tuples.potential.iter().map(|w| ctx.shape_index(w)).collect();
        let gen_offset = generators.iter().map(|g| ctx.offset(g)).collect::<Result<Vec<_>, _>>()?;
        let max_weight = options.max_weight.unwrap_or(4 * cx.strands as i64);
        Ok(Assembly {
            cx,
            generators,
            tuples,
            lattice,
            options,
            max_weight,
            tuple_gens,
            class_tuples,
            tuple_shape,
            gen_offset,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn row(&self, i: usize) -> Row {
        let ctx = DomainContext::new(&self.cx);
        let ta = self.tuples.tuple_of[i];
        let class = self.tuples.class_of_tuple[ta];
        let pa = &self.tuples.potential[ta];
        let one = Quarters::from_int(1);
        let mut row = Row::default();
        for &tb in &self.class_tuples[class] {
            let pb = &self.tuples.potential[tb];
            if pb.iter().zip(pa).any(|(b, a)| b < a) {
                continue;
            }
            let shape = self.tuple_shape[tb] - self.tuple_shape[ta];
            let mut weights: Option<Vec<i64>> = None;
            let (lo, hi) = self.tuple_gens[tb];
            for j in lo..hi {
                if j == i {
                    continue;
                }
                let ind = shape + self.gen_offset[i] - self.gen_offset[j];
                row.indices.push((j, ind));
                if ind != one {
                    continue;
                }
                let w = weights.get_or_insert_with(|| pb.iter().zip(pa).map(|(b, a)| b - a).collect());
                let verdict = if w.iter().sum::<i64>() > self.max_weight {
                    CountVerdict::Indeterminate(IndeterminateReason::WeightBound)
                } else {
                    let d = Domain { from: self.generators[i].clone(), to: self.generators[j].clone(), weights: w.clone() };
                    ctx.classify_unchecked(&d)
                };
                match verdict {
                    CountVerdict::One { hbar } => {
                        let m = Monomial::new(hbar, self.lattice.zero_class());
                        row.entries.push((
                            j,
                            Entry {
                                value: RingElement::monomial(m, self.options.hbar_window),
                                determinate: true,
                                reason: None,
                            },
                        ));
                    }
                    CountVerdict::Zero(_) => {}
                    CountVerdict::Indeterminate(r) => row.entries.push((
                        j,
                        Entry { value: RingElement::zero_in(self.options.hbar_window), determinate: false, reason: Some(r) },
                    )),
                }
            }
        }
        row
    }

    pub fn finish(self, rows: Vec<Row>) -> Result<FloerComplex, InvariantError> {
        let n = self.generators.len();
        let mut differential = DifferentialMatrix::zero(n, self.options.hbar_window);
        let mut edges = Vec::new();
        for (i, r) in rows.into_iter().enumerate() {
            for (j, e) in r.entries {
                if e.determinate && e.value.is_zero() {
                    continue;
                }
                differential.rows[i].insert(j, e);
            }
            edges.extend(r.indices.into_iter().map(|(j, q)| (i, j, q)));
        }
        let grading = relative_grading(n, &edges)?;
        let contact = contact_generator(&self.cx, &self.generators);
        Ok(FloerComplex {
            cx: self.cx,
            generators: self.generators,
            class_of: (0..n).map(|g| self.tuples.class_of(g)).collect(),
            class_count: self.tuples.class_count,
            lattice: self.lattice,
            grading,
            differential,
            contact,
            options: self.options,
            max_weight: self.max_weight,
        })
    }
}

/// An assembled complex with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloerComplex {
    pub cx: CellComplex,
    pub generators: Vec<Generator>,
    pub class_of: Vec<usize>,
    pub class_count: usize,
    pub lattice: PeriodLattice,
    pub grading: Grading,
    pub differential: DifferentialMatrix,
    pub contact: Option<usize>,
    pub options: BuildOptions,
    pub max_weight: i64,
}

impl FloerComplex {
    pub fn build(cx: CellComplex, options: BuildOptions) -> Result<Self, InvariantError> {
        let a = Assembly::new(cx, options)?;
        let rows = (0..a.len()).map(|i| a.row(i)).collect();
        a.finish(rows)
    }

    pub fn from_braid(mode: Mode, b: &BraidWord, options: BuildOptions) -> Result<Self, InvariantError> {
        let cx = build_cell_complex(&braid_diagram(mode, b)?)?;
        Self::build(cx, options)
    }

    pub fn strands(&self) -> usize {
        self.cx.strands
    }

    pub fn label(&self, g: usize) -> String {
        self.generators[g].label(&self.cx)
    }

    /// `d` applied to a single generator, restricted to determinate entries.
    pub fn d(&self, g: usize) -> BTreeMap<usize, RingElement> {
        self.differential.rows[g]
            .iter()
            .filter(|(_, e)| e.determinate)
            .map(|(&j, e)| (j, e.value.clone()))
            .collect()
    }
}
