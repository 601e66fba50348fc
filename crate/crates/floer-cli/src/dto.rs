//! JSON documents written by the CLI and their loaders.
//!
//! Gradings and indices are stored as JSON numbers; they are multiples of
//! 1/4 and survive the round trip exactly.

use crate::CliError;
use floer_core::arc_engine::{CellComplex, Decoration, Layout};
use floer_core::domain_counter::{CountVerdict, Domain, DomainContext, IndeterminateReason};
use floer_core::floer_complex::domain_weights;
use floer_core::invariants::{DifferentialMatrix, Entry, FloerComplex, VanishingCertificate};
use floer_core::ring::{Monomial, RingElement};
use floer_core::Quarters;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDto {
    pub vertex: usize,
    pub fixed: usize,
    pub moving: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDto {
    pub id: usize,
    pub label: String,
    pub points: Vec<PointDto>,
    pub decorations: Vec<Decoration>,
    pub grading: f64,
    /// Gradings are comparable only within one piece.
    pub grading_piece: usize,
    pub class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDto {
    pub from: usize,
    pub to: usize,
    pub monomials: Vec<Monomial>,
    pub determinate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<IndeterminateReason>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDump {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<String>,
    pub layout: Layout,
    pub strands: usize,
    pub hbar_window: (i64, i64),
    pub max_weight: i64,
    pub lattice_rank: usize,
    pub determinate_fraction: f64,
    pub generators: Vec<GeneratorDto>,
    pub differential: Vec<EntryDto>,
    pub contact_class: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<VanishingCertificate>,
}

impl ComplexDump {
    pub fn new(fc: &FloerComplex, braid: Option<String>, certificate: Option<VanishingCertificate>) -> Self {
        let generators = fc
            .generators
            .iter()
            .enumerate()
            .map(|(id, g)| GeneratorDto {
                id,
                label: fc.label(id),
                points: g.points.iter().map(|p| PointDto { vertex: p.vertex, fixed: p.fixed, moving: p.moving }).collect(),
                decorations: g.points.iter().map(|p| p.decoration).collect(),
                grading: fc.grading.value[id].to_f64(),
                grading_piece: fc.grading.component[id],
                class: fc.class_of[id],
            })
            .collect();
        let differential = fc
            .differential
            .entries()
            .map(|(from, to, e)| EntryDto {
                from,
                to,
                monomials: e.value.terms.iter().cloned().collect(),
                determinate: e.determinate,
                reason: e.reason,
            })
            .collect();
        ComplexDump {
            braid,
            layout: fc.cx.layout,
            strands: fc.strands(),
            hbar_window: fc.options.hbar_window,
            max_weight: fc.max_weight,
            lattice_rank: fc.lattice.rank(),
            determinate_fraction: fc.differential.determinate_fraction(),
            generators,
            differential,
            contact_class: fc.contact,
            certificate,
        }
    }

    /// Rebuilds the sparse differential from the dump.
    pub fn differential_matrix(&self) -> DifferentialMatrix {
        let mut m = DifferentialMatrix::zero(self.generators.len(), self.hbar_window);
        for e in &self.differential {
            let mut value = RingElement::zero_in(self.hbar_window);
            for mono in &e.monomials {
                value.add_monomial(mono.clone());
            }
            m.rows[e.from].insert(e.to, Entry { value, determinate: e.determinate, reason: e.reason });
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainDump {
    pub from: usize,
    pub to: usize,
    pub weights: Vec<i64>,
    pub index: f64,
    /// `One`, `Zero:<reason>` or `Indeterminate:<reason>`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar: Option<i64>,
}

pub fn verdict_string(v: &CountVerdict) -> String {
    match v {
        CountVerdict::One { .. } => "One".into(),
        CountVerdict::Zero(z) => format!("Zero:{:?}", z),
        CountVerdict::Indeterminate(r) => format!("Indeterminate:{}", r.code()),
    }
}

/// Every nonnegative index-1 domain between generators of one class, with
/// the verdict used by the differential.
pub fn domain_dumps(fc: &FloerComplex) -> Vec<DomainDump> {
    let c = &fc.cx;
    let ctx = DomainContext::new(c);
    let mut out = Vec::new();
    for (i, a) in fc.generators.iter().enumerate() {
        for (j, b) in fc.generators.iter().enumerate() {
            if i == j || fc.class_of[i] != fc.class_of[j] {
                continue;
            }
            let Some(weights) = domain_weights(c, a, b) else { continue };
            if weights.iter().any(|&w| w < 0) {
                continue;
            }
            let d = Domain { from: a.clone(), to: b.clone(), weights };
            let Ok(index) = ctx.index(&d) else { continue };
            if index != Quarters::from_int(1) {
                continue;
            }
            let v = if d.total_weight() > fc.max_weight {
                CountVerdict::Indeterminate(IndeterminateReason::WeightBound)
            } else {
                ctx.classify_unchecked(&d)
            };
            let hbar = match v {
                CountVerdict::One { hbar } => Some(hbar),
                _ => None,
            };
            out.push(DomainDump { from: i, to: j, weights: d.weights, index: index.to_f64(), verdict: verdict_string(&v), hbar });
        }
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    Ok(serde_json::from_str(text)?)
}

pub fn save<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    std::fs::write(path, to_json(value)?).map_err(|e| CliError::io(path.display().to_string(), e))
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    from_json(&text)
}

pub fn load_complex_dump(path: &Path) -> Result<ComplexDump, CliError> {
    load(path)
}

pub fn load_cell_complex(path: &Path) -> Result<CellComplex, CliError> {
    load(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use floer_core::arc_engine::build_model_2x2;
    use floer_core::invariants::BuildOptions;

    #[test]
    fn model_dump_round_trips() {
        let fc = FloerComplex::build(build_model_2x2(), BuildOptions::default()).unwrap();
        let d = ComplexDump::new(&fc, None, None);
        let back: ComplexDump = from_json(&to_json(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.differential_matrix(), fc.differential);
    }

    #[test]
    fn model_domains_are_counted() {
        let fc = FloerComplex::build(build_model_2x2(), BuildOptions::default()).unwrap();
        let ds = domain_dumps(&fc);
        assert!(!ds.is_empty());
        assert!(ds.iter().all(|d| d.index == 1.0));
        assert_eq!(ds.iter().filter(|d| d.verdict == "One").count(), fc.differential.entries().count());
    }
}
