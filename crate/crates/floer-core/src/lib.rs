//! Exact combinatorial engine for higher-dimensional Heegaard Floer complexes of
//! braid closures.
//!
//! The pipeline runs braid word → arc diagram over a marked disk → planar cell
//! complex → generators and weighted domains → differential over
//! `F2[A][hbar, hbar^-1]` → contact class, vanishing certificates and
//! stabilization maps.
//!
//! Everything here is `no_std` + `alloc` and purely functional. File formats,
//! threading and the command-line front end live in the `floer-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arc_engine;
pub mod braid_core;
pub mod domain_counter;
pub mod floer_complex;
pub mod invariants;
pub mod quarters;
pub mod ring;

pub use arc_engine::{ArcDiagram, CellComplex, DiagramConfig, Mode};
pub use braid_core::{BraidWord, Permutation};
pub use floer_complex::{Decoration, Generator, IntersectionPoint};
pub use invariants::FloerComplex;
pub use quarters::Quarters;
pub use ring::RingElement;
