//! Generator correspondence for a positive Markov stabilization `b ↦ b s_κ`.
//!
//! Points are compared through keys that survive adding a strand: fixed arc,
//! moving arc, decoration and the position among the crossings of that same
//! arc pair along the fixed arc. The point on fixed arc `κ` moves to arc
//! `κ+1`, and the new arc contributes either its own contact point or the
//! critical point at `z_κ`.

use super::{BuildOptions, FloerComplex, InvariantError};
use crate::arc_engine::{Decoration, Mode, VertexKind};
use crate::braid_core::{markov_stabilize, BraidWord};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

pub type PointKey = (usize, usize, Decoration, i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationMap {
    /// Image of each generator of the small complex.
    pub map: Vec<usize>,
    pub checked_pairs: usize,
    /// Pairs skipped because an entry on either side is undetermined.
    pub skipped_pairs: usize,
    pub contact_preserved: bool,
}

/// Stable keys of every generator.
pub fn stabilization_keys(fc: &FloerComplex) -> Vec<BTreeSet<PointKey>> {
    let c = &fc.cx;
    fc.generators
        .iter()
        .map(|g| {
            g.points
                .iter()
                .map(|p| {
                    let ord = match p.decoration {
                        Decoration::Contact | Decoration::Critical => -1,
                        _ => c.fixed_seq[p.fixed - 1]
                            .iter()
                            .filter(|&&u| matches!(c.vertices[u].kind, VertexKind::Crossing { moving, .. } if moving == p.moving))
                            .position(|&u| u == p.vertex)
                            .map_or(-1, |x| x as i64),
                    };
                    (p.fixed, p.moving, p.decoration, ord)
                })
                .collect()
        })
        .collect()
}

/// Checks that `small` (κ strands) and `big` (its positive stabilization)
/// correspond generator by generator and that the correspondence commutes
/// with the differentials wherever both sides are determinate.
pub fn stabilization_map(small: &FloerComplex, big: &FloerComplex) -> Result<StabilizationMap, InvariantError> {
    let k = small.strands();
    let n = small.generators.len();
    let nb = big.generators.len();
    if n != nb || big.strands() != k + 1 {
        return Err(InvariantError::NotBijective { small: n, big: nb });
    }
    let big_keys: BTreeMap<BTreeSet<PointKey>, usize> =
        stabilization_keys(big).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut map = Vec::with_capacity(n);
    for keys in stabilization_keys(small) {
        let top = *keys.iter().find(|p| p.0 == k).expect("one point per fixed arc");
        let mut img = keys.clone();
        if top.2 == Decoration::Contact {
            img.insert((k + 1, k + 1, Decoration::Contact, -1));
        } else {
            img.remove(&top);
            img.insert((k + 1, top.1, top.2, top.3));
            img.insert((k, k + 1, Decoration::Critical, -1));
        }
        map.push(*big_keys.get(&img).ok_or(InvariantError::NotBijective { small: n, big: nb })?);
    }
    if map.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(InvariantError::NotBijective { small: n, big: nb });
    }
    let (mut checked, mut skipped) = (0, 0);
    let (ds, db) = (&small.differential, &big.differential);
    for a in 0..n {
        for b in 0..n {
            let e1 = ds.get(a, b);
            let e2 = db.get(map[a], map[b]);
            if e1.is_some_and(|e| !e.determinate) || e2.is_some_and(|e| !e.determinate) {
                skipped += 1;
                continue;
            }
            checked += 1;
            let same = match (e1, e2) {
                (None, None) => true,
                (Some(x), Some(y)) => x.value.terms == y.value.terms,
                _ => false,
            };
            if !same {
                return Err(InvariantError::ChainMapViolation { from: a, to: b });
            }
        }
    }
    let xs = small.contact.ok_or(InvariantError::MissingContactPoint)?;
    let xb = big.contact.ok_or(InvariantError::MissingContactPoint)?;
    Ok(StabilizationMap { contact_preserved: map[xs] == xb, map, checked_pairs: checked, skipped_pairs: skipped })
}

/// Builds both HalfArc complexes for `b` and `b s_κ` and compares them.
pub fn stabilize_and_compare(
    b: &BraidWord,
    sign: i32,
    options: BuildOptions,
) -> Result<(FloerComplex, FloerComplex, StabilizationMap), InvariantError> {
    if sign <= 0 {
        return Err(InvariantError::UnsupportedStabilization);
    }
    let small = FloerComplex::from_braid(Mode::HalfArc, b, options)?;
    let big = FloerComplex::from_braid(Mode::HalfArc, &markov_stabilize(b, sign), options)?;
    let m = stabilization_map(&small, &big)?;
    Ok((small, big, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma1_stabilized() {
        let b = BraidWord::new(2, alloc::vec![1]).unwrap();
        let (s, g, m) = stabilize_and_compare(&b, 1, BuildOptions::default()).unwrap();
        assert_eq!(s.generators.len(), g.generators.len());
        assert!(m.contact_preserved);
        assert!(m.checked_pairs > 0);
    }

    #[test]
    fn negative_sign_rejected() {
        let b = BraidWord::identity(1);
        assert_eq!(stabilize_and_compare(&b, -1, BuildOptions::default()).unwrap_err(), InvariantError::UnsupportedStabilization);
    }
}
