//! Bounded search for primitives of the contact class.

use super::{BuildOptions, FloerComplex, InvariantError};
use crate::arc_engine::Mode;
use crate::braid_core::BraidWord;
use crate::ring::{Monomial, RingElement};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// A chain `xi = sum hbar^k g` with `d xi = hbar^p x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCertificate {
    pub p: i64,
    pub contact: usize,
    /// `(generator, hbar exponent)` terms of `xi`.
    pub terms: Vec<(usize, i64)>,
    pub window: (i64, i64),
}

impl VanishingCertificate {
    /// Recomputes `d xi` from the matrix and compares with `hbar^p x`.
    pub fn verify(&self, fc: &FloerComplex) -> bool {
        let mut acc: BTreeMap<usize, RingElement> = BTreeMap::new();
        let r = fc.lattice.rank();
        for &(g, k) in &self.terms {
            if !fc.differential.row_is_determinate(g) {
                return false;
            }
            let shift = RingElement::monomial(Monomial::new(k, alloc::vec![0; r]), self.window);
            for (j, v) in fc.d(g) {
                acc.entry(j).or_insert_with(|| RingElement::zero_in(self.window)).add_assign(&v.mul(&shift));
            }
        }
        acc.retain(|_, v| !v.is_zero());
        let want = RingElement::monomial(Monomial::new(self.p, alloc::vec![0; r]), self.window);
        acc.len() == 1 && acc.get(&self.contact) == Some(&want)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsiSharp {
    Vanishing(VanishingCertificate),
    /// No primitive of `hbar^p x` for any tried `p` inside the bounds.
    NoPrimitiveAtBounds { tried: Vec<i64> },
    Inconclusive { reason: alloc::string::String },
}

/// Sparse GF(2) vectors as sorted index lists.
fn xor(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Solves `sum_c x_c col_c = target` over GF(2); returns the chosen columns.
fn solve_gf2(cols: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    // pivot = largest row index of a reduced column
    let mut basis: BTreeMap<u32, (Vec<u32>, Vec<u32>)> = BTreeMap::new();
    for (ci, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = alloc::vec![ci as u32];
        while let Some(&lead) = v.last() {
            match basis.get(&lead) {
                Some((bv, bc)) => {
                    v = xor(&v, bv);
                    combo = xor(&combo, bc);
                }
                None => {
                    basis.insert(lead, (v, combo));
                    break;
                }
            }
        }
    }
    let mut t = target.to_vec();
    let mut combo = Vec::new();
    while let Some(&lead) = t.last() {
        let (bv, bc) = basis.get(&lead)?;
        t = xor(&t, bv);
        combo = xor(&combo, bc);
    }
    Some(combo)
}

/// Searches for `xi` with `d xi = hbar^p x`, trying `p = 0` and then `p = 1`.
pub fn psi_sharp(fc: &FloerComplex) -> Result<PsiSharp, InvariantError> {
    let x = fc.contact.ok_or(InvariantError::MissingContactPoint)?;
    let class = fc.class_of[x];
    let (lo, hi) = fc.differential.window;
    let members: Vec<usize> = (0..fc.generators.len()).filter(|&g| fc.class_of[g] == class).collect();
    let mut row_id: BTreeMap<(usize, Monomial), u32> = BTreeMap::new();
    let mut key = |k: (usize, Monomial)| -> u32 {
        let n = row_id.len() as u32;
        *row_id.entry(k).or_insert(n)
    };
    let zero = fc.lattice.zero_class();
    let mut cols = Vec::new();
    let mut col_of = Vec::new();
    for &g in &members {
        let dg = fc.d(g);
        for k in lo..=hi {
            let mut v = Vec::new();
            for (&j, val) in &dg {
                for m in &val.terms {
                    let e = m.hbar + k;
                    if e >= lo && e <= hi {
                        v.push(key((j, Monomial::new(e, m.class.clone()))));
                    }
                }
            }
            v.sort_unstable();
            cols.push(v);
            col_of.push((g, k));
        }
    }
    let indeterminate_in_class = members.iter().any(|&g| !fc.differential.row_is_determinate(g));
    let mut tried = Vec::new();
    for p in [0i64, 1] {
        if p < lo || p > hi {
            continue;
        }
        tried.push(p);
        let target = alloc::vec![key((x, Monomial::new(p, zero.clone())))];
        match solve_gf2(&cols, &target) {
            Some(sol) => {
                let terms: Vec<(usize, i64)> = sol.iter().map(|&c| col_of[c as usize]).collect();
                if let Some(&(g, _)) = terms.iter().find(|(g, _)| !fc.differential.row_is_determinate(*g)) {
                    return Ok(PsiSharp::Inconclusive {
                        reason: format!("primitive uses generator {} with undetermined differential", g),
                    });
                }
                return Ok(PsiSharp::Vanishing(VanishingCertificate { p, contact: x, terms, window: (lo, hi) }));
            }
            None => continue,
        }
    }
    if indeterminate_in_class {
        let n = members.iter().filter(|&&g| !fc.differential.row_is_determinate(g)).count();
        return Ok(PsiSharp::Inconclusive {
            reason: format!("no primitive among determinate entries; {} generators in the class have undetermined rows", n),
        });
    }
    Ok(PsiSharp::NoPrimitiveAtBounds { tried })
}

/// Builds the HalfArc complex of `b` and runs [`psi_sharp`].
pub fn psi_sharp_status(b: &BraidWord, hbar_bound: i64, weight_bound: i64) -> Result<(FloerComplex, PsiSharp), InvariantError> {
    let opts = BuildOptions { hbar_window: (crate::ring::DEFAULT_WINDOW.0, hbar_bound), max_weight: Some(weight_bound) };
    let fc = FloerComplex::from_braid(Mode::HalfArc, b, opts)?;
    let s = psi_sharp(&fc)?;
    Ok((fc, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_solver() {
        let cols = alloc::vec![alloc::vec![0, 1], alloc::vec![1, 2], alloc::vec![3]];
        assert_eq!(solve_gf2(&cols, &[0, 2]), Some(alloc::vec![0, 1]));
        assert_eq!(solve_gf2(&cols, &[0]), None);
        assert_eq!(solve_gf2(&cols, &[]), Some(alloc::vec![]));
    }

    #[test]
    fn unknot_has_no_primitive() {
        let (fc, s) = psi_sharp_status(&BraidWord::identity(1), 8, 4).unwrap();
        assert_eq!(fc.generators.len(), 2);
        assert!(matches!(s, PsiSharp::NoPrimitiveAtBounds { .. }), "{:?}", s);
    }
}
