//! Homology after setting `hbar = 1` and `e^A = 1`.

use super::{FloerComplex, InvariantError};
use crate::quarters::Quarters;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRank {
    pub class: usize,
    /// Connected piece of the grading graph; gradings compare only within one.
    pub piece: usize,
    pub grading: Quarters,
    pub rank: usize,
}

/// GF(2) rank of a dense matrix given as rows of bit words.
fn rank_gf2(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][w] & b != 0 {
                let pivot = rows[rank].clone();
                rows[r].iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn homology_specialized(fc: &FloerComplex) -> Result<Vec<HomologyRank>, InvariantError> {
    let m = &fc.differential;
    if !m.is_fully_determinate() {
        return Err(InvariantError::Inconclusive(alloc::format!(
            "{} undetermined entries",
            m.indeterminate_count()
        )));
    }
    let gr = &fc.grading;
    let mut groups: BTreeMap<(usize, usize, Quarters), Vec<usize>> = BTreeMap::new();
    for g in 0..fc.generators.len() {
        groups.entry((fc.class_of[g], gr.component[g], gr.value[g])).or_default().push(g);
    }
    // rank of d leaving each group
    let mut out_rank: BTreeMap<(usize, usize, Quarters), usize> = BTreeMap::new();
    for (key, src) in &groups {
        let tkey = (key.0, key.1, key.2 + Quarters::from_int(1));
        let Some(dst) = groups.get(&tkey) else {
            out_rank.insert(*key, 0);
            continue;
        };
        let pos: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let words = dst.len().div_ceil(64);
        let rows = src
            .iter()
            .map(|&g| {
                let mut r = vec![0u64; words];
                for (j, e) in &m.rows[g] {
                    if e.value.specialize() {
                        if let Some(&p) = pos.get(j) {
                            r[p / 64] ^= 1 << (p % 64);
                        }
                    }
                }
                r
            })
            .collect();
        out_rank.insert(*key, rank_gf2(rows));
    }
    Ok(groups
        .iter()
        .map(|(key, src)| {
            let prev = (key.0, key.1, key.2 - Quarters::from_int(1));
            let incoming = out_rank.get(&prev).copied().unwrap_or(0);
            HomologyRank { class: key.0, piece: key.1, grading: key.2, rank: src.len() - out_rank[key] - incoming }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_rank() {
        assert_eq!(rank_gf2(vec![vec![0b11], vec![0b01], vec![0b10]]), 2);
        assert_eq!(rank_gf2(vec![]), 0);
        assert_eq!(rank_gf2(vec![vec![0]]), 0);
    }
}
