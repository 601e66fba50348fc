//! Arcs in the punctured disk as reduced words in the free group, and the
//! half-twist action on them.
//!
//! Letter `(j, ±1)` records passing below the `j`-th marked point (crossing the
//! lower part of wall `j`) to the right or to the left; passing above a
//! marked point is homotopically free.

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

pub type Letter = (usize, i8);

/// An arc from a fixed start to the marked point `end`, winding
/// `half_twists` half turns around it on arrival.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeArc {
    pub word: Vec<Letter>,
    pub end: usize,
    pub half_twists: i64,
}

pub fn reduce(w: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for x in w {
        match out.last() {
            Some(&(k, e)) if k == x.0 && e == -x.1 => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    out
}

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(k, e)| (k, -e)).collect()
}

/// Image of a word under the positive (`sign > 0`) or negative half twist
/// exchanging marked points `i` and `i+1`.
pub fn twist_word(w: &[Letter], i: usize, sign: i32) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len() * 3);
    for &(k, e) in w {
        let img: Vec<Letter> = if sign > 0 {
            if k == i {
                vec![(i, 1), (i + 1, 1), (i, -1)]
            } else if k == i + 1 {
                vec![(i, 1)]
            } else {
                vec![(k, 1)]
            }
        } else if k == i {
            vec![(i + 1, 1)]
        } else if k == i + 1 {
            vec![(i + 1, -1), (i, 1), (i + 1, 1)]
        } else {
            vec![(k, 1)]
        };
        if e > 0 {
            out.extend(img);
        } else {
            out.extend(inverse(&img));
        }
    }
    reduce(out)
}

impl FreeArc {
    pub fn straight(end: usize) -> Self {
        FreeArc { word: Vec::new(), end, half_twists: 0 }
    }

    pub fn twist(&self, i: usize, sign: i32) -> FreeArc {
        let mut w = twist_word(&self.word, i, sign);
        let mut k = self.end;
        let mut m = self.half_twists;
        if sign > 0 {
            if k == i {
                w.push((i, 1));
                w = reduce(w);
                k = i + 1;
                m += 1;
            } else if k == i + 1 {
                k = i;
                m += 1;
            }
        } else if k == i + 1 {
            w.push((i + 1, -1));
            w = reduce(w);
            k = i;
            m -= 1;
        } else if k == i {
            k = i + 1;
            m -= 1;
        }
        FreeArc { word: w, end: k, half_twists: m }
    }

    /// Moves trailing letters around the endpoint into the twist count and
    /// brings the count into `{-1, 0}`.
    pub fn canonical(&self) -> FreeArc {
        let mut w = self.word.clone();
        let k = self.end;
        let mut m = self.half_twists;
        while let Some(&(j, e)) = w.last() {
            if j != k {
                break;
            }
            m += 2 * e as i64;
            w.pop();
        }
        while m >= 1 {
            w.push((k, 1));
            m -= 2;
        }
        while m < -1 {
            w.push((k, -1));
            m += 2;
        }
        FreeArc { word: w, end: k, half_twists: m }
    }

    /// Side from which the canonical arc reaches its endpoint (`-1` left, `+1` right).
    pub fn arrival_side(&self) -> i8 {
        if self.canonical().half_twists == 0 {
            -1
        } else {
            1
        }
    }
}

/// Wall crossings of the canonical route of `arc` starting in `start_strip`:
/// `(upper, wall, dir)` where `upper` is false for letter crossings below a
/// marked point. Returns the crossings and the arrival side.
pub fn route(arc: &FreeArc, start_strip: usize) -> (Vec<(bool, usize, i8)>, i8) {
    let c = arc.canonical();
    let mut ev = Vec::new();
    let mut s = start_strip;
    let go = |ev: &mut Vec<(bool, usize, i8)>, s: &mut usize, t: usize| {
        while *s < t {
            ev.push((true, *s + 1, 1));
            *s += 1;
        }
        while *s > t {
            ev.push((true, *s, -1));
            *s -= 1;
        }
    };
    for &(j, e) in &c.word {
        if e > 0 {
            go(&mut ev, &mut s, j - 1);
            ev.push((false, j, 1));
            s = j;
        } else {
            go(&mut ev, &mut s, j);
            ev.push((false, j, -1));
            s = j - 1;
        }
    }
    let (target, side) = if c.half_twists == 0 { (c.end - 1, -1) } else { (c.end, 1) };
    go(&mut ev, &mut s, target);
    (ev, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_and_inverse_cancel() {
        let a = FreeArc::straight(1);
        let b = a.twist(1, 1).twist(1, -1);
        assert_eq!(b.canonical(), a.canonical());
        let c = FreeArc::straight(2).twist(1, -1).twist(1, 1);
        assert_eq!(c.canonical(), FreeArc::straight(2).canonical());
    }

    #[test]
    fn twist_swaps_endpoints() {
        let a = FreeArc::straight(1).twist(1, 1);
        assert_eq!(a.end, 2);
        let b = FreeArc::straight(2).twist(1, 1);
        assert_eq!(b.end, 1);
        assert_eq!(FreeArc::straight(3).twist(1, 1), FreeArc::straight(3));
    }

    #[test]
    fn straight_route_is_empty() {
        let (ev, side) = route(&FreeArc::straight(2), 1);
        assert!(ev.is_empty());
        assert_eq!(side, -1);
    }
}
