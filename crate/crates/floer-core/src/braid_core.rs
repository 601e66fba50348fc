//! Braid words, their permutations and Markov stabilization.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("malformed braid word: {0}")]
    MalformedWord(String),
    #[error("generator s{index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: i64, strands: usize },
}

/// Signed generator sequence; letter `±i` is `s_i^{±1}`, `1 <= i < strands`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

/// A bijection of `{1..k}`, stored 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::MalformedWord("strand count must be positive".into()));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(BraidError::GeneratorOutOfRange { index: l as i64, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other` (same strand count).
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let strands = self.strands.max(other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands, letters }
    }
}

/// Prints in the canonical `s1^-3 s2 s1^2 s2` form (runs of equal letters collapsed).
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let gen = self.letters[i].unsigned_abs();
            let sign = self.letters[i].signum();
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == self.letters[i] {
                j += 1;
            }
            let exp = sign * (j - i) as i32;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "s{}", gen)?;
            } else {
                write!(f, "s{}^{}", gen, exp)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Printer alias matching [`parse_braid`].
pub fn print_braid(b: &BraidWord) -> String {
    format!("{}", b)
}

fn parse_int(tok: &str) -> Result<i64, BraidError> {
    tok.parse::<i64>()
        .map_err(|_| BraidError::MalformedWord(format!("bad integer '{}'", tok)))
}

/// Parses `s1 s2^-1` style words or a bare signed integer list such as `1, -2` or `[1 -2]`.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord, BraidError> {
    let t = text.trim();
    if strands == 0 {
        return Err(BraidError::MalformedWord("strand count must be positive".into()));
    }
    let mut letters: Vec<i32> = Vec::new();
    if t.is_empty() {
        return Ok(BraidWord::identity(strands));
    }
    let mut push = |gen: i64, exp: i64| -> Result<(), BraidError> {
        if gen <= 0 || gen as usize >= strands {
            return Err(BraidError::GeneratorOutOfRange { index: gen, strands });
        }
        let l = if exp < 0 { -(gen as i32) } else { gen as i32 };
        for _ in 0..exp.unsigned_abs() {
            letters.push(l);
        }
        Ok(())
    };
    if t.starts_with('s') || t.starts_with('S') {
        for tok in t.split_whitespace() {
            let rest = tok
                .strip_prefix('s')
                .or_else(|| tok.strip_prefix('S'))
                .ok_or_else(|| BraidError::MalformedWord(format!("expected 's', got '{}'", tok)))?;
            let (g, e) = match rest.split_once('^') {
                Some((g, e)) => (parse_int(g)?, parse_int(e)?),
                None => (parse_int(rest)?, 1),
            };
            if rest.starts_with('-') || rest.starts_with('+') {
                return Err(BraidError::MalformedWord(format!("signed generator index in '{}'", tok)));
            }
            push(g, e)?;
        }
    } else {
        let inner = t.trim_start_matches('[').trim_end_matches(']');
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let v = parse_int(tok)?;
            if v == 0 {
                return Err(BraidError::MalformedWord("zero letter".into()));
            }
            push(v.abs(), v.signum())?;
        }
    }
    Ok(BraidWord { strands, letters })
}

/// Composes the transpositions `(i i+1)` in word order; letter signs are ignored.
///
/// `images[p-1]` is the final position of the strand that starts at position `p`.
pub fn underlying_permutation(b: &BraidWord) -> Permutation {
    // at[q] = strand currently sitting at position q
    let mut at: Vec<usize> = (1..=b.strands).collect();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize;
        at.swap(i - 1, i);
    }
    let mut images = vec![0; b.strands];
    for (q, &s) in at.iter().enumerate() {
        images[s - 1] = q + 1;
    }
    Permutation { images }
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { images: (1..=k).collect() }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] - 1;
            }
            out.push(cyc);
        }
        out
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        for &i in &self.images {
            if i == 0 || i > n || seen[i - 1] {
                return false;
            }
            seen[i - 1] = true;
        }
        true
    }
}

/// Prints in cycle notation, fixed points included: `(1 2)(3)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Number of components `r` of the closure.
pub fn closure_component_count(b: &BraidWord) -> usize {
    underlying_permutation(b).cycles().len()
}

/// `b · s_k^{sign}` on `k+1` strands.
pub fn markov_stabilize(b: &BraidWord, sign: i32) -> BraidWord {
    let k = b.strands as i32;
    let mut letters = b.letters.clone();
    letters.push(if sign < 0 { -k } else { k });
    BraidWord { strands: b.strands + 1, letters }
}

/// The braid `s1^-l s2 s1^2 s2` on three strands.
pub fn bp_braid(l: usize) -> BraidWord {
    let mut letters = vec![-1; l];
    letters.extend_from_slice(&[2, 1, 1, 2]);
    BraidWord { strands: 3, letters }
}
