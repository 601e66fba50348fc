//! Sparse elements of `F2[A][hbar, hbar^-1]` with a truncation window on
//! `hbar` exponents.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

pub const DEFAULT_WINDOW: (i64, i64) = (-4, 8);

/// `hbar^hbar * e^class`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub hbar: i64,
    pub class: Vec<i64>,
}

impl Monomial {
    pub fn new(hbar: i64, class: Vec<i64>) -> Self {
        Monomial { hbar, class }
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let class = self.class.iter().zip(&o.class).map(|(a, b)| a + b).collect();
        Monomial { hbar: self.hbar + o.hbar, class }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement {
    pub terms: BTreeSet<Monomial>,
    pub window: (i64, i64),
}

impl Default for RingElement {
    fn default() -> Self {
        RingElement::zero()
    }
}

impl RingElement {
    pub fn zero() -> Self {
        Self::zero_in(DEFAULT_WINDOW)
    }

    pub fn zero_in(window: (i64, i64)) -> Self {
        RingElement { terms: BTreeSet::new(), window }
    }

    pub fn monomial(m: Monomial, window: (i64, i64)) -> Self {
        let mut r = Self::zero_in(window);
        r.add_monomial(m);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Toggles one monomial; exponents outside the window are dropped.
    pub fn add_monomial(&mut self, m: Monomial) {
        if m.hbar < self.window.0 || m.hbar > self.window.1 {
            return;
        }
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, o: &RingElement) {
        for m in &o.terms {
            self.add_monomial(m.clone());
        }
    }

    pub fn add(&self, o: &RingElement) -> RingElement {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn mul(&self, o: &RingElement) -> RingElement {
        let mut r = RingElement::zero_in(self.window);
        for a in &self.terms {
            for b in &o.terms {
                r.add_monomial(a.mul(b));
            }
        }
        r
    }

    pub fn min_hbar(&self) -> Option<i64> {
        self.terms.iter().map(|m| m.hbar).min()
    }

    /// Value at `hbar = 1`, `e^A = 1`.
    pub fn specialize(&self) -> bool {
        self.terms.len() % 2 == 1
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "h^{} * e[", m.hbar)?;
            for (i, c) in m.class.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", c)?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}
