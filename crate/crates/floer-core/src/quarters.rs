//! Exact rationals with denominator 4.
//!
//! Euler measures live in `Z/4` and indices in `Z/2`, so a fixed-point integer
//! is enough and keeps comparisons exact.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use serde::{Deserialize, Serialize};

/// The rational number `raw / 4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Quarters(pub i64);

impl Quarters {
    pub const ZERO: Quarters = Quarters(0);

    pub const fn from_int(n: i64) -> Self {
        Quarters(4 * n)
    }

    pub const fn halves(n: i64) -> Self {
        Quarters(2 * n)
    }

    pub fn is_integer(self) -> bool {
        self.0 % 4 == 0
    }

    /// Integer value if exact.
    pub fn to_int(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 4)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 4.0
    }
}

impl fmt::Display for Quarters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0;
        if n % 4 == 0 {
            write!(f, "{}", n / 4)
        } else if n % 2 == 0 {
            write!(f, "{}/2", n / 2)
        } else {
            write!(f, "{}/4", n)
        }
    }
}

impl Add for Quarters {
    type Output = Quarters;
    fn add(self, o: Quarters) -> Quarters {
        Quarters(self.0 + o.0)
    }
}

impl Sub for Quarters {
    type Output = Quarters;
    fn sub(self, o: Quarters) -> Quarters {
        Quarters(self.0 - o.0)
    }
}

impl Neg for Quarters {
    type Output = Quarters;
    fn neg(self) -> Quarters {
        Quarters(-self.0)
    }
}

impl Mul<i64> for Quarters {
    type Output = Quarters;
    fn mul(self, k: i64) -> Quarters {
        Quarters(self.0 * k)
    }
}

impl AddAssign for Quarters {
    fn add_assign(&mut self, o: Quarters) {
        self.0 += o.0;
    }
}

impl SubAssign for Quarters {
    fn sub_assign(&mut self, o: Quarters) {
        self.0 -= o.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_forms() {
        assert_eq!(Quarters::from_int(3).to_string(), "3");
        assert_eq!(Quarters(-2).to_string(), "-1/2");
        assert_eq!(Quarters(1).to_string(), "1/4");
    }

    #[test]
    fn integer_detection() {
        assert_eq!(Quarters(8).to_int(), Some(2));
        assert_eq!(Quarters(6).to_int(), None);
    }
}
