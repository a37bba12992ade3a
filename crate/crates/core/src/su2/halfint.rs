use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// A non-negative half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    twice_value: u32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice_value: 0 };
    pub const HALF: HalfInt = HalfInt { twice_value: 1 };
    pub const ONE: HalfInt = HalfInt { twice_value: 2 };

    pub const fn from_twice(twice_value: u32) -> Self {
        HalfInt { twice_value }
    }

    pub const fn integer(n: u32) -> Self {
        HalfInt { twice_value: 2 * n }
    }

    pub const fn twice(self) -> u32 {
        self.twice_value
    }

    pub const fn is_integer(self) -> bool {
        self.twice_value % 2 == 0
    }

    pub fn value(self) -> f64 {
        self.twice_value as f64 / 2.0
    }

    /// Multiplicity 2j+1.
    pub const fn dimension(self) -> u32 {
        self.twice_value + 1
    }

    pub fn checked_sub(self, other: HalfInt) -> Option<HalfInt> {
        self.twice_value.checked_sub(other.twice_value).map(HalfInt::from_twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice_value + rhs.twice_value)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}

/// Angular-momentum coupling rule for three spins: triangle inequality plus integer sum.
pub fn triad(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (a, b, c) = (a.twice(), b.twice(), c.twice());
    (a + b + c) % 2 == 0 && c <= a + b && a <= b + c && b <= a + c
}
