//! Profit values with an absorbing bottom element.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A signed 128-bit profit, or the bottom sentinel (written `⊥` and read as −∞).
///
/// Bottom compares below every finite value and absorbs addition. It is a
/// distinguished representation; finite arithmetic never reaches it because
/// every finite value in this crate is bounded far below `i128::MAX / 2` in
/// magnitude.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Profit(i128);

impl Profit {
    pub const BOTTOM: Profit = Profit(i128::MIN);
    pub const ZERO: Profit = Profit(0);

    /// Largest magnitude a finite profit may take.
    pub const FINITE_LIMIT: i128 = i128::MAX / 4;

    #[inline]
    pub fn new(value: i128) -> Profit {
        debug_assert!(value.abs() <= Self::FINITE_LIMIT, "profit {value} out of range");
        Profit(value)
    }

    #[inline]
    pub fn is_bottom(self) -> bool {
        self.0 == i128::MIN
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        !self.is_bottom()
    }

    /// The finite value, or `None` for bottom.
    #[inline]
    pub fn value(self) -> Option<i128> {
        if self.is_bottom() {
            None
        } else {
            Some(self.0)
        }
    }

    /// The finite value. Panics on bottom.
    #[inline]
    pub fn finite(self) -> i128 {
        self.value().expect("bottom profit has no finite value")
    }

    #[inline]
    pub fn max(self, other: Profit) -> Profit {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<i128> for Profit {
    fn from(v: i128) -> Self {
        Profit::new(v)
    }
}

impl From<u64> for Profit {
    fn from(v: u64) -> Self {
        Profit(v as i128)
    }
}

impl Add for Profit {
    type Output = Profit;

    #[inline]
    fn add(self, rhs: Profit) -> Profit {
        if self.is_bottom() || rhs.is_bottom() {
            Profit::BOTTOM
        } else {
            Profit(self.0 + rhs.0)
        }
    }
}

impl Add<i128> for Profit {
    type Output = Profit;

    #[inline]
    fn add(self, rhs: i128) -> Profit {
        if self.is_bottom() {
            Profit::BOTTOM
        } else {
            Profit(self.0 + rhs)
        }
    }
}

/// Difference of two finite profits. Bottom on either side yields bottom.
impl Sub for Profit {
    type Output = Profit;

    #[inline]
    fn sub(self, rhs: Profit) -> Profit {
        if self.is_bottom() || rhs.is_bottom() {
            Profit::BOTTOM
        } else {
            Profit(self.0 - rhs.0)
        }
    }
}

/// Negation of a finite profit. Bottom stays bottom.
impl Neg for Profit {
    type Output = Profit;

    #[inline]
    fn neg(self) -> Profit {
        if self.is_bottom() {
            Profit::BOTTOM
        } else {
            Profit(-self.0)
        }
    }
}

impl fmt::Debug for Profit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("⊥"),
        }
    }
}

impl fmt::Display for Profit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("-inf"),
        }
    }
}
