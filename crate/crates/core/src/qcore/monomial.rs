//! Monomials `z1^m1 z2^m2 q^e` and per-variable expansion direction.

use std::fmt;
use std::ops::{Add, Neg};

/// A monomial `z1^m1 z2^m2 q^e` with integer exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZqMonomial {
    pub m1: i32,
    pub m2: i32,
    pub e: i32,
}

impl ZqMonomial {
    pub const ONE: ZqMonomial = ZqMonomial { m1: 0, m2: 0, e: 0 };

    pub fn new(m1: i32, m2: i32, e: i32) -> Self {
        ZqMonomial { m1, m2, e }
    }

    pub fn q(e: i32) -> Self {
        ZqMonomial { m1: 0, m2: 0, e }
    }

    pub fn z1(m1: i32) -> Self {
        ZqMonomial { m1, m2: 0, e: 0 }
    }

    pub fn z2(m2: i32) -> Self {
        ZqMonomial { m1: 0, m2, e: 0 }
    }

    pub fn is_pure_q(&self) -> bool {
        self.m1 == 0 && self.m2 == 0
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// Scalar multiple of the exponent vector.
    pub fn scaled(&self, k: i32) -> Self {
        ZqMonomial { m1: self.m1 * k, m2: self.m2 * k, e: self.e * k }
    }
}

impl Add for ZqMonomial {
    type Output = ZqMonomial;
    fn add(self, rhs: ZqMonomial) -> ZqMonomial {
        ZqMonomial { m1: self.m1 + rhs.m1, m2: self.m2 + rhs.m2, e: self.e + rhs.e }
    }
}

impl Neg for ZqMonomial {
    type Output = ZqMonomial;
    fn neg(self) -> ZqMonomial {
        ZqMonomial { m1: -self.m1, m2: -self.m2, e: -self.e }
    }
}

impl fmt::Display for ZqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, exp) in [("z1", self.m1), ("z2", self.m2), ("q", self.e)] {
            if exp != 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if exp == 1 {
                    write!(f, "{}", name)?;
                } else {
                    write!(f, "{}^{}", name, exp)?;
                }
            }
        }
        Ok(())
    }
}

/// Per-variable expansion direction: `+1` expands in non-negative powers of
/// the variable, `-1` in non-positive powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub dir1: i8,
    pub dir2: i8,
}

impl Orientation {
    pub const PP: Orientation = Orientation { dir1: 1, dir2: 1 };
    pub const MM: Orientation = Orientation { dir1: -1, dir2: -1 };

    pub fn new(dir1: i8, dir2: i8) -> Self {
        assert!(dir1 == 1 || dir1 == -1);
        assert!(dir2 == 1 || dir2 == -1);
        Orientation { dir1, dir2 }
    }

    /// Oriented z-exponents of a monomial: non-negative on the expansion
    /// orthant.
    pub fn oriented(&self, m: &ZqMonomial) -> (i32, i32) {
        (m.m1 * self.dir1 as i32, m.m2 * self.dir2 as i32)
    }

    /// Total oriented z-degree.
    pub fn degree(&self, m1: i32, m2: i32) -> i32 {
        m1 * self.dir1 as i32 + m2 * self.dir2 as i32
    }
}
