//! Arbitrary-precision rational numbers with a small-integer fast path.
//!
//! Coefficient arithmetic dominates the running time of windowed series
//! expansion, and in practice almost every coefficient fits in a machine
//! word. `Rat` therefore keeps an `i64/u64` representation and promotes to
//! `num_bigint`-backed fractions only on overflow. Values are always
//! reduced, the denominator is always positive, and zero is canonically
//! `0/1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Debug)]
enum Repr {
    /// Reduced fraction, denominator > 0.
    Small(i64, u64),
    /// Reduced fraction, denominator > 0. Only used when the value does not
    /// fit in the small representation.
    Big(Box<(BigInt, BigInt)>),
}

#[derive(Clone, Debug)]
pub struct Rat(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn make_big(num: BigInt, den: BigInt) -> Rat {
    debug_assert!(!den.is_zero());
    let (mut num, mut den) = if den.is_negative() { (-num, -den) } else { (num, den) };
    let g = num.gcd(&den);
    if !g.is_zero() && g != BigInt::from(1) {
        num /= &g;
        den /= &g;
    }
    // Demote when the reduced value fits in machine words again.
    if let (Some(n), Some(d)) = (i64::try_from(&num).ok(), u64::try_from(&den).ok()) {
        return Rat(Repr::Small(n, d));
    }
    Rat(Repr::Big(Box::new((num, den))))
}

fn make_small(num: i64, den: u64) -> Rat {
    debug_assert!(den != 0);
    if num == 0 {
        return Rat(Repr::Small(0, 1));
    }
    let g = gcd_u64(num.unsigned_abs(), den);
    Rat(Repr::Small(num / g as i64, den / g))
}

impl Rat {
    pub fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(Repr::Small(n, 1))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            make_small(num.checked_neg().expect("overflow"), (den as i128).unsigned_abs() as u64)
        } else {
            make_small(num, den as u64)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1 == BigInt::from(1),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.0.is_negative(),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn numerator(&self) -> BigInt {
        self.to_big().0
    }

    pub fn denominator(&self) -> BigInt {
        self.to_big().1
    }

    /// Renders as `"<numerator>/<denominator>"` with decimal digits.
    pub fn to_fraction_string(&self) -> String {
        match &self.0 {
            Repr::Small(n, d) => format!("{}/{}", n, d),
            Repr::Big(b) => format!("{}/{}", b.0, b.1),
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => {
                if *n < 0 {
                    // -(i64::MIN) overflows; route through i128.
                    let num = -(*d as i128);
                    let den = (*n as i128).unsigned_abs();
                    if let (Ok(n2), Ok(d2)) = (i64::try_from(num), u64::try_from(den)) {
                        Rat(Repr::Small(n2, d2))
                    } else {
                        make_big(BigInt::from(num), BigInt::from(den))
                    }
                } else {
                    Rat(Repr::Small(*d as i64, *n as u64))
                }
            }
            Repr::Big(b) => make_big(b.1.clone(), b.0.clone()),
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            // Both representations are reduced and Big is only kept when the
            // value does not fit Small, so mixed comparisons are unequal.
            (Repr::Small(..), Repr::Big(..)) | (Repr::Big(..), Repr::Small(..)) => false,
            (Repr::Big(x), Repr::Big(y)) => x == y,
        }
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        let (an, ad) = self.to_big();
        let (bn, bd) = other.to_big();
        (an * bd).cmp(&(bn * ad))
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let num = *a as i128 * *d as i128 + *c as i128 * *b as i128;
            let den = *b as u128 * *d as u128;
            return reduce_i128(num, den);
        }
        let (an, ad) = self.to_big();
        let (bn, bd) = rhs.to_big();
        make_big(an * &bd + bn * &ad, ad * bd)
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let num = *a as i128 * *d as i128 - *c as i128 * *b as i128;
            let den = *b as u128 * *d as u128;
            return reduce_i128(num, den);
        }
        let (an, ad) = self.to_big();
        let (bn, bd) = rhs.to_big();
        make_big(an * &bd - bn * &ad, ad * bd)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let num = *a as i128 * *c as i128;
            let den = *b as u128 * *d as u128;
            return reduce_i128(num, den);
        }
        let (an, ad) = self.to_big();
        let (bn, bd) = rhs.to_big();
        make_big(an * bn, ad * bd)
    }
}

fn reduce_i128(num: i128, den: u128) -> Rat {
    if num == 0 {
        return Rat::zero();
    }
    let g = gcd_u128(num.unsigned_abs(), den);
    let num = num / g as i128;
    let den = den / g;
    if let (Ok(n), Ok(d)) = (i64::try_from(num), u64::try_from(den)) {
        Rat(Repr::Small(n, d))
    } else {
        make_big(BigInt::from(num), BigInt::from(den))
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => {
                if let Some(m) = n.checked_neg() {
                    Rat(Repr::Small(m, *d))
                } else {
                    make_big(-BigInt::from(*n), BigInt::from(*d))
                }
            }
            Repr::Big(b) => Rat(Repr::Big(Box::new((-b.0.clone(), b.1.clone())))),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{}", n),
            Repr::Small(n, d) => write!(f, "{}/{}", n, d),
            Repr::Big(b) if b.1 == BigInt::from(1) => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_zero_and_reduction() {
        assert_eq!(Rat::new(0, 5), Rat::zero());
        assert_eq!(Rat::new(4, 6), Rat::new(2, 3));
        assert_eq!(Rat::new(4, -6), Rat::new(-2, 3));
        assert!(Rat::new(-1, 2).is_negative());
        assert_eq!(Rat::new(7, 1).to_fraction_string(), "7/1");
    }

    #[test]
    fn overflow_promotes_and_stays_exact() {
        let big = Rat::from_int(i64::MAX);
        let sq = &big * &big;
        let back = &sq - &(&big * &big);
        assert!(back.is_zero());
        assert_eq!(sq.denominator(), BigInt::from(1));
        assert_eq!(sq.numerator(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
    }

    #[test]
    fn recip_roundtrip() {
        let x = Rat::new(-3, 7);
        assert_eq!(&x * &x.recip(), Rat::one());
    }

    proptest! {
        #[test]
        fn field_laws_small(a in -500i64..500, b in 1i64..40, c in -500i64..500, d in 1i64..40) {
            let x = Rat::new(a, b);
            let y = Rat::new(c, d);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            let z = Rat::new(5, 3);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn matches_bigint_reference(a in any::<i32>(), b in 1i32..1000, c in any::<i32>(), d in 1i32..1000) {
            let x = Rat::new(a as i64, b as i64);
            let y = Rat::new(c as i64, d as i64);
            let sum = &x + &y;
            // Reference computation in BigInt.
            let num = BigInt::from(a) * BigInt::from(d) + BigInt::from(c) * BigInt::from(b);
            let den = BigInt::from(b) * BigInt::from(d);
            let g = num.gcd(&den);
            if g.is_zero() {
                prop_assert!(sum.is_zero());
            } else {
                prop_assert_eq!(sum.numerator(), &num / &g);
                prop_assert_eq!(sum.denominator(), &den / &g);
            }
        }
    }
}
