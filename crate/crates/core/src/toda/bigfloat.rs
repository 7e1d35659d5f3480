//! Fixed-point high-precision reals: integers scaled by `10^-S`. The
//! working scale carries guard digits beyond the requested precision so
//! that chained products of quantities of magnitude up to ~1e60 keep
//! absolute errors far below the reporting tolerance.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct NumCtx {
    pow: BigInt,
    pub digits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BigFloat(BigInt);

impl NumCtx {
    /// `digits` of user-facing precision; 100 guard digits internally so
    /// that products of bracket chains (magnitudes up to ~1e70 at the
    /// sampled weights) keep absolute errors far below the tolerance.
    pub fn new(digits: u32) -> Self {
        let scale = digits + 100;
        NumCtx { pow: BigInt::from(10).pow(scale), digits }
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat(BigInt::zero())
    }

    pub fn from_int(&self, n: i64) -> BigFloat {
        BigFloat(BigInt::from(n) * &self.pow)
    }

    /// `n / 10^6`
    pub fn from_micros(&self, n: i64) -> BigFloat {
        BigFloat(BigInt::from(n) * &self.pow / BigInt::from(1_000_000))
    }

    pub fn from_rat(&self, r: &crate::rat::Rat) -> BigFloat {
        BigFloat(r.numerator() * &self.pow / r.denominator())
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        BigFloat(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        BigFloat(&a.0 - &b.0)
    }

    pub fn neg(&self, a: &BigFloat) -> BigFloat {
        BigFloat(-&a.0)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        BigFloat(&a.0 * &b.0 / &self.pow)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        assert!(!b.0.is_zero(), "division by zero");
        BigFloat(&a.0 * &self.pow / &b.0)
    }

    /// Integer power with negative exponents via the reciprocal.
    pub fn powi(&self, a: &BigFloat, e: i64) -> BigFloat {
        if e == 0 {
            return self.from_int(1);
        }
        let (mut base, mut e) = if e < 0 {
            (self.div(&self.from_int(1), a), (-e) as u64)
        } else {
            (a.clone(), e as u64)
        };
        let mut acc = self.from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        assert!(!a.0.is_negative(), "sqrt of negative value");
        BigFloat((&a.0 * &self.pow).sqrt())
    }

    pub fn abs(&self, a: &BigFloat) -> BigFloat {
        BigFloat(a.0.abs())
    }

    pub fn is_negative(&self, a: &BigFloat) -> bool {
        a.0.is_negative()
    }

    pub fn is_zero(&self, a: &BigFloat) -> bool {
        a.0.is_zero()
    }

    /// `10^-e`
    pub fn pow10_neg(&self, e: u32) -> BigFloat {
        BigFloat(&self.pow / BigInt::from(10).pow(e))
    }

    /// Decimal rendering with the given number of fractional digits.
    pub fn render(&self, a: &BigFloat, frac_digits: u32) -> String {
        let scale = BigInt::from(10).pow(frac_digits);
        let scaled = &a.0 * &scale / &self.pow;
        let neg = scaled.is_negative();
        let abs = scaled.abs();
        let int = &abs / &scale;
        let frac = &abs % &scale;
        format!(
            "{}{}.{:0width$}",
            if neg { "-" } else { "" },
            int,
            frac,
            width = frac_digits as usize
        )
    }

    /// Scientific-style magnitude estimate `~10^e` of a value, for
    /// reporting residuals.
    pub fn render_residual(&self, a: &BigFloat) -> String {
        if a.0.is_zero() {
            return "0".into();
        }
        let digits = a.0.abs().to_string().len() as i64;
        let scale = self.pow.to_string().len() as i64 - 1;
        let exp = digits - 1 - scale;
        // one significant digit
        let lead = a.0.abs().to_string().chars().next().unwrap();
        format!("{}e{}", lead, exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_roundtrips() {
        let ctx = NumCtx::new(50);
        let a = ctx.from_micros(819_000); // 0.819
        let b = ctx.powi(&a, 6);
        let c = ctx.powi(&b, -1);
        let one = ctx.from_int(1);
        let err = ctx.abs(&ctx.sub(&ctx.mul(&b, &c), &one));
        assert!(err < ctx.pow10_neg(45));
        let s = ctx.sqrt(&ctx.from_int(2));
        let err = ctx.abs(&ctx.sub(&ctx.mul(&s, &s), &ctx.from_int(2)));
        assert!(err < ctx.pow10_neg(45));
    }

    #[test]
    fn rendering() {
        let ctx = NumCtx::new(30);
        let x = ctx.from_micros(-1_250_000);
        assert_eq!(ctx.render(&x, 3), "-1.250");
    }
}
