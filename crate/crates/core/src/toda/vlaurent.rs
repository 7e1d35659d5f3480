//! Exact arithmetic over the quantum-group variables: Laurent monomials in
//! `(v, x, y)` where `x` stands for `v^{λ1-λ2}` and `y` for `v^{λ2-λ3}`,
//! brackets `[a] = (v^a - v^{-a})/(v - v^{-1})`, and a factored product
//! form for the rational quantities attached to the Gelfand-Tsetlin basis.

use crate::qcore::{FactoredSum, LaurentPoly3, PochLen};
use crate::rat::Rat;
use crate::QError;
use std::collections::BTreeMap;

/// Integer-linear form `u*(λ1-λ2) + w*(λ2-λ3) + c` appearing inside
/// brackets and exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinForm {
    pub u: i32,
    pub w: i32,
    pub c: i32,
}

impl LinForm {
    pub fn new(u: i32, w: i32, c: i32) -> Self {
        LinForm { u, w, c }
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0 && self.w == 0 && self.c == 0
    }

    pub fn shifted(&self, dc: i32) -> Self {
        LinForm { c: self.c + dc, ..*self }
    }
}

/// Exponent triple `(v, x, y)` of a Laurent monomial.
pub type VKey = (i32, i32, i32);

fn key_neg(k: VKey) -> VKey {
    (-k.0, -k.1, -k.2)
}

fn key_add(a: VKey, b: VKey) -> VKey {
    (a.0 + b.0, a.1 + b.1, a.2 + b.2)
}

fn form_key(f: LinForm) -> VKey {
    (f.c, f.u, f.w)
}

/// A rational function kept in fully factored form:
/// `scalar * v^unit * prod (1 - v^key)^{±1}` with every key
/// lexicographically positive. Equality is decided by cancelling common
/// factors and exactly expanding whatever remains.
#[derive(Clone, Debug)]
pub struct ProductRat {
    pub scalar: Rat,
    pub unit: VKey,
    num: BTreeMap<VKey, u32>,
    den: BTreeMap<VKey, u32>,
}

impl ProductRat {
    pub fn one() -> Self {
        ProductRat { scalar: Rat::one(), unit: (0, 0, 0), num: BTreeMap::new(), den: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        ProductRat { scalar: Rat::zero(), unit: (0, 0, 0), num: BTreeMap::new(), den: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn mul_scalar(&mut self, c: &Rat) {
        self.scalar *= c;
        if self.scalar.is_zero() {
            *self = ProductRat::zero();
        }
    }

    pub fn mul_mono(&mut self, k: VKey) {
        self.unit = key_add(self.unit, k);
    }

    /// Multiplies by `(1 - v^k)^{±1}`, canonicalizing negative keys via
    /// `1 - m = -m (1 - m^{-1})`.
    pub fn mul_one_minus(&mut self, k: VKey, inverted: bool) {
        if self.is_zero() {
            return;
        }
        if k == (0, 0, 0) {
            assert!(!inverted, "division by zero factor");
            *self = ProductRat::zero();
            return;
        }
        let key = if k > (0, 0, 0) {
            k
        } else {
            // 1 - v^k = -v^k (1 - v^{-k}); for the inverse,
            // 1/(1 - v^k) = -v^{-k} / (1 - v^{-k})
            self.scalar *= &-Rat::one();
            self.mul_mono(if inverted { key_neg(k) } else { k });
            key_neg(k)
        };
        let (this, other) = if inverted {
            (&mut self.den, &mut self.num)
        } else {
            (&mut self.num, &mut self.den)
        };
        match other.get_mut(&key) {
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    other.remove(&key);
                }
            }
            None => {
                *this.entry(key).or_insert(0) += 1;
            }
        }
    }

    /// Multiplies by the bracket
    /// `[f] = (v^f - v^{-f})/(v - v^{-1}) = v^{f-1} (1 - v^{-2f})/(1 - v^{-2})`,
    /// possibly inverted. `[0] = 0`.
    pub fn mul_bracket(&mut self, f: LinForm, inverted: bool) {
        if self.is_zero() {
            return;
        }
        if f.is_zero() {
            assert!(!inverted, "division by [0]");
            *self = ProductRat::zero();
            return;
        }
        let k = form_key(f);
        if inverted {
            self.mul_mono((1 - k.0, -k.1, -k.2));
            self.mul_one_minus(key_neg((2 * k.0, 2 * k.1, 2 * k.2)), true);
            self.mul_one_minus((-2, 0, 0), false);
        } else {
            self.mul_mono((k.0 - 1, k.1, k.2));
            self.mul_one_minus(key_neg((2 * k.0, 2 * k.1, 2 * k.2)), false);
            self.mul_one_minus((-2, 0, 0), true);
        }
    }

    /// `[f]_b = prod_{i=0}^{b-1} [f + i]`, possibly inverted.
    pub fn mul_bracket_poch(&mut self, f: LinForm, b: u32, inverted: bool) {
        for i in 0..b {
            self.mul_bracket(f.shifted(i as i32), inverted);
        }
    }

    /// `[f]! = [1][2]...[f]` for a constant form.
    pub fn mul_bracket_factorial(&mut self, n: u32, inverted: bool) {
        self.mul_bracket_poch(LinForm::new(0, 0, 1), n, inverted);
    }

    /// The ratio `[f]_inf / [f + m]_inf`, which is the finite product
    /// `[f]_m` for `m >= 0` and `1/[f+m]_{-m}` otherwise.
    pub fn mul_bracket_inf_ratio(&mut self, f: LinForm, m: i32) {
        if m >= 0 {
            self.mul_bracket_poch(f, m as u32, false);
        } else {
            self.mul_bracket_poch(f.shifted(m), (-m) as u32, true);
        }
    }

    pub fn mul(&mut self, other: &ProductRat) {
        if self.is_zero() || other.is_zero() {
            *self = ProductRat::zero();
            return;
        }
        self.scalar *= &other.scalar;
        self.mul_mono(other.unit);
        for (k, m) in &other.num {
            for _ in 0..*m {
                self.mul_one_minus(*k, false);
            }
        }
        for (k, m) in &other.den {
            for _ in 0..*m {
                self.mul_one_minus(*k, true);
            }
        }
    }

    pub fn recip(&self) -> ProductRat {
        assert!(!self.is_zero(), "reciprocal of zero");
        ProductRat {
            scalar: self.scalar.recip(),
            unit: key_neg(self.unit),
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    /// The bar involution `v -> v^{-1}`, `x -> x^{-1}`, `y -> y^{-1}`.
    pub fn bar(&self) -> ProductRat {
        let mut out = ProductRat {
            scalar: self.scalar.clone(),
            unit: key_neg(self.unit),
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        };
        for (k, m) in &self.num {
            for _ in 0..*m {
                out.mul_one_minus(key_neg(*k), false);
            }
        }
        for (k, m) in &self.den {
            for _ in 0..*m {
                out.mul_one_minus(key_neg(*k), true);
            }
        }
        out
    }

    fn expand_with(&self, extra_num: &BTreeMap<VKey, u32>) -> LaurentPoly3 {
        let mut p = LaurentPoly3::monomial(self.unit, self.scalar.clone());
        for (k, m) in self.num.iter().chain(extra_num.iter()) {
            for _ in 0..*m {
                p = p.mul(&LaurentPoly3::one_minus(*k));
            }
        }
        p
    }

    /// Exact equality, deciding by factor cancellation first and an exact
    /// polynomial expansion of whatever does not match factor-by-factor
    /// (the `1 - v^k` factors are not irreducible, so multiset mismatch
    /// alone does not decide inequality).
    pub fn eq(&self, other: &ProductRat) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        // cross-multiplied numerators: self.num + other.den vs other.num + self.den
        let mut left = self.num.clone();
        for (k, m) in &other.den {
            *left.entry(*k).or_insert(0) += *m;
        }
        let mut right = other.num.clone();
        for (k, m) in &self.den {
            *right.entry(*k).or_insert(0) += *m;
        }
        // cancel common factors
        let keys: Vec<VKey> = left.keys().chain(right.keys()).copied().collect();
        for k in keys {
            let a = left.get(&k).copied().unwrap_or(0);
            let b = right.get(&k).copied().unwrap_or(0);
            let c = a.min(b);
            if c > 0 {
                if a == c {
                    left.remove(&k);
                } else {
                    left.insert(k, a - c);
                }
                if b == c {
                    right.remove(&k);
                } else {
                    right.insert(k, b - c);
                }
            }
        }
        let lhs = ProductRat {
            scalar: self.scalar.clone(),
            unit: self.unit,
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        }
        .expand_with(&left);
        let rhs = ProductRat {
            scalar: other.scalar.clone(),
            unit: other.unit,
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        }
        .expand_with(&right);
        lhs == rhs
    }

    /// Iterates the numerator and denominator factors `(key, mult, inverted)`.
    pub fn factors(&self) -> impl Iterator<Item = (VKey, u32, bool)> + '_ {
        self.num
            .iter()
            .map(|(k, m)| (*k, *m, false))
            .chain(self.den.iter().map(|(k, m)| (*k, *m, true)))
    }
}

/// Converts a single-term factored sum (a pure product over `(z1, z2, q)`)
/// into the `(v, x, y)` product form under the identification
/// `q = v^2`, `z1 = x^2 v^2`, `z2 = y^2 v^2`.
pub fn factored_term_to_product(fs: &FactoredSum) -> Result<ProductRat, QError> {
    if fs.terms.is_empty() {
        return Ok(ProductRat::zero());
    }
    if fs.terms.len() != 1 {
        return Err(QError::Param("expected a single product term".into()));
    }
    let t = &fs.terms[0];
    let conv = |m1: i32, m2: i32, e: i32| -> VKey { (2 * (m1 + m2 + e), 2 * m1, 2 * m2) };
    let mut out = ProductRat::one();
    out.mul_scalar(&t.coeff);
    out.mul_mono(conv(t.monomial.m1, t.monomial.m2, t.monomial.e));
    for f in &t.factors {
        let n = match f.len {
            PochLen::Finite(n) => n,
            PochLen::Infinite => return Err(QError::NotPolynomial),
        };
        for i in 0..n {
            out.mul_one_minus(conv(f.base.m1, f.base.m2, f.base.e + i as i32), f.inverted);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_is_v_symmetric() {
        // [a] is invariant under bar
        let mut b = ProductRat::one();
        b.mul_bracket(LinForm::new(1, 0, 2), false);
        assert!(b.eq(&b.bar()));
    }

    #[test]
    fn bracket_of_constant_two() {
        // [2] = v + v^{-1}: check against the expanded polynomial
        let mut b = ProductRat::one();
        b.mul_bracket(LinForm::new(0, 0, 2), false);
        let mut want = ProductRat::one();
        // v + v^{-1} = v^{-1}(1 + v^2) = v^{-1} (1 - v^4)/(1 - v^2)
        want.mul_mono((-1, 0, 0));
        want.mul_one_minus((4, 0, 0), false);
        want.mul_one_minus((2, 0, 0), true);
        assert!(b.eq(&want));
    }

    #[test]
    fn inverse_cancels() {
        let mut b = ProductRat::one();
        b.mul_bracket(LinForm::new(1, 2, -3), false);
        let mut c = b.clone();
        c.mul(&b.recip());
        assert!(c.eq(&ProductRat::one()));
    }

    #[test]
    fn infinite_ratio_splits() {
        // [f]_inf / [f+2]_inf = [f][f+1]; negative shift inverts
        let f = LinForm::new(0, 1, 0);
        let mut a = ProductRat::one();
        a.mul_bracket_inf_ratio(f, 2);
        let mut b = ProductRat::one();
        b.mul_bracket(f, false);
        b.mul_bracket(f.shifted(1), false);
        assert!(a.eq(&b));
        let mut c = ProductRat::one();
        c.mul_bracket_inf_ratio(f, -1);
        let mut d = ProductRat::one();
        d.mul_bracket(f.shifted(-1), true);
        assert!(c.eq(&d));
    }

    #[test]
    fn zero_form_annihilates() {
        let mut b = ProductRat::one();
        b.mul_bracket(LinForm::new(0, 0, 0), false);
        assert!(b.is_zero());
    }
}
