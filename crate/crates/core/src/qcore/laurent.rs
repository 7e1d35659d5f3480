//! Exact trivariate Laurent polynomials.
//!
//! Carrier for denominator-cleared rational identities: once every factor is
//! a finite product of binomials `1 - z1^a z2^b q^c`, identities between
//! factored sums reduce to an exact polynomial computation with no
//! truncation window.

use super::monomial::ZqMonomial;
use super::poch::{FactoredSum, PochLen};
use crate::rat::Rat;
use crate::QError;
use std::collections::BTreeMap;

/// Sparse Laurent polynomial in three variables with rational coefficients.
/// Exponent keys are `(a, b, c)` for `z1^a z2^b q^c` (or `v^a x^b y^c` when
/// used over the quantum-group variables).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly3 {
    terms: BTreeMap<(i32, i32, i32), Rat>,
}

impl LaurentPoly3 {
    pub fn zero() -> Self {
        LaurentPoly3 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial((0, 0, 0), Rat::one())
    }

    pub fn monomial(key: (i32, i32, i32), c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        LaurentPoly3 { terms }
    }

    /// `1 - z1^a z2^b q^c`
    pub fn one_minus(key: (i32, i32, i32)) -> Self {
        let mut p = Self::one();
        p.add_term(key, -Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i32, i32, i32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: (i32, i32, i32)) -> Rat {
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, key: (i32, i32, i32), c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = &*e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, -v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Multiply the smaller operand into the larger one.
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = LaurentPoly3::zero();
        for (ka, va) in &small.terms {
            for (kb, vb) in &large.terms {
                out.add_term((ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2), va * vb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly3 {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exponent-wise negation: `z1 -> z1^{-1}`, `z2 -> z2^{-1}`, `q -> q^{-1}`.
    pub fn invert_variables(&self) -> Self {
        LaurentPoly3 {
            terms: self.terms.iter().map(|(k, v)| ((-k.0, -k.1, -k.2), v.clone())).collect(),
        }
    }
}

/// Converts a factored sum whose factors are all finite and non-inverted
/// into an exact Laurent polynomial.
pub fn to_laurent3(x: &FactoredSum) -> Result<LaurentPoly3, QError> {
    let mut out = LaurentPoly3::zero();
    for t in &x.terms {
        let mut p = LaurentPoly3::monomial((t.monomial.m1, t.monomial.m2, t.monomial.e), t.coeff.clone());
        for f in &t.factors {
            let n = match (f.len, f.inverted) {
                (PochLen::Finite(n), false) => n,
                _ => return Err(QError::NotPolynomial),
            };
            for i in 0..n {
                let b = f.base + ZqMonomial::q(i as i32);
                p = p.mul(&LaurentPoly3::one_minus((b.m1, b.m2, b.e)));
            }
        }
        out = out.add(&p);
    }
    Ok(out)
}

/// A term of a rational identity: `numerator / prod(1 - mono)` where the
/// denominator is a multiset of binomials.
pub struct RationalTerm {
    pub numerator: LaurentPoly3,
    pub denominator: BTreeMap<(i32, i32, i32), u32>,
}

impl RationalTerm {
    pub fn new(numerator: LaurentPoly3) -> Self {
        RationalTerm { numerator, denominator: BTreeMap::new() }
    }

    pub fn div_binomial(&mut self, key: (i32, i32, i32), mult: u32) {
        if mult > 0 {
            *self.denominator.entry(key).or_insert(0) += mult;
        }
    }
}

/// Decides `sum_t numerator_t / den_t == 0` exactly by clearing
/// denominators: multiply each numerator by the complement of its
/// denominator multiset inside the multiset LCM, then sum. Avoids any
/// polynomial division.
pub fn rational_identity_is_zero(terms: &[RationalTerm]) -> bool {
    let mut lcm: BTreeMap<(i32, i32, i32), u32> = BTreeMap::new();
    for t in terms {
        for (k, m) in &t.denominator {
            let e = lcm.entry(*k).or_insert(0);
            *e = (*e).max(*m);
        }
    }
    let mut total = LaurentPoly3::zero();
    for t in terms {
        let mut p = t.numerator.clone();
        for (k, m) in &lcm {
            let have = t.denominator.get(k).copied().unwrap_or(0);
            for _ in 0..(m - have) {
                p = p.mul(&LaurentPoly3::one_minus(*k));
            }
        }
        total = total.add(&p);
    }
    total.is_zero()
}

/// Builds a `RationalTerm` per summand of a factored sum. Finite inverted
/// factors go to the denominator multiset; finite non-inverted factors are
/// multiplied into the numerator. Infinite factors are rejected.
pub fn factored_sum_rational_terms(x: &FactoredSum) -> Result<Vec<RationalTerm>, QError> {
    let mut out = Vec::with_capacity(x.terms.len());
    for t in &x.terms {
        let mut rt = RationalTerm::new(LaurentPoly3::monomial(
            (t.monomial.m1, t.monomial.m2, t.monomial.e),
            t.coeff.clone(),
        ));
        for f in &t.factors {
            let n = match f.len {
                PochLen::Finite(n) => n,
                PochLen::Infinite => return Err(QError::NotPolynomial),
            };
            for i in 0..n {
                let b = f.base + ZqMonomial::q(i as i32);
                if f.inverted {
                    rt.div_binomial((b.m1, b.m2, b.e), 1);
                } else {
                    rt.numerator = rt.numerator.mul(&LaurentPoly3::one_minus((b.m1, b.m2, b.e)));
                }
            }
        }
        out.push(rt);
    }
    Ok(out)
}

/// Exact equality `a == b` for factored sums with all factors finite.
pub fn factored_sums_equal_exact(a: &FactoredSum, b: &FactoredSum) -> Result<bool, QError> {
    let mut terms = factored_sum_rational_terms(a)?;
    for mut t in factored_sum_rational_terms(b)? {
        t.numerator = t.numerator.scale(&-Rat::one());
        terms.push(t);
    }
    Ok(rational_identity_is_zero(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::poch::{poch_finite, FactoredTerm};

    #[test]
    fn poch_q_1_is_one_minus_q() {
        let fs = FactoredSum::from_term(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![poch_finite(ZqMonomial::q(1), 1)],
        });
        let p = to_laurent3(&fs).unwrap();
        let mut want = LaurentPoly3::one();
        want.add_term((0, 0, 1), -Rat::one());
        assert_eq!(p, want);
    }

    #[test]
    fn empty_product_is_one() {
        let p = to_laurent3(&FactoredSum::one()).unwrap();
        assert_eq!(p, LaurentPoly3::one());
    }

    #[test]
    fn two_binomials_expand_to_four_terms() {
        // (q z1^{-1})_1 (q z1)_1 = (1 - q z1^{-1})(1 - q z1)
        //                        = 1 - q z1^{-1} - q z1 + q^2
        let fs = FactoredSum::from_term(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![
                poch_finite(ZqMonomial::new(-1, 0, 1), 1),
                poch_finite(ZqMonomial::new(1, 0, 1), 1),
            ],
        });
        let p = to_laurent3(&fs).unwrap();
        assert_eq!(p.coeff((0, 0, 0)), Rat::one());
        assert_eq!(p.coeff((-1, 0, 1)), -Rat::one());
        assert_eq!(p.coeff((1, 0, 1)), -Rat::one());
        assert_eq!(p.coeff((0, 0, 2)), Rat::one());
        assert_eq!(p.num_terms(), 4);
    }

    #[test]
    fn infinite_factor_is_rejected() {
        let fs = FactoredSum::from_term(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![crate::qcore::poch::poch_inf(ZqMonomial::q(1)).unwrap()],
        });
        assert!(to_laurent3(&fs).is_err());
    }

    #[test]
    fn pochhammer_splitting_identity() {
        // (x)_{m+n} = (x)_m (x q^m)_n for small m, n and the paper's bases.
        let bases = [
            ZqMonomial::new(1, 0, 1),
            ZqMonomial::new(0, 1, 1),
            ZqMonomial::new(1, 1, 1),
            ZqMonomial::q(1),
        ];
        for base in bases {
            for m in 0..=5u32 {
                for n in 0..=5u32 {
                    let whole = to_laurent3(&FactoredSum::from_term(FactoredTerm {
                        coeff: Rat::one(),
                        monomial: ZqMonomial::ONE,
                        factors: vec![poch_finite(base, m + n)],
                    }))
                    .unwrap();
                    let split = to_laurent3(&FactoredSum::from_term(FactoredTerm {
                        coeff: Rat::one(),
                        monomial: ZqMonomial::ONE,
                        factors: vec![
                            poch_finite(base, m),
                            poch_finite(base + ZqMonomial::q(m as i32), n),
                        ],
                    }))
                    .unwrap();
                    assert_eq!(whole, split, "base {base} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn clearing_denominators_detects_equality() {
        // 1/(1-q) - 1/(1-q) - 0 == 0 and 1/(1-q) != 1/(1-q^2).
        let one = LaurentPoly3::one();
        let mut t1 = RationalTerm::new(one.clone());
        t1.div_binomial((0, 0, 1), 1);
        let mut t2 = RationalTerm::new(one.scale(&-Rat::one()));
        t2.div_binomial((0, 0, 1), 1);
        assert!(rational_identity_is_zero(&[t1, t2]));

        let mut t1 = RationalTerm::new(one.clone());
        t1.div_binomial((0, 0, 1), 1);
        let mut t2 = RationalTerm::new(one.scale(&-Rat::one()));
        t2.div_binomial((0, 0, 2), 1);
        assert!(!rational_identity_is_zero(&[t1, t2]));
    }
}
