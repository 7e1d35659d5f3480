//! Symbolic q-Pochhammer factors and factored sums.
//!
//! `FactoredSum` is the closed-form carrier for every formula in the
//! library: a sum of terms `coeff * z1^a z2^b q^c * prod_i (base_i)_{len_i}^{±1}`
//! where `(a)_n = prod_{i=0}^{n-1} (1 - a q^i)` and `len` may be infinite.
//! No simplification happens on construction; expansion and the
//! Pochhammer-ratio normalization below are the only rewrite steps.

use super::monomial::ZqMonomial;
use crate::rat::Rat;
use crate::QError;

/// Length of a Pochhammer product: `(a)_n` or `(a)_inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PochLen {
    Finite(u32),
    Infinite,
}

/// One factor `(base)_len^{exponent}` with `exponent` ±1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PochFactor {
    pub base: ZqMonomial,
    pub len: PochLen,
    pub inverted: bool,
}

/// `(base)_len^{±1}`. An infinite product over a pure power of q is only
/// well formed when the q-exponent is positive.
pub fn poch(base: ZqMonomial, len: PochLen, inverted: bool) -> Result<PochFactor, QError> {
    if len == PochLen::Infinite && base.is_pure_q() && base.e <= 0 {
        return Err(QError::IllFormedInfiniteProduct { base });
    }
    Ok(PochFactor { base, len, inverted })
}

pub fn poch_finite(base: ZqMonomial, len: u32) -> PochFactor {
    PochFactor { base, len: PochLen::Finite(len), inverted: false }
}

pub fn poch_inf(base: ZqMonomial) -> Result<PochFactor, QError> {
    poch(base, PochLen::Infinite, false)
}

impl PochFactor {
    pub fn inverse(&self) -> PochFactor {
        PochFactor { base: self.base, len: self.len, inverted: !self.inverted }
    }
}

/// One summand of a `FactoredSum`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredTerm {
    pub coeff: Rat,
    pub monomial: ZqMonomial,
    pub factors: Vec<PochFactor>,
}

impl FactoredTerm {
    pub fn one() -> Self {
        FactoredTerm { coeff: Rat::one(), monomial: ZqMonomial::ONE, factors: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        FactoredTerm { coeff: c, monomial: ZqMonomial::ONE, factors: Vec::new() }
    }

    pub fn monomial(m: ZqMonomial) -> Self {
        FactoredTerm { coeff: Rat::one(), monomial: m, factors: Vec::new() }
    }

    fn sort_factors(&mut self) {
        self.factors.sort();
    }
}

/// A finite sum of factored terms, kept in a canonical (sorted) order so
/// that serialized output is byte-stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredSum {
    pub terms: Vec<FactoredTerm>,
}

impl FactoredSum {
    pub fn zero() -> Self {
        FactoredSum { terms: Vec::new() }
    }

    pub fn one() -> Self {
        FactoredSum { terms: vec![FactoredTerm::one()] }
    }

    pub fn from_term(t: FactoredTerm) -> Self {
        let mut s = FactoredSum { terms: vec![t] };
        s.canonicalize();
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn canonicalize(&mut self) {
        for t in &mut self.terms {
            t.sort_factors();
        }
        self.terms.retain(|t| !t.coeff.is_zero());
        self.terms.sort_by(|a, b| (a.monomial, &a.factors).cmp(&(b.monomial, &b.factors)));
        // combine like terms
        let mut combined: Vec<FactoredTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match combined.last_mut() {
                Some(last) if last.monomial == t.monomial && last.factors == t.factors => {
                    last.coeff += &t.coeff;
                }
                _ => combined.push(t),
            }
        }
        combined.retain(|t| !t.coeff.is_zero());
        self.terms = combined;
    }
}

pub fn fs_add(a: &FactoredSum, b: &FactoredSum) -> FactoredSum {
    let mut terms = a.terms.clone();
    terms.extend(b.terms.iter().cloned());
    let mut s = FactoredSum { terms };
    s.canonicalize();
    s
}

pub fn fs_sub(a: &FactoredSum, b: &FactoredSum) -> FactoredSum {
    fs_add(a, &fs_scale_rat(b, &-Rat::one()))
}

pub fn fs_mul(a: &FactoredSum, b: &FactoredSum) -> FactoredSum {
    let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
    for ta in &a.terms {
        for tb in &b.terms {
            let mut factors = ta.factors.clone();
            factors.extend(tb.factors.iter().cloned());
            terms.push(FactoredTerm {
                coeff: &ta.coeff * &tb.coeff,
                monomial: ta.monomial + tb.monomial,
                factors,
            });
        }
    }
    let mut s = FactoredSum { terms };
    s.canonicalize();
    s
}

/// Multiplies by `rat * mono`.
pub fn fs_scale(x: &FactoredSum, mono: ZqMonomial, rat: &Rat) -> FactoredSum {
    let mut s = FactoredSum {
        terms: x
            .terms
            .iter()
            .map(|t| FactoredTerm {
                coeff: &t.coeff * rat,
                monomial: t.monomial + mono,
                factors: t.factors.clone(),
            })
            .collect(),
    };
    s.canonicalize();
    s
}

pub fn fs_scale_rat(x: &FactoredSum, rat: &Rat) -> FactoredSum {
    fs_scale(x, ZqMonomial::ONE, rat)
}

/// `1 - mono` as a factored sum.
pub fn fs_one_minus(mono: ZqMonomial) -> FactoredSum {
    fs_add(
        &FactoredSum::one(),
        &FactoredSum::from_term(FactoredTerm {
            coeff: -Rat::one(),
            monomial: mono,
            factors: Vec::new(),
        }),
    )
}

fn substitute_monomial(m: &ZqMonomial, image1: &ZqMonomial, image2: &ZqMonomial) -> ZqMonomial {
    image1.scaled(m.m1) + image2.scaled(m.m2) + ZqMonomial::q(m.e)
}

/// Replaces `z1` by `image1` and `z2` by `image2` everywhere, composing
/// exponents additively. Fails if the image of an infinite product becomes a
/// pure power of q with non-positive exponent.
pub fn substitute(
    x: &FactoredSum,
    image1: &ZqMonomial,
    image2: &ZqMonomial,
) -> Result<FactoredSum, QError> {
    let mut terms = Vec::with_capacity(x.terms.len());
    for t in &x.terms {
        let mut factors = Vec::with_capacity(t.factors.len());
        for f in &t.factors {
            let base = substitute_monomial(&f.base, image1, image2);
            factors.push(poch(base, f.len, f.inverted)?);
        }
        terms.push(FactoredTerm {
            coeff: t.coeff.clone(),
            monomial: substitute_monomial(&t.monomial, image1, image2),
            factors,
        });
    }
    let mut s = FactoredSum { terms };
    s.canonicalize();
    Ok(s)
}

/// Cancels paired infinite factors whose bases differ by a power of q,
/// using `(x)_inf = (x)_m (x q^m)_inf`:
/// `(x)_inf / (x q^m)_inf = (x)_m` for `m >= 0` and `1/(x q^m)_{-m}` for `m < 0`.
///
/// Within each term, numerator/denominator infinite factors with the same
/// z-part are paired greedily (smallest q-shift first) until one side runs
/// out. No-op for terms without such pairs.
pub fn normalize_poch_ratios(x: &FactoredSum) -> FactoredSum {
    let mut terms = Vec::with_capacity(x.terms.len());
    for t in &x.terms {
        let mut finite: Vec<PochFactor> = Vec::new();
        // (z-part, q-shift, inverted) for infinite factors.
        let mut inf_num: Vec<ZqMonomial> = Vec::new();
        let mut inf_den: Vec<ZqMonomial> = Vec::new();
        for f in &t.factors {
            match f.len {
                PochLen::Finite(_) => finite.push(f.clone()),
                PochLen::Infinite => {
                    if f.inverted {
                        inf_den.push(f.base);
                    } else {
                        inf_num.push(f.base);
                    }
                }
            }
        }
        inf_num.sort();
        inf_den.sort();
        let mut rest_num: Vec<ZqMonomial> = Vec::new();
        for num in inf_num {
            // Find a denominator partner with the same z-part.
            let partner = inf_den
                .iter()
                .position(|d| d.m1 == num.m1 && d.m2 == num.m2);
            match partner {
                Some(i) => {
                    let den = inf_den.remove(i);
                    let shift = den.e - num.e;
                    if shift >= 0 {
                        if shift > 0 {
                            finite.push(poch_finite(num, shift as u32));
                        }
                    } else {
                        finite.push(PochFactor {
                            base: den,
                            len: PochLen::Finite((-shift) as u32),
                            inverted: true,
                        });
                    }
                }
                None => rest_num.push(num),
            }
        }
        let mut factors = finite;
        for b in rest_num {
            factors.push(PochFactor { base: b, len: PochLen::Infinite, inverted: false });
        }
        for b in inf_den {
            factors.push(PochFactor { base: b, len: PochLen::Infinite, inverted: true });
        }
        // Drop empty products.
        factors.retain(|f| f.len != PochLen::Finite(0));
        terms.push(FactoredTerm { coeff: t.coeff.clone(), monomial: t.monomial, factors });
    }
    let mut s = FactoredSum { terms };
    s.canonicalize();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ZqMonomial {
        ZqMonomial::q(1)
    }

    #[test]
    fn infinite_pure_q_product_needs_positive_shift() {
        assert!(poch_inf(ZqMonomial::q(0)).is_err());
        assert!(poch_inf(ZqMonomial::q(-1)).is_err());
        assert!(poch_inf(ZqMonomial::new(0, -1, 0)).is_ok());
        assert!(poch_inf(q()).is_ok());
    }

    #[test]
    fn mul_by_one_is_identity() {
        let x = FactoredSum::from_term(FactoredTerm {
            coeff: Rat::new(3, 2),
            monomial: ZqMonomial::new(1, -2, 3),
            factors: vec![poch_finite(q(), 4)],
        });
        assert_eq!(fs_mul(&FactoredSum::one(), &x), x);
    }

    #[test]
    fn substitute_composes_exponents() {
        // z1 -> z1 z2 q^{i-1}, z2 -> z2^{-1} q^{-2i+1} applied to z1 (i = 3).
        let x = FactoredSum::from_term(FactoredTerm::monomial(ZqMonomial::z1(1)));
        let got = substitute(&x, &ZqMonomial::new(1, 1, 2), &ZqMonomial::new(0, -1, -5)).unwrap();
        assert_eq!(got.terms[0].monomial, ZqMonomial::new(1, 1, 2));

        // (z1 z2 q^{m+n})_inf at z1 -> q^i z1 z2, z2 -> q^{-2i} z2^{-1}
        // becomes (z1 q^{m+n-i})_inf; take m+n = 4, i = 3.
        let f = FactoredSum::from_term(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![poch_inf(ZqMonomial::new(1, 1, 4)).unwrap()],
        });
        let got = substitute(&f, &ZqMonomial::new(1, 1, 3), &ZqMonomial::new(0, -1, -6)).unwrap();
        assert_eq!(got.terms[0].factors[0].base, ZqMonomial::new(1, 0, 1));
    }

    #[test]
    fn substitute_rejects_collapsed_infinite_product() {
        let f = FactoredSum::from_term(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![poch_inf(ZqMonomial::new(1, 0, 0)).unwrap()],
        });
        // z1 -> q^0: the infinite product degenerates to (1)_inf.
        assert!(substitute(&f, &ZqMonomial::q(0), &ZqMonomial::z2(1)).is_err());
    }

    #[test]
    fn ratio_normalization_splits_at_shift() {
        // (q z2)_inf / (q^4 z2)_inf -> (q z2)_3
        let t = FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![
                poch_inf(ZqMonomial::new(0, 1, 1)).unwrap(),
                poch_inf(ZqMonomial::new(0, 1, 4)).unwrap().inverse(),
            ],
        };
        let n = normalize_poch_ratios(&FactoredSum::from_term(t));
        assert_eq!(n.terms[0].factors, vec![poch_finite(ZqMonomial::new(0, 1, 1), 3)]);

        // (x)_inf / (x)_inf -> 1
        let t = FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![
                poch_inf(ZqMonomial::new(1, 0, 2)).unwrap(),
                poch_inf(ZqMonomial::new(1, 0, 2)).unwrap().inverse(),
            ],
        };
        let n = normalize_poch_ratios(&FactoredSum::from_term(t));
        assert!(n.terms[0].factors.is_empty());

        // (x q^2)_inf / (x)_inf -> 1/(x)_2
        let t = FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![
                poch_inf(ZqMonomial::new(1, 0, 2)).unwrap(),
                poch_inf(ZqMonomial::new(1, 0, 0)).unwrap().inverse(),
            ],
        };
        let n = normalize_poch_ratios(&FactoredSum::from_term(t));
        assert_eq!(
            n.terms[0].factors,
            vec![PochFactor {
                base: ZqMonomial::new(1, 0, 0),
                len: PochLen::Finite(2),
                inverted: true
            }]
        );
    }
}
