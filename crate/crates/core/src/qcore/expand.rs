//! Deterministic expansion of factored Pochhammer sums into windowed series.
//!
//! Every factor is flattened into binomials `1 - z1^a z2^b q^c`. Inverted
//! binomials expand as geometric series in the direction fixed by the
//! orientation: a base on the positive oriented orthant (or pure q with
//! positive exponent) expands as `sum_{a>=0} x^a`; a base on the negative
//! orthant (or pure q with negative exponent) expands as
//! `-sum_{a>=1} x^{-a}`. Mixed-sign oriented bases are rejected.
//!
//! Truncation bookkeeping: per term we lower-bound the q-exponent any
//! subset of binomial contributions can reach inside the z-budget, widen
//! the working window accordingly, and cut partial products against the
//! remaining factors' minimal contribution. The result is exact on the
//! requested window.

use super::monomial::{Orientation, ZqMonomial};
use super::poch::{FactoredSum, FactoredTerm, PochLen};
use super::series::Series2;
use crate::rat::Rat;
use crate::QError;
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Case {
    /// Oriented z-part non-negative (not all zero), or pure q with e > 0.
    Forward,
    /// Oriented z-part non-positive (not all zero), or pure q with e < 0.
    Backward,
}

fn classify(o: Orientation, base: &ZqMonomial) -> Result<Case, QError> {
    let (o1, o2) = o.oriented(base);
    if base.is_pure_q() {
        return match base.e {
            e if e > 0 => Ok(Case::Forward),
            e if e < 0 => Ok(Case::Backward),
            _ => Err(QError::UnitBase),
        };
    }
    if o1 >= 0 && o2 >= 0 {
        Ok(Case::Forward)
    } else if o1 <= 0 && o2 <= 0 {
        Ok(Case::Backward)
    } else {
        Err(QError::MixedSignBase { base: *base })
    }
}

/// One binomial `(1 - base)` of a factor, with its inversion flag.
struct Binom {
    base: ZqMonomial,
    inverted: bool,
}

/// Oriented z-budget box for intermediate keys.
struct Budget {
    min1: i32,
    max1: i32,
    min2: i32,
    max2: i32,
    total: i32,
}

impl Budget {
    fn admits(&self, o1: i32, o2: i32) -> bool {
        o1 >= self.min1 && o1 <= self.max1 && o2 >= self.min2 && o2 <= self.max2
            && o1 + o2 <= self.total
    }
}

/// Largest multiple of the step `(s1, s2) >= 0` that stays in the budget,
/// ignoring q. `None` means unbounded by z.
fn z_alpha_cap(budget: &Budget, s1: i32, s2: i32) -> Option<i64> {
    let mut cap: Option<i64> = None;
    let mut apply = |limit: i64| {
        cap = Some(cap.map_or(limit, |c| c.min(limit)));
    };
    if s1 > 0 {
        apply((budget.max1 as i64) / s1 as i64);
    }
    if s2 > 0 {
        apply((budget.max2 as i64) / s2 as i64);
    }
    if s1 + s2 > 0 {
        apply((budget.total.max(0) as i64) / (s1 + s2) as i64);
    }
    cap
}

/// Minimal q-exponent a binomial can contribute inside the budget.
fn binom_min_q(o: Orientation, b: &Binom, budget: &Budget) -> Result<i64, QError> {
    let (o1, o2) = o.oriented(&b.base);
    if !b.inverted {
        return Ok((b.base.e as i64).min(0));
    }
    match classify(o, &b.base)? {
        Case::Forward => {
            if b.base.e >= 0 {
                Ok(0)
            } else {
                // more repetitions go lower; bounded by the z-budget
                let cap = z_alpha_cap(budget, o1.max(0), o2.max(0)).unwrap_or(0);
                Ok(b.base.e as i64 * cap)
            }
        }
        Case::Backward => {
            // terms are -x^{-a}, a >= 1, with q-step -e per repetition
            let step = -(b.base.e as i64);
            let cap = z_alpha_cap(budget, -o1, -o2).unwrap_or(i64::MAX);
            if cap < 1 {
                // mandatory unit does not fit: the whole term vanishes
                return Ok(i64::MAX);
            }
            if step >= 0 {
                Ok(step)
            } else {
                Ok(step * cap)
            }
        }
    }
}

/// Expands one binomial into explicit monomial terms within the budget and
/// a q-cap for its own contribution.
fn binom_terms(
    o: Orientation,
    b: &Binom,
    budget: &Budget,
    qcap: i64,
) -> Result<Vec<(ZqMonomial, Rat)>, QError> {
    let mut out = Vec::new();
    if !b.inverted {
        out.push((ZqMonomial::ONE, Rat::one()));
        let (o1, o2) = o.oriented(&b.base);
        if budget.admits(o1, o2) && (b.base.e as i64) <= qcap {
            out.push((b.base, -Rat::one()));
        }
        return Ok(out);
    }
    match classify(o, &b.base)? {
        Case::Forward => {
            let (o1, o2) = o.oriented(&b.base);
            let zcap = z_alpha_cap(budget, o1, o2);
            let mut alpha: i64 = 0;
            loop {
                if let Some(c) = zcap {
                    if alpha > c {
                        break;
                    }
                }
                let e = b.base.e as i64 * alpha;
                if b.base.e > 0 && e > qcap {
                    break;
                }
                if zcap.is_none() && b.base.e <= 0 {
                    return Err(QError::UnitBase);
                }
                out.push((b.base.scaled(alpha as i32), Rat::one()));
                alpha += 1;
            }
            Ok(out)
        }
        Case::Backward => {
            let (o1, o2) = o.oriented(&b.base);
            let zcap = z_alpha_cap(budget, -o1, -o2);
            let step_e = -(b.base.e as i64);
            let mut alpha: i64 = 1;
            loop {
                if let Some(c) = zcap {
                    if alpha > c {
                        break;
                    }
                }
                if step_e > 0 && step_e * alpha > qcap {
                    break;
                }
                if zcap.is_none() && step_e <= 0 {
                    return Err(QError::UnitBase);
                }
                out.push(((-b.base).scaled(alpha as i32), -Rat::one()));
                alpha += 1;
            }
            Ok(out)
        }
    }
}

/// Dense q-vector used while folding one term.
#[derive(Clone, Default)]
struct DenseQ {
    lo: i64,
    v: Vec<Rat>,
}

impl DenseQ {
    fn add(&mut self, e: i64, c: &Rat) {
        if self.v.is_empty() {
            self.lo = e;
            self.v.push(c.clone());
            return;
        }
        if e < self.lo {
            let pad = (self.lo - e) as usize;
            let mut nv = vec![Rat::zero(); pad];
            nv.append(&mut self.v);
            self.v = nv;
            self.lo = e;
        }
        let idx = (e - self.lo) as usize;
        if idx >= self.v.len() {
            self.v.resize(idx + 1, Rat::zero());
        }
        self.v[idx] += c;
    }
}

/// Binomial decomposition of a term plus the bookkeeping needed for sound
/// truncation.
struct TermPlan {
    binoms: Vec<Binom>,
    floor_parts: Vec<i64>,
    budget: Budget,
    /// Least q-exponent the factor product can reach in-budget.
    floor: i64,
}

fn plan_term(
    o: Orientation,
    term: &FactoredTerm,
    zmax: i32,
    qhi: i32,
) -> Result<Option<TermPlan>, QError> {
    let e_pref = term.monomial.e as i64;
    let (p1, p2) = o.oriented(&term.monomial);

    // Flatten factors into binomials. Infinite products enumerate their
    // shifted binomials lazily below, after the q-floor is known; here we
    // record them with the count of explicitly enumerable negative shifts.
    let mut binoms: Vec<Binom> = Vec::new();
    let mut infinite: Vec<(ZqMonomial, bool)> = Vec::new();
    for f in &term.factors {
        match f.len {
            PochLen::Finite(n) => {
                for i in 0..n {
                    binoms.push(Binom { base: f.base + ZqMonomial::q(i as i32), inverted: f.inverted });
                }
            }
            PochLen::Infinite => {
                // A backward-oriented infinite product has no formal
                // expansion on this orthant (inverted: mandatory prefactors
                // of unbounded degree; plain: unbounded compensation).
                if classify(o, &f.base)? == Case::Backward {
                    return Err(QError::NoExpansion { base: f.base });
                }
                infinite.push((f.base, f.inverted));
            }
        }
    }

    // Validate every inverted base up front so that ill-formed input is
    // reported even when the term turns out to be dead on this window.
    for b in &binoms {
        if b.inverted {
            classify(o, &b.base)?;
        }
    }

    // Compensation bound: non-inverted binomials whose bases point against
    // the orientation can dip below the orthant before later factors bring
    // the key back.
    let mut b1 = 0i32;
    let mut b2 = 0i32;
    for b in &binoms {
        if !b.inverted {
            let (o1, o2) = o.oriented(&b.base);
            b1 += (-o1).max(0);
            b2 += (-o2).max(0);
        }
    }
    let budget = Budget {
        min1: -b1,
        max1: zmax - p1 + b1,
        min2: -b2,
        max2: zmax - p2 + b2,
        total: zmax - p1 - p2 + b1 + b2,
    };
    if budget.total < 0 {
        return Ok(None);
    }

    // q-floor of the whole term: sum of per-binomial minima. Infinite
    // forward products contribute only through their negative shifts.
    let mut floor_parts: Vec<i64> = Vec::new();
    for b in &binoms {
        let m = binom_min_q(o, b, &budget)?;
        if m == i64::MAX {
            return Ok(None);
        }
        floor_parts.push(m);
    }
    let mut inf_bases: Vec<Binom> = Vec::new();
    for (base, inverted) in &infinite {
        if base.e < 0 {
            for i in 0..(-base.e) {
                let bb = Binom { base: *base + ZqMonomial::q(i), inverted: *inverted };
                let m = binom_min_q(o, &bb, &budget)?;
                if m == i64::MAX {
                    return Ok(None);
                }
                floor_parts.push(m);
                inf_bases.push(bb);
            }
        }
    }
    let floor: i64 = floor_parts.iter().sum();
    let qcap_glob = qhi as i64 - e_pref - floor;

    // Enumerate the remaining (non-negative shift) binomials of infinite
    // products; each contributes at least q^{shift} per use, so shifts
    // beyond the global cap cannot affect any retained coefficient.
    for (base, inverted) in &infinite {
        let start = (-base.e).max(0);
        let mut i = start;
        while (base.e + i) as i64 <= qcap_glob {
            inf_bases.push(Binom { base: *base + ZqMonomial::q(i), inverted: *inverted });
            floor_parts.push(0);
            i += 1;
        }
    }
    binoms.extend(inf_bases);
    Ok(Some(TermPlan { binoms, floor_parts, budget, floor }))
}

fn expand_term(
    o: Orientation,
    term: &FactoredTerm,
    plan: &TermPlan,
    qwindow: (i32, i32),
    out: &mut Series2,
) -> Result<(), QError> {
    let e_pref = term.monomial.e as i64;
    let TermPlan { binoms, floor_parts, budget, floor } = plan;
    let (floor, budget) = (*floor, budget);

    // Suffix minima: cut partial products against what the remaining
    // binomials must still contribute.
    let n = binoms.len();
    let mut suffix = vec![0i64; n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1] + floor_parts[j];
    }

    // Fold.
    let mut acc: BTreeMap<(i32, i32), DenseQ> = BTreeMap::new();
    let mut unit = DenseQ::default();
    unit.add(0, &Rat::one());
    acc.insert((0, 0), unit);

    for (j, b) in binoms.iter().enumerate() {
        let qcap_own = qwindow.1 as i64 - e_pref - (floor - floor_parts[j]);
        let terms = binom_terms(o, b, budget, qcap_own)?;
        let cut = qwindow.1 as i64 - e_pref - suffix[j + 1];
        let mut next: BTreeMap<(i32, i32), DenseQ> = BTreeMap::new();
        for (key, dq) in &acc {
            for (step, c) in &terms {
                let k1 = key.0 + step.m1;
                let k2 = key.1 + step.m2;
                let o1 = k1 * o.dir1 as i32;
                let o2 = k2 * o.dir2 as i32;
                if !budget.admits(o1, o2) {
                    continue;
                }
                let cell = next.entry((k1, k2)).or_default();
                for (idx, coeff) in dq.v.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let e = dq.lo + idx as i64 + step.e as i64;
                    if e <= cut {
                        if c.is_one() {
                            cell.add(e, coeff);
                        } else {
                            cell.add(e, &(coeff * c));
                        }
                    }
                }
            }
        }
        acc = next;
        if acc.is_empty() {
            return Ok(());
        }
    }

    for (key, dq) in &acc {
        let m1 = key.0 + term.monomial.m1;
        let m2 = key.1 + term.monomial.m2;
        for (idx, coeff) in dq.v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let e = dq.lo + idx as i64 + e_pref;
            if e >= qwindow.0 as i64 && e <= qwindow.1 as i64 {
                out.add_coeff(m1, m2, e as i32, coeff * &term.coeff);
            }
        }
    }
    Ok(())
}

/// Expands a factored sum to an exact windowed series. The window's lower
/// edge is extended below the request when the expression can reach lower
/// q-exponents, keeping the support-floor invariant of `Series2`.
pub fn expand(
    x: &FactoredSum,
    o: Orientation,
    zmax: i32,
    qwindow: (i32, i32),
) -> Result<Series2, QError> {
    assert!(zmax >= 0 && qwindow.0 <= qwindow.1, "bad window");
    let mut plans = Vec::with_capacity(x.terms.len());
    let mut qlo = qwindow.0 as i64;
    for term in &x.terms {
        let plan = plan_term(o, term, zmax, qwindow.1)?;
        if let Some(p) = &plan {
            qlo = qlo.min(term.monomial.e as i64 + p.floor);
        }
        plans.push(plan);
    }
    let qlo = i32::try_from(qlo).expect("window floor out of range");
    let mut out = Series2::zero(o, zmax, (qlo, qwindow.1));
    for (term, plan) in x.terms.iter().zip(&plans) {
        if let Some(p) = plan {
            expand_term(o, term, p, (qlo, qwindow.1), &mut out)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::poch::{fs_mul, fs_one_minus, poch_finite, poch_inf, PochFactor};

    fn term_with(factors: Vec<PochFactor>) -> FactoredSum {
        FactoredSum::from_term(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors,
        })
    }

    #[test]
    fn geometric_series_backward_base() {
        // 1/(1 - q z1^{-1}) under orientation (-,+): 1 + q z1^{-1} + q^2 z1^{-2} + ...
        let fs = term_with(vec![poch_finite(ZqMonomial::new(-1, 0, 1), 1).inverse()]);
        let s = expand(&fs, Orientation::new(-1, 1), 4, (0, 6)).unwrap();
        for a in 0..=4 {
            assert_eq!(s.coeff(-a, 0, a), Rat::one(), "alpha={a}");
        }
        assert!(s.coeff(-1, 0, 2).is_zero());
    }

    #[test]
    fn geometric_series_second_case() {
        // Same factor under (+,+): -z1 q^{-1} - z1^2 q^{-2} - ...
        let fs = term_with(vec![poch_finite(ZqMonomial::new(-1, 0, 1), 1).inverse()]);
        let s = expand(&fs, Orientation::PP, 4, (-6, 0)).unwrap();
        for a in 1..=4 {
            assert_eq!(s.coeff(a, 0, -a), -Rat::one(), "alpha={a}");
        }
        assert!(s.coeff(0, 0, 0).is_zero());
    }

    #[test]
    fn poch_q_2_expands_to_polynomial() {
        // (q)_2 = (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let fs = term_with(vec![poch_finite(ZqMonomial::q(1), 2)]);
        let s = expand(&fs, Orientation::PP, 0, (0, 10)).unwrap();
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
        assert_eq!(s.coeff(0, 0, 1), -Rat::one());
        assert_eq!(s.coeff(0, 0, 2), -Rat::one());
        assert_eq!(s.coeff(0, 0, 3), Rat::one());
        assert!(s.coeff(0, 0, 4).is_zero());
    }

    #[test]
    fn empty_pochhammer_is_one() {
        let fs = term_with(vec![poch_finite(ZqMonomial::new(1, 0, 1), 0)]);
        let s = expand(&fs, Orientation::PP, 3, (0, 5)).unwrap();
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
    }

    #[test]
    fn inverse_times_factor_is_one() {
        // expand(F * F^{-1}) = 1 always; the same identity holds at series
        // level when F's own support stays on the oriented orthant (forward
        // bases), where restriction loses nothing.
        let bases = [
            ZqMonomial::new(1, 0, 1),
            ZqMonomial::new(0, 1, 2),
            ZqMonomial::new(1, 1, -1),
            ZqMonomial::new(-1, 0, 1),
            ZqMonomial::new(-1, -1, 3),
            ZqMonomial::q(2),
        ];
        for base in bases {
            for o in [Orientation::PP, Orientation::MM] {
                let f = term_with(vec![poch_finite(base, 2)]);
                let finv = term_with(vec![poch_finite(base, 2).inverse()]);
                let prod = expand(&fs_mul(&f, &finv), o, 5, (-15, 15)).unwrap();
                let one = Series2::one(o, 5, (-15, 15));
                assert!(prod.series_eq(&one).unwrap(), "fs route: base {base} orientation {:?}", o);
                if matches!(classify(o, &base), Ok(Case::Forward)) {
                    let a = expand(&f, o, 5, (-15, 15)).unwrap();
                    let b = expand(&finv, o, 5, (-15, 15)).unwrap();
                    let p = crate::qcore::series::series_mul(&a, &b).unwrap();
                    let one = Series2::one(o, p.zmax, p.qwindow());
                    assert!(p.series_eq(&one).unwrap(), "base {base} orientation {:?}", o);
                }
            }
        }
    }

    #[test]
    fn mixed_sign_base_is_rejected() {
        let fs = term_with(vec![poch_finite(ZqMonomial::new(1, -1, 0), 1).inverse()]);
        assert!(matches!(
            expand(&fs, Orientation::PP, 3, (0, 5)),
            Err(QError::MixedSignBase { .. })
        ));
    }

    #[test]
    fn infinite_inverted_product_truncates() {
        // 1/(q z1)_inf = sum over partitions with parts weighted by z1.
        let fs = term_with(vec![poch_inf(ZqMonomial::new(1, 0, 1)).unwrap().inverse()]);
        let s = expand(&fs, Orientation::PP, 3, (0, 8)).unwrap();
        // z1-degree 1: coefficient of z1 q^e counts one part of size e: 1 for e>=1.
        for e in 1..=8 {
            assert_eq!(s.coeff(1, 0, e), Rat::one());
        }
        // z1^2 q^4: partitions of 4 into exactly 2 parts: {1,3},{2,2} -> 2.
        assert_eq!(s.coeff(2, 0, 4), Rat::from_int(2));
    }

    #[test]
    fn numerator_with_backward_base_combines_with_inverse_factors() {
        // (1 - q z2) / (1 - q z2) = 1 under (-,-): the numerator's binomial
        // leaves the orthant and is brought back by the inverted factor.
        let f = fs_one_minus(ZqMonomial::new(0, 1, 1));
        let finv = term_with(vec![poch_finite(ZqMonomial::new(0, 1, 1), 1).inverse()]);
        let prod = fs_mul(&f, &finv);
        let s = expand(&prod, Orientation::MM, 4, (0, 8)).unwrap();
        let one = Series2::one(Orientation::MM, 4, (0, 8));
        assert!(s.series_eq(&one).unwrap());
    }

    #[test]
    fn window_soundness_larger_window_agrees() {
        // Rerunning with a strictly larger window agrees on the smaller one.
        let fs = term_with(vec![
            poch_finite(ZqMonomial::new(-1, 0, -1), 2).inverse(),
            poch_inf(ZqMonomial::new(1, 0, 1)).unwrap().inverse(),
            poch_finite(ZqMonomial::new(0, 1, 3), 1),
        ]);
        let small = expand(&fs, Orientation::PP, 3, (-4, 6)).unwrap();
        let large = expand(&fs, Orientation::PP, 5, (-9, 12)).unwrap();
        assert!(large.series_eq(&small).unwrap());
    }
}
