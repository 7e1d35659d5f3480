//! Fermionic and bosonic character sums for the sl2 principal subspaces,
//! and their two-term recursion.

use super::basis::{enumerate_sl2, Sl2Params};
use crate::qcore::{
    expand, poch_finite, poch_inf, series_add, FactoredSum, FactoredTerm, Orientation, Series2,
    ZqMonomial,
};
use crate::rat::Rat;

/// Iterates tuples `(m_1,..,m_k)` of non-negative integers with
/// `sum i*m_i <= cap`, calling `f` on each.
pub(crate) fn for_each_weighted_tuple(k: usize, cap: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(tuple: &mut Vec<u32>, k: usize, left: u32, f: &mut impl FnMut(&[u32])) {
        if tuple.len() == k {
            f(tuple);
            return;
        }
        let i = tuple.len() as u32 + 1;
        let mut m = 0;
        loop {
            if m * i > left {
                break;
            }
            tuple.push(m);
            rec(tuple, k, left - m * i, f);
            tuple.pop();
            m += 1;
        }
    }
    rec(&mut Vec::new(), k, cap, f);
}

/// The quasi-particle sum: over `(m_1,..,m_k) >= 0`,
/// `q^{sum min(i,j) m_i m_j - sum min(i,l) m_i} z^{sum i m_i} / prod (q)_{m_i}`,
/// truncated to `sum i m_i <= zmax`.
pub fn fermionic_sl2(p: Sl2Params, zmax: i32, qwindow: (i32, i32)) -> Series2 {
    if p.k == 0 {
        return Series2::one(Orientation::PP, zmax, qwindow);
    }
    let mut fs = FactoredSum::zero();
    let mut terms = Vec::new();
    for_each_weighted_tuple(p.k as usize, zmax as u32, &mut |m| {
        let zdeg: u32 = m.iter().enumerate().map(|(i, v)| (i as u32 + 1) * v).sum();
        let mut e: i64 = 0;
        for i in 0..p.k as usize {
            for j in 0..p.k as usize {
                e += (i.min(j) as i64 + 1) * m[i] as i64 * m[j] as i64;
            }
            e -= ((i as u32 + 1).min(p.l)) as i64 * m[i] as i64;
        }
        let mut factors = Vec::new();
        for v in m {
            if *v > 0 {
                factors.push(poch_finite(ZqMonomial::q(1), *v).inverse());
            }
        }
        terms.push(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::new(zdeg as i32, 0, e as i32),
            factors,
        });
    });
    fs.terms = terms;
    expand(&fs, Orientation::PP, zmax, qwindow).expect("fermionic sum expands")
}

/// The two extremal-vector sums: over `n >= 0`,
/// `z^{nk} q^{n^2 k - n l} / ((q^{2n} z)_inf (q)_n (q^{-2n+1} z^{-1})_n)`
/// plus `z^{nk+l} q^{n^2 k + n l} / ((q^{2n+1} z)_inf (q)_n (q^{-2n} z^{-1})_{n+1})`.
pub fn bosonic_sl2(p: Sl2Params, zmax: i32, qwindow: (i32, i32)) -> Series2 {
    if p.k == 0 {
        return Series2::one(Orientation::PP, zmax, qwindow);
    }
    let k = p.k as i32;
    let l = p.l as i32;
    let mut terms = Vec::new();
    let mut n = 0i32;
    while n * k <= zmax {
        terms.push(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::new(n * k, 0, n * n * k - n * l),
            factors: vec![
                poch_inf(ZqMonomial::new(1, 0, 2 * n)).unwrap().inverse(),
                poch_finite(ZqMonomial::q(1), n as u32).inverse(),
                poch_finite(ZqMonomial::new(-1, 0, -2 * n + 1), n as u32).inverse(),
            ],
        });
        n += 1;
    }
    let mut n = 0i32;
    while n * k + l <= zmax {
        terms.push(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::new(n * k + l, 0, n * n * k + n * l),
            factors: vec![
                poch_inf(ZqMonomial::new(1, 0, 2 * n + 1)).unwrap().inverse(),
                poch_finite(ZqMonomial::q(1), n as u32).inverse(),
                poch_finite(ZqMonomial::new(-1, 0, -2 * n), n as u32 + 1).inverse(),
            ],
        });
        n += 1;
    }
    let fs = FactoredSum { terms };
    expand(&fs, Orientation::PP, zmax, qwindow).expect("bosonic sum expands")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Backend {
    Enumerate,
    Fermionic,
    Bosonic,
}

pub fn sl2_character(p: Sl2Params, backend: Sl2Backend, zmax: i32, qwindow: (i32, i32)) -> Series2 {
    match backend {
        Sl2Backend::Enumerate => enumerate_sl2(p, qwindow.1.max(0) as u32),
        Sl2Backend::Fermionic => fermionic_sl2(p, zmax, qwindow),
        Sl2Backend::Bosonic => bosonic_sl2(p, zmax, qwindow),
    }
}

/// Checks `chi^k_l(z) = chi^k_{l-1}(z) + z^l chi^k_{k-l}(q z)` on the
/// window with the chosen backend. Requires `l >= 1`.
pub fn verify_rec_sl2(p: Sl2Params, backend: Sl2Backend, zmax: i32, qwindow: (i32, i32)) -> bool {
    assert!(p.l >= 1, "recursion needs l >= 1");
    let lhs = sl2_character(p, backend, zmax, qwindow);
    let low = sl2_character(Sl2Params { k: p.k, l: p.l - 1 }, backend, zmax, qwindow);
    let flip = sl2_character(Sl2Params { k: p.k, l: p.k - p.l }, backend, zmax, qwindow);
    let shifted = flip.shift_q_linear(1, 0).scale_monomial(ZqMonomial::z1(p.l as i32), &Rat::one());
    let rhs = series_add(&low, &shifted).expect("same orientation");
    lhs.series_eq(&rhs).expect("same orientation")
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: (i32, i32) = (0, 12);

    #[test]
    fn fermionic_matches_enumeration_level_one() {
        let p = Sl2Params::new(1, 1).unwrap();
        let f = fermionic_sl2(p, 8, W);
        let e = enumerate_sl2(p, 12);
        assert!(f.series_eq(&e).unwrap(), "diff: {:?}", f.first_difference(&e));
    }

    #[test]
    fn bosonic_constant_term_is_one() {
        let s = bosonic_sl2(Sl2Params::new(2, 0).unwrap(), 6, W);
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
    }

    #[test]
    fn bosonic_matches_enumeration_small_levels() {
        for k in 1..=2u32 {
            for l in 0..=k {
                let p = Sl2Params::new(k, l).unwrap();
                let b = bosonic_sl2(p, 6, (0, 10));
                let e = enumerate_sl2(p, 10);
                assert!(
                    b.series_eq(&e).unwrap(),
                    "k={k} l={l} diff: {:?}",
                    b.first_difference(&e)
                );
            }
        }
    }

    #[test]
    fn coefficient_of_z_is_geometric_for_positive_l() {
        // single-particle contributions give 1 + q + q^2 + ... at z^1
        let s = fermionic_sl2(Sl2Params::new(2, 1).unwrap(), 4, W);
        for d in 0..=W.1 {
            assert_eq!(s.coeff(1, 0, d), Rat::one(), "q^{d}");
        }
    }

    #[test]
    fn recursion_holds_for_all_backends() {
        for (k, l) in [(1, 1), (2, 1), (2, 2)] {
            let p = Sl2Params::new(k, l).unwrap();
            for b in [Sl2Backend::Enumerate, Sl2Backend::Fermionic, Sl2Backend::Bosonic] {
                assert!(verify_rec_sl2(p, b, 6, (0, 10)), "k={k} l={l} {:?}", b);
            }
        }
    }
}
