//! The two-family quasi-particle sum: manifestly positive character
//! formula for the U-type modules at the stabilized third index.

use super::regions::ModuleParams;
use crate::qcore::{expand, poch_finite, FactoredSum, FactoredTerm, Orientation, Series2, ZqMonomial};
use crate::rat::Rat;
use crate::QError;

fn weighted_tuples(k: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(tuple: &mut Vec<u32>, k: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if tuple.len() == k {
            out.push(tuple.clone());
            return;
        }
        let i = tuple.len() as u32 + 1;
        let mut m = 0;
        while m * i <= left {
            tuple.push(m);
            rec(tuple, k, left - m * i, out);
            tuple.pop();
            m += 1;
        }
    }
    rec(&mut Vec::new(), k, cap, &mut out);
    out
}

/// The quasi-particle sum over `(m_1..m_{k1}, n_1..n_{k2})`:
/// `z1^{sum i m_i} z2^{sum i n_i}
///  q^{Q(m,n) - sum min(l1,i) m_i - sum min(l2,i) n_i} / prod (q)_*`
/// with
/// `Q = sum min(i,j) m_i m_j + sum min(i,j) n_i n_j - sum min(i,j) m_i n_j`,
/// truncated by total z-degree.
pub fn fermionic_f_fs(k1: i32, k2: i32, l1: i32, l2: i32, zmax: i32) -> Result<FactoredSum, QError> {
    if !(0..=k1).contains(&l1) || !(0..=k2).contains(&l2) || k1 < 0 || k2 < k1 {
        return Err(QError::Param(format!(
            "need 0 <= l1 <= k1 <= k2 and 0 <= l2 <= k2, got ({k1},{k2},{l1},{l2})"
        )));
    }
    let cap = zmax.max(0) as u32;
    let mut terms = Vec::new();
    for mv in weighted_tuples(k1 as usize, cap) {
        let w1: u32 = mv.iter().enumerate().map(|(i, v)| (i as u32 + 1) * v).sum();
        for nv in weighted_tuples(k2 as usize, cap - w1) {
            let w2: u32 = nv.iter().enumerate().map(|(i, v)| (i as u32 + 1) * v).sum();
            let mut e: i64 = 0;
            for (i, a) in mv.iter().enumerate() {
                for (j, b) in mv.iter().enumerate() {
                    e += (i.min(j) as i64 + 1) * *a as i64 * *b as i64;
                }
                for (j, b) in nv.iter().enumerate() {
                    e -= (i.min(j) as i64 + 1) * *a as i64 * *b as i64;
                }
                e -= (i as i64 + 1).min(l1 as i64) * *a as i64;
            }
            for (i, a) in nv.iter().enumerate() {
                for (j, b) in nv.iter().enumerate() {
                    e += (i.min(j) as i64 + 1) * *a as i64 * *b as i64;
                }
                e -= (i as i64 + 1).min(l2 as i64) * *a as i64;
            }
            let mut factors = Vec::new();
            for v in mv.iter().chain(nv.iter()) {
                if *v > 0 {
                    factors.push(poch_finite(ZqMonomial::q(1), *v).inverse());
                }
            }
            terms.push(FactoredTerm {
                coeff: Rat::one(),
                monomial: ZqMonomial::new(w1 as i32, w2 as i32, e as i32),
                factors,
            });
        }
    }
    Ok(FactoredSum { terms })
}

pub fn fermionic_f(
    k1: i32,
    k2: i32,
    l1: i32,
    l2: i32,
    zmax: i32,
    qwindow: (i32, i32),
) -> Result<Series2, QError> {
    expand(&fermionic_f_fs(k1, k2, l1, l2, zmax)?, Orientation::PP, zmax, qwindow)
}

/// Windowed agreement of the quasi-particle sum with the bosonic series at
/// the stabilized third index `l3 = min(l1, l2)`; asserted for parameters
/// in the region where the bosonic series is a character.
pub fn verify_fermform(p: ModuleParams, zmax: i32, qwindow: (i32, i32)) -> Result<bool, QError> {
    if p.l3 != p.l1.min(p.l2) {
        return Err(QError::Param("needs l3 = min(l1, l2)".into()));
    }
    let f = fermionic_f(p.k1, p.k2, p.l1, p.l2, zmax, qwindow)?;
    let b = super::phib::phi_b(p, zmax, qwindow)?;
    f.series_eq(&b)
}

/// Every coefficient on the window is a non-negative integer.
pub fn series_is_nonneg_integral(s: &Series2) -> bool {
    s.cells().all(|(_, cell)| {
        cell.iter().all(|(_, c)| c.is_integer() && !c.is_negative())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term_is_one_and_coeffs_nonnegative() {
        let s = fermionic_f(1, 2, 1, 1, 4, (0, 8)).unwrap();
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
        assert!(series_is_nonneg_integral(&s));
    }

    #[test]
    fn matches_bosonic_on_its_region_level_one() {
        for (k1, k2) in [(1, 1), (1, 2)] {
            for l1 in 0..=k1 {
                for l2 in 0..=k2 {
                    let p = ModuleParams::new(k1, k2, l1, l2, l1.min(l2));
                    if p.in_rtilde_u() {
                        assert!(verify_fermform(p, 3, (0, 7)).unwrap(), "{:?}", p);
                    }
                }
            }
        }
    }
}
