//! The equal-level case: six-term closed forms for the two families, the
//! building-block series with their eighteen relations, and the vacuum
//! character with its level recursion.

use super::fermionic::fermionic_f_fs;
use super::phib::{phi_b, psi_b};
use super::regions::ModuleParams;
use crate::qcore::{
    expand, fs_add, fs_mul, fs_one_minus, fs_scale, poch_finite, substitute, FactoredSum,
    FactoredTerm, Orientation, Series2, ZqMonomial,
};
use crate::rat::Rat;
use crate::toda::{j_bar, j_fn};
use crate::QError;

/// `A^s_{d1,d2}(z1,z2) = Jbar_{d1,d2}(w1,w2) f^s(w1,w2)` with
/// `w1 = z1 q^{2 d1 - d2}`, `w2 = z2 q^{2 d2 - d1}`; zero for negative
/// indices.
pub fn a_s(s: usize, d1: i32, d2: i32) -> FactoredSum {
    if d1 < 0 || d2 < 0 {
        return FactoredSum::zero();
    }
    let w1 = ZqMonomial::new(1, 0, 2 * d1 - d2);
    let w2 = ZqMonomial::new(0, 1, 2 * d2 - d1);
    let base = substitute(&j_bar(d1, d2), &w1, &w2).expect("substitution stays well-formed");
    let (m, sign) = match s {
        0 => (ZqMonomial::ONE, 1),
        1 => (w1, -1),
        2 => (w1.scaled(2) + w2, 1),
        3 => (w1.scaled(2) + w2.scaled(2), -1),
        4 => (w1 + w2.scaled(2), 1),
        5 => (w2, -1),
        _ => unreachable!(),
    };
    fs_scale(&base, m, &Rat::from_int(sign))
}

/// `B^s_{d1,d2}(z1,z2)`, normalized to plain arguments: the displayed
/// definitions fix `B^s` at shifted arguments `(z1, q z2)` and shifted
/// indices, so the substitution `z2 -> q^{-1} z2` and an index shift are
/// folded in here. The zero convention applies to the underlying index of
/// the closed form (labels like `B^2_{-1,0}` still carry a value, which is
/// what makes the block relations identities for all `d1, d2 >= 0`; the
/// boundary vanishing like `B^5_{e1,-1} = 0` comes out of the `1 - q^{e2+1}`
/// prefactor instead).
pub fn b_s(s: usize, d1: i32, d2: i32) -> FactoredSum {
    // underlying index pair of the defining display
    let (u1, u2) = match s {
        0 | 1 => (d1, d2),
        2 | 3 => (d1 + 1, d2 + 1),
        4 | 5 => (d1, d2 + 1),
        _ => unreachable!(),
    };
    if u1 < 0 || u2 < 0 {
        return FactoredSum::zero();
    }
    // w's of the display, with z2 replaced by q^{-1} z2
    let w1 = ZqMonomial::new(1, 0, 2 * d1 - d2 + (u1 - d1) * 2 - (u2 - d2));
    let w2 = ZqMonomial::new(0, 1, 2 * d2 - d1 - 1 + (u2 - d2) * 2 - (u1 - d1));
    let jb = substitute(&j_bar(u1, u2), &w1, &w2).expect("substitution stays well-formed");
    match s {
        0 => fs_mul(
            &fs_one_minus(ZqMonomial::new(0, -1, d1 - d2 + 1)),
            &fs_scale(&jb, w2, &-Rat::one()),
        ),
        1 => fs_mul(
            &fs_one_minus(ZqMonomial::new(-1, -1, 1 - d1)),
            &fs_scale(&jb, w1.scaled(2) + w2, &Rat::one()),
        ),
        2 => fs_mul(
            &fs_one_minus(ZqMonomial::q(d2 + 1)),
            &fs_scale(&jb, w1, &-Rat::one()),
        ),
        3 => fs_mul(
            &fs_one_minus(ZqMonomial::new(0, -1, d1 - d2 + 1)),
            &fs_scale(&jb, w1 + w2.scaled(2), &Rat::one()),
        ),
        4 => fs_mul(
            &fs_one_minus(ZqMonomial::new(-1, -1, 1 - d1)),
            &fs_scale(&jb, w1.scaled(2) + w2.scaled(2), &-Rat::one()),
        ),
        5 => fs_mul(&fs_one_minus(ZqMonomial::q(d2 + 1)), &jb),
        _ => unreachable!(),
    }
}

/// One six-term summand multiplier: the q-powers and extra z-monomials in
/// front of each `A^s`/`B^s` inside the closed forms.
fn six_term_prefactor(s: usize, l1: i32, l2: i32, d1: i32, d2: i32) -> ZqMonomial {
    match s {
        0 => ZqMonomial::new(0, 0, -l1 * d1 - l2 * d2),
        1 => ZqMonomial::new(l1, 0, l1 * (d1 - d2) - l2 * d2),
        2 => ZqMonomial::new(l1 + l2, l2, l1 * (d1 - d2) + l2 * d1),
        3 => ZqMonomial::new(l1 + l2, l1 + l2, l1 * d2 + l2 * d1),
        4 => ZqMonomial::new(l1, l1 + l2, l2 * (d2 - d1) + l1 * d2),
        5 => ZqMonomial::new(0, l2, -l1 * d1 - l2 * (d1 - d2)),
        _ => unreachable!(),
    }
}

/// The six-term double sum. The index range starts at `-1`: the `A` blocks
/// vanish there outright, while the re-indexed `B` blocks still carry
/// values through their shifted underlying index, and those terms are part
/// of the identity (dropping them breaks the U-family closed form at its
/// lowest q-exponents).
fn six_term_sum(
    k: i32,
    l1: i32,
    l2: i32,
    zmax: i32,
    use_b: bool,
) -> FactoredSum {
    assert!(k >= 1);
    let mut out = FactoredSum::zero();
    for d1 in -1..=(zmax / k) {
        for d2 in -1..=(zmax / k) {
            let lead = ZqMonomial::new(k * d1, k * d2, k * (d1 * d1 + d2 * d2 - d1 * d2));
            for s in 0..6 {
                let blk = if use_b { b_s(s, d1, d2) } else { a_s(s, d1, d2) };
                let pref = lead + six_term_prefactor(s, l1, l2, d1, d2);
                out = fs_add(&out, &fs_scale(&blk, pref, &Rat::one()));
            }
        }
    }
    out
}

/// The six-term closed form for the V family at `l3 = l1 + l2`, equal
/// level. Requires `(l1, l2, l1+l2)` in the V region: `l1 + l2 <= k`.
pub fn theorem_gl_psi(k: i32, l1: i32, l2: i32, zmax: i32, qwindow: (i32, i32)) -> Result<Series2, QError> {
    if !ModuleParams::new(k, k, l1, l2, l1 + l2).in_r_v() {
        return Err(QError::Param(format!("(k,l1,l2)=({k},{l1},{l2}) outside the V region")));
    }
    expand(&six_term_sum(k, l1, l2, zmax, false), Orientation::PP, zmax, qwindow)
}

/// The six-term closed form for the U family at `l3 = l1 + l2 - k`, equal
/// level. Requires `(l1, l2, l1+l2-k)` in the U region: `l1 + l2 >= k`.
pub fn theorem_gl_phi(k: i32, l1: i32, l2: i32, zmax: i32, qwindow: (i32, i32)) -> Result<Series2, QError> {
    if !ModuleParams::new(k, k, l1, l2, l1 + l2 - k).in_r_u() {
        return Err(QError::Param(format!("(k,l1,l2)=({k},{l1},{l2}) outside the U region")));
    }
    expand(&six_term_sum(k, l1, l2, zmax, true), Orientation::PP, zmax, qwindow)
}

pub fn verify_gl_psi(k: i32, l1: i32, l2: i32, zmax: i32, qwindow: (i32, i32)) -> Result<bool, QError> {
    let six = theorem_gl_psi(k, l1, l2, zmax, qwindow)?;
    let b = psi_b(ModuleParams::new(k, k, l1, l2, l1 + l2), zmax, qwindow)?;
    six.series_eq(&b)
}

pub fn verify_gl_phi(k: i32, l1: i32, l2: i32, zmax: i32, qwindow: (i32, i32)) -> Result<bool, QError> {
    let six = theorem_gl_phi(k, l1, l2, zmax, qwindow)?;
    let b = phi_b(ModuleParams::new(k, k, l1, l2, l1 + l2 - k), zmax, qwindow)?;
    six.series_eq(&b)
}

/// The eighteen relations between the block series, in three groups of
/// six. Group 1 and 2 eliminate one index of the `A`'s; group 3 expands
/// the `B`'s back in terms of the `A`'s.
pub fn verify_ab_relation(group: u32, idx: usize, d1: i32, d2: i32, zmax: i32, qwindow: (i32, i32)) -> Result<bool, QError> {
    let one_minus_q = |e: i32| fs_one_minus(ZqMonomial::q(e));
    let one_minus = |m1: i32, m2: i32, e: i32| fs_one_minus(ZqMonomial::new(m1, m2, e));
    let sub = |x: &FactoredSum, c1: i32, c2: i32| {
        substitute(x, &ZqMonomial::new(1, 0, c1), &ZqMonomial::new(0, 1, c2)).expect("shift")
    };
    let (lhs, rhs) = match (group, idx) {
        (1, 0) => (fs_mul(&one_minus_q(d2), &a_s(0, d1, d2)), sub(&b_s(5, d1, d2 - 1), 0, 1)),
        (1, 1) => (fs_mul(&one_minus_q(d2), &a_s(1, d1, d2)), sub(&b_s(2, d1 - 1, d2 - 1), 0, 1)),
        (1, 2) => (
            fs_mul(&one_minus(-1, -1, -d1), &a_s(2, d1, d2)),
            sub(&b_s(1, d1, d2), 0, 1),
        ),
        (1, 3) => (
            fs_mul(&one_minus(-1, -1, -d1), &a_s(3, d1, d2)),
            sub(&b_s(4, d1, d2 - 1), 0, 1),
        ),
        (1, 4) => (
            fs_mul(&one_minus(0, -1, d1 - d2), &a_s(4, d1, d2)),
            sub(&b_s(3, d1 - 1, d2 - 1), 0, 1),
        ),
        (1, 5) => (
            fs_mul(&one_minus(0, -1, d1 - d2), &a_s(5, d1, d2)),
            sub(&b_s(0, d1, d2), 0, 1),
        ),
        (2, 0) => (fs_mul(&one_minus_q(d1), &a_s(0, d1, d2)), sub(&b_s(1, d1 - 1, d2), 1, 0)),
        (2, 1) => (
            fs_mul(&one_minus(-1, 0, d2 - d1), &a_s(1, d1, d2)),
            sub(&b_s(0, d1, d2), 1, 0),
        ),
        (2, 2) => (
            fs_mul(&one_minus(-1, 0, d2 - d1), &a_s(2, d1, d2)),
            sub(&b_s(3, d1 - 1, d2 - 1), 1, 0),
        ),
        (2, 3) => (
            fs_mul(&one_minus(-1, -1, -d2), &a_s(3, d1, d2)),
            sub(&b_s(2, d1 - 1, d2), 1, 0),
        ),
        (2, 4) => (
            fs_mul(&one_minus(-1, -1, -d2), &a_s(4, d1, d2)),
            sub(&b_s(5, d1, d2), 1, 0),
        ),
        (2, 5) => (fs_mul(&one_minus_q(d1), &a_s(5, d1, d2)), sub(&b_s(4, d1 - 1, d2 - 1), 1, 0)),
        (3, 0) => (
            fs_mul(&one_minus_q(d2), &b_s(0, d1, d2)),
            fs_add(
                &fs_scale(&a_s(3, d1 - 1, d2 - 1), ZqMonomial::new(-1, -1, -d1 + 1), &Rat::one()),
                &sub(&a_s(5, d1, d2 - 1), -1, 1),
            ),
        ),
        (3, 1) => (
            fs_mul(&one_minus_q(d2), &b_s(1, d1, d2)),
            fs_add(
                &fs_scale(&a_s(4, d1, d2 - 1), ZqMonomial::new(0, -1, d1 - d2 + 1), &Rat::one()),
                &sub(&a_s(2, d1, d2 - 1), -1, 1),
            ),
        ),
        (3, 2) => (
            fs_mul(&one_minus(-1, -1, -d1), &b_s(2, d1, d2)),
            fs_add(
                &fs_scale(&a_s(5, d1 + 1, d2), ZqMonomial::new(0, -1, d1 - d2 + 1), &Rat::one()),
                &sub(&a_s(1, d1 + 1, d2), -1, 1),
            ),
        ),
        (3, 3) => (
            fs_mul(&one_minus(-1, -1, -d1), &b_s(3, d1, d2)),
            fs_add(
                &fs_scale(&a_s(0, d1 + 1, d2 + 1), ZqMonomial::q(d2 + 1), &Rat::one()),
                &sub(&a_s(4, d1 + 1, d2), -1, 1),
            ),
        ),
        (3, 4) => (
            fs_mul(&one_minus(0, -1, d1 - d2), &b_s(4, d1, d2)),
            fs_add(
                &fs_scale(&a_s(1, d1, d2 + 1), ZqMonomial::q(d2 + 1), &Rat::one()),
                &sub(&a_s(3, d1, d2), -1, 1),
            ),
        ),
        (3, 5) => (
            fs_mul(&one_minus(0, -1, d1 - d2), &b_s(5, d1, d2)),
            fs_add(
                &fs_scale(&a_s(2, d1 - 1, d2), ZqMonomial::new(-1, -1, -d1 + 1), &Rat::one()),
                &sub(&a_s(0, d1, d2), -1, 1),
            ),
        ),
        _ => return Err(QError::Param(format!("no relation ({group}, {idx})"))),
    };
    let l = expand(&lhs, Orientation::PP, zmax, qwindow)?;
    let r = expand(&rhs, Orientation::PP, zmax, qwindow)?;
    l.series_eq(&r)
}

/// Backends for the vacuum character at level `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VkBackend {
    /// the quasi-particle sum
    Fermionic,
    /// the factorized extremal sum built from `J`
    Bosonic,
    /// the six-term sum at `l1 = l2 = 0`
    SixTerm,
    /// the V-family bosonic series at `(0,0,0)`
    PsiB,
}

/// The vacuum character of level `k` by the chosen backend.
pub fn ch_vk(k: i32, backend: VkBackend, zmax: i32, qwindow: (i32, i32)) -> Result<Series2, QError> {
    if k < 1 {
        return Err(QError::Param(format!("need k >= 1, got {k}")));
    }
    match backend {
        VkBackend::Fermionic => {
            expand(&fermionic_f_fs(k, k, 0, 0, zmax)?, Orientation::PP, zmax, qwindow)
        }
        VkBackend::Bosonic => {
            let mut out = FactoredSum::zero();
            let mut d1 = 0;
            while k * d1 <= zmax {
                let mut d2 = 0;
                while k * d2 <= zmax {
                    let j = substitute(
                        &j_fn(d1, d2),
                        &ZqMonomial::new(1, 0, 2 * d1 - d2),
                        &ZqMonomial::new(0, 1, 2 * d2 - d1),
                    )?;
                    out = fs_add(
                        &out,
                        &fs_scale(
                            &j,
                            ZqMonomial::new(k * d1, k * d2, k * (d1 * d1 + d2 * d2 - d1 * d2)),
                            &Rat::one(),
                        ),
                    );
                    d2 += 1;
                }
                d1 += 1;
            }
            expand(&out, Orientation::PP, zmax, qwindow)
        }
        VkBackend::SixTerm => theorem_gl_psi(k, 0, 0, zmax, qwindow),
        VkBackend::PsiB => psi_b(ModuleParams::new(k, k, 0, 0, 0), zmax, qwindow),
    }
}

/// The level recursion of the vacuum character:
/// `ch V^k = sum_{n,m} z1^{kn} z2^{km} q^{k(n^2+m^2-nm)} / ((q)_n (q)_m)
///  ch V^{k-1}(q^{2n-m} z1, q^{2m-n} z2)`, checked on the window with the
/// quasi-particle backend on both sides.
pub fn verify_vrec(k: i32, zmax: i32, qwindow: (i32, i32)) -> Result<bool, QError> {
    assert!(k >= 2);
    let lhs = expand(&fermionic_f_fs(k, k, 0, 0, zmax)?, Orientation::PP, zmax, qwindow)?;
    let low = fermionic_f_fs(k - 1, k - 1, 0, 0, zmax)?;
    let mut rhs = FactoredSum::zero();
    let mut n = 0;
    while k * n <= zmax {
        let mut m = 0;
        while k * m <= zmax {
            let shifted = substitute(
                &low,
                &ZqMonomial::new(1, 0, 2 * n - m),
                &ZqMonomial::new(0, 1, 2 * m - n),
            )?;
            let pref = FactoredSum::from_term(FactoredTerm {
                coeff: Rat::one(),
                monomial: ZqMonomial::new(k * n, k * m, k * (n * n + m * m - n * m)),
                factors: vec![
                    poch_finite(ZqMonomial::q(1), n as u32).inverse(),
                    poch_finite(ZqMonomial::q(1), m as u32).inverse(),
                ],
            });
            rhs = fs_add(&rhs, &fs_mul(&pref, &shifted));
            m += 1;
        }
        n += 1;
    }
    let rhs = expand(&rhs, Orientation::PP, zmax, qwindow)?;
    lhs.series_eq(&rhs)
}

/// Convenience: the six-term sums as factored sums, for reuse by the CLI.
pub fn six_term_fs(k: i32, l1: i32, l2: i32, zmax: i32, use_b: bool) -> FactoredSum {
    six_term_sum(k, l1, l2, zmax, use_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: (i32, i32) = (0, 8);

    #[test]
    fn a0_at_origin_is_jbar() {
        // A^0_{0,0} = 1/((z1)_inf (z2)_inf (z1 z2)_inf): leading terms
        let s = expand(&a_s(0, 0, 0), Orientation::PP, 2, W).unwrap();
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
        assert_eq!(s.coeff(1, 0, 0), Rat::one());
        assert_eq!(s.coeff(1, 1, 0), Rat::from_int(2)); // z1 z2 from (z1z2) and z1*z2
    }

    #[test]
    fn negative_index_blocks_vanish() {
        assert!(a_s(3, -1, 0).is_zero());
        assert!(b_s(5, 0, -1).is_zero());
    }

    #[test]
    fn relations_small_grid() {
        for group in 1..=3 {
            for idx in 0..6 {
                for d1 in 0..=1 {
                    for d2 in 0..=1 {
                        assert!(
                            verify_ab_relation(group, idx, d1, d2, 3, (0, 6)).unwrap(),
                            "group {group} idx {idx} d=({d1},{d2})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn vacuum_character_backends_agree_level_one() {
        let f = ch_vk(1, VkBackend::Fermionic, 3, (0, 6)).unwrap();
        assert_eq!(f.coeff(0, 0, 0), Rat::one());
        for b in [VkBackend::Bosonic, VkBackend::SixTerm, VkBackend::PsiB] {
            let s = ch_vk(1, b, 3, (0, 6)).unwrap();
            assert!(f.series_eq(&s).unwrap(), "{:?} diff {:?}", b, f.first_difference(&s));
        }
    }

    #[test]
    fn six_term_matches_family_series_level_one() {
        assert!(verify_gl_psi(1, 1, 0, 3, (0, 6)).unwrap());
        assert!(verify_gl_psi(1, 0, 1, 3, (0, 6)).unwrap());
        assert!(verify_gl_phi(1, 1, 0, 3, (0, 6)).unwrap());
        assert!(verify_gl_phi(1, 1, 1, 3, (0, 6)).unwrap());
    }

    #[test]
    fn vacuum_level_recursion() {
        assert!(verify_vrec(2, 3, (0, 6)).unwrap());
    }
}
