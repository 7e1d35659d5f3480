//! Monomial basis of the sl3 small principal subspaces and the
//! enumeration oracle for their bivariate characters.

use crate::qcore::{Orientation, Series2};
use crate::rat::Rat;
use crate::QError;

/// Exact character of the small principal subspace with highest-weight
/// bounds `(l1, l2)` at level `k`, by enumeration of the monomial basis:
/// sequences `(a_0, a_1, ...)` with `a_0 <= l1`, `a_0 + a_1 <= l1 + l2`,
/// and every three consecutive entries summing to at most `k`. An entry at
/// position `2t` carries degree `(z1, q^t)` and one at `2t+1` carries
/// `(z1 z2, q^t)`.
///
/// The result is exact for total z-degree up to `zmax` and q-degree in
/// `[0, qbound]`.
pub fn enumerate_x(k: i32, l1: i32, l2: i32, zmax: i32, qbound: i32) -> Result<Series2, QError> {
    if k < 0 || l1 < 0 || l2 < 0 || l1 + l2 > k {
        return Err(QError::Param(format!(
            "need 0 <= l1, l2 and l1 + l2 <= k, got k={k} l1={l1} l2={l2}"
        )));
    }
    let mut out = Series2::zero(Orientation::PP, zmax, (0, qbound));
    let maxpos = 2 * qbound.max(0) as usize + 2;
    // Sequences are kept in canonical form (no trailing zeros); each node
    // extends by placing the next positive entry, so every basis element is
    // visited exactly once.
    #[allow(clippy::too_many_arguments)]
    fn place(
        k: i32,
        l1: i32,
        l2: i32,
        zmax: i32,
        qbound: i32,
        maxpos: usize,
        seq: &mut Vec<i32>,
        wz1: i32,
        wz2: i32,
        deg: i32,
        out: &mut Series2,
    ) {
        out.add_coeff(wz1, wz2, deg, Rat::one());
        let len = seq.len();
        for p in len..maxpos {
            let t = (p / 2) as i32;
            // entries two and one positions to the left of p
            let prev1 = if p == len && len >= 1 { seq[len - 1] } else { 0 };
            let prev2 = if p == len && len >= 2 {
                seq[len - 2]
            } else if p == len + 1 && len >= 1 {
                seq[len - 1]
            } else {
                0
            };
            let mut cap = k - prev1 - prev2;
            if p == 0 {
                cap = cap.min(l1);
            } else if p == 1 {
                let a0 = if len >= 1 { seq[0] } else { 0 };
                cap = cap.min(l1 + l2 - a0);
            }
            for c in 1..=cap.max(0) {
                let nz1 = wz1 + c;
                let nz2 = wz2 + if p % 2 == 1 { c } else { 0 };
                let nd = deg + t * c;
                if nz1 + nz2 > zmax || nd > qbound {
                    break;
                }
                seq.resize(p, 0);
                seq.push(c);
                place(k, l1, l2, zmax, qbound, maxpos, seq, nz1, nz2, nd, out);
                seq.truncate(len);
            }
        }
    }
    place(k, l1, l2, zmax, qbound, maxpos, &mut Vec::new(), 0, 0, 0, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_zero_is_one() {
        let s = enumerate_x(0, 0, 0, 4, 6).unwrap();
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
        for e in 0..=6 {
            assert!(s.coeff(1, 0, e).is_zero());
            assert!(s.coeff(1, 1, e).is_zero());
        }
    }

    #[test]
    fn normalization_constant_term_is_one() {
        for (k, l1, l2) in [(1, 0, 0), (1, 1, 0), (2, 1, 1), (3, 1, 2)] {
            let s = enumerate_x(k, l1, l2, 3, 4).unwrap();
            assert_eq!(s.coeff(0, 0, 0), Rat::one(), "k={k} l1={l1} l2={l2}");
        }
    }

    #[test]
    fn level_one_weight_one_low_degrees() {
        // k=1, l1=1, l2=0: a_0 <= 1, a_0 + a_1 <= 1, triples <= 1.
        let s = enumerate_x(1, 1, 0, 4, 4).unwrap();
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
        // a_0 = 1 gives z1; a_1 = 1 gives z1 z2; not both (a_0 + a_1 <= 1)
        assert_eq!(s.coeff(1, 0, 0), Rat::one());
        assert_eq!(s.coeff(1, 1, 0), Rat::one());
        assert!(s.coeff(2, 1, 0).is_zero());
        // a_2 = 1 gives z1 q; a_0 = a_2 = 1 blocked by the triple rule
        assert_eq!(s.coeff(1, 0, 1), Rat::one());
        assert!(s.coeff(2, 0, 1).is_zero());
        // a_0 = 1, a_3 = 1 is allowed: z1^2 z2 q
        assert_eq!(s.coeff(2, 1, 1), Rat::one());
    }

    #[test]
    fn parameter_validation() {
        assert!(enumerate_x(1, 1, 1, 2, 2).is_err());
        assert!(enumerate_x(2, -1, 0, 2, 2).is_err());
    }
}
