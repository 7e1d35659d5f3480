//! The folding map from admissible sequences to quasi-particle occupation
//! vectors, its fiber sums, and the extremal sequences.

use super::basis::{AdmissibleSeq2, AdmissibleSeqIter, Sl2Params};
use super::formulas::for_each_weighted_tuple;
use crate::qcore::{expand, poch_finite, FactoredSum, FactoredTerm, Orientation, Series2, ZqMonomial};
use crate::rat::Rat;
use crate::QError;
use std::collections::BTreeMap;

/// Folds an admissible sequence in the top set (`l = k`) to a vector
/// `(m_1,..,m_k)`: while some window satisfies `a_i + a_{i+1} = k`, delete
/// the window at the smallest such `i` and increment the last coordinate;
/// once all windows are strictly below `k` the sequence lives one level
/// down and the recursion appends a zero coordinate.
pub fn phi_map(a: &AdmissibleSeq2, k: u32) -> Result<Vec<u32>, QError> {
    if !a.is_admissible(k, k) {
        return Err(QError::Param(format!("sequence {:?} not admissible at level {k}", a.0)));
    }
    fn rec(seq: &mut Vec<u32>, k: u32) -> Vec<u32> {
        if k == 0 {
            return Vec::new();
        }
        // windows include the one past the end (a_last + 0)
        let win = (0..seq.len()).find(|&i| {
            let right = seq.get(i + 1).copied().unwrap_or(0);
            seq[i] + right == k
        });
        match win {
            Some(i) => {
                seq.remove(i);
                if i < seq.len() {
                    seq.remove(i);
                }
                while seq.last() == Some(&0) {
                    seq.pop();
                }
                let mut out = rec(seq, k);
                out[k as usize - 1] += 1;
                out
            }
            None => {
                let mut out = rec(seq, k - 1);
                out.push(0);
                out
            }
        }
    }
    let mut seq = a.0.clone();
    while seq.last() == Some(&0) {
        seq.pop();
    }
    Ok(rec(&mut seq, k))
}

/// The alternating extremal sequence with `2n` blocks
/// (`l, k-l, l, k-l, ...`), and with a trailing `l` for the odd one.
pub fn extremal_sequence(p: Sl2Params, n: u32, odd: bool) -> AdmissibleSeq2 {
    let mut v = Vec::new();
    for _ in 0..n {
        v.push(p.l);
        v.push(p.k - p.l);
    }
    if odd {
        v.push(p.l);
    }
    while v.last() == Some(&0) {
        v.pop();
    }
    AdmissibleSeq2(v)
}

/// The single quasi-particle term of the fermionic sum attached to an
/// occupation vector, expanded on `q <= dmax` with z-truncation `zmax`.
pub fn fermionic_summand(p: Sl2Params, mvec: &[u32], dmax: u32, zmax: i32) -> Series2 {
    assert_eq!(mvec.len(), p.k as usize);
    let zdeg: u32 = mvec.iter().enumerate().map(|(i, v)| (i as u32 + 1) * v).sum();
    let mut e: i64 = 0;
    for i in 0..p.k as usize {
        for j in 0..p.k as usize {
            e += (i.min(j) as i64 + 1) * mvec[i] as i64 * mvec[j] as i64;
        }
        e -= ((i as u32 + 1).min(p.l)) as i64 * mvec[i] as i64;
    }
    let mut factors = Vec::new();
    for v in mvec {
        if *v > 0 {
            factors.push(poch_finite(ZqMonomial::q(1), *v).inverse());
        }
    }
    let fs = FactoredSum::from_term(FactoredTerm {
        coeff: Rat::one(),
        monomial: ZqMonomial::new(zdeg as i32, 0, e as i32),
        factors,
    });
    expand(&fs, Orientation::PP, zmax.max(zdeg as i32), (0, dmax as i32)).expect("summand expands")
}

/// Groups the admissible sequences of `P^k_l` with degree at most `dmax`
/// by their fold image and returns the monomial sum of each fiber.
pub fn fiber_sums(p: Sl2Params, dmax: u32) -> BTreeMap<Vec<u32>, Series2> {
    let mut out: BTreeMap<Vec<u32>, Series2> = BTreeMap::new();
    let zmax = (p.l + p.k * (dmax + 2)) as i32;
    for seq in AdmissibleSeqIter::new(p.k, p.l, dmax) {
        let img = phi_map(&seq, p.k).expect("admissible");
        out.entry(img)
            .or_insert_with(|| Series2::zero(Orientation::PP, zmax, (0, dmax as i32)))
            .add_coeff(seq.weight() as i32, 0, seq.degree() as i32, Rat::one());
    }
    out
}

/// Checks that the fiber of the fold map over `mvec`, restricted to degree
/// at most `dmax`, sums to the matching quasi-particle term.
pub fn verify_fiber_sums(p: Sl2Params, mvec: &[u32], dmax: u32) -> bool {
    let fibers = fiber_sums(p, dmax);
    let zmax = (p.l + p.k * (dmax + 2)) as i32;
    let empty = Series2::zero(Orientation::PP, zmax, (0, dmax as i32));
    let got = fibers.get(mvec).unwrap_or(&empty);
    let want = fermionic_summand(p, mvec, dmax, zmax);
    got.series_eq(&want).expect("same orientation")
}

/// Checks all fibers with `sum i * mvec_i <= wmax` at once.
pub fn verify_all_fiber_sums(p: Sl2Params, wmax: u32, dmax: u32) -> bool {
    let mut ok = true;
    for_each_weighted_tuple(p.k as usize, wmax, &mut |mvec| {
        if !verify_fiber_sums(p, mvec, dmax) {
            ok = false;
        }
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_map_examples() {
        // level 1, zero sequence
        assert_eq!(phi_map(&AdmissibleSeq2(vec![]), 1).unwrap(), vec![0]);
        // (1,1) at level 2 folds to (0,1)
        assert_eq!(phi_map(&AdmissibleSeq2(vec![1, 1]), 2).unwrap(), vec![0, 1]);
        // inadmissible input errors
        assert!(phi_map(&AdmissibleSeq2(vec![3]), 2).is_err());
    }

    #[test]
    fn extremal_points_fold_and_weigh_as_expected() {
        for k in 1..=3u32 {
            for l in 0..=k {
                let p = Sl2Params::new(k, l).unwrap();
                for n in 0..=3u32 {
                    // even: monomial z^{nk} q^{n^2 k - n l}
                    let w = extremal_sequence(p, n, false);
                    assert_eq!(w.weight(), n * k);
                    assert_eq!(w.degree() as i64, (n * n * k) as i64 - (n * l) as i64);
                    let mut want = vec![0u32; k as usize];
                    if n > 0 {
                        want[k as usize - 1] += n;
                    }
                    assert_eq!(phi_map(&w, k).unwrap(), want, "even k={k} l={l} n={n}");
                    // odd: z^{nk+l} q^{n^2 k + n l}, fold adds one at slot l
                    let w = extremal_sequence(p, n, true);
                    assert_eq!(w.weight(), n * k + l);
                    assert_eq!(w.degree(), n * n * k + n * l);
                    if l >= 1 {
                        let mut want = vec![0u32; k as usize];
                        want[l as usize - 1] += 1;
                        want[k as usize - 1] += n;
                        assert_eq!(phi_map(&w, k).unwrap(), want, "odd k={k} l={l} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn fiber_sums_reproduce_quasi_particle_terms() {
        // k=1: fiber over (0) is the empty sequence only; over (1) the sum
        // is z q^0 + z q + z q^2 + ... matching z/(q)_1 for l=1.
        let p = Sl2Params::new(1, 1).unwrap();
        assert!(verify_fiber_sums(p, &[0], 8));
        assert!(verify_fiber_sums(p, &[1], 8));
        // k=2, image (0,1) against its summand
        let p = Sl2Params::new(2, 2).unwrap();
        assert!(verify_fiber_sums(p, &[0, 1], 8));
    }

    #[test]
    fn all_small_fibers_match() {
        for k in 1..=3u32 {
            for l in 0..=k {
                let p = Sl2Params::new(k, l).unwrap();
                assert!(verify_all_fiber_sums(p, 4, 8), "k={k} l={l}");
            }
        }
    }
}
