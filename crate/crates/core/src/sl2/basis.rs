//! Monomial basis of the sl2 principal subspaces and the enumeration
//! oracle for their characters.

use crate::qcore::{Orientation, Series2};
use crate::rat::Rat;
use crate::QError;

/// Level and highest weight, with `0 <= l <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sl2Params {
    pub k: u32,
    pub l: u32,
}

impl Sl2Params {
    pub fn new(k: u32, l: u32) -> Result<Self, QError> {
        if l > k {
            return Err(QError::Param(format!("need 0 <= l <= k, got k={k} l={l}")));
        }
        Ok(Sl2Params { k, l })
    }
}

/// An admissible exponent sequence `(a_0, a_1, ...)`: non-negative entries,
/// `a_j + a_{j+1} <= k`, `a_0 <= l`, finitely many non-zero. Stored without
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSeq2(pub Vec<u32>);

impl AdmissibleSeq2 {
    /// Total weight `sum a_j`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree `sum j * a_j`.
    pub fn degree(&self) -> u32 {
        self.0.iter().enumerate().map(|(j, a)| j as u32 * a).sum()
    }

    pub fn is_admissible(&self, k: u32, l: u32) -> bool {
        self.0.first().map_or(true, |a0| *a0 <= l)
            && self.0.iter().all(|a| *a <= k)
            && self.0.windows(2).all(|w| w[0] + w[1] <= k)
    }
}

/// Streaming enumeration of all admissible sequences of degree at most
/// `dmax`, in a fixed depth-first order. An entry at position beyond `dmax`
/// would already cost more than `dmax`, so the search space is finite.
pub struct AdmissibleSeqIter {
    k: u32,
    l: u32,
    dmax: u32,
    stack: Vec<(Vec<u32>, u32)>,
}

impl AdmissibleSeqIter {
    pub fn new(k: u32, l: u32, dmax: u32) -> Self {
        AdmissibleSeqIter { k, l, dmax, stack: vec![(Vec::new(), 0)] }
    }
}

impl Iterator for AdmissibleSeqIter {
    type Item = AdmissibleSeq2;

    fn next(&mut self) -> Option<Self::Item> {
        let (seq, deg) = self.stack.pop()?;
        // Extend by placing the next positive entry at position j >= len;
        // sequences are canonical (no trailing zeros), so each is produced
        // exactly once.
        let len = seq.len();
        let mut children = Vec::new();
        for j in (len as u32)..=self.dmax {
            if j > 0 && deg + j > self.dmax {
                break;
            }
            let left = if j as usize == len && j > 0 { seq[len - 1] } else { 0 };
            let mut cap = self.k.saturating_sub(left);
            if j == 0 {
                cap = cap.min(self.l);
            }
            for c in 1..=cap {
                if j > 0 && deg + j * c > self.dmax {
                    break;
                }
                let mut s = seq.clone();
                s.resize(j as usize, 0);
                s.push(c);
                children.push((s, deg + j * c));
            }
        }
        children.reverse();
        self.stack.extend(children);
        Some(AdmissibleSeq2(seq))
    }
}

/// Exact character of the principal subspace restricted to degree at most
/// `dmax`, computed by exhaustive enumeration. The z-truncation covers the
/// largest weight reachable within the degree bound, so no coefficient in
/// that range is lost.
pub fn enumerate_sl2(p: Sl2Params, dmax: u32) -> Series2 {
    let zmax = (p.l + p.k * (dmax + 2)) as i32;
    let mut out = Series2::zero(Orientation::PP, zmax, (0, dmax as i32));
    for seq in AdmissibleSeqIter::new(p.k, p.l, dmax) {
        out.add_coeff(seq.weight() as i32, 0, seq.degree() as i32, Rat::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_vacuum_low_degrees() {
        // k=1, l=0: 1 + zq + zq^2 + zq^3 + (z + z^2) q^4
        let s = enumerate_sl2(Sl2Params::new(1, 0).unwrap(), 4);
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
        for d in 1..=3 {
            assert_eq!(s.coeff(1, 0, d), Rat::one(), "z q^{d}");
            assert!(s.coeff(2, 0, d).is_zero());
        }
        assert_eq!(s.coeff(1, 0, 4), Rat::one());
        assert_eq!(s.coeff(2, 0, 4), Rat::one());
    }

    #[test]
    fn level_zero_is_trivial() {
        let s = enumerate_sl2(Sl2Params::new(0, 0).unwrap(), 6);
        assert_eq!(s.coeff(0, 0, 0), Rat::one());
        for d in 0..=6 {
            for m in 0..=3 {
                if (m, d) != (0, 0) {
                    assert!(s.coeff(m, 0, d).is_zero());
                }
            }
        }
    }

    #[test]
    fn distinct_part_counts_at_z_equal_one() {
        // k=1: sequences are sets of parts pairwise differing by >= 2.
        // l=0 excludes a part 0 (first Rogers-Ramanujan counting), l=1
        // admits it; both count lists recomputed by hand.
        let s = enumerate_sl2(Sl2Params::new(1, 0).unwrap(), 9);
        let want = [1i64, 1, 1, 1, 2, 2, 3, 3, 4, 5];
        for (d, w) in want.iter().enumerate() {
            let mut total = Rat::zero();
            for m in 0..=9 {
                total += &s.coeff(m, 0, d as i32);
            }
            assert_eq!(total, Rat::from_int(*w), "l=0 degree {d}");
        }
        let s = enumerate_sl2(Sl2Params::new(1, 1).unwrap(), 9);
        let want = [2i64, 1, 2, 2, 3, 3, 5, 5, 7, 8];
        for (d, w) in want.iter().enumerate() {
            let mut total = Rat::zero();
            for m in 0..=9 {
                total += &s.coeff(m, 0, d as i32);
            }
            assert_eq!(total, Rat::from_int(*w), "l=1 degree {d}");
        }
    }

    #[test]
    fn iterator_yields_admissible_sequences_once() {
        let all: Vec<_> = AdmissibleSeqIter::new(2, 1, 5).collect();
        for s in &all {
            assert!(s.is_admissible(2, 1), "{:?}", s);
            assert!(s.degree() <= 5);
        }
        let mut dedup: Vec<_> = all.iter().map(|s| s.0.clone()).collect();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }
}
