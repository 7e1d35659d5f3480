//! The cone-contribution sum `g_{n,k}` behind the bosonic formula: closed
//! form, its defining recursion (checked exactly), the q-binomial identity
//! the recursion reduces to, and the direct enumeration.

use crate::qcore::{
    expand, factored_sums_equal_exact, fs_add, fs_mul, fs_scale, poch_finite, poch_inf,
    substitute, FactoredSum, FactoredTerm, Orientation, Series2, ZqMonomial,
};
use crate::rat::Rat;

/// Closed form `q^{n^2 k} z^{nk} / ((q)_n (q^{-2n+1} z^{-1})_n)`.
pub fn gnk_closed(n: u32, k: u32) -> FactoredSum {
    let n_i = n as i32;
    FactoredSum::from_term(FactoredTerm {
        coeff: Rat::one(),
        monomial: ZqMonomial::new(n_i * k as i32, 0, n_i * n_i * k as i32),
        factors: vec![
            poch_finite(ZqMonomial::q(1), n).inverse(),
            poch_finite(ZqMonomial::new(-1, 0, -2 * n_i + 1), n).inverse(),
        ],
    })
}

/// Exact check of
/// `g_{n,k}(z) = sum_{i=0}^n q^{i^2 k} z^{ik} / (q)_i * g_{n-i,k-1}(q^{2i} z)`
/// with all denominators cleared.
pub fn verify_gnk_recursion(n: u32, k: u32) -> bool {
    assert!(k >= 1);
    let lhs = gnk_closed(n, k);
    let mut rhs = FactoredSum::zero();
    for i in 0..=n {
        let i_i = i as i32;
        let sub = substitute(
            &gnk_closed(n - i, k - 1),
            &ZqMonomial::new(1, 0, 2 * i_i),
            &ZqMonomial::z2(1),
        )
        .expect("finite factors substitute");
        let pref = FactoredSum::from_term(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::new(i_i * k as i32, 0, i_i * i_i * k as i32),
            factors: vec![poch_finite(ZqMonomial::q(1), i).inverse()],
        });
        rhs = fs_add(&rhs, &fs_mul(&pref, &sub));
    }
    factored_sums_equal_exact(&lhs, &rhs).expect("all factors finite")
}

/// Exact check of the alternating q-binomial identity
/// `sum_{i=0}^n (-1)^i (q)_n / ((q)_i (q)_{n-i}) (q^n z)_i q^{i(i+1)/2 - i n} = q^{n^2} z^n`.
pub fn verify_qbinomial(n: u32) -> bool {
    let n_i = n as i64;
    let mut lhs = FactoredSum::zero();
    for i in 0..=n {
        let i_i = i as i64;
        let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
        let e = i_i * (i_i + 1) / 2 - i_i * n_i;
        lhs = fs_add(
            &lhs,
            &FactoredSum::from_term(FactoredTerm {
                coeff: sign,
                monomial: ZqMonomial::q(e as i32),
                factors: vec![
                    poch_finite(ZqMonomial::q(1), n),
                    poch_finite(ZqMonomial::new(1, 0, n as i32), i),
                    poch_finite(ZqMonomial::q(1), i).inverse(),
                    poch_finite(ZqMonomial::q(1), n - i).inverse(),
                ],
            }),
        );
    }
    let rhs = FactoredSum::from_term(FactoredTerm::monomial(ZqMonomial::new(
        n as i32,
        0,
        (n_i * n_i) as i32,
    )));
    factored_sums_equal_exact(&lhs, &rhs).expect("all factors finite")
}

/// Direct enumeration of the cone sum, normalized by `z^{-nk}` so that the
/// support fits the `z^{-1}` orthant: a sequence `(n_0, n_1, ...)` with
/// `sum n_j = n` contributes `z^{-sum j n_j} q^{E} / prod (q)_{n_j}` where
/// `E = sum n_i n_j min(k-i, k-j)`. Positions are bounded by `zmax` because
/// one unit at position `j` already costs `z^{-j}`.
pub fn gnk_direct(n: u32, k: u32, zmax: i32, qwindow: (i32, i32)) -> Series2 {
    let o = Orientation::new(-1, 1);
    let mut terms = Vec::new();
    let positions = zmax.max(0) as usize + 1;
    fn rec(
        counts: &mut Vec<u32>,
        left: u32,
        positions: usize,
        zmax: i32,
        k: u32,
        terms: &mut Vec<FactoredTerm>,
    ) {
        if counts.len() == positions {
            if left == 0 {
                let zdeg: i64 =
                    counts.iter().enumerate().map(|(j, v)| j as i64 * *v as i64).sum();
                let mut e: i64 = 0;
                for (i, vi) in counts.iter().enumerate() {
                    for (j, vj) in counts.iter().enumerate() {
                        e += (k as i64 - i.max(j) as i64) * *vi as i64 * *vj as i64;
                    }
                }
                let mut factors = Vec::new();
                for v in counts.iter() {
                    if *v > 0 {
                        factors.push(poch_finite(ZqMonomial::q(1), *v).inverse());
                    }
                }
                terms.push(FactoredTerm {
                    coeff: Rat::one(),
                    monomial: ZqMonomial::new(-(zdeg as i32), 0, e as i32),
                    factors,
                });
            }
            return;
        }
        let j = counts.len() as i64;
        let budget: i64 =
            counts.iter().enumerate().map(|(p, v)| p as i64 * *v as i64).sum();
        for c in 0..=left {
            if budget + j * c as i64 > zmax as i64 {
                break;
            }
            counts.push(c);
            rec(counts, left - c, positions, zmax, k, terms);
            counts.pop();
        }
    }
    rec(&mut Vec::new(), n, positions, zmax, k, &mut terms);
    let fs = FactoredSum { terms };
    expand(&fs, o, zmax, qwindow).expect("cone sum expands")
}

/// Windowed agreement of the direct cone sum with the (equally normalized)
/// closed form.
pub fn verify_gnk_direct(n: u32, k: u32, zmax: i32, qwindow: (i32, i32)) -> bool {
    let o = Orientation::new(-1, 1);
    let normalized = fs_scale(&gnk_closed(n, k), ZqMonomial::z1(-(n as i32 * k as i32)), &Rat::one());
    let closed = expand(&normalized, o, zmax, qwindow).expect("closed form expands");
    let direct = gnk_direct(n, k, zmax, qwindow);
    direct.series_eq(&closed).expect("same orientation")
}

/// Enumerates occupation vectors `(m_1,..,m_P)` with `sum j m_j <= zmax`
/// and applies `f` to each.
fn for_each_tail_vector(zmax: i32, f: &mut impl FnMut(&[u32])) {
    fn rec(counts: &mut Vec<u32>, left: i64, positions: usize, f: &mut impl FnMut(&[u32])) {
        if counts.len() == positions {
            f(counts);
            return;
        }
        let j = counts.len() as i64 + 1;
        let mut c = 0u32;
        while j * c as i64 <= left {
            counts.push(c);
            rec(counts, left - j * c as i64, positions, f);
            counts.pop();
            c += 1;
        }
    }
    rec(&mut Vec::new(), zmax.max(0) as i64, zmax.max(0) as usize, f);
}

/// The free-tail split of the quasi-particle sum: summing
/// `q^{Q(m) + (2(n+eps)-1) d(m)} z^{d(m)} / prod (q)_{m_i}` over all
/// occupation vectors equals `1/((q^{2(n+eps)} z)_inf)` on the window.
pub fn verify_splitting_sum_free(n: u32, eps: u32, zmax: i32, qwindow: (i32, i32)) -> bool {
    assert!(eps <= 1);
    let shift = 2 * (n + eps) as i64 - 1;
    let mut terms = Vec::new();
    for_each_tail_vector(zmax, &mut |m| {
        let d: i64 = m.iter().enumerate().map(|(i, v)| (i as i64 + 1) * *v as i64).sum();
        let mut e: i64 = shift * d;
        for (i, vi) in m.iter().enumerate() {
            for (j, vj) in m.iter().enumerate() {
                e += (i.min(j) as i64 + 1) * *vi as i64 * *vj as i64;
            }
        }
        let mut factors = Vec::new();
        for v in m {
            if *v > 0 {
                factors.push(poch_finite(ZqMonomial::q(1), *v).inverse());
            }
        }
        terms.push(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::new(d as i32, 0, e as i32),
            factors,
        });
    });
    let lhs = expand(&FactoredSum { terms }, Orientation::PP, zmax, qwindow).unwrap();
    let closed = FactoredSum::from_term(FactoredTerm {
        coeff: Rat::one(),
        monomial: ZqMonomial::ONE,
        factors: vec![poch_inf(ZqMonomial::new(1, 0, 2 * (n + eps) as i32))
            .unwrap()
            .inverse()],
    });
    let rhs = expand(&closed, Orientation::PP, zmax, qwindow).unwrap();
    lhs.series_eq(&rhs).expect("same orientation")
}

/// The middle split for the odd extremal point: the two single-unit rays
/// sum to `q^{2nl} z^l / ((q^{-2n} z^{-1})_1 (q^{2n+1} z)_1)` after clearing
/// the two binomials. The enumerated side only knows z-degrees in
/// `[0, zmax]`, so the cleared comparison is made on interior degrees
/// `[1, zmax-1]`. Requires `1 <= l < zmax`. For `eps = 0` the sum is the
/// single empty vector and equals 1.
pub fn verify_splitting_sum_middle(n: u32, l: u32, zmax: i32, qwindow: (i32, i32)) -> bool {
    use std::collections::BTreeMap;
    assert!(l >= 1 && (l as i32) < zmax);
    let n_i = n as i64;
    let l_i = l as i64;
    // raw two-ray sum, coefficients of z^a q^b, without the 1/(q)_1 factor
    let mut lhs: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
    // descending ray: z^{l-i} q^{(l-i) 2n}, i >= 0
    for i in 0..=l_i {
        let a = l_i - i;
        *lhs.entry((a, a * 2 * n_i)).or_insert_with(Rat::zero) += &Rat::one();
    }
    // ascending ray: z^{l+i} q^{(l+i)(2n+1) - l}, i >= 1
    let mut i = 1i64;
    while l_i + i <= zmax as i64 {
        let a = l_i + i;
        *lhs.entry((a, a * (2 * n_i + 1) - l_i)).or_insert_with(Rat::zero) += &Rat::one();
        i += 1;
    }
    // multiply by (1 - q^{-2n} z^{-1})(1 - q^{2n+1} z)
    let mut cleared: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
    for ((a, b), c) in &lhs {
        for (da, db, s) in [
            (0i64, 0i64, Rat::one()),
            (-1, -2 * n_i, -Rat::one()),
            (1, 2 * n_i + 1, -Rat::one()),
            (0, 1, Rat::one()),
        ] {
            let e = cleared.entry((a + da, b + db)).or_insert_with(Rat::zero);
            *e += &(c * &s);
        }
    }
    // expected: q^{2nl} z^l times (q)_1 = (1 - q); compare on interior degrees
    for ((a, b), c) in &cleared {
        if *a < 1 || *a > zmax as i64 - 1 || *b < qwindow.0 as i64 || *b > qwindow.1 as i64 {
            continue;
        }
        let want = if (*a, *b) == (l_i, 2 * n_i * l_i) {
            Rat::one()
        } else if (*a, *b) == (l_i, 2 * n_i * l_i + 1) {
            -Rat::one()
        } else {
            Rat::zero()
        };
        if *c != want {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qbinomial_small_cases() {
        // n = 0: empty sum equals 1; n = 1: 1 - (1 - qz) = qz.
        for n in 0..=6 {
            assert!(verify_qbinomial(n), "n={n}");
        }
    }

    #[test]
    fn closed_form_satisfies_recursion() {
        for n in 0..=4 {
            for k in 1..=4 {
                assert!(verify_gnk_recursion(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn direct_enumeration_matches_closed_form() {
        for n in 0..=3 {
            for k in 1..=3 {
                assert!(verify_gnk_direct(n, k, 6, (-30, 30)), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn g_zero_is_one() {
        let s = expand(&gnk_closed(0, 3), Orientation::new(-1, 1), 4, (0, 8)).unwrap();
        assert!(s.series_eq(&Series2::one(Orientation::new(-1, 1), 4, (0, 8))).unwrap());
    }

    #[test]
    fn free_tail_sum_matches_infinite_product() {
        for n in 0..=2 {
            for eps in 0..=1 {
                assert!(verify_splitting_sum_free(n, eps, 6, (0, 12)), "n={n} eps={eps}");
            }
        }
    }

    #[test]
    fn middle_sum_matches_closed_form() {
        // eps = 1 rays, including the worked case n=0, l=2
        assert!(verify_splitting_sum_middle(0, 2, 8, (0, 16)));
        for n in 0..=2 {
            for l in 1..=3 {
                assert!(verify_splitting_sum_middle(n, l, 8, (-20, 20)), "n={n} l={l}");
            }
        }
    }
}
