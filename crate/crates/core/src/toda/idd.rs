//! The coefficient functions of the quantum Toda eigenfunction: closed
//! form, three-term recursion, square recursion, fermionic expansion, and
//! the three-index decomposition.

use crate::qcore::{
    expand, factored_sum_rational_terms, factored_sums_equal_exact, fs_add, fs_mul, fs_scale,
    normalize_poch_ratios, poch_finite, poch_inf, rational_identity_is_zero, substitute,
    FactoredSum, FactoredTerm, Orientation, Series2, ZqMonomial,
};
use crate::rat::Rat;

fn q1() -> ZqMonomial {
    ZqMonomial::q(1)
}

fn qz1_inv() -> ZqMonomial {
    ZqMonomial::new(-1, 0, 1)
}

fn qz2_inv() -> ZqMonomial {
    ZqMonomial::new(0, -1, 1)
}

fn qz12_inv() -> ZqMonomial {
    ZqMonomial::new(-1, -1, 1)
}

/// `I_{d1,d2} = (q z1^{-1} z2^{-1})_{d1+d2} / [(q)_{d1} (q)_{d2}
/// (q z1^{-1})_{d1} (q z2^{-1})_{d2} (q z1^{-1} z2^{-1})_{d1}
/// (q z1^{-1} z2^{-1})_{d2}]`, and zero for negative indices.
pub fn i_dd(d1: i32, d2: i32) -> FactoredSum {
    if d1 < 0 || d2 < 0 {
        return FactoredSum::zero();
    }
    let (a, b) = (d1 as u32, d2 as u32);
    FactoredSum::from_term(FactoredTerm {
        coeff: Rat::one(),
        monomial: ZqMonomial::ONE,
        factors: vec![
            poch_finite(qz12_inv(), a + b),
            poch_finite(q1(), a).inverse(),
            poch_finite(q1(), b).inverse(),
            poch_finite(qz1_inv(), a).inverse(),
            poch_finite(qz2_inv(), b).inverse(),
            poch_finite(qz12_inv(), a).inverse(),
            poch_finite(qz12_inv(), b).inverse(),
        ],
    })
}

/// `Jbar = I / ((z1)_inf (z2)_inf (z1 z2)_inf)`.
pub fn j_bar(d1: i32, d2: i32) -> FactoredSum {
    if d1 < 0 || d2 < 0 {
        return FactoredSum::zero();
    }
    let denom = FactoredSum::from_term(FactoredTerm {
        coeff: Rat::one(),
        monomial: ZqMonomial::ONE,
        factors: vec![
            poch_inf(ZqMonomial::new(1, 0, 0)).unwrap().inverse(),
            poch_inf(ZqMonomial::new(0, 1, 0)).unwrap().inverse(),
            poch_inf(ZqMonomial::new(1, 1, 0)).unwrap().inverse(),
        ],
    });
    fs_mul(&i_dd(d1, d2), &denom)
}

/// `J = Jbar (1-z1)(1-z2)(1-z1 z2) = I / ((q z1)_inf (q z2)_inf (q z1 z2)_inf)`.
pub fn j_fn(d1: i32, d2: i32) -> FactoredSum {
    if d1 < 0 || d2 < 0 {
        return FactoredSum::zero();
    }
    let denom = FactoredSum::from_term(FactoredTerm {
        coeff: Rat::one(),
        monomial: ZqMonomial::ONE,
        factors: vec![
            poch_inf(ZqMonomial::new(1, 0, 1)).unwrap().inverse(),
            poch_inf(ZqMonomial::new(0, 1, 1)).unwrap().inverse(),
            poch_inf(ZqMonomial::new(1, 1, 1)).unwrap().inverse(),
        ],
    });
    fs_mul(&i_dd(d1, d2), &denom)
}

/// Exact check of the three-term recursion
/// `(z1^{-1}(q^{d1}-1) + (q^{d2-d1}-1) + z2(q^{-d2}-1)) I_{d1,d2}
///  = q^{d2-d1} I_{d1-1,d2} + z2 q^{-d2} I_{d1,d2-1}`.
pub fn verify_toda(d1: i32, d2: i32) -> bool {
    assert!(d1 >= 0 && d2 >= 0 && d1 + d2 >= 1);
    let mono = |m: ZqMonomial, sign: i64| {
        FactoredSum::from_term(FactoredTerm {
            coeff: Rat::from_int(sign),
            monomial: m,
            factors: Vec::new(),
        })
    };
    let mut pref = FactoredSum::zero();
    pref = fs_add(&pref, &mono(ZqMonomial::new(-1, 0, d1), 1));
    pref = fs_add(&pref, &mono(ZqMonomial::new(-1, 0, 0), -1));
    pref = fs_add(&pref, &mono(ZqMonomial::new(0, 0, d2 - d1), 1));
    pref = fs_add(&pref, &mono(ZqMonomial::new(0, 0, 0), -1));
    pref = fs_add(&pref, &mono(ZqMonomial::new(0, 1, -d2), 1));
    pref = fs_add(&pref, &mono(ZqMonomial::new(0, 1, 0), -1));
    let lhs = fs_mul(&pref, &i_dd(d1, d2));
    let rhs = fs_add(
        &fs_scale(&i_dd(d1 - 1, d2), ZqMonomial::q(d2 - d1), &Rat::one()),
        &fs_scale(&i_dd(d1, d2 - 1), ZqMonomial::new(0, 1, -d2), &Rat::one()),
    );
    factored_sums_equal_exact(&lhs, &rhs).expect("finite factors")
}

/// Exact check of the square recursion
/// `I_{d1,d2} = sum_{n1<=d1, n2<=d2} z1^{-n1} z2^{-n2}
///  q^{n1^2+n2^2-n1 n2} / ((q)_{d1-n1}(q)_{d2-n2}) I_{n1,n2}`.
pub fn verify_irec(d1: i32, d2: i32) -> bool {
    assert!(d1 >= 0 && d2 >= 0);
    let mut rhs = FactoredSum::zero();
    for n1 in 0..=d1 {
        for n2 in 0..=d2 {
            let pref = FactoredSum::from_term(FactoredTerm {
                coeff: Rat::one(),
                monomial: ZqMonomial::new(-n1, -n2, n1 * n1 + n2 * n2 - n1 * n2),
                factors: vec![
                    poch_finite(q1(), (d1 - n1) as u32).inverse(),
                    poch_finite(q1(), (d2 - n2) as u32).inverse(),
                ],
            });
            rhs = fs_add(&rhs, &fs_mul(&pref, &i_dd(n1, n2)));
        }
    }
    factored_sums_equal_exact(&i_dd(d1, d2), &rhs).expect("finite factors")
}

/// One summand of the three-index decomposition, with the infinite
/// Pochhammer ratio cancelled to a finite product so the result is an
/// exact rational expression.
pub fn i_ddn(d1: i32, d2: i32, n: i32) -> FactoredSum {
    assert!(d1 >= 0 && d2 >= 0 && n >= 0 && n <= d1.min(d2));
    let nn = n as u32;
    let raw = FactoredSum::from_term(FactoredTerm {
        coeff: Rat::one(),
        monomial: ZqMonomial::ONE,
        factors: vec![
            poch_finite(q1(), (d1 - n) as u32).inverse(),
            poch_finite(q1(), (d2 - n) as u32).inverse(),
            poch_finite(q1(), nn).inverse(),
            poch_inf(ZqMonomial::new(0, 1, 1)).unwrap(),
            poch_finite(qz1_inv(), (d1 - n) as u32).inverse(),
            poch_finite(qz12_inv(), nn).inverse(),
            poch_inf(ZqMonomial::new(0, 1, d1 - 2 * n + 1)).unwrap().inverse(),
            poch_finite(ZqMonomial::new(0, -1, -d1 + 2 * n + 1), (d2 - n) as u32).inverse(),
            poch_finite(ZqMonomial::new(0, 1, 1), (d1 - n) as u32).inverse(),
            poch_finite(qz2_inv(), nn).inverse(),
        ],
    });
    normalize_poch_ratios(&raw)
}

/// Exact check of `I_{d1,d2} = sum_n I_{d1,d2,n}`.
pub fn verify_i_sum(d1: i32, d2: i32) -> bool {
    assert!(d1 >= 0 && d2 >= 0);
    let mut rhs = FactoredSum::zero();
    for n in 0..=d1.min(d2) {
        rhs = fs_add(&rhs, &i_ddn(d1, d2, n));
    }
    factored_sums_equal_exact(&i_dd(d1, d2), &rhs).expect("finite after normalization")
}

/// The fermionic expansion of `I_{d1,d2}` in inverse powers of `z1, z2`:
/// over pairs of weakly decreasing non-negative sequences bounded by `d1`
/// and `d2`,
/// `z1^{-sum n_i} z2^{-sum m_i} q^{sum (n_i^2 + m_i^2 - n_i m_i)}
///  / ((q)_{d1-n_1}(q)_{n_1-n_2}... (q)_{d2-m_1}(q)_{m_1-m_2}...)`.
pub fn i_fermionic(d1: i32, d2: i32, zmax: i32, qwindow: (i32, i32)) -> Series2 {
    assert!(d1 >= 0 && d2 >= 0);
    let mut seqs1 = Vec::new();
    decreasing_sequences(d1 as u32, zmax.max(0) as u32, &mut Vec::new(), &mut seqs1);
    let mut seqs2 = Vec::new();
    decreasing_sequences(d2 as u32, zmax.max(0) as u32, &mut Vec::new(), &mut seqs2);
    let mut terms = Vec::new();
    for s1 in &seqs1 {
        let w1: u32 = s1.iter().sum();
        for s2 in &seqs2 {
            let w2: u32 = s2.iter().sum();
            if (w1 + w2) as i32 > zmax {
                continue;
            }
            let len = s1.len().max(s2.len());
            let mut e: i64 = 0;
            for i in 0..len {
                let a = s1.get(i).copied().unwrap_or(0) as i64;
                let b = s2.get(i).copied().unwrap_or(0) as i64;
                e += a * a + b * b - a * b;
            }
            let mut factors = Vec::new();
            let mut push_gaps = |top: u32, s: &Vec<u32>| {
                let mut prev = top;
                for v in s {
                    if prev - v > 0 {
                        factors.push(poch_finite(q1(), prev - v).inverse());
                    }
                    prev = *v;
                }
                if prev > 0 {
                    factors.push(poch_finite(q1(), prev).inverse());
                }
            };
            push_gaps(d1 as u32, s1);
            push_gaps(d2 as u32, s2);
            terms.push(FactoredTerm {
                coeff: Rat::one(),
                monomial: ZqMonomial::new(-(w1 as i32), -(w2 as i32), e as i32),
                factors,
            });
        }
    }
    expand(&FactoredSum { terms }, Orientation::MM, zmax, qwindow).expect("fermionic sum expands")
}

/// Weakly decreasing sequences with entries in `[1, top]` and sum <= `cap`
/// (the all-zero tail is implicit).
fn decreasing_sequences(top: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    out.push(cur.clone());
    let high = cur.last().copied().unwrap_or(top).min(top);
    let used: u32 = cur.iter().sum();
    for v in 1..=high {
        if used + v > cap {
            break;
        }
        cur.push(v);
        decreasing_sequences(top, cap, cur, out);
        cur.pop();
    }
}

/// Windowed agreement of the fermionic expansion with the direct expansion
/// of the closed form in inverse powers.
pub fn verify_i_fermionic(d1: i32, d2: i32, zmax: i32, qwindow: (i32, i32)) -> bool {
    let lhs = i_fermionic(d1, d2, zmax, qwindow);
    let rhs = expand(&i_dd(d1, d2), Orientation::MM, zmax, qwindow).expect("closed form expands");
    lhs.series_eq(&rhs).expect("same orientation")
}

/// `I_{d1,d2}(z1,z2) = I_{d2,d1}(z2,z1)` exactly.
pub fn verify_i_symmetry(d1: i32, d2: i32) -> bool {
    let swapped = substitute(&i_dd(d2, d1), &ZqMonomial::new(0, 1, 0), &ZqMonomial::new(1, 0, 0))
        .expect("swap");
    swapped == i_dd(d1, d2)
}

/// Exact check that two factored sums with only finite factors agree; used
/// by the CLI counterexample path to report the first differing window
/// coefficient instead.
pub fn exact_equal(a: &FactoredSum, b: &FactoredSum) -> bool {
    let mut terms = factored_sum_rational_terms(a).expect("finite");
    for mut t in factored_sum_rational_terms(b).expect("finite") {
        t.numerator = t.numerator.scale(&-Rat::one());
        terms.push(t);
    }
    rational_identity_is_zero(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_00_is_one() {
        let s = expand(&i_dd(0, 0), Orientation::MM, 4, (0, 8)).unwrap();
        assert!(s.series_eq(&Series2::one(Orientation::MM, 4, (0, 8))).unwrap());
    }

    #[test]
    fn i_10_cancels_to_two_factors() {
        let reduced = FactoredSum::from_term(FactoredTerm {
            coeff: Rat::one(),
            monomial: ZqMonomial::ONE,
            factors: vec![
                poch_finite(q1(), 1).inverse(),
                poch_finite(qz1_inv(), 1).inverse(),
            ],
        });
        assert!(factored_sums_equal_exact(&i_dd(1, 0), &reduced).unwrap());
    }

    #[test]
    fn i_symmetric_under_variable_swap() {
        for (a, b) in [(0, 1), (1, 2), (3, 1)] {
            assert!(verify_i_symmetry(a, b));
        }
    }

    #[test]
    fn toda_recursion_small() {
        assert!(verify_toda(1, 0));
        assert!(verify_toda(0, 1));
        assert!(verify_toda(2, 2));
    }

    #[test]
    fn square_recursion_small() {
        assert!(verify_irec(0, 0));
        assert!(verify_irec(1, 0));
        assert!(verify_irec(2, 1));
    }

    #[test]
    fn decomposition_sums_back() {
        assert!(verify_i_sum(0, 0));
        assert!(verify_i_sum(1, 1));
        assert!(verify_i_sum(2, 1));
    }

    #[test]
    fn i_ddn_normalization_is_finite() {
        // d1 - 2n >= 0 and < 0 branches both produce finite factored forms
        for (d1, d2, n) in [(3, 2, 1), (2, 2, 2), (1, 3, 1)] {
            let f = i_ddn(d1, d2, n);
            assert!(factored_sum_rational_terms(&f).is_ok(), "({d1},{d2},{n})");
        }
        let one = expand(&i_ddn(0, 0, 0), Orientation::MM, 2, (0, 4)).unwrap();
        assert!(one.series_eq(&Series2::one(Orientation::MM, 2, (0, 4))).unwrap());
    }

    #[test]
    fn fermionic_expansion_matches_closed_form() {
        assert!(verify_i_fermionic(0, 0, 4, (0, 8)));
        assert!(verify_i_fermionic(1, 0, 5, (0, 10)));
        assert!(verify_i_fermionic(1, 1, 5, (0, 10)));
        assert!(verify_i_fermionic(2, 1, 4, (0, 10)));
    }
}
