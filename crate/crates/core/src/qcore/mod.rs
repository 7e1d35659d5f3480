//! Exact arithmetic substrate: rationals, windowed q-Laurent coefficients,
//! factored Pochhammer expressions, substitution, and deterministic
//! expansion to truncated series.

pub mod expand;
pub mod laurent;
pub mod monomial;
pub mod poch;
pub mod series;

pub use expand::expand;
pub use laurent::{
    factored_sum_rational_terms, factored_sums_equal_exact, rational_identity_is_zero,
    to_laurent3, LaurentPoly3, RationalTerm,
};
pub use monomial::{Orientation, ZqMonomial};
pub use poch::{
    fs_add, fs_mul, fs_one_minus, fs_scale, fs_scale_rat, fs_sub, normalize_poch_ratios, poch,
    poch_finite, poch_inf, substitute, FactoredSum, FactoredTerm, PochFactor, PochLen,
};
pub use series::{series_add, series_mul, series_sub, QWindowSeries, Series2};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use proptest::prelude::*;

    fn small_monomial() -> impl Strategy<Value = ZqMonomial> {
        (-2i32..3, -2i32..3, -3i32..4).prop_map(|(a, b, c)| ZqMonomial::new(a, b, c))
    }

    fn small_factor() -> impl Strategy<Value = PochFactor> {
        (small_monomial(), 0u32..3, any::<bool>()).prop_filter_map(
            "valid factor",
            |(base, len, inverted)| {
                if base.is_pure_q() && base.e == 0 && len > 0 {
                    None
                } else {
                    Some(PochFactor { base, len: PochLen::Finite(len), inverted })
                }
            },
        )
    }

    fn small_sum() -> impl Strategy<Value = FactoredSum> {
        proptest::collection::vec(
            ((-4i64..5, 1i64..4), small_monomial(), proptest::collection::vec(small_factor(), 0..3)),
            0..3,
        )
        .prop_map(|terms| {
            let mut s = FactoredSum::zero();
            for ((n, d), m, factors) in terms {
                s = fs_add(
                    &s,
                    &FactoredSum::from_term(FactoredTerm {
                        coeff: Rat::new(n, d),
                        monomial: m,
                        factors,
                    }),
                );
            }
            s
        })
    }

    const W: (i32, i32) = (-12, 12);
    const ZMAX: i32 = 4;

    fn xp(s: &FactoredSum, o: Orientation) -> Option<Series2> {
        expand(s, o, ZMAX, W).ok()
    }

    /// Whether every term's support provably stays on the oriented orthant,
    /// so that windowed restriction commutes with products.
    fn orthant_supported(fs: &FactoredSum, o: Orientation) -> bool {
        fs.terms.iter().all(|t| {
            let (p1, p2) = o.oriented(&t.monomial);
            if p1 < 0 || p2 < 0 {
                return false;
            }
            t.factors.iter().all(|f| {
                if f.inverted || f.base.is_pure_q() {
                    return true;
                }
                let (o1, o2) = o.oriented(&f.base);
                o1 >= 0 && o2 >= 0
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws_after_expansion(a in small_sum(), b in small_sum(), c in small_sum()) {
            for o in [Orientation::PP, Orientation::MM] {
                let (ea, eb) = match (xp(&a, o), xp(&b, o), xp(&c, o)) {
                    (Some(x), Some(y), Some(_)) => (x, y),
                    _ => continue,
                };
                // commutativity
                let ab = xp(&fs_mul(&a, &b), o).unwrap();
                let ba = xp(&fs_mul(&b, &a), o).unwrap();
                prop_assert!(ab.series_eq(&ba).unwrap());
                // distributivity: restriction is linear, so this holds for
                // arbitrary operands
                let lhs = xp(&fs_mul(&a, &fs_add(&b, &c)), o).unwrap();
                let rhs = series_add(
                    &xp(&fs_mul(&a, &b), o).unwrap(),
                    &xp(&fs_mul(&a, &c), o).unwrap(),
                ).unwrap();
                prop_assert!(lhs.series_eq(&rhs).unwrap());
                // expansion is a ring homomorphism on the common region when
                // restriction to the orthant loses no support
                if orthant_supported(&a, o) && orthant_supported(&b, o) {
                    let prod_fs = xp(&fs_mul(&a, &b), o).unwrap();
                    let prod_series = series_mul(&ea, &eb).unwrap();
                    prop_assert!(prod_fs.series_eq(&prod_series).unwrap());
                }
            }
        }

        #[test]
        fn substitution_commutes_with_expansion(a in small_sum()) {
            // images with non-negative oriented degrees keep windows comparable
            let img1 = ZqMonomial::new(1, 0, 2);
            let img2 = ZqMonomial::new(0, 1, -1);
            if let Ok(sub) = substitute(&a, &img1, &img2) {
                // compare against substitution applied at series level:
                // a has only finite factors, so expand on a wide window and shift
                if let (Some(es), Some(ea)) = (xp(&sub, Orientation::PP), expand(&a, Orientation::PP, ZMAX, (-40, 40)).ok()) {
                    let shifted = ea.shift_q_linear(img1.e, img2.e);
                    let z = series_sub(&es, &shifted).unwrap();
                    prop_assert!(z.is_zero(), "first diff {:?}", es.first_difference(&shifted));
                }
            }
        }

        #[test]
        fn window_soundness(a in small_sum()) {
            for o in [Orientation::PP, Orientation::MM] {
                if let (Some(small), Ok(large)) = (xp(&a, o), expand(&a, o, ZMAX + 2, (W.0 - 4, W.1 + 4))) {
                    prop_assert!(large.series_eq(&small).unwrap(), "diff {:?}", large.first_difference(&small));
                }
            }
        }
    }
}
