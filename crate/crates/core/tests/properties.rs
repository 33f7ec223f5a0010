use lacunae::arith::{factorial, int, rat, BigRational};
use lacunae::closed_form::{closed_form_hk0, closed_form_hkl};
use lacunae::hermite::{hermite_coeff_table, hermite_egf, hermite_poly};
use lacunae::lacunary::{
    dilate, dilate_to, random_dense_table, resum_parity_split, resum_residue_classes, shift,
};
use lacunae::normal_order::{
    apply_exp_op, crofton_check, random_operator_corpus, random_poly_pairs,
};
use lacunae::{BivarPoly, LambdaSeries};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = BivarPoly> {
    proptest::collection::vec((0u32..4, 0u32..3, small_rational()), 0..5)
        .prop_map(BivarPoly::from_terms)
}

fn small_series(order: usize) -> impl Strategy<Value = LambdaSeries> {
    proptest::collection::vec(small_poly(), order + 1).prop_map(LambdaSeries::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn series_ring_axioms(a in small_series(3), b in small_series(3), c in small_series(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), x in small_rational(), y in small_rational()) {
        prop_assert_eq!((&a + &b).eval(&x, &y), a.eval(&x, &y) + b.eval(&x, &y));
        prop_assert_eq!((&a * &b).eval(&x, &y), a.eval(&x, &y) * b.eval(&x, &y));
    }

    #[test]
    fn differentiation_shifts_egf_coefficients(a in small_series(5), l in 0usize..=5) {
        let d = a.diff_lambda(l).unwrap();
        for n in 0..=5 - l {
            prop_assert_eq!(d.egf_coeff(n), a.egf_coeff(n + l));
        }
    }

    #[test]
    fn dilated_shift_is_lacunary(k in 1u32..=6, l in 0u32..=4, n in 0u32..=6) {
        prop_assume!(n * k + l <= 40);
        let e = hermite_egf((n * k + l) as usize);
        let s = dilate(&shift(&e, l).unwrap(), k).unwrap();
        prop_assert_eq!(s.egf_coeff(n as usize), hermite_poly(n * k + l));
    }

    #[test]
    fn parity_split_sums_to_resummation(k in 1u32..=8, seed in any::<u64>()) {
        let table = random_dense_table(seed);
        let full = resum_residue_classes(&table, k, 4).unwrap();
        let (even, odd) = resum_parity_split(&table, k, 4).unwrap();
        prop_assert_eq!(&even + &odd, full.clone());
        prop_assert_eq!(full, dilate_to(&table.egf(4 * k as usize), k, 4).unwrap());
    }

    #[test]
    fn closed_form_at_zero_y(k in 2u32..=8, l in 0u32..=4, x in small_rational()) {
        let s = closed_form_hkl(k, l, 3).unwrap();
        for n in 0..=3u32 {
            let expected = num_traits::pow(x.clone(), (n * k + l) as usize) / BigRational::from_integer(factorial(n));
            prop_assert_eq!(s.coeff(n as usize).eval(&x, &int(0)), expected);
        }
    }

    #[test]
    fn dual_route_on_seeded_corpora(seed in any::<u64>()) {
        for (op, f) in random_operator_corpus(seed, 4) {
            prop_assert!(apply_exp_op(&op, 4, &f).is_ok());
        }
    }

    #[test]
    fn crofton_with_scaled_step(seed in any::<u64>(), m in 1u32..=3, c in small_rational()) {
        for (f, g) in random_poly_pairs(seed, 3, 4) {
            prop_assert!(crofton_check(m, &c, &f, &g, 4));
        }
    }
}

#[test]
fn closed_forms_reproduce_hermite_grid() {
    for k in 2..=8u32 {
        for l in 0..=4u32 {
            let order = if k <= 5 { 5 } else { 4 };
            let s = closed_form_hkl(k, l, order).unwrap();
            for n in 0..=order {
                assert_eq!(
                    s.egf_coeff(n),
                    hermite_poly(n as u32 * k + l),
                    "K={k} L={l} n={n}"
                );
            }
        }
    }
}

#[test]
fn closed_form_is_even_part_of_resummation() {
    let table = hermite_coeff_table();
    for k in 1..=8 {
        let (even, odd) = resum_parity_split(&table, k, 5).unwrap();
        assert_eq!(closed_form_hk0(k, 5).unwrap(), even, "K={k}");
        assert!(odd.is_zero());
    }
}
