mod common;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use ql_core::bounds::{
    chow_bound_literal, chow_component_bound, dichotomy_bound, h0_and_embedding_bounds,
    leaf_degree_bound, leaf_section_bound, log10_int,
};
use ql_core::FoliationProfile;

fn big(r: &ql_core::BoundReport) -> BigUint {
    r.value.to_integer().unwrap().to_biguint().unwrap()
}

#[test]
fn chow_reproduces_both_displayed_bounds() {
    let default = chow_component_bound(3, 6, None).unwrap();
    assert_eq!(big(&default), common::pascal_binomial(60, 9).pow(90));
    assert_eq!(default.value.form.unwrap().to_string(), "binom(60, 9)^90");

    let refined = chow_component_bound(3, 4, Some(5)).unwrap();
    assert_eq!(common::pascal_binomial(20, 4), BigUint::from(4845u32));
    assert_eq!(big(&refined), BigUint::from(4845u32).pow(45));
}

#[test]
fn unified_formula_equals_literal_expression() {
    for d in 1..=6u64 {
        for surf_deg in 1..=8 {
            let unified = chow_component_bound(d, surf_deg, None).unwrap();
            assert_eq!(big(&unified), chow_bound_literal(d, surf_deg).unwrap(), "d={d}, H^2={surf_deg}");
        }
    }
}

#[test]
fn literal_expression_against_pascal() {
    for d in 1..=3u64 {
        let top = ((d + 1) * (d + 2) / 2 * d.max(2)) as usize;
        let bottom = (d * (d + 3) / 2) as usize;
        let exp = (d * d * (d + 1) * (d + 2) / 2) as u32;
        assert_eq!(chow_bound_literal(d, 2).unwrap(), common::pascal_binomial(top, bottom).pow(exp));
    }
}

#[test]
fn chow_is_monotone_on_small_grids() {
    for d in 1..=4u64 {
        for surf_deg in 1..=9 {
            let here = big(&chow_component_bound(d, surf_deg, None).unwrap());
            let up_surf = big(&chow_component_bound(d, surf_deg + 1, None).unwrap());
            let up_d = big(&chow_component_bound(d + 1, surf_deg, None).unwrap());
            assert!(up_surf >= here && up_d >= here, "d={d}, H^2={surf_deg}");
        }
    }
}

#[test]
fn log10_matches_independent_estimate() {
    for (d, surf_deg, h0) in [(3, 6, None), (3, 4, Some(5)), (1, 1, None), (4, 7, None), (5, 2, None)] {
        let r = chow_component_bound(d, surf_deg, h0).unwrap();
        let f = r.value.form.unwrap();
        let independent = f.exponent as f64 * common::log10_binomial(f.top, f.bottom);
        assert!((r.log10 - independent).abs() < 1e-6, "{f}: {} vs {independent}", r.log10);
        // digit count agrees with the logarithm
        assert_eq!(r.value.digits(), r.log10.floor() as usize + 1);
    }
}

#[test]
fn log10_of_plain_integers() {
    for v in [1u64, 9, 10, 12345, 999_999_999_999_999_999] {
        let got = log10_int(&BigInt::from(v));
        assert!((got - (v as f64).log10()).abs() < 1e-12);
    }
    let r = dichotomy_bound(1, 3).unwrap();
    assert!((r.log10 - (16.0f64 / 3.0).log10()).abs() < 1e-12);
}

#[test]
fn h0_pair_differs_by_one() {
    for d in 1..=50 {
        let (h0, n) = h0_and_embedding_bounds(d).unwrap();
        assert_eq!(h0, n + 1);
        assert_eq!(2 * n, d * (d + 3));
    }
}

#[test]
fn leaf_section_matches_rational_scan() {
    for n in 2..=12u32 {
        for rank in 1..n {
            for sing in 0..=n - 2 {
                let p = FoliationProfile::new(n, rank, sing).unwrap();
                let got = leaf_section_bound(&p).unwrap();
                let d0 = common::leaf_section_scan(n.into(), rank.into(), sing.into(), 200).unwrap();
                assert_eq!(i64::from(got), d0 - 1, "{p:?}");
            }
        }
    }
    let p = FoliationProfile::new(5, 2, 3).unwrap();
    assert_eq!(common::leaf_section_scan(5, 2, 3, 20), Some(4));
    assert_eq!(leaf_section_bound(&p).unwrap(), 3);
}

#[test]
fn leaf_section_is_one_in_the_equality_case() {
    for n in 2..=10u32 {
        for rank in 1..n {
            let p = FoliationProfile::new(n, rank, rank - 1).unwrap();
            assert_eq!(leaf_section_bound(&p).unwrap(), 1);
        }
    }
}

proptest! {
    #[test]
    fn dichotomy_chains_through_leaf_degree(deg_l in 1u64..500, deg_x in 1u64..500) {
        let lhs = dichotomy_bound(deg_l, deg_x).unwrap().value.exact * BigRational::from_integer(deg_l.into());
        let leaf = BigInt::from(leaf_degree_bound(deg_l).unwrap());
        let rhs = BigRational::new(&leaf * &leaf, deg_x.into());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dichotomy_value_is_positive(deg_l in 1u64..10_000, deg_x in 1u64..10_000) {
        let r = dichotomy_bound(deg_l, deg_x).unwrap();
        prop_assert!(r.value.exact > BigRational::from_integer(0.into()));
        let expect = (16.0 * (deg_l as f64).powi(3) / deg_x as f64).log10();
        prop_assert!((r.log10 - expect).abs() < 1e-6);
    }
}
