//! Randomized and exhaustive invariants of the algebra layers.

use std::collections::BTreeMap;

use dumont_core::exactpoly::{ExactPolynomial, JsonTerm, VariableSet};
use dumont_core::grammar::{Grammar, OpKind, OperatorSpec};
use dumont_core::permstats;
use dumont_core::series::{classical_ring, jacobi_two_param, j_coefficients, FormalPowerSeries};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn xyz() -> VariableSet {
    VariableSet::new(&["x", "y", "z"]).unwrap()
}

fn poly_in(ring: VariableSet, max_terms: usize) -> impl Strategy<Value = ExactPolynomial> {
    let n = ring.len();
    prop::collection::vec((prop::collection::vec(0u32..4, n), -6i64..7), 0..=max_terms).prop_map(move |terms| {
        ExactPolynomial::from_terms(&ring, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

fn small() -> impl Strategy<Value = ExactPolynomial> {
    poly_in(xyz(), 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn ring_laws(a in small(), b in small(), c in small()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &ExactPolynomial::one(&xyz()), a.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn partial_derivative_is_leibniz(a in small(), b in small()) {
        for v in ["x", "y", "z"] {
            let lhs = (&a * &b).partial_derivative(v).unwrap();
            let rhs = &(&a.partial_derivative(v).unwrap() * &b) + &(&a * &b.partial_derivative(v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn text_round_trip(a in small()) {
        let text = a.to_string();
        prop_assert_eq!(ExactPolynomial::parse(&xyz(), &text).unwrap(), a.clone());
        prop_assert_eq!(ExactPolynomial::parse(&xyz(), &text).unwrap().to_string(), text);
    }

    #[test]
    fn json_round_trip(a in small()) {
        let js = serde_json::to_string(&a.to_json_terms()).unwrap();
        let back: Vec<JsonTerm> = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(ExactPolynomial::from_json_terms(&xyz(), &back).unwrap(), a);
    }

    #[test]
    fn extended_derivation_is_linear_and_leibniz(
        a in poly_in(Grammar::extended().ring().clone(), 4),
        b in poly_in(Grammar::extended().ring().clone(), 4),
        k in -5i64..6,
    ) {
        let g = Grammar::extended();
        let d = |p: &ExactPolynomial| g.derive(p).unwrap();
        prop_assert_eq!(d(&(&a + &b)), &d(&a) + &d(&b));
        prop_assert_eq!(d(&a.scale(k)), d(&a).scale(k));
        prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
    }

    #[test]
    fn schett_derivation_is_leibniz(a in small(), b in small()) {
        let g = Grammar::schett();
        let d = |p: &ExactPolynomial| g.derive(p).unwrap();
        prop_assert_eq!(d(&(&a + &b)), &d(&a) + &d(&b));
        prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
    }

    #[test]
    fn grammar_text_round_trip(a in poly_in(xyz(), 3), b in poly_in(xyz(), 3)) {
        let g = Grammar::new(&xyz()).with_rule("x", a).unwrap().with_rule("y", b).unwrap();
        let text = g.to_string();
        let back = Grammar::parse_in(&xyz(), &text).unwrap();
        prop_assert_eq!(back.to_string(), text);
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn odd_powers_split_by_leibniz() {
    let g = Grammar::extended();
    let dw = OperatorSpec::from_text(OpKind::D, g.clone(), "w").unwrap().sequence(13).unwrap();
    let dx = OperatorSpec::from_text(OpKind::D, g, "x").unwrap().sequence(12).unwrap();
    for n in 0..=6 {
        let mut sum = ExactPolynomial::zero(dw[0].ring());
        for k in 0..=2 * n {
            sum += &(&dw[k] * &dx[2 * n - k]).scale(binomial(2 * n, k));
        }
        assert_eq!(sum, dw[2 * n + 1], "n={n}");
    }
}

#[test]
fn up_down_runs_equal_longest_alternating() {
    for n in 1..=9 {
        assert_eq!(
            permstats::up_down_runs(n).unwrap().counts,
            permstats::longest_alt_subseq(n).unwrap().counts,
            "n={n}"
        );
    }
}

#[test]
fn table_totals_are_domain_sizes() {
    let fact = |n: usize| (1..=n).fold(BigUint::from(1u8), |a, k| a * k);
    for n in 1..=8 {
        assert_eq!(permstats::descents(n).unwrap().total(), fact(n));
        assert_eq!(permstats::interior_peaks(n).unwrap().total(), fact(n));
        assert_eq!(permstats::cycle_peaks_xy(n).unwrap().total(), fact(n));
    }
    for n in 1..=6 {
        assert_eq!(permstats::descents_type_b(n).unwrap().total(), fact(n) << n);
        let dfact = (0..n).fold(BigUint::from(1u8), |a, k| a * (2 * k + 1));
        assert_eq!(permstats::matchings_odd_smaller(n).unwrap().total(), dfact);
    }
}

#[test]
fn extreme_peak_counts_are_euler_numbers() {
    let e = permstats::euler_numbers(9).unwrap();
    for n in 1..=4usize {
        assert_eq!(permstats::interior_peaks(2 * n + 1).unwrap().get(&n), e[2 * n], "odd n={n}");
        assert_eq!(permstats::left_peaks(2 * n).unwrap().get(&n), e[2 * n - 1], "even n={n}");
    }
}

fn unit_series(s: &FormalPowerSeries) -> bool {
    s.numerators().iter().enumerate().all(|(m, c)| {
        if m == 0 {
            *c == ExactPolynomial::one(s.ring())
        } else {
            c.is_zero()
        }
    })
}

#[test]
fn pythagorean_relations_hold_formally() {
    let js = jacobi_two_param(16);
    let ring = js.sn.ring().clone();
    let sn2 = js.sn.mul(&js.sn).unwrap();
    let a2 = ExactPolynomial::var(&ring, "a2").unwrap();
    let b2 = ExactPolynomial::var(&ring, "b2").unwrap();
    let c = js.cn.mul(&js.cn).unwrap().sub(&sn2.scale(&a2).unwrap()).unwrap();
    let d = js.dn.mul(&js.dn).unwrap().sub(&sn2.scale(&b2).unwrap()).unwrap();
    assert!(unit_series(&c));
    assert!(unit_series(&d));
    for m in 0..=16 {
        let want_odd = m % 2 == 1;
        assert!(want_odd || js.sn.numerator(m).is_zero(), "sn at {m}");
        assert!(!want_odd || js.cn.numerator(m).is_zero(), "cn at {m}");
        assert!(!want_odd || js.dn.numerator(m).is_zero(), "dn at {m}");
    }
}

#[test]
fn classical_is_specialized_two_parameter() {
    let two = jacobi_two_param(14);
    let cl = dumont_core::series::jacobi_classical(14);
    let ring = classical_ring();
    let k2 = ExactPolynomial::var(&ring, "k2").unwrap();
    let bind = BTreeMap::from([
        ("a2".to_string(), ExactPolynomial::constant(&ring, -1)),
        ("b2".to_string(), -k2),
    ]);
    for (a, b) in [(&two.sn, &cl.sn), (&two.cn, &cl.cn), (&two.dn, &cl.dn)] {
        assert_eq!(a.substitute(&bind).unwrap().numerators(), b.numerators());
    }
}

#[test]
fn j_coefficients_are_nonnegative_with_unit_lead() {
    let j = j_coefficients(12);
    for (n, row) in j.iter().enumerate() {
        assert_eq!(row[0], BigInt::from(1), "n={n}");
        assert!(row.iter().all(|v| *v >= BigInt::from(0)), "n={n}: {row:?}");
    }
}
