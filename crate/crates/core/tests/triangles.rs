use dumont_core::exactpoly::ExactPolynomial;
use dumont_core::grammar::{Grammar, OpKind, OperatorSpec};
use dumont_core::triangles::{both, extract, pq_ring, ArrayName};
use num_bigint::BigInt;

#[test]
fn grammar_and_recurrence_agree_to_twelve() {
    for name in ArrayName::ALL {
        let (g, r) = both(name, 12).unwrap();
        assert_eq!(g.first_difference(&r), None, "array {name}");
    }
}

#[test]
fn patterns_cover_every_monomial_to_fourteen() {
    for name in ArrayName::ALL {
        extract(name, 14).unwrap_or_else(|e| panic!("{e}"));
    }
}

#[test]
fn schett_powers_are_homogeneous_with_parity_pattern() {
    let op = OperatorSpec::from_text(OpKind::D, Grammar::schett(), "x").unwrap();
    for (n, p) in op.sequence(14).unwrap().iter().enumerate() {
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(n as u32 + 1));
        for (m, _) in p.terms() {
            let e = m.exponents();
            let want = if n % 2 == 0 { [1, 0, 0] } else { [0, 1, 1] };
            assert_eq!([e[0] % 2, e[1] % 2, e[2] % 2], want, "n={n}");
        }
    }
}

#[test]
fn symmetric_boundary_facts() {
    let t = extract(ArrayName::T, 12).unwrap();
    let r = extract(ArrayName::R, 12).unwrap();
    for n in 1..=6usize {
        for j in 0..=2 * n {
            assert_eq!(t.get(2 * n, 0, j), t.get(2 * n, 0, 2 * n - j));
            assert_eq!(r.get(2 * n, 0, j), r.get(2 * n, 0, 2 * n - j));
            if j >= 1 {
                assert_eq!(t.get(2 * n, 0, j), t.get(2 * n - 1, 0, j - 1));
                assert_eq!(r.get(2 * n, 0, j), r.get(2 * n - 1, 0, j - 1));
            }
        }
        assert_eq!(t.get(2 * n, 0, 0), BigInt::from(0));
        assert_eq!(r.get(2 * n, 0, 0), BigInt::from(0));
        assert_eq!(t.get(2 * n - 1, 0, 0), BigInt::from(1));
        assert_eq!(r.get(2 * n - 1, 0, 0), BigInt::from(2));
    }
}

#[test]
fn b_expansion_first_terms() {
    let b = extract(ArrayName::B, 5).unwrap();
    let ring = pq_ring();
    let expected = ["1", "1", "p+2*q", "p^2+p*(2*q+8)+4*q"];
    for (n, s) in expected.iter().enumerate() {
        assert_eq!(b.generating_polynomial(n).unwrap(), ExactPolynomial::parse(&ring, s).unwrap());
    }
}
