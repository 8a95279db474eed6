//! Reference values checked against freshly built arrays and derivations.

mod common;

#[test]
fn expansion_rows() {
    let (seen, bad) = common::expansion_rows();
    assert_eq!(seen, 35);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn small_t_and_r_tables() {
    let bad = common::small_t_and_r_tables();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn symmetric_boundary_rows() {
    let bad = common::symmetric_rows();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn extended_grammar_powers() {
    let bad = common::grammar_powers();
    assert!(bad.is_empty(), "{bad:#?}");
}
