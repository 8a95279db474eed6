//! Loaders for the reference tables under tests/golden. Each check returns the
//! list of mismatches so callers can either assert or report.

use std::collections::BTreeMap;

use dumont_core::exactpoly::ExactPolynomial;
use dumont_core::grammar::{Grammar, OpKind, OperatorSpec};
use dumont_core::triangles::{extract, pq_ring, ArrayName};
use num_bigint::BigInt;

const EXPANSIONS: &str = include_str!("../golden/expansions.txt");
const TABLES: &str = include_str!("../golden/tables_t_r.json");
const SYMMETRIC: &str = include_str!("../golden/symmetric_rows.txt");
const GRAMMAR: &str = include_str!("../golden/grammar.txt");

fn lines(src: &str) -> impl Iterator<Item = Vec<&str>> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().collect())
}

fn array(letter: &str) -> ArrayName {
    ArrayName::ALL
        .into_iter()
        .find(|a| a.letter().to_string() == letter)
        .unwrap_or_else(|| panic!("unknown array {letter}"))
}

/// Returns (rows checked, mismatches).
pub fn expansion_rows() -> (usize, Vec<String>) {
    let ring = pq_ring();
    let mut bad = Vec::new();
    let mut seen = 0;
    for f in lines(EXPANSIONS) {
        let (name, n) = (array(f[0]), f[1].parse::<usize>().unwrap());
        let want = ExactPolynomial::parse(&ring, f[2]).unwrap();
        let tri = extract(name, n.max(1)).unwrap();
        let got = match tri.generating_polynomial(n) {
            Ok(g) => g,
            // level 0 is the seed itself
            Err(_) if n == 0 => ExactPolynomial::one(&ring),
            Err(e) => panic!("{e}"),
        };
        if got != want {
            bad.push(format!("{name} row {n}: built {got}, expected {want}"));
        }
        seen += 1;
    }
    (seen, bad)
}

pub fn small_t_and_r_tables() -> Vec<String> {
    let data: BTreeMap<String, BTreeMap<usize, Vec<Vec<u64>>>> = serde_json::from_str(TABLES).unwrap();
    let mut bad = Vec::new();
    for (letter, levels) in &data {
        let tri = extract(array(letter), 4).unwrap();
        for (&n, rows) in levels {
            let mut nonzero = 0;
            for (i, row) in rows.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    let got = tri.get(n, i, j);
                    if got != BigInt::from(v) {
                        bad.push(format!("{letter}_{n},{i},{j}: built {got}, expected {v}"));
                    }
                    nonzero += usize::from(v != 0);
                }
            }
            // nothing outside the expected block
            let stored = tri.row(n).unwrap().values().filter(|v| **v != BigInt::from(0)).count();
            if stored != nonzero {
                bad.push(format!("{letter}_{n}: {stored} nonzero entries, {nonzero} expected"));
            }
        }
    }
    bad
}

pub fn symmetric_rows() -> Vec<String> {
    let mut bad = Vec::new();
    for f in lines(SYMMETRIC) {
        let n: usize = f[1].parse().unwrap();
        let tri = extract(array(f[0]), n).unwrap();
        let want: Vec<BigInt> = f[2..].iter().map(|v| v.parse().unwrap()).collect();
        let got: Vec<BigInt> = (1..n).map(|j| tri.get(n, 0, j)).collect();
        if got != want {
            bad.push(format!("{} level {n}: built {got:?}, expected {want:?}", f[0]));
        }
    }
    bad
}

pub fn grammar_powers() -> Vec<String> {
    let mut bad = Vec::new();
    for f in lines(GRAMMAR) {
        assert_eq!(f[0], "extended");
        let g = Grammar::extended();
        let want = ExactPolynomial::parse(g.ring(), f[3]).unwrap();
        let op = OperatorSpec::from_text(OpKind::D, g, f[1]).unwrap();
        let n: usize = f[2].parse().unwrap();
        let got = op.iterate(n).unwrap();
        if got != want {
            bad.push(format!("D^{n}({}): built {got}, expected {want}", f[1]));
        }
    }
    bad
}
