//! Row-to-row recurrences for the seven arrays.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::spec::ArraySpec;
use super::{ArrayName, Provenance, Triangle, TriangleError};

type Row = BTreeMap<(usize, usize), BigInt>;

fn at(row: &Row, i: i64, j: i64) -> BigInt {
    if i < 0 || j < 0 {
        return BigInt::zero();
    }
    row.get(&(i as usize, j as usize)).cloned().unwrap_or_default()
}

fn row_of(entries: &[((usize, usize), i64)]) -> Row {
    entries.iter().map(|&(ij, v)| (ij, BigInt::from(v))).collect()
}

/// Hard-coded initial rows.
fn base_rows(name: ArrayName) -> Vec<Row> {
    use ArrayName::*;
    match name {
        S | A | B => vec![row_of(&[((0, 0), 1)]), row_of(&[((0, 0), 1)])],
        C => vec![row_of(&[((0, 0), 1)]), row_of(&[((0, 0), 2)])],
        D => vec![row_of(&[((0, 0), 1)]), row_of(&[((0, 1), 1), ((1, 0), 1)])],
        T | R => vec![row_of(&[((0, 0), 1)])],
    }
}

/// Entry (big_n, i, j) from the previous row. `n` below is the half index
/// of the recurrence: big_n = 2n (even) or 2n+1 (odd).
fn step(name: ArrayName, big_n: usize, i: i64, j: i64, p: &Row) -> BigInt {
    use ArrayName::*;
    let even = big_n % 2 == 0;
    let n = (big_n / 2) as i64;
    let terms: Vec<(i64, i64, i64)> = match (name, even) {
        (S, true) => vec![
            (2 * j + 1, i, j),
            (2 * i + 2, i + 1, j - 1),
            (2 * n - 2 * i - 2 * j + 1, i, j - 1),
        ],
        (S, false) => vec![
            (2 * i + 1, i, j),
            (2 * j + 2, i - 1, j + 1),
            (2 * n - 2 * i - 2 * j + 2, i - 1, j),
        ],
        (A, false) => vec![
            (2 * i + 1, i, j),
            (2 * j + 2, i - 1, j + 1),
            (4 * n - 2 * i - 2 * j + 2, i - 1, j),
        ],
        (A, true) => vec![
            (2 * i + 1, i, j - 1),
            (2 * j + 1, i - 1, j),
            (4 * n - 2 * i - 2 * j + 1, i - 1, j - 1),
        ],
        (C, true) => vec![
            (2 * i + 2, i, j - 1),
            (2 * j + 1, i - 1, j),
            (4 * n - 2 * i - 2 * j + 1, i - 1, j - 1),
        ],
        (C, false) => vec![
            (2 * i + 2, i, j),
            (2 * j + 2, i - 1, j + 1),
            (4 * n - 2 * i - 2 * j + 2, i - 1, j),
        ],
        (D, true) => vec![
            (2 * i + 1, i, j),
            (2 * j + 2, i - 1, j + 1),
            (4 * n - 2 * i - 2 * j + 1, i - 1, j),
        ],
        (D, false) => vec![
            (2 * i + 1, i, j - 1),
            (2 * j + 1, i - 1, j),
            (4 * n - 2 * i - 2 * j + 4, i - 1, j - 1),
        ],
        (B, true) => vec![
            (4 * n - 2 * i - 2 * j, i - 1, j - 1),
            (2 * i + 2, i, j - 1),
            (2 * j + 1, i - 1, j),
        ],
        (B, false) => vec![
            (4 * n - 2 * i - 2 * j + 1, i - 1, j),
            (2 * i + 2, i, j),
            (2 * j + 2, i - 1, j + 1),
        ],
        (T | R, false) => {
            let lead = if name == T { 1 } else { 2 };
            vec![
                (lead, i, j),
                (2 * i + 2, i + 1, j - 1),
                (j + 1, i, j + 1),
                (2 * n - 2 * i - j + 1, i, j - 1),
            ]
        }
        (T | R, true) => {
            let lead = if name == T { 1 } else { 2 };
            vec![
                (lead, i - 1, j),
                (2 * i + 1, i, j - 1),
                (j + 1, i - 1, j + 1),
                (2 * n - 2 * i - j + 1, i - 1, j - 1),
            ]
        }
    };
    terms
        .into_iter()
        .map(|(k, a, b)| BigInt::from(k) * at(p, a, b))
        .sum()
}

pub fn recur(name: ArrayName, n_max: usize) -> Result<Triangle, TriangleError> {
    if n_max < 1 {
        return Err(TriangleError::BadLevel(n_max));
    }
    let spec = ArraySpec::of(name);
    let mut rows = base_rows(name);
    rows.truncate(n_max + 1);
    while rows.len() <= n_max {
        let big_n = rows.len();
        let prev = &rows[big_n - 1];
        let mut row = Row::new();
        for ((i, j), _) in spec.pattern.region(big_n)? {
            let v = step(name, big_n, i as i64, j as i64, prev);
            if !v.is_zero() {
                row.insert((i, j), v);
            }
        }
        rows.push(row);
    }
    Ok(Triangle::from_rows(name, rows, Provenance::Recurrence))
}
