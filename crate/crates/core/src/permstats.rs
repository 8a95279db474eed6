//! Brute-force distributions of permutation, signed-permutation and
//! matching statistics.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactpoly::{ExactPolynomial, VariableSet};

/// Hard ceilings; callers usually apply lower defaults.
pub const MAX_SN: usize = 11;
pub const MAX_BN: usize = 8;
pub const MAX_MATCHINGS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("{domain} enumeration at n={n} exceeds the limit {max}")]
    TooLarge { domain: &'static str, n: usize, max: usize },
    #[error("{0} needs n >= {1}")]
    TooSmall(&'static str, usize),
    #[error("unknown statistic `{0}`")]
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable<K: Ord = usize> {
    pub statistic: String,
    pub n: usize,
    pub counts: BTreeMap<K, BigUint>,
}

impl<K: Ord + Clone + fmt::Display> DistributionTable<K> {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn get(&self, k: &K) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> = self
            .counts
            .iter()
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::json!({ "statistic": self.statistic, "n": self.n, "counts": counts })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,count\n");
        for (k, v) in &self.counts {
            s.push_str(&format!("\"{k}\",{v}\n"));
        }
        s
    }
}

impl DistributionTable<usize> {
    /// Dense coefficient list, index = statistic value.
    pub fn coeffs(&self) -> Vec<BigInt> {
        let top = self.counts.keys().max().copied().unwrap_or(0);
        (0..=top).map(|k| BigInt::from(self.get(&k))).collect()
    }

    /// Sum of count * x^k in the one-variable ring (x).
    pub fn polynomial(&self) -> ExactPolynomial {
        ExactPolynomial::from_univariate(&x_ring(), &self.coeffs())
    }
}

/// Bivariate cycle-peak keys print as "i,j".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair(pub usize, pub usize);

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

pub fn x_ring() -> VariableSet {
    VariableSet::new(&["x"]).expect("single name")
}

fn check(domain: &'static str, n: usize, max: usize) -> Result<(), StatsError> {
    if n > max {
        Err(StatsError::TooLarge { domain, n, max })
    } else {
        Ok(())
    }
}

fn to_table<K: Ord>(name: &str, n: usize, counts: BTreeMap<K, u64>) -> DistributionTable<K> {
    DistributionTable {
        statistic: name.to_string(),
        n,
        counts: counts
            .into_iter()
            .filter(|(_, v)| *v > 0)
            .map(|(k, v)| (k, BigUint::from(v)))
            .collect(),
    }
}

fn merge<K: Ord>(mut a: BTreeMap<K, u64>, b: BTreeMap<K, u64>) -> BTreeMap<K, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Lexicographic successor in place; false when `a` was the last arrangement.
pub fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Tallies `stat` over every permutation of [n] (one-line notation,
/// values 1..=n), split across workers by the first entry.
pub fn fold_permutations<K, F>(n: usize, stat: F) -> BTreeMap<K, u64>
where
    K: Ord + Send,
    F: Fn(&[u8]) -> K + Sync,
{
    if n == 0 {
        let mut m = BTreeMap::new();
        m.insert(stat(&[]), 1);
        return m;
    }
    (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut perm: Vec<u8> = std::iter::once(first)
                .chain((1..=n as u8).filter(|&v| v != first))
                .collect();
            let mut local: BTreeMap<K, u64> = BTreeMap::new();
            loop {
                *local.entry(stat(&perm)).or_insert(0) += 1;
                if !next_permutation(&mut perm[1..]) {
                    break;
                }
            }
            local
        })
        .reduce(BTreeMap::new, merge)
}

pub fn count_interior_peaks(p: &[u8]) -> usize {
    p.windows(3).filter(|w| w[0] < w[1] && w[1] > w[2]).count()
}

pub fn count_left_peaks(p: &[u8]) -> usize {
    (0..p.len().saturating_sub(1))
        .filter(|&i| {
            let left = if i == 0 { 0 } else { p[i - 1] };
            left < p[i] && p[i] > p[i + 1]
        })
        .count()
}

pub fn count_descents(p: &[u8]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Number of maximal monotone blocks; a single entry is one run.
pub fn count_alternating_runs(p: &[u8]) -> usize {
    if p.len() < 2 {
        return p.len();
    }
    let mut runs = 1;
    for w in p.windows(3) {
        if (w[0] < w[1]) != (w[1] < w[2]) {
            runs += 1;
        }
    }
    runs
}

/// Alternating runs of 0 p(1) p(2) ... p(n).
pub fn count_up_down_runs(p: &[u8]) -> usize {
    let mut with_zero = Vec::with_capacity(p.len() + 1);
    with_zero.push(0);
    with_zero.extend_from_slice(p);
    count_alternating_runs(&with_zero)
}

/// Longest subsequence p(i1) > p(i2) < p(i3) > ... (a single entry counts).
pub fn longest_alternating(p: &[u8]) -> usize {
    let n = p.len();
    // odd[i]: best odd length ending at i (next step must go down);
    // even[i]: best even length ending at i (next step must go up).
    let mut odd = vec![0usize; n];
    let mut even = vec![0usize; n];
    let mut best = 0;
    for i in 0..n {
        odd[i] = 1;
        for j in 0..i {
            if p[j] > p[i] && odd[j] > 0 {
                even[i] = even[i].max(odd[j] + 1);
            }
            if p[j] < p[i] && even[j] > 0 {
                odd[i] = odd[i].max(even[j] + 1);
            }
        }
        best = best.max(odd[i]).max(even[i]);
    }
    best
}

/// (odd cycle peaks, even cycle peaks): values v with inv(v) < v > p(v).
pub fn cycle_peaks(p: &[u8]) -> Pair {
    let n = p.len();
    let mut inv = vec![0u8; n + 1];
    for (i, &v) in p.iter().enumerate() {
        inv[v as usize] = (i + 1) as u8;
    }
    let (mut odd, mut even) = (0, 0);
    for v in 1..=n {
        let image = p[v - 1] as usize;
        let pre = inv[v] as usize;
        if pre < v && v > image {
            if v % 2 == 1 {
                odd += 1;
            } else {
                even += 1;
            }
        }
    }
    Pair(odd, even)
}

pub fn is_alternating(p: &[u8]) -> bool {
    p.windows(2)
        .enumerate()
        .all(|(i, w)| if i % 2 == 0 { w[0] > w[1] } else { w[0] < w[1] })
}

pub fn is_reverse_alternating(p: &[u8]) -> bool {
    p.windows(2)
        .enumerate()
        .all(|(i, w)| if i % 2 == 0 { w[0] < w[1] } else { w[0] > w[1] })
}

fn simple(name: &str, n: usize, f: fn(&[u8]) -> usize) -> Result<DistributionTable, StatsError> {
    check("S_n", n, MAX_SN)?;
    Ok(to_table(name, n, fold_permutations(n, f)))
}

pub fn interior_peaks(n: usize) -> Result<DistributionTable, StatsError> {
    simple("interior-peaks", n, count_interior_peaks)
}

pub fn left_peaks(n: usize) -> Result<DistributionTable, StatsError> {
    simple("left-peaks", n, count_left_peaks)
}

pub fn descents(n: usize) -> Result<DistributionTable, StatsError> {
    simple("descents", n, count_descents)
}

pub fn alternating_runs(n: usize) -> Result<DistributionTable, StatsError> {
    if n < 2 {
        return Err(StatsError::TooSmall("alternating-runs", 2));
    }
    simple("alternating-runs", n, count_alternating_runs)
}

/// R(n,k) with the internal convention R(1,0) = 1 so that index shifts
/// stay total. Not for display.
pub fn alternating_runs_extended(n: usize) -> Result<DistributionTable, StatsError> {
    if n == 1 {
        let mut counts = BTreeMap::new();
        counts.insert(0usize, BigUint::from(1u32));
        return Ok(DistributionTable { statistic: "alternating-runs".into(), n, counts });
    }
    alternating_runs(n)
}

pub fn up_down_runs(n: usize) -> Result<DistributionTable, StatsError> {
    simple("updown-runs", n, count_up_down_runs)
}

pub fn longest_alt_subseq(n: usize) -> Result<DistributionTable, StatsError> {
    simple("longest-alt", n, longest_alternating)
}

pub fn cycle_peaks_xy(n: usize) -> Result<DistributionTable<Pair>, StatsError> {
    check("S_n", n, MAX_SN)?;
    Ok(to_table("cycle-peaks", n, fold_permutations(n, cycle_peaks)))
}

pub fn descents_type_b(n: usize) -> Result<DistributionTable, StatsError> {
    check("B_n", n, MAX_BN)?;
    if n == 0 {
        return Ok(to_table("descents-b", 0, BTreeMap::from([(0usize, 1u64)])));
    }
    let totals = (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut perm: Vec<u8> = std::iter::once(first)
                .chain((1..=n as u8).filter(|&v| v != first))
                .collect();
            let mut local = vec![0u64; n + 1];
            let mut w = vec![0i16; n + 1];
            loop {
                for mask in 0u32..(1 << n) {
                    for (i, &v) in perm.iter().enumerate() {
                        w[i + 1] = if mask >> i & 1 == 1 { -(v as i16) } else { v as i16 };
                    }
                    local[(1..=n).filter(|&i| w[i - 1] > w[i]).count()] += 1;
                }
                if !next_permutation(&mut perm[1..]) {
                    break;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );
    Ok(to_table("descents-b", n, totals.into_iter().enumerate().collect()))
}

/// N(n,k): perfect matchings of [2n] with k blocks whose smaller entry is odd.
pub fn matchings_odd_smaller(n: usize) -> Result<DistributionTable, StatsError> {
    check("matchings", n, MAX_MATCHINGS)?;
    fn walk(used: &mut Vec<bool>, odd: usize, out: &mut Vec<u64>) {
        let Some(first) = used.iter().position(|u| !u) else {
            out[odd] += 1;
            return;
        };
        used[first] = true;
        // position `first` holds the value first+1, the smaller entry of its block
        let bump = usize::from((first + 1) % 2 == 1);
        for partner in first + 1..used.len() {
            if !used[partner] {
                used[partner] = true;
                walk(used, odd + bump, out);
                used[partner] = false;
            }
        }
        used[first] = false;
    }
    let mut flat = BTreeMap::new();
    if n == 0 {
        flat.insert(0usize, 1u64);
        return Ok(to_table("matchings", n, flat));
    }
    let parts: Vec<Vec<u64>> = (1..2 * n)
        .into_par_iter()
        .map(|partner| {
            let mut used = vec![false; 2 * n];
            used[0] = true;
            used[partner] = true;
            let mut out = vec![0u64; n + 1];
            walk(&mut used, 1, &mut out);
            out
        })
        .collect();
    for part in parts {
        for (k, c) in part.into_iter().enumerate() {
            *flat.entry(k).or_insert(0) += c;
        }
    }
    Ok(to_table("matchings", n, flat))
}

/// E_1..=E_{n_max}, counting p(1) > p(2) < p(3) > ... ; the reverse
/// alternating count is computed alongside and must agree.
pub fn euler_numbers(n_max: usize) -> Result<Vec<BigUint>, StatsError> {
    check("S_n", n_max, MAX_SN)?;
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let counts = fold_permutations(n, |p| (is_alternating(p), is_reverse_alternating(p)));
        let alt: u64 = counts.iter().filter(|(k, _)| k.0).map(|(_, v)| v).sum();
        let rev: u64 = counts.iter().filter(|(k, _)| k.1).map(|(_, v)| v).sum();
        assert_eq!(alt, rev, "complement bijection broken at n={n}");
        out.push(BigUint::from(alt));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    InteriorPeaks,
    LeftPeaks,
    Descents,
    DescentsB,
    CyclePeaks,
    AlternatingRuns,
    UpDownRuns,
    LongestAlt,
    Matchings,
    Euler,
}

impl Statistic {
    pub const ALL: [(&'static str, Statistic); 10] = [
        ("interior-peaks", Statistic::InteriorPeaks),
        ("left-peaks", Statistic::LeftPeaks),
        ("descents", Statistic::Descents),
        ("descents-b", Statistic::DescentsB),
        ("cycle-peaks", Statistic::CyclePeaks),
        ("alternating-runs", Statistic::AlternatingRuns),
        ("updown-runs", Statistic::UpDownRuns),
        ("longest-alt", Statistic::LongestAlt),
        ("matchings", Statistic::Matchings),
        ("euler", Statistic::Euler),
    ];
}

impl std::str::FromStr for Statistic {
    type Err = StatsError;
    fn from_str(s: &str) -> Result<Self, StatsError> {
        Self::ALL
            .iter()
            .find(|(k, _)| *k == s)
            .map(|(_, v)| *v)
            .ok_or_else(|| StatsError::Unknown(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(v: &[(usize, u64)]) -> BTreeMap<usize, BigUint> {
        v.iter().map(|&(k, c)| (k, BigUint::from(c))).collect()
    }

    #[test]
    fn single_permutation_statistics() {
        let p = [5u8, 1, 4, 6, 3, 2];
        assert_eq!(count_alternating_runs(&p), 3);
        assert_eq!(count_up_down_runs(&p), 4);
        assert_eq!(longest_alternating(&p), 4);
        assert_eq!(longest_alternating(&[1, 2, 3]), 1);
        assert_eq!(longest_alternating(&[2, 1, 3]), 3);
    }

    #[test]
    fn small_peak_tables() {
        assert_eq!(interior_peaks(3).unwrap().counts, table(&[(0, 4), (1, 2)]));
        assert_eq!(interior_peaks(1).unwrap().counts, table(&[(0, 1)]));
        assert_eq!(left_peaks(3).unwrap().counts, table(&[(0, 1), (1, 5)]));
        assert_eq!(left_peaks(2).unwrap().counts, table(&[(0, 1), (1, 1)]));
        assert_eq!(left_peaks(6).unwrap().get(&3), BigUint::from(61u32));
    }

    #[test]
    fn eulerian_tables() {
        assert_eq!(descents(3).unwrap().counts, table(&[(0, 1), (1, 4), (2, 1)]));
        assert_eq!(descents(1).unwrap().counts, table(&[(0, 1)]));
        assert_eq!(descents(4).unwrap().counts, table(&[(0, 1), (1, 11), (2, 11), (3, 1)]));
        assert_eq!(descents_type_b(2).unwrap().counts, table(&[(0, 1), (1, 6), (2, 1)]));
        assert_eq!(descents_type_b(1).unwrap().counts, table(&[(0, 1), (1, 1)]));
        assert_eq!(descents_type_b(3).unwrap().total(), BigUint::from(48u32));
    }

    #[test]
    fn runs_and_alternation() {
        assert_eq!(alternating_runs(3).unwrap().counts, table(&[(1, 2), (2, 4)]));
        assert!(alternating_runs(1).is_err());
        assert_eq!(longest_alt_subseq(4).unwrap().get(&4), BigUint::from(5u32));
        let e = euler_numbers(6).unwrap();
        assert_eq!(e[0], BigUint::from(1u32));
        assert_eq!(e[3], BigUint::from(5u32));
        assert_eq!(e[5], BigUint::from(61u32));
    }

    #[test]
    fn matchings_tables() {
        assert_eq!(matchings_odd_smaller(2).unwrap().counts, table(&[(1, 2), (2, 1)]));
        assert_eq!(matchings_odd_smaller(3).unwrap().counts, table(&[(1, 4), (2, 10), (3, 1)]));
        assert_eq!(matchings_odd_smaller(0).unwrap().counts, table(&[(0, 1)]));
    }

    #[test]
    fn cycle_peaks_small() {
        let t = cycle_peaks_xy(1).unwrap();
        assert_eq!(t.counts.len(), 1);
        assert_eq!(t.get(&Pair(0, 0)), BigUint::from(1u32));
        assert_eq!(cycle_peaks_xy(2).unwrap().total(), BigUint::from(2u32));
    }

    #[test]
    fn limits_enforced() {
        assert!(matches!(descents(12), Err(StatsError::TooLarge { .. })));
        assert!(matches!(descents_type_b(9), Err(StatsError::TooLarge { .. })));
    }

    #[test]
    fn successor_walks_all() {
        let mut p = [1u8, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, [4, 3, 2, 1]);
    }
}
