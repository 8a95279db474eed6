//! Shared, lazily built tables. Independent cases running in parallel ask
//! for the same enumerations; each is computed once per process.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::exactpoly::ExactPolynomial;
use crate::permstats::{self, DistributionTable, Pair};
use crate::triangles::{extract, ArrayName, Triangle};

/// Enumeration bounds used by the identity checks.
pub const SN_CAP: usize = 10;
pub const BN_CAP: usize = 7;
pub const MATCHING_CAP: usize = 9;

type Slot<T> = Arc<OnceLock<T>>;
type Cache<K, T> = Mutex<HashMap<K, Slot<T>>>;

fn slot<K: std::hash::Hash + Eq + Clone, T>(map: &Cache<K, T>, key: &K) -> Slot<T> {
    map.lock().expect("cache lock").entry(key.clone()).or_default().clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Table {
    InteriorPeaks,
    LeftPeaks,
    Descents,
    DescentsB,
    AlternatingRuns,
    UpDownRuns,
    LongestAlt,
    Matchings,
}

fn tables() -> &'static Cache<(Table, usize), Arc<DistributionTable>> {
    static M: OnceLock<Cache<(Table, usize), Arc<DistributionTable>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Distribution of a statistic at size n. Panics past the enumeration caps;
/// callers clamp their ranges first.
pub fn table(which: Table, n: usize) -> Arc<DistributionTable> {
    let s = slot(tables(), &(which, n));
    s.get_or_init(|| {
        let t = match which {
            Table::InteriorPeaks => permstats::interior_peaks(n),
            Table::LeftPeaks => permstats::left_peaks(n),
            Table::Descents => permstats::descents(n),
            Table::DescentsB => permstats::descents_type_b(n),
            Table::AlternatingRuns => permstats::alternating_runs_extended(n),
            Table::UpDownRuns => permstats::up_down_runs(n),
            Table::LongestAlt => permstats::longest_alt_subseq(n),
            Table::Matchings => permstats::matchings_odd_smaller(n),
        };
        Arc::new(t.unwrap_or_else(|e| panic!("{which:?} at n={n}: {e}")))
    })
    .clone()
}

/// Coefficient k of a table, 0 outside its support (including k < 0).
pub fn coef(which: Table, n: usize, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::from(0);
    }
    BigInt::from(table(which, n).get(&(k as usize)))
}

pub fn poly(which: Table, n: usize) -> ExactPolynomial {
    table(which, n).polynomial()
}

fn cycle_tables() -> &'static Cache<usize, Arc<DistributionTable<Pair>>> {
    static M: OnceLock<Cache<usize, Arc<DistributionTable<Pair>>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

pub fn cycle_peaks(n: usize) -> Arc<DistributionTable<Pair>> {
    slot(cycle_tables(), &n)
        .get_or_init(|| Arc::new(permstats::cycle_peaks_xy(n).expect("within cap")))
        .clone()
}

fn triangles() -> &'static Cache<ArrayName, Arc<Triangle>> {
    static M: OnceLock<Cache<ArrayName, Arc<Triangle>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Triangles are built once to a fixed depth that covers every check.
pub const TRIANGLE_DEPTH: usize = 14;

pub fn triangle(name: ArrayName, n: usize) -> Arc<Triangle> {
    if n > TRIANGLE_DEPTH {
        return Arc::new(extract(name, n).expect("built-in array"));
    }
    slot(triangles(), &name)
        .get_or_init(|| Arc::new(extract(name, TRIANGLE_DEPTH).expect("built-in array")))
        .clone()
}
