//! Result records for verification sweeps and the sweep configuration.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One checked inequality (or expected rejection) with its outcome.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AssertionRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// One named bound value in log2 space.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundValueRecord {
    pub name: String,
    pub log2: f64,
    /// plain value when it fits an f64 comfortably
    pub value: Option<f64>,
    pub side: String,
    pub target: String,
    pub assertable: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct CapsRecord {
    pub max_v: u64,
    pub max_group: u64,
    pub oracle_cap: u64,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq)]
pub struct TimingsRecord {
    pub total_ms: f64,
    pub diameters_ms: f64,
}

/// Everything measured and checked for one instance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InstanceRecord {
    /// unique, stable ordering key
    pub key: String,
    pub family: String,
    pub group_name: String,
    pub p: u64,
    pub d: usize,
    pub v_size: u64,
    /// None when the enumeration cap was exceeded
    pub group_order: Option<u64>,
    pub irreducible: bool,
    pub scalar_order: Option<u64>,
    pub orbit_count: usize,
    pub smallest_nonzero_orbit: Option<u64>,
    /// absent for expected-reject instances
    pub diamd: Option<u64>,
    pub diam: Option<u64>,
    pub summand_count: Option<usize>,
    pub a_order: Option<u64>,
    pub a_normal: Option<bool>,
    pub bounds: Vec<BoundValueRecord>,
    pub assertions: Vec<AssertionRecord>,
    pub oracle_checked: bool,
    pub engine_version: String,
    pub caps: CapsRecord,
    pub timings_ms: TimingsRecord,
}

impl InstanceRecord {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failed_assertions(&self) -> impl Iterator<Item = &AssertionRecord> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    /// Equality of everything except wall-clock timings; the cache
    /// correctness spot check compares a cached record against a fresh
    /// recomputation this way.
    pub fn results_equal_ignoring_timings(&self, other: &Self) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.timings_ms = TimingsRecord::default();
        b.timings_ms = TimingsRecord::default();
        a == b
    }
}

/// Family selectors and parameter ranges for a verification sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    /// primes for the one-dimensional identity checks
    pub identity_primes: Vec<u64>,
    /// wreath sweep: primes x top kinds x degrees, every nontrivial K
    pub wreath_primes: Vec<u64>,
    pub wreath_degrees: Vec<usize>,
    /// "cyclic" and/or "symmetric"
    pub wreath_tops: Vec<String>,
    /// alternating-module sweep: fixed r with a list of primes
    pub alt_r: usize,
    pub alt_primes: Vec<u64>,
    /// Zsigmondy cyclic candidates (d, p); each is screened for the order
    /// condition and replaced by the next admissible prime if it fails
    pub zsigmondy_candidates: Vec<(usize, u64)>,
    /// field-module sweep over all prime powers q <= this bound
    pub field_module_max_q: u64,
    /// randomized oracle cross-check: spaces and case count per space
    pub oracle_random_spaces: Vec<(u64, usize)>,
    pub oracle_random_cases: usize,
    pub oracle_random_seed: u64,
    /// include the reducible counterexample and the p=2 wreath rejection
    pub include_rejections: bool,
    /// J(d) table enabling the conditional bound branches
    pub j_table: BTreeMap<usize, u64>,
    pub max_v: u64,
    pub max_group: u64,
    pub oracle_cap: u64,
}

impl SweepConfig {
    /// The full acceptance sweep.
    pub fn default_suite() -> Self {
        SweepConfig {
            identity_primes: vec![2, 3, 5, 7, 11, 13, 17],
            wreath_primes: vec![3, 5, 7, 11],
            wreath_degrees: vec![2, 3],
            wreath_tops: vec!["cyclic".into(), "symmetric".into()],
            alt_r: 5,
            alt_primes: vec![3, 7, 11],
            zsigmondy_candidates: vec![(2, 5), (2, 11), (4, 3), (4, 7)],
            field_module_max_q: 2000,
            oracle_random_spaces: vec![(3, 4), (5, 3), (7, 2)],
            oracle_random_cases: 50,
            oracle_random_seed: 0x0fb5_7a11,
            include_rejections: true,
            j_table: (1..=10).map(|d| (d, 1)).collect(),
            max_v: orbdiam_core::space::DEFAULT_MAX_POINTS,
            max_group: orbdiam_core::group::DEFAULT_MAX_GROUP,
            oracle_cap: orbdiam_core::diameter::DEFAULT_ORACLE_CAP,
        }
    }

    /// A small sweep for demos and smoke tests.
    pub fn quick_suite() -> Self {
        SweepConfig {
            identity_primes: vec![2, 3, 5, 7],
            wreath_primes: vec![3, 5],
            wreath_degrees: vec![2],
            wreath_tops: vec!["symmetric".into()],
            alt_r: 5,
            alt_primes: vec![3],
            zsigmondy_candidates: vec![(2, 5)],
            field_module_max_q: 100,
            oracle_random_spaces: vec![(5, 2)],
            oracle_random_cases: 10,
            oracle_random_seed: 0x0fb5_7a11,
            include_rejections: true,
            j_table: (1..=10).map(|d| (d, 1)).collect(),
            max_v: orbdiam_core::space::DEFAULT_MAX_POINTS,
            max_group: orbdiam_core::group::DEFAULT_MAX_GROUP,
            oracle_cap: orbdiam_core::diameter::DEFAULT_ORACLE_CAP,
        }
    }

    /// An empty selection: no families, no records.
    pub fn empty() -> Self {
        SweepConfig {
            identity_primes: vec![],
            wreath_primes: vec![],
            wreath_degrees: vec![],
            wreath_tops: vec![],
            alt_r: 5,
            alt_primes: vec![],
            zsigmondy_candidates: vec![],
            field_module_max_q: 0,
            oracle_random_spaces: vec![],
            oracle_random_cases: 0,
            oracle_random_seed: 0,
            include_rejections: false,
            j_table: BTreeMap::new(),
            max_v: orbdiam_core::space::DEFAULT_MAX_POINTS,
            max_group: orbdiam_core::group::DEFAULT_MAX_GROUP,
            oracle_cap: orbdiam_core::diameter::DEFAULT_ORACLE_CAP,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.max_v == 0 || self.max_group == 0 || self.oracle_cap == 0 {
            anyhow::bail!("caps must be positive");
        }
        Ok(())
    }
}
