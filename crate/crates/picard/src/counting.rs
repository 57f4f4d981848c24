//! Parallel point counts with caching and the desk-scale policy.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use picard_core::count::{trace_from_count, ChartCounter};
use picard_core::ffield::Field;
use picard_core::forms::{IntForm, ModForm};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cache::CacheStore;
use crate::error::{Error, Result};

/// Largest `q^2` counted without `--deep`.
pub const DESK_LIMIT: u128 = 4_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Computed,
    Cached,
    External,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Computed => "computed",
            Source::Cached => "cached",
            Source::External => "external",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRecord {
    pub p: u64,
    pub d: u32,
    pub n: BigUint,
    pub trace: BigInt,
    pub fingerprint: String,
    pub source: Source,
    /// Time spent counting; zero unless `source` is `Computed`.
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    pub p: u64,
    pub records: Vec<CountRecord>,
}

impl CountSeries {
    pub fn traces(&self) -> Vec<BigInt> {
        self.records.iter().map(|r| r.trace.clone()).collect()
    }

    pub fn counts(&self) -> Vec<BigUint> {
        self.records.iter().map(|r| r.n.clone()).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    /// Count beyond [`DESK_LIMIT`].
    pub deep: bool,
    pub threads: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { deep: false, threads: std::thread::available_parallelism().map_or(1, |n| n.get()) }
    }
}

/// Hex SHA-256 of the canonical text of `f6 mod p`.
pub fn fingerprint(f6: &ModForm) -> String {
    hex::encode(Sha256::digest(f6.to_string().as_bytes()))
}

/// `#S(F_q)`, with the affine rows shared out among `threads` workers.
pub fn count_parallel(counter: &ChartCounter, threads: usize) -> BigUint {
    let rows = counter.row_count();
    let threads = threads.clamp(1, 64) as u64;
    let chunk = (rows / (threads * 16)).max(1);
    let next = AtomicU64::new(0);
    let affine: i128 = std::thread::scope(|s| {
        let workers: Vec<_> = (0..threads)
            .map(|_| {
                s.spawn(|| {
                    let mut sum = 0i128;
                    loop {
                        let start = next.fetch_add(chunk, Ordering::Relaxed);
                        if start >= rows {
                            return sum;
                        }
                        sum += counter.affine_rows(start..(start + chunk).min(rows));
                    }
                })
            })
            .collect();
        workers.into_iter().map(|w| w.join().expect("counting worker panicked")).sum()
    });
    counter.count_from_sum(affine + counter.boundary_sums().total())
}

fn q_squared(p: u64, d: u32) -> Option<u128> {
    (p as u128).checked_pow(2 * d)
}

/// `N_1..N_dmax` for `f6` over `F_p`, reusing the cache and external values.
///
/// A count is taken from the cache, else computed when `q^2` is within the
/// desk limit (or `deep` is set), else taken from `external`. Computed or
/// cached values are checked against any external value for the same `d`.
pub fn count_series(
    f6: &IntForm,
    p: u64,
    dmax: u32,
    cache: &mut CacheStore,
    external: &BTreeMap<u32, BigUint>,
    opts: CountOptions,
) -> Result<CountSeries> {
    let base = Arc::new(Field::prime(p)?);
    let g = f6.reduce_mod(&base);
    if g.is_zero() {
        return Err(picard_core::Error::ZeroReduction(p).into());
    }
    let fp = fingerprint(&g);
    let mut records = Vec::new();
    for d in 1..=dmax {
        let q2 = q_squared(p, d);
        let within = q2.is_some_and(|v| v <= DESK_LIMIT);
        let (n, source, ms) = if let Some(n) = cache.get(&fp, p, d) {
            (n.clone(), Source::Cached, 0)
        } else if within || opts.deep {
            let start = Instant::now();
            let counter = ChartCounter::new(&g, d)?;
            let n = count_parallel(&counter, opts.threads);
            let ms = start.elapsed().as_millis();
            cache.insert(&fp, p, d, &n)?;
            (n, Source::Computed, ms)
        } else if let Some(n) = external.get(&d) {
            (n.clone(), Source::External, 0)
        } else {
            return Err(Error::Policy { p, d, q2: q2.unwrap_or(u128::MAX) });
        };
        if let Some(ext) = external.get(&d) {
            if *ext != n {
                return Err(Error::Math(format!(
                    "N_{d} = {n} ({}) disagrees with the external value {ext}",
                    source.as_str()
                )));
            }
        }
        let q = BigUint::from(p).pow(d);
        let trace = trace_from_count(&n, &q)?;
        records.push(CountRecord { p, d, n, trace, fingerprint: fp.clone(), source, wall_time_ms: ms });
    }
    Ok(CountSeries { p, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use picard_core::forms::parse_int_form;

    fn ex1() -> IntForm {
        parse_int_form(
            "x^5*y + x^4*y^2 + 2*x^3*y^3 + x^2*y^4 + x*y^5 + 4*y^6 + 2*x^5*z + 2*x^4*z^2 + 4*x^3*z^3 + 2*x*z^5 + 4*z^6",
            6,
        )
        .unwrap()
    }

    #[test]
    fn series_then_cache() {
        let mut cache = CacheStore::in_memory();
        let opts = CountOptions { deep: false, threads: 3 };
        let s = count_series(&ex1(), 5, 3, &mut cache, &BTreeMap::new(), opts).unwrap();
        assert_eq!(s.counts(), [41u32, 751, 15626].map(BigUint::from));
        assert!(s.records.iter().all(|r| r.source == Source::Computed));
        assert_eq!(s.traces(), [15, 125, 0].map(BigInt::from));
        let again = count_series(&ex1(), 5, 3, &mut cache, &BTreeMap::new(), opts).unwrap();
        assert_eq!(again.counts(), s.counts());
        assert!(again.records.iter().all(|r| r.source == Source::Cached));
    }

    #[test]
    fn parallel_matches_serial() {
        let base = Arc::new(Field::prime(3).unwrap());
        let g = ex1().reduce_mod(&base);
        let counter = ChartCounter::new(&g, 5).unwrap();
        let serial = counter.count();
        for t in [1, 2, 7] {
            assert_eq!(count_parallel(&counter, t), serial);
        }
    }

    #[test]
    fn fingerprint_ignores_the_lift() {
        let base = Arc::new(Field::prime(5).unwrap());
        let shifted = ex1().add(&parse_int_form("5*x^6 - 10*y*z^5", 6).unwrap()).unwrap();
        assert_eq!(fingerprint(&ex1().reduce_mod(&base)), fingerprint(&shifted.reduce_mod(&base)));
        assert_ne!(fingerprint(&ex1().reduce_mod(&base)), fingerprint(&shifted.add(&ex1()).unwrap().reduce_mod(&base)));
    }

    #[test]
    fn policy_and_external_values() {
        let mut cache = CacheStore::in_memory();
        let opts = CountOptions { deep: false, threads: 2 };
        let mut ext = BTreeMap::new();
        // q^2 = 5^14 is past the desk limit
        let err = count_series(&ex1(), 5, 7, &mut cache, &ext, opts).unwrap_err();
        assert!(matches!(err, Error::Policy { d: 7, .. }));
        ext.insert(7, BigUint::from(6103312501u64));
        let s = count_series(&ex1(), 5, 7, &mut cache, &ext, opts).unwrap();
        assert_eq!(s.records[6].source, Source::External);
        assert_eq!(s.records[6].trace, BigInt::from(-203125));
        ext.insert(1, BigUint::from(42u8));
        assert!(matches!(count_series(&ex1(), 5, 7, &mut cache, &ext, opts), Err(Error::Math(_))));
        ext.clear();
        ext.insert(7, BigUint::from(1u8));
        assert!(matches!(count_series(&ex1(), 5, 7, &mut cache, &ext, opts), Err(Error::Math(_))));
    }

    #[test]
    fn even_prime_is_a_usage_error() {
        let err = count_series(&ex1(), 2, 1, &mut CacheStore::in_memory(), &BTreeMap::new(), CountOptions::default());
        assert_eq!(err.unwrap_err().exit_code(), 1);
    }
}
