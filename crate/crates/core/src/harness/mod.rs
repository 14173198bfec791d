//! Experiment harness: group dispatch, `F` tables, caching and suites.

mod cache;
mod group;
mod growth;
mod suites;
mod table;

pub use cache::{cache_key, Cache, CacheRecord, CacheStats, CACHE_ENV, DEFAULT_CACHE_DIR};
pub use group::{compute_k, heisenberg_matrix, verify_k, Element, GroupId, KValue, Variant};
pub use growth::{compute_growth, k_cached};
pub use suites::{
    ideals_of_prime_norm, reduced_grig_words, sl_order_brute, verify_suite, Check, Report, Status,
    Suite,
};
pub use table::{GrowthRow, GrowthTable, Sample, CSV_HEADER};
