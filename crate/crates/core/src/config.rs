//! Search configuration files (TOML).
//!
//! ```text
//! degree = 5
//! target_transpositions = 2        # or "2-6" for a range
//! alpha_cycle_type = [3, 1, 1]     # optional
//! max_results = 100                # optional
//! dedup_mode = "centralizer"       # off | centralizer | full
//! worker_count = 4                 # optional, see WORKERS_ENV
//! deterministic_order = true
//! near_misses = false
//! ```

use serde::Deserialize;

use crate::search::{DedupMode, SearchConfig, SearchError, TranspositionTarget};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "MONOCOVER_WORKERS";

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum TargetField {
    Exact(usize),
    Range(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    degree: usize,
    target_transpositions: TargetField,
    alpha_cycle_type: Option<Vec<usize>>,
    max_results: Option<usize>,
    #[serde(default)]
    dedup_mode: DedupMode,
    worker_count: Option<usize>,
    #[serde(default = "yes")]
    deterministic_order: bool,
    #[serde(default)]
    near_misses: bool,
}

fn yes() -> bool {
    true
}

/// Worker count from [`WORKERS_ENV`], else the available parallelism.
pub fn default_worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn parse_range(s: &str) -> Result<TranspositionTarget, SearchError> {
    let bad = || SearchError::Config(format!("bad transposition range {s:?}"));
    let (lo, hi) = s.split_once('-').ok_or_else(bad)?;
    let min = lo.trim().parse().map_err(|_| bad())?;
    let max = hi.trim().parse().map_err(|_| bad())?;
    Ok(TranspositionTarget::Range { min, max })
}

/// Parses and validates a configuration file.
pub fn parse_search_config(text: &str) -> Result<SearchConfig, SearchError> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| SearchError::Config(e.to_string()))?;
    let target = match file.target_transpositions {
        TargetField::Exact(k) => TranspositionTarget::Exact(k),
        TargetField::Range(s) => parse_range(&s)?,
    };
    let cfg = SearchConfig {
        degree: file.degree,
        target,
        alpha_cycle_type: file.alpha_cycle_type,
        max_results: file.max_results,
        dedup: file.dedup_mode,
        worker_count: file.worker_count.unwrap_or_else(default_worker_count),
        deterministic_order: file.deterministic_order,
        near_misses: file.near_misses,
    };
    cfg.validate()?;
    Ok(cfg)
}
