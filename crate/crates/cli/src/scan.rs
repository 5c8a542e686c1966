//! Sweep driver: fundamental-discriminant enumeration, split filtering,
//! cached parallel evaluation.

use std::path::PathBuf;

use anyhow::Context;
use rayon::prelude::*;

use quadlog_core::quadfield::{is_fundamental, kronecker_i64};

use crate::cache::Cache;
use crate::report::{compute_pair, ResultRecord};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub d_min: i64,
    pub d_max: i64,
    pub ells: Vec<u64>,
    pub m: u32,
    pub m_max: u32,
    pub format: OutputFormat,
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub sort: bool,
}

impl ScanConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.d_min > self.d_max {
            anyhow::bail!("empty discriminant range");
        }
        if self.ells.is_empty() {
            anyhow::bail!("empty ell set");
        }
        for &l in &self.ells {
            quadlog_core::padic::require_odd_prime(l)?;
        }
        if self.m < 2 {
            anyhow::bail!("precision must be at least 2");
        }
        Ok(())
    }
}

/// Fundamental discriminants in [lo, hi], ascending |Δ|, negatives first
/// at equal absolute value.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<i64> {
    let bound = lo.abs().max(hi.abs());
    let mut out = Vec::new();
    for a in 3..=bound {
        for d in [-a, a] {
            if d >= lo && d <= hi && is_fundamental(d) {
                out.push(d);
            }
        }
    }
    out
}

/// All split pairs of the configured ranges, in enumeration order.
pub fn split_pairs(cfg: &ScanConfig) -> Vec<(i64, u64)> {
    let mut pairs = Vec::new();
    for d in fundamental_discriminants(cfg.d_min, cfg.d_max) {
        for &l in &cfg.ells {
            if kronecker_i64(d, l as i64) == 1 {
                pairs.push((d, l));
            }
        }
    }
    pairs
}

/// Run the sweep: cached pairs are reused, the rest are computed in a
/// worker pool (results are pure, so the output set is independent of the
/// parallelism degree).
pub fn run_scan(cfg: &ScanConfig) -> anyhow::Result<Vec<ResultRecord>> {
    cfg.validate()?;
    let cache = match &cfg.cache {
        Some(p) => Some(Cache::open(p)?),
        None => None,
    };
    let pairs = split_pairs(cfg);

    let compute = |&(delta, ell): &(i64, u64)| -> anyhow::Result<ResultRecord> {
        let key = (delta, ell, cfg.m);
        if let Some(c) = &cache {
            if let Some(hit) = c.get(&key) {
                return Ok(hit.clone());
            }
        }
        let report = compute_pair(delta, ell, cfg.m, cfg.m_max)
            .with_context(|| format!("pair ({delta}, {ell})"))?;
        let record = report.to_record();
        if let Some(c) = &cache {
            c.append(key, &record)?;
        }
        Ok(record)
    };

    let mut records: Vec<ResultRecord> = if let Some(jobs) = cfg.jobs {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .context("worker pool")?;
        pool.install(|| pairs.par_iter().map(compute).collect::<Result<_, _>>())?
    } else {
        pairs.par_iter().map(compute).collect::<Result<_, _>>()?
    };

    if cfg.sort {
        records.sort_by_key(|r| r.sort_key());
    }
    Ok(records)
}
