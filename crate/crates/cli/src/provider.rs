//! Spectrum tables served from the cache when possible.

use std::cell::Cell;

use log::{debug, warn};
use rabi_core::eigensolver::adaptive_spectrum;
use rabi_core::{Options, ParityClass, Record, Spectrum};

use crate::cache::{CacheKey, Lookup, SpectrumCache};
use crate::config::RunConfig;
use crate::error::Result;

/// Hands out spectrum tables and counts how often the eigensolver had to run.
#[derive(Debug, Default)]
pub struct SpectrumProvider {
    cache: Option<SpectrumCache>,
    solver_calls: Cell<usize>,
}

impl SpectrumProvider {
    pub fn new(cache: Option<SpectrumCache>) -> Self {
        Self {
            cache,
            solver_calls: Cell::new(0),
        }
    }

    pub fn for_config(config: &RunConfig) -> Self {
        Self::new(config.cache_dir.as_ref().map(SpectrumCache::new))
    }

    /// Number of [`adaptive_spectrum`] invocations so far, one per parity
    /// class not found in the cache.
    pub fn solver_calls(&self) -> usize {
        self.solver_calls.get()
    }

    pub fn table(&self, config: &RunConfig, max_label: usize) -> Result<Spectrum> {
        let opts = config.solver_options();
        let plus = self.records(ParityClass::Plus, config, max_label, &opts)?;
        let minus = self.records(ParityClass::Minus, config, max_label, &opts)?;
        Ok(Spectrum::from_records(
            config.params,
            opts.trunc_tol,
            plus,
            minus,
        )?)
    }

    fn records(
        &self,
        parity: ParityClass,
        config: &RunConfig,
        max_label: usize,
        opts: &Options,
    ) -> Result<Vec<Record>> {
        let key = CacheKey::new(
            config.params.g(),
            config.params.delta(),
            parity,
            opts.eigen_tol,
            opts.trunc_tol,
            max_label,
        );
        if let Some(cache) = &self.cache {
            match cache.load(&key) {
                Lookup::Hit(records) => {
                    debug!(
                        "{parity} spectrum read from {}",
                        cache.payload_path(&key).display()
                    );
                    return Ok(records);
                }
                Lookup::Miss => {}
                Lookup::Corrupt(why) => warn!(
                    "discarding cache entry {}: {why}; recomputing",
                    cache.payload_path(&key).display()
                ),
            }
        }
        self.solver_calls.set(self.solver_calls.get() + 1);
        let records = adaptive_spectrum(parity, &config.params, max_label, opts)?;
        if let Some(cache) = &self.cache {
            cache.store(&key, &records)?;
        }
        Ok(records)
    }
}
