//! Config-driven driver for the fluxpulse simulator: parses a JSON run
//! config, runs one subcommand and writes CSV tables plus a manifest.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;
use std::sync::atomic::Ordering;

use serde::Serialize;

pub use cache::{Cache, CACHE_SCHEMA_VERSION};
pub use commands::Subcommand;
pub use config::{parse_config, parse_config_str, Parsed, RunConfig};
pub use error::{CliError, ConfigError};
pub use output::{fmt_f64, Manifest};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "FLUXPULSE_WORKERS";
/// Cache location inside the output directory.
pub const CACHE_DIR_NAME: &str = ".cache";

#[derive(Debug, Clone)]
pub struct Invocation {
    pub subcommand: Subcommand,
    pub config: PathBuf,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub no_cache: bool,
}

/// What a successful run did, reported on stderr.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub status: &'static str,
    pub subcommand: &'static str,
    pub output_dir: String,
    pub files: usize,
    pub eigensolves: usize,
    pub cache_hits: usize,
    pub cache_misses: usize,
    pub cache_quarantined: usize,
    pub cache_write_failures: usize,
}

/// Output directory an invocation would use, if the config can be read.
pub fn output_dir(inv: &Invocation) -> Option<PathBuf> {
    inv.out.clone().or_else(|| parse_config(&inv.config).ok().map(|p| PathBuf::from(p.config.output_dir)))
}

fn resolve_workers(flag: Option<usize>, config: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        return v.trim().parse::<usize>().ok().filter(|&n| n > 0).map(Some).ok_or_else(|| {
            ConfigError::Invalid {
                key: WORKERS_ENV.into(),
                kind: "out_of_range",
                reason: format!("must be a positive integer, got `{v}`"),
                line: None,
            }
            .into()
        });
    }
    Ok(config)
}

pub fn run(inv: &Invocation) -> Result<RunSummary, CliError> {
    let Parsed { mut config, mut defaults } = parse_config(&inv.config)?;
    if let Some(seed) = inv.seed {
        config.noise.seed = seed;
        defaults.remove("noise.seed");
    }
    if let Some(out) = &inv.out {
        config.output_dir = out.display().to_string();
        defaults.remove("output_dir");
    }
    if inv.workers == Some(0) {
        return Err(ConfigError::Invalid {
            key: "--workers".into(),
            kind: "out_of_range",
            reason: "must be >= 1".into(),
            line: None,
        }
        .into());
    }
    let workers = resolve_workers(inv.workers, config.workers)?;

    // the hash identifies the computation, not where or how wide it ran
    let mut hashed = config.clone();
    hashed.output_dir = String::new();
    hashed.cache_dir = None;
    hashed.workers = None;
    let config_hash = output::sha256_hex(serde_json::to_string(&hashed).expect("config serializes").as_bytes());

    let root = PathBuf::from(&config.output_dir);
    let mut out = output::OutputDir::create(&root)?;
    let cache_dir = config.cache_dir.as_ref().map_or_else(|| root.join(CACHE_DIR_NAME), PathBuf::from);
    let cache = if inv.no_cache { None } else { Some(Cache::open(cache_dir)?) };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::io(&root, std::io::Error::other(e)))?;

    let ctx = commands::Context::new(&config, cache.as_ref());
    let tables = pool.install(|| ctx.run(inv.subcommand))?;
    for (name, table) in &tables {
        out.write_table(name, table)?;
    }
    let manifest = out.finish(Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        subcommand: inv.subcommand.name().into(),
        config_hash,
        seed: config.noise.seed,
        defaults,
        files: Vec::new(),
    })?;

    let stat = |f: fn(&cache::CacheStats) -> &std::sync::atomic::AtomicUsize| {
        cache.as_ref().map_or(0, |c| f(&c.stats).load(Ordering::Relaxed))
    };
    Ok(RunSummary {
        status: "ok",
        subcommand: inv.subcommand.name(),
        output_dir: root.display().to_string(),
        files: manifest.files.len(),
        eigensolves: ctx.eigensolve_count(),
        cache_hits: stat(|s| &s.hits),
        cache_misses: stat(|s| &s.misses),
        cache_quarantined: stat(|s| &s.quarantined),
        cache_write_failures: stat(|s| &s.write_failures),
    })
}
