//! `key = value` search-config files.

use std::path::Path;

use anyhow::{bail, Context, Result};
use su2k_core::search::SearchConfig;

pub const KEYS: [&str; 10] = [
    "population_size",
    "mutation_prob",
    "crossovers_per_generation",
    "survivors",
    "generations",
    "base_length",
    "rng_seed",
    "exhaustive_budget",
    "leakage_penalty",
    "stop_distance",
];

/// Sets one field of `cfg` by name.
pub fn apply(cfg: &mut SearchConfig, key: &str, value: &str) -> Result<()> {
    fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
        value
            .parse()
            .ok()
            .with_context(|| format!("bad value '{value}' for {key}"))
    }
    match key {
        "population_size" => cfg.population_size = num(key, value)?,
        "mutation_prob" => cfg.mutation_prob = num(key, value)?,
        "crossovers_per_generation" => cfg.crossovers_per_generation = num(key, value)?,
        "survivors" => cfg.survivors = num(key, value)?,
        "generations" => cfg.generations = num(key, value)?,
        "base_length" => cfg.base_length = num(key, value)?,
        "rng_seed" => cfg.rng_seed = num(key, value)?,
        "exhaustive_budget" => cfg.exhaustive_budget = num(key, value)?,
        "leakage_penalty" => cfg.leakage_penalty = num(key, value)?,
        "stop_distance" => cfg.stop_distance = num(key, value)?,
        _ => bail!("unknown config key '{key}' (known: {})", KEYS.join(", ")),
    }
    Ok(())
}

/// Applies every `key = value` line of `text`. `#` starts a comment.
pub fn apply_text(cfg: &mut SearchConfig, text: &str) -> Result<()> {
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .with_context(|| format!("line {}: expected key = value", n + 1))?;
        apply(cfg, key.trim(), value.trim()).with_context(|| format!("line {}", n + 1))?;
    }
    Ok(())
}

pub fn load(path: &Path, cfg: &mut SearchConfig) -> Result<()> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    apply_text(cfg, &text).with_context(|| format!("in {}", path.display()))
}

/// Applies `key=value` overrides.
pub fn apply_overrides(cfg: &mut SearchConfig, sets: &[String]) -> Result<()> {
    for s in sets {
        let (key, value) = s
            .split_once('=')
            .with_context(|| format!("--set expects key=value, got '{s}'"))?;
        apply(cfg, key.trim(), value.trim())?;
    }
    Ok(())
}
