//! Sweeps over models, lengths (or SK levels) and seeds, written as CSV.

use std::io::Write;
use std::ops::RangeInclusive;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use su2k_core::anyon::{AnyonModel, Encoding};
use su2k_core::search::{solovay_kitaev_levels, Engine, SearchConfig};

use crate::run::{compile, RunSpec, Target};

pub const HEADER: [&str; 9] = [
    "model_k", "encoding", "engine", "length", "seed", "distance", "m11", "dU", "wall_ms",
];

/// Inclusive `a..b`, a comma list, or a single value.
pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().context("range start")?;
        let b: u64 = b
            .trim_start_matches('=')
            .trim()
            .parse()
            .context("range end")?;
        if a > b {
            bail!("empty range '{text}'");
        }
        return Ok(RangeInclusive::new(a, b).collect());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .with_context(|| format!("bad number '{t}'"))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub model_k: u32,
    pub encoding: String,
    pub engine: String,
    pub length: usize,
    pub seed: u64,
    pub distance: Option<f64>,
    pub m11: Option<f64>,
    #[serde(rename = "dU")]
    pub d_u: Option<f64>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone)]
pub enum Axis {
    Lengths(Vec<usize>),
    SkLevels(Vec<u32>),
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub models: Vec<u32>,
    pub target: Target,
    pub axis: Axis,
    pub seeds: Vec<u64>,
    pub inverses: bool,
    /// Longest length searched exhaustively; GA above it.
    pub threshold: usize,
    pub cfg: SearchConfig,
}

enum Job {
    /// One exhaustive run shared by every seed.
    Exhaustive {
        k: u32,
        length: usize,
    },
    Ga {
        k: u32,
        length: usize,
        seed: u64,
    },
    Sk {
        k: u32,
        seed: u64,
    },
}

fn failed_row(
    k: u32,
    enc: Encoding,
    engine: Engine,
    length: usize,
    seed: u64,
    err: &str,
) -> SweepRow {
    eprintln!("k={k} {engine} length {length} seed {seed}: {err}");
    SweepRow {
        model_k: k,
        encoding: enc.to_string(),
        engine: engine.to_string(),
        length,
        seed,
        distance: None,
        m11: None,
        d_u: None,
        wall_ms: 0.0,
    }
}

impl SweepSpec {
    fn run_job(&self, job: &Job) -> Vec<SweepRow> {
        let enc = self.target.encoding();
        let spec = |k, engine, length, seed| RunSpec {
            k,
            target: self.target.clone(),
            engine,
            length,
            sk_level: None,
            inverses: self.inverses,
            cfg: SearchConfig {
                rng_seed: seed,
                ..self.cfg.clone()
            },
        };
        let row = |k, r: &su2k_core::search::CompilationResult, seed| SweepRow {
            model_k: k,
            encoding: enc.to_string(),
            engine: r.engine.to_string(),
            length: r.word.len(),
            seed,
            distance: Some(r.distance),
            m11: r.leakage.map(|l| l.m11),
            d_u: r.leakage.map(|l| l.d_u),
            wall_ms: r.wall_time.as_secs_f64() * 1e3,
        };
        match *job {
            Job::Exhaustive { k, length } => {
                match compile(&spec(k, Engine::Exhaustive, length, 0)) {
                    Ok((r, _)) => self.seeds.iter().map(|&s| row(k, &r, s)).collect(),
                    Err(e) => self
                        .seeds
                        .iter()
                        .map(|&s| {
                            failed_row(k, enc, Engine::Exhaustive, length, s, &format!("{e:#}"))
                        })
                        .collect(),
                }
            }
            Job::Ga { k, length, seed } => match compile(&spec(k, Engine::Ga, length, seed)) {
                Ok((r, _)) => vec![row(k, &r, seed)],
                Err(e) => vec![failed_row(
                    k,
                    enc,
                    Engine::Ga,
                    length,
                    seed,
                    &format!("{e:#}"),
                )],
            },
            Job::Sk { k, seed } => {
                let Axis::SkLevels(levels) = &self.axis else {
                    unreachable!()
                };
                let Target::Gate { matrix, .. } = &self.target else {
                    unreachable!()
                };
                let top = levels.iter().copied().max().unwrap_or(0);
                let cfg = SearchConfig {
                    rng_seed: seed,
                    ..self.cfg.clone()
                };
                let result = AnyonModel::new(k)
                    .map_err(anyhow::Error::from)
                    .and_then(|m| {
                        let gens = m.one_qubit_generators().with_inverses(self.inverses);
                        Ok(solovay_kitaev_levels(matrix, top, &gens, &cfg)?)
                    });
                match result {
                    Ok(all) => levels
                        .iter()
                        .map(|&n| row(k, &all[n as usize], seed))
                        .collect(),
                    Err(e) => levels
                        .iter()
                        .map(|&n| {
                            let length = cfg.base_length * 5usize.pow(n);
                            failed_row(k, enc, Engine::Sk, length, seed, &format!("{e:#}"))
                        })
                        .collect(),
                }
            }
        }
    }

    fn jobs(&self) -> Result<Vec<Job>> {
        let mut jobs = Vec::new();
        for &k in &self.models {
            match &self.axis {
                Axis::Lengths(lengths) => {
                    for &length in lengths {
                        if length <= self.threshold {
                            jobs.push(Job::Exhaustive { k, length });
                        } else {
                            jobs.extend(self.seeds.iter().map(|&seed| Job::Ga { k, length, seed }));
                        }
                    }
                }
                Axis::SkLevels(_) => {
                    if !matches!(self.target, Target::Gate { .. }) {
                        bail!("SK-level sweeps need a one-qubit target");
                    }
                    jobs.extend(self.seeds.iter().map(|&seed| Job::Sk { k, seed }));
                }
            }
        }
        Ok(jobs)
    }

    /// Runs every point concurrently and returns rows in job order.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.cfg.validate()?;
        let jobs = self.jobs()?;
        let rows: Vec<Vec<SweepRow>> = jobs.par_iter().map(|j| self.run_job(j)).collect();
        Ok(rows.into_iter().flatten().collect())
    }
}

pub fn write_csv(rows: &[SweepRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(HEADER)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
