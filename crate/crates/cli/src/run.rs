//! Targets, single compilations and their JSON records.

use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde::Serialize;
use su2k_core::anyon::{AnyonModel, Encoding, Mat, Mat2, Mat4};
use su2k_core::metrics::{hadamard, t_gate, ClassTarget};
use su2k_core::search::{
    class_objective, exhaustive_search, ga_search, gate_objective, solovay_kitaev,
    CompilationResult, Engine, SearchConfig,
};

/// Exhaustive search is used up to this length when no engine is given.
pub fn default_threshold(inverses: bool) -> usize {
    if inverses {
        7
    } else {
        13
    }
}

#[derive(Debug, Clone)]
pub enum Target {
    Gate { name: String, matrix: Mat2 },
    Class { name: String, target: ClassTarget },
}

impl Target {
    pub fn name(&self) -> &str {
        match self {
            Target::Gate { name, .. } | Target::Class { name, .. } => name,
        }
    }

    pub fn encoding(&self) -> Encoding {
        match self {
            Target::Gate { .. } => Encoding::OneQubit,
            Target::Class { .. } => Encoding::TwoQubit,
        }
    }

    /// `H`, `T`, `CNOT`, `SWAP`, or `custom` with a matrix file (2×2 gate or
    /// 4×4 gate whose local class is the target).
    pub fn parse(name: &str, matrix: Option<&Path>) -> Result<Target> {
        let gate = |name: &str, matrix| Target::Gate {
            name: name.into(),
            matrix,
        };
        let class = |name: &str, target| Target::Class {
            name: name.into(),
            target,
        };
        Ok(match name.to_ascii_uppercase().as_str() {
            "H" => gate("H", hadamard()),
            "T" => gate("T", t_gate()),
            "CNOT" => class("CNOT", ClassTarget::CNOT),
            "SWAP" => class("SWAP", ClassTarget::SWAP),
            "CUSTOM" => {
                let path = matrix.context("--target custom needs --matrix FILE")?;
                let rows = read_matrix(path)?;
                match rows.len() {
                    2 => gate("custom", Mat2::from_fn(|i, j| rows[i][j])),
                    4 => {
                        let m = Mat4::from_fn(|i, j| rows[i][j]);
                        class(
                            "custom",
                            ClassTarget::of_gate(&m)
                                .map_err(|e| anyhow::anyhow!("custom target: {e}"))?,
                        )
                    }
                    n => bail!("custom target must be 2x2 or 4x4, got {n} rows"),
                }
            }
            _ => bail!("unknown target '{name}' (H, T, CNOT, SWAP, custom)"),
        })
    }
}

/// Whitespace-separated complex entries (`a+bi`), one matrix row per line.
pub fn read_matrix(path: &Path) -> Result<Vec<Vec<Complex64>>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rows: Vec<Vec<Complex64>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| Complex64::from_str(t).map_err(|_| anyhow::anyhow!("bad entry '{t}'")))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        bail!("{}: matrix must be square", path.display());
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct RunSpec {
    pub k: u32,
    pub target: Target,
    pub engine: Engine,
    /// Word length; the level-0 length for Solovay-Kitaev.
    pub length: usize,
    pub sk_level: Option<u32>,
    pub inverses: bool,
    pub cfg: SearchConfig,
}

impl RunSpec {
    pub fn encoding(&self) -> Encoding {
        self.target.encoding()
    }

    pub fn validate(&self) -> Result<()> {
        if self.engine == Engine::Sk {
            if self.encoding() != Encoding::OneQubit {
                bail!("the sk engine compiles one-qubit gates only");
            }
            if !self.inverses {
                bail!("the sk engine needs inverse letters");
            }
            if self.sk_level.is_none() {
                bail!("the sk engine needs --sk-level");
            }
        }
        if self.length == 0 {
            bail!("length must be at least 1");
        }
        Ok(())
    }
}

/// Runs one compilation. Search errors (including budget refusals) are kept
/// as [`su2k_core::search::SearchError`] inside the returned error.
pub fn compile(spec: &RunSpec) -> Result<(CompilationResult, u32)> {
    spec.validate()?;
    let model = AnyonModel::new(spec.k)?;
    let label = model.qubit_label().0;
    let result = match &spec.target {
        Target::Gate { matrix, .. } => {
            let gens = model.one_qubit_generators().with_inverses(spec.inverses);
            let obj = gate_objective(*matrix);
            match spec.engine {
                Engine::Exhaustive => exhaustive_search(&gens, spec.length, &obj, &spec.cfg)?,
                Engine::Ga => ga_search(&gens, spec.length, &obj, &spec.cfg)?,
                Engine::Sk => {
                    let cfg = SearchConfig {
                        base_length: spec.length,
                        ..spec.cfg.clone()
                    };
                    solovay_kitaev(matrix, spec.sk_level.unwrap_or(0), &gens, &cfg)?
                }
            }
        }
        Target::Class { target, .. } => {
            let gens = model.two_qubit_generators().with_inverses(spec.inverses);
            let obj = class_objective(*target, spec.cfg.leakage_penalty);
            match spec.engine {
                Engine::Exhaustive => exhaustive_search(&gens, spec.length, &obj, &spec.cfg)?,
                Engine::Ga => ga_search(&gens, spec.length, &obj, &spec.cfg)?,
                Engine::Sk => unreachable!("rejected by validate"),
            }
        }
    };
    Ok((result, label))
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigRecord {
    pub population_size: usize,
    pub mutation_prob: f64,
    pub crossovers_per_generation: usize,
    pub survivors: usize,
    pub generations: usize,
    pub base_length: usize,
    pub rng_seed: u64,
    pub exhaustive_budget: u64,
    pub leakage_penalty: f64,
    pub stop_distance: f64,
}

impl From<&SearchConfig> for ConfigRecord {
    fn from(c: &SearchConfig) -> Self {
        ConfigRecord {
            population_size: c.population_size,
            mutation_prob: c.mutation_prob,
            crossovers_per_generation: c.crossovers_per_generation,
            survivors: c.survivors,
            generations: c.generations,
            base_length: c.base_length,
            rng_seed: c.rng_seed,
            exhaustive_budget: c.exhaustive_budget,
            leakage_penalty: c.leakage_penalty,
            stop_distance: c.stop_distance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub model_k: u32,
    pub qubit_label: u32,
    pub encoding: String,
    pub target: String,
    pub engine: String,
    pub length: usize,
    pub sk_level: Option<u32>,
    pub inverses: bool,
    pub seed: u64,
    pub word: String,
    pub distance: f64,
    pub score: f64,
    pub m11: Option<f64>,
    #[serde(rename = "dU")]
    pub d_u: Option<f64>,
    pub evaluations: u64,
    pub config: ConfigRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl ResultRecord {
    pub fn new(spec: &RunSpec, label: u32, r: &CompilationResult, timing: bool) -> Self {
        ResultRecord {
            model_k: spec.k,
            qubit_label: label,
            encoding: spec.encoding().to_string(),
            target: spec.target.name().to_string(),
            engine: r.engine.to_string(),
            length: r.word.len(),
            sk_level: r.sk_level,
            inverses: spec.inverses,
            seed: spec.cfg.rng_seed,
            word: r.word.to_string(),
            distance: r.distance,
            score: r.score,
            m11: r.leakage.map(|l| l.m11),
            d_u: r.leakage.map(|l| l.d_u),
            evaluations: r.evaluations,
            config: ConfigRecord::from(&spec.cfg),
            wall_ms: timing.then_some(r.wall_time.as_secs_f64() * 1e3),
        }
    }
}

/// `re±imi` with 8 fractional digits; values that round to zero print as 0.
pub fn fmt_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-9 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re:.8}{sign}{:.8}i", im.abs())
}

pub fn fmt_matrix<const D: usize>(m: &Mat<D>) -> String {
    let mut out = String::new();
    for i in 0..D {
        let row: Vec<String> = (0..D)
            .map(|j| format!("{:>24}", fmt_complex(m[(i, j)])))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_format() {
        assert_eq!(
            fmt_complex(Complex64::new(-0.781831482468, 0.623489801859)),
            "-0.78183148+0.62348980i"
        );
        assert_eq!(
            fmt_complex(Complex64::new(-1e-17, -1e-12)),
            "0.00000000+0.00000000i"
        );
        assert_eq!(
            fmt_complex(Complex64::new(0.5, -0.25)),
            "0.50000000-0.25000000i"
        );
    }

    #[test]
    fn target_names() {
        assert_eq!(
            Target::parse("h", None).unwrap().encoding(),
            Encoding::OneQubit
        );
        assert_eq!(
            Target::parse("SWAP", None).unwrap().encoding(),
            Encoding::TwoQubit
        );
        assert!(Target::parse("custom", None).is_err());
        assert!(Target::parse("X", None).is_err());
    }
}
