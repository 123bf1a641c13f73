//! Braidword compilers: pruned exhaustive enumeration, a genetic search, and
//! a Solovay-Kitaev recursion seeded by the genetic search.

mod exhaustive;
mod ga;
mod gc;
mod sk;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::anyon::{Braidword, GeneratorSet, Mat, Mat2, Mat5};
use crate::metrics::{
    braid_class_distance, leakage_metrics, phase_invariant_distance, ClassTarget, LeakageReport,
};

pub use exhaustive::{candidate_count, exhaustive_search};
pub use ga::{ga_search, ga_search_traced, GaTrace};
pub use gc::{gc_decompose, rotation_axis_angle, GcPair};
pub use sk::{solovay_kitaev, solovay_kitaev_levels};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("{candidates} candidates exceed the exhaustive budget of {budget}; use GA")]
    BudgetExceeded { candidates: u128, budget: u64 },
    #[error("invalid search config: {0}")]
    InvalidConfig(String),
    #[error("group-commutator decomposition is degenerate for a rotation by 2π (-I)")]
    DegenerateCommutator,
    #[error("Solovay-Kitaev needs a one-qubit generator set with inverses")]
    MissingInverses,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub population_size: usize,
    /// Per-letter substitution probability.
    pub mutation_prob: f64,
    pub crossovers_per_generation: usize,
    pub survivors: usize,
    pub generations: usize,
    /// Word length of the level-0 approximation in Solovay-Kitaev.
    pub base_length: usize,
    pub rng_seed: u64,
    /// Maximum number of words an exhaustive search may enumerate.
    pub exhaustive_budget: u64,
    /// Weight of `d_U` added to two-qubit class objectives.
    pub leakage_penalty: f64,
    /// The GA stops early once the best score is at or below this.
    pub stop_distance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            population_size: 1000,
            mutation_prob: 0.03,
            crossovers_per_generation: 500,
            survivors: 200,
            generations: 200,
            base_length: 30,
            rng_seed: 0,
            exhaustive_budget: 2_000_000_000,
            leakage_penalty: 1e-4,
            stop_distance: 0.0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: &str| Err(SearchError::InvalidConfig(msg.to_string()));
        if self.population_size == 0
            || self.crossovers_per_generation == 0
            || self.survivors == 0
            || self.generations == 0
        {
            return bad("all counts must be positive");
        }
        if self.survivors > self.population_size {
            return bad("survivors must not exceed population_size");
        }
        if self.base_length == 0 {
            return bad("base_length must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.mutation_prob) {
            return bad("mutation_prob must lie in [0, 1]");
        }
        if self.leakage_penalty.is_nan() || self.leakage_penalty < 0.0 {
            return bad("leakage_penalty must be non-negative");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Exhaustive,
    Ga,
    Sk,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Exhaustive => "exhaustive",
            Engine::Ga => "ga",
            Engine::Sk => "sk",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Engine::Exhaustive),
            "ga" => Ok(Engine::Ga),
            "sk" => Ok(Engine::Sk),
            _ => Err(format!("unknown engine '{s}'")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CompilationResult {
    pub word: Braidword,
    /// Figure of merit of `word` against the target.
    pub distance: f64,
    /// Value the engine minimized (`distance` plus any penalty).
    pub score: f64,
    /// Present for two-qubit words.
    pub leakage: Option<LeakageReport>,
    pub engine: Engine,
    pub sk_level: Option<u32>,
    pub wall_time: Duration,
    /// Number of objective evaluations.
    pub evaluations: u64,
}

impl CompilationResult {
    /// Equality on everything except wall time.
    pub fn same_outcome(&self, other: &CompilationResult) -> bool {
        self.word == other.word
            && self.distance.to_bits() == other.distance.to_bits()
            && self.score.to_bits() == other.score.to_bits()
            && self.leakage == other.leakage
            && self.engine == other.engine
            && self.sk_level == other.sk_level
            && self.evaluations == other.evaluations
    }
}

/// What a search minimizes. `distance` is the figure of merit reported
/// for the winning word; `score` may add penalty terms to it.
pub trait Objective<const D: usize>: Sync {
    fn score(&self, m: &Mat<D>) -> f64;

    fn distance(&self, m: &Mat<D>) -> f64 {
        self.score(m)
    }
}

impl<const D: usize, F: Fn(&Mat<D>) -> f64 + Sync> Objective<D> for F {
    fn score(&self, m: &Mat<D>) -> f64 {
        self(m)
    }
}

/// Phase-invariant distance to a one-qubit target.
#[derive(Debug, Clone, Copy)]
pub struct GateObjective {
    pub target: Mat2,
}

impl Objective<2> for GateObjective {
    fn score(&self, m: &Mat2) -> f64 {
        phase_invariant_distance(m, &self.target)
    }
}

pub fn gate_objective(target: Mat2) -> GateObjective {
    GateObjective { target }
}

/// Class distance of the computational block, plus `penalty · d_U` in the
/// score. Near-singular blocks score `+∞`.
#[derive(Debug, Clone, Copy)]
pub struct ClassObjective {
    pub target: ClassTarget,
    pub penalty: f64,
}

impl Objective<5> for ClassObjective {
    fn score(&self, m: &Mat5) -> f64 {
        let d = self.distance(m);
        if self.penalty > 0.0 && d.is_finite() {
            d + self.penalty * leakage_metrics(m).d_u
        } else {
            d
        }
    }

    fn distance(&self, m: &Mat5) -> f64 {
        braid_class_distance(m, &self.target).unwrap_or(f64::INFINITY)
    }
}

pub fn class_objective(target: ClassTarget, penalty: f64) -> ClassObjective {
    ClassObjective { target, penalty }
}

pub(crate) fn leakage_of<const D: usize>(m: &Mat<D>) -> Option<LeakageReport> {
    (D == 5).then(|| leakage_metrics(&Mat5::from_fn(|i, j| m[(i, j)])))
}

/// Matrices of each alphabet letter, indexed like `gens.alphabet()`.
pub(crate) fn letter_table<const D: usize>(gens: &GeneratorSet<D>) -> Vec<Mat<D>> {
    gens.alphabet()
        .into_iter()
        .map(|l| {
            *gens
                .letter_matrix(l)
                .expect("alphabet letters are in range")
        })
        .collect()
}

pub(crate) fn word_from_indices<const D: usize>(gens: &GeneratorSet<D>, idx: &[u8]) -> Braidword {
    let alphabet = gens.alphabet();
    Braidword::from_letters(
        gens.len(),
        idx.iter().map(|&i| alphabet[i as usize]).collect(),
    )
}

/// Independent seed for sub-search `index` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random stream `stream` of the generator keyed by `seed`.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        SearchConfig::default().validate().unwrap();
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let cfg = SearchConfig {
            survivors: 2000,
            ..SearchConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = SearchConfig {
            mutation_prob: 1.5,
            ..SearchConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = SearchConfig {
            base_length: 0,
            ..SearchConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::HashSet<_> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn engine_names_round_trip() {
        for e in [Engine::Exhaustive, Engine::Ga, Engine::Sk] {
            assert_eq!(e.to_string().parse::<Engine>().unwrap(), e);
        }
    }
}
