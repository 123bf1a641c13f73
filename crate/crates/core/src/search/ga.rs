use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::{
    leakage_of, letter_table, stream_rng, word_from_indices, CompilationResult, Engine, Objective,
    SearchConfig, SearchError,
};
use crate::anyon::{GeneratorSet, Mat};

/// Best-so-far score after initialization and after each generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GaTrace {
    pub best_per_generation: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Individual {
    word: Vec<u8>,
    score: f64,
}

struct Evolver<'a, const D: usize, F: ?Sized> {
    mats: &'a [Mat<D>],
    objective: &'a F,
    length: usize,
    cfg: &'a SearchConfig,
}

impl<const D: usize, F: Objective<D> + ?Sized> Evolver<'_, D, F> {
    fn score(&self, word: &[u8]) -> f64 {
        let m = word
            .iter()
            .fold(Mat::<D>::identity(), |m, &a| self.mats[a as usize] * m);
        let s = self.objective.score(&m);
        if s.is_nan() {
            f64::INFINITY
        } else {
            s
        }
    }

    fn random_word(&self, rng: &mut impl Rng) -> Vec<u8> {
        let n = self.mats.len() as u8;
        (0..self.length).map(|_| rng.gen_range(0..n)).collect()
    }

    /// Replaces each letter with a different random letter with
    /// probability `mutation_prob`.
    fn mutate(&self, word: &mut [u8], rng: &mut impl Rng) {
        let n = self.mats.len() as u8;
        if n < 2 {
            return;
        }
        for letter in word.iter_mut() {
            if rng.gen_bool(self.cfg.mutation_prob) {
                let r = rng.gen_range(0..n - 1);
                *letter = if r >= *letter { r + 1 } else { r };
            }
        }
    }

    /// Single-point splice of two random parents, then mutation.
    fn offspring(&self, parents: &[Individual], rng: &mut impl Rng) -> Individual {
        let a = &parents[rng.gen_range(0..parents.len())].word;
        let b = &parents[rng.gen_range(0..parents.len())].word;
        let cut = rng.gen_range(0..=self.length);
        let mut word = Vec::with_capacity(self.length);
        word.extend_from_slice(&a[..cut]);
        word.extend_from_slice(&b[cut..]);
        self.mutate(&mut word, rng);
        let score = self.score(&word);
        Individual { word, score }
    }

    /// `count` offspring of `parents`, each from its own random stream.
    fn breed(
        &self,
        parents: &[Individual],
        generation: u64,
        first: u64,
        count: usize,
    ) -> Vec<Individual> {
        (0..count as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(self.cfg.rng_seed, (generation << 32) | (first + i));
                self.offspring(parents, &mut rng)
            })
            .collect()
    }
}

fn by_score(a: &Individual, b: &Individual) -> std::cmp::Ordering {
    a.score
        .total_cmp(&b.score)
        .then_with(|| a.word.cmp(&b.word))
}

/// Genetic search over words of exactly `length` letters.
///
/// Each generation breeds `crossovers_per_generation` offspring from the
/// population, keeps the best `survivors` distinct-scoring words of
/// population ∪ offspring, and refills the population with offspring of the
/// survivors. Returns the best word seen.
pub fn ga_search<const D: usize, F>(
    gens: &GeneratorSet<D>,
    length: usize,
    objective: &F,
    cfg: &SearchConfig,
) -> Result<CompilationResult, SearchError>
where
    F: Objective<D> + ?Sized,
{
    ga_search_traced(gens, length, objective, cfg).map(|(r, _)| r)
}

pub fn ga_search_traced<const D: usize, F>(
    gens: &GeneratorSet<D>,
    length: usize,
    objective: &F,
    cfg: &SearchConfig,
) -> Result<(CompilationResult, GaTrace), SearchError>
where
    F: Objective<D> + ?Sized,
{
    cfg.validate()?;
    if length == 0 {
        return Err(SearchError::InvalidConfig(
            "length must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let mats = letter_table(gens);
    let ev = Evolver {
        mats: &mats,
        objective,
        length,
        cfg,
    };

    let mut population: Vec<Individual> = (0..cfg.population_size as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.rng_seed, i);
            let word = ev.random_word(&mut rng);
            let score = ev.score(&word);
            Individual { word, score }
        })
        .collect();
    let mut evaluations = population.len() as u64;
    let mut best = population
        .iter()
        .min_by(|a, b| by_score(a, b))
        .cloned()
        .expect("non-empty");
    let mut history = vec![best.score];

    for generation in 1..=cfg.generations as u64 {
        if best.score <= cfg.stop_distance {
            break;
        }
        let children = ev.breed(&population, generation, 0, cfg.crossovers_per_generation);
        evaluations += children.len() as u64;
        population.extend(children);
        population.sort_by(by_score);
        // Words with the same score almost always share a matrix (free
        // cancellations, commuting letters); keep one of each.
        population.dedup_by(|a, b| (a.score - b.score).abs() <= 1e-12 * b.score);
        population.truncate(cfg.survivors);

        let refill = cfg.population_size - population.len();
        let children = ev.breed(
            &population,
            generation,
            cfg.crossovers_per_generation as u64,
            refill,
        );
        evaluations += children.len() as u64;
        population.extend(children);

        if let Some(b) = population.iter().min_by(|a, b| by_score(a, b)) {
            if by_score(b, &best).is_lt() {
                best = b.clone();
            }
        }
        history.push(best.score);
    }

    let word = word_from_indices(gens, &best.word);
    let matrix = best
        .word
        .iter()
        .fold(Mat::<D>::identity(), |m, &a| mats[a as usize] * m);
    Ok((
        CompilationResult {
            word,
            distance: objective.distance(&matrix),
            score: best.score,
            leakage: leakage_of(&matrix),
            engine: Engine::Ga,
            sk_level: None,
            wall_time: start.elapsed(),
            evaluations,
        },
        GaTrace {
            best_per_generation: history,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::{evaluate_braidword, AnyonModel, Braidword};
    use crate::metrics::{hadamard, ClassTarget};
    use crate::search::{class_objective, gate_objective};

    fn small_cfg(seed: u64) -> SearchConfig {
        SearchConfig {
            population_size: 200,
            crossovers_per_generation: 100,
            survivors: 40,
            generations: 40,
            rng_seed: seed,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let gens = AnyonModel::new(5).unwrap().one_qubit_generators();
        let a = ga_search(&gens, 20, &gate_objective(hadamard()), &small_cfg(3)).unwrap();
        let b = ga_search(&gens, 20, &gate_objective(hadamard()), &small_cfg(3)).unwrap();
        assert!(a.same_outcome(&b));
        let c = ga_search(&gens, 20, &gate_objective(hadamard()), &small_cfg(4)).unwrap();
        assert_ne!(a.word, c.word);
    }

    #[test]
    fn best_so_far_never_worsens() {
        let gens = AnyonModel::new(6).unwrap().one_qubit_generators();
        let (r, trace) =
            ga_search_traced(&gens, 24, &gate_objective(hadamard()), &small_cfg(11)).unwrap();
        assert_eq!(trace.best_per_generation.len(), 41);
        assert!(trace.best_per_generation.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*trace.best_per_generation.last().unwrap(), r.distance);
        assert!(trace.best_per_generation[40] < trace.best_per_generation[0]);
    }

    #[test]
    fn reported_distance_re_evaluates() {
        let gens = AnyonModel::new(7)
            .unwrap()
            .two_qubit_generators()
            .with_inverses(false);
        let obj = class_objective(ClassTarget::CNOT, 1e-4);
        let r = ga_search(&gens, 12, &obj, &small_cfg(1)).unwrap();
        assert_eq!(r.word.len(), 12);
        assert!(!r.word.has_inverses());
        let m = evaluate_braidword(&r.word, &gens).unwrap();
        assert_eq!(obj.distance(&m), r.distance);
        assert!(r.score >= r.distance);
        assert!(r.leakage.unwrap().m11 <= 1.0 + 1e-12);
    }

    #[test]
    fn exact_target_in_first_population() {
        let gens = AnyonModel::new(5).unwrap().one_qubit_generators();
        // any single letter is hit by a 200-strong initial population
        let target = *gens.generator(1);
        let cfg = SearchConfig {
            stop_distance: 1e-12,
            ..small_cfg(0)
        };
        let r = ga_search(&gens, 1, &gate_objective(target), &cfg).unwrap();
        assert_eq!(r.word, Braidword::parse("B", 2).unwrap());
        assert!(r.distance < 1e-15);
        assert_eq!(r.evaluations, 200);
    }

    #[test]
    fn identical_parents_splice_to_parent() {
        let gens = AnyonModel::new(5).unwrap().one_qubit_generators();
        let mats = letter_table(&gens);
        let obj = gate_objective(hadamard());
        let cfg = SearchConfig {
            mutation_prob: 0.0,
            ..small_cfg(0)
        };
        let ev = Evolver {
            mats: &mats,
            objective: &obj,
            length: 8,
            cfg: &cfg,
        };
        let parent = Individual {
            word: vec![0, 1, 2, 3, 3, 2, 1, 0],
            score: 0.0,
        };
        let mut rng = stream_rng(9, 0);
        for _ in 0..20 {
            let child = ev.offspring(std::slice::from_ref(&parent), &mut rng);
            assert_eq!(child.word, parent.word);
        }
    }

    #[test]
    fn mutation_always_changes_the_letter() {
        let gens = AnyonModel::new(5).unwrap().one_qubit_generators();
        let mats = letter_table(&gens);
        let obj = gate_objective(hadamard());
        let cfg = SearchConfig {
            mutation_prob: 1.0,
            ..small_cfg(0)
        };
        let ev = Evolver {
            mats: &mats,
            objective: &obj,
            length: 8,
            cfg: &cfg,
        };
        let mut rng = stream_rng(5, 0);
        let original = vec![0u8, 1, 2, 3, 0, 1, 2, 3];
        let mut word = original.clone();
        ev.mutate(&mut word, &mut rng);
        assert!(word.iter().zip(&original).all(|(a, b)| a != b && *a < 4));
    }
}
