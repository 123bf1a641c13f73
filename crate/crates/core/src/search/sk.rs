use std::time::Instant;

use super::{
    derive_seed, ga_search, gate_objective, gc_decompose, CompilationResult, Engine, SearchConfig,
    SearchError,
};
use crate::anyon::{evaluate_braidword, Braidword, GeneratorSet, Mat2};
use crate::metrics::{phase_invariant_distance, su2_project};

#[derive(Clone)]
struct Approximation {
    word: Braidword,
    matrix: Mat2,
}

struct Recursion<'a> {
    gens: &'a GeneratorSet<2>,
    cfg: &'a SearchConfig,
}

impl Recursion<'_> {
    /// Level-0 searches issued by one call at `level`.
    fn searches(level: u32) -> u64 {
        3u64.pow(level)
    }

    /// Approximates `target` at `level`, drawing GA seeds `first..` in call
    /// order. Every intermediate approximation of `target` itself is pushed
    /// onto `chain` when given.
    fn approximate(
        &self,
        target: &Mat2,
        level: u32,
        first: u64,
        evaluations: &mut u64,
        mut chain: Option<&mut Vec<Approximation>>,
    ) -> Result<Approximation, SearchError> {
        if level == 0 {
            let cfg = SearchConfig {
                rng_seed: derive_seed(self.cfg.rng_seed, first),
                ..self.cfg.clone()
            };
            let r = ga_search(
                self.gens,
                self.cfg.base_length,
                &gate_objective(*target),
                &cfg,
            )?;
            *evaluations += r.evaluations;
            let matrix = evaluate_braidword(&r.word, self.gens).expect("word over gens");
            let approx = Approximation {
                word: r.word,
                matrix,
            };
            if let Some(chain) = chain {
                chain.push(approx.clone());
            }
            return Ok(approx);
        }
        let block = Self::searches(level - 1);
        let prev = self.approximate(target, level - 1, first, evaluations, chain.as_deref_mut())?;
        let delta = su2_project(&(target * prev.matrix.adjoint()));
        let pair = gc_decompose(&delta)?;
        let v = self.approximate(&pair.v, level - 1, first + block, evaluations, None)?;
        let w = self.approximate(&pair.w, level - 1, first + 2 * block, evaluations, None)?;
        // Leftmost letter acts first, so V W V† W† U is spelled U W† V† W V.
        let word = prev
            .word
            .then(&w.word.inverse())
            .then(&v.word.inverse())
            .then(&w.word)
            .then(&v.word);
        let matrix = v.matrix * w.matrix * v.matrix.adjoint() * w.matrix.adjoint() * prev.matrix;
        let approx = Approximation { word, matrix };
        if let Some(chain) = chain {
            chain.push(approx.clone());
        }
        Ok(approx)
    }
}

fn check_gens(gens: &GeneratorSet<2>) -> Result<(), SearchError> {
    if gens.include_inverses() {
        Ok(())
    } else {
        Err(SearchError::MissingInverses)
    }
}

/// Solovay-Kitaev approximation of `target` at `level`. The word has
/// `base_length · 5^level` letters and is built from `3^level` GA searches.
pub fn solovay_kitaev(
    target: &Mat2,
    level: u32,
    gens: &GeneratorSet<2>,
    cfg: &SearchConfig,
) -> Result<CompilationResult, SearchError> {
    Ok(solovay_kitaev_levels(target, level, gens, cfg)?
        .pop()
        .expect("one result per level"))
}

/// Results for every level `0..=level` of one recursion. Entry `n` equals
/// what [`solovay_kitaev`] returns at level `n` with the same config, except
/// for timing and evaluation counts, which are cumulative.
pub fn solovay_kitaev_levels(
    target: &Mat2,
    level: u32,
    gens: &GeneratorSet<2>,
    cfg: &SearchConfig,
) -> Result<Vec<CompilationResult>, SearchError> {
    cfg.validate()?;
    check_gens(gens)?;
    let start = Instant::now();
    let rec = Recursion { gens, cfg };
    let mut evaluations = 0;
    let mut chain = Vec::with_capacity(level as usize + 1);
    rec.approximate(target, level, 0, &mut evaluations, Some(&mut chain))?;
    let wall_time = start.elapsed();
    Ok(chain
        .into_iter()
        .enumerate()
        .map(|(n, a)| {
            let distance = phase_invariant_distance(
                &evaluate_braidword(&a.word, gens).expect("word over gens"),
                target,
            );
            CompilationResult {
                distance,
                score: distance,
                word: a.word,
                leakage: None,
                engine: Engine::Sk,
                sk_level: Some(n as u32),
                wall_time,
                evaluations,
            }
        })
        .collect())
}
