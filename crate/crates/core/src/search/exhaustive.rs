use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;

use super::{
    leakage_of, letter_table, word_from_indices, CompilationResult, Engine, Objective,
    SearchConfig, SearchError,
};
use crate::anyon::{GeneratorSet, Mat};

/// Number of words of `length` over `alphabet` letters with no adjacent
/// letter/inverse pair.
pub fn candidate_count(alphabet: usize, length: usize, with_inverses: bool) -> u128 {
    if length == 0 {
        return 1;
    }
    let a = alphabet as u128;
    let step = if with_inverses {
        a.saturating_sub(1)
    } else {
        a
    };
    (1..length).fold(a, |acc, _| acc.saturating_mul(step))
}

#[derive(Clone)]
struct Best {
    score: f64,
    word: Vec<u8>,
}

impl Best {
    fn none() -> Self {
        Best {
            score: f64::INFINITY,
            word: Vec::new(),
        }
    }

    fn cmp(&self, other: &Best) -> Ordering {
        self.score.total_cmp(&other.score).then_with(|| {
            match (self.word.is_empty(), other.word.is_empty()) {
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                _ => self.word.cmp(&other.word),
            }
        })
    }

    fn min(self, other: Best) -> Best {
        if other.cmp(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

struct Enumerator<'a, const D: usize, F: ?Sized> {
    mats: &'a [Mat<D>],
    /// `cancels[a]` is the letter that undoes `a`, if it is in the alphabet.
    cancels: &'a [Option<u8>],
    objective: &'a F,
    length: usize,
}

impl<const D: usize, F: Objective<D> + ?Sized> Enumerator<'_, D, F> {
    fn allowed(&self, prev: Option<u8>, next: u8) -> bool {
        match prev {
            Some(p) => self.cancels[p as usize] != Some(next),
            None => true,
        }
    }

    /// Depth-first walk below `word` (whose product is `prod`), in
    /// lexicographic order. Returns the number of leaves scored.
    fn walk(&self, word: &mut Vec<u8>, prod: &Mat<D>, best: &mut Best) -> u64 {
        let n = self.mats.len() as u8;
        let prev = word.last().copied();
        if word.len() + 1 == self.length {
            let mut count = 0;
            for a in 0..n {
                if !self.allowed(prev, a) {
                    continue;
                }
                let m = self.mats[a as usize] * prod;
                let score = self.objective.score(&m);
                count += 1;
                if score < best.score {
                    word.push(a);
                    best.score = score;
                    best.word.clone_from(word);
                    word.pop();
                }
            }
            return count;
        }
        let mut count = 0;
        for a in 0..n {
            if !self.allowed(prev, a) {
                continue;
            }
            let m = self.mats[a as usize] * prod;
            word.push(a);
            count += self.walk(word, &m, best);
            word.pop();
        }
        count
    }
}

/// Minimizes `objective` over every word of exactly `length` letters,
/// skipping words with an adjacent letter/inverse pair. Ties go to the
/// lexicographically smallest word (alphabet order `A < B < …`).
pub fn exhaustive_search<const D: usize, F>(
    gens: &GeneratorSet<D>,
    length: usize,
    objective: &F,
    cfg: &SearchConfig,
) -> Result<CompilationResult, SearchError>
where
    F: Objective<D> + ?Sized,
{
    if length == 0 {
        return Err(SearchError::InvalidConfig(
            "length must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let alphabet = gens.alphabet();
    let candidates = candidate_count(alphabet.len(), length, gens.include_inverses());
    if candidates > cfg.exhaustive_budget as u128 {
        return Err(SearchError::BudgetExceeded {
            candidates,
            budget: cfg.exhaustive_budget,
        });
    }
    let mats = letter_table(gens);
    let cancels: Vec<Option<u8>> = alphabet
        .iter()
        .map(|l| {
            alphabet
                .iter()
                .position(|&m| m == l.inverted())
                .map(|i| i as u8)
        })
        .collect();
    let en = Enumerator {
        mats: &mats,
        cancels: &cancels,
        objective,
        length,
    };

    // Partition by prefix so workers can run independently.
    let depth = length.min(2);
    let en = &en;
    let mut prefixes: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                let prev = p.last().copied();
                (0..mats.len() as u8)
                    .filter(move |&a| en.allowed(prev, a))
                    .map(move |a| {
                        let mut q = p.clone();
                        q.push(a);
                        q
                    })
            })
            .collect();
    }

    let (best, evaluations) = prefixes
        .par_iter()
        .map(|prefix| {
            let prod = prefix
                .iter()
                .fold(Mat::<D>::identity(), |m, &a| mats[a as usize] * m);
            let mut best = Best::none();
            let count = if prefix.len() == length {
                best = Best {
                    score: objective.score(&prod),
                    word: prefix.clone(),
                };
                1
            } else {
                en.walk(&mut prefix.clone(), &prod, &mut best)
            };
            (best, count)
        })
        .reduce(|| (Best::none(), 0), |(a, n), (b, m)| (a.min(b), n + m));

    let word = word_from_indices(gens, &best.word);
    let matrix = best
        .word
        .iter()
        .fold(Mat::<D>::identity(), |m, &a| mats[a as usize] * m);
    Ok(CompilationResult {
        word,
        distance: objective.distance(&matrix),
        score: best.score,
        leakage: leakage_of(&matrix),
        engine: Engine::Exhaustive,
        sk_level: None,
        wall_time: start.elapsed(),
        evaluations,
    })
}
