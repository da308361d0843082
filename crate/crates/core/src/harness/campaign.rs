use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{all_words, make_permutation, mix_seed, random_word, run_stream, PermKind, PermutationSpec, WordShape};
use crate::eval::{Evaluator, ReferenceEvaluator, Subject};
use crate::langkit::Symbol;

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    /// Lengths up to this bound are checked on every word.
    pub exhaustive_up_to: usize,
    /// Seeded random orders used in exhaustive mode, besides identity and reverse.
    pub exhaustive_random_perms: usize,
    /// Lengths checked by sampling.
    pub sampled_lengths: Vec<usize>,
    pub words_per_n: usize,
    pub perms_per_word: usize,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            exhaustive_up_to: 6,
            exhaustive_random_perms: 10,
            sampled_lengths: (7..=16).chain([32, 64]).collect(),
            words_per_n: 500,
            perms_per_word: 5,
            seed: 0,
        }
    }
}

/// A replayable discrepancy between an evaluator and the reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub subject: String,
    pub seed: u64,
    pub word: Vec<Symbol>,
    pub permutation: PermutationSpec,
    pub expected: String,
    pub got: String,
}

impl FailureRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub runs: u64,
    pub failure: Option<FailureRecord>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn sampled_perm(n: usize, j: usize, seed: u64) -> PermKind {
    match j % 5 {
        1 => PermKind::EvensThenOdds,
        3 => PermKind::BlockShuffle {
            block: (n as f64).sqrt().ceil() as usize,
            seed,
        },
        _ => PermKind::Random { seed },
    }
}

fn check(
    factory: &(dyn Fn(usize) -> Box<dyn Evaluator> + Sync),
    subject: &Subject,
    label: &str,
    word: &[Symbol],
    spec: PermutationSpec,
    seed: u64,
) -> Option<FailureRecord> {
    let order = make_permutation(&spec);
    let n = word.len();
    let mut reference = ReferenceEvaluator::new(subject.clone(), n);
    let expected = run_stream(&mut reference, word, &order).map(|r| r.0);
    let got = run_stream(factory(n).as_mut(), word, &order).map(|r| r.0);
    if expected == got {
        return None;
    }
    let show = |r: &Result<_, _>| match r {
        Ok(a) => subject.describe(*a),
        Err(e) => format!("error: {e}"),
    };
    Some(FailureRecord {
        subject: label.to_string(),
        seed,
        word: word.to_vec(),
        permutation: spec,
        expected: show(&expected),
        got: show(&got),
    })
}

/// Reruns the word and order of `record`. Returns the discrepancy if it
/// still occurs.
pub fn replay(
    factory: &(dyn Fn(usize) -> Box<dyn Evaluator> + Sync),
    subject: &Subject,
    record: &FailureRecord,
) -> Option<FailureRecord> {
    check(factory, subject, &record.subject, &record.word, record.permutation.clone(), record.seed)
}

/// Compares `factory`'s evaluators with the reference on every word of
/// length up to `exhaustive_up_to` and on seeded samples for the other
/// lengths. Returns the first discrepancy in a fixed order.
pub fn differential_campaign(
    factory: &(dyn Fn(usize) -> Box<dyn Evaluator> + Sync),
    subject: &Subject,
    label: &str,
    cfg: &CampaignConfig,
) -> CampaignReport {
    let k = subject.alphabet_size();
    let mut runs = 0u64;
    for n in 0..=cfg.exhaustive_up_to {
        let mut kinds = vec![PermKind::Identity, PermKind::Reverse];
        kinds.extend(
            (0..cfg.exhaustive_random_perms).map(|j| PermKind::Random { seed: mix_seed(cfg.seed, n as u64, j as u64) }),
        );
        let words: Vec<Vec<Symbol>> = all_words(n, k).collect();
        runs += (words.len() * kinds.len()) as u64;
        let failure = words.par_iter().find_map_first(|w| {
            kinds.iter().find_map(|kind| {
                check(factory, subject, label, w, PermutationSpec::new(kind.clone(), n), cfg.seed)
            })
        });
        if failure.is_some() {
            return CampaignReport { runs, failure };
        }
    }
    for &n in &cfg.sampled_lengths {
        runs += (cfg.words_per_n * cfg.perms_per_word) as u64;
        let failure = (0..cfg.words_per_n).into_par_iter().find_map_first(|i| {
            let sample_seed = mix_seed(cfg.seed, n as u64, i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
            let shape = [WordShape::Uniform, WordShape::Runs, WordShape::Sparse][i % 3];
            let word = random_word(&mut rng, n, k, shape);
            (0..cfg.perms_per_word).find_map(|j| {
                let kind = sampled_perm(n, j, mix_seed(sample_seed, j as u64, 1));
                check(factory, subject, label, &word, PermutationSpec::new(kind, n), sample_seed)
            })
        });
        if failure.is_some() {
            return CampaignReport { runs, failure };
        }
    }
    CampaignReport { runs, failure: None }
}
