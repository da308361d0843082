use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{fit_models, make_permutation, mix_seed, random_word, run_stream, select_model};
use super::{Model, ModelFit, PermKind, PermutationSpec, WordShape};
use crate::eval::{EvalError, Evaluator};

#[derive(Debug, Clone)]
pub struct ProfileConfig {
    /// Lengths, strictly increasing.
    pub schedule: Vec<usize>,
    pub words_per_n: usize,
    /// Orders tried per word. `Random` seeds are re-mixed per sample.
    pub orders: Vec<PermKind>,
    pub alphabet: usize,
    pub seed: u64,
}

impl ProfileConfig {
    /// `2^4 ..= 2^14`, doubling.
    pub fn default_schedule() -> Vec<usize> {
        (4..=14).map(|e| 1usize << e).collect()
    }

    pub fn new(alphabet: usize) -> Self {
        ProfileConfig {
            schedule: Self::default_schedule(),
            words_per_n: 3,
            orders: vec![PermKind::Random { seed: 0 }, PermKind::EvensThenOdds],
            alphabet,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GrowthProfile {
    pub samples: Vec<(usize, u64)>,
    pub fitted: ModelFit,
    pub fits: Vec<ModelFit>,
}

impl GrowthProfile {
    pub fn model(&self) -> Model {
        self.fitted.model
    }

    pub fn fit_error(&self) -> f64 {
        self.fitted.residual
    }

    pub fn max_bits(&self, n: usize) -> Option<u64> {
        self.samples.iter().find(|s| s.0 == n).map(|s| s.1)
    }

    /// `n,max_state_bits,model,fit_error` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,max_state_bits,model,fit_error\n");
        for &(n, bits) in &self.samples {
            let _ = writeln!(out, "{n},{bits},{},{:.6}", self.model(), self.fit_error());
        }
        out
    }
}

/// Worst `max state_bits` per length over sampled words and orders, then the
/// fitted growth model. A fit is consistent with a growth rate; it does not
/// prove one.
pub fn growth_profile(
    factory: &(dyn Fn(usize) -> Box<dyn Evaluator> + Sync),
    cfg: &ProfileConfig,
) -> Result<GrowthProfile, EvalError> {
    let mut samples = Vec::with_capacity(cfg.schedule.len());
    for &n in &cfg.schedule {
        let worst = (0..cfg.words_per_n)
            .into_par_iter()
            .map(|i| -> Result<u64, EvalError> {
                let sample_seed = mix_seed(cfg.seed, n as u64, i as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
                let shape = [WordShape::Uniform, WordShape::Runs, WordShape::Sparse][i % 3];
                let word = random_word(&mut rng, n, cfg.alphabet, shape);
                let mut worst = 0;
                for (j, kind) in cfg.orders.iter().enumerate() {
                    let kind = match kind {
                        PermKind::Random { seed } => PermKind::Random {
                            seed: mix_seed(sample_seed, *seed, j as u64),
                        },
                        other => other.clone(),
                    };
                    let order = make_permutation(&PermutationSpec::new(kind, n));
                    let (_, bits) = run_stream(factory(n).as_mut(), &word, &order)?;
                    worst = worst.max(bits);
                }
                Ok(worst)
            })
            .collect::<Result<Vec<u64>, EvalError>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        samples.push((n, worst));
    }
    let fits = fit_models(&samples);
    Ok(GrowthProfile {
        fitted: select_model(&fits),
        fits,
        samples,
    })
}
