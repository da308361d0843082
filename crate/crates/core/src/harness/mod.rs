//! Running evaluators on permuted streams, differential campaigns against the
//! reference evaluator, and space-growth profiles.

mod campaign;
mod fit;
mod perm;
mod profile;

pub use campaign::{differential_campaign, replay, CampaignConfig, CampaignReport, FailureRecord};
pub use fit::{fit_models, select_model, Model, ModelFit};
pub use perm::{make_permutation, PermKind, PermutationSpec};
pub use profile::{growth_profile, GrowthProfile, ProfileConfig};

use rand::Rng;

use crate::eval::{Answer, EvalError, Evaluator, StreamEvent};
use crate::langkit::Symbol;

/// Feeds `word` in `order` and returns the answer together with the largest
/// `state_bits` seen, sampled before the first and after every feed.
pub fn run_stream(
    e: &mut dyn Evaluator,
    word: &[Symbol],
    order: &[usize],
) -> Result<(Answer, u64), EvalError> {
    let n = word.len();
    let mut max_bits = e.state_bits();
    for &p in order {
        e.feed(StreamEvent::new(word[p - 1], p, n))?;
        max_bits = max_bits.max(e.state_bits());
    }
    Ok((e.finish()?, max_bits))
}

/// Word shapes used for sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordShape {
    Uniform,
    /// At most 7 runs of a repeated letter.
    Runs,
    /// Mostly letter 0 with a few other letters.
    Sparse,
}

pub fn random_word(rng: &mut impl Rng, n: usize, k: usize, shape: WordShape) -> Vec<Symbol> {
    match shape {
        WordShape::Uniform => (0..n).map(|_| rng.gen_range(0..k)).collect(),
        WordShape::Runs => {
            let runs = rng.gen_range(1..=7usize.min(n.max(1)));
            let mut cuts: Vec<usize> = (0..runs - 1).map(|_| rng.gen_range(0..=n)).collect();
            cuts.push(n);
            cuts.sort_unstable();
            let mut word = Vec::with_capacity(n);
            for &cut in &cuts {
                let letter = rng.gen_range(0..k);
                word.resize(cut, letter);
            }
            word
        }
        WordShape::Sparse => (0..n)
            .map(|_| if rng.gen_bool(0.1) { rng.gen_range(0..k) } else { 0 })
            .collect(),
    }
}

/// Enumerates every word of length `n` over `k` letters in lexicographic order.
pub fn all_words(n: usize, k: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = (k as u128).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut w = vec![0; n];
        for cell in w.iter_mut().rev() {
            *cell = (code % k as u128) as usize;
            code /= k as u128;
        }
        w
    })
}

/// SplitMix64 step, used to derive independent per-sample seeds.
pub fn mix_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
