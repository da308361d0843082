use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PermKind {
    Identity,
    Reverse,
    Random { seed: u64 },
    EvensThenOdds,
    /// Blocks of `block` consecutive positions, delivered in shuffled block
    /// order, each block left to right.
    BlockShuffle { block: usize, seed: u64 },
    /// The given positions in increasing order, then the rest.
    DomainFirst(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationSpec {
    pub kind: PermKind,
    pub n: usize,
}

impl PermutationSpec {
    pub fn new(kind: PermKind, n: usize) -> Self {
        PermutationSpec { kind, n }
    }
}

/// The delivery order of positions `1..=n` described by `spec`.
pub fn make_permutation(spec: &PermutationSpec) -> Vec<usize> {
    let n = spec.n;
    match &spec.kind {
        PermKind::Identity => (1..=n).collect(),
        PermKind::Reverse => (1..=n).rev().collect(),
        PermKind::Random { seed } => {
            let mut order: Vec<usize> = (1..=n).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
            order
        }
        PermKind::EvensThenOdds => (2..=n).step_by(2).chain((1..=n).step_by(2)).collect(),
        PermKind::BlockShuffle { block, seed } => {
            let block = (*block).max(1);
            let mut starts: Vec<usize> = (1..=n).step_by(block).collect();
            starts.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
            starts
                .into_iter()
                .flat_map(|s| s..=(s + block - 1).min(n))
                .collect()
        }
        PermKind::DomainFirst(domain) => {
            let mut inside = vec![false; n + 1];
            for &p in domain {
                if (1..=n).contains(&p) {
                    inside[p] = true;
                }
            }
            (1..=n)
                .filter(|&p| inside[p])
                .chain((1..=n).filter(|&p| !inside[p]))
                .collect()
        }
    }
}
