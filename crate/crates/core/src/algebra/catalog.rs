//! Seeded catalogs of small transformation semigroups for cross-validation.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, FiniteSemigroup};

/// A full transformation of `{0..k}` written as its image list.
pub type Transformation = Vec<u8>;

#[derive(Debug, Clone)]
pub struct CatalogConfig {
    pub count: usize,
    pub max_size: usize,
    pub max_generators: usize,
    pub seed: u64,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        CatalogConfig {
            count: 240,
            max_size: 12,
            max_generators: 3,
            seed: 0,
        }
    }
}

/// Left-to-right composition: apply `f`, then `g`.
fn then(f: &[u8], g: &[u8]) -> Transformation {
    f.iter().map(|&q| g[q as usize]).collect()
}

/// Closure of `gens` under composition, in breadth-first discovery order.
/// Returns `None` once the closure exceeds `limit` elements.
pub fn closure(gens: &[Transformation], limit: usize) -> Option<FiniteSemigroup> {
    let mut index: HashMap<Transformation, Elem> = HashMap::new();
    let mut elems: Vec<Transformation> = Vec::new();
    let mut queue = VecDeque::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), elems.len());
            elems.push(g.clone());
            queue.push_back(elems.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let t = then(&elems[i], g);
            if !index.contains_key(&t) {
                if elems.len() == limit {
                    return None;
                }
                index.insert(t.clone(), elems.len());
                elems.push(t);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let names: Vec<String> = elems
        .iter()
        .map(|t| t.iter().map(|q| char::from(b'0' + q)).collect())
        .collect();
    let sg = FiniteSemigroup::from_fn(names, None, |a, b| index[&then(&elems[a], &elems[b])])
        .expect("transformation composition is associative");
    let identity = sg.find_identity();
    Some(sg.with_identity(identity).expect("found identity is neutral"))
}

/// Random subsemigroups of the full transformation semigroups on 3 and 4
/// points, each generated by 1 to `max_generators` random maps, deduplicated
/// by their element sets.
pub fn transformation_catalog(cfg: &CatalogConfig) -> Vec<FiniteSemigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    let mut out = Vec::with_capacity(cfg.count);
    let mut attempts = 0usize;
    while out.len() < cfg.count && attempts < cfg.count * 200 {
        attempts += 1;
        let points: u8 = rng.gen_range(3..=4);
        let gens: Vec<Transformation> = (0..rng.gen_range(1..=cfg.max_generators))
            .map(|_| (0..points).map(|_| rng.gen_range(0..points)).collect())
            .collect();
        let Some(sg) = closure(&gens, cfg.max_size) else {
            continue;
        };
        let mut key = sg.names().to_vec();
        key.sort();
        if seen.insert(key) {
            out.push(sg);
        }
    }
    out
}
