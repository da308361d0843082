use super::{
    position_bits, Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent, Target,
    ThresholdPeriodCounter,
};
use crate::algebra::{bits_for, Elem};

/// First-k and last-k occurrence positions of every element, k = |M|.
struct FirstLast {
    k: usize,
    first: Vec<Vec<usize>>,
    last: Vec<Vec<usize>>,
}

impl FirstLast {
    fn new(size: usize) -> Self {
        FirstLast {
            k: size,
            first: vec![Vec::with_capacity(size + 1); size],
            last: vec![Vec::with_capacity(size + 1); size],
        }
    }

    fn insert(&mut self, m: Elem, p: usize) {
        let k = self.k;
        let f = &mut self.first[m];
        if f.len() < k || p < f[k - 1] {
            let at = f.partition_point(|&q| q < p);
            f.insert(at, p);
            f.truncate(k);
        }
        let l = &mut self.last[m];
        if l.len() < k || p > l[0] {
            let at = l.partition_point(|&q| q < p);
            l.insert(at, p);
            if l.len() > k {
                l.remove(0);
            }
        }
    }

    /// Retained `(position, element)` pairs in position order.
    fn subword(&self) -> Vec<(usize, Elem)> {
        let mut kept: Vec<(usize, Elem)> = (0..self.first.len())
            .flat_map(|m| self.first[m].iter().chain(&self.last[m]).map(move |&p| (p, m)))
            .collect();
        kept.sort_unstable();
        kept.dedup();
        kept
    }

    /// Fixed allocation: 2k slots per element plus two length fields.
    fn bits(&self, n: usize) -> u64 {
        let m = self.first.len() as u64;
        2 * self.k as u64 * m * position_bits(n) + 2 * m * bits_for(self.k as u128 + 1)
    }
}

fn fold(target: &Target, word: impl IntoIterator<Item = Elem>) -> Option<Elem> {
    word.into_iter()
        .reduce(|acc, x| target.algebra.mul(acc, x))
}

/// Keeps the k-first-last subword, k = |M|, and evaluates it at the end.
/// Correct for monoids satisfying `(xy)^ω st (xz)^ω = (xy)^ω sxt (xz)^ω`.
pub struct FlEvaluator {
    target: Target,
    lists: FirstLast,
    audit: DeliveryAudit,
}

impl FlEvaluator {
    pub fn new(target: Target, n: usize) -> Self {
        FlEvaluator {
            lists: FirstLast::new(target.algebra.size()),
            audit: DeliveryAudit::new(n, target.alphabet_size()),
            target,
        }
    }
}

impl Evaluator for FlEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        self.lists.insert(self.target.image(ev.letter), ev.position);
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        let word = self.lists.subword();
        self.target.answer(fold(&self.target, word.into_iter().map(|(_, m)| m)))
    }

    fn state_bits(&self) -> u64 {
        self.lists.bits(self.audit.length())
    }
}

/// First-last lists plus a threshold/period counter per element with
/// `P = ω` and `T = ω + 2k + 2`.
///
/// At the end a witness word is rebuilt: the first-last subword with extra
/// copies of `m` inserted right after its k-th retained occurrence, as many
/// as the counter allows. Should these parameters ever prove too small, the
/// period would move to `lcm(periods)·|M|!` with the threshold scaled to match.
pub struct FlComEvaluator {
    target: Target,
    lists: FirstLast,
    counters: Vec<ThresholdPeriodCounter>,
    audit: DeliveryAudit,
}

impl FlComEvaluator {
    pub fn new(target: Target, n: usize) -> Self {
        let size = target.algebra.size();
        let omega = target.algebra.idempotent_power() as u64;
        let threshold = omega + 2 * size as u64 + 2;
        FlComEvaluator {
            lists: FirstLast::new(size),
            counters: vec![ThresholdPeriodCounter::new(threshold, omega); size],
            audit: DeliveryAudit::new(n, target.alphabet_size()),
            target,
        }
    }

    /// The reconstructed witness word, as elements.
    pub fn witness(&self) -> Vec<Elem> {
        let kept = self.lists.subword();
        let k = self.lists.k;
        let mut kept_count = vec![0u64; self.counters.len()];
        for &(_, m) in &kept {
            kept_count[m] += 1;
        }
        let extra: Vec<u64> = self
            .counters
            .iter()
            .zip(&kept_count)
            .map(|(c, &fl)| {
                if c.capped() < c.threshold() {
                    c.capped() - fl
                } else {
                    let (t, p) = (c.threshold(), c.period());
                    let target = (c.residue() + p * (fl / p + 1) - fl) % p;
                    let low = t - fl;
                    low + (target + p - low % p) % p
                }
            })
            .collect();
        let mut word = Vec::with_capacity(kept.len());
        for (p, m) in kept {
            word.push(m);
            if extra[m] > 0 && self.lists.first[m].get(k - 1) == Some(&p) {
                word.extend(std::iter::repeat_n(m, extra[m] as usize));
            }
        }
        word
    }
}

impl Evaluator for FlComEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        let m = self.target.image(ev.letter);
        self.lists.insert(m, ev.position);
        self.counters[m].increment();
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        let word = self.witness();
        self.target.answer(fold(&self.target, word))
    }

    fn state_bits(&self) -> u64 {
        let counters: u64 = self.counters.iter().map(ThresholdPeriodCounter::bits).sum();
        self.lists.bits(self.audit.length()) + counters
    }
}
