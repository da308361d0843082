use super::{Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent, Target, ThresholdPeriodCounter};
use crate::algebra::Elem;

/// Slots for positions `1..=k+1` and `n-k..=n`, or every position when
/// `n <= 2k+2`.
struct Borders {
    k: usize,
    n: usize,
    slots: Vec<Option<Elem>>,
}

impl Borders {
    fn new(k: usize, n: usize) -> Self {
        let width = if n <= 2 * k + 2 { n } else { 2 * k + 2 };
        Borders {
            k,
            n,
            slots: vec![None; width],
        }
    }

    fn full(&self) -> bool {
        self.slots.len() == self.n
    }

    /// Slot for `p`, or `None` for interior positions.
    fn slot(&self, p: usize) -> Option<usize> {
        if self.full() || p <= self.k + 1 {
            Some(p - 1)
        } else if p >= self.n - self.k {
            Some(p - (self.n - self.k) + self.k + 1)
        } else {
            None
        }
    }

    fn prefix_len(&self) -> usize {
        if self.full() {
            self.n
        } else {
            self.k + 1
        }
    }

    fn bits(&self, elem_bits: u64) -> u64 {
        self.slots.len() as u64 * (1 + elem_bits)
    }
}

fn product(target: &Target, word: impl IntoIterator<Item = Elem>) -> Option<Elem> {
    word.into_iter().reduce(|a, x| target.algebra.mul(a, x))
}

/// Keeps the first k+1 and last k+1 letters, k = |S|. Correct for
/// semigroups satisfying `x^ω y x^ω = x^ω`.
pub struct LiEvaluator {
    target: Target,
    borders: Borders,
    audit: DeliveryAudit,
}

impl LiEvaluator {
    pub fn new(target: Target, n: usize) -> Self {
        LiEvaluator {
            borders: Borders::new(target.algebra.size(), n),
            audit: DeliveryAudit::new(n, target.alphabet_size()),
            target,
        }
    }
}

impl Evaluator for LiEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        if let Some(i) = self.borders.slot(ev.position) {
            self.borders.slots[i] = Some(self.target.image(ev.letter));
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        let word = self.borders.slots.iter().map(|s| s.expect("audited"));
        self.target.answer(product(&self.target, word))
    }

    fn state_bits(&self) -> u64 {
        self.borders.bits(self.target.element_bits())
    }
}

/// Border slots as in [`LiEvaluator`] plus a threshold/period counter per
/// element for the interior, with `P = ω` and `T = ω + 2k + 2`.
pub struct LiComEvaluator {
    target: Target,
    borders: Borders,
    counters: Vec<ThresholdPeriodCounter>,
    audit: DeliveryAudit,
}

impl LiComEvaluator {
    pub fn new(target: Target, n: usize) -> Self {
        let size = target.algebra.size();
        let omega = target.algebra.idempotent_power() as u64;
        let threshold = omega + 2 * size as u64 + 2;
        LiComEvaluator {
            borders: Borders::new(size, n),
            counters: vec![ThresholdPeriodCounter::new(threshold, omega); size],
            audit: DeliveryAudit::new(n, target.alphabet_size()),
            target,
        }
    }
}

impl Evaluator for LiComEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        let m = self.target.image(ev.letter);
        match self.borders.slot(ev.position) {
            Some(i) => self.borders.slots[i] = Some(m),
            None => self.counters[m].increment(),
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        let slots: Vec<Elem> = self.borders.slots.iter().map(|s| s.expect("audited")).collect();
        let (prefix, suffix) = slots.split_at(self.borders.prefix_len());
        let s = &self.target.algebra;
        let interior = self
            .counters
            .iter()
            .enumerate()
            .filter(|(_, c)| c.capped() > 0)
            .map(|(m, c)| s.pow(m, c.reconstruct() as usize));
        let word = prefix.iter().copied().chain(interior).chain(suffix.iter().copied());
        self.target.answer(product(&self.target, word))
    }

    fn state_bits(&self) -> u64 {
        let counters: u64 = self.counters.iter().map(ThresholdPeriodCounter::bits).sum();
        self.borders.bits(self.target.element_bits()) + counters
    }
}
