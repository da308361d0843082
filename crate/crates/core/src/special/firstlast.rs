use crate::algebra::Elem;
use crate::eval::{Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent, Target};

/// Keeps only the letters at positions 1 and `n`. Correct for targets with
/// `x z y = x y` for all elements, such as the syntactic semigroup of `aΣ*b`.
pub struct FirstLastEvaluator {
    target: Target,
    first: Option<Elem>,
    last: Option<Elem>,
    audit: DeliveryAudit,
}

impl FirstLastEvaluator {
    pub fn new(target: Target, n: usize) -> Self {
        FirstLastEvaluator {
            first: None,
            last: None,
            audit: DeliveryAudit::new(n, target.alphabet_size()),
            target,
        }
    }
}

impl Evaluator for FirstLastEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        let x = self.target.image(ev.letter);
        if ev.position == 1 {
            self.first = Some(x);
        }
        if ev.position == ev.length && ev.length > 1 {
            self.last = Some(x);
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        let value = match (self.first, self.last) {
            (Some(x), Some(y)) => Some(self.target.algebra.mul(x, y)),
            (x, _) => x,
        };
        self.target.answer(value)
    }

    fn state_bits(&self) -> u64 {
        2 * (1 + self.target.element_bits())
    }
}
