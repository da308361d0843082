use super::A;
use crate::eval::{Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent};

/// Membership in `(ab)*`: every `a` at an odd position, every `b` at an even
/// one, and `n` even.
pub struct AbstarEvaluator {
    violated: bool,
    audit: DeliveryAudit,
}

impl AbstarEvaluator {
    pub fn new(n: usize) -> Self {
        AbstarEvaluator {
            violated: false,
            audit: DeliveryAudit::new(n, 2),
        }
    }
}

impl Evaluator for AbstarEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        let odd = ev.position % 2 == 1;
        self.violated |= (ev.letter == A) != odd;
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        Ok(Answer::Verdict(!self.violated && self.audit.length().is_multiple_of(2)))
    }

    /// The flag and the parity of `n`.
    fn state_bits(&self) -> u64 {
        2
    }
}
