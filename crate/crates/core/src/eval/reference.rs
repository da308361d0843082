use super::{Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent, Subject};
use crate::algebra::bits_for;
use crate::langkit::Symbol;

/// Buffers the whole word, then evaluates it left to right.
pub struct ReferenceEvaluator {
    subject: Subject,
    cells: Vec<Option<Symbol>>,
    letter_bits: u64,
    stored: u64,
    audit: DeliveryAudit,
}

impl ReferenceEvaluator {
    pub fn new(subject: Subject, n: usize) -> Self {
        let k = subject.alphabet_size();
        ReferenceEvaluator {
            letter_bits: bits_for(k as u128),
            cells: vec![None; n],
            stored: 0,
            audit: DeliveryAudit::new(n, k),
            subject,
        }
    }
}

impl Evaluator for ReferenceEvaluator {
    fn len(&self) -> usize {
        self.cells.len()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        self.cells[ev.position - 1] = Some(ev.letter);
        self.stored += 1;
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        let word: Vec<Symbol> = self.cells.iter().map(|c| c.expect("audited")).collect();
        self.subject.judge(&word)
    }

    /// Presence bitmap plus one letter per stored cell.
    fn state_bits(&self) -> u64 {
        self.cells.len() as u64 + self.stored * self.letter_bits
    }
}
