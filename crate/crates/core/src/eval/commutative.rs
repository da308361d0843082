use std::sync::Arc;

use super::{element_bits, Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent, Subject, Target};
use crate::algebra::Elem;
use crate::langkit::Dfa;

enum Fold {
    State { dfa: Arc<Dfa>, q: usize },
    Product { target: Target, acc: Option<Elem> },
}

/// Folds letters in arrival order. Sound only when letter order is
/// irrelevant, i.e. the subject is commutative.
pub struct CommutativeEvaluator {
    fold: Fold,
    audit: DeliveryAudit,
}

impl CommutativeEvaluator {
    pub fn new(subject: Subject, n: usize) -> Self {
        let audit = DeliveryAudit::new(n, subject.alphabet_size());
        let fold = match subject {
            Subject::Automaton(dfa) => Fold::State { q: dfa.initial(), dfa },
            Subject::Algebraic(target) => Fold::Product { target, acc: None },
        };
        CommutativeEvaluator { fold, audit }
    }
}

impl Evaluator for CommutativeEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        match &mut self.fold {
            Fold::State { dfa, q } => *q = dfa.step(*q, ev.letter),
            Fold::Product { target, acc } => {
                let x = target.image(ev.letter);
                *acc = Some(acc.map_or(x, |a| target.algebra.mul(a, x)));
            }
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        match &self.fold {
            Fold::State { dfa, q } => Ok(Answer::Verdict(dfa.is_accepting(*q))),
            Fold::Product { target, acc } => target.answer(*acc),
        }
    }

    fn state_bits(&self) -> u64 {
        match &self.fold {
            Fold::State { dfa, .. } => element_bits(dfa.num_states()),
            Fold::Product { target, .. } => 1 + target.element_bits(),
        }
    }
}
