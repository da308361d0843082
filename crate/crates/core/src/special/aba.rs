use super::B;
use crate::eval::{position_bits, Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent};

/// Membership in `a*b*a*`: the `b`s must form one contiguous interval.
pub struct AbaEvaluator {
    b_min: usize,
    b_max: usize,
    n_b: usize,
    audit: DeliveryAudit,
}

impl AbaEvaluator {
    pub fn new(n: usize) -> Self {
        AbaEvaluator {
            b_min: usize::MAX,
            b_max: 0,
            n_b: 0,
            audit: DeliveryAudit::new(n, 2),
        }
    }
}

impl Evaluator for AbaEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        if ev.letter == B {
            self.b_min = self.b_min.min(ev.position);
            self.b_max = self.b_max.max(ev.position);
            self.n_b += 1;
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        Ok(Answer::Verdict(self.n_b == 0 || self.b_max - self.b_min == self.n_b - 1))
    }

    fn state_bits(&self) -> u64 {
        3 * position_bits(self.audit.length())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accepts(word: &str) -> bool {
        let w: Vec<usize> = word.bytes().map(|c| (c - b'a') as usize).collect();
        let mut e = AbaEvaluator::new(w.len());
        for p in (1..=w.len()).rev() {
            e.feed(StreamEvent::new(w[p - 1], p, w.len())).unwrap();
        }
        e.finish().unwrap() == Answer::Verdict(true)
    }

    #[test]
    fn examples() {
        assert!(accepts("abba"));
        assert!(!accepts("abab"));
        assert!(accepts("aaaa"));
        assert!(accepts(""));
    }
}
