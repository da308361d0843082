use super::{Answer, EvalError, Evaluator, StreamEvent};
use crate::algebra::Elem;

fn element(answer: Answer) -> Result<Elem, EvalError> {
    match answer {
        Answer::Element(e) => Ok(e),
        Answer::Verdict(_) => Err(EvalError::Inapplicable(
            "combinators need element-valued components".into(),
        )),
    }
}

/// Runs two evaluators side by side on a product alphabet. Letter `l` is
/// split as `(l / right_alphabet, l % right_alphabet)`; element answers are
/// paired as `a * right_size + b`, matching `FiniteSemigroup::direct_product`.
pub struct ProductEvaluator {
    left: Box<dyn Evaluator>,
    right: Box<dyn Evaluator>,
    right_alphabet: usize,
    right_size: usize,
}

impl ProductEvaluator {
    pub fn new(
        left: Box<dyn Evaluator>,
        right: Box<dyn Evaluator>,
        right_alphabet: usize,
        right_size: usize,
    ) -> Result<Self, EvalError> {
        if left.len() != right.len() {
            return Err(EvalError::LengthMismatch {
                expected: left.len(),
                found: right.len(),
            });
        }
        Ok(ProductEvaluator {
            left,
            right,
            right_alphabet,
            right_size,
        })
    }
}

impl Evaluator for ProductEvaluator {
    fn len(&self) -> usize {
        self.left.len()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        let (l, r) = (ev.letter / self.right_alphabet, ev.letter % self.right_alphabet);
        self.left.feed(StreamEvent { letter: l, ..ev })?;
        self.right.feed(StreamEvent { letter: r, ..ev })
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        let a = element(self.left.finish()?)?;
        let b = element(self.right.finish()?)?;
        Ok(Answer::Element(a * self.right_size + b))
    }

    fn state_bits(&self) -> u64 {
        self.left.state_bits() + self.right.state_bits()
    }
}

/// Evaluates in a subalgebra through a host evaluator. `embedding[s]` is the
/// host letter of sub-letter `s`; `image[h]` maps host results back.
pub struct SubEvaluator {
    host: Box<dyn Evaluator>,
    embedding: Vec<usize>,
    image: Vec<Option<Elem>>,
}

impl SubEvaluator {
    /// `embedding` maps sub-elements to host elements; letters are elements.
    pub fn new(host: Box<dyn Evaluator>, embedding: Vec<Elem>, host_size: usize) -> Self {
        let mut image = vec![None; host_size];
        for (s, &h) in embedding.iter().enumerate() {
            image[h] = Some(s);
        }
        SubEvaluator {
            host,
            embedding,
            image,
        }
    }
}

impl Evaluator for SubEvaluator {
    fn len(&self) -> usize {
        self.host.len()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        let letter = *self.embedding.get(ev.letter).ok_or(EvalError::BadLetter(ev.letter))?;
        self.host.feed(StreamEvent { letter, ..ev })
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        let h = element(self.host.finish()?)?;
        self.image[h]
            .map(Answer::Element)
            .ok_or_else(|| EvalError::Inapplicable(format!("result {h} outside the subalgebra")))
    }

    fn state_bits(&self) -> u64 {
        self.host.state_bits()
    }
}

/// Evaluates in a quotient by feeding each class's representative to a host
/// evaluator and mapping the result to its class.
pub struct QuotientEvaluator {
    host: Box<dyn Evaluator>,
    representative: Vec<Elem>,
    class_of: Vec<usize>,
}

impl QuotientEvaluator {
    pub fn new(host: Box<dyn Evaluator>, class_of: Vec<usize>) -> Self {
        let classes = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut representative = vec![usize::MAX; classes];
        for (e, &c) in class_of.iter().enumerate().rev() {
            representative[c] = e;
        }
        QuotientEvaluator {
            host,
            representative,
            class_of,
        }
    }
}

impl Evaluator for QuotientEvaluator {
    fn len(&self) -> usize {
        self.host.len()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        let letter = *self
            .representative
            .get(ev.letter)
            .ok_or(EvalError::BadLetter(ev.letter))?;
        self.host.feed(StreamEvent { letter, ..ev })
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        let h = element(self.host.finish()?)?;
        Ok(Answer::Element(self.class_of[h]))
    }

    fn state_bits(&self) -> u64 {
        self.host.state_bits()
    }
}
