//! The streaming evaluator contract and the algebraically generic evaluators.
//!
//! An evaluator is created for a known length `n`, receives each position
//! exactly once through [`Evaluator::feed`], and produces its [`Answer`] from
//! [`Evaluator::finish`]. [`Evaluator::state_bits`] reports the size of the
//! data it keeps between events under one fixed accounting rule:
//!
//! * a position costs `⌈log2(n+1)⌉` bits,
//! * an element index costs `⌈log2|S|⌉` bits,
//! * a presence flag costs 1 bit,
//! * a threshold/period counter costs `⌈log2(T+1)⌉ + ⌈log2 P⌉` bits.
//!
//! Exactly-once delivery is checked by a [`DeliveryAudit`] that every
//! evaluator carries. The audit is instrumentation and is not counted.

mod combinators;
mod commutative;
mod counter;
mod fl;
mod local;
mod plan;
mod reference;
mod trace;

pub use combinators::{ProductEvaluator, QuotientEvaluator, SubEvaluator};
pub use commutative::CommutativeEvaluator;
pub use counter::ThresholdPeriodCounter;
pub use fl::{FlComEvaluator, FlEvaluator};
pub use local::{LiComEvaluator, LiEvaluator};
pub use plan::{make_evaluator, EvaluatorKind, Plan};
pub use reference::ReferenceEvaluator;
pub use trace::{StreamTrace, TraceError};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{bits_for, AlgebraError, Elem, FiniteSemigroup};
use crate::langkit::{Dfa, LangError, Symbol, SyntacticStructure};

/// One streamed letter: `letter` sits at 1-based `position` of a word of
/// length `length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamEvent {
    pub letter: Symbol,
    pub position: usize,
    pub length: usize,
}

impl StreamEvent {
    pub fn new(letter: Symbol, position: usize, length: usize) -> Self {
        StreamEvent {
            letter,
            position,
            length,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Element(Elem),
    Verdict(bool),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Element(e) => write!(f, "#{e}"),
            Answer::Verdict(true) => f.write_str("accept"),
            Answer::Verdict(false) => f.write_str("reject"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("position {0} delivered twice")]
    Duplicate(usize),
    #[error("position {position} outside 1..={length}")]
    OutOfRange { position: usize, length: usize },
    #[error("event length {found} does not match stream length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("letter {0} outside the alphabet")]
    BadLetter(Symbol),
    #[error("finish called after {delivered} of {length} positions")]
    Missing { delivered: usize, length: usize },
    #[error("finish called twice")]
    AlreadyFinished,
    #[error("empty word has no value without an identity")]
    EmptyWord,
    #[error("evaluator not applicable: {0}")]
    Inapplicable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lang(#[from] LangError),
}

/// A resumable out-of-order evaluator for one word length.
pub trait Evaluator: Send {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn feed(&mut self, event: StreamEvent) -> Result<(), EvalError>;
    fn finish(&mut self) -> Result<Answer, EvalError>;
    fn state_bits(&self) -> u64;
}

/// Checks exactly-once delivery of positions `1..=n`.
#[derive(Debug, Clone)]
pub struct DeliveryAudit {
    seen: Vec<u64>,
    delivered: usize,
    length: usize,
    alphabet: usize,
    finished: bool,
}

impl DeliveryAudit {
    pub fn new(length: usize, alphabet: usize) -> Self {
        DeliveryAudit {
            seen: vec![0; length.div_ceil(64)],
            delivered: 0,
            length,
            alphabet,
            finished: false,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn delivered(&self) -> usize {
        self.delivered
    }

    pub fn record(&mut self, ev: &StreamEvent) -> Result<(), EvalError> {
        if self.finished {
            return Err(EvalError::AlreadyFinished);
        }
        if ev.length != self.length {
            return Err(EvalError::LengthMismatch {
                expected: self.length,
                found: ev.length,
            });
        }
        if ev.position == 0 || ev.position > self.length {
            return Err(EvalError::OutOfRange {
                position: ev.position,
                length: self.length,
            });
        }
        if ev.letter >= self.alphabet {
            return Err(EvalError::BadLetter(ev.letter));
        }
        let (w, b) = ((ev.position - 1) / 64, (ev.position - 1) % 64);
        if self.seen[w] >> b & 1 == 1 {
            return Err(EvalError::Duplicate(ev.position));
        }
        self.seen[w] |= 1 << b;
        self.delivered += 1;
        Ok(())
    }

    pub fn close(&mut self) -> Result<(), EvalError> {
        if self.finished {
            return Err(EvalError::AlreadyFinished);
        }
        if self.delivered != self.length {
            return Err(EvalError::Missing {
                delivered: self.delivered,
                length: self.length,
            });
        }
        self.finished = true;
        Ok(())
    }
}

/// Bits for one position in a word of length `n`.
pub fn position_bits(n: usize) -> u64 {
    bits_for(n as u128 + 1)
}

/// Bits for one element of a `size`-element algebra.
pub fn element_bits(size: usize) -> u64 {
    bits_for(size as u128)
}

/// An algebra together with the images of the alphabet letters. With
/// `accepting` set, answers are membership verdicts; otherwise elements.
#[derive(Debug, Clone)]
pub struct Target {
    pub algebra: Arc<FiniteSemigroup>,
    pub letters: Arc<[Elem]>,
    pub accepting: Option<Arc<[bool]>>,
    pub empty_accepted: bool,
}

impl Target {
    /// Letters are the elements themselves; answers are elements.
    pub fn of_algebra(algebra: FiniteSemigroup) -> Target {
        let letters: Vec<Elem> = (0..algebra.size()).collect();
        Target {
            algebra: Arc::new(algebra),
            letters: letters.into(),
            accepting: None,
            empty_accepted: false,
        }
    }

    pub fn of_language(s: &SyntacticStructure) -> Target {
        Target {
            algebra: Arc::new(s.algebra.clone()),
            letters: s.morphism.clone().into(),
            accepting: Some(s.accepting.clone().into()),
            empty_accepted: s.empty_accepted,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.letters.len()
    }

    pub fn element_bits(&self) -> u64 {
        element_bits(self.algebra.size())
    }

    #[inline]
    pub fn image(&self, letter: Symbol) -> Elem {
        self.letters[letter]
    }

    /// Turns the product of the streamed word (`None` for the empty word)
    /// into an answer.
    pub fn answer(&self, value: Option<Elem>) -> Result<Answer, EvalError> {
        match (&self.accepting, value) {
            (Some(acc), Some(e)) => Ok(Answer::Verdict(acc[e])),
            (Some(_), None) => Ok(Answer::Verdict(self.empty_accepted)),
            (None, Some(e)) => Ok(Answer::Element(e)),
            (None, None) => self
                .algebra
                .identity()
                .map(Answer::Element)
                .ok_or(EvalError::EmptyWord),
        }
    }

    /// Left-to-right product of the images of `word`.
    pub fn product(&self, word: &[Symbol]) -> Option<Elem> {
        let mut it = word.iter().map(|&a| self.letters[a]);
        let first = it.next()?;
        Some(it.fold(first, |acc, x| self.algebra.mul(acc, x)))
    }

    pub fn judge(&self, word: &[Symbol]) -> Result<Answer, EvalError> {
        self.answer(self.product(word))
    }

    pub fn describe(&self, answer: Answer) -> String {
        match answer {
            Answer::Element(e) => self.algebra.name(e).to_string(),
            v => v.to_string(),
        }
    }
}

/// What an evaluator decides: membership in a DFA's language, or the product
/// in an algebra.
#[derive(Debug, Clone)]
pub enum Subject {
    Automaton(Arc<Dfa>),
    Algebraic(Target),
}

impl Subject {
    pub fn algebra(s: FiniteSemigroup) -> Subject {
        Subject::Algebraic(Target::of_algebra(s))
    }

    pub fn automaton(d: Dfa) -> Subject {
        Subject::Automaton(Arc::new(d))
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            Subject::Automaton(d) => d.alphabet().len(),
            Subject::Algebraic(t) => t.alphabet_size(),
        }
    }

    /// Ground truth for a complete word.
    pub fn judge(&self, word: &[Symbol]) -> Result<Answer, EvalError> {
        match self {
            Subject::Automaton(d) => Ok(Answer::Verdict(d.accepts(word))),
            Subject::Algebraic(t) => t.judge(word),
        }
    }

    pub fn describe(&self, answer: Answer) -> String {
        match self {
            Subject::Automaton(_) => answer.to_string(),
            Subject::Algebraic(t) => t.describe(answer),
        }
    }

    /// Name of a letter as written in traces.
    pub fn letter_name(&self, letter: Symbol) -> String {
        match self {
            Subject::Automaton(d) => d.alphabet()[letter].to_string(),
            Subject::Algebraic(t) => t.algebra.name(t.letters[letter]).to_string(),
        }
    }

    pub fn letter_index(&self, token: &str) -> Option<Symbol> {
        (0..self.alphabet_size()).find(|&a| self.letter_name(a) == token)
    }
}
