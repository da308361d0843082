//! Stream trace files: `n=<N>` followed by `<pos> <letter>` lines.

use std::fmt::Write as _;

use thiserror::Error;

use super::{StreamEvent, Subject};
use crate::langkit::Symbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown letter {token:?}")]
    UnknownLetter { line: usize, token: String },
}

/// A full stream: the length and the events in delivery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamTrace {
    pub n: usize,
    pub events: Vec<(usize, Symbol)>,
}

impl StreamTrace {
    /// Events of `word` delivered in `order` (1-based positions).
    pub fn from_order(word: &[Symbol], order: &[usize]) -> Self {
        StreamTrace {
            n: word.len(),
            events: order.iter().map(|&p| (p, word[p - 1])).collect(),
        }
    }

    pub fn events(&self) -> impl Iterator<Item = StreamEvent> + '_ {
        self.events
            .iter()
            .map(move |&(position, letter)| StreamEvent::new(letter, position, self.n))
    }

    /// Parses a trace, resolving letter tokens through `subject`. Duplicate
    /// or missing positions are left for the evaluator to reject.
    pub fn parse(text: &str, subject: &Subject) -> Result<Self, TraceError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(TraceError::Syntax {
            line: 1,
            message: "missing `n=` header".into(),
        })?;
        let n = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| TraceError::Syntax {
                line,
                message: format!("expected `n=<N>`, got {header:?}"),
            })?;
        let mut events = Vec::with_capacity(n);
        for (line, text) in lines {
            let mut parts = text.split_whitespace();
            let (Some(pos), Some(token), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(TraceError::Syntax {
                    line,
                    message: "expected `<pos> <letter>`".into(),
                });
            };
            let pos = pos.parse::<usize>().map_err(|_| TraceError::Syntax {
                line,
                message: format!("bad position {pos:?}"),
            })?;
            let letter = subject.letter_index(token).ok_or_else(|| TraceError::UnknownLetter {
                line,
                token: token.to_string(),
            })?;
            events.push((pos, letter));
        }
        Ok(StreamTrace { n, events })
    }

    pub fn render(&self, subject: &Subject) -> String {
        let mut out = format!("n={}\n", self.n);
        for &(p, a) in &self.events {
            let _ = writeln!(out, "{p} {}", subject.letter_name(a));
        }
        out
    }
}
