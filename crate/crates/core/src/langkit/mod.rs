//! Regular expressions, minimal DFAs and their syntactic algebras.

mod dfa;
mod regex;
mod syntactic;

pub use dfa::{compile_min_dfa, Dfa};
pub use regex::{parse_regex, Ast, Regex, Symbol};
pub use syntactic::{
    is_commutative_language, syntactic_monoid, syntactic_semigroup, transition_structure,
    SyntacticStructure, DEFAULT_SIZE_CAP,
};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("letter {letter:?} at {position} is not in the alphabet")]
    LetterOutsideAlphabet { letter: char, position: usize },
    #[error("alphabet must be a non-empty string of distinct letters")]
    BadAlphabet,
    #[error("transition table is malformed")]
    MalformedDfa,
    #[error("syntactic algebra exceeds {cap} elements")]
    TooLarge { cap: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Letters of `spec` in order; rejects duplicates and regex metacharacters.
pub fn parse_alphabet(spec: &str) -> Result<Vec<char>, LangError> {
    let letters: Vec<char> = spec.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
    let mut seen = std::collections::HashSet::new();
    if letters.is_empty()
        || letters.iter().any(|c| "()|*+._".contains(*c) || !seen.insert(*c))
    {
        return Err(LangError::BadAlphabet);
    }
    Ok(letters)
}

/// Parses and compiles `text` over `alphabet` in one step.
pub fn language(text: &str, alphabet: &str) -> Result<Dfa, LangError> {
    Ok(compile_min_dfa(&parse_regex(text, alphabet)?))
}
