use std::collections::{HashMap, VecDeque};

use super::regex::{Nfa, Regex, Symbol};
use super::LangError;

/// A complete deterministic automaton. Transitions are stored row-major:
/// `delta[q * k + a]` for `k` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    delta: Vec<usize>,
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<char>,
        delta: Vec<usize>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Result<Dfa, LangError> {
        let states = accepting.len();
        if states == 0 || initial >= states || delta.len() != states * alphabet.len() {
            return Err(LangError::MalformedDfa);
        }
        if delta.iter().any(|&q| q >= states) {
            return Err(LangError::MalformedDfa);
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    #[inline]
    pub fn step(&self, q: usize, a: Symbol) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn run(&self, word: &[Symbol]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.accepting[self.run(word)]
    }

    pub fn letter_index(&self, c: char) -> Option<Symbol> {
        self.alphabet.iter().position(|&a| a == c)
    }

    /// Maps a string to letter indices.
    pub fn encode(&self, text: &str) -> Result<Vec<Symbol>, LangError> {
        text.chars()
            .enumerate()
            .map(|(i, c)| {
                self.letter_index(c)
                    .ok_or(LangError::LetterOutsideAlphabet { letter: c, position: i })
            })
            .collect()
    }

    pub fn accepts_str(&self, text: &str) -> Result<bool, LangError> {
        Ok(self.accepts(&self.encode(text)?))
    }

    /// Subset construction from a Thompson automaton, followed by [`Self::minimize`].
    pub fn from_regex(r: &Regex) -> Dfa {
        let nfa = Nfa::thompson(&r.ast);
        let k = r.alphabet.len();
        let mut start = vec![0];
        nfa.close(&mut start);
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for a in 0..k {
                let mut next: Vec<usize> = sets[i]
                    .iter()
                    .flat_map(|&q| nfa.moves[q].iter())
                    .filter(|&&(b, _)| b == a)
                    .map(|&(_, t)| t)
                    .collect();
                nfa.close(&mut next);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    sets.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.contains(&nfa.accept)).collect();
        Dfa {
            alphabet: r.alphabet.clone(),
            delta,
            initial: 0,
            accepting,
        }
        .minimize()
    }

    /// Drops unreachable states, merges equivalent ones by Moore refinement,
    /// and renumbers states in breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let n = self.num_states();
        let mut class: Vec<usize> = self.accepting.iter().map(|&acc| acc as usize).collect();
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let refined: Vec<usize> = (0..n)
                .map(|q| {
                    let mut sig = Vec::with_capacity(k + 1);
                    sig.push(class[q]);
                    sig.extend((0..k).map(|a| class[self.step(q, a)]));
                    let next = ids.len();
                    *ids.entry(sig).or_insert(next)
                })
                .collect();
            let before = class.iter().copied().max().map_or(0, |m| m + 1);
            let stable = ids.len() == before;
            class = refined;
            if stable {
                break;
            }
        }
        // BFS over class representatives
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut reps = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        order.insert(class[self.initial], 0);
        reps.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let t = self.step(q, a);
                if let std::collections::hash_map::Entry::Vacant(e) = order.entry(class[t]) {
                    e.insert(reps.len());
                    reps.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = reps
            .iter()
            .flat_map(|&q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| order[&class[self.step(q, a)]])
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            accepting: reps.iter().map(|&q| self.accepting[q]).collect(),
        }
    }
}

pub fn compile_min_dfa(r: &Regex) -> Dfa {
    Dfa::from_regex(r)
}

#[cfg(test)]
mod tests {
    use super::super::parse_regex;
    use super::*;

    fn dfa(text: &str, alphabet: &str) -> Dfa {
        compile_min_dfa(&parse_regex(text, alphabet).unwrap())
    }

    #[test]
    fn state_counts() {
        assert_eq!(dfa("(aa)*", "a").num_states(), 2);
        assert_eq!(dfa("a*", "ab").num_states(), 2);
        assert_eq!(dfa(".*", "ab").num_states(), 1);
        assert_eq!(dfa("ab", "ab").num_states(), 4);
        assert_eq!(dfa("a*bba*", "ab").num_states(), 4);
    }

    #[test]
    fn membership() {
        let d = dfa("(a|b)*aa(a|b)*", "ab");
        assert!(d.accepts_str("baab").unwrap());
        assert!(!d.accepts_str("aba").unwrap());
        let d = dfa("a+b|", "ab");
        assert!(d.accepts_str("").unwrap());
        assert!(d.accepts_str("aab").unwrap());
        assert!(!d.accepts_str("b").unwrap());
        assert!(d.accepts_str("c").is_err());
    }

    #[test]
    fn minimization_is_idempotent() {
        for (text, alpha) in [("a*b*a*b*a*", "ab"), ("(ab)*", "ab"), ("a*ba+ca*", "abc")] {
            let d = dfa(text, alpha);
            assert_eq!(d.minimize(), d);
        }
    }

    #[test]
    fn minimizes_redundant_input() {
        // two copies of the same accepting sink plus an unreachable state
        let d = Dfa::new(vec!['a'], vec![1, 2, 1, 0], 0, vec![false, true, true, false]).unwrap();
        let m = d.minimize();
        assert_eq!(m.num_states(), 2);
        assert!(!m.accepts(&[]));
        assert!(m.accepts(&[0, 0, 0]));
    }
}
