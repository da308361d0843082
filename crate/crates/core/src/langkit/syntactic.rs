use std::collections::HashMap;

use super::dfa::Dfa;
use super::regex::Symbol;
use super::LangError;
use crate::algebra::{Elem, FiniteSemigroup};

/// Default bound on the number of extracted elements.
pub const DEFAULT_SIZE_CAP: usize = 10_000;

/// The syntactic monoid or semigroup of a language, with its morphism.
#[derive(Debug, Clone)]
pub struct SyntacticStructure {
    pub algebra: FiniteSemigroup,
    /// Image of each alphabet letter.
    pub morphism: Vec<Elem>,
    pub accepting: Vec<bool>,
    /// Whether the empty word belongs to the language. The empty word has no
    /// image in the semigroup case.
    pub empty_accepted: bool,
    pub alphabet: Vec<char>,
}

impl SyntacticStructure {
    pub fn image(&self, word: &[Symbol]) -> Option<Elem> {
        let letters: Vec<Elem> = word.iter().map(|&a| self.morphism[a]).collect();
        self.algebra.evaluate_word(&letters).ok()
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        match self.image(word) {
            Some(e) => self.accepting[e],
            None => self.empty_accepted,
        }
    }
}

pub fn syntactic_monoid(d: &Dfa) -> Result<SyntacticStructure, LangError> {
    transition_structure(d, true, DEFAULT_SIZE_CAP)
}

pub fn syntactic_semigroup(d: &Dfa) -> Result<SyntacticStructure, LangError> {
    transition_structure(d, false, DEFAULT_SIZE_CAP)
}

/// True iff every pair of letters commutes, i.e. the syntactic monoid passes `xy = yx`.
pub fn is_commutative_language(d: &Dfa) -> bool {
    let k = d.alphabet().len();
    (0..d.num_states()).all(|q| {
        (0..k).all(|a| (a + 1..k).all(|b| d.step(d.step(q, a), b) == d.step(d.step(q, b), a)))
    })
}

struct Closure {
    index: HashMap<Vec<usize>, Elem>,
    maps: Vec<Vec<usize>>,
    names: Vec<String>,
    cap: usize,
}

impl Closure {
    fn insert(&mut self, t: Vec<usize>, name: impl FnOnce() -> String) -> Result<Elem, LangError> {
        if let Some(&e) = self.index.get(&t) {
            return Ok(e);
        }
        if self.maps.len() == self.cap {
            return Err(LangError::TooLarge { cap: self.cap });
        }
        self.index.insert(t.clone(), self.maps.len());
        self.maps.push(t);
        self.names.push(name());
        Ok(self.maps.len() - 1)
    }
}

/// Transition monoid (with `with_identity`) or semigroup of `d`. Elements are
/// discovered breadth-first with letters in alphabet order, so each one is
/// named by the length-lexicographically least word inducing it. An absorbing
/// element is renamed `0`.
pub fn transition_structure(
    d: &Dfa,
    with_identity: bool,
    cap: usize,
) -> Result<SyntacticStructure, LangError> {
    let k = d.alphabet().len();
    let states = d.num_states();
    let mut cl = Closure {
        index: HashMap::new(),
        maps: Vec::new(),
        names: Vec::new(),
        cap,
    };
    let letter = |a: Symbol| d.alphabet()[a].to_string();
    let mut morphism = vec![0; k];
    if with_identity {
        cl.insert((0..states).collect(), || "1".into())?;
        for (a, slot) in morphism.iter_mut().enumerate() {
            *slot = cl.insert((0..states).map(|q| d.step(q, a)).collect(), || letter(a))?;
        }
    } else {
        for (a, slot) in morphism.iter_mut().enumerate() {
            *slot = cl.insert((0..states).map(|q| d.step(q, a)).collect(), || letter(a))?;
        }
    }
    let mut at = if with_identity { 1 } else { 0 };
    while at < cl.maps.len() {
        for a in 0..k {
            let t: Vec<usize> = cl.maps[at].iter().map(|&q| d.step(q, a)).collect();
            let prefix = cl.names[at].clone();
            cl.insert(t, || prefix + &letter(a))?;
        }
        at += 1;
    }

    let Closure { index, maps, mut names, .. } = cl;
    let size = maps.len();
    let table: Vec<Elem> = (0..size * size)
        .map(|c| {
            let (f, g) = (&maps[c / size], &maps[c % size]);
            index[&f.iter().map(|&q| g[q]).collect::<Vec<_>>()]
        })
        .collect();
    let accepting = maps.iter().map(|t| d.is_accepting(t[d.initial()])).collect();

    let unnamed = FiniteSemigroup::new(names.clone(), table.clone(), None)?;
    if size > 1 && !names.iter().any(|n| n == "0") {
        if let Some(z) = unnamed.find_zero() {
            names[z] = "0".into();
        }
    }
    let identity = if with_identity { Some(0) } else { unnamed.find_identity() };
    let algebra = FiniteSemigroup::new(names, table, identity)?;
    Ok(SyntacticStructure {
        algebra,
        morphism,
        accepting,
        empty_accepted: d.is_accepting(d.initial()),
        alphabet: d.alphabet().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::super::{compile_min_dfa, parse_regex};
    use super::*;

    fn dfa(text: &str, alphabet: &str) -> Dfa {
        compile_min_dfa(&parse_regex(text, alphabet).unwrap())
    }

    fn names(s: &SyntacticStructure) -> Vec<&str> {
        s.algebra.names().iter().map(String::as_str).collect()
    }

    #[test]
    fn monoid_examples() {
        let m = syntactic_monoid(&dfa("(aa)*", "a")).unwrap();
        assert_eq!(names(&m), ["1", "a"]);
        assert!(m.algebra.is_commutative());
        let m = syntactic_monoid(&dfa("ab", "ab")).unwrap();
        assert_eq!(names(&m), ["1", "a", "b", "0", "ab"]);
        assert_eq!(m.algebra.idempotent_power(), 2);
        let m = syntactic_monoid(&dfa("a*bba*", "ab")).unwrap();
        assert_eq!(names(&m), ["1", "a", "b", "ab", "ba", "bb", "0"]);
    }

    #[test]
    fn semigroup_examples() {
        let s = syntactic_semigroup(&dfa("a*bc*", "abc")).unwrap();
        assert_eq!(names(&s), ["a", "b", "c", "0"]);
        let s = syntactic_semigroup(&dfa("a.*b", "ab")).unwrap();
        assert_eq!(names(&s), ["a", "b", "ab", "ba"]);
        // (x,y)(x',y') = (x,y')
        let g = &s.algebra;
        let (a, b, ab, ba) = (0, 1, 2, 3);
        assert_eq!(g.mul(ab, ba), a);
        assert_eq!(g.mul(ba, ab), b);
        assert_eq!(g.mul(a, b), ab);
        let s = syntactic_semigroup(&dfa("a*ba+ca*", "abc")).unwrap();
        assert_eq!(names(&s), ["a", "b", "c", "ac", "ba", "0", "bac"]);
        let s = syntactic_semigroup(&dfa("a*bba*", "ab")).unwrap();
        assert_eq!(names(&s), ["a", "b", "ab", "ba", "bb", "0"]);
    }

    #[test]
    fn neutral_letter_gives_identity_in_semigroup() {
        // c acts neutrally
        let d = dfa("(c|ac*b)*", "abc");
        let s = syntactic_semigroup(&d).unwrap();
        let m = syntactic_monoid(&d).unwrap();
        assert_eq!(s.algebra.size(), m.algebra.size());
        assert_eq!(m.morphism[2], m.algebra.identity().unwrap());
        assert_eq!(s.algebra.identity(), s.algebra.index_of("c"));
    }

    #[test]
    fn commutative_languages() {
        assert!(is_commutative_language(&dfa("(aa)*", "a")));
        assert!(!is_commutative_language(&dfa("ab", "ab")));
        assert!(is_commutative_language(&dfa(".*", "ab")));
    }

    #[test]
    fn morphism_soundness() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (text, alpha) in [
            ("(ab)*", "ab"),
            ("a*bba*", "ab"),
            ("a*b*a*b*a*", "ab"),
            ("a.*b", "ab"),
            ("a*ba+ca*", "abc"),
            ("(a|b)*aa(a|b)*", "ab"),
        ] {
            let d = dfa(text, alpha);
            let m = syntactic_monoid(&d).unwrap();
            let s = syntactic_semigroup(&d).unwrap();
            for _ in 0..1000 {
                let len = rng.gen_range(0..=12);
                let w: Vec<Symbol> = (0..len).map(|_| rng.gen_range(0..alpha.len())).collect();
                assert_eq!(m.accepts(&w), d.accepts(&w), "{text}");
                assert_eq!(s.accepts(&w), d.accepts(&w), "{text}");
            }
        }
    }
}
