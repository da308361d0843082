//! Finite semigroups and monoids given by explicit multiplication tables.
//!
//! Everything downstream (equation checking, regime classification, the
//! streaming evaluators) works on element indices into a [`FiniteSemigroup`].

mod catalog;
mod classify;
mod equations;
mod table_file;

pub use catalog::{closure, transformation_catalog, CatalogConfig, Transformation};
pub use classify::{
    classify_monoid, classify_monoid_with_cap, classify_semigroup, classify_semigroup_with_cap,
    Regime, RegimeReport, Subject,
};
pub use equations::{
    check_equation, check_equation_with_cap, Equation, EquationCheck, EquationWitness,
    DEFAULT_LOOKUP_CAP,
};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an element in a [`FiniteSemigroup`].
pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("semigroup must have at least one element")]
    Empty,
    #[error("element name {0:?} is empty or contains whitespace")]
    BadName(String),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("table has {found} cells, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowShape { row: usize, expected: usize, found: usize },
    #[error("table entry {0} out of range")]
    EntryOutOfRange(usize),
    #[error("not associative: ({0}{1}){2} != {0}({1}{2})")]
    NotAssociative(String, String, String),
    #[error("{0} is not an identity element")]
    NotIdentity(String),
    #[error("empty word has no value in a semigroup without identity")]
    EmptyWord,
    #[error("{0}")]
    Parse(String),
    #[error("subset is not closed under multiplication")]
    NotClosed,
    #[error("class map is not a congruence")]
    NotCongruence,
    #[error("equation check needs {needed} table lookups, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("operation requires a monoid")]
    NotMonoid,
}

/// A finite semigroup: an associative multiplication table over named elements,
/// optionally with a distinguished identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    names: Vec<String>,
    table: Vec<Elem>,
    identity: Option<Elem>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("elements", &self.names)
            .field("identity", &self.identity.map(|e| &self.names[e]))
            .finish()
    }
}

impl FiniteSemigroup {
    /// Builds a semigroup from names and a row-major table, checking
    /// associativity and the identity law.
    pub fn new(
        names: Vec<String>,
        table: Vec<Elem>,
        identity: Option<Elem>,
    ) -> Result<Self, AlgebraError> {
        let size = names.len();
        if size == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut seen = HashMap::new();
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(AlgebraError::BadName(name.clone()));
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
        }
        if table.len() != size * size {
            return Err(AlgebraError::TableShape {
                expected: size * size,
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= size) {
            return Err(AlgebraError::EntryOutOfRange(bad));
        }
        let sg = FiniteSemigroup {
            names,
            table,
            identity: None,
        };
        sg.check_associative()?;
        match identity {
            Some(e) if e >= size => Err(AlgebraError::EntryOutOfRange(e)),
            Some(e) if !sg.is_identity(e) => Err(AlgebraError::NotIdentity(sg.names[e].clone())),
            _ => Ok(FiniteSemigroup { identity, ..sg }),
        }
    }

    /// Builds a semigroup from a product closure over `0..size`.
    pub fn from_fn(
        names: Vec<String>,
        identity: Option<Elem>,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, AlgebraError> {
        let size = names.len();
        let table = (0..size * size).map(|c| mul(c / size, c % size)).collect();
        Self::new(names, table, identity)
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Err(AlgebraError::NotAssociative(
                            self.names[i].clone(),
                            self.names[j].clone(),
                            self.names[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn is_identity(&self, e: Elem) -> bool {
        (0..self.size()).all(|x| self.mul(e, x) == x && self.mul(x, e) == x)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> Option<Elem> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    /// Searches the table for a neutral element, whether or not one was declared.
    pub fn find_identity(&self) -> Option<Elem> {
        (0..self.size()).find(|&e| self.is_identity(e))
    }

    /// Searches the table for an absorbing element.
    pub fn find_zero(&self) -> Option<Elem> {
        (0..self.size())
            .find(|&z| (0..self.size()).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    /// Returns a copy with the identity declared (or cleared).
    pub fn with_identity(&self, identity: Option<Elem>) -> Result<Self, AlgebraError> {
        match identity {
            Some(e) if e >= self.size() => Err(AlgebraError::EntryOutOfRange(e)),
            Some(e) if !self.is_identity(e) => {
                Err(AlgebraError::NotIdentity(self.names[e].clone()))
            }
            _ => Ok(FiniteSemigroup {
                identity,
                ..self.clone()
            }),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.names.len() + b]
    }

    /// Left fold of the table over `word`.
    pub fn evaluate_word(&self, word: &[Elem]) -> Result<Elem, AlgebraError> {
        match word.split_first() {
            None => self.identity.ok_or(AlgebraError::EmptyWord),
            Some((&first, rest)) => Ok(rest.iter().fold(first, |acc, &x| self.mul(acc, x))),
        }
    }

    /// `x^exp` for `exp >= 1`.
    pub fn pow(&self, x: Elem, exp: usize) -> Elem {
        assert!(exp >= 1, "powers are only formed with positive exponents");
        let mut result = x;
        let mut base = x;
        let mut e = exp - 1;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Index and period of the cyclic subsemigroup generated by `x`:
    /// the smallest `i >= 1`, `p >= 1` with `x^i = x^(i+p)`.
    pub fn index_and_period(&self, x: Elem) -> (usize, usize) {
        let mut first_seen = vec![0usize; self.size()];
        let mut cur = x;
        let mut k = 1;
        loop {
            if first_seen[cur] != 0 {
                let i = first_seen[cur];
                return (i, k - i);
            }
            first_seen[cur] = k;
            cur = self.mul(cur, x);
            k += 1;
        }
    }

    /// The idempotent power: smallest `n >= 1` with `x^n = x^(2n)` for every `x`.
    pub fn idempotent_power(&self) -> usize {
        let mut lcm = 1usize;
        let mut max_index = 1usize;
        for x in 0..self.size() {
            let (i, p) = self.index_and_period(x);
            max_index = max_index.max(i);
            lcm = lcm / gcd(lcm, p) * p;
        }
        max_index.div_ceil(lcm) * lcm
    }

    /// Table of `x^ω` for every element.
    pub fn omega_table(&self) -> Vec<Elem> {
        let w = self.idempotent_power();
        (0..self.size()).map(|x| self.pow(x, w)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Direct product; element `(a, b)` has index `a * other.size() + b`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let n2 = other.size();
        let size = self.size() * n2;
        let names = (0..size)
            .map(|c| format!("({},{})", self.names[c / n2], other.names[c % n2]))
            .collect();
        let table = (0..size * size)
            .map(|cell| {
                let (p, q) = (cell / size, cell % size);
                self.mul(p / n2, q / n2) * n2 + other.mul(p % n2, q % n2)
            })
            .collect();
        let identity = match (self.identity, other.identity) {
            (Some(a), Some(b)) => Some(a * n2 + b),
            _ => None,
        };
        FiniteSemigroup {
            names,
            table,
            identity,
        }
    }

    /// Subsemigroup on `elements` (in the given order). Errors if not closed.
    /// The identity is kept when it belongs to the subset.
    pub fn subsemigroup(&self, elements: &[Elem]) -> Result<FiniteSemigroup, AlgebraError> {
        let mut position = vec![None; self.size()];
        for (i, &e) in elements.iter().enumerate() {
            if e >= self.size() {
                return Err(AlgebraError::EntryOutOfRange(e));
            }
            position[e] = Some(i);
        }
        let mut table = Vec::with_capacity(elements.len() * elements.len());
        for &a in elements {
            for &b in elements {
                table.push(position[self.mul(a, b)].ok_or(AlgebraError::NotClosed)?);
            }
        }
        let names = elements.iter().map(|&e| self.names[e].clone()).collect();
        let identity = self.identity.and_then(|e| position[e]);
        FiniteSemigroup::new(names, table, identity)
    }

    /// Quotient by the equivalence `class_of`; classes are numbered
    /// `0..k` and named after their first member.
    pub fn quotient(&self, class_of: &[usize]) -> Result<FiniteSemigroup, AlgebraError> {
        if class_of.len() != self.size() {
            return Err(AlgebraError::TableShape {
                expected: self.size(),
                found: class_of.len(),
            });
        }
        let classes = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![None; classes];
        for (e, &c) in class_of.iter().enumerate() {
            rep[c].get_or_insert(e);
        }
        let rep: Vec<Elem> = rep
            .into_iter()
            .map(|r| r.ok_or(AlgebraError::NotCongruence))
            .collect::<Result<_, _>>()?;
        for a in 0..self.size() {
            for b in 0..self.size() {
                if class_of[self.mul(a, b)] != class_of[self.mul(rep[class_of[a]], rep[class_of[b]])]
                {
                    return Err(AlgebraError::NotCongruence);
                }
            }
        }
        let names = rep.iter().map(|&r| self.names[r].clone()).collect();
        let table = (0..classes * classes)
            .map(|c| class_of[self.mul(rep[c / classes], rep[c % classes])])
            .collect();
        FiniteSemigroup::new(names, table, self.identity.map(|e| class_of[e]))
    }

    /// The cyclic group Z/mZ with elements named `e, g, g2, ...`.
    pub fn cyclic_group(m: usize) -> FiniteSemigroup {
        let names = (0..m)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        FiniteSemigroup::from_fn(names, Some(0), |a, b| (a + b) % m)
            .expect("cyclic group is a monoid")
    }

    /// The one-element monoid.
    pub fn trivial() -> FiniteSemigroup {
        FiniteSemigroup::cyclic_group(1)
    }
}

/// Retains, for every element, the positions of its first `k` and last `k`
/// occurrences in `word`, preserving the original order.
pub fn fl_subword(word: &[Elem], k: usize) -> Vec<Elem> {
    assert!(k >= 1, "k must be positive");
    let mut keep = vec![false; word.len()];
    let mut counts: HashMap<Elem, usize> = HashMap::new();
    for (i, &m) in word.iter().enumerate() {
        let c = counts.entry(m).or_insert(0);
        if *c < k {
            keep[i] = true;
        }
        *c += 1;
    }
    counts.clear();
    for (i, &m) in word.iter().enumerate().rev() {
        let c = counts.entry(m).or_insert(0);
        if *c < k {
            keep[i] = true;
        }
        *c += 1;
    }
    word.iter()
        .zip(keep)
        .filter_map(|(&m, k)| k.then_some(m))
        .collect()
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Bits needed to write one of `count` distinct values.
pub fn bits_for(count: u128) -> u64 {
    if count <= 1 {
        0
    } else {
        (128 - (count - 1).leading_zeros()) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::cyclic_group(2)
    }

    #[test]
    fn z2_word_folds_to_identity() {
        let g = z2();
        assert_eq!(g.evaluate_word(&[1, 1]).unwrap(), 0);
        assert_eq!(g.evaluate_word(&[0, 0, 0]).unwrap(), 0);
        assert_eq!(g.evaluate_word(&[]).unwrap(), 0);
    }

    #[test]
    fn empty_word_without_identity_is_an_error() {
        let left_zero = FiniteSemigroup::from_fn(vec!["p".into(), "q".into()], None, |a, _| a).unwrap();
        assert_eq!(left_zero.evaluate_word(&[]), Err(AlgebraError::EmptyWord));
    }

    #[test]
    fn idempotent_powers() {
        assert_eq!(FiniteSemigroup::trivial().idempotent_power(), 1);
        assert_eq!(z2().idempotent_power(), 2);
        assert_eq!(FiniteSemigroup::cyclic_group(6).idempotent_power(), 6);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a·a = b, everything else a
        let err = FiniteSemigroup::new(vec!["a".into(), "b".into()], vec![1, 0, 0, 0], None);
        assert!(matches!(err, Err(AlgebraError::NotAssociative(..))));
    }

    #[test]
    fn rejects_false_identity() {
        let err = FiniteSemigroup::new(vec!["e".into(), "g".into()], vec![0, 1, 1, 0], Some(1));
        assert!(matches!(err, Err(AlgebraError::NotIdentity(_))));
    }

    #[test]
    fn rejects_duplicate_names() {
        let err = FiniteSemigroup::new(vec!["e".into(), "e".into()], vec![0, 1, 1, 0], None);
        assert!(matches!(err, Err(AlgebraError::DuplicateName(_))));
    }

    #[test]
    fn fl_subword_examples() {
        assert_eq!(fl_subword(&[7, 7, 7], 1), vec![7, 7]);
        assert_eq!(fl_subword(&[0, 1, 0, 1, 0], 2), vec![0, 1, 0, 1, 0]);
        assert_eq!(fl_subword(&[3, 3, 3, 3], 2), vec![3, 3, 3, 3]);
        assert_eq!(fl_subword(&[], 3), Vec::<Elem>::new());
        assert_eq!(fl_subword(&[1, 2, 1, 1, 2, 1], 1), vec![1, 2, 2, 1]);
    }

    #[test]
    fn product_sub_and_quotient() {
        let p = z2().direct_product(&z2());
        assert_eq!(p.size(), 4);
        assert_eq!(p.identity(), Some(0));
        assert_eq!(p.name(3), "(g,g)");
        assert_eq!(p.mul(3, 1), 2);
        let sub = p.subsemigroup(&[0, 3]).unwrap();
        assert_eq!(sub.identity(), Some(0));
        assert!(p.subsemigroup(&[1, 2]).is_err());
        // project onto the first coordinate
        let q = p.quotient(&[0, 0, 1, 1]).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.mul(1, 1), 0);
        assert!(p.quotient(&[0, 1, 1, 0]).is_ok());
        assert!(matches!(p.quotient(&[0, 1, 0, 0]), Err(AlgebraError::NotCongruence)));
    }

    #[test]
    fn bits_for_counts() {
        assert_eq!(bits_for(1), 0);
        assert_eq!(bits_for(2), 1);
        assert_eq!(bits_for(5), 3);
        assert_eq!(bits_for(17), 5);
        assert_eq!(bits_for(16), 4);
    }
}
