//! Brute-force ground truths: exact one-way lower bounds for a fixed domain
//! split, FL product preservation, the sum-of-squares interval lemma and the
//! pumping decomposition.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{bits_for, fl_subword, Elem, FiniteSemigroup};
use crate::eval::{Answer, EvalError, Subject};
use crate::harness::all_words;
use crate::langkit::Symbol;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} needs {needed} evaluations, cap is {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },
    #[error("position {0} is outside 1..={1}")]
    BadPosition(usize, usize),
    #[error("position {0} listed twice")]
    DuplicatePosition(usize),
    #[error("maximum {0} is above the supported 22")]
    TooLarge(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Caps for [`one_way_lower_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub assignments: u128,
    pub completions: u128,
    /// Total number of complete words evaluated.
    pub work: u128,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            assignments: 1 << 20,
            completions: 1 << 20,
            work: 1 << 27,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneWayBound {
    pub classes: usize,
    pub bits: u64,
}

/// Counts the classes of domain assignments that no completion of the other
/// positions can tell apart, and returns `⌈log2 classes⌉`. Any evaluator
/// receiving the domain first needs that many bits at the switch point.
pub fn one_way_lower_bound(
    subject: &Subject,
    n: usize,
    domain: &[usize],
    caps: OracleCaps,
) -> Result<OneWayBound, OracleError> {
    let mut inside = vec![false; n + 1];
    for &p in domain {
        if p == 0 || p > n {
            return Err(OracleError::BadPosition(p, n));
        }
        if std::mem::replace(&mut inside[p], true) {
            return Err(OracleError::DuplicatePosition(p));
        }
    }
    let rest: Vec<usize> = (1..=n).filter(|&p| !inside[p]).collect();
    let k = subject.alphabet_size() as u128;
    let assignments = k.checked_pow(domain.len() as u32).unwrap_or(u128::MAX);
    let completions = k.checked_pow(rest.len() as u32).unwrap_or(u128::MAX);
    let checks = [
        ("domain assignments", assignments, caps.assignments),
        ("completions", completions, caps.completions),
        ("class signatures", assignments.saturating_mul(completions), caps.work),
    ];
    for (what, needed, cap) in checks {
        if needed > cap {
            return Err(OracleError::CapExceeded { what, needed, cap });
        }
    }
    let fills: Vec<Vec<Symbol>> = all_words(rest.len(), k as usize).collect();
    let signatures = all_words(domain.len(), k as usize)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|assignment| -> Result<Vec<u32>, OracleError> {
            let mut word = vec![0; n];
            for (&p, &a) in domain.iter().zip(&assignment) {
                word[p - 1] = a;
            }
            fills
                .iter()
                .map(|fill| {
                    for (&p, &a) in rest.iter().zip(fill) {
                        word[p - 1] = a;
                    }
                    Ok(match subject.judge(&word)? {
                        Answer::Verdict(v) => v as u32,
                        Answer::Element(e) => e as u32,
                    })
                })
                .collect()
        })
        .collect::<Result<HashSet<Vec<u32>>, OracleError>>()?;
    let classes = signatures.len();
    Ok(OneWayBound {
        classes,
        bits: bits_for(classes as u128),
    })
}

/// Checks `u = FL^k(u)` in `m` for every word over the elements of length at
/// most `max_len`. Returns the first counterexample in length-lex order.
pub fn check_fl_preservation(m: &FiniteSemigroup, k: usize, max_len: usize) -> Option<Vec<Elem>> {
    (1..=max_len).find_map(|len| {
        all_words(len, m.size())
            .collect::<Vec<_>>()
            .into_par_iter()
            .find_first(|u| {
                let v = fl_subword(u, k);
                m.evaluate_word(u).ok() != m.evaluate_word(&v).ok()
            })
    })
}

/// A subset `x` of `{1..=size}` and an interval `[lo, hi]` violating the
/// sum-of-squares lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaresCounterexample {
    pub size: usize,
    pub x: Vec<u64>,
    pub interval: (u64, u64),
}

/// For every `size <= m_max`, every `X ⊆ {1..size}` and every interval `I`
/// with `|X| = |I|` and `ΣX = ΣI`: `Σx² >= Σi²`, with equality iff `X = I`.
pub fn check_sum_of_squares_lemma(m_max: usize) -> Result<Option<SquaresCounterexample>, OracleError> {
    if m_max > 22 {
        return Err(OracleError::TooLarge(m_max));
    }
    let found = (1..=m_max).find_map(|size| {
        (1u32..1 << size).into_par_iter().find_map_first(|mask| {
            let x: Vec<u64> = (0..size as u64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let c = x.len() as u64;
            let sum: u64 = x.iter().sum();
            let squares: u64 = x.iter().map(|v| v * v).sum();
            // interval [l, l+c-1] has sum c*l + c(c-1)/2
            let offset = c * (c - 1) / 2;
            if sum < c + offset || !(sum - offset).is_multiple_of(c) {
                return None;
            }
            let lo = (sum - offset) / c;
            let hi = lo + c - 1;
            if hi > size as u64 {
                return None;
            }
            let interval_squares: u64 = (lo..=hi).map(|v| v * v).sum();
            let equal = x.iter().copied().eq(lo..=hi);
            let holds = if equal {
                squares == interval_squares
            } else {
                squares > interval_squares
            };
            (!holds).then_some(SquaresCounterexample {
                size,
                x,
                interval: (lo, hi),
            })
        })
    });
    Ok(found)
}

/// Prefix-collision decomposition `w = w0 w1 w2` with `w0, w1` nonempty and
/// `π(w0) = π(w0 w1)`.
pub fn pumping_decomposition(s: &FiniteSemigroup, w: &[Elem]) -> Option<(usize, usize)> {
    let mut seen = vec![None; s.size()];
    let mut acc = None;
    for (i, &x) in w.iter().enumerate() {
        let p = acc.map_or(x, |a| s.mul(a, x));
        acc = Some(p);
        if let Some(j) = seen[p] {
            return Some((j + 1, i + 1));
        }
        seen[p] = Some(i);
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpingReport {
    pub words_checked: u64,
    pub exhaustive: bool,
    pub counterexample: Option<Vec<Elem>>,
}

impl PumpingReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For words of length `|S|+1` over the elements, checks that the
/// prefix-collision decomposition satisfies `π(w) = π(w0) π(w1)^ω π(w2)`.
/// Exhaustive when there are at most `cap` words, else `cap` seeded samples.
pub fn check_pumping_claim(s: &FiniteSemigroup, cap: u64, seed: u64) -> PumpingReport {
    let len = s.size() + 1;
    let omega = s.idempotent_power();
    let holds = |w: &Vec<Elem>| -> bool {
        let Some((i, j)) = pumping_decomposition(s, w) else {
            return false;
        };
        let product = |part: &[Elem]| s.evaluate_word(part).ok();
        let mut rhs = s.mul(product(&w[..i]).unwrap(), s.pow(product(&w[i..j]).unwrap(), omega));
        if let Some(tail) = product(&w[j..]) {
            rhs = s.mul(rhs, tail);
        }
        product(w) == Some(rhs)
    };
    let total = (s.size() as u128).checked_pow(len as u32);
    let exhaustive = total.is_some_and(|t| t <= cap as u128);
    let words: Vec<Vec<Elem>> = if exhaustive {
        all_words(len, s.size()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..cap)
            .map(|_| (0..len).map(|_| rng.gen_range(0..s.size())).collect())
            .collect()
    };
    PumpingReport {
        words_checked: words.len() as u64,
        exhaustive,
        counterexample: words.into_par_iter().find_first(|w| !holds(w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::langkit::{language, syntactic_monoid};

    #[test]
    fn sigma_aa_bound() {
        let subject = Subject::automaton(language("(a|b)*aa(a|b)*", "ab").unwrap());
        let b = one_way_lower_bound(&subject, 6, &[1, 2, 4, 5], OracleCaps::default()).unwrap();
        assert!(b.classes >= 4 && b.bits >= 2, "{b:?}");
    }

    #[test]
    fn commutative_classes_are_partial_products() {
        let subject = Subject::algebra(FiniteSemigroup::cyclic_group(3));
        for domain in [vec![1, 2], vec![1, 4], vec![2, 3, 4]] {
            let b = one_way_lower_bound(&subject, 4, &domain, OracleCaps::default()).unwrap();
            assert_eq!(b.classes, 3);
        }
    }

    #[test]
    fn caps_refuse() {
        let subject = Subject::automaton(language("a*", "ab").unwrap());
        let caps = OracleCaps { work: 10, ..OracleCaps::default() };
        assert!(matches!(
            one_way_lower_bound(&subject, 6, &[1], caps),
            Err(OracleError::CapExceeded { .. })
        ));
        assert_eq!(
            one_way_lower_bound(&subject, 3, &[1, 1], caps),
            Err(OracleError::DuplicatePosition(1))
        );
    }

    #[test]
    fn fl_preservation() {
        let m = syntactic_monoid(&language("ab", "ab").unwrap()).unwrap().algebra;
        assert_eq!(check_fl_preservation(&m, 5, 6), None);
        let z2 = FiniteSemigroup::cyclic_group(2);
        assert!(check_fl_preservation(&z2, 2, 6).is_some());
    }

    #[test]
    fn squares() {
        assert_eq!(check_sum_of_squares_lemma(12).unwrap(), None);
        assert_eq!(check_sum_of_squares_lemma(23), Err(OracleError::TooLarge(23)));
    }

    #[test]
    fn pumping() {
        assert!(check_pumping_claim(&FiniteSemigroup::cyclic_group(2), 1 << 20, 0).passed());
        assert!(check_pumping_claim(&FiniteSemigroup::trivial(), 1 << 20, 0).passed());
        let r = check_pumping_claim(&FiniteSemigroup::cyclic_group(9), 1000, 3);
        assert!(r.passed() && !r.exhaustive && r.words_checked == 1000);
    }
}
