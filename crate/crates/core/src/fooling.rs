//! Fooling-set constructions and their brute-force verification.
//!
//! A fooling set is a family of partial words sharing one domain, together
//! with, for each pair, a witness filling exactly the complement such that
//! the two completions get different answers. A verified family of size `m`
//! forces any evaluator that receives the domain first to keep `⌈log2 m⌉`
//! bits at the switch point.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{bits_for, check_equation, Elem, Equation, EquationWitness, FiniteSemigroup};
use crate::eval::{EvalError, Evaluator, ReferenceEvaluator, StreamEvent, Subject};
use crate::langkit::{language, syntactic_monoid, syntactic_semigroup, LangError, Symbol};

pub type PartialWord = Vec<Option<Symbol>>;

type Witness = Arc<dyn Fn(usize, usize) -> PartialWord + Send + Sync>;

#[derive(Debug, Error)]
pub enum FoolingError {
    #[error("word {0} does not have the common domain")]
    NotHomogeneous(usize),
    #[error("witness for ({0}, {1}) does not fill exactly the complement")]
    NotComplementary(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Lang(#[from] LangError),
}

/// Homogeneous partial words with a lazily computed witness per pair.
#[derive(Clone)]
pub struct FoolingSet {
    pub name: String,
    pub length: usize,
    /// Shared domain, 1-based and increasing.
    pub domain: Vec<usize>,
    pub words: Vec<PartialWord>,
    /// The subject the construction is meant for.
    pub subject: Subject,
    witness: Witness,
}

impl fmt::Debug for FoolingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FoolingSet")
            .field("name", &self.name)
            .field("length", &self.length)
            .field("size", &self.words.len())
            .finish()
    }
}

impl FoolingSet {
    pub fn new(
        name: impl Into<String>,
        words: Vec<PartialWord>,
        subject: Subject,
        witness: impl Fn(usize, usize) -> PartialWord + Send + Sync + 'static,
    ) -> Self {
        let length = words.first().map_or(0, Vec::len);
        let domain = words.first().map_or_else(Vec::new, domain_of);
        FoolingSet {
            name: name.into(),
            length,
            domain,
            words,
            subject,
            witness: Arc::new(witness),
        }
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Bits forced by a verified set of this size.
    pub fn bound_bits(&self) -> u64 {
        bits_for(self.words.len() as u128)
    }

    pub fn witness(&self, i: usize, j: usize) -> PartialWord {
        (self.witness)(i, j)
    }

    /// Replaces the witness function, e.g. to build a negative control.
    pub fn with_witness(
        mut self,
        witness: impl Fn(usize, usize) -> PartialWord + Send + Sync + 'static,
    ) -> Self {
        self.witness = Arc::new(witness);
        self
    }

    /// `w_i ∘ v_ij` and `w_j ∘ v_ij`.
    pub fn compositions(&self, i: usize, j: usize) -> (Vec<Symbol>, Vec<Symbol>) {
        let v = self.witness(i, j);
        (compose(&self.words[i], &v), compose(&self.words[j], &v))
    }
}

fn domain_of(w: &PartialWord) -> Vec<usize> {
    w.iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|_| i + 1))
        .collect()
}

fn compose(w: &PartialWord, v: &PartialWord) -> Vec<Symbol> {
    w.iter()
        .zip(v)
        .map(|(a, b)| a.or(*b).expect("complementary"))
        .collect()
}

/// Renders a partial word with `_` for holes.
pub fn render_partial(w: &PartialWord, subject: &Subject) -> String {
    w.iter()
        .map(|c| c.map_or_else(|| "_".to_string(), |a| subject.letter_name(a)))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoolingReport {
    pub size: usize,
    pub pairs_checked: u64,
    pub exhaustive: bool,
    /// Pair cap in effect when sampling.
    pub cap: u64,
    pub bound_bits: u64,
    pub counterexample: Option<(usize, usize)>,
}

impl FoolingReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub const DEFAULT_PAIR_CAP: u64 = 1 << 20;

/// Answer for a complete word, streamed domain first.
fn streamed_answer(
    subject: &Subject,
    word: &[Symbol],
    order: &[usize],
) -> Result<crate::eval::Answer, EvalError> {
    let mut e = ReferenceEvaluator::new(subject.clone(), word.len());
    for &p in order {
        e.feed(StreamEvent::new(word[p - 1], p, word.len()))?;
    }
    e.finish()
}

/// Checks homogeneity and complementarity, then that each pair's
/// compositions get different answers. All pairs are tried when there are at
/// most `pair_cap`; otherwise `pair_cap` seeded random pairs.
pub fn verify_fooling_set(
    f: &FoolingSet,
    subject: &Subject,
    pair_cap: u64,
    seed: u64,
) -> Result<FoolingReport, FoolingError> {
    for (i, w) in f.words.iter().enumerate() {
        if w.len() != f.length || domain_of(w) != f.domain {
            return Err(FoolingError::NotHomogeneous(i));
        }
    }
    let mut inside = vec![false; f.length + 1];
    for &p in &f.domain {
        inside[p] = true;
    }
    let order: Vec<usize> = f
        .domain
        .iter()
        .copied()
        .chain((1..=f.length).filter(|&p| !inside[p]))
        .collect();

    let m = f.words.len() as u64;
    let total = m * m.saturating_sub(1) / 2;
    let exhaustive = total <= pair_cap;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..f.words.len())
            .flat_map(|i| (i + 1..f.words.len()).map(move |j| (i, j)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..pair_cap)
            .map(|_| {
                let i = rng.gen_range(0..f.words.len());
                let mut j = rng.gen_range(0..f.words.len() - 1);
                if j >= i {
                    j += 1;
                }
                (i.min(j), i.max(j))
            })
            .collect()
    };

    let outcome = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<(usize, usize)>, FoolingError> {
            let v = f.witness(i, j);
            let holes: Vec<usize> = (1..=f.length).filter(|&p| !inside[p]).collect();
            if v.len() != f.length || domain_of(&v) != holes {
                return Err(FoolingError::NotComplementary(i, j));
            }
            let (left, right) = (compose(&f.words[i], &v), compose(&f.words[j], &v));
            let a = streamed_answer(subject, &left, &order)?;
            let b = streamed_answer(subject, &right, &order)?;
            Ok((a == b).then_some((i, j)))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let counterexample = match outcome {
        None => None,
        Some(Ok(hit)) => hit,
        Some(Err(e)) => return Err(e),
    };
    Ok(FoolingReport {
        size: f.words.len(),
        pairs_checked: pairs.len() as u64,
        exhaustive,
        cap: pair_cap,
        bound_bits: f.bound_bits(),
        counterexample,
    })
}

const A: Symbol = 0;
const B: Symbol = 1;

fn cells(pattern: impl IntoIterator<Item = Option<Symbol>>) -> PartialWord {
    pattern.into_iter().collect()
}

/// `2^n` words `(b (a|b) _)^n` for `Σ*aaΣ*` over `ab`. The witness puts `a`
/// after the first block where the two words differ and `b` elsewhere.
pub fn build_sigma_aa_fooling(n: usize) -> Result<FoolingSet, FoolingError> {
    let subject = Subject::automaton(language("(a|b)*aa(a|b)*", "ab")?);
    let words = (0..1usize << n)
        .map(|alpha| {
            cells((0..n).flat_map(|k| [Some(B), Some(if alpha >> k & 1 == 0 { A } else { B }), None]))
        })
        .collect();
    Ok(FoolingSet::new("sigma-aa", words, subject, move |i, j| {
        let p = (i ^ j).trailing_zeros() as usize;
        cells((0..n).flat_map(|k| [None, None, Some(if k == p { A } else { B })]))
    }))
}

/// `w_i = (e _)^(i-1) (x _) (e _)^(n-i)` for non-commuting `x, y` in a monoid.
pub fn build_noncomm_fooling(
    m: &FiniteSemigroup,
    x: Elem,
    y: Elem,
    n: usize,
) -> Result<FoolingSet, FoolingError> {
    let e = m
        .identity()
        .ok_or_else(|| FoolingError::Precondition("needs a monoid".into()))?;
    if m.mul(x, y) == m.mul(y, x) {
        return Err(FoolingError::Precondition(format!(
            "{} and {} commute",
            m.name(x),
            m.name(y)
        )));
    }
    let words = (1..=n)
        .map(|i| cells((1..=n).flat_map(|k| [Some(if k == i { x } else { e }), None])))
        .collect();
    Ok(FoolingSet::new("noncomm", words, Subject::algebra(m.clone()), move |i, _| {
        cells((0..n).flat_map(|k| [None, Some(if k == i { y } else { e })]))
    }))
}

/// `2^n` words of length `5n+2` built from an assignment `(x, a, b, s, t, u)`
/// violating `(xa)^ω sxtu (xb)^ω = (xa)^ω stxu (xb)^ω`. Block `k` is
/// `_ x _ e _` for bit 0 and `_ e _ x _` for bit 1.
pub fn build_monlin_fooling(
    m: &FiniteSemigroup,
    violation: &EquationWitness,
    n: usize,
) -> Result<FoolingSet, FoolingError> {
    if violation.equation != Equation::FlCom || !violation.verify(m) {
        return Err(FoolingError::Precondition("needs a valid FLCOM violation".into()));
    }
    let e = m
        .identity()
        .ok_or_else(|| FoolingError::Precondition("needs a monoid".into()))?;
    let var = |v: &str| violation.get(v).expect("FLCOM variable");
    let (x, a, b, s, t, u) = (var("x"), var("a"), var("b"), var("s"), var("t"), var("u"));
    let omega = m.idempotent_power();
    let xa = m.mul(x, a);
    let xb = m.mul(x, b);
    let words = (0..1usize << n)
        .map(|alpha| {
            let mut w = vec![None];
            for k in 0..n {
                let (p, q) = if alpha >> k & 1 == 0 { (x, e) } else { (e, x) };
                w.extend([None, Some(p), None, Some(q), None]);
            }
            w.push(None);
            w
        })
        .collect();
    let m2 = m.clone();
    Ok(FoolingSet::new("monlin", words, Subject::algebra(m.clone()), move |i, j| {
        let iota = (i ^ j).trailing_zeros() as usize + 1;
        let mut v = vec![Some(m2.pow(xa, n * omega - iota + 1))];
        for k in 1..=n {
            let (p, q, r) = match k.cmp(&iota) {
                std::cmp::Ordering::Less => (e, e, a),
                std::cmp::Ordering::Equal => (s, t, u),
                std::cmp::Ordering::Greater => (e, e, b),
            };
            v.extend([Some(p), None, Some(q), None, Some(r)]);
        }
        v.push(Some(m2.pow(xb, n * omega - n + iota)));
        v
    }))
}

/// Words `w_i = (s^ω _)^i (t^ω _)^(n-i)` for `i` in `2..n`, witnesses
/// `(_ s^ω)^(i-1) (_ x) (_ t^ω)^(n-i)` for the smaller index `i`.
pub fn build_stswap_fooling(
    sg: &FiniteSemigroup,
    s: Elem,
    x: Elem,
    t: Elem,
    n: usize,
) -> Result<FoolingSet, FoolingError> {
    let omega = sg.idempotent_power();
    let (sw, tw) = (sg.pow(s, omega), sg.pow(t, omega));
    let words = (2..n)
        .map(|i| cells((1..=n).flat_map(|k| [Some(if k <= i { sw } else { tw }), None])))
        .collect();
    Ok(FoolingSet::new("stswap", words, Subject::algebra(sg.clone()), move |i, _| {
        let i = i + 2;
        cells((1..=n).flat_map(|k| {
            let c = match k.cmp(&i) {
                std::cmp::Ordering::Less => sw,
                std::cmp::Ordering::Equal => x,
                std::cmp::Ordering::Greater => tw,
            };
            [None, Some(c)]
        }))
    }))
}

/// Words `w_i = (s^ω _)^(i-1) (x _) (s^ω _)^(n-i)` for `i` in `2..n`,
/// witnesses `(_ s^ω)^(j-1) (_ y) (_ s^ω)^(n-j)` for the larger index `j`.
pub fn build_xysep_fooling(
    sg: &FiniteSemigroup,
    s: Elem,
    x: Elem,
    y: Elem,
    n: usize,
) -> Result<FoolingSet, FoolingError> {
    let sw = sg.pow(s, sg.idempotent_power());
    let words = (2..n)
        .map(|i| cells((1..=n).flat_map(|k| [Some(if k == i { x } else { sw }), None])))
        .collect();
    Ok(FoolingSet::new("xysep", words, Subject::algebra(sg.clone()), move |_, j| {
        let j = j + 2;
        cells((1..=n).flat_map(|k| [None, Some(if k == j { y } else { sw })]))
    }))
}

fn element(sg: &FiniteSemigroup, name: &str) -> Result<Elem, FoolingError> {
    sg.index_of(name)
        .ok_or_else(|| FoolingError::Precondition(format!("no element {name}")))
}

/// `2^n` words over the syntactic semigroup of `(ab)*` with cells `a _` or
/// `(ab) _`. The witness of the first word completes each cell to `ab`.
pub fn build_abstar_semigroup_fooling(n: usize) -> Result<FoolingSet, FoolingError> {
    let sg = syntactic_semigroup(&language("(ab)*", "ab")?)?.algebra;
    let (a, b, ab) = (element(&sg, "a")?, element(&sg, "b")?, element(&sg, "ab")?);
    let words = (0..1usize << n)
        .map(|alpha| cells((0..n).flat_map(|k| [Some(if alpha >> k & 1 == 0 { a } else { ab }), None])))
        .collect();
    Ok(FoolingSet::new("ab-semigroup", words, Subject::algebra(sg), move |i, _| {
        cells((0..n).flat_map(|k| [None, Some(if i >> k & 1 == 0 { b } else { ab })]))
    }))
}

/// Words `(a _)^i (b _)^(n-i)` for `i` in `1..n` for `a*b*a*`, witnesses
/// `(_ a)^j (_ b)^(n-j)` for the larger index `j`.
pub fn build_aba_fooling(n: usize) -> Result<FoolingSet, FoolingError> {
    let subject = Subject::automaton(language("a*b*a*", "ab")?);
    let words = (1..n)
        .map(|i| cells((1..=n).flat_map(|k| [Some(if k <= i { A } else { B }), None])))
        .collect();
    Ok(FoolingSet::new("aba", words, subject, move |_, j| {
        let j = j + 1;
        cells((1..=n).flat_map(|k| [None, Some(if k <= j { A } else { B })]))
    }))
}

/// The seven constructions with their default subjects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    SigmaAa,
    Noncomm,
    Monlin,
    Stswap,
    Xysep,
    AbSemigroup,
    Aba,
}

impl Construction {
    pub const ALL: [Construction; 7] = [
        Construction::SigmaAa,
        Construction::Noncomm,
        Construction::Monlin,
        Construction::Stswap,
        Construction::Xysep,
        Construction::AbSemigroup,
        Construction::Aba,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::SigmaAa => "sigma-aa",
            Construction::Noncomm => "noncomm",
            Construction::Monlin => "monlin",
            Construction::Stswap => "stswap",
            Construction::Xysep => "xysep",
            Construction::AbSemigroup => "ab-semigroup",
            Construction::Aba => "aba",
        }
    }

    /// Whether the family has `2^n` members rather than about `n`.
    pub fn exponential(self) -> bool {
        matches!(
            self,
            Construction::SigmaAa | Construction::Monlin | Construction::AbSemigroup
        )
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = FoolingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| FoolingError::Precondition(format!("unknown construction {s:?}")))
    }
}

fn violation(sg: &FiniteSemigroup, eq: Equation) -> Result<EquationWitness, FoolingError> {
    check_equation(sg, eq)
        .map_err(|e| FoolingError::Eval(e.into()))?
        .into_witness()
        .ok_or_else(|| FoolingError::Precondition(format!("{eq} holds")))
}

/// Builds a construction on its standard subject:
///
/// * `noncomm` on the monoid of `ab` with `x = a`, `y = b`,
/// * `monlin` on the monoid of `a*bba*` with its first FLCOM violation,
/// * `stswap` on the semigroup of `a*bc*` with its first LICOM1 violation,
/// * `xysep` on the semigroup of `a*bba*` with its first LICOM2 violation.
pub fn standard_instance(c: Construction, n: usize) -> Result<FoolingSet, FoolingError> {
    match c {
        Construction::SigmaAa => build_sigma_aa_fooling(n),
        Construction::AbSemigroup => build_abstar_semigroup_fooling(n),
        Construction::Aba => build_aba_fooling(n),
        Construction::Noncomm => {
            let m = syntactic_monoid(&language("ab", "ab")?)?.algebra;
            build_noncomm_fooling(&m, element(&m, "a")?, element(&m, "b")?, n)
        }
        Construction::Monlin => {
            let m = syntactic_monoid(&language("a*bba*", "ab")?)?.algebra;
            let w = violation(&m, Equation::FlCom)?;
            build_monlin_fooling(&m, &w, n)
        }
        Construction::Stswap => {
            let sg = syntactic_semigroup(&language("a*bc*", "abc")?)?.algebra;
            let w = violation(&sg, Equation::LiCom1)?;
            let (s, x, t) = (w.get("s").unwrap(), w.get("x").unwrap(), w.get("t").unwrap());
            build_stswap_fooling(&sg, s, x, t, n)
        }
        Construction::Xysep => {
            let sg = syntactic_semigroup(&language("a*bba*", "ab")?)?.algebra;
            let w = violation(&sg, Equation::LiCom2)?;
            let (s, x, y) = (w.get("s").unwrap(), w.get("x").unwrap(), w.get("y").unwrap());
            build_xysep_fooling(&sg, s, x, y, n)
        }
    }
}
