use std::fmt;
use std::str::FromStr;

use super::{
    CommutativeEvaluator, EvalError, Evaluator, FlComEvaluator, FlEvaluator, LiComEvaluator,
    LiEvaluator, ReferenceEvaluator, Subject, Target,
};
use crate::algebra::{check_equation, Equation, FiniteSemigroup};
use crate::langkit::{
    is_commutative_language, language, syntactic_monoid, syntactic_semigroup,
};
use crate::special::{
    AbaEvaluator, AbabaEvaluator, AbababEvaluator, AbstarEvaluator, BitpackedEvaluator,
    FirstLastEvaluator, IntervalMergeEvaluator,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvaluatorKind {
    Reference,
    Commutative,
    Fl,
    FlCom,
    Li,
    LiCom,
    Abstar,
    FirstLast,
    Aba,
    Ababa,
    Ababab,
    Interval,
    Bitpacked,
}

impl EvaluatorKind {
    pub const ALL: [EvaluatorKind; 13] = [
        EvaluatorKind::Reference,
        EvaluatorKind::Commutative,
        EvaluatorKind::Fl,
        EvaluatorKind::FlCom,
        EvaluatorKind::Li,
        EvaluatorKind::LiCom,
        EvaluatorKind::Abstar,
        EvaluatorKind::FirstLast,
        EvaluatorKind::Aba,
        EvaluatorKind::Ababa,
        EvaluatorKind::Ababab,
        EvaluatorKind::Interval,
        EvaluatorKind::Bitpacked,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EvaluatorKind::Reference => "reference",
            EvaluatorKind::Commutative => "commutative",
            EvaluatorKind::Fl => "fl",
            EvaluatorKind::FlCom => "flcom",
            EvaluatorKind::Li => "li",
            EvaluatorKind::LiCom => "licom",
            EvaluatorKind::Abstar => "abstar",
            EvaluatorKind::FirstLast => "firstlast",
            EvaluatorKind::Aba => "aba",
            EvaluatorKind::Ababa => "ababa",
            EvaluatorKind::Ababab => "ababab",
            EvaluatorKind::Interval => "interval",
            EvaluatorKind::Bitpacked => "bitpacked",
        }
    }

    /// The one language over `ab` a dedicated membership evaluator decides.
    pub fn fixed_language(self) -> Option<&'static str> {
        match self {
            EvaluatorKind::Abstar => Some("(ab)*"),
            EvaluatorKind::Aba => Some("a*b*a*"),
            EvaluatorKind::Ababa => Some("a*b*a*b*a*"),
            EvaluatorKind::Ababab => Some("a*b*a*b*a*b*"),
            _ => None,
        }
    }
}

impl fmt::Display for EvaluatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvaluatorKind {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EvaluatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| EvalError::Inapplicable(format!("unknown evaluator {s:?}")))
    }
}

#[derive(Debug, Clone)]
enum Prepared {
    Subject(Subject),
    Target(Target),
    Fixed,
}

/// An evaluator kind checked once against a subject; instances for any
/// length are then cheap to create.
#[derive(Debug, Clone)]
pub struct Plan {
    kind: EvaluatorKind,
    prepared: Prepared,
}

fn monoid_target(subject: &Subject) -> Result<Target, EvalError> {
    match subject {
        Subject::Automaton(d) => Ok(Target::of_language(&syntactic_monoid(d)?)),
        Subject::Algebraic(t) => Ok(t.clone()),
    }
}

fn semigroup_target(subject: &Subject) -> Result<Target, EvalError> {
    match subject {
        Subject::Automaton(d) => Ok(Target::of_language(&syntactic_semigroup(d)?)),
        Subject::Algebraic(t) => Ok(t.clone()),
    }
}

fn require(s: &FiniteSemigroup, eq: Equation, kind: EvaluatorKind) -> Result<(), EvalError> {
    match check_equation(s, eq)?.into_witness() {
        None => Ok(()),
        Some(w) => Err(EvalError::Inapplicable(format!(
            "{kind} needs {eq}, violated at {}",
            w.describe_assignment(s)
        ))),
    }
}

fn first_last_law(s: &FiniteSemigroup) -> bool {
    let n = s.size();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| s.mul(s.mul(x, z), y) == s.mul(x, y))))
}

impl Plan {
    pub fn new(kind: EvaluatorKind, subject: &Subject) -> Result<Plan, EvalError> {
        use EvaluatorKind as K;
        let prepared = match kind {
            K::Reference => Prepared::Subject(subject.clone()),
            K::Commutative => {
                let ok = match subject {
                    Subject::Automaton(d) => is_commutative_language(d),
                    Subject::Algebraic(t) => t.algebra.is_commutative(),
                };
                if !ok {
                    return Err(EvalError::Inapplicable("subject is not commutative".into()));
                }
                Prepared::Subject(subject.clone())
            }
            K::Fl | K::FlCom => {
                let t = monoid_target(subject)?;
                let eq = if kind == K::Fl { Equation::Fl } else { Equation::FlCom };
                require(&t.algebra, eq, kind)?;
                Prepared::Target(t)
            }
            K::Li | K::LiCom => {
                let t = semigroup_target(subject)?;
                let eq = if kind == K::Li { Equation::Li } else { Equation::LiCom };
                require(&t.algebra, eq, kind)?;
                Prepared::Target(t)
            }
            K::FirstLast => {
                let t = semigroup_target(subject)?;
                if !first_last_law(&t.algebra) {
                    return Err(EvalError::Inapplicable(
                        "firstlast needs xzy = xy for all elements".into(),
                    ));
                }
                Prepared::Target(t)
            }
            K::Interval | K::Bitpacked => Prepared::Target(monoid_target(subject)?),
            K::Abstar | K::Aba | K::Ababa | K::Ababab => {
                let wanted = language(kind.fixed_language().expect("fixed kind"), "ab")?;
                match subject {
                    Subject::Automaton(d) if **d == wanted => Prepared::Fixed,
                    _ => {
                        return Err(EvalError::Inapplicable(format!(
                            "{kind} only decides {} over ab",
                            kind.fixed_language().unwrap()
                        )))
                    }
                }
            }
        };
        Ok(Plan { kind, prepared })
    }

    pub fn kind(&self) -> EvaluatorKind {
        self.kind
    }

    pub fn start(&self, n: usize) -> Box<dyn Evaluator> {
        use EvaluatorKind as K;
        match (&self.prepared, self.kind) {
            (Prepared::Subject(s), K::Reference) => Box::new(ReferenceEvaluator::new(s.clone(), n)),
            (Prepared::Subject(s), _) => Box::new(CommutativeEvaluator::new(s.clone(), n)),
            (Prepared::Target(t), K::Fl) => Box::new(FlEvaluator::new(t.clone(), n)),
            (Prepared::Target(t), K::FlCom) => Box::new(FlComEvaluator::new(t.clone(), n)),
            (Prepared::Target(t), K::Li) => Box::new(LiEvaluator::new(t.clone(), n)),
            (Prepared::Target(t), K::LiCom) => Box::new(LiComEvaluator::new(t.clone(), n)),
            (Prepared::Target(t), K::FirstLast) => Box::new(FirstLastEvaluator::new(t.clone(), n)),
            (Prepared::Target(t), K::Interval) => Box::new(IntervalMergeEvaluator::new(t.clone(), n)),
            (Prepared::Target(t), _) => Box::new(BitpackedEvaluator::new(t.clone(), n)),
            (Prepared::Fixed, K::Abstar) => Box::new(AbstarEvaluator::new(n)),
            (Prepared::Fixed, K::Aba) => Box::new(AbaEvaluator::new(n)),
            (Prepared::Fixed, K::Ababa) => Box::new(AbabaEvaluator::new(n)),
            (Prepared::Fixed, _) => Box::new(AbababEvaluator::new(n)),
        }
    }
}

/// Checks applicability and creates one evaluator for length `n`.
pub fn make_evaluator(
    kind: EvaluatorKind,
    subject: &Subject,
    n: usize,
) -> Result<Box<dyn Evaluator>, EvalError> {
    Ok(Plan::new(kind, subject)?.start(n))
}
