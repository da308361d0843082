//! Exhaustive checking of the profinite equations that separate the
//! space-complexity regimes.

use std::fmt;
use std::str::FromStr;

use super::{AlgebraError, Elem, FiniteSemigroup};

/// Default bound on estimated table lookups for one exhaustive check.
pub const DEFAULT_LOOKUP_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    /// `xy = yx`
    Com,
    /// `(xy)^ω st (xz)^ω = (xy)^ω sxt (xz)^ω`
    Fl,
    /// `(xa)^ω sxtu (xb)^ω = (xa)^ω stxu (xb)^ω`
    FlCom,
    /// `x^ω y x^ω = x^ω`
    Li,
    /// `s^ω xy t^ω = s^ω yx t^ω`
    LiCom,
    /// `s^ω x s^ω t^ω = s^ω x t^ω`
    LiCom1,
    /// `s^ω x s^ω y s^ω = s^ω x y s^ω`
    LiCom2,
    /// `s^ω x s^ω y s^ω = s^ω y s^ω x s^ω`
    LocalCom,
}

#[derive(Debug, Clone, Copy)]
enum Term {
    Var(usize),
    Omega(&'static [Term]),
}

use Term::{Omega, Var};

struct Shape {
    vars: &'static [&'static str],
    lhs: &'static [Term],
    rhs: &'static [Term],
}

const COM: Shape = Shape {
    vars: &["x", "y"],
    lhs: &[Var(0), Var(1)],
    rhs: &[Var(1), Var(0)],
};

const FL: Shape = Shape {
    vars: &["x", "y", "z", "s", "t"],
    lhs: &[Omega(&[Var(0), Var(1)]), Var(3), Var(4), Omega(&[Var(0), Var(2)])],
    rhs: &[Omega(&[Var(0), Var(1)]), Var(3), Var(0), Var(4), Omega(&[Var(0), Var(2)])],
};

const FLCOM: Shape = Shape {
    vars: &["x", "a", "b", "s", "t", "u"],
    lhs: &[Omega(&[Var(0), Var(1)]), Var(3), Var(0), Var(4), Var(5), Omega(&[Var(0), Var(2)])],
    rhs: &[Omega(&[Var(0), Var(1)]), Var(3), Var(4), Var(0), Var(5), Omega(&[Var(0), Var(2)])],
};

const LI: Shape = Shape {
    vars: &["x", "y"],
    lhs: &[Omega(&[Var(0)]), Var(1), Omega(&[Var(0)])],
    rhs: &[Omega(&[Var(0)])],
};

const LICOM: Shape = Shape {
    vars: &["s", "x", "y", "t"],
    lhs: &[Omega(&[Var(0)]), Var(1), Var(2), Omega(&[Var(3)])],
    rhs: &[Omega(&[Var(0)]), Var(2), Var(1), Omega(&[Var(3)])],
};

const LICOM1: Shape = Shape {
    vars: &["s", "x", "t"],
    lhs: &[Omega(&[Var(0)]), Var(1), Omega(&[Var(0)]), Omega(&[Var(2)])],
    rhs: &[Omega(&[Var(0)]), Var(1), Omega(&[Var(2)])],
};

const LICOM2: Shape = Shape {
    vars: &["s", "x", "y"],
    lhs: &[Omega(&[Var(0)]), Var(1), Omega(&[Var(0)]), Var(2), Omega(&[Var(0)])],
    rhs: &[Omega(&[Var(0)]), Var(1), Var(2), Omega(&[Var(0)])],
};

const LOCAL_COM: Shape = Shape {
    vars: &["s", "x", "y"],
    lhs: &[Omega(&[Var(0)]), Var(1), Omega(&[Var(0)]), Var(2), Omega(&[Var(0)])],
    rhs: &[Omega(&[Var(0)]), Var(2), Omega(&[Var(0)]), Var(1), Omega(&[Var(0)])],
};

impl Equation {
    pub const ALL: [Equation; 8] = [
        Equation::Com,
        Equation::Fl,
        Equation::FlCom,
        Equation::Li,
        Equation::LiCom,
        Equation::LiCom1,
        Equation::LiCom2,
        Equation::LocalCom,
    ];

    fn shape(self) -> &'static Shape {
        match self {
            Equation::Com => &COM,
            Equation::Fl => &FL,
            Equation::FlCom => &FLCOM,
            Equation::Li => &LI,
            Equation::LiCom => &LICOM,
            Equation::LiCom1 => &LICOM1,
            Equation::LiCom2 => &LICOM2,
            Equation::LocalCom => &LOCAL_COM,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Equation::Com => "COM",
            Equation::Fl => "FL",
            Equation::FlCom => "FLCOM",
            Equation::Li => "LI",
            Equation::LiCom => "LICOM",
            Equation::LiCom1 => "LICOM1",
            Equation::LiCom2 => "LICOM2",
            Equation::LocalCom => "LOCAL_COM",
        }
    }

    /// Variable names in enumeration order (first varies slowest).
    pub fn variables(self) -> &'static [&'static str] {
        self.shape().vars
    }

    /// Table lookups needed to evaluate both sides once, given ω-powers
    /// are read from a precomputed table.
    pub fn lookups_per_assignment(self) -> u128 {
        let s = self.shape();
        side_cost(s.lhs) + side_cost(s.rhs)
    }

    /// Evaluates both sides under `assignment` (indexed like [`Self::variables`]).
    pub fn evaluate(
        self,
        s: &FiniteSemigroup,
        omega: &[Elem],
        assignment: &[Elem],
    ) -> (Elem, Elem) {
        let shape = self.shape();
        (
            eval_side(s, omega, assignment, shape.lhs),
            eval_side(s, omega, assignment, shape.rhs),
        )
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Equation {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        Equation::ALL
            .into_iter()
            .find(|e| e.id() == wanted)
            .ok_or_else(|| AlgebraError::Parse(format!("unknown equation {s:?}")))
    }
}

fn side_cost(side: &[Term]) -> u128 {
    let inner: u128 = side
        .iter()
        .map(|t| match t {
            Var(_) => 0,
            Omega(sub) => side_cost(sub) + 1,
        })
        .sum();
    inner + side.len() as u128 - 1
}

fn eval_side(s: &FiniteSemigroup, omega: &[Elem], asg: &[Elem], side: &[Term]) -> Elem {
    let value = |t: &Term| match *t {
        Var(i) => asg[i],
        Omega(sub) => omega[eval_side(s, omega, asg, sub)],
    };
    let mut acc = value(&side[0]);
    for t in &side[1..] {
        acc = s.mul(acc, value(t));
    }
    acc
}

/// A variable assignment on which the two sides of an equation differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationWitness {
    pub equation: Equation,
    pub assignment: Vec<Elem>,
    pub lhs_value: Elem,
    pub rhs_value: Elem,
}

impl EquationWitness {
    pub fn get(&self, var: &str) -> Option<Elem> {
        self.equation
            .variables()
            .iter()
            .position(|v| *v == var)
            .map(|i| self.assignment[i])
    }

    /// Re-evaluates both sides and checks they reproduce the recorded values.
    pub fn verify(&self, s: &FiniteSemigroup) -> bool {
        let omega = s.omega_table();
        let (l, r) = self.equation.evaluate(s, &omega, &self.assignment);
        l == self.lhs_value && r == self.rhs_value && l != r
    }

    /// `x=a y=b` style rendering with element names.
    pub fn describe_assignment(&self, s: &FiniteSemigroup) -> String {
        self.equation
            .variables()
            .iter()
            .zip(&self.assignment)
            .map(|(v, &e)| format!("{v}={}", s.name(e)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquationCheck {
    Pass,
    Fail(EquationWitness),
}

impl EquationCheck {
    pub fn passed(&self) -> bool {
        matches!(self, EquationCheck::Pass)
    }

    pub fn witness(&self) -> Option<&EquationWitness> {
        match self {
            EquationCheck::Pass => None,
            EquationCheck::Fail(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<EquationWitness> {
        match self {
            EquationCheck::Pass => None,
            EquationCheck::Fail(w) => Some(w),
        }
    }
}

/// Exhaustive check with the default lookup cap.
pub fn check_equation(s: &FiniteSemigroup, eq: Equation) -> Result<EquationCheck, AlgebraError> {
    check_equation_with_cap(s, eq, DEFAULT_LOOKUP_CAP)
}

/// Tries every assignment in lexicographic order (element declaration
/// order, first variable slowest) and returns the first violation.
pub fn check_equation_with_cap(
    s: &FiniteSemigroup,
    eq: Equation,
    cap: u128,
) -> Result<EquationCheck, AlgebraError> {
    let vars = eq.variables().len();
    let size = s.size();
    let tuples = (size as u128).checked_pow(vars as u32).unwrap_or(u128::MAX);
    let needed = tuples.saturating_mul(eq.lookups_per_assignment());
    if needed > cap {
        return Err(AlgebraError::CapExceeded { needed, cap });
    }
    let omega = s.omega_table();
    let mut asg = vec![0; vars];
    loop {
        let (lhs, rhs) = eq.evaluate(s, &omega, &asg);
        if lhs != rhs {
            return Ok(EquationCheck::Fail(EquationWitness {
                equation: eq,
                assignment: asg,
                lhs_value: lhs,
                rhs_value: rhs,
            }));
        }
        // odometer, last variable fastest
        let mut i = vars;
        loop {
            if i == 0 {
                return Ok(EquationCheck::Pass);
            }
            i -= 1;
            asg[i] += 1;
            if asg[i] < size {
                break;
            }
            asg[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_zero(n: usize) -> FiniteSemigroup {
        let names = (0..n).map(|i| format!("l{i}")).collect();
        FiniteSemigroup::from_fn(names, None, |a, _| a).unwrap()
    }

    #[test]
    fn groups_are_commutative_when_cyclic() {
        let z2 = FiniteSemigroup::cyclic_group(2);
        assert!(check_equation(&z2, Equation::Com).unwrap().passed());
        assert!(check_equation(&z2, Equation::LiCom).unwrap().passed());
        // a nontrivial group is not locally trivial
        let w = check_equation(&z2, Equation::Li).unwrap().into_witness().unwrap();
        assert!(w.verify(&z2));
        assert_eq!(w.assignment, vec![0, 1]);
    }

    #[test]
    fn left_zero_is_locally_trivial_but_not_commutative() {
        let lz = left_zero(3);
        assert!(check_equation(&lz, Equation::Li).unwrap().passed());
        let w = check_equation(&lz, Equation::Com).unwrap().into_witness().unwrap();
        assert_eq!((w.assignment.as_slice(), w.lhs_value, w.rhs_value), (&[0, 1][..], 0, 1));
    }

    #[test]
    fn com_matches_pair_scan() {
        let lz = left_zero(2);
        for s in [lz, FiniteSemigroup::cyclic_group(4)] {
            let pass = check_equation(&s, Equation::Com).unwrap().passed();
            assert_eq!(pass, s.is_commutative());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let big = FiniteSemigroup::cyclic_group(30);
        let err = check_equation_with_cap(&big, Equation::FlCom, 1000).unwrap_err();
        assert!(matches!(err, AlgebraError::CapExceeded { cap: 1000, .. }));
        assert!(check_equation(&big, Equation::Com).unwrap().passed());
    }

    #[test]
    fn lookup_costs() {
        assert_eq!(Equation::Com.lookups_per_assignment(), 2);
        // s^ω x s^ω t^ω: 3 omega lookups + 3 products, rhs 2 + 2
        assert_eq!(Equation::LiCom1.lookups_per_assignment(), 10);
    }

    #[test]
    fn parse_ids() {
        for eq in Equation::ALL {
            assert_eq!(eq.id().parse::<Equation>().unwrap(), eq);
        }
        assert_eq!("local-com".parse::<Equation>().unwrap(), Equation::LocalCom);
    }
}
