use std::fmt;

use super::{check_equation_with_cap, AlgebraError, Equation, EquationWitness, FiniteSemigroup};
use super::DEFAULT_LOOKUP_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    Monoid,
    Semigroup,
}

/// Space regime of out-of-order evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Regime {
    Constant,
    Logarithmic,
    AtLeastLogarithmic,
    Linear,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Constant => "Constant",
            Regime::Logarithmic => "Logarithmic",
            Regime::AtLeastLogarithmic => "AtLeastLogarithmic",
            Regime::Linear => "Linear",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegimeReport {
    pub subject: Subject,
    pub regime: Regime,
    /// The equation whose failure excludes the next lower regime.
    pub witness: Option<EquationWitness>,
}

pub fn classify_monoid(m: &FiniteSemigroup) -> Result<RegimeReport, AlgebraError> {
    classify_monoid_with_cap(m, DEFAULT_LOOKUP_CAP)
}

pub fn classify_monoid_with_cap(
    m: &FiniteSemigroup,
    cap: u128,
) -> Result<RegimeReport, AlgebraError> {
    if !m.is_monoid() {
        return Err(AlgebraError::NotMonoid);
    }
    let report = |regime, witness| RegimeReport {
        subject: Subject::Monoid,
        regime,
        witness,
    };
    let Some(com) = check_equation_with_cap(m, Equation::Com, cap)?.into_witness() else {
        return Ok(report(Regime::Constant, None));
    };
    match check_equation_with_cap(m, Equation::FlCom, cap)?.into_witness() {
        None => Ok(report(Regime::Logarithmic, Some(com))),
        Some(flcom) => Ok(report(Regime::Linear, Some(flcom))),
    }
}

pub fn classify_semigroup(s: &FiniteSemigroup) -> Result<RegimeReport, AlgebraError> {
    classify_semigroup_with_cap(s, DEFAULT_LOOKUP_CAP)
}

pub fn classify_semigroup_with_cap(
    s: &FiniteSemigroup,
    cap: u128,
) -> Result<RegimeReport, AlgebraError> {
    let report = |regime, witness| RegimeReport {
        subject: Subject::Semigroup,
        regime,
        witness,
    };
    if check_equation_with_cap(s, Equation::LiCom, cap)?.passed() {
        return Ok(report(Regime::Constant, None));
    }
    for eq in [Equation::LiCom1, Equation::LiCom2, Equation::LocalCom] {
        if let Some(w) = check_equation_with_cap(s, eq, cap)?.into_witness() {
            return Ok(report(Regime::AtLeastLogarithmic, Some(w)));
        }
    }
    // LICOM failed while its three-equation characterization held; keep the
    // LICOM witness so the report still carries evidence.
    let w = check_equation_with_cap(s, Equation::LiCom, cap)?.into_witness();
    Ok(report(Regime::AtLeastLogarithmic, w))
}
