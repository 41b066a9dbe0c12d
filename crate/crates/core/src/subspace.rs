//! Partition of the skew basis into the six subspaces used by the finiteness test.

use std::fmt;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::skew::{SkewBasisElement, SkewPolynomial};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubspaceLabel {
    /// Constant and number operators.
    Zero,
    /// Linear quadratures.
    One,
    /// Quadratic squeezing and mode-mixing terms.
    Two,
    /// Diagonal elements of degree at least four.
    Eq,
    /// Degree at least three with exactly one off-diagonal mode of unit weight.
    Om,
    /// Everything else.
    Perp,
}

impl SubspaceLabel {
    pub const ALL: [SubspaceLabel; 6] = [
        SubspaceLabel::Zero,
        SubspaceLabel::One,
        SubspaceLabel::Two,
        SubspaceLabel::Eq,
        SubspaceLabel::Om,
        SubspaceLabel::Perp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubspaceLabel::Zero => "Zero",
            SubspaceLabel::One => "One",
            SubspaceLabel::Two => "Two",
            SubspaceLabel::Eq => "Eq",
            SubspaceLabel::Om => "Om",
            SubspaceLabel::Perp => "Perp",
        }
    }
}

impl fmt::Display for SubspaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The unique mode `k` with `α_k + β_k = 1` and `α_j = β_j` elsewhere, if any.
fn om_mode(gamma: &MultiIndex) -> Option<usize> {
    let (a, b) = (gamma.alpha(), gamma.beta());
    let mut found = None;
    for k in 0..gamma.modes() {
        if a[k] + b[k] == 1 {
            if found.is_some() {
                return None;
            }
            found = Some(k);
        } else if a[k] != b[k] {
            return None;
        }
    }
    found
}

pub fn classify_index(gamma: &MultiIndex) -> SubspaceLabel {
    let deg = gamma.degree();
    let diag = gamma.is_diagonal();
    match deg {
        0 => SubspaceLabel::Zero,
        1 => SubspaceLabel::One,
        2 if diag => SubspaceLabel::Zero,
        2 => SubspaceLabel::Two,
        _ if diag => SubspaceLabel::Eq,
        _ if om_mode(gamma).is_some() => SubspaceLabel::Om,
        _ => SubspaceLabel::Perp,
    }
}

pub fn classify(e: &SkewBasisElement) -> SubspaceLabel {
    classify_index(e.gamma())
}

pub fn project(x: &SkewPolynomial, label: SubspaceLabel) -> SkewPolynomial {
    x.filter(|e| classify(e) == label)
}

/// Labels of the subspaces in which `x` has a nonzero component, in label order.
pub fn support(x: &SkewPolynomial) -> Vec<SubspaceLabel> {
    let mut labels: Vec<SubspaceLabel> = x.terms().map(|(e, _)| classify(e)).collect();
    labels.sort();
    labels.dedup();
    labels
}

/// Conditions characterising membership of a degree `>= 3` element in the Perp subspace.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PerpConditions {
    /// The element is in Perp.
    pub a: bool,
    /// `α ≠ β`.
    pub b: bool,
    /// No mode `k` has `α_k + β_k = 1` with `α_j = β_j` for all other `j`.
    pub c: bool,
    /// Some mode has `α_k + β_k >= 2` and `α_k ≠ β_k`.
    pub d: bool,
    /// At least two modes have `α_k + β_k = 1`.
    pub e: bool,
    /// As `e`, and `α_j = β_j` on every other mode.
    pub f: bool,
}

impl PerpConditions {
    /// `A ⇔ (B ∧ C) ⇔ (D ∨ E) ⇔ (D ∨ F)`.
    pub fn equivalences_hold(&self) -> bool {
        let bc = self.b && self.c;
        let de = self.d || self.e;
        let df = self.d || self.f;
        self.a == bc && bc == de && de == df
    }
}

pub fn check_perp_conditions(gamma: &MultiIndex) -> Result<PerpConditions> {
    let deg = gamma.degree();
    if deg < 3 {
        return Err(Error::DegreeTooSmall(deg));
    }
    let (a, b) = (gamma.alpha(), gamma.beta());
    let n = gamma.modes();
    let units: Vec<usize> = (0..n).filter(|&k| a[k] + b[k] == 1).collect();
    let single_unit = (0..n).any(|k| a[k] + b[k] == 1 && (0..n).all(|j| j == k || a[j] == b[j]));
    let e = units.len() >= 2;
    Ok(PerpConditions {
        a: classify_index(gamma) == SubspaceLabel::Perp,
        b: a != b,
        c: !single_unit,
        d: (0..n).any(|k| a[k] + b[k] >= 2 && a[k] != b[k]),
        e,
        f: e && (0..n).all(|j| units.contains(&j) || a[j] == b[j]),
    })
}
