//! Finite-dimensionality test for Lie algebras generated by the free operators
//! `i a_k† a_k` together with single skew basis elements.

use std::fmt;

use num_traits::Zero;

use crate::coeff::Rational;
use crate::dsl::SourceFile;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::skew::{skew_commutator, Sign, SkewBasisElement, SkewPolynomial};
use crate::subspace::{classify, project, SubspaceLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub value: SkewPolynomial,
}

/// Raw generators as written by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub n: usize,
    /// When set, every free operator `i a_k† a_k` is part of the set.
    pub implicit_free: bool,
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(n: usize, implicit_free: bool) -> Self {
        Self {
            n,
            implicit_free,
            generators: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, value: SkewPolynomial) {
        self.generators.push(Generator {
            label: label.into(),
            value,
        });
    }

    /// Converts parsed statements; fails on the first non-skew-hermitian one.
    pub fn from_source(file: &SourceFile) -> std::result::Result<Self, (String, Error)> {
        let mut set = Self::new(file.n, !file.no_free);
        for s in &file.statements {
            let value = SkewPolynomial::from_weyl(&s.poly).map_err(|e| (s.name.clone(), e))?;
            set.push(s.name.clone(), value);
        }
        Ok(set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `#no-free` was given and no generator supplies `i a_k† a_k`.
    MissingFreeOperator {
        mode: usize,
    },
    /// Linear quadratures fall outside the scope of the test.
    A1GeneratorExcluded {
        label: String,
    },
    /// The generator is not a multiple of a single basis element, up to free operators.
    LinearCombinationOutOfScope {
        label: String,
        elements: usize,
    },
    ZeroGenerator {
        label: String,
    },
    ModeMismatch {
        label: String,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingFreeOperator { mode } => {
                write!(f, "free operator i*ad[{0}]*a[{0}] is missing (#no-free is set)", mode + 1)
            }
            Violation::A1GeneratorExcluded { label } => {
                write!(f, "{label}: linear generators are not supported")
            }
            Violation::LinearCombinationOutOfScope { label, elements } => write!(
                f,
                "{label}: combines {elements} basis elements; each generator must be a single basis element"
            ),
            Violation::ZeroGenerator { label } => write!(f, "{label}: generator is zero"),
            Violation::ModeMismatch { label, expected, found } => {
                write!(f, "{label}: has {found} modes, expected {expected}")
            }
        }
    }
}

/// A generator reduced to `coefficient · element`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TunableGenerator {
    pub label: String,
    pub coefficient: Rational,
    pub element: SkewBasisElement,
    /// Number-operator component removed before classification; it lies in the span of the free operators.
    pub absorbed: SkewPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedSet {
    pub n: usize,
    /// Label of the generator supplying each free operator.
    pub free: Vec<String>,
    pub tunable: Vec<TunableGenerator>,
}

fn is_constant(e: &SkewBasisElement) -> bool {
    e.degree() == 0
}

/// Mode `k` if `e` is the free operator `g₊^{τ_k}`.
fn free_mode(e: &SkewBasisElement) -> Option<usize> {
    let g = e.gamma();
    if e.sigma() != Sign::Plus || g.degree() != 2 || !g.is_diagonal() {
        return None;
    }
    g.alpha().iter().position(|&x| x == 1)
}

/// Checks the input contract of the test and normalises every generator to a single basis element.
///
/// Number-operator and constant components are split off first: the free
/// operators span them up to the central identity, which does not affect
/// finiteness.
pub fn validate(set: &GeneratorSet) -> std::result::Result<ValidatedSet, Vec<Violation>> {
    let n = set.n;
    let mut violations = Vec::new();
    let mut free: Vec<Option<String>> = (0..n)
        .map(|k| set.implicit_free.then(|| format!("free{}", k + 1)))
        .collect();
    let mut tunable = Vec::new();
    for g in &set.generators {
        let label = g.label.clone();
        if g.value.modes() != n {
            violations.push(Violation::ModeMismatch {
                label,
                expected: n,
                found: g.value.modes(),
            });
            continue;
        }
        if g.value.is_zero() {
            violations.push(Violation::ZeroGenerator { label });
            continue;
        }
        let number_part = g.value.filter(|e| free_mode(e).is_some());
        let rest = g
            .value
            .filter(|e| free_mode(e).is_none() && !is_constant(e));
        if rest.is_zero() {
            match number_part.len() {
                0 => {
                    // A pure constant: central, so it contributes nothing beyond itself.
                    let (e, c) = g.value.leading().expect("nonzero generator");
                    tunable.push(TunableGenerator {
                        label,
                        coefficient: c.clone(),
                        element: e.clone(),
                        absorbed: SkewPolynomial::zero(n),
                    });
                }
                1 => {
                    let (e, _) = number_part.leading().expect("one term");
                    let k = free_mode(e).expect("filtered to free operators");
                    if free[k].is_none() {
                        free[k] = Some(label);
                    }
                }
                m => violations.push(Violation::LinearCombinationOutOfScope { label, elements: m }),
            }
            continue;
        }
        if rest.len() > 1 {
            violations.push(Violation::LinearCombinationOutOfScope {
                label,
                elements: rest.len(),
            });
            continue;
        }
        let (e, c) = rest.leading().expect("one term");
        if classify(e) == SubspaceLabel::One {
            violations.push(Violation::A1GeneratorExcluded { label });
            continue;
        }
        tunable.push(TunableGenerator {
            label,
            coefficient: c.clone(),
            element: e.clone(),
            absorbed: g.value.checked_sub(&rest).expect("same modes"),
        });
    }
    for (mode, f) in free.iter().enumerate() {
        if f.is_none() {
            violations.push(Violation::MissingFreeOperator { mode });
        }
    }
    if violations.is_empty() {
        Ok(ValidatedSet {
            n,
            free: free.into_iter().map(|f| f.expect("checked")).collect(),
            tunable,
        })
    } else {
        Err(violations)
    }
}

/// Indices into `ValidatedSet::tunable`, grouped by subspace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub zero: Vec<usize>,
    pub two: Vec<usize>,
    pub eq: Vec<usize>,
    pub om: Vec<usize>,
    pub perp: Vec<usize>,
}

pub fn partition(set: &ValidatedSet) -> Partition {
    let mut p = Partition::default();
    for (idx, g) in set.tunable.iter().enumerate() {
        match classify(&g.element) {
            SubspaceLabel::Zero => p.zero.push(idx),
            SubspaceLabel::One => unreachable!("validation rejects linear generators"),
            SubspaceLabel::Two => p.two.push(idx),
            SubspaceLabel::Eq => p.eq.push(idx),
            SubspaceLabel::Om => p.om.push(idx),
            SubspaceLabel::Perp => p.perp.push(idx),
        }
    }
    p
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// No generator lies in Perp.
    NoPerp,
    /// Every diagonal generator commutes with every generator.
    EqCentral,
    /// Brackets of quadratic with Om generators stay in Om.
    TwoOmStaysOm,
    /// Brackets of Om generators have no Perp component.
    OmOmAvoidsPerp,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::NoPerp,
        Condition::EqCentral,
        Condition::TwoOmStaysOm,
        Condition::OmOmAvoidsPerp,
    ];

    pub fn numeral(self) -> &'static str {
        match self {
            Condition::NoPerp => "i",
            Condition::EqCentral => "ii",
            Condition::TwoOmStaysOm => "iii",
            Condition::OmOmAvoidsPerp => "iv",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Condition::NoPerp => "no generator in Perp",
            Condition::EqCentral => "diagonal generators are central",
            Condition::TwoOmStaysOm => "[Two, Om] stays in Om",
            Condition::OmOmAvoidsPerp => "[Om, Om] has no Perp component",
        };
        write!(f, "({}) {}", self.numeral(), text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub labels: Vec<String>,
    /// The offending element or commutator component.
    pub offending: SkewPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub condition: Condition,
    pub witness: Option<Witness>,
}

impl ConditionOutcome {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub finite: bool,
    /// First violated condition, in the order (i)-(iv).
    pub violated: Option<Condition>,
    pub witness: Option<Witness>,
    /// Outcomes of the conditions that were evaluated; all four in exhaustive mode.
    pub outcomes: Vec<ConditionOutcome>,
}

fn element(g: &TunableGenerator) -> SkewPolynomial {
    SkewPolynomial::basis(g.element.clone())
}

fn check(set: &ValidatedSet, parts: &Partition, condition: Condition) -> Result<Option<Witness>> {
    let t = &set.tunable;
    let witness = |labels: Vec<&str>, offending: SkewPolynomial| {
        Some(Witness {
            labels: labels.into_iter().map(str::to_string).collect(),
            offending,
        })
    };
    match condition {
        Condition::NoPerp => Ok(parts
            .perp
            .first()
            .and_then(|&i| witness(vec![&t[i].label], element(&t[i])))),
        Condition::EqCentral => {
            // Free operators commute with every diagonal element, so only tunable partners matter.
            for &i in &parts.eq {
                for (j, other) in t.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let c = skew_commutator(&element(&t[i]), &element(other))?;
                    if !c.is_zero() {
                        return Ok(witness(vec![&t[i].label, &other.label], c));
                    }
                }
            }
            Ok(None)
        }
        Condition::TwoOmStaysOm => {
            for &i in &parts.two {
                for &j in &parts.om {
                    let c = skew_commutator(&element(&t[i]), &element(&t[j]))?;
                    let outside = c.checked_sub(&project(&c, SubspaceLabel::Om))?;
                    if !outside.is_zero() {
                        return Ok(witness(vec![&t[i].label, &t[j].label], outside));
                    }
                }
            }
            Ok(None)
        }
        Condition::OmOmAvoidsPerp => {
            for (a, &i) in parts.om.iter().enumerate() {
                for &j in &parts.om[a + 1..] {
                    let c = skew_commutator(&element(&t[i]), &element(&t[j]))?;
                    let perp = project(&c, SubspaceLabel::Perp);
                    if !perp.is_zero() {
                        return Ok(witness(vec![&t[i].label, &t[j].label], perp));
                    }
                }
            }
            Ok(None)
        }
    }
}

/// Evaluates the four conditions. Stops at the first failure unless `exhaustive`.
pub fn decide(set: &ValidatedSet, exhaustive: bool) -> Result<Verdict> {
    let parts = partition(set);
    let mut outcomes = Vec::new();
    for condition in Condition::ALL {
        let witness = check(set, &parts, condition)?;
        let failed = witness.is_some();
        outcomes.push(ConditionOutcome { condition, witness });
        if failed && !exhaustive {
            break;
        }
    }
    let first = outcomes.iter().find(|o| !o.holds());
    Ok(Verdict {
        finite: first.is_none(),
        violated: first.map(|o| o.condition),
        witness: first.and_then(|o| o.witness.clone()),
        outcomes,
    })
}

/// Every generator, free operators included, as skew polynomials in input order.
pub fn generator_elements(set: &ValidatedSet) -> Vec<SkewPolynomial> {
    let mut out = Vec::with_capacity(set.n + set.tunable.len());
    for k in 0..set.n {
        let tau = MultiIndex::tau(set.n, k).expect("mode in range");
        out.push(SkewPolynomial::labelled(
            Sign::Plus,
            &tau,
            &Rational::from_integer(1.into()),
        ));
    }
    for g in &set.tunable {
        if !g.coefficient.is_zero() {
            out.push(SkewPolynomial::term(
                g.element.clone(),
                g.coefficient.clone(),
            ));
        }
    }
    out
}
