//! Bounded computation of the Lie closure of a set of skew-hermitian polynomials.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::int;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::skew::{Sign, SkewBasisElement, SkewPolynomial};
use crate::weyl::{Degree, WeylPolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureConfig {
    /// Candidates above this degree are discarded and the run is marked as capped.
    pub max_degree: u32,
    pub max_dimension: usize,
    pub max_iterations: usize,
    /// Abort with `Error::TermLimit` when a commutator exceeds this many basis terms.
    pub max_terms: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        Self {
            max_degree: 8,
            max_dimension: 5000,
            max_iterations: 64,
            max_terms: 1_000_000,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    /// No bracket produced anything new and no candidate was ever discarded.
    Closed,
    /// Saturated under the degree cap, with at least one candidate discarded.
    DegreeCapHit,
    DimCapHit,
    IterCapHit,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub status: ClosureStatus,
    /// Independent elements of the algebra in discovery order.
    pub basis: Vec<SkewPolynomial>,
    /// Dimension after each round, starting with the span of the generators.
    pub trace: Vec<usize>,
    pub max_degree_seen: Degree,
    /// Number of candidates dropped by the degree cap.
    pub discarded: usize,
    /// Whether the (central) identity lies in the span.
    pub identity_generated: bool,
}

impl ClosureReport {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Dimension after quotienting by the central identity.
    pub fn dimension_mod_constants(&self) -> usize {
        self.basis.len() - usize::from(self.identity_generated)
    }
}

/// Row-echelon form over the skew basis; each row is keyed by its largest element.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<SkewBasisElement, SkewPolynomial>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `x` minus its component in the span, by exact elimination.
    pub fn reduce(&self, x: &SkewPolynomial) -> SkewPolynomial {
        let mut rem = x.clone();
        // A row only touches elements at or below its pivot, so one descending pass suffices.
        for (pivot, row) in self.rows.iter().rev() {
            let c = rem.coeff(pivot);
            if !c.is_zero() {
                rem = rem.checked_sub(&row.scale(&c)).expect("same modes");
            }
        }
        rem
    }

    /// Adds `x` if independent; returns whether the rank grew.
    pub fn insert(&mut self, x: &SkewPolynomial) -> bool {
        let rem = self.reduce(x);
        match rem.leading() {
            None => false,
            Some((pivot, c)) => {
                let pivot = pivot.clone();
                let row = rem.scale(&c.recip());
                self.rows.insert(pivot, row);
                true
            }
        }
    }

    pub fn contains(&self, x: &SkewPolynomial) -> bool {
        self.reduce(x).is_zero()
    }
}

/// Remainder of `candidate` after eliminating the span of `basis`.
pub fn reduce(candidate: &SkewPolynomial, basis: &[SkewPolynomial]) -> SkewPolynomial {
    let mut e = Echelon::new();
    for b in basis {
        e.insert(b);
    }
    e.reduce(candidate)
}

fn is_identity_multiple(x: &SkewPolynomial) -> bool {
    !x.is_zero() && x.terms().all(|(e, _)| e.degree() == 0)
}

/// Splits `x` by the charge `α - β` of each canonical element.
///
/// The charge sectors are the joint eigenspaces of `ad(i a_k† a_k)` (over the
/// reals, pairs `±q`), so an algebra containing every free operator contains
/// each component of each of its elements.
fn split_by_charge(x: &SkewPolynomial) -> Vec<SkewPolynomial> {
    let mut sectors: BTreeMap<Vec<i64>, SkewPolynomial> = BTreeMap::new();
    for (e, c) in x.terms() {
        let g = e.gamma();
        let q: Vec<i64> = g
            .alpha()
            .iter()
            .zip(g.beta())
            .map(|(&a, &b)| i64::from(a) - i64::from(b))
            .collect();
        sectors
            .entry(q)
            .or_insert_with(|| SkewPolynomial::zero(x.modes()))
            .add_term(e.clone(), c);
    }
    sectors.into_values().collect()
}

fn contains_free_operators(generators: &[SkewPolynomial]) -> bool {
    let Some(n) = generators.first().map(SkewPolynomial::modes) else {
        return false;
    };
    let mut span = Echelon::new();
    for g in generators {
        span.insert(g);
    }
    (0..n).all(|k| {
        let tau = MultiIndex::tau(n, k).expect("mode in range");
        span.contains(&SkewPolynomial::labelled(Sign::Plus, &tau, &int(1)))
    })
}

struct State<'a> {
    config: &'a ClosureConfig,
    split: bool,
    echelon: Echelon,
    basis: Vec<SkewPolynomial>,
    weyl: Vec<WeylPolynomial>,
    fresh: Vec<usize>,
    report: ClosureReport,
}

impl State<'_> {
    fn admit(&mut self, x: SkewPolynomial) {
        let parts = if self.split {
            split_by_charge(&x)
        } else {
            vec![x]
        };
        for part in parts {
            let rem = self.echelon.reduce(&part);
            if rem.is_zero() {
                continue;
            }
            if rem.degree() > Degree::Finite(self.config.max_degree) {
                self.report.discarded += 1;
                continue;
            }
            self.echelon.insert(&rem);
            self.report.max_degree_seen = self.report.max_degree_seen.max(part.degree());
            if is_identity_multiple(&rem) {
                self.report.identity_generated = true;
            }
            self.fresh.push(self.basis.len());
            self.weyl.push(part.to_weyl());
            self.basis.push(part);
        }
    }
}

/// Breadth-first closure under the adjoint action of the generators.
///
/// The algebra generated by a set `S` is spanned by left-normed brackets
/// `[s₁, [s₂, … [s_{k-1}, s_k]]]`, so each round only brackets the generators
/// with the elements found in the previous round.
///
/// When the generators span every free operator, elements are stored split
/// into charge sectors, which keeps their supports small.
pub fn lie_closure(generators: &[SkewPolynomial], config: &ClosureConfig) -> Result<ClosureReport> {
    let mut st = State {
        config,
        split: contains_free_operators(generators),
        echelon: Echelon::new(),
        basis: Vec::new(),
        weyl: Vec::new(),
        fresh: Vec::new(),
        report: ClosureReport {
            status: ClosureStatus::Closed,
            basis: Vec::new(),
            trace: Vec::new(),
            max_degree_seen: Degree::NegInfinity,
            discarded: 0,
            identity_generated: false,
        },
    };
    for g in generators {
        st.admit(g.clone());
    }
    let seeds = st.basis.len();
    st.report.trace.push(seeds);
    let cap = config.max_degree;
    let mut rounds = 0;
    while !st.fresh.is_empty() {
        if st.basis.len() > config.max_dimension {
            st.report.status = ClosureStatus::DimCapHit;
            break;
        }
        if rounds == config.max_iterations {
            st.report.status = ClosureStatus::IterCapHit;
            break;
        }
        rounds += 1;
        let newest = std::mem::take(&mut st.fresh);
        let mut candidates = Vec::new();
        for &j in &newest {
            for i in 0..seeds {
                let (x, y) = (&st.weyl[i], &st.weyl[j]);
                // Basis elements never exceed the cap, so terms above it cannot be eliminated.
                if !x.commutator_in_degrees(y, cap + 1, u32::MAX)?.is_zero() {
                    st.report.discarded += 1;
                    continue;
                }
                let c = x.commutator_in_degrees(y, 0, cap)?;
                if c.len() > config.max_terms {
                    return Err(Error::TermLimit {
                        terms: c.len(),
                        limit: config.max_terms,
                    });
                }
                if !c.is_zero() {
                    candidates.push(SkewPolynomial::from_weyl(&c)?);
                }
            }
        }
        candidates.sort_by(|a, b| a.leading().map(|l| l.0).cmp(&b.leading().map(|l| l.0)));
        for c in candidates {
            st.admit(c);
            if st.basis.len() > config.max_dimension {
                break;
            }
        }
        st.report.trace.push(st.basis.len());
    }
    if st.report.status == ClosureStatus::Closed && st.report.discarded > 0 {
        st.report.status = ClosureStatus::DegreeCapHit;
    }
    st.report.basis = st.basis;
    Ok(st.report)
}
