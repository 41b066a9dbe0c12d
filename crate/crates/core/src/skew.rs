//! The real basis `g₊^γ = i(a^{γ†} + a^γ)`, `g₋^γ = a^{γ†} - a^γ` of the
//! skew-hermitian polynomials, indexed by `γ = (α, β)` with `α ≥ β`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::coeff::{format_rational, int, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::weyl::{Degree, WeylPolynomial};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// `(-1)^ℓ σ`.
    pub fn alternate(self, l: usize) -> Self {
        if l.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }
}

/// A canonical basis element `g_σ^γ`: `α ≥ β`, and `α > β` when `σ = -`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewBasisElement {
    sigma: Sign,
    gamma: MultiIndex,
}

/// Result of rewriting an arbitrary `g_σ^γ` in terms of canonical elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Zero,
    Same(SkewBasisElement),
    Negated(SkewBasisElement),
}

impl SkewBasisElement {
    /// Builds a canonical element, rejecting non-canonical or vanishing labels.
    pub fn new(sigma: Sign, gamma: MultiIndex) -> Result<Self> {
        match canonicalize(sigma, &gamma) {
            Canonical::Same(e) => Ok(e),
            Canonical::Zero => Err(Error::InvalidSeed(format!(
                "g{}^{} is zero",
                sigma.symbol(),
                gamma
            ))),
            Canonical::Negated(_) => Err(Error::InvalidSeed(format!(
                "g{}^{} is not canonical (alpha < beta)",
                sigma.symbol(),
                gamma
            ))),
        }
    }

    pub fn sigma(&self) -> Sign {
        self.sigma
    }

    pub fn gamma(&self) -> &MultiIndex {
        &self.gamma
    }

    pub fn degree(&self) -> u32 {
        self.gamma.degree()
    }

    pub fn modes(&self) -> usize {
        self.gamma.modes()
    }

    pub fn to_weyl(&self) -> WeylPolynomial {
        let n = self.gamma.modes();
        let mut out = WeylPolynomial::zero(n);
        match self.sigma {
            Sign::Plus => {
                out.add_term(self.gamma.clone(), &GaussianRational::i());
                out.add_term(self.gamma.dagger(), &GaussianRational::i());
            }
            Sign::Minus => {
                out.add_term(self.gamma.dagger(), &GaussianRational::one());
                out.add_term(self.gamma.clone(), &GaussianRational::from_int(-1));
            }
        }
        out
    }
}

/// Rewrites `g_σ^γ` using `g₊^{γ†} = g₊^γ`, `g₋^{γ†} = -g₋^γ`, `g₋^{(α,α)} = 0`.
pub fn canonicalize(sigma: Sign, gamma: &MultiIndex) -> Canonical {
    match (gamma.alpha_vs_beta(), sigma) {
        (Ordering::Equal, Sign::Minus) => Canonical::Zero,
        (Ordering::Less, Sign::Plus) => Canonical::Same(SkewBasisElement {
            sigma,
            gamma: gamma.dagger(),
        }),
        (Ordering::Less, Sign::Minus) => Canonical::Negated(SkewBasisElement {
            sigma,
            gamma: gamma.dagger(),
        }),
        _ => Canonical::Same(SkewBasisElement {
            sigma,
            gamma: gamma.clone(),
        }),
    }
}

impl Ord for SkewBasisElement {
    /// Degree, then `γ`, then `σ` with `+` first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.gamma
            .cmp(&other.gamma)
            .then(self.sigma.cmp(&other.sigma))
    }
}

impl PartialOrd for SkewBasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Written `g+(1,2;0,0)`.
impl fmt::Display for SkewBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.sigma.symbol(), self.gamma)
    }
}

impl fmt::Debug for SkewBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Real linear combination of canonical basis elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewPolynomial {
    n: usize,
    terms: BTreeMap<SkewBasisElement, Rational>,
}

impl SkewPolynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(element: SkewBasisElement) -> Self {
        Self::term(element, Rational::one())
    }

    pub fn term(element: SkewBasisElement, c: Rational) -> Self {
        let mut out = Self::zero(element.modes());
        out.add_term(element, &c);
        out
    }

    /// `c · g_σ^γ` for an arbitrary label, canonicalized.
    pub fn labelled(sigma: Sign, gamma: &MultiIndex, c: &Rational) -> Self {
        let mut out = Self::zero(gamma.modes());
        out.add_labelled(sigma, gamma, c);
        out
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    /// Number of nonzero terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SkewBasisElement, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &SkewBasisElement) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest element in canonical order together with its coefficient.
    pub fn leading(&self) -> Option<(&SkewBasisElement, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, e: SkewBasisElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c · g_σ^γ` for an arbitrary label.
    pub fn add_labelled(&mut self, sigma: Sign, gamma: &MultiIndex, c: &Rational) {
        match canonicalize(sigma, gamma) {
            Canonical::Zero => {}
            Canonical::Same(e) => self.add_term(e, c),
            Canonical::Negated(e) => self.add_term(e, &-c),
        }
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |e| Degree::Finite(e.degree()))
    }

    pub fn filter(&self, keep: impl Fn(&SkewBasisElement) -> bool) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncate_below(&self, d: u32) -> Self {
        self.filter(|e| e.degree() >= d)
    }

    pub fn leading_part(&self) -> Self {
        match self.degree() {
            Degree::NegInfinity => self.clone(),
            Degree::Finite(d) => self.truncate_below(d),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_modes(self.n, other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&int(-1)))
    }

    pub fn to_weyl(&self) -> WeylPolynomial {
        let mut out = WeylPolynomial::zero(self.n);
        for (e, c) in &self.terms {
            for (g, x) in e.to_weyl().terms() {
                out.add_term(g.clone(), &x.scale(c));
            }
        }
        out
    }

    /// Inverse of `to_weyl`; fails unless `w† = -w`.
    pub fn from_weyl(w: &WeylPolynomial) -> Result<Self> {
        let mut out = Self::zero(w.modes());
        for (g, c) in w.terms() {
            let partner = w.coeff(&g.dagger());
            if partner != -c.conj() {
                return Err(Error::NotSkewHermitian {
                    term: format!("{c}*{g}"),
                });
            }
            match g.alpha_vs_beta() {
                Ordering::Less => {}
                Ordering::Equal => {
                    // c = i·y and c·a^γ = (y/2)·g₊^γ.
                    let e = SkewBasisElement {
                        sigma: Sign::Plus,
                        gamma: g.clone(),
                    };
                    out.add_term(e, &(&c.im / int(2)));
                }
                Ordering::Greater => {
                    // (x + iy)·a^γ + (-x + iy)·a^{γ†} = y·g₊^γ - x·g₋^γ.
                    out.add_term(
                        SkewBasisElement {
                            sigma: Sign::Plus,
                            gamma: g.clone(),
                        },
                        &c.im,
                    );
                    out.add_term(
                        SkewBasisElement {
                            sigma: Sign::Minus,
                            gamma: g.clone(),
                        },
                        &-c.re.clone(),
                    );
                }
            }
        }
        Ok(out)
    }

    /// Euclidean inner product in which the canonical basis is orthonormal.
    pub fn inner_product(&self, other: &Self) -> Rational {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms
            .iter()
            .filter_map(|(e, c)| large.terms.get(e).map(|d| c * d))
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

fn same_modes(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::ModeMismatch { left, right });
    }
    Ok(())
}

/// Lie bracket of skew-hermitian polynomials, computed through the Weyl product.
pub fn skew_commutator(x: &SkewPolynomial, y: &SkewPolynomial) -> Result<SkewPolynomial> {
    let w = x.to_weyl().commutator(&y.to_weyl())?;
    SkewPolynomial::from_weyl(&w)
}

/// `[i a_k† a_k, x]`, the action of the `k`-th free operator.
pub fn free_action(k: usize, x: &SkewPolynomial) -> Result<SkewPolynomial> {
    let w = x
        .to_weyl()
        .number_derivation(k)?
        .scale(&GaussianRational::i());
    SkewPolynomial::from_weyl(&w)
}

/// Outcome of the complementarity test for a pair `(x₊, x₋)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complementarity {
    pub complementary: bool,
    /// Per-mode `μ_k` with `[i a_k† a_k, x_σ] = σ μ_k x_{-σ}`; zero in the commuting case.
    pub mu: Vec<Rational>,
    /// First mode at which the pair failed, if any.
    pub failed_mode: Option<usize>,
}

fn in_diagonal(x: &SkewPolynomial) -> bool {
    x.terms().all(|(e, _)| e.gamma().is_diagonal())
}

/// Checks whether `x₊, x₋` are complementary: for every mode either both
/// commute with the free operator or it swaps them with a common factor.
pub fn is_complementary(xp: &SkewPolynomial, xm: &SkewPolynomial) -> Result<Complementarity> {
    same_modes(xp.modes(), xm.modes())?;
    for (name, x) in [("x+", xp), ("x-", xm)] {
        if in_diagonal(x) {
            return Err(Error::InputInDiagonal(name.to_string()));
        }
    }
    let n = xp.modes();
    let mut mu = Vec::with_capacity(n);
    for k in 0..n {
        let dp = free_action(k, xp)?;
        let dm = free_action(k, xm)?;
        let found = if dp.is_zero() && dm.is_zero() {
            Some(Rational::zero())
        } else {
            // Solve dp = μ·xm from one coefficient, then verify both identities.
            let (e, c) = xm.leading().expect("x- is not diagonal, so it is nonzero");
            let m = dp.coeff(e) / c;
            let ok = !m.is_zero() && dp == xm.scale(&m) && dm == xp.scale(&-m.clone());
            ok.then_some(m)
        };
        match found {
            Some(m) => mu.push(m),
            None => {
                return Ok(Complementarity {
                    complementary: false,
                    mu,
                    failed_mode: Some(k),
                })
            }
        }
    }
    Ok(Complementarity {
        complementary: true,
        mu,
        failed_mode: None,
    })
}

impl fmt::Debug for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPolynomial[n={}] {}", self.n, self)
    }
}

/// Written as `2*g+(1,0;0,1) - 1/2*g-(2,0;0,0)`, highest degree first.
impl fmt::Display for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{}*{e}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}
