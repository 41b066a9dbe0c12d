//! Normal-ordered polynomials in the Weyl algebra over `n` bosonic modes.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// Total degree of a polynomial; the zero polynomial has degree `-∞`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// True when the degree is strictly below `bound` (which may be negative).
    pub fn below(self, bound: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => i64::from(d) < bound,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Finite sum `Σ c_γ (a†)^α a^β` with nonzero Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylPolynomial {
    n: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl WeylPolynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn monomial(gamma: MultiIndex, c: GaussianRational) -> Self {
        let n = gamma.modes();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(gamma, c);
        }
        Self { n, terms }
    }

    /// Sums the given terms; repeated indices are combined.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, GaussianRational)>,
    {
        let mut out = Self::zero(n);
        for (gamma, c) in terms {
            if gamma.modes() != n {
                return Err(Error::ModeMismatch {
                    left: n,
                    right: gamma.modes(),
                });
            }
            out.add_term(gamma, &c);
        }
        Ok(out)
    }

    /// Annihilation operator `a_k` (0-based mode).
    pub fn annihilation(n: usize, k: usize) -> Result<Self> {
        Ok(Self::monomial(
            MultiIndex::kappa(n, k, 0, 1)?,
            GaussianRational::one(),
        ))
    }

    /// Creation operator `a_k†` (0-based mode).
    pub fn creation(n: usize, k: usize) -> Result<Self> {
        Ok(Self::monomial(
            MultiIndex::kappa(n, k, 1, 0)?,
            GaussianRational::one(),
        ))
    }

    /// Number operator `a_k† a_k`.
    pub fn number(n: usize, k: usize) -> Result<Self> {
        Ok(Self::monomial(
            MultiIndex::tau(n, k)?,
            GaussianRational::one(),
        ))
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, gamma: &MultiIndex) -> GaussianRational {
        self.terms.get(gamma).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, gamma: MultiIndex, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(gamma) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> Degree {
        // Keys are ordered by total degree first, so the last key is maximal.
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |g| Degree::Finite(g.degree()))
    }

    /// Terms of maximal total degree.
    pub fn leading_part(&self) -> Self {
        match self.degree() {
            Degree::NegInfinity => self.clone(),
            Degree::Finite(d) => self.filter(|g| g.degree() == d),
        }
    }

    pub(crate) fn filter(&self, keep: impl Fn(&MultiIndex) -> bool) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms of total degree `>= d`.
    pub fn truncate_below(&self, d: u32) -> Self {
        self.filter(|g| g.degree() >= d)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussianRational::real(r.clone()))
    }

    /// Hermitian adjoint: conjugates coefficients and maps `γ` to `γ†`.
    pub fn dagger(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.dagger(), c.conj()))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_modes(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_modes(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), &-c);
        }
        Ok(out)
    }

    /// Normal-ordered product `p·q`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_modes(other)?;
        let mut acc: HashMap<MultiIndex, GaussianRational> = HashMap::new();
        for (g, c) in &self.terms {
            for (l, d) in &other.terms {
                let cd = c * d;
                // a^β (a†)^μ is reordered mode by mode.
                let tables: Vec<Rc<Vec<BigInt>>> = (0..self.n)
                    .map(|j| reorder_table(g.beta()[j], l.alpha()[j]))
                    .collect();
                let limits: Vec<usize> = tables.iter().map(|t| t.len()).collect();
                for_each_k(&limits, |k| {
                    let mut w = BigInt::one();
                    for (j, t) in tables.iter().enumerate() {
                        w *= &t[k[j]];
                    }
                    accumulate(&mut acc, shifted(g, l, k), cd.scale_int(&w));
                });
            }
        }
        Ok(Self::from_map(self.n, acc))
    }

    /// `[p, q] = pq - qp`, expanded directly so that the leading reorder terms cancel.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.commutator_in_degrees(other, 0, u32::MAX)
    }

    /// The terms of `[p, q]` whose total degree lies in `lo..=hi`, computed
    /// without expanding the others.
    pub fn commutator_in_degrees(&self, other: &Self, lo: u32, hi: u32) -> Result<Self> {
        self.same_modes(other)?;
        let mut acc: HashMap<MultiIndex, GaussianRational> = HashMap::new();
        for (g, c) in &self.terms {
            for (l, d) in &other.terms {
                let top = g.degree() + l.degree();
                // Output degree is top - 2|k| with |k| >= 1.
                if top < 2 || top - 2 < lo {
                    continue;
                }
                let forward: Vec<Rc<Vec<BigInt>>> = (0..self.n)
                    .map(|j| reorder_table(g.beta()[j], l.alpha()[j]))
                    .collect();
                let backward: Vec<Rc<Vec<BigInt>>> = (0..self.n)
                    .map(|j| reorder_table(l.beta()[j], g.alpha()[j]))
                    .collect();
                let limits: Vec<usize> = forward
                    .iter()
                    .zip(&backward)
                    .map(|(f, b)| f.len().max(b.len()))
                    .collect();
                if limits.iter().all(|&m| m == 1) {
                    continue;
                }
                let cd = c * d;
                for_each_k(&limits, |k| {
                    let size: usize = k.iter().sum();
                    if size == 0 {
                        return;
                    }
                    let Some(degree) = (top as usize).checked_sub(2 * size) else {
                        return;
                    };
                    if degree < lo as usize || degree > hi as usize {
                        return;
                    }
                    let w = weight(&forward, k) - weight(&backward, k);
                    if !w.is_zero() {
                        accumulate(&mut acc, shifted(g, l, k), cd.scale_int(&w));
                    }
                });
            }
        }
        Ok(Self::from_map(self.n, acc))
    }

    /// `[a_k† a_k, p]`, computed termwise as `(α_k - β_k)` times each term.
    pub fn number_derivation(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::ModeOutOfRange {
                index: k,
                n: self.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (g, c) in &self.terms {
            let shift = i64::from(g.alpha()[k]) - i64::from(g.beta()[k]);
            out.add_term(g.clone(), &c.scale_int(&BigInt::from(shift)));
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::constant(self.n, GaussianRational::one());
        for _ in 0..e {
            out = out.product(self)?;
        }
        Ok(out)
    }

    fn from_map(n: usize, acc: HashMap<MultiIndex, GaussianRational>) -> Self {
        Self {
            n,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn same_modes(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// `deg(p - q) < d`.
pub fn upto_equal(p: &WeylPolynomial, q: &WeylPolynomial, d: i64) -> Result<bool> {
    Ok(p.checked_sub(q)?.degree().below(d))
}

fn accumulate(
    acc: &mut HashMap<MultiIndex, GaussianRational>,
    key: MultiIndex,
    value: GaussianRational,
) {
    match acc.entry(key) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(value);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &value;
        }
    }
}

fn weight(tables: &[Rc<Vec<BigInt>>], k: &[usize]) -> BigInt {
    let mut w = BigInt::one();
    for (t, &kj) in tables.iter().zip(k) {
        match t.get(kj) {
            Some(x) => w *= x,
            None => return BigInt::zero(),
        }
    }
    w
}

/// `(α + μ - k, β + ν - k)` for left factor `(α, β)` and right factor `(μ, ν)`.
fn shifted(g: &MultiIndex, l: &MultiIndex, k: &[usize]) -> MultiIndex {
    let n = g.modes();
    let mut exps = Vec::with_capacity(2 * n);
    for (j, &kj) in k.iter().enumerate().take(n) {
        exps.push(g.alpha()[j] + l.alpha()[j] - kj as u32);
    }
    for (j, &kj) in k.iter().enumerate().take(n) {
        exps.push(g.beta()[j] + l.beta()[j] - kj as u32);
    }
    MultiIndex::from_raw(exps)
}

/// Visits every vector `k` with `0 <= k_j < limits[j]`.
fn for_each_k(limits: &[usize], mut visit: impl FnMut(&[usize])) {
    let mut k = vec![0usize; limits.len()];
    loop {
        visit(&k);
        let mut j = 0;
        loop {
            if j == limits.len() {
                return;
            }
            k[j] += 1;
            if k[j] < limits[j] {
                break;
            }
            k[j] = 0;
            j += 1;
        }
    }
}

type ReorderCache = HashMap<(u32, u32), Rc<Vec<BigInt>>>;

thread_local! {
    static REORDER: RefCell<ReorderCache> = RefCell::new(HashMap::new());
}

/// Coefficients `k!·C(r,k)·C(s,k)` for `k = 0..=min(r,s)`, from
/// `a^r (a†)^s = Σ_k k!·C(r,k)·C(s,k) (a†)^{s-k} a^{r-k}`.
pub fn reorder_table(r: u32, s: u32) -> Rc<Vec<BigInt>> {
    REORDER.with(|cache| {
        cache
            .borrow_mut()
            .entry((r, s))
            .or_insert_with(|| {
                let top = r.min(s);
                let mut out = Vec::with_capacity(top as usize + 1);
                let mut c = BigInt::one();
                out.push(c.clone());
                for k in 0..top {
                    c = c * BigInt::from(r - k) * BigInt::from(s - k) / BigInt::from(k + 1);
                    out.push(c.clone());
                }
                Rc::new(out)
            })
            .clone()
    })
}

impl Add for &WeylPolynomial {
    type Output = WeylPolynomial;
    /// Panics on a mode-count mismatch; use `checked_add` for fallible addition.
    fn add(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        self.checked_add(rhs).expect("mode count mismatch")
    }
}

impl Sub for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn sub(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        self.checked_sub(rhs).expect("mode count mismatch")
    }
}

impl Mul for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn mul(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        self.product(rhs).expect("mode count mismatch")
    }
}

impl Neg for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn neg(self) -> WeylPolynomial {
        WeylPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

impl fmt::Debug for WeylPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylPolynomial[n={}] ", self.n)?;
        fmt::Display::fmt(self, f)
    }
}

/// Renders in the input language, e.g. `2*i*ad[1]*a[1] - 3*ad[2]`.
impl fmt::Display for WeylPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format_polynomial(self))
    }
}
