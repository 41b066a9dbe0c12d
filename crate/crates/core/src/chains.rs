//! Commutator chains and the closed-form leading terms of basis commutators.
//!
//! A Type I chain repeatedly brackets with a fixed diagonal partner
//! `g₊^{γ̃}`; a Type II chain brackets each side with `[y₊, y₋]`. Both start
//! from the pair `(g₊^γ, g₋^γ)` of a seed index.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::int;
use crate::error::{Error, Result};
use crate::multi_index::{MultiIndex, Multiset};
use crate::skew::{free_action, skew_commutator, Sign, SkewBasisElement, SkewPolynomial};
use crate::subspace::{classify_index, SubspaceLabel};
use crate::weyl::{Degree, WeylPolynomial};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ChainKind {
    I,
    II,
}

#[derive(Clone, Debug)]
pub struct ChainOptions {
    /// Abort with `Error::TermLimit` once an element has more Weyl terms than this.
    pub max_terms: usize,
    /// Track only top-degree parts. The top-degree part of `[x, y]` at degree
    /// `deg x + deg y - 2` depends only on the top-degree parts of `x` and `y`,
    /// so this is exact for leading terms; it fails with
    /// `Error::LeadingCancellation` when that bracket vanishes.
    pub leading_only: bool,
}

impl Default for ChainOptions {
    fn default() -> Self {
        Self {
            max_terms: 1_000_000,
            leading_only: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElement {
    pub level: usize,
    pub plus: SkewPolynomial,
    pub minus: SkewPolynomial,
    pub predicted_bound: i64,
}

impl ChainElement {
    pub fn get(&self, sigma: Sign) -> &SkewPolynomial {
        match sigma {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn degree(&self) -> Degree {
        self.plus.degree().max(self.minus.degree())
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct Chain {
    pub kind: ChainKind,
    pub seed: MultiIndex,
    pub partner: Option<MultiIndex>,
    /// Levels `0..=steps`.
    pub elements: Vec<ChainElement>,
    /// First level at which both elements vanish; every later level is zero too.
    pub died_at: Option<usize>,
}

fn check_seed(seed: &MultiIndex) -> Result<()> {
    if seed.alpha_vs_beta() == std::cmp::Ordering::Less {
        return Err(Error::InvalidSeed(format!("{seed} has alpha < beta")));
    }
    Ok(())
}

fn seed_pair(seed: &MultiIndex) -> (WeylPolynomial, WeylPolynomial) {
    let plus = SkewPolynomial::labelled(Sign::Plus, seed, &int(1)).to_weyl();
    let minus = SkewPolynomial::labelled(Sign::Minus, seed, &int(1)).to_weyl();
    (plus, minus)
}

fn element(
    level: usize,
    plus: &WeylPolynomial,
    minus: &WeylPolynomial,
    bound: i64,
) -> Result<ChainElement> {
    Ok(ChainElement {
        level,
        plus: SkewPolynomial::from_weyl(plus)?,
        minus: SkewPolynomial::from_weyl(minus)?,
        predicted_bound: bound,
    })
}

fn bracket(
    x: &WeylPolynomial,
    y: &WeylPolynomial,
    level: usize,
    opts: &ChainOptions,
) -> Result<WeylPolynomial> {
    let out = if opts.leading_only {
        match (x.degree().finite(), y.degree().finite()) {
            (Some(dx), Some(dy)) if dx + dy >= 2 => {
                let top = dx + dy - 2;
                let lead = x.commutator_in_degrees(y, top, top)?;
                // Lower-degree terms are not tracked, so a vanishing top part is inconclusive.
                if lead.is_zero() {
                    return Err(Error::LeadingCancellation { level });
                }
                lead
            }
            _ => WeylPolynomial::zero(x.modes()),
        }
    } else {
        x.commutator(y)?
    };
    if out.len() > opts.max_terms {
        return Err(Error::TermLimit {
            terms: out.len(),
            limit: opts.max_terms,
        });
    }
    Ok(out)
}

/// `z^{(ℓ+1)}_σ = [g₊^{γ̃}, z^{(ℓ)}_σ]` with `z^{(0)}_σ = g_σ^γ`.
pub fn chain_i(
    seed: &MultiIndex,
    partner: &MultiIndex,
    steps: usize,
    opts: &ChainOptions,
) -> Result<Chain> {
    check_seed(seed)?;
    if partner.modes() != seed.modes() {
        return Err(Error::ModeMismatch {
            left: seed.modes(),
            right: partner.modes(),
        });
    }
    if !partner.is_diagonal() {
        return Err(Error::InvalidPartner(format!("{partner} is not diagonal")));
    }
    let g = SkewPolynomial::labelled(Sign::Plus, partner, &int(1)).to_weyl();
    let (mut plus, mut minus) = seed_pair(seed);
    let mut elements = vec![element(
        0,
        &plus,
        &minus,
        predicted_degree_i(0, seed, partner),
    )?];
    let mut died_at = None;
    for level in 1..=steps {
        plus = bracket(&g, &plus, level, opts)?;
        minus = bracket(&g, &minus, level, opts)?;
        elements.push(element(
            level,
            &plus,
            &minus,
            predicted_degree_i(level, seed, partner),
        )?);
        if died_at.is_none() && plus.is_zero() && minus.is_zero() {
            died_at = Some(level);
        }
    }
    Ok(Chain {
        kind: ChainKind::I,
        seed: seed.clone(),
        partner: Some(partner.clone()),
        elements,
        died_at,
    })
}

/// `y^{(ℓ+1)}_σ = [y^{(ℓ)}_σ, [y^{(ℓ)}_+, y^{(ℓ)}_-]]` with `y^{(0)}_σ = g_σ^γ`.
pub fn chain_ii(seed: &MultiIndex, steps: usize, opts: &ChainOptions) -> Result<Chain> {
    check_seed(seed)?;
    let (mut plus, mut minus) = seed_pair(seed);
    let mut elements = vec![element(0, &plus, &minus, predicted_degree_ii(0, seed))?];
    let mut died_at = None;
    for level in 1..=steps {
        let inner = bracket(&plus, &minus, level, opts)?;
        plus = bracket(&plus, &inner, level, opts)?;
        minus = bracket(&minus, &inner, level, opts)?;
        elements.push(element(
            level,
            &plus,
            &minus,
            predicted_degree_ii(level, seed),
        )?);
        if died_at.is_none() && plus.is_zero() && minus.is_zero() {
            died_at = Some(level);
        }
    }
    Ok(Chain {
        kind: ChainKind::II,
        seed: seed.clone(),
        partner: None,
        elements,
        died_at,
    })
}

/// `2ℓ(|α̃| - 1) + |α| + |β|`.
pub fn predicted_degree_i(level: usize, seed: &MultiIndex, partner: &MultiIndex) -> i64 {
    let half = i64::from(partner.degree() / 2);
    2 * level as i64 * (half - 1) + i64::from(seed.degree())
}

/// `3^ℓ(|γ| - 2) + 2`.
pub fn predicted_degree_ii(level: usize, seed: &MultiIndex) -> i64 {
    3i64.pow(level as u32) * (i64::from(seed.degree()) - 2) + 2
}

/// The Type I bound is attained when some mode has `α_k ≠ β_k` and `α̃_k ≠ 0`.
pub fn type_i_bound_is_sharp(seed: &MultiIndex, partner: &MultiIndex) -> bool {
    (0..seed.modes()).any(|k| seed.alpha()[k] != seed.beta()[k] && partner.alpha()[k] != 0)
}

/// The Type II bound is attained for seeds in the Perp subspace.
pub fn type_ii_bound_is_sharp(seed: &MultiIndex) -> bool {
    classify_index(seed) == SubspaceLabel::Perp
}

/// Multi-degree `λ^{(ℓ)} = γ + ℓγ̃` carried by the leading terms of a Type I chain.
pub fn type_i_lambda(level: usize, seed: &MultiIndex, partner: &MultiIndex) -> MultiIndex {
    seed.checked_add(&partner.scaled(level as u32))
        .expect("same mode count")
}

/// `λ^{(0)} = γ`, `λ^{(ℓ+1)} = 2λ^{(ℓ)} + (λ^{(ℓ)})†`.
pub fn type_ii_lambda(level: usize, seed: &MultiIndex) -> MultiIndex {
    let mut lambda = seed.clone();
    for _ in 0..level {
        lambda = lambda
            .scaled(2)
            .checked_add(&lambda.dagger())
            .expect("same mode count");
    }
    lambda
}

/// Number of `τ` shifts `k^{(ℓ)}` separating `λ^{(ℓ)}` from the leading terms.
pub fn shift_count(kind: ChainKind, level: usize) -> u32 {
    match kind {
        ChainKind::I => level as u32,
        ChainKind::II => 3u32.pow(level as u32) - 1,
    }
}

/// Verifies `[i a_k† a_k, v_σ] = σ(α_k - β_k) v_{-σ}` at every level and
/// returns the per-mode factors `α_k - β_k` of the seed.
pub fn chain_complementarity_report(chain: &Chain) -> Result<Vec<i64>> {
    let n = chain.seed.modes();
    let mu: Vec<i64> = (0..n)
        .map(|k| i64::from(chain.seed.alpha()[k]) - i64::from(chain.seed.beta()[k]))
        .collect();
    for el in &chain.elements {
        for (k, &m) in mu.iter().enumerate() {
            let m = int(m);
            let ok_plus = free_action(k, &el.plus)? == el.minus.scale(&m);
            let ok_minus = free_action(k, &el.minus)? == el.plus.scale(&-m);
            if !(ok_plus && ok_minus) {
                return Err(Error::ComplementarityViolation {
                    level: el.level,
                    mode: k,
                });
            }
        }
    }
    Ok(mu)
}

/// The nine commutator shapes with closed-form leading terms.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmnibusCase {
    /// `[g₊^γ, g₋^λ]`
    A,
    /// `[g₊^γ, g₊^λ]`
    B,
    /// `[g₋^γ, g₊^λ]`
    C,
    /// `[g₋^γ, g₋^λ]`
    D,
    /// `[g₊^{γ-τ(R)}, g₋^{λ-τ(S)}]`
    E,
    /// `[g₊^{γ-τ(R)}, g₊^{λ-τ(S)}]`
    F,
    /// `[g₋^{γ-τ(R)}, g₊^{λ-τ(S)}]`
    G,
    /// `[g₊^{γ-τ(R)}, g₋^{γ-τ(S)}]`
    H,
    /// `[g₋^{γ-τ(R)}, g₊^{γ-τ(S)}]`
    I,
}

impl OmnibusCase {
    pub const ALL: [OmnibusCase; 9] = [
        OmnibusCase::A,
        OmnibusCase::B,
        OmnibusCase::C,
        OmnibusCase::D,
        OmnibusCase::E,
        OmnibusCase::F,
        OmnibusCase::G,
        OmnibusCase::H,
        OmnibusCase::I,
    ];

    /// Signs of the two commutator arguments.
    pub fn signs(self) -> (Sign, Sign) {
        use OmnibusCase::*;
        match self {
            A | E | H => (Sign::Plus, Sign::Minus),
            B | F => (Sign::Plus, Sign::Plus),
            C | G | I => (Sign::Minus, Sign::Plus),
            D => (Sign::Minus, Sign::Minus),
        }
    }

    pub fn uses_shifts(self) -> bool {
        !matches!(
            self,
            OmnibusCase::A | OmnibusCase::B | OmnibusCase::C | OmnibusCase::D
        )
    }

    /// Cases whose second argument reuses the first multi-index.
    pub fn same_index(self) -> bool {
        matches!(self, OmnibusCase::H | OmnibusCase::I)
    }

    /// (output sign, sign of the direct sum, sign of the reflected sum, reflected sum carries `E`).
    fn shape(self) -> (Sign, i64, i64, bool) {
        match self.signs() {
            (Sign::Plus, Sign::Minus) => (Sign::Plus, 1, 1, false),
            (Sign::Plus, Sign::Plus) => (Sign::Minus, -1, 1, true),
            (Sign::Minus, Sign::Plus) => (Sign::Plus, 1, -1, false),
            (Sign::Minus, Sign::Minus) => (Sign::Minus, 1, 1, true),
        }
    }
}

/// Input to the closed-form commutator: `γ`, `λ` (ignored for H and I) and shifts `R`, `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmnibusInput {
    pub case: OmnibusCase,
    pub gamma: MultiIndex,
    pub lambda: MultiIndex,
    pub r: Multiset,
    pub s: Multiset,
}

impl OmnibusInput {
    fn shifted(&self) -> Result<(MultiIndex, MultiIndex)> {
        let n = self.gamma.modes();
        let lambda = if self.case.same_index() {
            &self.gamma
        } else {
            &self.lambda
        };
        if lambda.modes() != n || self.r.counts().len() != n || self.s.counts().len() != n {
            return Err(Error::Inadmissible("inconsistent mode counts".into()));
        }
        if !self.case.uses_shifts() && (self.r.size() != 0 || self.s.size() != 0) {
            return Err(Error::Inadmissible("cases A-D take no shifts".into()));
        }
        let (s1, s2) = self.case.signs();
        for (name, idx, shift, sign) in [
            ("gamma", &self.gamma, &self.r, s1),
            ("lambda", lambda, &self.s, s2),
        ] {
            let ord = idx.alpha_vs_beta();
            if ord == std::cmp::Ordering::Less || (sign == Sign::Minus && ord.is_eq()) {
                return Err(Error::Inadmissible(format!(
                    "{name} = {idx} is not canonical for g{}",
                    sign.symbol()
                )));
            }
            for k in 0..n {
                if shift.counts()[k] > idx.alpha()[k].min(idx.beta()[k]) {
                    return Err(Error::Inadmissible(format!(
                        "shift exceeds {name} at mode {k}"
                    )));
                }
            }
        }
        let rho = self
            .gamma
            .checked_sub(&self.r.tau())
            .expect("shift checked");
        let eta = lambda.checked_sub(&self.s.tau()).expect("shift checked");
        Ok((rho, eta))
    }

    /// Degree below which the exact commutator and the closed form may differ.
    pub fn threshold(&self) -> Result<i64> {
        let (rho, eta) = self.shifted()?;
        Ok(i64::from(rho.degree()) + i64::from(eta.degree()) - 2)
    }

    /// The commutator itself, computed exactly.
    pub fn exact(&self) -> Result<SkewPolynomial> {
        let (rho, eta) = self.shifted()?;
        let (s1, s2) = self.case.signs();
        let x = SkewPolynomial::basis(SkewBasisElement::new(s1, rho)?);
        let y = SkewPolynomial::basis(SkewBasisElement::new(s2, eta)?);
        skew_commutator(&x, &y)
    }
}

/// Closed-form leading part of the commutator described by `input`.
///
/// With `(α', β') = γ - τ(R)` and `(μ', ν') = λ - τ(S)` the result is
///
/// ```text
/// s₁ Σ_v (α'_v ν'_v - β'_v μ'_v) g^{γ+λ-τ(R∪S∪{v})}
///   + s₂ [E] Σ_v (β'_v ν'_v - α'_v μ'_v) g^{Θ(γ+λ†)-τ(R∪S∪{v})}
/// ```
///
/// with terms carrying a negative exponent dropped.
pub fn leading_commutator(input: &OmnibusInput) -> Result<SkewPolynomial> {
    let (rho, eta) = input.shifted()?;
    let (out, s1, s2, with_e) = input.case.shape();
    let n = rho.modes();
    let direct = rho.checked_add(&eta)?;
    let reflected_raw = rho.checked_add(&eta.dagger())?;
    let e = if with_e {
        reflected_raw.orientation()
    } else {
        1
    };
    let reflected = reflected_raw.theta();
    let (a, b, m, v) = (rho.alpha(), rho.beta(), eta.alpha(), eta.beta());
    let mut result = SkewPolynomial::zero(n);
    for k in 0..n {
        let tau = MultiIndex::tau(n, k)?;
        let c = i64::from(a[k]) * i64::from(v[k]) - i64::from(b[k]) * i64::from(m[k]);
        let d = i64::from(b[k]) * i64::from(v[k]) - i64::from(a[k]) * i64::from(m[k]);
        if c != 0 {
            if let Some(idx) = direct.checked_sub(&tau) {
                result.add_labelled(out, &idx, &BigRational::from_integer(BigInt::from(s1 * c)));
            }
        }
        if d != 0 {
            if let Some(idx) = reflected.checked_sub(&tau) {
                result.add_labelled(
                    out,
                    &idx,
                    &BigRational::from_integer(BigInt::from(s2 * e * d)),
                );
            }
        }
    }
    Ok(result)
}
