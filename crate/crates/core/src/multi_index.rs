//! Multi-indices `γ = (α, β)` labelling normal-ordered monomials
//! `(a†)^α a^β = Π_k (a_k†)^{α_k} a_k^{β_k}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent pair over `n` modes. Stored as `α` followed by `β` in one buffer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exps: Box<[u32]>,
}

impl MultiIndex {
    pub fn new(alpha: &[u32], beta: &[u32]) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::RaggedMultiIndex {
                alpha: alpha.len(),
                beta: beta.len(),
            });
        }
        let mut exps = Vec::with_capacity(2 * alpha.len());
        exps.extend_from_slice(alpha);
        exps.extend_from_slice(beta);
        Ok(Self { exps: exps.into() })
    }

    /// Index of the identity monomial over `n` modes.
    pub fn zero(n: usize) -> Self {
        Self {
            exps: vec![0; 2 * n].into(),
        }
    }

    /// `τ_p`: the number operator `a_p† a_p` (mode `p` is 0-based).
    pub fn tau(n: usize, p: usize) -> Result<Self> {
        Self::kappa(n, p, 1, 1)
    }

    /// `κ_p(r, s)`: the single-mode monomial `(a_p†)^r a_p^s`.
    pub fn kappa(n: usize, p: usize, r: u32, s: u32) -> Result<Self> {
        if p >= n {
            return Err(Error::ModeOutOfRange { index: p, n });
        }
        let mut out = Self::zero(n);
        out.exps[p] = r;
        out.exps[n + p] = s;
        Ok(out)
    }

    pub(crate) fn from_raw(exps: Vec<u32>) -> Self {
        debug_assert!(exps.len().is_multiple_of(2));
        Self { exps: exps.into() }
    }

    pub fn modes(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn alpha(&self) -> &[u32] {
        &self.exps[..self.modes()]
    }

    pub fn beta(&self) -> &[u32] {
        &self.exps[self.modes()..]
    }

    /// Total degree `|γ| = |α| + |β|`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// `γ† = (β, α)`.
    pub fn dagger(&self) -> Self {
        let n = self.modes();
        let mut exps = Vec::with_capacity(2 * n);
        exps.extend_from_slice(self.beta());
        exps.extend_from_slice(self.alpha());
        Self { exps: exps.into() }
    }

    pub fn is_diagonal(&self) -> bool {
        self.alpha() == self.beta()
    }

    /// Lexicographic comparison of `α` against `β`.
    pub fn alpha_vs_beta(&self) -> Ordering {
        self.alpha().cmp(self.beta())
    }

    /// `Θ(γ)`: whichever of `γ`, `γ†` has `α ≥ β`.
    pub fn theta(&self) -> Self {
        if self.alpha_vs_beta() == Ordering::Less {
            self.dagger()
        } else {
            self.clone()
        }
    }

    /// `E(γ)`: `+1` if `α ≥ β`, else `-1`.
    pub fn orientation(&self) -> i64 {
        if self.alpha_vs_beta() == Ordering::Less {
            -1
        } else {
            1
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_modes(other)?;
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { exps: exps.into() })
    }

    /// Componentwise difference, or `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.modes() != other.modes() {
            return None;
        }
        let exps: Option<Vec<u32>> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect();
        exps.map(|e| Self { exps: e.into() })
    }

    pub fn scaled(&self, factor: u32) -> Self {
        Self {
            exps: self.exps.iter().map(|e| e * factor).collect(),
        }
    }

    fn same_modes(&self, other: &Self) -> Result<()> {
        if self.modes() != other.modes() {
            return Err(Error::ModeMismatch {
                left: self.modes(),
                right: other.modes(),
            });
        }
        Ok(())
    }
}

impl Ord for MultiIndex {
    /// Total degree first, then lexicographic on `(α, β)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", join(self.alpha()), join(self.beta()))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multiset of mode indices, stored as per-mode multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Multiset {
    counts: Vec<u32>,
}

impl Multiset {
    pub fn empty(n: usize) -> Self {
        Self { counts: vec![0; n] }
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn size(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn with(&self, mode: usize) -> Self {
        let mut out = self.clone();
        out.counts[mode] += 1;
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `τ(S) = Σ_{s ∈ S} τ_s`.
    pub fn tau(&self) -> MultiIndex {
        let mut exps = self.counts.clone();
        exps.extend_from_slice(&self.counts);
        MultiIndex::from_raw(exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(a: &[u32], b: &[u32]) -> MultiIndex {
        MultiIndex::new(a, b).unwrap()
    }

    #[test]
    fn constructors() {
        assert_eq!(MultiIndex::tau(2, 1).unwrap(), mi(&[0, 1], &[0, 1]));
        assert_eq!(MultiIndex::kappa(2, 0, 3, 1).unwrap(), mi(&[3, 0], &[1, 0]));
        assert!(MultiIndex::tau(2, 2).is_err());
        assert!(MultiIndex::new(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn theta_and_orientation() {
        let g = mi(&[0, 2], &[1, 0]);
        assert_eq!(g.alpha_vs_beta(), Ordering::Less);
        assert_eq!(g.theta(), g.dagger());
        assert_eq!(g.orientation(), -1);
        assert_eq!(g.dagger().orientation(), 1);
        assert_eq!(mi(&[1, 1], &[1, 1]).orientation(), 1);
    }

    #[test]
    fn ordering_is_degree_first() {
        let low = mi(&[5, 0], &[0, 0]);
        let high = mi(&[0, 0], &[3, 3]);
        assert!(low < high);
        assert!(mi(&[0, 1], &[0, 0]) < mi(&[1, 0], &[0, 0]));
    }

    #[test]
    fn multiset_tau() {
        let s = Multiset::from_counts(vec![2, 1]);
        assert_eq!(s.size(), 3);
        assert_eq!(s.tau(), mi(&[2, 1], &[2, 1]));
        assert_eq!(s.with(1).union(&s).counts(), &[4, 3]);
    }
}
