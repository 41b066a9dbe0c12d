//! The product engine checked against a brute-force oracle that normal-orders
//! words of ladder operators by repeatedly applying `a a† = a† a + 1`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use weyl_lie::coeff::{int, GaussianRational};
use weyl_lie::weyl::{upto_equal, Degree};
use weyl_lie::{dsl, MultiIndex, WeylPolynomial};

/// A ladder letter: `(mode, is_creation)`.
type Word = Vec<(usize, bool)>;

fn word_of(gamma: &MultiIndex) -> Word {
    let mut w = Vec::new();
    for (k, &e) in gamma.alpha().iter().enumerate() {
        w.extend(std::iter::repeat_n((k, true), e as usize));
    }
    for (k, &e) in gamma.beta().iter().enumerate() {
        w.extend(std::iter::repeat_n((k, false), e as usize));
    }
    w
}

fn normal_order(
    n: usize,
    word: Word,
    memo: &mut HashMap<Word, HashMap<MultiIndex, BigInt>>,
) -> HashMap<MultiIndex, BigInt> {
    if let Some(hit) = memo.get(&word) {
        return hit.clone();
    }
    let swap = (0..word.len().saturating_sub(1)).find(|&p| !word[p].1 && word[p + 1].1);
    let result = match swap {
        None => {
            let mut alpha = vec![0u32; n];
            let mut beta = vec![0u32; n];
            for &(k, creation) in &word {
                if creation {
                    alpha[k] += 1;
                } else {
                    beta[k] += 1;
                }
            }
            HashMap::from([(MultiIndex::new(&alpha, &beta).unwrap(), BigInt::one())])
        }
        Some(p) => {
            let mut swapped = word.clone();
            swapped.swap(p, p + 1);
            let mut out = normal_order(n, swapped, memo);
            if word[p].0 == word[p + 1].0 {
                let mut contracted = word.clone();
                contracted.drain(p..p + 2);
                for (g, c) in normal_order(n, contracted, memo) {
                    *out.entry(g).or_insert_with(BigInt::zero) += c;
                }
            }
            out
        }
    };
    memo.insert(word, result.clone());
    result
}

fn oracle_product(p: &WeylPolynomial, q: &WeylPolynomial) -> WeylPolynomial {
    let n = p.modes();
    let mut memo = HashMap::new();
    let mut terms = Vec::new();
    for (g, c) in p.terms() {
        for (l, d) in q.terms() {
            let mut w = word_of(g);
            w.extend(word_of(l));
            for (idx, k) in normal_order(n, w, &mut memo) {
                terms.push((idx, (c * d).scale_int(&k)));
            }
        }
    }
    WeylPolynomial::from_terms(n, terms).unwrap()
}

fn arb_poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = WeylPolynomial> {
    let term = (
        proptest::collection::vec(0..=max_exp, 2 * n),
        -3i64..=3,
        -3i64..=3,
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(e, re, im)| {
            (
                MultiIndex::new(&e[..n], &e[n..]).unwrap(),
                GaussianRational::new(int(re), int(im)),
            )
        });
        WeylPolynomial::from_terms(n, terms).unwrap()
    })
}

fn arb_triple() -> impl Strategy<Value = (WeylPolynomial, WeylPolynomial, WeylPolynomial)> {
    (1usize..=2).prop_flat_map(|n| (arb_poly(n, 2, 3), arb_poly(n, 2, 3), arb_poly(n, 2, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_matches_word_rewriting((p, q, _) in arb_triple()) {
        prop_assert_eq!(p.product(&q).unwrap(), oracle_product(&p, &q));
    }

    #[test]
    fn commutator_matches_word_rewriting((p, q, _) in arb_triple()) {
        let expected = &oracle_product(&p, &q) - &oracle_product(&q, &p);
        prop_assert_eq!(p.commutator(&q).unwrap(), expected);
    }

    #[test]
    fn product_is_associative((p, q, r) in arb_triple()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn commutator_is_antisymmetric((p, q, _) in arb_triple()) {
        prop_assert_eq!(p.commutator(&q).unwrap(), -&q.commutator(&p).unwrap());
    }

    #[test]
    fn jacobi_identity((p, q, r) in arb_triple()) {
        let pq_r = p.commutator(&q.commutator(&r).unwrap()).unwrap();
        let qr_p = q.commutator(&r.commutator(&p).unwrap()).unwrap();
        let rp_q = r.commutator(&p.commutator(&q).unwrap()).unwrap();
        prop_assert!((&(&pq_r + &qr_p) + &rp_q).is_zero());
    }

    #[test]
    fn dagger_reverses_products((p, q, _) in arb_triple()) {
        prop_assert_eq!((&p * &q).dagger(), &q.dagger() * &p.dagger());
        prop_assert_eq!(p.dagger().dagger(), p);
    }

    #[test]
    fn number_derivation_is_a_commutator((p, _, _) in arb_triple()) {
        for k in 0..p.modes() {
            let n_k = WeylPolynomial::number(p.modes(), k).unwrap();
            prop_assert_eq!(p.number_derivation(k).unwrap(), n_k.commutator(&p).unwrap());
        }
    }

    #[test]
    fn commutator_lowers_degree_by_two((p, q, _) in arb_triple()) {
        let c = p.commutator(&q).unwrap();
        if let (Degree::Finite(a), Degree::Finite(b)) = (p.degree(), q.degree()) {
            prop_assert!(c.degree().below(i64::from(a + b) - 1));
        }
    }
}

/// Signed Stirling numbers of the first kind, `s(r, k)`.
fn stirling_first(r: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 0..r {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, s) in row.iter().enumerate() {
            next[k + 1] += s;
            next[k] -= s * BigInt::from(m);
        }
        row = next;
    }
    row
}

#[test]
fn falling_powers_expand_with_signed_stirling_numbers() {
    let number = WeylPolynomial::number(1, 0).unwrap();
    for r in 0..=7u32 {
        let lhs = WeylPolynomial::monomial(
            MultiIndex::new(&[r], &[r]).unwrap(),
            GaussianRational::one(),
        );
        let mut rhs = WeylPolynomial::zero(1);
        for (k, s) in stirling_first(r as usize).iter().enumerate() {
            rhs = &rhs
                + &number
                    .pow(k as u32)
                    .unwrap()
                    .scale(&GaussianRational::real(s.clone().into()));
        }
        assert_eq!(lhs, rhs, "r = {r}");
    }
    // a†² a² = N² - N
    assert_eq!(
        stirling_first(2),
        vec![BigInt::zero(), BigInt::from(-1), BigInt::one()]
    );
}

#[test]
fn monomial_commutator_trichotomy_is_exhaustive() {
    let n = 2;
    let mut all = Vec::new();
    for e in 0..3u32.pow(4) {
        let digits: Vec<u32> = (0..4).map(|j| (e / 3u32.pow(j)) % 3).collect();
        all.push(MultiIndex::new(&digits[..n], &digits[n..]).unwrap());
    }
    for g in &all {
        for h in &all {
            let p = WeylPolynomial::monomial(g.clone(), GaussianRational::one());
            let q = WeylPolynomial::monomial(h.clone(), GaussianRational::one());
            let c = p.commutator(&q).unwrap();
            let top = i64::from(g.degree() + h.degree()) - 2;
            let generic = (0..n).any(|j| h.alpha()[j] * g.beta()[j] != g.alpha()[j] * h.beta()[j]);
            if generic {
                assert_eq!(c.degree(), Degree::Finite(top as u32), "{g} {h}");
            } else {
                assert!(
                    c.degree().below(top - 1),
                    "{g} {h} gave degree {}",
                    c.degree()
                );
            }
        }
    }
}

#[test]
fn high_power_commutator_leading_term() {
    let p = dsl::parse_expression("ad[1]^2*a[1]^6", 1).unwrap();
    let q = dsl::parse_expression("ad[1]^3*a[1]^9", 1).unwrap();
    let expected = dsl::parse_expression("18*ad[1]^3*a[1]^13", 1).unwrap();
    let c = p.commutator(&q).unwrap();
    assert_eq!(c.degree(), Degree::Finite(16));
    assert!(upto_equal(&c, &expected, 16).unwrap());
}

#[test]
fn mixed_word_commutator() {
    let m = dsl::parse_expression("ad[1]*a[1]*ad[1]*a[1]*ad[1]", 1).unwrap();
    let mh = dsl::parse_expression("a[1]*ad[1]^3*a[1]", 1).unwrap();
    let c = m.commutator(&mh).unwrap();
    let leading = dsl::parse_expression("-2*ad[1]^3*a[1]", 1).unwrap();
    assert!(upto_equal(&c, &leading, 4).unwrap());
    // Full expansion, checked against the word-rewriting oracle rather than by hand.
    assert_eq!(c, &oracle_product(&m, &mh) - &oracle_product(&mh, &m));
}
