use proptest::prelude::*;
use weyl_lie::chains::{
    chain_complementarity_report, chain_i, chain_ii, leading_commutator, predicted_degree_i,
    predicted_degree_ii, shift_count, type_i_bound_is_sharp, type_i_lambda, type_ii_bound_is_sharp,
    type_ii_lambda, ChainKind, ChainOptions, OmnibusCase, OmnibusInput,
};
use weyl_lie::coeff::int;
use weyl_lie::multi_index::Multiset;
use weyl_lie::skew::skew_commutator;
use weyl_lie::subspace::classify_index;
use weyl_lie::weyl::{upto_equal, Degree};
use weyl_lie::{dsl, Error, MultiIndex, Sign, SkewPolynomial, SubspaceLabel};

fn mi(a: &[u32], b: &[u32]) -> MultiIndex {
    MultiIndex::new(a, b).unwrap()
}

fn leading_only() -> ChainOptions {
    ChainOptions {
        leading_only: true,
        ..ChainOptions::default()
    }
}

fn check_leading(level: usize, got: &SkewPolynomial, printed: &str) {
    let expected = dsl::parse_expression(printed, 2).unwrap();
    let d = got.degree().finite().unwrap() as i64;
    assert_eq!(expected.degree(), Degree::Finite(d as u32), "level {level}");
    assert!(
        upto_equal(&got.to_weyl(), &expected, d).unwrap(),
        "level {level}: got {got}"
    );
}

#[test]
fn type_i_example_with_two_lowered_modes() {
    let chain = chain_i(
        &mi(&[1, 2], &[0, 0]),
        &mi(&[1, 1], &[1, 1]),
        2,
        &ChainOptions::default(),
    )
    .unwrap();
    check_leading(
        1,
        &chain.elements[1].plus,
        "2*(a[1]*ad[2]*a[2]^3 - ad[1]*ad[2]^3*a[2]) + 4*(ad[1]*a[1]^2*a[2]^2 - ad[1]^2*a[1]*ad[2]^2)",
    );
    check_leading(
        2,
        &chain.elements[2].plus,
        "-4*i*(a[1]*ad[2]^2*a[2]^4 + ad[1]*ad[2]^4*a[2]^2) - 16*i*(ad[1]*a[1]^2*ad[2]*a[2]^3 + ad[1]^2*a[1]*ad[2]^3*a[2]) \
         - 16*i*(ad[1]^2*a[1]^3*a[2]^2 + ad[1]^3*a[1]^2*ad[2]^2)",
    );
    assert_eq!(chain.elements[1].degree(), Degree::Finite(5));
    assert_eq!(chain.elements[2].degree(), Degree::Finite(7));
}

#[test]
fn type_i_example_with_diagonal_mode() {
    let chain = chain_i(
        &mi(&[1, 1], &[1, 0]),
        &mi(&[1, 1], &[1, 1]),
        2,
        &ChainOptions::default(),
    )
    .unwrap();
    check_leading(
        1,
        &chain.elements[1].plus,
        "-2*ad[1]^2*a[1]^2*(ad[2] - a[2])",
    );
    check_leading(
        2,
        &chain.elements[2].plus,
        "-4*i*ad[1]^3*a[1]^3*(ad[2] + a[2])",
    );
}

#[test]
fn type_i_rejects_off_diagonal_partner() {
    let err = chain_i(
        &mi(&[1, 1], &[1, 0]),
        &mi(&[1, 0], &[0, 1]),
        1,
        &ChainOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::InvalidPartner(_)));
}

#[test]
fn type_ii_chain_of_optomechanical_seed_dies() {
    let seed = mi(&[1, 1], &[1, 0]);
    assert_eq!(classify_index(&seed), SubspaceLabel::Om);
    let chain = chain_ii(&seed, 2, &ChainOptions::default()).unwrap();
    assert_eq!(chain.died_at, Some(1));
    assert_eq!(chain.elements.len(), 3);
    assert!(chain.elements[1].is_zero() && chain.elements[2].is_zero());
}

#[test]
fn type_ii_leading_only_matches_bound() {
    let seed = mi(&[2, 1, 0], &[0, 0, 1]);
    assert!(type_ii_bound_is_sharp(&seed));
    let chain = chain_ii(&seed, 3, &leading_only()).unwrap();
    let degrees: Vec<_> = chain
        .elements
        .iter()
        .map(|e| e.degree().finite().unwrap())
        .collect();
    assert_eq!(degrees, vec![4, 8, 20, 56]);
}

/// Each leading term sits at `λ - τ(S)` (up to the dagger) with `|S|` shifts.
fn assert_shift_structure(leading: &SkewPolynomial, lambda: &MultiIndex, shifts: u32) {
    assert!(!leading.is_zero());
    for (e, _) in leading.terms() {
        let ok =
            [e.gamma().clone(), e.gamma().dagger()]
                .iter()
                .any(|g| match lambda.checked_sub(g) {
                    Some(diff) => diff.is_diagonal() && diff.alpha().iter().sum::<u32>() == shifts,
                    None => false,
                });
        assert!(ok, "{e} is not lambda - tau(S) for lambda = {lambda}");
    }
}

fn arb_index(n: usize, max: u32) -> impl Strategy<Value = MultiIndex> {
    proptest::collection::vec(0..=max, 2 * n)
        .prop_map(move |e| MultiIndex::new(&e[..n], &e[n..]).unwrap())
}

/// Canonical seed (`α >= β`, `α ≠ β`) with a diagonal partner meeting the sharpness condition.
fn arb_type_i() -> impl Strategy<Value = (MultiIndex, MultiIndex)> {
    (1usize..=3)
        .prop_flat_map(|n| (arb_index(n, 2), proptest::collection::vec(0u32..=2, n)))
        .prop_filter_map("needs a sharp, small seed", |(g, t)| {
            let g = if g.alpha_vs_beta().is_lt() {
                g.dagger()
            } else {
                g
            };
            let partner = MultiIndex::new(&t, &t).unwrap();
            (!g.is_diagonal()
                && g.degree() <= 5
                && partner.degree() <= 6
                && type_i_bound_is_sharp(&g, &partner))
            .then_some((g, partner))
        })
}

fn arb_perp_seed() -> impl Strategy<Value = MultiIndex> {
    (2usize..=3)
        .prop_flat_map(|n| arb_index(n, 2))
        .prop_filter_map("needs a small Perp seed", |g| {
            let g = if g.alpha_vs_beta().is_lt() {
                g.dagger()
            } else {
                g
            };
            (g.degree() <= 4 && type_ii_bound_is_sharp(&g)).then_some(g)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn type_i_degree_law((seed, partner) in arb_type_i(), steps in 1usize..=3) {
        let chain = chain_i(&seed, &partner, steps, &leading_only()).unwrap();
        for el in &chain.elements {
            let d = i64::from(el.degree().finite().unwrap());
            prop_assert_eq!(d, predicted_degree_i(el.level, &seed, &partner));
            let sign = Sign::Plus.alternate(el.level);
            prop_assert!(el.plus.terms().all(|(e, _)| e.sigma() == sign));
            assert_shift_structure(&el.plus, &type_i_lambda(el.level, &seed, &partner), shift_count(ChainKind::I, el.level));
        }
        chain_complementarity_report(&chain).unwrap();
    }

    #[test]
    fn type_ii_degree_law(seed in arb_perp_seed(), steps in 1usize..=2) {
        let chain = chain_ii(&seed, steps, &leading_only()).unwrap();
        for el in &chain.elements {
            let d = i64::from(el.degree().finite().unwrap());
            prop_assert_eq!(d, predicted_degree_ii(el.level, &seed));
            assert_shift_structure(&el.plus, &type_ii_lambda(el.level, &seed), shift_count(ChainKind::II, el.level));
        }
        chain_complementarity_report(&chain).unwrap();
    }

    #[test]
    fn leading_only_agrees_with_full_chain((seed, partner) in arb_type_i()) {
        let full = chain_i(&seed, &partner, 2, &ChainOptions::default()).unwrap();
        let fast = chain_i(&seed, &partner, 2, &leading_only()).unwrap();
        for (a, b) in full.elements.iter().zip(&fast.elements) {
            prop_assert_eq!(a.plus.leading_part(), b.plus.leading_part());
            prop_assert_eq!(a.minus.leading_part(), b.minus.leading_part());
        }
    }
}

#[test]
fn full_type_ii_chain_is_complementary() {
    let seed = mi(&[2, 0], &[0, 1]);
    let chain = chain_ii(&seed, 2, &ChainOptions::default()).unwrap();
    assert_eq!(chain_complementarity_report(&chain).unwrap(), vec![2, -1]);
    assert_eq!(
        chain.elements[2].degree(),
        Degree::Finite(predicted_degree_ii(2, &seed) as u32)
    );
}

fn canonical_for(sign: Sign, g: MultiIndex) -> Option<MultiIndex> {
    let g = if g.alpha_vs_beta().is_lt() {
        g.dagger()
    } else {
        g
    };
    (sign == Sign::Plus || !g.is_diagonal()).then_some(g)
}

/// A multiset shift no larger than `min(α_k, β_k)` in each mode.
fn clamp_shift(g: &MultiIndex, raw: &[u32]) -> Multiset {
    Multiset::from_counts(
        (0..g.modes())
            .map(|k| raw[k].min(g.alpha()[k].min(g.beta()[k])))
            .collect(),
    )
}

fn arb_omnibus(case: OmnibusCase) -> impl Strategy<Value = OmnibusInput> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                arb_index(n, 3),
                arb_index(n, 3),
                proptest::collection::vec(0u32..=2, n),
                proptest::collection::vec(0u32..=2, n),
            )
        })
        .prop_filter_map("inadmissible", move |(g, l, r, s)| {
            let (s1, s2) = case.signs();
            let gamma = canonical_for(s1, g)?;
            let lambda = if case.same_index() {
                gamma.clone()
            } else {
                canonical_for(s2, l)?
            };
            if case.same_index() && s2 == Sign::Minus && gamma.is_diagonal() {
                return None;
            }
            let n = gamma.modes();
            let (r, s) = if case.uses_shifts() {
                (clamp_shift(&gamma, &r), clamp_shift(&lambda, &s))
            } else {
                (Multiset::empty(n), Multiset::empty(n))
            };
            // Shifting can land a minus element on the diagonal, where it vanishes.
            let input = OmnibusInput {
                case,
                gamma,
                lambda,
                r,
                s,
            };
            input.exact().ok().map(|_| input)
        })
}

fn check_omnibus(input: &OmnibusInput) -> Result<(), TestCaseError> {
    let exact = input.exact().unwrap();
    let closed = leading_commutator(input).unwrap();
    let t = input.threshold().unwrap();
    prop_assert!(
        upto_equal(&exact.to_weyl(), &closed.to_weyl(), t).unwrap(),
        "{:?}: exact {} vs closed {}",
        input,
        exact,
        closed
    );
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test] fn omnibus_a(input in arb_omnibus(OmnibusCase::A)) { check_omnibus(&input)?; }
    #[test] fn omnibus_b(input in arb_omnibus(OmnibusCase::B)) { check_omnibus(&input)?; }
    #[test] fn omnibus_c(input in arb_omnibus(OmnibusCase::C)) { check_omnibus(&input)?; }
    #[test] fn omnibus_d(input in arb_omnibus(OmnibusCase::D)) { check_omnibus(&input)?; }
    #[test] fn omnibus_e(input in arb_omnibus(OmnibusCase::E)) { check_omnibus(&input)?; }
    #[test] fn omnibus_f(input in arb_omnibus(OmnibusCase::F)) { check_omnibus(&input)?; }
    #[test] fn omnibus_g(input in arb_omnibus(OmnibusCase::G)) { check_omnibus(&input)?; }
    #[test] fn omnibus_h(input in arb_omnibus(OmnibusCase::H)) { check_omnibus(&input)?; }
    #[test] fn omnibus_i(input in arb_omnibus(OmnibusCase::I)) { check_omnibus(&input)?; }
}

#[test]
fn conjugate_pair_bracket_leading_term() {
    // [g₊^γ, g₋^γ] ≃ -2i Σ_k (α_k² - β_k²) a^{(α+β-ι_k, α+β-ι_k)} at degree 2|γ| - 2.
    for (a, b) in [
        (&[2u32, 1][..], &[0u32, 1][..]),
        (&[3, 0], &[1, 2]),
        (&[1, 1], &[0, 0]),
    ] {
        let g = mi(a, b);
        let x = SkewPolynomial::labelled(Sign::Plus, &g, &int(1));
        let y = SkewPolynomial::labelled(Sign::Minus, &g, &int(1));
        let got = skew_commutator(&x, &y).unwrap().to_weyl();
        let sum: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
        let mut expected = weyl_lie::WeylPolynomial::zero(2);
        for k in 0..2 {
            let c = i64::from(a[k] * a[k]) - i64::from(b[k] * b[k]);
            if c == 0 || sum[k] == 0 {
                continue;
            }
            let mut diag = sum.clone();
            diag[k] -= 1;
            let m = weyl_lie::WeylPolynomial::monomial(
                mi(&diag, &diag),
                weyl_lie::GaussianRational::imag(int(-2 * c)),
            );
            expected = &expected + &m;
        }
        let d = 2 * i64::from(g.degree()) - 2;
        assert_eq!(got.degree(), Degree::Finite(d as u32));
        assert!(upto_equal(&got, &expected, d).unwrap());
    }
}
