use proptest::prelude::*;
use weyl_lie::coeff::int;
use weyl_lie::skew::{free_action, is_complementary, skew_commutator};
use weyl_lie::subspace::{check_perp_conditions, classify_index, project, support};
use weyl_lie::{MultiIndex, Sign, SkewPolynomial, SubspaceLabel};

fn arb_index(n: usize, max: u32) -> impl Strategy<Value = MultiIndex> {
    proptest::collection::vec(0..=max, 2 * n)
        .prop_map(move |e| MultiIndex::new(&e[..n], &e[n..]).unwrap())
}

fn arb_sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// Every multi-index with `n` modes and total degree `d`.
fn indices(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(slots: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(slots - 1, left - v, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(2 * n, d, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|e| MultiIndex::new(&e[..n], &e[n..]).unwrap())
        .collect()
}

#[test]
fn perp_equivalences_exhaustive() {
    let mut checked = 0;
    for n in 1..=3 {
        for d in 3..=6 {
            for g in indices(n, d) {
                let c = check_perp_conditions(&g).unwrap();
                assert!(c.equivalences_hold(), "{g}: {c:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn labels_cover_low_degrees() {
    for n in 1..=3 {
        for g in indices(n, 0)
            .into_iter()
            .chain(indices(n, 2).into_iter().filter(|g| g.is_diagonal()))
        {
            assert_eq!(classify_index(&g), SubspaceLabel::Zero);
        }
        for g in indices(n, 1) {
            assert_eq!(classify_index(&g), SubspaceLabel::One);
        }
        for g in indices(n, 4).into_iter().filter(|g| g.is_diagonal()) {
            assert_eq!(classify_index(&g), SubspaceLabel::Eq);
        }
    }
}

/// Random complementary pair: indices sharing a nonzero charge `α - β` with matching coefficients.
fn arb_complementary() -> impl Strategy<Value = (SkewPolynomial, SkewPolynomial)> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(-2i32..=2, n),
                proptest::collection::vec(
                    (proptest::collection::vec(0u32..=2, n), -3i64..=3),
                    1..=4,
                ),
            )
        })
        .prop_filter_map("charge must be nonzero", |(q, parts)| {
            let first = q.iter().find(|&&v| v != 0)?;
            let q: Vec<i32> = if *first < 0 {
                q.iter().map(|v| -v).collect()
            } else {
                q
            };
            let n = q.len();
            let mut xp = SkewPolynomial::zero(n);
            let mut xm = SkewPolynomial::zero(n);
            for (base, c) in parts {
                let alpha: Vec<u32> = (0..n).map(|k| base[k] + q[k].max(0) as u32).collect();
                let beta: Vec<u32> = (0..n).map(|k| base[k] + (-q[k]).max(0) as u32).collect();
                let g = MultiIndex::new(&alpha, &beta).unwrap();
                xp.add_labelled(Sign::Plus, &g, &int(c));
                xm.add_labelled(Sign::Minus, &g, &int(c));
            }
            (!xp.is_zero()).then_some((xp, xm))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_action_preserves_subspaces(s in arb_sign(), g in (1usize..=3).prop_flat_map(|n| arb_index(n, 3)), k in 0usize..3) {
        let x = SkewPolynomial::labelled(s, &g, &int(1));
        prop_assume!(!x.is_zero());
        let y = free_action(k % g.modes(), &x).unwrap();
        let label = classify_index(&g);
        prop_assert!(support(&y).iter().all(|&l| l == label));
        prop_assert_eq!(project(&y, label), y);
    }

    #[test]
    fn complementary_bracket_is_diagonal((xp, xm) in arb_complementary()) {
        let report = is_complementary(&xp, &xm).unwrap();
        prop_assert!(report.complementary);
        let c = skew_commutator(&xp, &xm).unwrap();
        for (e, _) in c.terms() {
            prop_assert_eq!(e.sigma(), Sign::Plus);
            prop_assert!(e.gamma().is_diagonal());
        }
        for k in 0..xp.modes() {
            prop_assert!(free_action(k, &c).unwrap().is_zero());
        }
    }
}
