//! Property-based checks of the structural invariants: random partitions,
//! random ring elements, random evaluation points.

use proptest::prelude::*;

use bcjacobi::partition::{box_content, content_product, ContentKind, Partition};
use bcjacobi::rational::{int, rat, Rat};
use bcjacobi::symfunc::{monomial_sym, power_sum_monomial, Basis, DeformedPoint, SymFunc};
use bcjacobi::MultiPoly;

fn arb_partition(max_weight: u32) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1u32..=max_weight, 0..=max_weight as usize).prop_map(move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        let mut total = 0;
        let mut parts = Vec::new();
        for p in v {
            if total + p > max_weight {
                continue;
            }
            total += p;
            parts.push(p);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_nonzero_rat() -> impl Strategy<Value = Rat> {
    (1i64..=40, 1i64..=12, proptest::bool::ANY)
        .prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn arb_symfunc(basis: Basis, max_weight: u32) -> impl Strategy<Value = SymFunc> {
    proptest::collection::vec((arb_partition(max_weight), arb_rat()), 0..4).prop_map(
        move |terms| {
            let mut f = SymFunc::zero(basis);
            for (lam, c) in terms {
                f = f.add(&SymFunc::term(basis, lam, c)).unwrap();
            }
            f
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(lam in arb_partition(8)) {
        prop_assert_eq!(lam.conjugate().conjugate(), lam);
    }

    #[test]
    fn n_stat_of_conjugate_sums_binomials(lam in arb_partition(8)) {
        let direct = lam.conjugate().n_stat();
        let binom: u64 = lam.parts().iter().map(|&l| (l as u64) * (l as u64 - 1) / 2).sum();
        prop_assert_eq!(direct, binom);
    }

    #[test]
    fn content_products_factor_into_boxes(lam in arb_partition(6), x in arb_rat(), k in arb_nonzero_rat()) {
        for kind in [ContentKind::Plus, ContentKind::Minus, ContentKind::Zero] {
            let product = content_product(kind, &lam, &x, &k);
            let boxes: Rat = lam.boxes().map(|(i, j)| box_content(kind, &lam, i, j, &x, &k)).product();
            prop_assert_eq!(product, boxes);
        }
    }

    #[test]
    fn base_change_round_trips(f in arb_symfunc(Basis::Monomial, 6)) {
        prop_assert_eq!(f.to_power_sum().to_monomial(), f);
    }

    #[test]
    fn finite_evaluation_is_a_ring_homomorphism(
        f in arb_symfunc(Basis::PowerSum, 5),
        g in arb_symfunc(Basis::PowerSum, 5),
        u in proptest::collection::vec(arb_rat(), 0..4),
    ) {
        let product = f.mul(&g).unwrap();
        prop_assert_eq!(product.eval_finite(&u), f.eval_finite(&u) * g.eval_finite(&u));
    }

    #[test]
    fn deformed_evaluation_is_a_ring_homomorphism(
        f in arb_symfunc(Basis::PowerSum, 5),
        g in arb_symfunc(Basis::PowerSum, 5),
        u in proptest::collection::vec(arb_rat(), 0..3),
        v in proptest::collection::vec(arb_rat(), 0..3),
        k in arb_nonzero_rat(),
    ) {
        let pt = DeformedPoint { u, v };
        let product = f.mul(&g).unwrap();
        prop_assert_eq!(
            product.eval_deformed(&pt, &k).unwrap(),
            f.eval_deformed(&pt, &k).unwrap() * g.eval_deformed(&pt, &k).unwrap()
        );
    }

    #[test]
    fn finite_evaluation_is_the_deformed_one_without_v(
        f in arb_symfunc(Basis::PowerSum, 5),
        u in proptest::collection::vec(arb_rat(), 0..4),
        k in arb_nonzero_rat(),
    ) {
        let pt = DeformedPoint { u: u.clone(), v: vec![] };
        prop_assert_eq!(f.eval_finite(&u), f.eval_deformed(&pt, &k).unwrap());
    }

    #[test]
    fn constant_term_is_the_empty_evaluation(f in arb_symfunc(Basis::Monomial, 5)) {
        prop_assert_eq!(f.constant_term(), f.eval_finite(&[]));
    }

    #[test]
    fn omega_composes_to_the_identity(f in arb_symfunc(Basis::PowerSum, 5), k in arb_nonzero_rat()) {
        let twice = f.omega(&k).unwrap().omega(&k.clone().recip()).unwrap();
        prop_assert_eq!(twice, f);
    }

    #[test]
    fn omega_is_multiplicative(
        f in arb_symfunc(Basis::PowerSum, 4),
        g in arb_symfunc(Basis::PowerSum, 4),
        k in arb_nonzero_rat(),
    ) {
        let lhs = f.mul(&g).unwrap().omega(&k).unwrap();
        let rhs = f.omega(&k).unwrap().mul(&g.omega(&k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symfunc_json_round_trips(f in arb_symfunc(Basis::Monomial, 6)) {
        prop_assert_eq!(SymFunc::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn multipoly_json_round_trips(
        f in arb_symfunc(Basis::PowerSum, 4),
        n in 1usize..4,
    ) {
        let poly = f.expand_finite(n);
        prop_assert_eq!(MultiPoly::from_json(&poly.to_json()).unwrap(), poly);
    }

    #[test]
    fn expansion_commutes_with_evaluation(
        f in arb_symfunc(Basis::PowerSum, 5),
        u in proptest::collection::vec(arb_rat(), 2..4),
    ) {
        let poly = f.expand_finite(u.len());
        prop_assert_eq!(poly.eval(&u), f.eval_finite(&u));
    }
}

#[test]
fn theta_is_triangular_by_row_removal() {
    // theta(m_lambda) expands over monomials whose partitions arise from
    // lambda by deleting rows
    let ctx = bcjacobi::ParamContext::draw_generic(42, 6).unwrap();
    let is_submultiset = |mu: &Partition, lam: &Partition| -> bool {
        let mut pool: Vec<u32> = lam.parts().to_vec();
        mu.parts().iter().all(|p| {
            if let Some(pos) = pool.iter().position(|x| x == p) {
                pool.remove(pos);
                true
            } else {
                false
            }
        })
    };
    for lam in Partition::all_up_to_weight(5) {
        let image = monomial_sym(&lam).theta(&ctx).unwrap();
        for (mu, _) in image.terms() {
            assert!(
                is_submultiset(mu, &lam),
                "theta(m_({lam})) contains m_({mu})"
            );
        }
        assert_eq!(image.coeff(&lam), int(1), "unit diagonal at ({lam})");
    }
}

#[test]
fn theta_is_a_ring_automorphism_on_samples() {
    let ctx = bcjacobi::ParamContext::draw_generic(7, 6).unwrap();
    let f = power_sum_monomial(&Partition::parse("2,1").unwrap());
    let g = power_sum_monomial(&Partition::parse("1,1").unwrap());
    let lhs = f.mul(&g).unwrap().theta(&ctx).unwrap();
    let rhs = f.theta(&ctx).unwrap().mul(&g.theta(&ctx).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}
