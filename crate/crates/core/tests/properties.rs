use atlas_core::arith::{
    is_square, poly_gcd, rat, ratio, rational_roots, squarefree_part, Integer, Rational, UniPoly,
};
use atlas_core::curves::{
    invariants, is_isomorphic, minimal_model, quadratic_twist, twist_parameter, WeierstrassModel,
};
use atlas_core::families::{member_count, special_curve, SpecialKind};
use atlas_core::fricke::GENUS_ZERO_LEVELS;
use atlas_core::isogeny::{division_polynomial, kernel_isogenies, verify_normalized};
use atlas_core::semistable::{alpha_gamma, gcd_bound_check};
use atlas_core::Atlas;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn atlas() -> &'static Atlas {
    Atlas::embedded()
}

fn model() -> impl Strategy<Value = WeierstrassModel> {
    prop::array::uniform5((-40i64..=40, 1i64..=4))
        .prop_filter_map("singular", |cs| WeierstrassModel::new(cs.map(|(p, q)| ratio(p, q))).ok())
}

fn short_model() -> impl Strategy<Value = WeierstrassModel> {
    (-200i64..=200, -200i64..=200).prop_filter_map("singular", |(a, b)| WeierstrassModel::short_i(a, b).ok())
}

fn nonzero(lo: i64, hi: i64) -> impl Strategy<Value = i64> {
    (lo..=hi).prop_filter("zero", |d| *d != 0)
}

fn squarefree_int() -> impl Strategy<Value = i64> {
    nonzero(-40, 40).prop_filter("not squarefree", |d| squarefree_part(&rat(*d)).unwrap() == Integer::from(*d))
}

fn level_member() -> impl Strategy<Value = (u32, usize)> {
    prop::sample::select(GENUS_ZERO_LEVELS.to_vec())
        .prop_flat_map(|n| (Just(n), 1..=member_count(n).unwrap()))
}

fn param() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=5).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn roots_are_exact_and_complete(rs in prop::collection::vec((-9i64..=9, 1i64..=4), 1..5), c in 1i64..20) {
        let mut p = UniPoly::from_ints([c, 0, 1]);
        for &(u, v) in &rs {
            p = &p * &UniPoly::from_ints([-u, v]);
        }
        let roots = rational_roots(&p).unwrap();
        for r in &roots {
            prop_assert!(p.eval(r).is_zero());
        }
        for u in -12i64..=12 {
            for v in 1i64..=6 {
                let s = ratio(u, v);
                if !roots.contains(&s) {
                    prop_assert!(!p.eval(&s).is_zero(), "missed root {}", s);
                }
            }
        }
    }

    #[test]
    fn squarefree_ignores_squares(p in nonzero(-5000, 5000), q in 1i64..500, m in 1i64..60) {
        let x = ratio(p, q);
        let scaled = &x * rat(m * m);
        prop_assert_eq!(squarefree_part(&scaled).unwrap(), squarefree_part(&x).unwrap());
    }

    #[test]
    fn gcd_divides_with_coprime_cofactors(
        f in prop::collection::vec(-6i64..=6, 1..5),
        g in prop::collection::vec(-6i64..=6, 1..5),
        h in prop::collection::vec(-6i64..=6, 1..4),
    ) {
        let (f, g, h) = (UniPoly::from_ints(f), UniPoly::from_ints(g), UniPoly::from_ints(h));
        prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
        let (a, b) = (&f * &h, &g * &h);
        let d = poly_gcd(&a, &b).unwrap();
        let (ca, cb) = (a.exact_div(&d).expect("divides a"), b.exact_div(&d).expect("divides b"));
        if !ca.is_zero() && !cb.is_zero() {
            prop_assert_eq!(poly_gcd(&ca, &cb).unwrap(), UniPoly::one());
        }
    }

    #[test]
    fn invariants_relation(e in model()) {
        let inv = invariants(&e);
        prop_assert_eq!(&inv.c4 * &inv.c4 * &inv.c4 - &inv.c6 * &inv.c6, rat(1728) * &inv.disc);
    }

    #[test]
    fn twists_keep_j(e in model(), d in nonzero(-50, 50)) {
        prop_assert_eq!(quadratic_twist(&e, &rat(d)).unwrap().j(), e.j());
    }

    #[test]
    fn twists_compose(e in short_model(), d1 in nonzero(-20, 20), d2 in nonzero(-20, 20)) {
        let twice = quadratic_twist(&quadratic_twist(&e, &rat(d1)).unwrap(), &rat(d2)).unwrap();
        let once = quadratic_twist(&e, &rat(d1 * d2)).unwrap();
        prop_assert!(is_isomorphic(&twice, &once).is_some());
    }

    #[test]
    fn twist_parameter_round_trip(e in short_model(), d in squarefree_int()) {
        let (a, b) = e.ab();
        prop_assume!(!a.is_zero() && !b.is_zero());
        let u = twist_parameter(&e, &quadratic_twist(&e, &rat(d)).unwrap()).unwrap();
        prop_assert!(is_square(&(u / rat(d))));
    }

    #[test]
    fn minimal_models_are_isomorphic(e in model()) {
        let m = minimal_model(&e).unwrap();
        prop_assert!(is_isomorphic(&m, &e).is_some());
        let dm = invariants(&m).disc;
        prop_assert!(dm.is_integer());
        // the minimal discriminant divides that of any integral model of E
        let di = invariants(&atlas_core::curves::integral_short(&e)).disc;
        prop_assert!((di.to_integer() % dm.to_integer()).is_zero());
    }

    #[test]
    fn fricke_pairs_satisfy_phi(n in prop::sample::select(vec![2u32, 3, 5, 7, 13]), t in param()) {
        let (f1, f2) = (atlas().fricke(n, 1).unwrap(), atlas().fricke(n, 2).unwrap());
        prop_assume!(!f1.is_pole(&t) && !f2.is_pole(&t));
        let (j1, j2) = (f1.eval(&t).unwrap(), f2.eval(&t).unwrap());
        prop_assert!(atlas().phi(n).unwrap().eval(&j1, &j2).is_zero());
    }

    #[test]
    fn fricke_solve_finds_t(n in prop::sample::select(GENUS_ZERO_LEVELS.to_vec()), t in param()) {
        let f = atlas().fricke(n, 1).unwrap();
        prop_assume!(!f.is_pole(&t));
        prop_assert!(atlas().fricke_solve(n, &f.eval(&t).unwrap()).unwrap().contains(&t));
    }

    #[test]
    fn two_isogeny_reaches_second_fricke_value(t in param(), d in nonzero(-20, 20)) {
        let Ok(e) = atlas().family_curve(2, 1, &t, &rat(d)) else { return Ok(()) };
        let maps = kernel_isogenies(&e, 2).unwrap();
        let target = atlas().fricke_eval(2, 2, &t).unwrap();
        prop_assert!(maps.iter().any(|m| m.codomain.j() == target));
        for m in &maps {
            prop_assert!(verify_normalized(m));
            prop_assert_eq!((m.n.deg(), m.d.deg()), (2, 1));
        }
    }

    #[test]
    fn three_isogenies_are_normalized(t in param(), d in nonzero(-20, 20)) {
        let Ok(e) = atlas().family_curve(3, 1, &t, &rat(d)) else { return Ok(()) };
        let maps = kernel_isogenies(&e, 3).unwrap();
        prop_assert!(!maps.is_empty());
        for m in &maps {
            prop_assert!(verify_normalized(m));
            prop_assert_eq!((m.n.deg(), m.d.deg()), (3, 2));
        }
    }

    #[test]
    fn psi3_vanishes_on_flex(d in nonzero(-50, 50)) {
        let e = special_curve(SpecialKind::J0N3, 1, &rat(d)).unwrap();
        prop_assert!(division_polynomial(&e, 3).unwrap().eval(&Rational::zero()).is_zero());
    }

    #[test]
    fn lemma44_instances(n in prop::sample::select(vec![4u32, 6, 9]), t in param()) {
        let (f1, f2) = (atlas().fricke(n, 1).unwrap(), atlas().fricke(n, 2).unwrap());
        prop_assume!(!f1.is_pole(&t) && !f2.is_pole(&t));
        let special = |j: Rational| j.is_zero() || j == rat(1728);
        prop_assert!(!(special(f1.eval(&t).unwrap()) && special(f2.eval(&t).unwrap())));
    }

    #[test]
    fn gcd_bound(n in prop::sample::select(vec![4u32, 6, 9]), a in -100_000i64..100_000, b in -100_000i64..100_000) {
        let (a, b) = (Integer::from(a), Integer::from(b));
        prop_assume!(a.gcd(&b).is_one() && !alpha_gamma(n, &a, &b).unwrap().1.is_zero());
        prop_assert!(gcd_bound_check(n, &a, &b).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn class_contains_the_family((n, i) in level_member(), t in (-8i64..=8, 1i64..=2), d in squarefree_int()) {
        let t = ratio(t.0, t.1);
        let d = rat(d);
        let Ok(e) = atlas().family_curve(n, i, &t, &d) else { return Ok(()) };
        let class = atlas().isogeny_class(&e).unwrap();
        prop_assert_eq!(class.n % n, 0);
        for k in 1..=member_count(n).unwrap() {
            let m = atlas().family_curve(n, k, &t, &d).unwrap();
            prop_assert!(class.members.iter().any(|x| is_isomorphic(&x.1, &m).is_some()), "C_{{{},{}}} missing", n, k);
        }
        if class.n == n {
            let found = class.d.clone().unwrap();
            prop_assert!(is_square(&(Rational::from_integer(found) / &d)) || class.t != Some(t));
        }
    }

    #[test]
    fn twist_preserves_degree((n, i) in level_member(), t in (-8i64..=8, 1i64..=2), d in squarefree_int()) {
        let t = ratio(t.0, t.1);
        let Ok(e) = atlas().family_curve(n, i, &t, &Rational::one()) else { return Ok(()) };
        let twisted = quadratic_twist(&e, &rat(d)).unwrap();
        prop_assert_eq!(atlas().isogeny_class(&twisted).unwrap().n, atlas().isogeny_class(&e).unwrap().n);
    }

    #[test]
    fn classification_is_deterministic(e in short_model()) {
        let a = atlas().isogeny_class(&e).unwrap().to_json().to_string();
        let b = atlas().isogeny_class(&e).unwrap().to_json().to_string();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn emitted_members_reparse(e in short_model()) {
        let class = atlas().isogeny_class(&e).unwrap();
        for (_, m) in &class.members {
            prop_assert_eq!(&atlas_core::curves::parse_curve(&m.to_string()).unwrap(), m);
        }
    }
}
