//! Published constants: the sporadic curves, the worked example and the special sets.

use atlas_core::arith::{rat, Rational, UniPoly};
use atlas_core::classify::Branch;
use atlas_core::curves::WeierstrassModel;
use atlas_core::fricke::{exceptional_params, singular_family_j, ExceptionalKind};
use atlas_core::Atlas;

/// (n, [(A_{n,i}, B_{n,i})]) as printed.
const SPORADIC: [(u32, &[(&str, &str)]); 11] = [
    (11, &[("-1149984", "-487018224"), ("-9504", "365904"), ("-395307", "373960422"), ("-38907", "-2953962")]),
    (14, &[("-2361555", "1396762542"), ("-138915", "24504606"), ("-48195", "-4072194"), ("-2835", "-71442")]),
    (15, &[("-162675", "-25254450"), ("-675", "-79650"), ("712125", "-104861250"), ("-97875", "14208750")]),
    (17, &[("-247394115", "-1679010134850"), ("-3940515", "3010787550")]),
    (19, &[("-219488", "-39617584"), ("-608", "5776")]),
    (21, &[("-1396035", "634881726"), ("-1104435", "907504398"), ("3645", "-13122"), ("-54675", "-5156946")]),
    (27, &[("-4320", "-109296"), ("0", "-432"), ("0", "16"), ("-480", "4048")]),
    (37, &[("-269675595", "-1704553285050"), ("-10395", "444150")]),
    (43, &[("-25442240", "-49394836848"), ("-13760", "621264")]),
    (67, &[("-529342880", "-4687634371504"), ("-117920", "15585808")]),
    (163, &[("-924354639680", "-342062961763303088"), ("-34790720", "78984748304")]),
];

fn atlas() -> &'static Atlas {
    Atlas::embedded()
}

fn short(a: &str, b: &str) -> WeierstrassModel {
    WeierstrassModel::short(a.parse().unwrap(), b.parse().unwrap()).unwrap()
}

#[test]
fn sporadic_constants() {
    for (n, row) in SPORADIC {
        for (k, (a, b)) in row.iter().enumerate() {
            let e = atlas().sporadic_curve(n, k + 1, &rat(1)).unwrap();
            assert_eq!(e, short(a, b), "C_{{{n},{}}}", k + 1);
        }
    }
}

#[test]
fn sporadic_twists_scale_by_d() {
    let e = atlas().sporadic_curve(19, 2, &rat(-3)).unwrap();
    assert_eq!(e, short("-5472", "-155952"));
}

#[test]
fn sporadic_classes() {
    for (n, row) in SPORADIC {
        for k in 0..row.len() {
            let e = short(row[k].0, row[k].1);
            let c = atlas().isogeny_class(&e).unwrap();
            assert_eq!(c.branch, Branch::Sporadic, "C_{{{n},{}}}", k + 1);
            let expect: Vec<usize> = if n == 11 { if k < 2 { vec![1, 2] } else { vec![3, 4] } } else { (1..=row.len()).collect() };
            let got: Vec<usize> = c.members.iter().map(|m| m.0).collect();
            assert_eq!(got, expect, "n={n}");
            for (i, m) in &c.members {
                assert_eq!(*m, short(row[i - 1].0, row[i - 1].1));
            }
            assert_eq!(c.members[c.input_position].0, k + 1);
        }
    }
}

#[test]
fn worked_example_models() {
    let c = atlas().isogeny_class(&short("-15", "-22")).unwrap();
    assert_eq!((c.n, c.t.clone()), (6, Some(rat(-6))));
    let want = [("-19440", "-1026432"), ("0", "-2985984"), ("-174960", "27713664"), ("0", "80621568")];
    for ((_, m), (a, b)) in c.members.iter().zip(want) {
        assert_eq!(*m, short(a, b));
    }
    let labels: Vec<u32> = c.edges.iter().map(|e| e.2).collect();
    assert_eq!(labels, vec![2, 3, 3, 2]);
}

#[test]
fn singular_sets_as_printed() {
    let p = |cs: &[i64]| UniPoly::from_ints(cs.iter().copied());
    let printed: [(u32, UniPoly); 14] = [
        (2, p(&[64, 1])),
        (3, p(&[27, 1])),
        (4, UniPoly::one()),
        (5, p(&[125, 22, 1])),
        (6, UniPoly::one()),
        (7, p(&[49, 13, 1])),
        (8, UniPoly::one()),
        (9, UniPoly::one()),
        (10, p(&[4, 0, 1])),
        (12, UniPoly::one()),
        (13, &p(&[13, 6, 1]) * &p(&[13, 5, 1])),
        (16, UniPoly::one()),
        (18, UniPoly::one()),
        (25, p(&[4, 0, 1])),
    ];
    for (n, poly) in printed {
        assert_eq!(exceptional_params(n, ExceptionalKind::SingularFamily).unwrap().poly, poly, "R_{n}");
    }
    let coincide = |n| exceptional_params(n, ExceptionalKind::Coincidence0_1728).unwrap().rational_members();
    assert_eq!(coincide(2), vec![rat(-64)]);
    assert_eq!(coincide(3), vec![rat(-27)]);
    for n in [4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25] {
        assert_eq!(coincide(n), Vec::<Rational>::new());
    }
    for (n, v) in [(3, 0), (7, 0), (2, 1728), (5, 1728), (10, 1728), (25, 1728)] {
        assert_eq!(singular_family_j(n), Some(v));
    }
}

#[test]
fn r5_value_is_1728() {
    // (19t + 250)^3 - t^5 vanishes on t^2 + 22t + 125
    let f = atlas().fricke(5, 1).unwrap();
    let r = UniPoly::from_ints([125, 22, 1]);
    let rem = (&f.num - &f.den.scale(&rat(1728))).div_rem(&r).1;
    assert!(rem.is_zero());
}

#[test]
fn special_models() {
    use atlas_core::families::{special_curve, SpecialKind};
    assert_eq!(special_curve(SpecialKind::J1728N2, 1, &rat(1)).unwrap(), short("-1", "0"));
    assert_eq!(special_curve(SpecialKind::J0N3, 1, &rat(1)).unwrap(), short("0", "16"));
    assert_eq!(special_curve(SpecialKind::J0N3, 2, &rat(1)).unwrap(), short("0", "-432"));
}
