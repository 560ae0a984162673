use hadarank_core::exactalg::{hadamard_inverse, hadamard_point, Ideal, Polynomial, ProjPoint, Rat};
use hadarank_core::groebner::{reduced_basis, GbOptions};
use hadarank_core::numdim::{power_dimension, Parametrization};
use hadarank_core::rankengine::{border_rank, hadamard_rank, reduce_and_rank, replay_certificate, RankOptions, Verdict};
use hadarank_core::zoo::{conic_c, conic_c_sharp, random_curve};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gb() -> GbOptions {
    GbOptions { budget: 1_000_000, cache_dir: None }
}

fn ropts() -> RankOptions {
    RankOptions { max_m: 4, gb: gb(), ..RankOptions::default() }
}

fn on(param: &Parametrization, s: i64, t: i64) -> Option<ProjPoint> {
    let v = param.eval(&[Rat::from_integer(s.into()), Rat::from_integer(t.into())]);
    ProjPoint::from_rats(v).ok()
}

fn upper(v: &Verdict) -> usize {
    v.upper().expect("finite upper bound")
}

fn border_value(v: &Verdict) -> Option<usize> {
    match v {
        Verdict::BorderRank(b) => Some(*b),
        _ => None,
    }
}

fn param_pair() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, -6i64..=6).prop_filter("nonzero", |(s, t)| *s != 0 || *t != 0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn products_on_c_replay((s1, t1) in param_pair(), (s2, t2) in param_pair()) {
        let c = conic_c();
        let (ideal, param) = (c.ideal.unwrap(), c.param.unwrap());
        let (Some(a), Some(b)) = (on(&param, s1, t1), on(&param, s2, t2)) else { return Ok(()) };
        let Ok(p) = hadamard_point(&a, &b) else { return Ok(()) };
        let r = hadamard_rank(&p, &ideal, &ropts()).unwrap();
        prop_assert!(upper(&r.verdict) <= 2, "{:?}", r.verdict);
        prop_assert!(replay_certificate(&r, &ideal, &gb()).unwrap().ok);
        let b = border_rank(&p, &ideal, &ropts()).unwrap();
        prop_assert!(replay_certificate(&b, &ideal, &gb()).unwrap().ok);
        if let (Verdict::RankEquals(rv), Some(bv)) = (&r.verdict, border_value(&b.verdict)) {
            prop_assert!(bv <= *rv);
        }
    }

    #[test]
    fn products_on_c_sharp((s1, t1) in param_pair(), (s2, t2) in param_pair()) {
        let c = conic_c_sharp();
        let (ideal, param) = (c.ideal.unwrap(), c.param.unwrap());
        let (Some(a), Some(b)) = (on(&param, s1, t1), on(&param, s2, t2)) else { return Ok(()) };
        let Ok(p) = hadamard_point(&a, &b) else { return Ok(()) };
        let r = hadamard_rank(&p, &ideal, &ropts()).unwrap();
        prop_assert!(upper(&r.verdict) <= 2, "{:?}", r.verdict);
        let b = border_rank(&p, &ideal, &ropts()).unwrap();
        let bv = border_value(&b.verdict).unwrap();
        prop_assert!(bv <= upper(&r.verdict));
    }

    #[test]
    fn zero_coordinate_bound(a in 1i64..=20, b in 1i64..=20, neg in any::<bool>()) {
        let ideal = conic_c().ideal.unwrap();
        let b = if neg { -b } else { b };
        let p = ProjPoint::from_ints(&[0, a, b]).unwrap();
        let (_, cert) = reduce_and_rank(&p, &ideal, &ropts()).unwrap();
        prop_assert!(upper(&cert.verdict) <= 2 * 2 + 1);
        prop_assert!(replay_certificate(&cert, &ideal, &gb()).unwrap().ok);
    }

    #[test]
    fn basis_ignores_generator_order(
        coeffs in prop::collection::vec(prop::collection::vec(-5i64..=5, 6), 2..=3),
        rot in 0usize..3,
    ) {
        let mono = ["x0^2", "x1^2", "x2^2", "x0*x1", "x0*x2", "x1*x2"];
        let gens: Vec<String> = coeffs
            .iter()
            .map(|cs| cs.iter().zip(mono).map(|(c, m)| format!("({c})*{m}")).collect::<Vec<_>>().join(" + "))
            .collect();
        let mut rotated = gens.clone();
        rotated.rotate_left(rot % gens.len());
        let as_ideal = |g: &[String]| Ideal::parse(3, &g.iter().map(String::as_str).collect::<Vec<_>>()).unwrap();
        let a = reduced_basis(&as_ideal(&gens), &gb()).unwrap();
        let b = reduced_basis(&as_ideal(&rotated), &gb()).unwrap();
        let key = |basis: &[Polynomial]| basis.iter().map(|f| f.to_string()).collect::<Vec<_>>();
        prop_assert_eq!(key(a.basis()), key(b.basis()));
    }

    #[test]
    fn hadamard_inverse_cancels(v in prop::collection::vec(prop_oneof![-30i64..=-1, 1i64..=30], 2..6)) {
        let p = ProjPoint::from_ints(&v).unwrap();
        let one = hadamard_point(&p, &hadamard_inverse(&p).unwrap()).unwrap();
        prop_assert!(one.proj_eq(&ProjPoint::ones(v.len())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 4, ..ProptestConfig::default() })]

    #[test]
    fn curve_dimensions_grow(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (entry, _) = random_curve(3, 3, &mut rng, 50).unwrap();
        let p = entry.param.unwrap();
        let mut prev = 0;
        for m in 1..=4 {
            let d = power_dimension(&p, m, seed, 3, 100).unwrap().dimension;
            prop_assert!(d >= prev && d <= 3 && d <= m);
            prev = d;
        }
        prop_assert_eq!(prev, 3);
    }
}
