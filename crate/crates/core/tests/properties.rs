use halphen::cubic::{rational_points, CubicGroup, HesseCubic};
use halphen::exactfield::{find_eps, ExtCtx, Fp, Fq, Poly3, PrimeCtx, ProjPoint, QEps, RatFunc, RatFuncCtx, Specializer};
use halphen::piclattice::{chilean_lattice, mw_group, PicClass};
use halphen::torsion::x7;
use halphen::Field;
use proptest::prelude::*;

fn axioms<F: Field>(a: F, b: F, c: F) {
    let ctx = a.ctx();
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
    assert_eq!(a.clone() - a.clone(), F::zero(&ctx));
    if !a.is_zero() {
        assert_eq!(a.clone() * a.inv().unwrap(), F::one(&ctx));
    } else {
        assert!(a.inv().is_err());
    }
}

fn qeps(v: (i64, i64, i64, i64)) -> QEps {
    let d = QEps::from_ints(v.2, v.3);
    let d = if d.is_zero() { QEps::from_ints(1, 0) } else { d };
    QEps::from_ints(v.0, v.1) * d.inv().unwrap()
}

fn small() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-9i64..10, -9i64..10, -9i64..10, -9i64..10)
}

fn gf(p: u64) -> (PrimeCtx, Fp) {
    let c = PrimeCtx::new(p).unwrap();
    let e = find_eps::<Fp>(&c).unwrap();
    (c, e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_axioms(a in 0u64..293, b in 0u64..293, c in 0u64..293) {
        let ctx = PrimeCtx::new(293).unwrap();
        axioms(Fp::new(a, &ctx), Fp::new(b, &ctx), Fp::new(c, &ctx));
    }

    #[test]
    fn extension_field_axioms(a in proptest::collection::vec(0u64..7, 3), b in proptest::collection::vec(0u64..7, 3), c in proptest::collection::vec(0u64..7, 3)) {
        let q = ExtCtx::first(PrimeCtx::new(7).unwrap(), 3);
        axioms(Fq::new(&a, &q), Fq::new(&b, &q), Fq::new(&c, &q));
    }

    #[test]
    fn eisenstein_axioms(a in small(), b in small(), c in small()) {
        axioms(qeps(a), qeps(b), qeps(c));
        prop_assert_eq!(QEps::eps().pow(3), QEps::from_ints(1, 0));
    }

    #[test]
    fn specialization_is_a_homomorphism(a in small(), b in small(), av in 3u64..40) {
        let rc = RatFuncCtx::new((), "a");
        let x = RatFunc::var(&rc);
        let f = RatFunc::constant(qeps(a), &rc) * x.clone() + RatFunc::constant(qeps(b), &rc);
        let g = x.clone() * x.clone() - RatFunc::constant(QEps::from_ints(2, 0), &rc);
        let (ctx, e) = gf(61);
        let s = Specializer::new(e, Fp::new(av, &ctx)).unwrap();
        let (Ok(fs), Ok(gs)) = (s.apply(&f), s.apply(&g)) else { return Ok(()) };
        prop_assert_eq!(s.apply(&(f.clone() * g.clone())).unwrap(), fs * gs);
        prop_assert_eq!(s.apply(&(f.clone() + g.clone())).unwrap(), fs + gs);
        if !g.is_zero() && !gs.is_zero() {
            prop_assert_eq!(s.apply(&f.checked_div(&g).unwrap()).unwrap(), fs * gs.inv().unwrap());
        }
    }

    #[test]
    fn points_are_scale_invariant(c in proptest::collection::vec(0u64..31, 3), k in 1u64..31) {
        let ctx = PrimeCtx::new(31).unwrap();
        let v: [Fp; 3] = std::array::from_fn(|i| Fp::new(c[i], &ctx));
        prop_assume!(v.iter().any(|x| !x.is_zero()));
        let s = Fp::new(k, &ctx);
        let p = ProjPoint::new(v).unwrap();
        let q = ProjPoint::new(v.map(|x| x * s)).unwrap();
        prop_assert_eq!(&p, &q);
        let f = Poly3::<Fp>::parse("x^3 + 2*y^2*z - 5*x*y*z + z^3", &ctx, &[]).unwrap();
        prop_assert_eq!(f.vanishes_at(&p), f.eval(q.coords()).is_zero());
    }

    #[test]
    fn symbolic_eval_commutes_with_specialization(av in 3u64..40) {
        let sym = halphen::chilean::ChileanData::symbolic().unwrap();
        let (ctx, e) = gf(61);
        let s = Specializer::new(e, Fp::new(av, &ctx)).unwrap();
        let Ok(fin) = halphen::chilean::ChileanData::new(e, Fp::new(av, &ctx)) else { return Ok(()) };
        for (c, cf) in sym.conics().iter().zip(fin.conics()) {
            let mapped = c.map_coeffs(&ctx, |x| s.apply(x)).unwrap();
            prop_assert!(mapped.is_proportional(cf));
        }
    }

    #[test]
    fn pic_form_is_bilinear(u in proptest::array::uniform10(-5i64..6), v in proptest::array::uniform10(-5i64..6), w in proptest::array::uniform10(-5i64..6)) {
        let (u, v, w) = (PicClass(u), PicClass(v), PicClass(w));
        prop_assert_eq!(u.inner(&v), v.inner(&u));
        prop_assert_eq!((u + v).inner(&w), u.inner(&w) + v.inner(&w));
        prop_assert_eq!((3 * u).inner(&v), 3 * u.inner(&v));
    }

    #[test]
    fn translations_are_isometries(u in proptest::array::uniform10(-5i64..6), v in proptest::array::uniform10(-5i64..6)) {
        let l = chilean_lattice().unwrap();
        for g in mw_group(&l).unwrap() {
            let (a, b) = (g.apply(&PicClass(u)), g.apply(&PicClass(v)));
            prop_assert_eq!(a.inner(&b), PicClass(u).inner(&PicClass(v)));
        }
    }
}

#[test]
fn group_law_is_associative() {
    let mut n = 0;
    for (p, tv) in [(31u64, 1u64), (37, 9), (43, 2)] {
        let (ctx, _) = gf(p);
        let curve = HesseCubic::new(Fp::new(tv, &ctx));
        let g = CubicGroup::new(&curve, x7(&ctx).unwrap()).unwrap();
        let pts = rational_points(curve.poly()).unwrap();
        let k = pts.len().min(11);
        for a in &pts[..k] {
            for b in &pts[..k] {
                for c in &pts[..k] {
                    let l = g.add(&g.add(a, b).unwrap(), c).unwrap();
                    let r = g.add(a, &g.add(b, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                    n += 1;
                }
            }
            assert_eq!(g.add(a, &g.neg(a).unwrap()).unwrap(), *g.zero());
            assert_eq!(g.scalar_mul(pts.len() as i64, a).unwrap(), *g.zero());
        }
    }
    assert!(n >= 1000);
}

#[test]
fn flex_zero_makes_collinear_triples_sum_to_zero() {
    let (ctx, e) = gf(31);
    let curve = HesseCubic::new(Fp::new(4, &ctx));
    let x = halphen::cubic::hesse_flexes(&e).unwrap();
    let g = CubicGroup::new(&curve, x[0].clone()).unwrap();
    let pts = rational_points(curve.poly()).unwrap();
    for a in pts.iter().take(20) {
        for b in pts.iter().take(20) {
            let c = g.third_intersection(a, b).unwrap();
            assert_eq!(g.sum(&[a.clone(), b.clone(), c]).unwrap(), *g.zero());
        }
    }
}
