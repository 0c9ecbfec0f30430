use nfold_core::rings::{Tower, Var};
use nfold_core::susy::{Model, Sign};
use nfold_core::{
    DiffOp, DifferentialRing, Field, FormalPoly, GaussianRational, HalfInt, QPoly, RatFunc, Ring,
    TrigPoly, UPoly,
};
use proptest::prelude::*;

fn gr() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(a, b, c)| {
        GaussianRational::ratio(a, b) + &(GaussianRational::i() * &GaussianRational::ratio(c, 2))
    })
}

fn gpoly() -> impl Strategy<Value = UPoly<GaussianRational>> {
    prop::collection::vec(gr(), 0..4).prop_map(UPoly::from_coeffs)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (gpoly(), gpoly()).prop_map(|(n, d)| {
        if d.is_zero() {
            RatFunc::from_poly(n)
        } else {
            RatFunc::new(n, d)
        }
    })
}

/// Mostly polynomial in `g`, sometimes with a `1/g` factor; keeps the
/// operator tests fast.
fn light_ratfunc() -> impl Strategy<Value = RatFunc> {
    (gpoly(), 0i32..=1).prop_map(|(p, k)| RatFunc::from_poly(p) * &RatFunc::g_pow(-k))
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(light_ratfunc(), 0..4).prop_map(|cs| {
        cs.into_iter()
            .enumerate()
            .fold(QPoly::zero(), |acc, (j, c)| acc + &QPoly::monomial(c, j as u32))
    })
}

fn trigpoly() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec((-3i32..=3, light_ratfunc()), 0..4).prop_map(|ts| {
        ts.into_iter().fold(TrigPoly::zero(), |acc, (k, c)| {
            acc + &TrigPoly::exp(c, HalfInt::from_twice(k))
        })
    })
}

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![
        (0u32..4).prop_map(|n| Var::D(Tower::W, n)),
        (0u32..2).prop_map(|n| Var::D(Tower::Fp, n)),
        (0u32..2).prop_map(|n| Var::D(Tower::Fm, n)),
        Just(Var::C),
    ]
}

fn formal() -> impl Strategy<Value = FormalPoly> {
    prop::collection::vec((gr(), prop::collection::vec(var(), 0..3)), 0..4).prop_map(|ts| {
        ts.into_iter().fold(FormalPoly::zero(), |acc, (c, vs)| {
            let m = vs.into_iter().fold(FormalPoly::one(), |p, v| p * &FormalPoly::var(v));
            acc + &m.scale(&c)
        })
    })
}

fn qop() -> impl Strategy<Value = DiffOp<QPoly>> {
    prop::collection::vec(qpoly(), 0..3).prop_map(|cs| {
        DiffOp::from_terms(cs.into_iter().enumerate().map(|(n, c)| (n as u32, c)))
    })
}

fn top() -> impl Strategy<Value = DiffOp<TrigPoly>> {
    prop::collection::vec(trigpoly(), 0..3).prop_map(|cs| {
        DiffOp::from_terms(cs.into_iter().enumerate().map(|(n, c)| (n as u32, c)))
    })
}

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

macro_rules! ring_axioms {
    ($name:ident, $strat:expr) => {
        mod $name {
            use super::*;

            proptest! {
                #![proptest_config(cfg())]

                #[test]
                fn additive_group(a in $strat, b in $strat, c in $strat) {
                    prop_assert_eq!(a.clone() + &b, b.clone() + &a);
                    prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
                    prop_assert_eq!(a.clone() + &Ring::zero(), a.clone());
                    prop_assert!((a.clone() - &a).is_zero());
                    prop_assert_eq!(-(-a.clone()), a);
                }

                #[test]
                fn multiplicative_monoid(a in $strat, b in $strat, c in $strat) {
                    prop_assert_eq!(a.clone() * &b, b.clone() * &a);
                    prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
                    prop_assert_eq!(a.clone() * &Ring::one(), a);
                }

                #[test]
                fn distributive(a in $strat, b in $strat, c in $strat) {
                    prop_assert_eq!(
                        a.clone() * &(b.clone() + &c),
                        a.clone() * &b + &(a.clone() * &c)
                    );
                }
            }
        }
    };
}

ring_axioms!(gaussian_rational, gr());
ring_axioms!(ratfunc_ring, ratfunc());
ring_axioms!(qpoly_ring, qpoly());
ring_axioms!(trigpoly_ring, trigpoly());
ring_axioms!(formal_ring, formal());

macro_rules! differential_laws {
    ($name:ident, $strat:expr) => {
        mod $name {
            use super::*;

            proptest! {
                #![proptest_config(cfg())]

                #[test]
                fn leibniz(a in $strat, b in $strat) {
                    let lhs = (a.clone() * &b).derive();
                    let rhs = a.derive() * &b + &(a.clone() * &b.derive());
                    prop_assert_eq!(lhs, rhs);
                }

                #[test]
                fn additive_derivation(a in $strat, b in $strat) {
                    prop_assert_eq!((a.clone() + &b).derive(), a.derive() + &b.derive());
                }

                #[test]
                fn conjugation(a in $strat, b in $strat) {
                    prop_assert_eq!(a.conjugate().conjugate(), a.clone());
                    prop_assert_eq!(
                        (a.clone() * &b).conjugate(),
                        a.conjugate() * &b.conjugate()
                    );
                    prop_assert_eq!(
                        (a.clone() + &b).conjugate(),
                        a.conjugate() + &b.conjugate()
                    );
                    prop_assert_eq!(a.derive().conjugate(), a.conjugate().derive());
                }
            }
        }
    };
}

differential_laws!(qpoly_diff, qpoly());
differential_laws!(trigpoly_diff, trigpoly());
differential_laws!(formal_diff, formal());

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn ratfunc_canonical_form(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a.den().leading(), Some(&GaussianRational::from_int(1)));
        let g = a.num().gcd(a.den());
        prop_assert!(g.is_one());
        if !b.is_zero() {
            prop_assert_eq!((a.clone() * &b) * &b.inv(), a.clone());
            prop_assert_eq!(b.clone() * &b.inv(), RatFunc::one());
        }
    }

    #[test]
    fn ratfunc_equal_iff_difference_zero(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(a == b, (a.clone() - &b).is_zero());
    }

    #[test]
    fn ratfunc_exact_evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in 1i64..9) {
        let g = GaussianRational::ratio(x, 3);
        if let (Ok(va), Ok(vb)) = (a.eval_exact(&g), b.eval_exact(&g)) {
            prop_assert_eq!((a.clone() * &b).eval_exact(&g).unwrap(), va.clone() * &vb);
            prop_assert_eq!((a + &b).eval_exact(&g).unwrap(), va + &vb);
        }
    }

    #[test]
    fn composition_is_associative(a in qop(), b in qop(), c in qop()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn composition_distributes(a in qop(), b in qop(), c in qop()) {
        prop_assert_eq!(a.compose(&(b.clone() + &c)), a.compose(&b) + &a.compose(&c));
        prop_assert_eq!((b.clone() + &c).compose(&a), b.compose(&a) + &c.compose(&a));
    }

    #[test]
    fn order_is_additive(a in qop(), b in qop()) {
        if let (Some(oa), Some(ob)) = (a.order(), b.order()) {
            prop_assert_eq!(a.compose(&b).order(), Some(oa + ob));
        }
    }

    #[test]
    fn adjoint_reverses_products(a in qop(), b in qop()) {
        prop_assert_eq!(a.compose(&b).adjoint(), b.adjoint().compose(&a.adjoint()));
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn adjoint_reverses_products_trig(a in top(), b in top()) {
        prop_assert_eq!(a.compose(&b).adjoint(), b.adjoint().compose(&a.adjoint()));
    }

    #[test]
    fn gauge_is_a_homomorphism(a in qop(), b in qop(), w in qpoly()) {
        prop_assert_eq!(
            a.compose(&b).gauge_conjugate(&w),
            a.gauge_conjugate(&w).compose(&b.gauge_conjugate(&w))
        );
        prop_assert_eq!((a.clone() + &b).gauge_conjugate(&w), a.gauge_conjugate(&w) + &b.gauge_conjugate(&w));
    }

    #[test]
    fn gauge_is_a_homomorphism_trig(a in top(), b in top(), w in trigpoly()) {
        prop_assert_eq!(
            a.compose(&b).gauge_conjugate(&w),
            a.gauge_conjugate(&w).compose(&b.gauge_conjugate(&w))
        );
    }

    #[test]
    fn application_respects_composition(a in qop(), b in qop(), f in qpoly()) {
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn application_respects_composition_trig(a in top(), b in top(), f in trigpoly()) {
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn charge_commutator_is_twice_w_prime(w in qpoly()) {
        let w = w.clone() + &w.conjugate();
        let (d, dd) = Model::custom(w.clone()).build_d();
        let expected = DiffOp::mult(w.derive().scale(&GaussianRational::from_int(2)));
        prop_assert_eq!(d.commutator(&dd), expected);
    }

    #[test]
    fn charge_commutator_is_twice_w_prime_trig(w in trigpoly()) {
        let w = w.clone() + &w.conjugate();
        let (d, dd) = Model::custom(w.clone()).build_d();
        let expected = DiffOp::mult(w.derive().scale(&GaussianRational::from_int(2)));
        prop_assert_eq!(d.commutator(&dd), expected);
    }

    #[test]
    fn ordinary_susy_for_any_prepotential(w in qpoly()) {
        let w = w.clone() + &w.conjugate();
        prop_assert!(Model::custom(w).check_susy_algebra_n1().passes());
    }

    #[test]
    fn hamiltonians_are_self_adjoint(w in trigpoly(), n in 0u32..4) {
        let w = w.clone() + &w.conjugate();
        let m = Model::custom(w);
        let h = m.build_h(Sign::Plus, n);
        prop_assert_eq!(h.adjoint(), h);
    }
}

#[test]
fn quasi_solvability_closure_up_to_ten() {
    use nfold_core::isolated::{closure_check_periodic, closure_check_quadratic};
    for n in 1..=10 {
        closure_check_quadratic(n).unwrap_or_else(|e| panic!("quadratic N = {}: {}", n, e));
        closure_check_periodic(n).unwrap_or_else(|e| panic!("periodic N = {}: {}", n, e));
    }
}

#[test]
fn intertwining_for_both_models() {
    for n in 1..=6 {
        assert!(Model::quadratic().check_intertwine(n).is_zero(), "quadratic N = {}", n);
        assert!(Model::quadratic().check_adjoint_intertwine(n).is_zero());
        assert!(Model::periodic().check_intertwine(n).is_zero(), "periodic N = {}", n);
        assert!(Model::periodic().check_adjoint_intertwine(n).is_zero());
    }
}
