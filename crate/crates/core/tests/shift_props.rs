mod common;

use common::*;
use desing_core::algebra::field::{rat, ratio, Rat};
use desing_core::algebra::poly::Poly;
use desing_core::algebra::ratfun::RatFun;
use desing_core::algebra::roots::{dispersion, rational_roots};
use desing_core::shiftop::ShiftOp;
use proptest::prelude::*;

fn shift_coeffs(op: &ShiftOp, k: i64) -> ShiftOp {
    ShiftOp::new(op.coeffs().iter().map(|c| c.shift(&rat(k))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in shift_op(3, 3), b in shift_op(3, 3), c in shift_op(3, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_reconstructs(a in shift_op(4, 3), b in shift_op(3, 3)) {
        let (q, r) = a.right_divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.order() < b.order());
    }

    #[test]
    fn commutation(f in poly(4), k in 0usize..5) {
        let lhs = &ShiftOp::e_pow(k) * &ShiftOp::from_polys(vec![f.clone()]);
        let rhs = &ShiftOp::from_polys(vec![f.shift(&rat(k as i64))]) * &ShiftOp::e_pow(k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn automorphism_is_multiplicative(a in shift_op(2, 2), b in shift_op(2, 2)) {
        // with phi_raw(X) = E^ord(X) phi(X): phi_raw(AB) = sigma^ord(B)(phi_raw(A)) * phi_raw(B)
        let lhs = (&a * &b).automorphism_raw();
        let rhs = &shift_coeffs(&a.automorphism_raw(), b.order() as i64) * &b.automorphism_raw();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn automorphism_is_an_involution(a in shift_op(3, 3)) {
        prop_assert_eq!(a.automorphism().unwrap().automorphism().unwrap(), a.canonical().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn t_desing_invariants(l in singular_shift_op()) {
        use desing_core::desing::t_desing;
        use desing_core::singanalysis::is_apparent_t;
        let r = t_desing(&l).unwrap();
        let a0 = l.t_poly().unwrap();
        let ad = l.leading().to_poly().unwrap();
        let out = &r.output;
        prop_assert!(out.is_right_divisible_by(&l).unwrap());
        if r.removed_factor.is_constant() {
            prop_assert_eq!(out, &l.canonical().unwrap());
        } else {
            prop_assert!(out.order() as u64 <= l.order() as u64 + dispersion(&ad, &a0).unwrap());
            prop_assert!(out.order() > l.order());
        }
        prop_assert_eq!(r.dispersion_used, dispersion(&ad, &a0).unwrap());
        let g = r.bezout_form.trailing().to_poly().unwrap();
        prop_assert_eq!(&g * &r.removed_factor, a0.monic());
        let trailing = out.t_poly().unwrap();
        prop_assert!(trailing.divides(&a0));
        for (sigma, _) in rational_roots(&a0).unwrap().roots {
            if is_apparent_t(&l, &sigma).unwrap() {
                prop_assert_ne!(trailing.eval(&sigma), rat(0));
            }
        }
    }

    #[test]
    fn l_desing_and_both(l in singular_shift_op()) {
        use desing_core::desing::{desing_both, l_desing, t_desing};
        let lt = l_desing(&l).unwrap();
        prop_assert!(lt.output.is_right_divisible_by(&l).unwrap());
        let both = desing_both(&l).unwrap();
        prop_assert!(both.output.is_right_divisible_by(&l).unwrap());
        prop_assert_eq!(both.output.order(), both.m + both.l_part.output.order());
        let ratio_t = &both.output.trailing() / &both.t_part.output.trailing();
        prop_assert!(ratio_t.is_constant());
        // l-singularities of l_desing(L) mirror the t-singularities of t_desing(phi(L))
        let mirrored = t_desing(&l.automorphism().unwrap()).unwrap().output;
        let t_side = rational_roots(&mirrored.t_poly().unwrap()).unwrap();
        let l_side = rational_roots(&lt.output.l_poly().unwrap()).unwrap();
        let mut negated: Vec<(Rat, usize)> = t_side.roots.iter().map(|(x, m)| (-x.clone(), *m)).collect();
        negated.sort();
        prop_assert_eq!(negated, l_side.roots);
    }
}

/// An operator together with one of its rational t-singularities.
fn op_with_sigma() -> impl Strategy<Value = (ShiftOp, Rat)> {
    singular_shift_op().prop_flat_map(|l| {
        let roots: Vec<Rat> = rational_roots(&l.t_poly().unwrap()).unwrap().values().cloned().collect();
        (Just(l), prop::sample::select(roots))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn r_set_linearity((l, sigma) in op_with_sigma(), v in prop::collection::vec(small_rat(), 4)) {
        use desing_core::singanalysis::{choose_q, propagate, r_set};
        let n = choose_q(&l, &sigma).unwrap();
        let d = l.order();
        let w: Vec<RatFun<Rat>> = v[..d].iter().map(|x| RatFun::constant(x.clone())).collect();
        let direct = propagate(&l, &sigma, n, &[w]).unwrap().remove(0);
        let rs = r_set(&l, &sigma, n).unwrap();
        let mut combo = RatFun::constant(rat(0));
        for (x, f) in v.iter().zip(&rs.values) {
            combo = &combo + &f.scale(x);
        }
        prop_assert_eq!(direct, combo);
    }

    #[test]
    fn q_stability((l, sigma) in op_with_sigma()) {
        use desing_core::singanalysis::{c_relations, choose_q, r_set};
        let n = choose_q(&l, &sigma).unwrap();
        let base = r_set(&l, &sigma, n).unwrap();
        let rel = c_relations(&l, &sigma, n).unwrap();
        prop_assert_eq!(rel.is_empty(), base.is_pole_free());
        for extra in 1..=3 {
            let rs = r_set(&l, &sigma, n + extra).unwrap();
            prop_assert_eq!(rs.is_pole_free(), base.is_pole_free());
            prop_assert_eq!(c_relations(&l, &sigma, n + extra).unwrap().is_empty(), rel.is_empty());
        }
    }

    #[test]
    fn apparent_implies_pole_free((l, sigma) in op_with_sigma()) {
        use desing_core::singanalysis::{choose_q, is_apparent_t, r_set};
        if is_apparent_t(&l, &sigma).unwrap() {
            let n = choose_q(&l, &sigma).unwrap();
            prop_assert!(r_set(&l, &sigma, n).unwrap().is_pole_free());
        }
    }

    #[test]
    fn scaling_invariance((l, sigma) in op_with_sigma(), k in -3i64..3) {
        use desing_core::singanalysis::is_apparent_t;
        let p = Poly::linear_root(&sigma + ratio(3 * k + 1, 3));
        let scaled = l.scale_left(&RatFun::from_poly(p));
        prop_assert_eq!(is_apparent_t(&scaled, &sigma).unwrap(), is_apparent_t(&l, &sigma).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn continuation_agrees_with_desing(
        l in singular_shift_op(),
        v in prop::collection::vec(-5i64..=5, 3),
        start in -6i64..=6,
        right in any::<bool>(),
    ) {
        use desing_core::continuation::{extend, extend_via_desing, Direction, SequenceWindow};
        let d = l.order();
        let w = SequenceWindow::new(rat(start), v[..d].iter().map(|&x| rat(x)).collect());
        let dir = if right { Direction::Right } else { Direction::Left };
        let plain = extend(&l, &w, dir, 10).unwrap();
        if let Ok(via) = extend_via_desing(&l, &w, dir, 10) {
            for (a, b) in plain.terms.iter().zip(&via.terms) {
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn continuation_is_reversible(
        l in singular_shift_op(),
        v in prop::collection::vec(small_rat(), 3),
        start in -6i64..=6,
        count in 1usize..8,
    ) {
        use desing_core::continuation::{extend, Direction, SequenceWindow};
        let d = l.order();
        let w = SequenceWindow::new(rat(start), v[..d].to_vec());
        let fwd = extend(&l, &w, Direction::Right, count).unwrap();
        prop_assume!(fwd.blocked_at().is_none());
        let back = extend(&l, &fwd.window, Direction::Left, count).unwrap();
        prop_assume!(back.blocked_at().is_none());
        prop_assert_eq!(back.window, w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn integrality_of_the_apery_like_recurrence(u0 in -50i64..=50, u1 in -50i64..=50) {
        use desing_core::continuation::{extend, Direction, SequenceWindow};
        let l = ShiftOp::from_polys(vec![p(&[-289, -833, -800, -256]), p(&[-224, -512]), p(&[1, 32, 256])]);
        let e = extend(&l, &SequenceWindow::new(rat(0), vec![rat(u0), rat(u1)]), Direction::Right, 200).unwrap();
        prop_assert!(e.blocked_at().is_none());
        prop_assert!(e.values().iter().all(|x| x.is_integer()));
    }
}
