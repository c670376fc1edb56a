mod common;

use common::*;
use desing_core::algebra::field::{rat, Rat};
use desing_core::algebra::poly::Poly;
use desing_core::algebra::ratfun::RatFun;
use desing_core::diffdesing::{
    annihilator_of_ratfuns, classify_point, d_desing, jet_match, local_exponents, series_solution_dim, PointClass,
};
use desing_core::diffop::DiffOp;
use num_traits::Zero;
use proptest::prelude::*;

fn power(a: &Rat, e: u32) -> RatFun<Rat> {
    RatFun::from_poly(Poly::linear_root(a.clone()).pow(e))
}

/// Monic annihilator of `(z-a)^k1` and `(z-a)^k2 / (z-b)`: singular at `a`,
/// `b` and one further rational point where the Wronskian vanishes.
fn two_point_op() -> impl Strategy<Value = DiffOp> {
    (-3i64..=3, 1i64..=3, 0u32..3, 1u32..4)
        .prop_map(|(a, gap, k1, dk)| {
            let (a, b) = (rat(a), rat(a + gap));
            let f1 = power(&a, k1);
            let f2 = &power(&a, k1 + dk) / &power(&b, 1);
            annihilator_of_ratfuns(&[f1, f2]).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in diff_op(3, 3), b in diff_op(2, 2), c in diff_op(2, 2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn division_reconstructs(a in diff_op(3, 3), b in diff_op(2, 2)) {
        let (q, r) = a.right_divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.order() < b.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn annihilator_kills_inputs(fs in prop::collection::vec(ratfun(3), 1..4)) {
        match annihilator_of_ratfuns(&fs) {
            Ok(l) => {
                prop_assert!(l.is_monic());
                prop_assert_eq!(l.order(), fs.len());
                for f in &fs {
                    prop_assert!(l.apply(f).is_zero());
                }
            }
            Err(_) => {}
        }
    }

    #[test]
    fn jet_match_contract(a in ratfun(4), pts in prop::collection::btree_map(-3i64..=3, 0usize..4, 1..3)) {
        let points: Vec<(Rat, usize)> = pts.iter().map(|(&p, &m)| (rat(p), m)).collect();
        let b = jet_match(&a, &points).unwrap();
        for (p, m) in &points {
            let diff = &b - &a;
            if !diff.is_zero() {
                prop_assert!(diff.order_at(p).unwrap() >= *m as i64);
            }
        }
        for (root, _) in desing_core::algebra::roots::rational_roots(b.den()).unwrap().roots {
            prop_assert!(points.iter().any(|(p, _)| *p == root));
        }
        prop_assert!(desing_core::algebra::roots::rational_roots(b.den()).unwrap().splits());
    }

    #[test]
    fn d_desing_invariants(l in two_point_op(), samples in prop::collection::vec(small_rat(), 20)) {
        let r = d_desing(&l).unwrap();
        prop_assert!(r.output.is_right_divisible_by(&l).unwrap());
        let n = r.output.order();
        for p in &r.apparent {
            prop_assert_eq!(classify_point(&l, p).unwrap(), PointClass::Apparent);
            let data = local_exponents(&r.output, p).unwrap();
            let exps: Vec<Rat> = data.exponents.iter().map(|(e, _)| e.clone()).collect();
            prop_assert_eq!(exps, (0..n as i64).map(rat).collect::<Vec<_>>());
            prop_assert_eq!(data.series_dim, n);
            prop_assert_eq!(series_solution_dim(&r.output, p, data.truncation + 3).unwrap(), n);
        }
        for q in &samples {
            if classify_point(&l, q).unwrap() == PointClass::Ordinary {
                prop_assert_eq!(classify_point(&r.output, q).unwrap(), PointClass::Ordinary);
            }
        }
    }
}
