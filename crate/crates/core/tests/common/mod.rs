#![allow(dead_code)]

use desing_core::algebra::field::{ratio, Rat};
use desing_core::algebra::poly::Poly;
use desing_core::algebra::ratfun::RatFun;
use desing_core::algebra::roots::rational_roots;
use desing_core::diffop::DiffOp;
use desing_core::shiftop::ShiftOp;
use num_traits::Zero;
use proptest::prelude::*;

pub fn p(cs: &[i64]) -> Poly<Rat> {
    Poly::from_i64s(cs)
}

pub fn from_roots(rs: &[Rat]) -> Poly<Rat> {
    rs.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r.clone()))
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

pub fn poly(max_deg: usize) -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(Poly::new)
}

pub fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly<Rat>> {
    poly(max_deg).prop_filter("non-zero", |q| !q.is_zero())
}

pub fn int_poly(max_deg: usize) -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(-4i64..=4, 0..=max_deg + 1).prop_map(|cs| Poly::from_i64s(&cs))
}

/// Small denominators with rational or quadratic roots.
pub fn denominator() -> impl Strategy<Value = Poly<Rat>> {
    prop::sample::select(vec![p(&[1]), p(&[0, 1]), p(&[-1, 1]), p(&[1, 0, 1]), p(&[0, -2, 1]), p(&[2, 1])])
}

pub fn ratfun(max_deg: usize) -> impl Strategy<Value = RatFun<Rat>> {
    (poly(max_deg), denominator()).prop_map(|(n, d)| RatFun::new(n, d))
}

/// Polynomial shift operator of order `<= max_ord` with non-zero leading
/// coefficient; the trailing coefficient may vanish.
pub fn shift_op(max_ord: usize, max_deg: usize) -> impl Strategy<Value = ShiftOp> {
    prop::collection::vec(poly(max_deg), 1..=max_ord + 1)
        .prop_filter("non-zero leading", |cs| !cs.last().unwrap().is_zero())
        .prop_map(ShiftOp::from_polys)
}

pub fn diff_op(max_ord: usize, max_deg: usize) -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(ratfun(max_deg), 1..=max_ord + 1)
        .prop_filter("non-zero leading", |cs| !cs.last().unwrap().is_zero())
        .prop_map(DiffOp::new)
}

/// A polynomial shift operator with integer t-singularities and
/// l-singularities placed at integer distances from them, so that dispersion
/// and apparentness are non-trivial. The result is canonical.
pub fn singular_shift_op() -> impl Strategy<Value = ShiftOp> {
    (
        prop::collection::vec(-3i64..=3, 1..=2),
        prop::collection::vec(0i64..=4, 1..=2),
        prop::collection::vec(int_poly(2), 0..=1),
        prop::sample::select(vec![1i64, -1, 2]),
    )
        .prop_map(|(t_roots, offsets, middle, scale)| {
            let a0 = from_roots(&t_roots.iter().map(|&r| ratio(r, 1)).collect::<Vec<_>>()).scale(&ratio(scale, 1));
            let d = middle.len() + 1;
            let ad_roots: Vec<Rat> = t_roots
                .iter()
                .zip(offsets.iter().cycle())
                .map(|(&r, &o)| ratio(r + o - d as i64 + 1, 1))
                .collect();
            let ad = from_roots(&ad_roots);
            let mut cs = vec![a0];
            cs.extend(middle);
            cs.push(ad);
            ShiftOp::from_polys(cs).canonical().unwrap()
        })
        .prop_filter("has a rational t-singularity", |l| {
            !rational_roots(&l.t_poly().unwrap()).unwrap().roots.is_empty()
        })
}
