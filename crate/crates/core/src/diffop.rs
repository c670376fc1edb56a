//! Linear differential operators `sum a_i(z) D^i` with `D f = f D + f'`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::algebra::field::{rat, Rat};
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::shiftop::content_primpart;

/// `coeffs[i]` is the coefficient of `D^i`; the zero operator is empty.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffOp {
    coeffs: Vec<RatFun<Rat>>,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<RatFun<Rat>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn from_polys(coeffs: Vec<Poly<Rat>>) -> Self {
        Self::new(coeffs.into_iter().map(RatFun::from_poly).collect())
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_function(RatFun::constant(rat(1)))
    }

    /// The derivation `D`.
    pub fn d() -> Self {
        Self::d_pow(1)
    }

    pub fn d_pow(k: usize) -> Self {
        let mut c = vec![RatFun::zero(); k];
        c.push(RatFun::constant(rat(1)));
        DiffOp { coeffs: c }
    }

    pub fn from_function(f: RatFun<Rat>) -> Self {
        Self::new(vec![f])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; `0` for the zero operator.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[RatFun<Rat>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFun<Rat> {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn leading(&self) -> RatFun<Rat> {
        self.coeffs.last().cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_constant() && c.num().coeff(0) == rat(1))
    }

    pub fn scale_left(&self, f: &RatFun<Rat>) -> Self {
        Self::new(self.coeffs.iter().map(|c| f * c).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("monic"));
        }
        Ok(self.scale_left(&self.leading().recip()))
    }

    /// Primitive polynomial coefficients of the left-associate free of
    /// denominators.
    pub fn cleared(&self) -> Result<DiffOp> {
        let (_, prim) = content_primpart(&self.coeffs)?;
        Ok(Self::from_polys(prim))
    }

    /// `sum a_i f^(i)`.
    pub fn apply(&self, f: &RatFun<Rat>) -> RatFun<Rat> {
        let mut acc = RatFun::zero();
        let mut der = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                der = der.derivative();
            }
            acc = &acc + &(c * &der);
        }
        acc
    }

    /// Euclidean right division: `self = q * b + r` with `ord r < ord b`.
    pub fn right_divrem(&self, b: &DiffOp) -> Result<(DiffOp, DiffOp)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lb = b.leading();
        let mut q = DiffOp::zero();
        let mut r = self.clone();
        while !r.is_zero() && r.order() >= b.order() {
            let k = r.order() - b.order();
            let c = &r.leading() / &lb;
            let t = DiffOp::d_pow(k).scale_left(&c);
            r = &r - &(&t * b);
            q = &q + &t;
        }
        Ok((q, r))
    }

    pub fn is_right_divisible_by(&self, b: &DiffOp) -> Result<bool> {
        Ok(self.right_divrem(b)?.1.is_zero())
    }

    pub fn display<'a>(&'a self, var: &'a str, d: &'a str) -> DiffOpDisplay<'a> {
        DiffOpDisplay { op: self, var, d }
    }
}

pub struct DiffOpDisplay<'a> {
    op: &'a DiffOp,
    var: &'a str,
    d: &'a str,
}

impl std::fmt::Display for DiffOpDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        crate::text::write_operator(f, self.op.coeffs(), self.var, self.d)
    }
}

impl std::fmt::Display for DiffOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.display("z", "D").fmt(f)
    }
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut b = rat(1);
    for j in 0..k {
        b = b * rat((n - j) as i64) / rat((j + 1) as i64);
    }
    b
}

impl Add<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        if self.is_zero() || rhs.is_zero() {
            return DiffOp::zero();
        }
        let mut out = vec![RatFun::zero(); self.order() + rhs.order() + 1];
        for (j, b) in rhs.coeffs.iter().enumerate() {
            // derivatives of b, computed lazily up to the needed order
            let mut ders = vec![b.clone()];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                while ders.len() <= i {
                    let next = ders.last().unwrap().derivative();
                    ders.push(next);
                }
                for (k, bk) in ders.iter().enumerate().take(i + 1) {
                    if bk.is_zero() {
                        continue;
                    }
                    let term = &(a * bk).scale(&binomial(i, k));
                    out[i - k + j] = &out[i - k + j] + term;
                }
            }
        }
        DiffOp::new(out)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<DiffOp> for DiffOp {
            type Output = DiffOp;
            fn $m(self, rhs: DiffOp) -> DiffOp {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::ratio;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn example_op() -> DiffOp {
        // D^2 - (2/z) D + 1 + 2/z^2
        DiffOp::new(vec![
            RatFun::new(p(&[2, 0, 1]), p(&[0, 0, 1])),
            RatFun::new(p(&[-2]), p(&[0, 1])),
            RatFun::constant(rat(1)),
        ])
    }

    #[test]
    fn leibniz() {
        let z = DiffOp::from_function(RatFun::x());
        assert_eq!(&DiffOp::d() * &z, DiffOp::from_polys(vec![p(&[1]), p(&[0, 1])]));
        let a = DiffOp::from_polys(vec![p(&[1]), p(&[1])]);
        let b = DiffOp::from_polys(vec![p(&[-1]), p(&[1])]);
        assert_eq!(&a * &b, DiffOp::from_polys(vec![p(&[-1]), p(&[]), p(&[1])]));
    }

    #[test]
    fn example_divisibility() {
        let out = DiffOp::from_polys(vec![p(&[0, -1]), p(&[3]), p(&[0, -1]), p(&[1])]);
        let (q, r) = out.right_divrem(&example_op()).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, DiffOp::new(vec![RatFun::new(p(&[2, 0, -1]), p(&[0, 1])), RatFun::constant(rat(1))]));
    }

    #[test]
    fn apply_solutions() {
        // z cos z is not rational; check the rational identity L(1) = 1 + 2/z^2
        let l = example_op();
        assert_eq!(l.apply(&RatFun::constant(rat(1))), RatFun::new(p(&[2, 0, 1]), p(&[0, 0, 1])));
        let m = DiffOp::new(vec![RatFun::constant(ratio(-1, 1)), RatFun::x()]);
        assert!(m.apply(&RatFun::x()).is_zero());
    }

    #[test]
    fn monic_and_cleared() {
        let l = DiffOp::from_polys(vec![p(&[1]), p(&[0, 2])]);
        let m = l.monic().unwrap();
        assert!(m.is_monic());
        assert_eq!(m.coeff(0), RatFun::new(p(&[1]), p(&[0, 2])));
        assert_eq!(m.cleared().unwrap(), l);
    }
}
