//! Reduced rational functions `num/den` with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, Rat};
use super::poly::Poly;

#[derive(Clone, PartialEq, Debug)]
pub struct RatFun<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFun<F> {
    /// Builds `num/den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den).expect("non-zero inputs");
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_poly(&self) -> Option<Poly<F>> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.is_constant()
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// `f(x + k)`.
    pub fn shift(&self, k: &F) -> Self {
        if k.is_zero() {
            return self.clone();
        }
        Self::new(self.num.shift(k), self.den.shift(k))
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect())
    }

    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let e = e.unsigned_abs();
        RatFun {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    /// Order of vanishing at `p`: positive for zeros, negative for poles.
    /// `None` for the zero function.
    pub fn order_at(&self, p: &F) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        let vn = self.num.shift(p).valuation().unwrap() as i64;
        let vd = self.den.shift(p).valuation().unwrap() as i64;
        Some(vn - vd)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> RatFun<G> {
        RatFun::new(self.num.map(f), self.den.map(f))
    }

    pub fn display<'a>(&'a self, var: &'a str) -> RatFunDisplay<'a, F> {
        RatFunDisplay { f: self, var }
    }
}

impl RatFun<Rat> {
    pub fn lift<K: Field>(&self) -> RatFun<K> {
        // Lifting preserves coprimality and monicity.
        RatFun {
            num: self.num.lift(),
            den: self.den.lift(),
        }
    }
}

impl<F: Field> From<Poly<F>> for RatFun<F> {
    fn from(p: Poly<F>) -> Self {
        Self::from_poly(p)
    }
}

impl<F: Field> Zero for RatFun<F> {
    fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFun<F> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<F: Field> Add<&RatFun<F>> for &RatFun<F> {
    type Output = RatFun<F>;
    fn add(self, rhs: &RatFun<F>) -> RatFun<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<F: Field> Sub<&RatFun<F>> for &RatFun<F> {
    type Output = RatFun<F>;
    fn sub(self, rhs: &RatFun<F>) -> RatFun<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul<&RatFun<F>> for &RatFun<F> {
    type Output = RatFun<F>;
    fn mul(self, rhs: &RatFun<F>) -> RatFun<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<F: Field> Div<&RatFun<F>> for &RatFun<F> {
    type Output = RatFun<F>;
    fn div(self, rhs: &RatFun<F>) -> RatFun<F> {
        self * &rhs.recip()
    }
}

impl<F: Field> Neg for &RatFun<F> {
    type Output = RatFun<F>;
    fn neg(self) -> RatFun<F> {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Neg for RatFun<F> {
    type Output = RatFun<F>;
    fn neg(self) -> RatFun<F> {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<RatFun<F>> for RatFun<F> {
            type Output = RatFun<F>;
            fn $m(self, rhs: RatFun<F>) -> RatFun<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&RatFun<F>> for RatFun<F> {
            type Output = RatFun<F>;
            fn $m(self, rhs: &RatFun<F>) -> RatFun<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

/// Rational functions over `Q` form a field, which lets the generic linear
/// algebra run over `Q(z)`.
impl Field for RatFun<Rat> {
    fn from_rat(r: &Rat) -> Self {
        RatFun::constant(r.clone())
    }

    fn to_rat(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    fn real_part_lower_bound(&self) -> Option<Rat> {
        None
    }

    fn inv(&self) -> Self {
        self.recip()
    }
}

pub struct RatFunDisplay<'a, F> {
    f: &'a RatFun<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for RatFunDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.num.display(self.var).to_string();
        if self.f.is_polynomial() {
            return write!(f, "{num}");
        }
        let terms = |p: &Poly<F>| p.coeffs().iter().filter(|c| !c.is_zero()).count();
        let den = self.f.den.display(self.var).to_string();
        let bare_den = terms(&self.f.den) == 1 && !den.contains('*');
        match (terms(&self.f.num) == 1, bare_den) {
            (true, true) => write!(f, "{num}/{den}"),
            (true, false) => write!(f, "{num}/({den})"),
            (false, true) => write!(f, "({num})/{den}"),
            (false, false) => write!(f, "({num})/({den})"),
        }
    }
}

impl<F: Field> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    #[test]
    fn reduces_and_normalizes() {
        // (2z^2 - 2)/(2z - 2) = z + 1
        let f = RatFun::new(p(&[-2, 0, 2]), p(&[-2, 2]));
        assert_eq!(f, RatFun::from_poly(p(&[1, 1])));
        let g = RatFun::new(p(&[1]), p(&[0, -2]));
        assert_eq!(g.den(), &p(&[0, 1]));
        assert_eq!(g.num().coeff(0), crate::algebra::field::ratio(-1, 2));
    }

    #[test]
    fn derivative_and_order() {
        // d/dz 1/z = -1/z^2
        let f = RatFun::new(p(&[1]), p(&[0, 1]));
        assert_eq!(f.derivative(), RatFun::new(p(&[-1]), p(&[0, 0, 1])));
        assert_eq!(f.order_at(&rat(0)), Some(-1));
        assert_eq!(f.order_at(&rat(1)), Some(0));
        assert_eq!(f.eval(&rat(0)), None);
    }
}
