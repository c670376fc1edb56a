//! Truncated Laurent expansions at the origin.

use super::field::Field;
use super::poly::Poly;
use super::ratfun::RatFun;

/// Leading part of a Laurent series `sum_{k >= valuation} c_k x^k`.
///
/// `coeffs[i]` is the coefficient of `x^(valuation + i)`. The zero function
/// has `valuation == i64::MAX` and no coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct PrincipalPart<F> {
    pub valuation: i64,
    pub coeffs: Vec<F>,
}

impl<F: Field> PrincipalPart<F> {
    pub fn zero() -> Self {
        PrincipalPart {
            valuation: i64::MAX,
            coeffs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation == i64::MAX
    }

    pub fn has_pole(&self) -> bool {
        self.valuation < 0
    }

    /// Pole order, zero when there is no pole.
    pub fn pole_order(&self) -> usize {
        if self.has_pole() {
            (-self.valuation) as usize
        } else {
            0
        }
    }

    /// Coefficient of `x^k`; zero below the valuation. Panics if `k` lies
    /// beyond the computed range.
    pub fn coeff(&self, k: i64) -> F {
        if self.is_zero() || k < self.valuation {
            return F::zero();
        }
        let i = (k - self.valuation) as usize;
        assert!(i < self.coeffs.len(), "coefficient beyond expansion order");
        self.coeffs[i].clone()
    }

    /// Highest exponent whose coefficient is known.
    pub fn upto(&self) -> i64 {
        if self.is_zero() {
            i64::MAX
        } else {
            self.valuation + self.coeffs.len() as i64 - 1
        }
    }
}

/// Power series of `num/den` where `den(0) != 0`, first `n` terms.
pub fn series_div<F: Field>(num: &Poly<F>, den: &Poly<F>, n: usize) -> Vec<F> {
    let d0_inv = den.coeff(0).inv();
    let mut out: Vec<F> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        let dmax = den.coeffs().len().min(k + 1);
        for j in 1..dmax {
            acc = acc - den.coeff(j) * out[k - j].clone();
        }
        out.push(acc * d0_inv.clone());
    }
    out
}

/// Laurent expansion of `f` at `x = 0` with exact coefficients through
/// exponent `upto`.
pub fn laurent_expand<F: Field>(f: &RatFun<F>, upto: i64) -> PrincipalPart<F> {
    let Some(vn) = f.num().valuation() else {
        return PrincipalPart::zero();
    };
    let vd = f.den().valuation().unwrap();
    let valuation = vn as i64 - vd as i64;
    let n = if upto >= valuation {
        (upto - valuation + 1) as usize
    } else {
        0
    };
    let num = Poly::new(f.num().coeffs()[vn..].to_vec());
    let den = Poly::new(f.den().coeffs()[vd..].to_vec());
    PrincipalPart {
        valuation,
        coeffs: series_div(&num, &den, n),
    }
}

/// Laurent expansion of `f` at `x = p`.
pub fn laurent_expand_at<F: Field>(f: &RatFun<F>, p: &F, upto: i64) -> PrincipalPart<F> {
    laurent_expand(&f.shift(p), upto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, Rat};

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    #[test]
    fn examples() {
        let inv_e = RatFun::new(p(&[1]), p(&[0, 1]));
        let e = laurent_expand(&inv_e, -1);
        assert_eq!((e.valuation, e.coeffs.clone()), (-1, vec![rat(1)]));
        assert!(e.has_pole());

        let geo = RatFun::new(p(&[1]), p(&[1, -1]));
        let e = laurent_expand(&geo, 2);
        assert_eq!((e.valuation, e.coeffs), (0, vec![rat(1), rat(1), rat(1)]));

        let f = RatFun::new(p(&[1, 1]), p(&[0, 0, 1]));
        let e = laurent_expand(&f, 0);
        assert_eq!((e.valuation, e.coeffs), (-2, vec![rat(1), rat(1), rat(0)]));

        assert!(laurent_expand(&RatFun::<Rat>::new(Poly::zero(), p(&[1])), 3).is_zero());
    }

    #[test]
    fn expansion_at_point() {
        // 4/(z(z^2+2)) = 2/z - z + z^3/2 - ...
        let a = RatFun::new(p(&[4]), p(&[0, 2, 0, 1]));
        let e = laurent_expand_at(&a, &rat(0), 3);
        assert_eq!(e.valuation, -1);
        assert_eq!(e.coeff(-1), rat(2));
        assert_eq!(e.coeff(0), rat(0));
        assert_eq!(e.coeff(1), rat(-1));
        assert_eq!(e.coeff(3), crate::algebra::field::ratio(1, 2));
    }
}
