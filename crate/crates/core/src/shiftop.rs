//! Linear difference operators `sum a_i(z) E^i` with `E f(z) = f(z+1) E`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::algebra::field::{rat, Rat};
use crate::algebra::poly::{rat_content_of, Poly};
use crate::algebra::ratfun::RatFun;
use crate::algebra::roots::{cauchy_root_bound, rational_roots, RationalRoots};
use crate::error::{Error, Result};

/// A difference operator with rational-function coefficients; `coeffs[i]` is
/// the coefficient of `E^i`. The zero operator has no coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct ShiftOp {
    coeffs: Vec<RatFun<Rat>>,
}

impl ShiftOp {
    pub fn new(mut coeffs: Vec<RatFun<Rat>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ShiftOp { coeffs }
    }

    pub fn from_polys(coeffs: Vec<Poly<Rat>>) -> Self {
        Self::new(coeffs.into_iter().map(RatFun::from_poly).collect())
    }

    pub fn zero() -> Self {
        ShiftOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_function(RatFun::one())
    }

    /// The shift `E`.
    pub fn e() -> Self {
        Self::e_pow(1)
    }

    pub fn e_pow(k: usize) -> Self {
        let mut coeffs = vec![RatFun::zero(); k];
        coeffs.push(RatFun::one());
        ShiftOp { coeffs }
    }

    /// The multiplication operator by `f`.
    pub fn from_function(f: RatFun<Rat>) -> Self {
        Self::new(vec![f])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in `E`; `0` for the zero operator.
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

    pub fn trailing(&self) -> RatFun<Rat> {
        self.coeff(0)
    }

    /// Coefficients as polynomials, if they all are.
    pub fn poly_coeffs(&self) -> Result<Vec<Poly<Rat>>> {
        self.coeffs
            .iter()
            .map(|c| c.to_poly().ok_or(Error::NotPolynomial))
            .collect()
    }

    /// Polynomial coefficients without a non-constant common factor, and
    /// non-zero leading and trailing coefficients.
    pub fn is_normal_form(&self) -> bool {
        let Ok(ps) = self.poly_coeffs() else {
            return false;
        };
        if ps.is_empty() || ps[0].is_zero() {
            return false;
        }
        let g = ps
            .iter()
            .skip(1)
            .try_fold(ps[0].clone(), |g, p| g.gcd(p))
            .unwrap();
        g.is_constant()
    }

    /// `f * self`.
    pub fn scale_left(&self, f: &RatFun<Rat>) -> Self {
        Self::new(self.coeffs.iter().map(|c| f * c).collect())
    }

    /// `E^k * self`.
    pub fn shift_left(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let kk = rat(k as i64);
        let mut coeffs = vec![RatFun::zero(); k];
        coeffs.extend(self.coeffs.iter().map(|c| c.shift(&kk)));
        ShiftOp { coeffs }
    }

    /// Applies `self` to a function of `z`.
    pub fn apply(&self, f: &RatFun<Rat>) -> RatFun<Rat> {
        self.coeffs
            .iter()
            .enumerate()
            .fold(RatFun::zero(), |acc, (i, c)| &acc + &(c * &f.shift(&rat(i as i64))))
    }

    /// Right Euclidean division: `self = q * b + r` with `ord r < ord b`.
    pub fn right_divrem(&self, b: &ShiftOp) -> Result<(ShiftOp, ShiftOp)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.order();
        let mut r = self.clone();
        let mut q = vec![RatFun::zero(); self.order().saturating_sub(db) + 1];
        while !r.is_zero() && r.order() >= db {
            let k = r.order() - db;
            let c = &r.leading() / &b.leading().shift(&rat(k as i64));
            let sub = b.shift_left(k).scale_left(&c);
            r = &r - &sub;
            q[k] = &q[k] + &c;
        }
        Ok((ShiftOp::new(q), r))
    }

    /// Whether `b` is a right factor of `self`.
    pub fn is_right_divisible_by(&self, b: &ShiftOp) -> Result<bool> {
        Ok(self.right_divrem(b)?.1.is_zero())
    }

    /// Canonical polynomial normal form: denominators cleared, polynomial and
    /// rational content removed, leading coefficient of the highest-index
    /// entry positive, and the lowest non-zero index moved to `E^0`.
    pub fn canonical(&self) -> Result<ShiftOp> {
        normalize_laurent(0, self.coeffs.clone())
    }

    /// The image under `z -> -z, E -> 1/E`, brought back to normal form.
    ///
    /// The coefficient of `E^j` in the result is `a_(d-j)(-z-d)` up to the
    /// normalizing scalar.
    pub fn automorphism(&self) -> Result<ShiftOp> {
        if self.is_zero() {
            return Err(Error::ZeroInput("automorphism"));
        }
        let d = self.order() as i64;
        let reflected: Vec<RatFun<Rat>> =
            self.coeffs.iter().rev().map(|c| c.reflect()).collect();
        normalize_laurent(-d, reflected)
    }

    /// `sum a_i(-z) E^(-i)` multiplied on the left by `E^d`, without content
    /// normalization.
    pub fn automorphism_raw(&self) -> ShiftOp {
        let d = rat(self.order() as i64);
        ShiftOp::new(
            self.coeffs
                .iter()
                .rev()
                .map(|c| c.reflect().shift(&d))
                .collect(),
        )
    }

    pub fn t_poly(&self) -> Result<Poly<Rat>> {
        self.trailing().to_poly().ok_or(Error::NotPolynomial)
    }

    /// `a_d(z - d)`, whose roots are the l-singularities.
    pub fn l_poly(&self) -> Result<Poly<Rat>> {
        let ad = self.leading().to_poly().ok_or(Error::NotPolynomial)?;
        Ok(ad.shift(&rat(-(self.order() as i64))))
    }

    pub fn singularity_data(&self) -> Result<SingularityData> {
        let t_poly = self.t_poly()?;
        if t_poly.is_zero() {
            return Err(Error::ZeroTrailingCoefficient);
        }
        let l_poly = self.l_poly()?;
        let t_roots = rational_roots(&t_poly)?;
        let l_roots = rational_roots(&l_poly)?;
        let mut upper: Option<Rat> = None;
        let mut lower: Option<Rat> = None;
        let mut bump = |v: Rat, w: Rat| {
            upper = Some(upper.take().map_or(v.clone(), |u: Rat| u.max(v)));
            lower = Some(lower.take().map_or(w.clone(), |l: Rat| l.min(w)));
        };
        for roots in [&t_roots, &l_roots] {
            for r in roots.values() {
                bump(r.clone(), r.clone());
            }
            if !roots.cofactor.is_constant() {
                let b = cauchy_root_bound(&roots.cofactor)?;
                bump(b.clone(), -b);
            }
        }
        Ok(SingularityData {
            t_poly,
            l_poly,
            t_sings: t_roots,
            l_sings: l_roots,
            kappa_upper: upper,
            iota_lower: lower,
        })
    }
}

/// Trailing/leading singularity bookkeeping for an operator in polynomial
/// form. The bounds are `None` when there are no singularities at all.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularityData {
    pub t_poly: Poly<Rat>,
    pub l_poly: Poly<Rat>,
    pub t_sings: RationalRoots,
    pub l_sings: RationalRoots,
    /// At least the real part of every singularity.
    pub kappa_upper: Option<Rat>,
    /// At most the real part of every singularity.
    pub iota_lower: Option<Rat>,
}

/// Splits a non-zero coefficient list into `(content, primitive part)` with
/// `content * primitive == input`. The primitive part has polynomial
/// coefficients without common factor, integer coefficients with gcd 1, and
/// a positive leading rational in the highest-index entry.
pub fn content_primpart(coeffs: &[RatFun<Rat>]) -> Result<(RatFun<Rat>, Vec<Poly<Rat>>)> {
    let nz: Vec<&RatFun<Rat>> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    if nz.is_empty() {
        return Err(Error::ZeroInput("content_primpart"));
    }
    let mut den = Poly::one();
    for c in &nz {
        den = den.lcm(c.den())?;
    }
    let cleared: Vec<Poly<Rat>> = coeffs
        .iter()
        .map(|c| &c.num().clone() * &den.div_exact(c.den()).unwrap())
        .collect();
    let mut g = Poly::zero();
    for p in &cleared {
        if !p.is_zero() {
            g = if g.is_zero() { p.monic() } else { g.gcd(p)? };
        }
    }
    let reduced: Vec<Poly<Rat>> = cleared
        .iter()
        .map(|p| p.div_exact(&g).unwrap())
        .collect();
    let mut c = rat_content_of(reduced.iter().flat_map(|p| p.coeffs().iter()));
    let top = reduced.iter().rev().find(|p| !p.is_zero()).unwrap();
    if top.leading_coeff().is_negative() {
        c = -c;
    }
    let inv = c.recip();
    let prim: Vec<Poly<Rat>> = reduced.iter().map(|p| p.scale(&inv)).collect();
    let content = RatFun::new(g.scale(&c), den);
    Ok((content, prim))
}

/// Normalizes the Laurent operator `sum coeffs[i] E^(low + i)`: left
/// multiplication by a power of `E` puts the lowest non-zero term at `E^0`,
/// then the content is removed.
pub(crate) fn normalize_laurent(low: i64, coeffs: Vec<RatFun<Rat>>) -> Result<ShiftOp> {
    let first = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroInput("normalize"))?;
    let lowest = low + first as i64;
    let shift = rat(-lowest);
    let moved: Vec<RatFun<Rat>> = coeffs[first..].iter().map(|c| c.shift(&shift)).collect();
    let (_, prim) = content_primpart(&moved)?;
    Ok(ShiftOp::from_polys(prim))
}

impl Add<&ShiftOp> for &ShiftOp {
    type Output = ShiftOp;
    fn add(self, rhs: &ShiftOp) -> ShiftOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ShiftOp::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&ShiftOp> for &ShiftOp {
    type Output = ShiftOp;
    fn sub(self, rhs: &ShiftOp) -> ShiftOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ShiftOp::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul<&ShiftOp> for &ShiftOp {
    type Output = ShiftOp;
    fn mul(self, rhs: &ShiftOp) -> ShiftOp {
        if self.is_zero() || rhs.is_zero() {
            return ShiftOp::zero();
        }
        let mut out = vec![RatFun::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = rat(i as i64);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * &b.shift(&k));
            }
        }
        ShiftOp::new(out)
    }
}

impl Neg for &ShiftOp {
    type Output = ShiftOp;
    fn neg(self) -> ShiftOp {
        ShiftOp::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
