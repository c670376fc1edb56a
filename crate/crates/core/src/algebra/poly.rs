//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rat};
use crate::error::{Error, Result};

/// A polynomial stored as coefficients in ascending order of degree.
///
/// The zero polynomial is the empty vector; otherwise the last stored
/// coefficient is non-zero.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - r`.
    pub fn linear_root(r: F) -> Self {
        Self::new(vec![-r, F::one()])
    }

    pub fn from_rats(cs: &[Rat]) -> Self {
        Self::new(cs.iter().map(F::from_rat).collect())
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_coeff(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Multiplicity of the root `0`, i.e. the number of leading zero
    /// coefficients. `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// `p(x + k)` by Horner re-expansion.
    pub fn shift(&self, k: &F) -> Self {
        if k.is_zero() {
            return self.clone();
        }
        let lin = Poly::new(vec![k.clone(), F::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplication by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Drops all terms of degree `>= k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().take(k).cloned().collect())
    }

    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = b.leading_coeff().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db].clone() * inv_lc.clone();
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * bj.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    /// Quotient of an exact division; errors if the remainder is non-zero.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroInput("gcd"));
        }
        if let Some(g) = F::fast_gcd(self, other) {
            return Ok(g);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let g = self.gcd(other)?;
        Ok((self * &other.div_exact(&g)?).monic())
    }

    /// Extended gcd `(g, s, t)` with `s*self + t*other = g`, `g` monic,
    /// `deg s < deg(other/g)` and `deg t < deg(self/g)`.
    pub fn gcdex(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let (a, b) = (self, other);
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroInput("gcdex"));
        }
        if b.is_zero() {
            let inv = a.leading_coeff().inv();
            return Ok((a.monic(), Self::constant(inv), Self::zero()));
        }
        if a.is_zero() {
            let inv = b.leading_coeff().inv();
            return Ok((b.monic(), Self::zero(), Self::constant(inv)));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let inv = r0.leading_coeff().inv();
        let g = r0.scale(&inv);
        let s = s0.scale(&inv);
        // Reduce to the minimal-degree representative and recover t.
        let b_red = b.div_exact(&g)?;
        let s = s.rem(&b_red)?;
        let t = (&g - &(&s * a)).div_exact(b)?;
        Ok((g, s, t))
    }

    /// Squarefree part, made monic.
    pub fn squarefree(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("squarefree"));
        }
        if self.is_constant() {
            return Ok(Self::one());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.div_exact(&g)?.monic())
    }

    /// Maps coefficients into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Display helper using `var` as the variable name.
    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, var }
    }
}

impl Poly<Rat> {
    /// Embeds a rational polynomial into `Poly<K>`.
    pub fn lift<K: Field>(&self) -> Poly<K> {
        self.map(K::from_rat)
    }

    /// Splits `self = content * primitive` where the primitive part has
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn rat_content(&self) -> (Rat, Poly<Rat>) {
        let c = rat_content_of(self.coeffs.iter());
        if c.is_zero() {
            return (c, Poly::zero());
        }
        let c = if self.leading_coeff().is_negative() { -c } else { c };
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    /// Integer coefficients of the primitive part.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let (_, p) = self.rat_content();
        p.coeffs.iter().map(|c| c.to_integer()).collect()
    }
}

fn primitive_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Pseudo-remainder of integer coefficient vectors; `b` must be non-zero.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Monic gcd over the rationals by a primitive remainder sequence in the
/// integers.
pub fn rat_gcd(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    let ints = |p: &Poly<Rat>| if p.is_zero() { Vec::new() } else { p.integer_coeffs() };
    let (mut x, mut y) = (ints(a), ints(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive_ints(prem(&x, &y));
        x = y;
        y = r;
    }
    Poly::new(x.into_iter().map(Rat::from_integer).collect()).monic()
}

/// Positive rational `c` such that every value divided by `c` is an integer
/// and the resulting integers are coprime. Zero when all values are zero.
pub fn rat_content_of<'a>(values: impl Iterator<Item = &'a Rat>) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    if num.is_zero() {
        Rat::zero()
    } else {
        Rat::new(num, den)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$m(rhs)
            }
        }
    };
}

impl<F: Field> Add<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Field> Mul<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

pub struct PolyDisplay<'a, F> {
    poly: &'a Poly<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.poly, self.var)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, "z")
    }
}

/// Writes terms in descending degree, e.g. `3*z^2 - z + 1/2`. Coefficients
/// whose own rendering is not a plain signed number are parenthesised.
fn write_poly<F: Field>(f: &mut fmt::Formatter<'_>, p: &Poly<F>, var: &str) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = match c.to_rat() {
            Some(r) if r.is_negative() => (true, (-r).to_string()),
            Some(r) => (false, r.to_string()),
            None => (false, format!("({c})")),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k == 0 {
            write!(f, "{mag}")?;
        } else if mag == "1" {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    Ok(())
}
