//! Scalar fields used as polynomial coefficients.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// An exact commutative field containing the rationals.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;

    /// The element as a rational number, if it is one.
    fn to_rat(&self) -> Option<Rat>;

    /// A certified lower bound on the real part, when one is known without
    /// further context.
    fn real_part_lower_bound(&self) -> Option<Rat> {
        self.to_rat()
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&rat(n))
    }

    /// A faster monic gcd for fields that have one.
    fn fast_gcd(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }
}

impl Field for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }

    fn fast_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        Some(super::poly::rat_gcd(a, b))
    }
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Scales `row` to coprime integers whose first nonzero entry is positive.
pub fn primitive_integer_row(row: &[Rat]) -> Vec<BigInt> {
    use num_integer::Integer;
    use num_traits::Signed;
    let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = row.iter().map(|r| (r * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
