//! Simple algebraic extensions `Q[a]/(m(a))`.
//!
//! The modulus must be monic and irreducible over `Q`; elements that fail to
//! invert expose a reducible modulus and cause a panic naming the factor.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::{Field, Rat};
use super::poly::Poly;

/// An element of `Q[a]/(m)`. Purely rational elements (such as those from
/// `zero()`/`one()`) carry no modulus and adopt the modulus of whatever they
/// are combined with.
#[derive(Clone, Debug)]
pub struct AlgNum {
    modulus: Option<Arc<Poly<Rat>>>,
    rep: Poly<Rat>,
}

impl AlgNum {
    /// Reduces `rep` modulo `modulus`. Panics unless the modulus is monic of
    /// positive degree.
    pub fn new(rep: Poly<Rat>, modulus: Arc<Poly<Rat>>) -> Self {
        assert!(
            modulus.degree().is_some_and(|d| d >= 1) && modulus.leading_coeff().is_one(),
            "modulus must be monic of positive degree"
        );
        let rep = rep.rem(&modulus).unwrap();
        AlgNum {
            modulus: Some(modulus),
            rep,
        }
    }

    /// The class of the variable, i.e. a root of `modulus`.
    pub fn generator(modulus: Arc<Poly<Rat>>) -> Self {
        Self::new(Poly::x(), modulus)
    }

    pub fn rational(r: Rat) -> Self {
        AlgNum {
            modulus: None,
            rep: Poly::constant(r),
        }
    }

    pub fn rep(&self) -> &Poly<Rat> {
        &self.rep
    }

    pub fn modulus(&self) -> Option<&Poly<Rat>> {
        self.modulus.as_deref()
    }

    fn join(&self, other: &Self) -> Option<Arc<Poly<Rat>>> {
        match (&self.modulus, &other.modulus) {
            (Some(a), Some(b)) => {
                assert!(Arc::ptr_eq(a, b) || a == b, "mixing different algebraic extensions");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn build(rep: Poly<Rat>, modulus: Option<Arc<Poly<Rat>>>) -> Self {
        match modulus {
            Some(m) => Self::new(rep, m),
            None => AlgNum { modulus: None, rep },
        }
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Zero for AlgNum {
    fn zero() -> Self {
        AlgNum {
            modulus: None,
            rep: Poly::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl One for AlgNum {
    fn one() -> Self {
        Self::rational(Rat::one())
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: AlgNum) -> AlgNum {
        let m = self.join(&rhs);
        AlgNum {
            modulus: m,
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: AlgNum) -> AlgNum {
        let m = self.join(&rhs);
        AlgNum {
            modulus: m,
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl Mul for AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: AlgNum) -> AlgNum {
        let m = self.join(&rhs);
        Self::build(&self.rep * &rhs.rep, m)
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum {
            modulus: self.modulus,
            rep: -self.rep,
        }
    }
}

impl Div for AlgNum {
    type Output = AlgNum;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: AlgNum) -> AlgNum {
        self * rhs.inv()
    }
}

impl Field for AlgNum {
    fn from_rat(r: &Rat) -> Self {
        Self::rational(r.clone())
    }

    fn to_rat(&self) -> Option<Rat> {
        self.rep.is_constant().then(|| self.rep.coeff(0))
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in algebraic extension");
        match &self.modulus {
            None => Self::rational(self.rep.coeff(0).recip()),
            Some(m) if self.rep.is_constant() => {
                Self::new(Poly::constant(self.rep.coeff(0).recip()), m.clone())
            }
            Some(m) => {
                let (g, s, _) = self.rep.gcdex(m).unwrap();
                assert!(g.is_one(), "modulus {m} is reducible: shares factor {g}");
                Self::new(s, m.clone())
            }
        }
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.display("a"))
    }
}
