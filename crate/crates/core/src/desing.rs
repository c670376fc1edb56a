//! t-, l- and lt-desingularization of difference operators.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::field::Rat;
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::roots::dispersion;
use crate::error::{Error, Result};
use crate::shiftop::{content_primpart, ShiftOp};

/// Output of a one-sided desingularization.
#[derive(Clone, Debug, PartialEq)]
pub struct DesingResult {
    /// The desingularized operator in canonical normal form.
    pub output: ShiftOp,
    /// The operator before canonical scaling (`s*L + t*L3` for t-desing).
    pub bezout_form: ShiftOp,
    /// `output = cofactor * input`.
    pub cofactor: ShiftOp,
    /// Monic polynomial whose roots are the singularities removed from the
    /// relevant boundary coefficient (t-side: from `a_0`; l-side: from
    /// `a_d(z - d)`).
    pub removed_factor: Poly<Rat>,
    pub dispersion_used: u64,
}

fn cofactor_of(output: &ShiftOp, input: &ShiftOp) -> Result<ShiftOp> {
    let (q, r) = output.right_divrem(input)?;
    if !r.is_zero() {
        return Err(Error::Inconsistent(
            "desingularization is not right-divisible by the input".into(),
        ));
    }
    Ok(q)
}

/// Left multiple of `op` whose trailing coefficient is `gcd(a_0, b_0)`,
/// free of every apparent t-singularity.
pub fn t_desing(op: &ShiftOp) -> Result<DesingResult> {
    let coeffs = op.poly_coeffs()?;
    let a0 = coeffs.first().cloned().unwrap_or_else(Poly::zero);
    if a0.is_zero() {
        return Err(Error::ZeroTrailingCoefficient);
    }
    let ad = coeffs.last().unwrap().clone();
    let n = dispersion(&ad, &a0)?;

    let over_a0 = op.scale_left(&RatFun::from_poly(a0.clone()).recip());
    let mut l2 = over_a0.clone();
    for i in 1..=n as usize {
        let c = l2.coeff(i);
        if !c.is_zero() {
            l2 = &l2 - &over_a0.shift_left(i).scale_left(&c);
        }
    }

    let (_, prim) = content_primpart(l2.coeffs())?;
    let b0 = prim[0].clone();
    let mut den = Poly::one();
    for c in l2.coeffs() {
        den = den.lcm(c.den())?;
    }
    if den.monic() != b0.monic() {
        return Err(Error::Inconsistent(
            "trailing coefficient of the primitive part differs from the denominator".into(),
        ));
    }
    let l3 = ShiftOp::from_polys(prim);

    let (g, s, t) = a0.gcdex(&b0)?;
    let raw = &op.scale_left(&RatFun::from_poly(s)) + &l3.scale_left(&RatFun::from_poly(t));
    let output = raw.canonical()?;
    let cofactor = cofactor_of(&output, op)?;
    Ok(DesingResult {
        output,
        bezout_form: raw,
        cofactor,
        removed_factor: a0.div_exact(&g)?.monic(),
        dispersion_used: n,
    })
}

/// l-desingularization through the automorphism `z -> -z, E -> 1/E`, which
/// exchanges leading and trailing singularities.
pub fn l_desing(op: &ShiftOp) -> Result<DesingResult> {
    op.poly_coeffs()?;
    let phi = op.automorphism()?;
    let inner = t_desing(&phi)?;
    let output = inner.output.automorphism()?;
    let cofactor = cofactor_of(&output, op)?;
    Ok(DesingResult {
        output,
        bezout_form: inner.bezout_form.automorphism_raw(),
        cofactor,
        removed_factor: inner.removed_factor.reflect().monic(),
        dispersion_used: inner.dispersion_used,
    })
}

/// Output of [`desing_both`].
#[derive(Clone, Debug, PartialEq)]
pub struct BothResult {
    pub output: ShiftOp,
    pub cofactor: ShiftOp,
    pub t_part: DesingResult,
    pub l_part: DesingResult,
    /// Shift applied to the l-part: `output = L_t + E^m L_l`.
    pub m: usize,
}

/// `max(1, ord L_t - ord L_l + 1)`.
pub fn combine_shift(ord_t: usize, ord_l: usize) -> usize {
    (ord_t as i64 - ord_l as i64 + 1).max(1) as usize
}

/// Simultaneous t- and l-desingularization `L_t + E^m L_l`.
pub fn desing_both(op: &ShiftOp) -> Result<BothResult> {
    let t_part = t_desing(op)?;
    let l_part = l_desing(op)?;
    let m = combine_shift(t_part.output.order(), l_part.output.order());
    let sum = &t_part.output + &l_part.output.shift_left(m);
    let output = sum.canonical()?;
    let cofactor = cofactor_of(&output, op)?;
    Ok(BothResult {
        output,
        cofactor,
        t_part,
        l_part,
        m,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    T,
    L,
    LT,
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "t" => Ok(Side::T),
            "l" => Ok(Side::L),
            "lt" | "tl" => Ok(Side::LT),
            _ => Err(format!("unknown side '{s}' (expected t, l or lt)")),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::T => "t",
            Side::L => "l",
            Side::LT => "lt",
        })
    }
}

fn constant_coeff(c: &RatFun<Rat>) -> bool {
    !c.is_zero() && c.is_constant()
}

/// Whether a complete desingularization exists on `side`, with the operator
/// that witnesses it (or the best one found when it does not exist).
pub fn is_completely_desingularizable(op: &ShiftOp, side: Side) -> Result<(bool, ShiftOp)> {
    match side {
        Side::T => {
            let r = t_desing(op)?;
            Ok((constant_coeff(&r.output.trailing()), r.output))
        }
        Side::L => {
            let r = l_desing(op)?;
            Ok((constant_coeff(&r.output.leading()), r.output))
        }
        Side::LT => {
            let r = desing_both(op)?;
            let ok = constant_coeff(&r.t_part.output.trailing())
                && constant_coeff(&r.l_part.output.leading());
            Ok((ok, r.output))
        }
    }
}
