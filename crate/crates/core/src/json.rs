//! Lossless JSON encoding of operators.
//!
//! `{"ring": "shift", "coeffs": [[num, den], ...]}` where entry `i` is the
//! coefficient of the `i`-th power of the generator and `num`, `den` list
//! polynomial coefficients in ascending powers of `z` as exact rational
//! strings such as `"-81/32"`.

use serde::{Deserialize, Serialize};

use crate::algebra::field::{parse_rat, Rat};
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::text::OperatorRing;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub ring: String,
    pub coeffs: Vec<[Vec<String>; 2]>,
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    parse_rat(s).ok_or_else(|| Error::Encoding(format!("not a rational number: '{s}'")))
}

fn poly_strings(p: &Poly<Rat>) -> Vec<String> {
    p.coeffs().iter().map(rat_to_string).collect()
}

fn poly_from(v: &[String]) -> Result<Poly<Rat>> {
    Ok(Poly::new(v.iter().map(|s| rat_from_str(s)).collect::<Result<_>>()?))
}

pub fn to_json<R: OperatorRing>(op: &R) -> OperatorJson {
    OperatorJson {
        ring: R::NAME.to_string(),
        coeffs: op
            .coefficients()
            .iter()
            .map(|c| [poly_strings(c.num()), poly_strings(c.den())])
            .collect(),
    }
}

pub fn from_json<R: OperatorRing>(j: &OperatorJson) -> Result<R> {
    if j.ring != R::NAME {
        return Err(Error::Encoding(format!(
            "expected ring '{}', found '{}'",
            R::NAME,
            j.ring
        )));
    }
    let mut coeffs = Vec::with_capacity(j.coeffs.len());
    for [num, den] in &j.coeffs {
        let den = poly_from(den)?;
        if den.is_zero() {
            return Err(Error::Encoding("zero denominator".into()));
        }
        coeffs.push(RatFun::new(poly_from(num)?, den));
    }
    Ok(R::from_coefficients(coeffs))
}

pub fn to_json_string<R: OperatorRing>(op: &R) -> String {
    serde_json::to_string(&to_json(op)).expect("operator JSON is always serializable")
}

pub fn from_json_str<R: OperatorRing>(s: &str) -> Result<R> {
    let j: OperatorJson = serde_json::from_str(s).map_err(|e| Error::Encoding(e.to_string()))?;
    from_json(&j)
}
