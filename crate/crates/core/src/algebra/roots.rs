//! Root bounds, rational root extraction and dispersion.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{ceil_int, Rat};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Rational roots with multiplicities, plus the part of the polynomial that
/// has no rational roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalRoots {
    /// Sorted ascending.
    pub roots: Vec<(Rat, usize)>,
    /// Monic cofactor free of rational roots.
    pub cofactor: Poly<Rat>,
}

impl RationalRoots {
    pub fn values(&self) -> impl Iterator<Item = &Rat> {
        self.roots.iter().map(|(r, _)| r)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.roots.iter().any(|(r, _)| r == x)
    }

    pub fn max(&self) -> Option<&Rat> {
        self.roots.last().map(|(r, _)| r)
    }

    pub fn min(&self) -> Option<&Rat> {
        self.roots.first().map(|(r, _)| r)
    }

    /// Whether the polynomial splits into linear factors over `Q`.
    pub fn splits(&self) -> bool {
        self.cofactor.is_constant()
    }
}

/// `1 + max |c_i| / |c_deg|`, a bound on the modulus of every complex root.
pub fn cauchy_root_bound(p: &Poly<Rat>) -> Result<Rat> {
    let n = p.degree().ok_or(Error::ZeroInput("cauchy_root_bound"))?;
    if n == 0 {
        return Err(Error::ConstantPolynomial("cauchy_root_bound"));
    }
    let lc = p.leading_coeff().abs();
    let m = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rat::zero);
    Ok(Rat::one() + m / lc)
}

const TRIAL_LIMIT: u64 = 1_000_000;
const SCAN_LIMIT: u64 = 2_000_000;

/// Prime factorization by trial division up to `TRIAL_LIMIT`. The boolean is
/// false when a cofactor above `TRIAL_LIMIT^2` could not be certified prime;
/// that cofactor is then reported as a single factor.
fn factor(n: &BigUint) -> (Vec<(BigUint, u32)>, bool) {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigUint::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut certain = true;
    if n > BigUint::one() {
        let lim = BigUint::from(TRIAL_LIMIT);
        certain = n <= &lim * &lim;
        out.push((n, 1));
    }
    (out, certain)
}

fn divisors(n: &BigUint) -> (Vec<BigUint>, bool) {
    let (fs, certain) = factor(n);
    let mut divs = vec![BigUint::one()];
    for (p, e) in fs {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    (divs, certain)
}

fn eval_int_at(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    // sum c_i num^i den^(n-i)
    let n = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    let mut terms = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        terms[i] = &coeffs[i] * &dpow;
        dpow *= den;
    }
    for t in terms.iter().rev() {
        acc = acc * num + t;
    }
    acc
}

/// All rational roots of `p` with multiplicities, by the rational root
/// theorem with exact verification.
pub fn rational_roots(p: &Poly<Rat>) -> Result<RationalRoots> {
    if p.is_zero() {
        return Err(Error::ZeroInput("rational_roots"));
    }
    let mut rest = p.monic();
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    let v0 = rest.valuation().unwrap();
    if v0 > 0 {
        roots.push((Rat::zero(), v0));
        rest = Poly::new(rest.coeffs()[v0..].to_vec());
    }
    if rest.degree().unwrap() >= 1 {
        let sqf = rest.squarefree()?;
        let ints = sqf.integer_coeffs();
        let bound = cauchy_root_bound(&sqf)?;
        let c0 = ints[0].magnitude().clone();
        let lc = ints.last().unwrap().magnitude().clone();
        let (num_divs, num_ok) = divisors(&c0);
        let (den_divs, den_ok) = divisors(&lc);
        if !den_ok {
            return Err(Error::RootSearchTooLarge(p.to_string()));
        }
        let mut found = Vec::new();
        for v in &den_divs {
            let v = BigInt::from(v.clone());
            let max_num = ceil_int(&(bound.clone() * Rat::from_integer(v.clone())));
            let candidates: Vec<BigInt> = if num_ok {
                num_divs
                    .iter()
                    .map(|u| BigInt::from(u.clone()))
                    .filter(|u| u <= &max_num)
                    .collect()
            } else {
                let lim = max_num.to_u64().filter(|&m| m <= SCAN_LIMIT).ok_or_else(|| {
                    Error::RootSearchTooLarge(p.to_string())
                })?;
                let c0i = BigInt::from(c0.clone());
                (1..=lim)
                    .map(BigInt::from)
                    .filter(|u| c0i.is_multiple_of(u))
                    .collect()
            };
            for u in candidates {
                if !u.gcd(&v).is_one() {
                    continue;
                }
                for s in [-u.clone(), u] {
                    if eval_int_at(&ints, &s, &v).is_zero() {
                        found.push(Rat::new(s, v.clone()));
                    }
                }
            }
        }
        for r in found {
            let lin = Poly::linear_root(r.clone());
            let mut mult = 0;
            while let Ok((q, rem)) = rest.divrem(&lin) {
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RationalRoots {
        roots,
        cofactor: rest.monic(),
    })
}

/// Largest `n >= 0` such that some root of `a` equals `n` plus some root of
/// `b`; `0` when there is none.
pub fn dispersion(a: &Poly<Rat>, b: &Poly<Rat>) -> Result<u64> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("dispersion"));
    }
    if a.is_constant() || b.is_constant() {
        return Ok(0);
    }
    let limit = ceil_int(&(cauchy_root_bound(a)? + cauchy_root_bound(b)?))
        .to_u64()
        .ok_or_else(|| Error::Inconsistent("dispersion bound overflow".into()))?;
    let mut best = 0;
    for n in 0..=limit {
        let shifted = b.shift(&Rat::from_integer(BigInt::from(-(n as i64))));
        if a.gcd(&shifted)?.degree().unwrap() > 0 {
            best = n;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, ratio};

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn from_roots(rs: &[Rat]) -> Poly<Rat> {
        rs.iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r.clone()))
    }

    #[test]
    fn roots_examples() {
        let r = rational_roots(&p(&[0, -1, 1])).unwrap();
        assert_eq!(r.roots, vec![(rat(0), 1), (rat(1), 1)]);
        let r = rational_roots(&(&p(&[-1, 2]) * &p(&[-1, 1]))).unwrap();
        assert_eq!(r.roots, vec![(ratio(1, 2), 1), (rat(1), 1)]);
        let r = rational_roots(&p(&[1, 0, 1])).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.cofactor, p(&[1, 0, 1]));
        let r = rational_roots(&(&p(&[2, 1]).pow(2) * &p(&[-1, 1]).pow(3))).unwrap();
        assert_eq!(r.roots, vec![(rat(-2), 2), (rat(1), 3)]);
        assert!(rational_roots(&Poly::zero()).is_err());
    }

    #[test]
    fn roots_with_irrational_cofactor() {
        let q = &(&p(&[3, 1]) * &p(&[-2, 0, 1])) * &p(&[1, 16]);
        let r = rational_roots(&q).unwrap();
        assert_eq!(r.roots, vec![(rat(-3), 1), (ratio(-1, 16), 1)]);
        assert_eq!(r.cofactor, p(&[-2, 0, 1]));
        assert!(!r.splits());
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_root_bound(&p(&[2, -3, 1])).unwrap(), rat(4));
        assert_eq!(cauchy_root_bound(&p(&[-5, 1])).unwrap(), rat(6));
        assert!(cauchy_root_bound(&p(&[3])).is_err());
        // a_0 * a_d(z - d) for Example ex2 has roots {0, 1, 3, 4}
        let q = from_roots(&[rat(0), rat(1), rat(3), rat(4)]);
        assert!(cauchy_root_bound(&q).unwrap() >= rat(4));
    }

    #[test]
    fn dispersion_examples() {
        // roots {0,1} against {-2,-1}: largest difference 3
        let ad = from_roots(&[rat(0), rat(1)]);
        let a0 = from_roots(&[rat(-2), rat(-1)]);
        assert_eq!(dispersion(&ad, &a0).unwrap(), 3);
        let ad = from_roots(&[rat(3), rat(2)]);
        let a0 = from_roots(&[rat(0), rat(1)]);
        assert_eq!(dispersion(&ad, &a0).unwrap(), 3);
        let ad = from_roots(&[rat(-2), rat(-2), rat(1), rat(1)]);
        let a0 = from_roots(&[rat(-1), rat(0), rat(2), rat(2)]);
        assert_eq!(dispersion(&ad, &a0).unwrap(), 2);
        // no integer difference at all
        assert_eq!(dispersion(&p(&[0, 1]), &p(&[1, 2])).unwrap(), 0);
        // irrational roots still count: z^2+2 against (z+1)^2+2
        assert_eq!(dispersion(&p(&[2, 0, 1]), &p(&[3, 2, 1])).unwrap(), 1);
    }
}
