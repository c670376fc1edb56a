//! Apparentness of trailing and leading singularities via the ε-lift.
//!
//! The lifted operator has coefficients `a_i(z + ε)`, so its trailing
//! coefficient never vanishes as a polynomial in `ε`. Running the recurrence
//! downward from unit windows at `q = σ + n` yields `d` rational functions of
//! `ε` at `σ`; their principal parts at `ε = 0` carry every linear relation
//! that initial Taylor data must satisfy for the value at `σ` to be pole-free.

use std::collections::VecDeque;

use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::field::{Field, Rat};
use crate::algebra::laurent::laurent_expand;
use crate::algebra::linalg::rref;
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::roots::cauchy_root_bound;
use crate::error::{Error, Result};
use crate::shiftop::ShiftOp;

/// Values at `σ` of the lifted recurrence started from the unit windows at
/// `σ + offset, ..., σ + offset + d - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSet<K> {
    pub sigma: K,
    pub offset: usize,
    pub values: Vec<RatFun<K>>,
}

impl<K: Field> RSet<K> {
    pub fn is_pole_free(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.is_zero() || v.den().coeff(0) != K::zero())
    }

    /// Largest pole order at `ε = 0` among the values.
    pub fn max_pole_order(&self) -> usize {
        self.values
            .iter()
            .filter(|v| !v.is_zero())
            .map(|v| v.den().valuation().unwrap())
            .max()
            .unwrap_or(0)
    }
}

/// Homogeneous linear relations on the initial Taylor coefficients `F_(i,j)`
/// (coefficient of `ε^j` at position `q + i`), in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationMatrix<K> {
    pub columns: Vec<(usize, usize)>,
    pub rows: Vec<Vec<K>>,
}

impl<K: Field> RelationMatrix<K> {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Whether `row` (over the same columns) lies in the row space.
    pub fn spans(&self, row: &[K]) -> bool {
        let mut all = self.rows.clone();
        all.push(row.to_vec());
        rref(all).len() == self.rows.len()
    }
}

fn lifted_polys<K: Field>(op: &ShiftOp) -> Result<Vec<Poly<K>>> {
    Ok(op.poly_coeffs()?.iter().map(|p| p.lift()).collect())
}

fn check_t_singularity<K: Field>(a0: &Poly<K>, sigma: &K) -> Result<()> {
    if a0.is_zero() {
        return Err(Error::ZeroTrailingCoefficient);
    }
    if !a0.eval(sigma).is_zero() {
        return Err(Error::NotASingularity {
            point: sigma.to_string(),
            kind: "t",
        });
    }
    Ok(())
}

/// Offset `n` such that `q = σ + n` lies beyond every root of `a_0` and of
/// `a_d(z - d)` congruent to `σ`, and `Re q` exceeds the singularity bound.
pub fn choose_q<K: Field>(op: &ShiftOp, sigma: &K) -> Result<usize> {
    let coeffs = lifted_polys::<K>(op)?;
    let a0 = &coeffs[0];
    check_t_singularity(a0, sigma)?;
    let data = op.singularity_data()?;
    let b0 = cauchy_root_bound(&data.t_poly)?;
    let bl = if data.l_poly.is_constant() {
        Rat::zero()
    } else {
        cauchy_root_bound(&data.l_poly)?
    };
    let l_poly: Poly<K> = data.l_poly.lift();
    // |σ| <= b0 and every congruent root has modulus <= max(b0, bl).
    let m_limit = (b0.clone() + b0.clone().max(bl)).ceil().to_integer().to_usize().unwrap_or(0);
    let mut last_hit = None;
    for m in 0..=m_limit {
        let z = sigma.clone() + K::from_i64(m as i64);
        if a0.eval(&z).is_zero() || (!l_poly.is_constant() && l_poly.eval(&z).is_zero()) {
            last_hit = Some(m);
        }
    }
    let from_roots = last_hit.map_or(0, |m| m + 1);
    let re_sigma = sigma.real_part_lower_bound().unwrap_or(-b0);
    let kappa = data
        .kappa_upper
        .expect("a t-singularity exists, so the bound is defined");
    // smallest n with re_sigma + n > kappa
    let gap = kappa - re_sigma;
    let from_kappa = if gap < Rat::zero() {
        0
    } else {
        (gap.floor().to_integer() + 1u32).to_usize().unwrap()
    };
    Ok(from_roots.max(from_kappa).max(1))
}

/// Value at `σ` of the lifted solution whose values at `σ + n + i` are
/// `window[i]`, `0 <= i < d`.
pub fn propagate<K: Field>(
    op: &ShiftOp,
    sigma: &K,
    n: usize,
    windows: &[Vec<RatFun<K>>],
) -> Result<Vec<RatFun<K>>> {
    let coeffs = lifted_polys::<K>(op)?;
    let d = op.order();
    if coeffs[0].is_zero() {
        return Err(Error::ZeroTrailingCoefficient);
    }
    for w in windows {
        if w.len() != d {
            return Err(Error::WindowLength {
                got: w.len(),
                want: d,
            });
        }
    }
    let mut seqs: Vec<VecDeque<RatFun<K>>> =
        windows.iter().map(|w| w.iter().cloned().collect()).collect();
    for step in (0..n).rev() {
        let z0 = sigma.clone() + K::from_i64(step as i64);
        // a_i(z0 + ε) as polynomials in ε
        let lifted: Vec<RatFun<K>> = coeffs
            .iter()
            .map(|c| RatFun::from_poly(c.shift(&z0)))
            .collect();
        let inv_a0 = lifted[0].recip();
        for seq in seqs.iter_mut() {
            let mut acc = RatFun::zero();
            for i in 1..=d {
                if !lifted[i].is_zero() && !seq[i - 1].is_zero() {
                    acc = &acc + &(&lifted[i] * &seq[i - 1]);
                }
            }
            let val = -(&acc * &inv_a0);
            seq.push_front(val);
            seq.truncate(d);
        }
    }
    Ok(seqs.into_iter().map(|mut s| s.pop_front().unwrap()).collect())
}

/// The set `R_{q,σ}` for `q = σ + n`.
pub fn r_set<K: Field>(op: &ShiftOp, sigma: &K, n: usize) -> Result<RSet<K>> {
    if n == 0 {
        return Err(Error::Inconsistent("offset must be positive".into()));
    }
    let d = op.order();
    let windows: Vec<Vec<RatFun<K>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { RatFun::one() } else { RatFun::zero() })
                .collect()
        })
        .collect();
    let values = propagate(op, sigma, n, &windows)?;
    Ok(RSet {
        sigma: sigma.clone(),
        offset: n,
        values,
    })
}

/// Linear relations `C_{q,σ}` for `q = σ + n`, read off the principal parts
/// of `R_{q,σ}`: the generic value at `σ` is `sum F_(i,j) ε^j Φ_i(σ)`.
pub fn c_relations<K: Field>(op: &ShiftOp, sigma: &K, n: usize) -> Result<RelationMatrix<K>> {
    let rs = r_set(op, sigma, n)?;
    Ok(relations_from_rset(&rs))
}

pub fn relations_from_rset<K: Field>(rs: &RSet<K>) -> RelationMatrix<K> {
    let d = rs.values.len();
    let big_n = rs.max_pole_order();
    let columns: Vec<(usize, usize)> = (0..big_n)
        .flat_map(|j| (0..d).map(move |i| (i, j)))
        .collect();
    if big_n == 0 {
        return RelationMatrix {
            columns,
            rows: Vec::new(),
        };
    }
    let parts: Vec<_> = rs.values.iter().map(|v| laurent_expand(v, -1)).collect();
    let rows: Vec<Vec<K>> = (1..=big_n as i64)
        .map(|m| {
            let k = -m;
            columns
                .iter()
                .map(|&(i, j)| parts[i].coeff(k - j as i64))
                .collect()
        })
        .collect();
    RelationMatrix {
        columns,
        rows: rref(rows),
    }
}

/// Whether the t-singularity `σ` is apparent.
pub fn is_apparent_t<K: Field>(op: &ShiftOp, sigma: &K) -> Result<bool> {
    let n = choose_q(op, sigma)?;
    Ok(r_set(op, sigma, n)?.is_pole_free())
}

/// Whether the l-singularity `σ` (a root of `a_d(z - d)`) is apparent,
/// decided on the image under `z -> -z, E -> 1/E` at `-σ`.
pub fn is_apparent_l<K: Field>(op: &ShiftOp, sigma: &K) -> Result<bool> {
    let l_poly: Poly<K> = op.l_poly()?.lift();
    if l_poly.is_zero() || !l_poly.eval(sigma).is_zero() {
        return Err(Error::NotASingularity {
            point: sigma.to_string(),
            kind: "l",
        });
    }
    let phi = op.automorphism()?;
    is_apparent_t(&phi, &(-sigma.clone()))
}

/// Apparentness of every rational t-singularity, ascending.
pub fn classify_rational_t(op: &ShiftOp) -> Result<Vec<(Rat, bool)>> {
    let data = op.singularity_data()?;
    data.t_sings
        .values()
        .map(|s| Ok((s.clone(), is_apparent_t(op, s)?)))
        .collect()
}

/// Apparentness of every rational l-singularity, ascending.
pub fn classify_rational_l(op: &ShiftOp) -> Result<Vec<(Rat, bool)>> {
    let data = op.singularity_data()?;
    data.l_sings
        .values()
        .map(|s| Ok((s.clone(), is_apparent_l(op, s)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algnum::AlgNum;
    use crate::algebra::field::rat;
    use std::sync::Arc;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn op(cs: &[&[i64]]) -> ShiftOp {
        ShiftOp::from_polys(cs.iter().map(|c| p(c)).collect())
    }

    fn ex1() -> ShiftOp {
        op(&[&[2, 3, 1], &[21, 2, -3], &[0, -1, 1]])
    }

    fn ex2() -> ShiftOp {
        // (z-3)(z-2) E + z(z-1)
        op(&[&[0, -1, 1], &[6, -5, 1]])
    }

    fn fromex2() -> ShiftOp {
        // (2z-1)(z-1) E^2 + (2z^3 - 9z^2 + 5z - 1) E + z(2z+1)
        op(&[&[0, 1, 2], &[-1, 5, -9, 2], &[1, -3, 2]])
    }

    #[test]
    fn choose_q_examples() {
        assert_eq!(choose_q(&ex1(), &rat(-1)).unwrap(), 5);
        let n = choose_q(&fromex2(), &rat(0)).unwrap();
        assert_eq!(n, 4);
        // a_0 = z, a_1 = 1: only the bound matters
        assert_eq!(choose_q(&op(&[&[0, 1], &[1]]), &rat(0)).unwrap(), 1);
        assert!(choose_q(&ex1(), &rat(5)).is_err());
    }

    #[test]
    fn example_one_relation() {
        let rel = c_relations(&ex1(), &rat(-1), 5).unwrap();
        assert_eq!(rel.columns, vec![(0, 0), (1, 0)]);
        assert_eq!(rel.rows.len(), 1);
        assert!(rel.spans(&[rat(20), rat(-39)]));
        let rs = r_set(&ex1(), &rat(-1), 5).unwrap();
        assert_eq!(rs.max_pole_order(), 1);
        let res: Vec<Rat> = rs.values.iter().map(|v| laurent_expand(v, -1).coeff(-1)).collect();
        assert_eq!(res[0].clone() * rat(-39), res[1].clone() * rat(20));
    }

    #[test]
    fn example_two_empty() {
        assert!(c_relations(&ex2(), &rat(1), 3).unwrap().is_empty());
        assert!(c_relations(&ex2(), &rat(0), 4).unwrap().is_empty());
        assert!(r_set(&ex2(), &rat(0), 4).unwrap().is_pole_free());
    }

    #[test]
    fn apparentness_table() {
        assert!(is_apparent_t(&ex2(), &rat(0)).unwrap());
        assert!(is_apparent_t(&ex2(), &rat(1)).unwrap());
        assert!(!is_apparent_t(&ex1(), &rat(-1)).unwrap());
        let exar = ShiftOp::from_polys(vec![
            -(&(&p(&[1, 1]) * &p(&[0, 1])) * &p(&[-2, 1]).pow(2)),
            &p(&[2, 1]).pow(2) * &p(&[-1, 1]).pow(2),
        ]);
        for s in [-1, 0, 2] {
            assert!(!is_apparent_t(&exar, &rat(s)).unwrap(), "sigma {s}");
        }
    }

    #[test]
    fn l_apparentness() {
        let ex5 = op(&[&[0, -1], &[-2, 1]]);
        assert!(is_apparent_l(&ex5, &rat(3)).unwrap());
        assert!(is_apparent_t(&ex5, &rat(0)).unwrap());
        let rec = op(&[&[-289, -833, -800, -256], &[-224, -512], &[1, 32, 256]]);
        assert!(is_apparent_l(&rec, &crate::algebra::field::ratio(31, 16)).unwrap());
        assert!(is_apparent_l(&ex5, &rat(2)).is_err());
    }

    #[test]
    fn algebraic_points() {
        // y = z^2 + 2 solves (z^2+2) E - (z^2+2z+3); its t-singularities
        // -1 ± sqrt(-2) are apparent. For y = 1/(z^2+2) they are not.
        let m = Arc::new(p(&[2, 0, 1]));
        let a = AlgNum::generator(m);
        let sigma = a.clone() - AlgNum::one();
        let entire = op(&[&[-3, -2, -1], &[2, 0, 1]]);
        assert!(is_apparent_t(&entire, &sigma).unwrap());
        let poles = op(&[&[-2, 0, -1], &[3, 2, 1]]);
        assert!(!is_apparent_t(&poles, &a).unwrap());
    }
}
