//! Local analysis and desingularization of differential operators.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::field::{rat, Rat};
use crate::algebra::laurent::laurent_expand_at;
use crate::algebra::linalg::{det_poly, rank};
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::roots::rational_roots;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};

/// Indicial data and power-series solution count at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalData {
    pub point: Rat,
    /// Indicial polynomial in the exponent variable `s`.
    pub indicial: Poly<Rat>,
    /// Rational roots of the indicial polynomial with multiplicities.
    pub exponents: Vec<(Rat, usize)>,
    /// Dimension of the power-series solution space at `point`.
    pub series_dim: usize,
    /// Truncation order used for `series_dim`.
    pub truncation: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    Ordinary,
    Apparent,
    NotApparent,
}

/// Coefficients `Q_j(s)` of `L((z-p)^s) = sum_j Q_j(s) (z-p)^(s+mu+j)`
/// after clearing denominators; `Q_0` is the indicial polynomial.
struct LocalRecurrence {
    q: Vec<Poly<Rat>>,
}

fn falling(i: usize) -> Poly<Rat> {
    (0..i).fold(Poly::one(), |acc, k| &acc * &Poly::linear_root(rat(k as i64)))
}

fn local_recurrence(op: &DiffOp, p: &Rat) -> Result<LocalRecurrence> {
    if op.is_zero() {
        return Err(Error::ZeroInput("local_exponents"));
    }
    let shifted: Vec<RatFun<Rat>> = op.coeffs().iter().map(|c| c.shift(p)).collect();
    let mut den = Poly::one();
    for c in &shifted {
        den = den.lcm(c.den())?;
    }
    let polys: Vec<Poly<Rat>> = shifted
        .iter()
        .map(|c| (c * &RatFun::from_poly(den.clone())).to_poly().unwrap())
        .collect();
    let mut mu = i64::MAX;
    let mut top = i64::MIN;
    for (i, pi) in polys.iter().enumerate() {
        if let (Some(v), Some(d)) = (pi.valuation(), pi.degree()) {
            mu = mu.min(v as i64 - i as i64);
            top = top.max(d as i64 - i as i64);
        }
    }
    let ff: Vec<Poly<Rat>> = (0..polys.len()).map(falling).collect();
    let q = (0..=(top - mu) as usize)
        .map(|j| {
            polys.iter().enumerate().fold(Poly::zero(), |acc, (i, pi)| {
                let k = mu + i as i64 + j as i64;
                if k < 0 {
                    return acc;
                }
                &acc + &ff[i].scale(&pi.coeff(k as usize))
            })
        })
        .collect();
    Ok(LocalRecurrence { q })
}

fn max_nonneg_int_exponent(exps: &[(Rat, usize)]) -> Option<usize> {
    exps.iter()
        .filter(|(r, _)| r.is_integer() && !r.is_negative())
        .filter_map(|(r, _)| r.to_integer().to_usize())
        .max()
}

/// Smallest truncation order accepted by [`series_solution_dim`].
pub fn required_truncation(op: &DiffOp, p: &Rat) -> Result<usize> {
    let rec = local_recurrence(op, p)?;
    let exps = rational_roots(&rec.q[0])?.roots;
    Ok(max_nonneg_int_exponent(&exps).unwrap_or(0) + op.order() + 2)
}

fn series_dim_from(rec: &LocalRecurrence, t: usize) -> usize {
    let rows: Vec<Vec<Rat>> = (0..t)
        .map(|n| {
            let mut row = vec![Rat::zero(); t];
            for (j, qj) in rec.q.iter().enumerate().take(n + 1) {
                let m = n - j;
                row[m] = qj.eval(&rat(m as i64));
            }
            row
        })
        .collect();
    t - rank(rows)
}

/// Dimension of the space of solutions in `Q[[z-p]]`, from the linear
/// system on the first `t` coefficients.
pub fn series_solution_dim(op: &DiffOp, p: &Rat, t: usize) -> Result<usize> {
    let required = required_truncation(op, p)?;
    if t < required {
        return Err(Error::TruncationTooSmall { given: t, required });
    }
    Ok(series_dim_from(&local_recurrence(op, p)?, t))
}

pub fn local_exponents(op: &DiffOp, p: &Rat) -> Result<LocalData> {
    let rec = local_recurrence(op, p)?;
    let indicial = rec.q[0].clone();
    let exponents = rational_roots(&indicial)?.roots;
    let truncation = max_nonneg_int_exponent(&exponents).unwrap_or(0) + op.order() + 2;
    Ok(LocalData {
        point: p.clone(),
        series_dim: series_dim_from(&rec, truncation),
        indicial,
        exponents,
        truncation,
    })
}

fn is_pole(op: &DiffOp, p: &Rat) -> bool {
    op.coeffs().iter().any(|c| c.den().eval(p).is_zero())
}

/// Rational singular points of the monic form, and the monic part of the
/// denominator that has no rational roots.
pub fn singular_points(op: &DiffOp) -> Result<(Vec<Rat>, Poly<Rat>)> {
    let m = op.monic()?;
    let mut den = Poly::one();
    for c in m.coeffs() {
        den = den.lcm(c.den())?;
    }
    if den.is_constant() {
        return Ok((Vec::new(), Poly::one()));
    }
    let r = rational_roots(&den)?;
    Ok((r.values().cloned().collect(), r.cofactor))
}

/// Distinct non-negative integer exponents, ascending; `None` otherwise.
fn integer_exponents(data: &LocalData, n: usize) -> Option<Vec<usize>> {
    if data.exponents.len() != n || data.exponents.iter().any(|(_, k)| *k != 1) {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for (r, _) in &data.exponents {
        if !r.is_integer() || r.is_negative() {
            return None;
        }
        out.push(r.to_integer().to_usize()?);
    }
    Some(out)
}

pub fn classify_point(op: &DiffOp, p: &Rat) -> Result<PointClass> {
    let m = op.monic()?;
    if !is_pole(&m, p) {
        return Ok(PointClass::Ordinary);
    }
    let data = local_exponents(&m, p)?;
    if data.series_dim < m.order() {
        return Ok(PointClass::NotApparent);
    }
    if integer_exponents(&data, m.order()).is_none() {
        return Err(Error::Inconsistent(format!(
            "full power-series solution space at {p} but exponents are not distinct non-negative integers"
        )));
    }
    Ok(PointClass::Apparent)
}

/// True at ordinary points and apparent singularities.
pub fn is_apparent_diff(op: &DiffOp, p: &Rat) -> Result<bool> {
    Ok(classify_point(op, p)? != PointClass::NotApparent)
}

/// The monic operator of order `fs.len()` whose solution space is spanned
/// by `fs`.
pub fn annihilator_of_ratfuns(fs: &[RatFun<Rat>]) -> Result<DiffOp> {
    let k = fs.len();
    let den = fs
        .iter()
        .try_fold(Poly::one(), |acc, f| acc.lcm(f.den()))?;
    let dden = den.derivative();
    // rows[r][j] = den^(r+1) * f_j^(r)
    let mut rows: Vec<Vec<Poly<Rat>>> = vec![fs
        .iter()
        .map(|f| f.num() * &den.div_exact(f.den()).unwrap())
        .collect()];
    for r in 0..k {
        let next = rows[r]
            .iter()
            .map(|nr| &(&nr.derivative() * &den) - &(nr * &dden).scale(&rat(r as i64 + 1)))
            .collect();
        rows.push(next);
    }
    let minor = |skip: usize| {
        det_poly(
            rows.iter()
                .enumerate()
                .filter(|&(r, _)| r != skip)
                .map(|(_, row)| row.clone())
                .collect(),
        )
    };
    let w = minor(k);
    if w.is_zero() {
        return Err(Error::LinearlyDependent);
    }
    let mut coeffs = Vec::with_capacity(k + 1);
    for i in 0..k {
        let mut num = minor(i);
        if (k - i) % 2 == 1 {
            num = -num;
        }
        coeffs.push(RatFun::new(num, &w * &den.pow((k - i) as u32)));
    }
    coeffs.push(RatFun::constant(rat(1)));
    Ok(DiffOp::new(coeffs))
}

/// A function with poles only at the given points whose Laurent expansion
/// at each `p` agrees with that of `a` below exponent `M(p)`.
pub fn jet_match(a: &RatFun<Rat>, points: &[(Rat, usize)]) -> Result<RatFun<Rat>> {
    for (i, (p, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(q, _)| q == p) {
            return Err(Error::Inconsistent(format!("point {p} listed twice")));
        }
    }
    let pole = |p: &Rat| -> usize { a.order_at(p).map_or(0, |o| (-o).max(0) as usize) };
    let mut den = Poly::one();
    for (p, _) in points {
        den = &den * &Poly::linear_root(p.clone()).pow(pole(p) as u32);
    }
    let g = a * &RatFun::from_poly(den.clone());
    let mut num = Poly::zero();
    let mut modulus = Poly::one();
    for (p, m) in points {
        let k = m + pole(p);
        if k == 0 {
            continue;
        }
        let e = laurent_expand_at(&g, p, k as i64 - 1);
        let local = Poly::from_rats(&(0..k as i64).map(|j| e.coeff(j)).collect::<Vec<_>>());
        let residue = local.shift(&-p.clone());
        let mp = Poly::linear_root(p.clone()).pow(k as u32);
        // combine num mod modulus with residue mod mp
        let (_, s, _) = modulus.gcdex(&mp)?;
        let corr = (&(&residue - &num) * &s).rem(&mp)?;
        num = &num + &(&modulus * &corr);
        modulus = &modulus * &mp;
    }
    Ok(RatFun::new(num, den))
}

/// Result of [`d_desing`].
#[derive(Clone, Debug, PartialEq)]
pub struct DDesingResult {
    /// Monic desingularization `L3 * L`.
    pub output: DiffOp,
    /// `output` with denominators cleared and content removed.
    pub cleared: DiffOp,
    /// Apparent singularities that were removed.
    pub apparent: Vec<Rat>,
    /// Highest exponent over the apparent singularities.
    pub max_exponent: Option<usize>,
    /// The auxiliary polynomials `y_j`.
    pub ys: Vec<Poly<Rat>>,
    /// Annihilator of the `L(y_j)`.
    pub l1: DiffOp,
    /// Left factor actually used: `output = l3 * L`.
    pub l3: DiffOp,
}

fn max_pole_order(op: &DiffOp, p: &Rat) -> usize {
    op.coeffs()
        .iter()
        .filter_map(|c| c.order_at(p))
        .map(|o| (-o).max(0) as usize)
        .max()
        .unwrap_or(0)
}

/// Removes every apparent singularity of `op` by a left multiple of
/// minimal order.
pub fn d_desing(op: &DiffOp) -> Result<DDesingResult> {
    let l = op.monic()?;
    let n = l.order();
    let (sings, rest) = singular_points(&l)?;
    if !rest.is_constant() {
        return Err(Error::UnsupportedAlgebraicPoint(format!(
            "{rest} (singular points off the rationals)"
        )));
    }
    let mut apparent = Vec::new();
    let mut exps = Vec::new();
    for p in &sings {
        if classify_point(&l, p)? == PointClass::Apparent {
            let data = local_exponents(&l, p)?;
            exps.push(integer_exponents(&data, n).unwrap());
            apparent.push(p.clone());
        }
    }
    if apparent.is_empty() {
        return Ok(DDesingResult {
            cleared: l.cleared()?,
            output: l,
            apparent,
            max_exponent: None,
            ys: Vec::new(),
            l1: DiffOp::one(),
            l3: DiffOp::one(),
        });
    }
    let m = exps.iter().flat_map(|e| e.iter().copied()).max().unwrap();
    let k = m + 1 - n;
    let missing: Vec<Vec<usize>> = exps
        .iter()
        .map(|e| (0..=m).filter(|i| !e.contains(i)).collect())
        .collect();
    let ys: Vec<Poly<Rat>> = (0..k)
        .map(|j| {
            apparent.iter().zip(&missing).fold(Poly::one(), |acc, (p, miss)| {
                &acc * &Poly::linear_root(p.clone()).pow(miss[j] as u32)
            })
        })
        .collect();
    let images: Vec<RatFun<Rat>> = ys.iter().map(|y| l.apply(&RatFun::from_poly(y.clone()))).collect();
    let l1 = annihilator_of_ratfuns(&images)?;
    let points: Vec<(Rat, usize)> = apparent
        .iter()
        .map(|p| (p.clone(), (max_pole_order(&l, p) + k).saturating_sub(1)))
        .collect();
    let mut l3c = Vec::with_capacity(k + 1);
    for i in 0..k {
        l3c.push(jet_match(&l1.coeff(i), &points)?);
    }
    l3c.push(RatFun::constant(rat(1)));
    let l3 = DiffOp::new(l3c);
    let output = &l3 * &l;
    for p in &apparent {
        if is_pole(&output, p) {
            return Err(Error::Inconsistent(format!(
                "desingularization still has a pole at {p}"
            )));
        }
    }
    Ok(DDesingResult {
        cleared: output.cleared()?,
        output,
        apparent,
        max_exponent: Some(m),
        ys,
        l1,
        l3,
    })
}

/// True when a desingularization with polynomial coefficients and constant
/// leading coefficient exists; the witness is the cleared output.
pub fn is_completely_d_desingularizable(op: &DiffOp) -> Result<(bool, DiffOp)> {
    let r = d_desing(op)?;
    let lead = r.cleared.leading();
    Ok((lead.is_constant(), r.cleared))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::ratio;
    use crate::text::parse_diff;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn example_op() -> DiffOp {
        parse_diff("D^2 - (2/z)*D + 1 + 2/z^2").unwrap()
    }

    #[test]
    fn exponents() {
        let d = local_exponents(&example_op(), &rat(0)).unwrap();
        assert_eq!(d.exponents, vec![(rat(1), 1), (rat(2), 1)]);
        assert_eq!(d.series_dim, 2);
        let d = local_exponents(&example_op(), &rat(3)).unwrap();
        assert_eq!(d.exponents, vec![(rat(0), 1), (rat(1), 1)]);
        let d = local_exponents(&DiffOp::d_pow(2), &rat(0)).unwrap();
        assert_eq!(d.exponents, vec![(rat(0), 1), (rat(1), 1)]);
    }

    #[test]
    fn series_dims() {
        let l = example_op();
        assert_eq!(series_solution_dim(&l, &rat(0), 6).unwrap(), 2);
        assert_eq!(series_solution_dim(&l, &rat(0), 9).unwrap(), 2);
        assert!(matches!(
            series_solution_dim(&l, &rat(0), 3),
            Err(Error::TruncationTooSmall { required: 6, .. })
        ));
        assert_eq!(series_solution_dim(&parse_diff("D - 1").unwrap(), &rat(0), 5).unwrap(), 1);
        assert_eq!(series_solution_dim(&parse_diff("z*D - 1").unwrap(), &rat(0), 5).unwrap(), 1);
        assert_eq!(series_solution_dim(&parse_diff("2*z*D - 1").unwrap(), &rat(0), 5).unwrap(), 0);
    }

    #[test]
    fn apparentness() {
        assert_eq!(classify_point(&example_op(), &rat(0)).unwrap(), PointClass::Apparent);
        assert_eq!(classify_point(&example_op(), &rat(1)).unwrap(), PointClass::Ordinary);
        assert!(!is_apparent_diff(&parse_diff("z*D + 1").unwrap(), &rat(0)).unwrap());
        // z^2 D^2 - 2 z D + 2 has solutions z, z^2 with a logarithm-free basis
        assert!(is_apparent_diff(&parse_diff("z^2*D^2 - 2*z*D + 2").unwrap(), &rat(0)).unwrap());
        // exponents 0, 2 with a logarithm: (z D)^2 - 2 z D style resonance
        let log = parse_diff("z^2*D^2 - z*D + z").unwrap();
        assert!(!is_apparent_diff(&log, &rat(0)).unwrap());
    }

    #[test]
    fn annihilators() {
        let f = RatFun::new(p(&[2, 0, 1]), p(&[0, 0, 1]));
        let l1 = annihilator_of_ratfuns(&[f]).unwrap();
        assert_eq!(l1, parse_diff("D + 4/(z*(z^2+2))").unwrap());
        assert_eq!(annihilator_of_ratfuns(&[RatFun::constant(rat(1))]).unwrap(), DiffOp::d());
        let fs = [RatFun::x(), RatFun::from_poly(p(&[0, 0, 1]))];
        let l = annihilator_of_ratfuns(&fs).unwrap();
        assert_eq!(l.order(), 2);
        assert!(fs.iter().all(|f| l.apply(f).is_zero()));
        assert_eq!(
            annihilator_of_ratfuns(&[RatFun::x(), RatFun::from_poly(p(&[0, 3]))]),
            Err(Error::LinearlyDependent)
        );
    }

    #[test]
    fn jets() {
        let a = RatFun::new(p(&[4]), p(&[0, 2, 0, 1]));
        assert_eq!(jet_match(&a, &[(rat(0), 2)]).unwrap(), RatFun::new(p(&[2, 0, -1]), p(&[0, 1])));
        let b = RatFun::new(p(&[1]), p(&[1, 0, 1]));
        assert_eq!(jet_match(&b, &[(rat(0), 1)]).unwrap(), RatFun::constant(rat(1)));
        let c = RatFun::new(p(&[1, 1]), &p(&[0, 1]) * &p(&[-1, 1]).pow(2));
        let j = jet_match(&c, &[(rat(0), 2), (rat(1), 2), (ratio(1, 2), 2)]).unwrap();
        let diff = &j - &c;
        for (q, m) in [(rat(0), 2), (rat(1), 2), (ratio(1, 2), 2)] {
            assert!(diff.order_at(&q).is_none_or(|o| o >= m));
        }
    }

    #[test]
    fn example_desing() {
        let r = d_desing(&example_op()).unwrap();
        assert_eq!(r.apparent, vec![rat(0)]);
        assert_eq!(r.ys, vec![Poly::one()]);
        assert_eq!(r.l1, parse_diff("D + 4/(z*(z^2+2))").unwrap());
        assert_eq!(r.l3, parse_diff("D + 2/z - z").unwrap());
        let want = parse_diff("D^3 - z*D^2 + 3*D - z").unwrap();
        assert_eq!(r.output, want);
        assert_eq!(r.cleared, want);
        assert!(want.is_right_divisible_by(&example_op()).unwrap());
        let (ok, w) = is_completely_d_desingularizable(&example_op()).unwrap();
        assert!(ok);
        assert_eq!(w, want);
    }

    #[test]
    fn no_apparent_points() {
        let l = parse_diff("z*D + 1").unwrap();
        let r = d_desing(&l).unwrap();
        assert_eq!(r.output, l.monic().unwrap());
        assert!(!is_completely_d_desingularizable(&l).unwrap().0);
        assert!(is_completely_d_desingularizable(&DiffOp::d()).unwrap().0);
        let irr = parse_diff("(z^2+2)*D + 1").unwrap();
        assert!(matches!(d_desing(&irr), Err(Error::UnsupportedAlgebraicPoint(_))));
    }
}
