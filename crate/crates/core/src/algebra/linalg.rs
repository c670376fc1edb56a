//! Gaussian elimination over an exact field.

use super::field::Field;
use super::poly::Poly;

/// Reduced row-echelon form; zero rows are dropped.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>) -> Vec<Vec<F>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv();
        for v in rows[rank].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..ncols {
                let sub = factor.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - sub;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

pub fn rank<F: Field>(rows: Vec<Vec<F>>) -> usize {
    rref(rows).len()
}

/// Solves the square system `m x = rhs`; `None` if `m` is singular.
pub fn solve<F: Field>(m: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let n = m.len();
    let aug: Vec<Vec<F>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let red = rref(aug);
    if red.len() < n || (0..n).any(|i| !red[i][i].is_one()) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n].clone()).collect())
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination.
pub fn det_poly<F: Field>(mut m: Vec<Vec<Poly<F>>>) -> Poly<F> {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Poly::zero();
        };
        if piv != k {
            m.swap(k, piv);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, ratio, Rat};

    #[test]
    fn rref_spans() {
        let rows = vec![vec![rat(20), rat(-39)], vec![rat(40), rat(-78)]];
        assert_eq!(rref(rows), vec![vec![rat(1), ratio(-39, 20)]]);
        assert!(rref::<Rat>(vec![vec![rat(0), rat(0)]]).is_empty());
    }

    #[test]
    fn bareiss_determinant() {
        let p = |cs: &[i64]| Poly::<Rat>::from_i64s(cs);
        // [[z, 1], [1, z]] -> z^2 - 1
        assert_eq!(det_poly(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[1]), p(&[0, 1])]]), p(&[-1, 0, 1]));
        let m = vec![
            vec![p(&[0]), p(&[1]), p(&[2])],
            vec![p(&[1]), p(&[0, 1]), p(&[3])],
            vec![p(&[2]), p(&[1]), p(&[0, 0, 1])],
        ];
        // expansion along the first row: -(z^2 - 6) + 2(1 - 2z)
        assert_eq!(det_poly(m), p(&[8, -4, -1]));
    }

    #[test]
    fn solves() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        assert_eq!(solve(&m, &[rat(3), rat(5)]), Some(vec![ratio(4, 5), ratio(7, 5)]));
        let sing = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(solve(&sing, &[rat(1), rat(1)]), None);
    }
}
