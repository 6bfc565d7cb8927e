//! Exact elimination over ℚ(ζ_m) and fraction-free elimination over the
//! Laurent ring.

use super::cyclotomic::{CyclotomicField, CyclotomicNumber};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Rank of a matrix over ℚ(ζ_m) by Gaussian elimination with exact inverses.
pub fn rank_exact(field: &CyclotomicField, mut rows: Vec<Vec<CyclotomicNumber>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows)
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| rows[i][col].coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count())
        else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field
            .invert(&rows[rank][col])
            .expect("pivot is nonzero");
        let pivot_row: Vec<CyclotomicNumber> = rows[rank][col..]
            .iter()
            .map(|x| field.mul(x, &inv))
            .collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (j, pv) in pivot_row.iter().enumerate() {
                if pv.is_zero() {
                    continue;
                }
                row[col + j] = field.sub(&row[col + j], &field.mul(&factor, pv));
            }
        }
        rank += 1;
    }
    rank
}

fn check_rectangular(m: &[Vec<LaurentPoly>]) -> Result<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("ragged matrix".into()));
    }
    Ok(ncols)
}

fn inexact() -> Error {
    Error::Invariant("inexact Bareiss division".into())
}

/// Determinant over the Laurent ring by Bareiss fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<LaurentPoly>>, nvars: usize) -> Result<LaurentPoly> {
    let n = m.len();
    let ncols = check_rectangular(&m)?;
    if ncols != n {
        return Err(Error::Dimension(format!("determinant of {n}x{ncols} matrix")));
    }
    if n == 0 {
        return Ok(LaurentPoly::one(nvars));
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n {
        let Some(pivot) = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].len())
        else {
            return Ok(LaurentPoly::zero(nvars));
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).ok_or_else(inexact)?;
            }
            m[i][k] = LaurentPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Rank over the fraction field of the Laurent ring; an entry counts as
/// nonzero iff it is not the zero polynomial.
pub fn bareiss_rank(mut m: Vec<Vec<LaurentPoly>>, nvars: usize) -> Result<usize> {
    let nrows = m.len();
    let ncols = check_rectangular(&m)?;
    let mut rank = 0;
    let mut prev = LaurentPoly::one(nvars);
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].len())
        else {
            continue;
        };
        m.swap(pivot, rank);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let num = &(&m[i][j] * &m[rank][col]) - &(&m[i][col] * &m[rank][j]);
                m[i][j] = num.div_exact(&prev).ok_or_else(inexact)?;
            }
            m[i][col] = LaurentPoly::zero(nvars);
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::laurent::LaurentMonomial;

    fn t(e: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(LaurentMonomial::new(e.to_vec()))
    }

    /// Cofactor expansion, the independent route for determinants.
    fn det_by_expansion(m: &[Vec<LaurentPoly>], nvars: usize) -> LaurentPoly {
        let n = m.len();
        if n == 0 {
            return LaurentPoly::one(nvars);
        }
        let mut acc = LaurentPoly::zero(nvars);
        for j in 0..n {
            let minor: Vec<Vec<LaurentPoly>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &det_by_expansion(&minor, nvars);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn rank_of_zero_and_identity() {
        let f = CyclotomicField::new(5);
        let zero = vec![vec![f.zero(); 3]; 3];
        assert_eq!(rank_exact(&f, zero), 0);
        let id: Vec<Vec<_>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        assert_eq!(rank_exact(&f, id), 3);
    }

    #[test]
    fn rank_detects_dependency_over_cyclotomics() {
        let f = CyclotomicField::new(6);
        let z = f.zeta_pow(1);
        // second row is ζ times the first
        let r1 = vec![f.one(), z.clone(), f.zeta_pow(2)];
        let r2: Vec<_> = r1.iter().map(|x| f.mul(x, &z)).collect();
        assert_eq!(rank_exact(&f, vec![r1, r2]), 1);
    }

    #[test]
    fn bareiss_matches_expansion() {
        let n = 3;
        let tw = |e: &[i32]| LaurentPoly::twist(&LaurentMonomial::new(e.to_vec()));
        let m = vec![
            vec![tw(&[1, 0, 0]), tw(&[1, 1, 0]), t(&[0, 0, 1])],
            vec![tw(&[0, 1, 0]), LaurentPoly::zero(n), tw(&[1, 1, 1])],
            vec![LaurentPoly::one(n), tw(&[0, 1, 1]), tw(&[1, 0, 1])],
        ];
        assert_eq!(bareiss_det(m.clone(), n).unwrap(), det_by_expansion(&m, n));
        assert_eq!(bareiss_rank(m, n).unwrap(), 3);
    }

    #[test]
    fn bareiss_rank_of_singular_matrix() {
        let n = 2;
        let a = LaurentPoly::twist(&LaurentMonomial::new(vec![1, 0]));
        let b = LaurentPoly::twist(&LaurentMonomial::new(vec![0, 1]));
        let m = vec![
            vec![a.clone(), b.clone()],
            vec![&a * &b, &b * &b],
            vec![LaurentPoly::zero(n), LaurentPoly::zero(n)],
        ];
        assert_eq!(bareiss_rank(m, n).unwrap(), 1);
    }
}
