use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Result of Gaussian elimination with partial pivoting.
#[derive(Debug, Clone)]
pub struct Elimination<T> {
    pub solution: Vec<T>,
    pub determinant: T,
    /// Smallest pivot magnitude met during elimination.
    pub min_pivot: T,
}

fn check_square<T>(a: &[Vec<T>]) -> Result<usize> {
    let n = a.len();
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            found: row.len(),
        });
    }
    Ok(n)
}

/// Solves `a·x = b`. Callers working in floating point inspect `min_pivot`
/// to decide whether the precision sufficed.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Result<Elimination<T>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let mut det = T::one();
    let mut min_pivot: Option<T> = None;
    for col in 0..n {
        let (p, mag) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .fold(None::<(usize, T)>, |best, (r, v)| match best {
                Some((_, ref bv)) if *bv >= v => best,
                _ => Some((r, v)),
            })
            .expect("non-empty column range");
        if mag.is_zero() {
            return Err(Error::Singular);
        }
        if min_pivot.as_ref().is_none_or(|mp| mag < *mp) {
            min_pivot = Some(mag);
        }
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..=n {
                let delta = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let mut acc = m[r][n].clone();
        for c in r + 1..n {
            acc = acc - m[r][c].clone() * x[c].clone();
        }
        x[r] = acc / m[r][r].clone();
    }
    Ok(Elimination {
        solution: x,
        determinant: det,
        min_pivot: min_pivot.unwrap_or_else(T::one),
    })
}

/// Determinant by elimination; zero for singular input.
pub fn determinant<T: Scalar>(a: &[Vec<T>]) -> Result<T> {
    let n = check_square(a)?;
    match solve(a, &vec![T::zero(); n]) {
        Ok(e) => Ok(e.determinant),
        Err(Error::Singular) => Ok(T::zero()),
        Err(e) => Err(e),
    }
}

/// `a·x`.
pub fn mat_vec<T: Scalar>(a: &[Vec<T>], x: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(T::zero(), |acc, (r, v)| acc + r.clone() * v.clone())
        })
        .collect()
}
