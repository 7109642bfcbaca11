use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{precondition, Result};
use crate::numeric::linalg::determinant;
use crate::numeric::{serde_rational, BigRational};

/// `e_0, …, e_m` of the points.
pub fn elementary_symmetric(points: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); points.len() + 1];
    e[0] = BigRational::one();
    for (seen, x) in points.iter().enumerate() {
        for j in (1..=seen + 1).rev() {
            let add = &e[j - 1] * x;
            e[j] += add;
        }
    }
    e
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VandermondeReport {
    pub m: usize,
    pub k: usize,
    #[serde(with = "serde_rational")]
    pub skipped_det: BigRational,
    #[serde(with = "serde_rational")]
    pub vandermonde_det: BigRational,
    #[serde(with = "serde_rational")]
    pub elementary: BigRational,
    pub holds: bool,
}

/// Powers `0..=m` minus row `k` against the plain powers `0..m`: the first
/// determinant is `e_{m−k}` times the second.
pub fn vandermonde_skip_check(points: &[BigRational], k: usize) -> Result<VandermondeReport> {
    let m = points.len();
    if m == 0 || k > m {
        return precondition(format!("need 0 <= k <= m with m >= 1, got k={k}, m={m}"));
    }
    if points.iter().collect::<BTreeSet<_>>().len() != m {
        return precondition("points must be distinct");
    }
    let powers = |rows: &mut dyn Iterator<Item = usize>| -> Vec<Vec<BigRational>> {
        rows.map(|i| points.iter().map(|x| num_traits::pow(x.clone(), i)).collect())
            .collect()
    };
    let skipped_det = determinant(&powers(&mut (0..=m).filter(|&i| i != k)))?;
    let vandermonde_det = determinant(&powers(&mut (0..m)))?;
    let elementary = elementary_symmetric(points)[m - k].clone();
    Ok(VandermondeReport {
        m,
        k,
        holds: skipped_det == &elementary * &vandermonde_det,
        skipped_det,
        vandermonde_det,
        elementary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    fn leibniz(a: &[Vec<BigRational>]) -> BigRational {
        fn go(a: &[Vec<BigRational>], row: usize, used: &mut Vec<bool>, sign: i32) -> BigRational {
            if row == a.len() {
                return if sign > 0 { BigRational::one() } else { -BigRational::one() };
            }
            let mut total = BigRational::zero();
            let mut inversions = 0;
            for c in 0..a.len() {
                if used[c] {
                    inversions += 1;
                    continue;
                }
                used[c] = true;
                // columns still free to the left of c count as inversions
                let s = if (c - inversions) % 2 == 0 { sign } else { -sign };
                total += &a[row][c] * go(a, row + 1, used, s);
                used[c] = false;
            }
            total
        }
        go(a, 0, &mut vec![false; a.len()], 1)
    }

    #[test]
    fn two_points() {
        let r = vandermonde_skip_check(&[int(1), int(2)], 0).unwrap();
        assert_eq!(r.skipped_det, int(2));
        assert_eq!(r.elementary, int(2));
        assert!(r.holds);
        let top = vandermonde_skip_check(&[int(1), int(2)], 2).unwrap();
        assert_eq!(top.elementary, int(1));
        assert!(vandermonde_skip_check(&[int(1), int(1)], 0).is_err());
    }

    #[test]
    fn elementary_small() {
        let e = elementary_symmetric(&[int(1), int(2), int(3)]);
        assert_eq!(e, vec![int(1), int(6), int(11), int(6)]);
    }

    proptest! {
        #[test]
        fn identity_with_brute_force(raw in proptest::collection::btree_set((-20i64..20, 1i64..5), 1..6), k in 0usize..7) {
            let pts: BTreeSet<BigRational> = raw.iter().map(|&(a, b)| rat(a, b)).collect();
            let pts: Vec<BigRational> = pts.into_iter().collect();
            let k = k % (pts.len() + 1);
            let r = vandermonde_skip_check(&pts, k).unwrap();
            prop_assert!(r.holds);
            let m = pts.len();
            let rows: Vec<Vec<BigRational>> = (0..=m).filter(|&i| i != k)
                .map(|i| pts.iter().map(|x| num_traits::pow(x.clone(), i)).collect()).collect();
            prop_assert_eq!(leibniz(&rows), r.skipped_det);
        }
    }
}
