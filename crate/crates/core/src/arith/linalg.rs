use num_traits::Zero;

use super::Rational;

/// Solves the square system `m x = rhs` by exact Gaussian elimination.
/// Returns `None` when `m` is singular.
pub fn solve_linear(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    assert!(
        m.iter().all(|row| row.len() == n) && rhs.len() == n,
        "non-square system"
    );
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        let pivot_row = m[col].clone();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for (dst, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= &f * p;
            }
            let delta = &f * &rhs[col];
            rhs[r] -= delta;
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn solves_small_system() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve_linear(m, vec![int(3), int(5)]).unwrap();
        assert_eq!(x, vec![crate::arith::rat(4, 5), crate::arith::rat(7, 5)]);
    }

    #[test]
    fn singular_is_none() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve_linear(m, vec![int(1), int(1)]).is_none());
    }
}
