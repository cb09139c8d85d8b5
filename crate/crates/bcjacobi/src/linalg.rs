//! Exact dense linear algebra over the rationals, just enough for the
//! triangular inversions and small interpolation systems used elsewhere.

use num_traits::Zero;

use crate::rational::Rat;

/// Solves `a x = b` by fraction-free-ish Gaussian elimination with exact
/// rationals. Returns None when the matrix is singular.
pub fn solve_linear(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].clone().recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
                let t = &b[col] * &f;
                b[r] -= t;
            }
        }
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solves_a_small_system() {
        // x + 2y = 5, 3x - y = 1  =>  x = 1, y = 2
        let a = vec![vec![int(1), int(2)], vec![int(3), int(-1)]];
        let b = vec![int(5), int(1)];
        assert_eq!(solve_linear(a, b), Some(vec![int(1), int(2)]));
    }

    #[test]
    fn detects_singular_systems() {
        let a = vec![vec![int(1), int(2)], vec![rat(1, 2), int(1)]];
        let b = vec![int(0), int(0)];
        assert_eq!(solve_linear(a, b), None);
    }
}
