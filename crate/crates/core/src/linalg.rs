//! Direct solution of the small normal-equation systems.

use crate::error::{Error, Result};

/// Pivots below this fraction of the largest pivot mark the matrix singular.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-12;

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
///
/// Rows and columns are first scaled by `1/sqrt(a_ii)` so that the pivot
/// test compares like with like when the regressors differ in magnitude;
/// this assumes `a` is a Gram matrix (nonnegative diagonal). A zero
/// diagonal entry means an all-zero regressor and is reported as singular.
#[allow(clippy::needless_range_loop)]
pub fn solve_normal_equations<const N: usize>(
    a: &[[f64; N]; N],
    b: &[f64; N],
) -> Result<[f64; N]> {
    let mut scale = [0.0; N];
    for i in 0..N {
        let d = a[i][i];
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::SingularNormalMatrix { ratio: 0.0 });
        }
        scale[i] = 1.0 / d.sqrt();
    }
    let mut m = [[0.0; N]; N];
    let mut rhs = [0.0; N];
    for i in 0..N {
        for j in 0..N {
            m[i][j] = a[i][j] * scale[i] * scale[j];
        }
        rhs[i] = b[i] * scale[i];
    }

    let mut largest_pivot = 0.0f64;
    for col in 0..N {
        let pivot_row = (col..N)
            .max_by(|&p, &q| m[p][col].abs().total_cmp(&m[q][col].abs()))
            .unwrap_or(col);
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let pivot = m[col][col];
        largest_pivot = largest_pivot.max(pivot.abs());
        let ratio = pivot.abs() / largest_pivot;
        if ratio.is_nan() || ratio <= SINGULAR_PIVOT_RATIO {
            return Err(Error::SingularNormalMatrix {
                ratio: if ratio.is_nan() { 0.0 } else { ratio },
            });
        }
        for row in col + 1..N {
            let factor = m[row][col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for k in col..N {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }

    let mut x = [0.0; N];
    for i in (0..N).rev() {
        let tail: f64 = (i + 1..N).map(|k| m[i][k] * x[k]).sum();
        x[i] = (rhs[i] - tail) / m[i][i];
    }
    for i in 0..N {
        x[i] *= scale[i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matvec<const N: usize>(a: &[[f64; N]; N], x: &[f64; N]) -> [f64; N] {
        let mut out = [0.0; N];
        for i in 0..N {
            out[i] = (0..N).map(|j| a[i][j] * x[j]).sum();
        }
        out
    }

    #[test]
    fn recovers_known_solution() {
        let a = [[4.0, 2.0, 0.6], [2.0, 5.0, 1.0], [0.6, 1.0, 3.0]];
        let x_true = [1.5, -2.0, 0.25];
        let b = matvec(&a, &x_true);
        let x = solve_normal_equations(&a, &b).unwrap();
        for (u, v) in x.iter().zip(x_true) {
            assert!((u - v).abs() < 1e-13);
        }
    }

    #[test]
    fn badly_scaled_columns() {
        // Gram matrix of columns with magnitudes 1e4, 1, 1e-3.
        let cols = [
            [1e4, 2e4, -1e4, 3e4],
            [1.0, 0.0, 2.0, -1.0],
            [1e-3, 1e-3, 0.0, 2e-3],
        ];
        let mut a = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] = (0..4).map(|k| cols[i][k] * cols[j][k]).sum();
            }
        }
        let x_true = [2e-4, 3.0, 500.0];
        let b = matvec(&a, &x_true);
        let x = solve_normal_equations(&a, &b).unwrap();
        for (u, v) in x.iter().zip(x_true) {
            assert!((u - v).abs() <= 1e-8 * v.abs(), "{u} vs {v}");
        }
    }

    #[test]
    fn two_by_two() {
        let a = [[2.0, 1.0], [1.0, 3.0]];
        let x = solve_normal_equations(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
    }

    #[test]
    fn singular_inputs() {
        let zero = [[0.0; 3]; 3];
        assert!(matches!(
            solve_normal_equations(&zero, &[0.0; 3]),
            Err(Error::SingularNormalMatrix { .. })
        ));
        // two identical regressors
        let dup = [[2.0, 2.0, 1.0], [2.0, 2.0, 1.0], [1.0, 1.0, 3.0]];
        assert!(matches!(
            solve_normal_equations(&dup, &[1.0, 1.0, 1.0]),
            Err(Error::SingularNormalMatrix { .. })
        ));
    }
}
