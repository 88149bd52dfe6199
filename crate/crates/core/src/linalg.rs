//! Tridiagonal (Thomas) solver with a reusable factorization.
//!
//! The Crank–Nicolson step solves the same matrix many times while the step
//! size is unchanged, so the forward-elimination coefficients are computed
//! once and reused.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Num;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularMatrix {
    pub row: usize,
}

impl fmt::Display for SingularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tridiagonal elimination hit a zero pivot at row {}", self.row)
    }
}

/// Factored tridiagonal matrix. `sub` has `n-1` entries (rows `1..n`),
/// `sup` has `n-1` entries (rows `0..n-1`).
#[derive(Clone, Debug)]
pub struct TridiagFactor<T> {
    sub: Vec<T>,
    c_prime: Vec<T>,
    inv_den: Vec<T>,
}

impl<T: Num + Copy> TridiagFactor<T> {
    pub fn new(sub: &[T], diag: &[T], sup: &[T]) -> Result<Self, SingularMatrix> {
        let n = diag.len();
        assert!(n >= 2, "tridiagonal system needs at least two rows");
        assert_eq!(sub.len(), n - 1);
        assert_eq!(sup.len(), n - 1);

        let mut c_prime = Vec::with_capacity(n - 1);
        let mut inv_den = Vec::with_capacity(n);

        if diag[0].is_zero() {
            return Err(SingularMatrix { row: 0 });
        }
        let mut inv = T::one() / diag[0];
        inv_den.push(inv);
        for i in 1..n {
            let cp = sup[i - 1] * inv;
            c_prime.push(cp);
            let den = diag[i] - sub[i - 1] * cp;
            if den.is_zero() {
                return Err(SingularMatrix { row: i });
            }
            inv = T::one() / den;
            inv_den.push(inv);
        }

        Ok(TridiagFactor { sub: sub.to_vec(), c_prime, inv_den })
    }

    pub fn len(&self) -> usize {
        self.inv_den.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_den.is_empty()
    }

    /// Solve `A x = rhs`, overwriting `rhs` with `x`.
    pub fn solve_in_place(&self, rhs: &mut [T]) {
        let n = self.inv_den.len();
        assert_eq!(rhs.len(), n);

        rhs[0] = rhs[0] * self.inv_den[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.sub[i - 1] * rhs[i - 1]) * self.inv_den[i];
        }
        for i in (0..n - 1).rev() {
            let next = rhs[i + 1];
            rhs[i] = rhs[i] - self.c_prime[i] * next;
        }
    }
}

/// One-shot convenience wrapper around [`TridiagFactor`].
pub fn solve_tridiagonal<T: Num + Copy>(
    sub: &[T],
    diag: &[T],
    sup: &[T],
    rhs: &mut [T],
) -> Result<(), SingularMatrix> {
    TridiagFactor::new(sub, diag, sup)?.solve_in_place(rhs);
    Ok(())
}

/// `y = A x` for the same banded layout.
pub fn tridiagonal_mul<T: Num + Copy>(sub: &[T], diag: &[T], sup: &[T], x: &[T], y: &mut [T]) {
    let n = diag.len();
    assert_eq!(x.len(), n);
    assert_eq!(y.len(), n);
    for i in 0..n {
        let mut acc = diag[i] * x[i];
        if i > 0 {
            acc = acc + sub[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            acc = acc + sup[i] * x[i + 1];
        }
        y[i] = acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn solves_small_real_system() {
        // A = [[2,1,0],[1,3,1],[0,1,2]], x = [1,2,3] => rhs = [4,10,8].
        let sub = [1.0, 1.0];
        let diag = [2.0, 3.0, 2.0];
        let sup = [1.0, 1.0];
        let mut rhs = [4.0f64, 10.0, 8.0];
        solve_tridiagonal(&sub, &diag, &sup, &mut rhs).unwrap();
        for (got, want) in rhs.iter().zip([1.0f64, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn factor_reuse_matches_fresh_solve() {
        let n = 50;
        let sub: Vec<f64> = (0..n - 1).map(|i| -0.3 - 0.01 * i as f64).collect();
        let sup: Vec<f64> = (0..n - 1).map(|i| -0.4 + 0.005 * i as f64).collect();
        let diag: Vec<f64> = (0..n).map(|i| 2.0 + 0.1 * (i as f64).sin()).collect();
        let factor = TridiagFactor::new(&sub, &diag, &sup).unwrap();

        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).cos()).collect();
        let mut rhs = vec![0.0; n];
        tridiagonal_mul(&sub, &diag, &sup, &x, &mut rhs);
        factor.solve_in_place(&mut rhs);
        for (got, want) in rhs.iter().zip(&x) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_roundtrip() {
        let n = 64;
        let i = Complex64::i();
        let sub: Vec<Complex64> = (0..n - 1).map(|k| i * (0.1 + 1e-3 * k as f64)).collect();
        let sup = sub.clone();
        let diag: Vec<Complex64> =
            (0..n).map(|k| Complex64::new(1.0, 0.2 + 1e-3 * k as f64)).collect();
        let x: Vec<Complex64> =
            (0..n).map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.3).cos())).collect();
        let mut rhs = vec![Complex64::ZERO; n];
        tridiagonal_mul(&sub, &diag, &sup, &x, &mut rhs);
        solve_tridiagonal(&sub, &diag, &sup, &mut rhs).unwrap();
        for (got, want) in rhs.iter().zip(&x) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn reports_singular_matrix() {
        let sub = [1.0];
        let diag = [0.0, 1.0];
        let sup = [1.0];
        let mut rhs = [1.0, 1.0];
        assert_eq!(
            solve_tridiagonal(&sub, &diag, &sup, &mut rhs),
            Err(SingularMatrix { row: 0 })
        );
    }
}
