//! Finite-difference operators on a radial grid.

use crate::error::{Error, Result};
use crate::grid::{check_same_grid, RadialFunction, RadialGrid};
use crate::linalg::{BandMatrix, SymTridiagonal};

/// A tridiagonal matrix acting on samples of a [`RadialGrid`], with the
/// Dirichlet boundary values folded in.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    grid: RadialGrid,
    matrix: BandMatrix,
}

impl TridiagonalOperator {
    pub fn from_diagonals(grid: RadialGrid, sub: &[f64], diag: &[f64], sup: &[f64]) -> Result<Self> {
        let n = grid.n_points();
        if diag.len() != n || sub.len() + 1 != n || sup.len() + 1 != n {
            return Err(Error::Usage(format!(
                "diagonals of lengths ({}, {}, {}) do not fit a {n}-point grid",
                sub.len(),
                diag.len(),
                sup.len()
            )));
        }
        Ok(Self {
            grid,
            matrix: BandMatrix::tridiagonal(sub, diag, sup),
        })
    }

    /// `-d^2/dr^2 + potential(r)` with the three-point Laplacian.
    pub fn schrodinger(grid: RadialGrid, potential: impl Fn(f64) -> f64) -> Self {
        let n = grid.n_points();
        let h2 = grid.h() * grid.h();
        let diag: Vec<f64> = grid.points().map(|r| 2.0 / h2 + potential(r)).collect();
        let off = vec![-1.0 / h2; n - 1];
        Self::from_diagonals(grid, &off, &diag, &off).expect("consistent sizes")
    }

    /// `sign * d/dr + w(r)` with central differences.
    pub fn first_order(grid: RadialGrid, sign: f64, w: impl Fn(f64) -> f64) -> Self {
        let n = grid.n_points();
        let half = sign / (2.0 * grid.h());
        let diag: Vec<f64> = grid.points().map(w).collect();
        Self::from_diagonals(grid, &vec![-half; n - 1], &diag, &vec![half; n - 1]).expect("consistent sizes")
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn matrix(&self) -> &BandMatrix {
        &self.matrix
    }

    pub fn apply(&self, f: &RadialFunction) -> Result<RadialFunction> {
        check_same_grid(&self.grid, f.grid())?;
        RadialFunction::new(self.grid, self.matrix.apply(f.values()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    /// Symmetric tridiagonal form for eigenvalue extraction.
    pub fn symmetric(&self) -> Result<SymTridiagonal> {
        if !self.is_symmetric() {
            return Err(Error::Usage("operator is not symmetric".into()));
        }
        let n = self.grid.n_points();
        let diag = (0..n).map(|i| self.matrix.get(i, i)).collect();
        let off = (0..n - 1).map(|i| self.matrix.get(i, i + 1)).collect();
        SymTridiagonal::new(diag, off)
    }

    /// The `count` smallest eigenvalues of a symmetric operator.
    pub fn lowest_eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        self.symmetric()?.lowest(count)
    }
}

/// Relative residual `|a - b| / |b|` in the discrete 2-norm over samples
/// `margin..len-margin`, which keeps boundary rows out of the comparison.
pub fn interior_residual(a: &RadialFunction, b: &RadialFunction, margin: usize) -> Result<f64> {
    check_same_grid(a.grid(), b.grid())?;
    let n = a.values().len();
    if 2 * margin >= n {
        return Err(Error::Usage(format!("margin {margin} leaves no interior on {n} points")));
    }
    let range = margin..n - margin;
    let diff: f64 = range.clone().map(|i| (a.values()[i] - b.values()[i]).powi(2)).sum();
    let scale: f64 = range.map(|i| b.values()[i].powi(2)).sum();
    Ok((diff / scale).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_of_smooth_function() {
        let grid = RadialGrid::with_spacing(20.0, 1e-3).unwrap();
        let op = TridiagonalOperator::schrodinger(grid, |_| 0.0);
        let f = RadialFunction::from_fn(grid, |r| r * r * (-r).exp());
        let exact = RadialFunction::from_fn(grid, |r| -(2.0 - 4.0 * r + r * r) * (-r).exp());
        let res = interior_residual(&op.apply(&f).unwrap(), &exact, 5).unwrap();
        assert!(res < 1e-6, "{res}");
        assert!(op.is_symmetric());
    }

    #[test]
    fn first_order_transpose_flips_sign_of_derivative() {
        let grid = RadialGrid::new(1.0, 9).unwrap();
        let plus = TridiagonalOperator::first_order(grid, 1.0, |r| r);
        let minus = TridiagonalOperator::first_order(grid, -1.0, |r| r);
        assert_eq!(plus.matrix().transpose(), *minus.matrix());
        assert!(plus.symmetric().is_err());
    }
}
