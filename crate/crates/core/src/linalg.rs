//! Band matrices and the symmetric tridiagonal eigensolver.

use crate::error::{Error, Result};

/// Square matrix with `lower` sub-diagonals and `upper` super-diagonals,
/// stored row by row over the band.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    lower: usize,
    upper: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, lower: usize, upper: usize) -> Self {
        Self {
            n,
            lower,
            upper,
            data: vec![0.0; n * (lower + upper + 1)],
        }
    }

    /// Tridiagonal matrix from its three diagonals; `sub[i]` is entry
    /// `(i + 1, i)` and `sup[i]` is entry `(i, i + 1)`.
    pub fn tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64]) -> Self {
        let n = diag.len();
        assert!(sub.len() + 1 == n.max(1) && sup.len() + 1 == n.max(1));
        let mut m = Self::zeros(n, 1, 1);
        for i in 0..n {
            m.set(i, i, diag[i]);
            if i + 1 < n {
                m.set(i + 1, i, sub[i]);
                m.set(i, i + 1, sup[i]);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || j + self.lower < i || j > i + self.upper {
            return None;
        }
        Some(i * (self.lower + self.upper + 1) + (j + self.lower - i))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |k| self.data[k])
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = self
            .slot(i, j)
            .unwrap_or_else(|| panic!("({i}, {j}) outside the band"));
        self.data[k] = value;
    }

    /// Column range of row `i` inside the band.
    fn row_span(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.lower)..(i + self.upper + 1).min(self.n)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row_span(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &BandMatrix) -> BandMatrix {
        assert_eq!(self.n, other.n);
        let mut out = BandMatrix::zeros(self.n, self.lower + other.lower, self.upper + other.upper);
        for i in 0..self.n {
            for k in self.row_span(i) {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in other.row_span(k) {
                    let slot = out.slot(i, j).expect("product band");
                    out.data[slot] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// `self + scale * other`, widening the band as needed.
    pub fn add_scaled(&self, other: &BandMatrix, scale: f64) -> BandMatrix {
        assert_eq!(self.n, other.n);
        let mut out = BandMatrix::zeros(self.n, self.lower.max(other.lower), self.upper.max(other.upper));
        for i in 0..self.n {
            for j in self.row_span(i) {
                let slot = out.slot(i, j).expect("band");
                out.data[slot] += self.get(i, j);
            }
            for j in other.row_span(i) {
                let slot = out.slot(i, j).expect("band");
                out.data[slot] += scale * other.get(i, j);
            }
        }
        out
    }

    pub fn transpose(&self) -> BandMatrix {
        let mut out = BandMatrix::zeros(self.n, self.upper, self.lower);
        for i in 0..self.n {
            for j in self.row_span(i) {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| self.row_span(i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Usage(format!(
                "{} diagonal and {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`, from the signs of the
    /// `LDL^T` pivots of `T - x I` (Sturm sequence).
    pub fn count_below(&self, x: f64) -> usize {
        sturm_count(self.diag.len(), |i| self.diag[i] - x, |i| self.off[i])
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn spectrum_bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let radius = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (zero-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.dim() {
            return Err(Error::Usage(format!("eigenvalue {k} of a {}x{} matrix", self.dim(), self.dim())));
        }
        let (lo, hi) = self.spectrum_bounds();
        Ok(bisect_eigenvalue(|x| self.count_below(x), k, lo, hi))
    }

    pub fn lowest(&self, count: usize) -> Result<Vec<f64>> {
        (0..count).map(|k| self.eigenvalue(k)).collect()
    }
}

/// Sturm count for a symmetric tridiagonal matrix given by closures for the
/// shifted diagonal `d_i - x` and the off-diagonal `e_i`.
pub(crate) fn sturm_count(n: usize, shifted_diag: impl Fn(usize) -> f64, off: impl Fn(usize) -> f64) -> usize {
    let mut count = 0;
    let mut q = shifted_diag(0);
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let e = off(i - 1);
        if q == 0.0 {
            q = f64::EPSILON * e.abs().max(f64::MIN_POSITIVE);
        }
        q = shifted_diag(i) - e * e / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Bisection for the `k`-th eigenvalue given a counting function and an
/// enclosure `[lo, hi]`; runs until the bracket stops shrinking.
pub(crate) fn bisect_eigenvalue(count_below: impl Fn(f64) -> usize, k: usize, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
