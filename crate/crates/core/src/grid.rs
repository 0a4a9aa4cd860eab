//! Uniform radial grids with Dirichlet endpoints and sampled radial functions.
//!
//! A grid of `n_points` samples covers `(0, r_max)` with spacing
//! `h = r_max / (n_points + 1)`; the endpoints `0` and `r_max` carry the
//! boundary value zero and are not stored.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    n_points: usize,
    h: f64,
}

impl RadialGrid {
    pub fn new(r_max: f64, n_points: usize) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::Domain(format!("grid needs at least 3 points, got {n_points}")));
        }
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::Domain(format!("r_max = {r_max} must be positive and finite")));
        }
        Ok(Self {
            n_points,
            h: r_max / (n_points as f64 + 1.0),
        })
    }

    /// Grid on `(0, r_max)` whose spacing is as close to `h` as the integer
    /// point count allows (never coarser).
    pub fn with_spacing(r_max: f64, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Domain(format!("spacing h = {h} must be positive")));
        }
        let intervals = (r_max / h).ceil().max(4.0);
        Self::new(r_max, intervals as usize - 1)
    }

    /// Grid sized for a state behaving like `r^s e^{-kappa r}` times a
    /// degree-`n` polynomial: `r_max = (3 (s + n) + 30) / kappa`, which puts
    /// the tail of `x^{s+n} e^{-x}` some twelve decades below its peak.
    pub fn for_state(s: f64, n: usize, kappa: f64, h: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::Domain(format!("decay rate {kappa} must be positive")));
        }
        let r_max = (3.0 * (s + n as f64) + 30.0) / kappa;
        Self::with_spacing(r_max, h)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn r_min(&self) -> f64 {
        self.h
    }

    pub fn r_max(&self) -> f64 {
        self.h * (self.n_points as f64 + 1.0)
    }

    /// Radius of sample `i` (zero-based), i.e. `(i + 1) h`.
    pub fn r(&self, i: usize) -> f64 {
        (i as f64 + 1.0) * self.h
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.r(i))
    }

    /// Same extent, half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points + 1,
            h: self.h / 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    grid: RadialGrid,
    values: Vec<f64>,
}

impl RadialFunction {
    pub fn new(grid: RadialGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::Usage(format!(
                "{} samples for a grid of {} points",
                values.len(),
                grid.n_points()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: RadialGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.n_points()],
        }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &RadialFunction, b: f64) -> Result<Self> {
        check_same_grid(&self.grid, &other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }

    pub fn map_with_r(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| f(self.grid.r(i), v))
                .collect(),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        inner_product(self, self).expect("same grid")
    }

    /// Largest absolute sample.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Number of sign changes between consecutive samples, ignoring samples
    /// below `threshold` times the peak magnitude.
    pub fn sign_changes(&self, threshold: f64) -> usize {
        let floor = threshold * self.max_abs();
        let mut last = 0.0_f64;
        let mut count = 0;
        for &v in &self.values {
            if v.abs() <= floor {
                continue;
            }
            if last != 0.0 && last.signum() != v.signum() {
                count += 1;
            }
            last = v;
        }
        count
    }

    /// First derivative: central differences inside, second-order one-sided
    /// differences at the first and last samples.
    pub fn derivative(&self) -> Self {
        let h = self.grid.h();
        let f = &self.values;
        let n = f.len();
        let mut out = vec![0.0; n];
        out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        for i in 1..n - 1 {
            out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        }
        out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
        Self {
            grid: self.grid,
            values: out,
        }
    }
}

pub(crate) fn check_same_grid(a: &RadialGrid, b: &RadialGrid) -> Result<()> {
    if a != b {
        return Err(Error::Usage(format!(
            "grid mismatch: ({} points, h = {}) vs ({} points, h = {})",
            a.n_points(),
            a.h(),
            b.n_points(),
            b.h()
        )));
    }
    Ok(())
}

/// Composite trapezoid on the samples of an integrand, including the
/// endpoints `0` and `r_max`. The value at `r_max` is the Dirichlet zero; the
/// value at the origin is extrapolated quadratically from the first three
/// samples, which is exact (zero) for the `r^s` behaviour of bound states
/// with `s >= 1` and keeps the rule second-order for integrands that do not
/// vanish there.
pub fn trapezoid(grid: &RadialGrid, integrand: &[f64]) -> f64 {
    debug_assert_eq!(integrand.len(), grid.n_points());
    let at_origin = 3.0 * integrand[0] - 3.0 * integrand[1] + integrand[2];
    grid.h() * (0.5 * at_origin + integrand.iter().sum::<f64>())
}

/// `(f, g) = \int_0^\infty f g dr`, without any `r^{d-1}` measure: the radial
/// functions already carry it.
pub fn inner_product(f: &RadialFunction, g: &RadialFunction) -> Result<f64> {
    check_same_grid(&f.grid, &g.grid)?;
    let products: Vec<f64> = f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect();
    Ok(trapezoid(&f.grid, &products))
}

/// Rescales both components so that `(psi1, psi1) + (psi2, psi2) = 1`.
pub fn normalize_spinor(psi1: &RadialFunction, psi2: &RadialFunction) -> Result<(RadialFunction, RadialFunction)> {
    check_same_grid(&psi1.grid, &psi2.grid)?;
    let joint = inner_product(psi1, psi1)? + inner_product(psi2, psi2)?;
    if !(joint.is_finite() && joint > 0.0) {
        return Err(Error::Domain(format!("joint norm {joint} cannot be normalized")));
    }
    let scale = joint.sqrt().recip();
    Ok((psi1.scaled(scale), psi2.scaled(scale)))
}

/// Normalizes a single function to unit `(f, f)`.
pub fn normalize(f: &RadialFunction) -> Result<RadialFunction> {
    let norm = f.norm_sq();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::Domain(format!("norm {norm} cannot be normalized")));
    }
    Ok(f.scaled(norm.sqrt().recip()))
}

/// `|(f, g)| / sqrt((f, f)(g, g))`; one for functions equal up to a factor.
pub fn normalized_overlap(f: &RadialFunction, g: &RadialFunction) -> Result<f64> {
    let fg = inner_product(f, g)?;
    Ok(fg.abs() / (f.norm_sq() * g.norm_sq()).sqrt())
}

/// Fails when the last sample of `f` is not negligible next to its peak.
pub(crate) fn check_tail(f: &RadialFunction, tolerance: f64) -> Result<()> {
    let peak = f.max_abs();
    let tail = f.values().last().copied().unwrap_or(0.0).abs();
    if !(peak.is_finite()) || tail > tolerance * peak {
        return Err(Error::Resolution(format!(
            "tail {tail:e} at r_max = {} exceeds {tolerance:e} of the peak {peak:e}",
            f.grid().r_max()
        )));
    }
    Ok(())
}
