use crate::error::{Error, Result};
use crate::grid::{check_tail, RadialFunction, RadialGrid};

/// Generalized Laguerre polynomial `L^b_n(x)` by the upward three-term
/// recurrence
///
/// `(k + 1) L_{k+1} = (2k + 1 + b - x) L_k - (k + b) L_{k-1}`,
///
/// seeded with `L_0 = 1` and `L_1 = 1 + b - x`. The order `b` may be any real
/// number above -1; the Kratzer states need non-integer orders.
pub fn laguerre(b: f64, n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 + b - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + b - x) * curr - (kf + b) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Samples `r^s e^{-kappa r} L^{2s-1}_n(2 kappa r)`, the common form of every
/// closed-form bound state here. Positive as `r -> 0+`.
///
/// Fails with a resolution error when the grid is too coarse for the decay
/// length or the sample at `r_max` exceeds `1e-10` of the peak.
pub fn laguerre_state(grid: RadialGrid, s: f64, kappa: f64, n: usize) -> Result<RadialFunction> {
    if !(s > 0.0 && kappa > 0.0 && s.is_finite() && kappa.is_finite()) {
        return Err(Error::Domain(format!("state needs s > 0 and kappa > 0, got s = {s}, kappa = {kappa}")));
    }
    if grid.h() * kappa * (n.max(1) as f64) > 0.1 {
        return Err(Error::Resolution(format!(
            "spacing {} too coarse for decay length {} with {n} nodes",
            grid.h(),
            1.0 / kappa
        )));
    }
    let f = RadialFunction::from_fn(grid, |r| {
        (s * r.ln() - kappa * r).exp() * laguerre(2.0 * s - 1.0, n, 2.0 * kappa * r)
    });
    check_tail(&f, 1e-10)?;
    Ok(f)
}
