//! Shift operators for the spin-symmetric Kratzer problem written as
//! `O_E psi = -l(l+1) psi` with
//! `O_E = -r^2 d^2/dr^2 + (2c(E+m) - E^2 + m^2) r^2 - 2v(E+m) r`.
//!
//! With `a = 1/((E+m)v)` the operator equals `O_n = -r^2 d^2 - 2r/a + r^2/(a n)^2`
//! at the effective principal number `n = v sqrt((E+m)/(2c-E+m))`, and
//! `Q^-+_{n+-1} Q^+-_n = O_n + n(n+-1)` with `Q^+-_n = D^+-_n T^+-_n`.

use crate::error::{Error, Result};
use crate::grid::{inner_product, RadialFunction, RadialGrid};
use crate::kratzer::{self, KratzerParams};
use crate::laguerre::laguerre_state;
use crate::operator::TridiagonalOperator;
use crate::quantum::Regime;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderParams {
    pub a: f64,
    pub n_eff: f64,
    pub ell_eff: f64,
    /// Node count `n_eff - ell_eff - 1`, real-valued away from a level.
    pub nodes: f64,
}

impl LadderParams {
    pub fn at_energy(p: &KratzerParams, kd: f64, energy: f64) -> Result<Self> {
        let a = 1.0 / ((energy + p.m) * p.v);
        let n_eff = effective_n(energy, p.m, p.v, p.c)?;
        let ell_eff = effective_ell(kd, p.lambda, energy, p.m)?;
        Ok(Self {
            a,
            n_eff,
            ell_eff,
            nodes: n_eff - ell_eff - 1.0,
        })
    }
}

/// `n = v sqrt((E + m) / (2c - E + m))`.
pub fn effective_n(energy: f64, m: f64, v: f64, c: f64) -> Result<f64> {
    if v <= 0.0 {
        return Err(Error::NoBoundState(format!("spin regime requires v > 0, got v = {v}")));
    }
    let (num, den) = (energy + m, 2.0 * c - energy + m);
    if !(num > 0.0 && den > 0.0) {
        return Err(Error::Domain(format!(
            "effective n needs E + m > 0 and 2c - E + m > 0, got {num} and {den}"
        )));
    }
    Ok(v * (num / den).sqrt())
}

/// Inverse of [`effective_n`]: `E = (n^2 (m + 2c) - v^2 m) / (n^2 + v^2)`.
pub fn energy_from_effective_n(n: f64, m: f64, v: f64, c: f64) -> f64 {
    (n * n * (m + 2.0 * c) - v * v * m) / (n * n + v * v)
}

/// Positive root of `l(l+1) = kd(kd+1) + 2 lambda (E+m)`.
pub fn effective_ell(kd: f64, lambda: f64, energy: f64, m: f64) -> Result<f64> {
    let rad = (kd + 0.5).powi(2) + 2.0 * lambda * (energy + m);
    if rad < 0.0 {
        return Err(Error::Domain(format!("effective l is complex: radicand {rad}")));
    }
    Ok(rad.sqrt() - 0.5)
}

/// Tridiagonal discretization of `-r^2 f'' + b r^2 f - g r f`.
fn r_squared_operator(grid: RadialGrid, b: f64, g: f64) -> TridiagonalOperator {
    let n = grid.n_points();
    let h2 = grid.h() * grid.h();
    let mut sub = Vec::with_capacity(n - 1);
    let mut sup = Vec::with_capacity(n - 1);
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let r = grid.r(i);
        let k = r * r / h2;
        diag.push(2.0 * k + b * r * r - g * r);
        if i + 1 < n {
            sup.push(-k);
        }
        if i > 0 {
            sub.push(-k);
        }
    }
    TridiagonalOperator::from_diagonals(grid, &sub, &diag, &sup).expect("consistent sizes")
}

pub fn build_o_e(energy: f64, m: f64, v: f64, c: f64, grid: RadialGrid) -> Result<TridiagonalOperator> {
    let b = 2.0 * c * (energy + m) - energy * energy + m * m;
    if b <= 0.0 {
        return Err(Error::Domain(format!("r^2 coefficient {b} of O_E is not positive")));
    }
    Ok(r_squared_operator(grid, b, 2.0 * v * (energy + m)))
}

/// `O_n = -r^2 d^2/dr^2 - 2r/a + r^2/(a n)^2`.
pub fn build_o_n(n: f64, a: f64, grid: RadialGrid) -> Result<TridiagonalOperator> {
    check_positive(n, a)?;
    Ok(r_squared_operator(grid, 1.0 / (a * n).powi(2), 2.0 / a))
}

fn check_positive(n: f64, a: f64) -> Result<()> {
    if !(n > 0.0 && a > 0.0 && n.is_finite() && a.is_finite()) {
        return Err(Error::Domain(format!("shift operators need n > 0 and a > 0, got n = {n}, a = {a}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    Raise,
    Lower,
}

impl Shift {
    fn sign(self) -> f64 {
        match self {
            Shift::Raise => 1.0,
            Shift::Lower => -1.0,
        }
    }
}

/// `(D psi)(r) = sqrt(lambda) psi(lambda r)`, resampled onto the same grid
/// with four-point cubic interpolation. Samples beyond `r_max` are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dilation {
    pub lambda: f64,
}

impl Dilation {
    /// `lambda = n / (n +- 1)`.
    pub fn for_shift(n: f64, shift: Shift) -> Result<Self> {
        let lambda = n / (n + shift.sign());
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Domain(format!("dilation factor {lambda} for n = {n} is not positive")));
        }
        Ok(Self { lambda })
    }

    pub fn inverse(self) -> Self {
        Self {
            lambda: self.lambda.recip(),
        }
    }

    pub fn apply(&self, f: &RadialFunction) -> RadialFunction {
        let grid = *f.grid();
        let values = f.values();
        let n = values.len() as i64;
        // Sample at r = k h; zero at both Dirichlet ends, odd continuation
        // through the origin.
        let sample = |k: i64| -> f64 {
            match k {
                k if k < 0 => -values[(-k - 1) as usize],
                0 => 0.0,
                k if k <= n => values[(k - 1) as usize],
                _ => 0.0,
            }
        };
        let scale = self.lambda.sqrt();
        f.map_with_r(|r, _| {
            let t = self.lambda * r / grid.h();
            if t >= (n + 1) as f64 {
                return 0.0;
            }
            let k = t.floor() as i64;
            let x = t - k as f64;
            let (p0, p1, p2, p3) = (sample(k - 1), sample(k), sample(k + 1), sample(k + 2));
            let value = -x * (x - 1.0) * (x - 2.0) / 6.0 * p0 + (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0 * p1
                - (x + 1.0) * x * (x - 2.0) / 2.0 * p2
                + (x + 1.0) * x * (x - 1.0) / 6.0 * p3;
            scale * value
        })
    }
}

/// `Q^+-_n = D^+-_n T^+-_n` with `T^+-_n = +-r d/dr - r/(a n) + n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftOperator {
    pub n: f64,
    pub a: f64,
    pub shift: Shift,
    differential: TridiagonalOperator,
    dilation: Dilation,
}

impl ShiftOperator {
    /// The first-order part `T^+-_n` alone.
    pub fn differential(&self) -> &TridiagonalOperator {
        &self.differential
    }

    pub fn dilation(&self) -> Dilation {
        self.dilation
    }

    pub fn apply(&self, f: &RadialFunction) -> Result<RadialFunction> {
        Ok(self.dilation.apply(&self.differential.apply(f)?))
    }
}

pub fn build_q(n: f64, a: f64, grid: RadialGrid, shift: Shift) -> Result<ShiftOperator> {
    check_positive(n, a)?;
    let dilation = Dilation::for_shift(n, shift)?;
    let sign = shift.sign();
    let h = grid.h();
    let count = grid.n_points();
    let mut sub = Vec::with_capacity(count - 1);
    let mut sup = Vec::with_capacity(count - 1);
    let mut diag = Vec::with_capacity(count);
    for i in 0..count {
        let r = grid.r(i);
        diag.push(n - r / (a * n));
        if i + 1 < count {
            sup.push(sign * r / (2.0 * h));
        }
        if i > 0 {
            sub.push(-sign * r / (2.0 * h));
        }
    }
    Ok(ShiftOperator {
        n,
        a,
        shift,
        differential: TridiagonalOperator::from_diagonals(grid, &sub, &diag, &sup)?,
        dilation,
    })
}

/// `eps^+- = sqrt(((n +- 1)/n) (n(n +- 1) - l(l+1)))`, with the second factor
/// taken as `(n - l)(n + l + 1)` or `(n - l - 1)(n + l)` so that it vanishes
/// exactly at the bottom of the ladder.
pub fn matrix_element_eps(n: f64, ell: f64, shift: Shift) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::Domain(format!("n = {n} must be positive")));
    }
    // Gaps within rounding of zero are the ladder floor itself.
    let snap = |gap: f64| if gap.abs() <= 4.0 * f64::EPSILON * (n + ell.abs() + 1.0) { 0.0 } else { gap };
    if snap(n - ell - 1.0) < 0.0 {
        return Err(Error::Domain(format!("n = {n} lies below the bottom of the ladder n = l + 1 = {}", ell + 1.0)));
    }
    let radicand = match shift {
        Shift::Raise => (n + 1.0) / n * (snap(n - ell) * (n + ell + 1.0)),
        Shift::Lower => (n - 1.0) / n * (snap(n - ell - 1.0) * (n + ell)),
    };
    if radicand < 0.0 {
        if radicand > -1e-12 * n * n {
            return Ok(0.0);
        }
        return Err(Error::Domain(format!(
            "n = {n}, l = {ell} lies below the bottom of the ladder (radicand {radicand})"
        )));
    }
    Ok(radicand.sqrt())
}

/// Solves `n_eff(E) = N + 1 + l_eff(E)` on the spin-symmetric Kratzer
/// interval.
pub fn ladder_spectrum(p: &KratzerParams, kd: f64, nodes: usize) -> Result<f64> {
    let interval = kratzer::admissible_interval(Regime::SpinSymmetric, p, kd)?;
    let g = |e: f64| match (effective_n(e, p.m, p.v, p.c), effective_ell(kd, p.lambda, e, p.m)) {
        (Ok(n), Ok(l)) => n - (nodes as f64 + 1.0 + l),
        _ if 2.0 * p.c - e + p.m <= 0.0 => f64::INFINITY,
        _ => f64::NAN,
    };
    kratzer::unique_root_on(Regime::SpinSymmetric, interval, g)
}

/// `r^{l+1} e^{-r/(a n)} L^{2l+1}_N(2r/(a n))` with `N = n - l - 1`, which must
/// be a non-negative integer; normalized.
pub fn hydrogenic_state(n: f64, ell: f64, a: f64, grid: RadialGrid) -> Result<RadialFunction> {
    check_positive(n, a)?;
    let nodes = n - ell - 1.0;
    if nodes < -1e-9 || (nodes - nodes.round()).abs() > 1e-9 {
        return Err(Error::Domain(format!("n - l - 1 = {nodes} is not a node count")));
    }
    let state = laguerre_state(grid, ell + 1.0, 1.0 / (a * n), nodes.round() as usize)?;
    crate::grid::normalize(&state)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusExpectation {
    pub quadrature: f64,
    /// `(a/2)(3 n^2 - l(l+1))`.
    pub closed_form: f64,
}

impl RadiusExpectation {
    pub fn relative_error(&self) -> f64 {
        (self.quadrature - self.closed_form).abs() / self.closed_form.abs()
    }
}

pub fn expectation_r(n: f64, ell: f64, a: f64, state: &RadialFunction) -> Result<RadiusExpectation> {
    check_unit_norm(state)?;
    let r_psi = state.map_with_r(|r, x| r * x);
    Ok(RadiusExpectation {
        quadrature: inner_product(state, &r_psi)?,
        closed_form: 0.5 * a * (3.0 * n * n - ell * (ell + 1.0)),
    })
}

/// `int psi r psi' dr`, which integrates by parts to `-1/2` for a unit-norm
/// state vanishing at both ends.
pub fn r_dr_expectation(state: &RadialFunction) -> Result<f64> {
    check_unit_norm(state)?;
    let r_dpsi = state.derivative().map_with_r(|r, x| r * x);
    inner_product(state, &r_dpsi)
}

fn check_unit_norm(state: &RadialFunction) -> Result<()> {
    let norm = state.norm_sq();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::Usage(format!("state has norm {norm}, expected 1")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::normalized_overlap;
    use crate::operator::interior_residual;
    use approx::assert_abs_diff_eq;

    #[test]
    fn effective_principal_number() {
        assert_abs_diff_eq!(effective_n(0.6, 1.0, 0.5, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(effective_n(15.0 / 17.0, 1.0, 0.5, 0.0).unwrap(), 2.0, epsilon = 1e-14);
        let near = effective_n(1.0 - 1e-12, 1.0, 0.5, 0.1).unwrap();
        assert!((near - 0.5 * (2.0f64 / 0.2).sqrt()).abs() < 1e-10);
        assert!(effective_n(0.9, 1.0, -0.5, 0.0).is_err());
        for n in [1.0, 2.5, 4.0] {
            let e = energy_from_effective_n(n, 1.0, 0.7, 0.0);
            let q = 0.49 / (n * n);
            assert!((e - (1.0 - q) / (1.0 + q)).abs() < 1e-15);
            assert!((effective_n(e, 1.0, 0.7, 0.0).unwrap() - n).abs() < 1e-13);
        }
    }

    #[test]
    fn eps_examples() {
        assert_eq!(matrix_element_eps(1.0, 0.0, Shift::Lower).unwrap(), 0.0);
        assert_eq!(matrix_element_eps(2.0, 0.0, Shift::Raise).unwrap(), 3.0);
        assert_eq!(matrix_element_eps(2.0, 1.0, Shift::Lower).unwrap(), 0.0);
        assert_eq!(matrix_element_eps(2.7, 1.7, Shift::Lower).unwrap(), 0.0);
        assert!(matrix_element_eps(1.0, 1.0, Shift::Lower).is_err());
    }

    #[test]
    fn o_e_eigenvalue() {
        for (lambda, c) in [(0.0, 0.0), (0.5, 0.0), (0.3, 0.05)] {
            let p = KratzerParams::new(1.0, 0.8, lambda, c);
            let kd = 1.0;
            let lvl = kratzer::level(Regime::SpinSymmetric, &p, kd, 0).unwrap();
            let grid = RadialGrid::for_state(lvl.s, 0, lvl.decay, 1e-3).unwrap();
            let psi = laguerre_state(grid, lvl.s, lvl.decay, 0).unwrap();
            let o = build_o_e(lvl.energy, p.m, p.v, p.c, grid).unwrap();
            let expected = -(kd * (kd + 1.0) + 2.0 * lambda * (lvl.energy + p.m));
            if lambda == 0.0 {
                assert_eq!(expected, -2.0);
            }
            let res = interior_residual(&o.apply(&psi).unwrap(), &psi.scaled(expected), 2).unwrap();
            assert!(res < 1e-4, "lambda = {lambda}: {res}");
        }
        let grid = RadialGrid::new(10.0, 10).unwrap();
        assert!(build_o_e(2.0, 1.0, 0.5, 0.0, grid).is_err());
    }

    #[test]
    fn dilations_are_unitary_and_invertible() {
        let grid = RadialGrid::with_spacing(40.0, 5e-4).unwrap();
        let f = RadialFunction::from_fn(grid, |r| (-(r - 8.0) * (r - 8.0)).exp());
        let d = Dilation::for_shift(2.0, Shift::Raise).unwrap();
        let back = d.inverse().apply(&d.apply(&f));
        let err = back.values().iter().zip(f.values()).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(err < 1e-6, "{err}");
        assert!((d.apply(&f).norm_sq() - f.norm_sq()).abs() < 1e-6);
        assert!(Dilation::for_shift(1.0, Shift::Lower).is_err());
    }

    #[test]
    fn factorization_identity() {
        let grid = RadialGrid::with_spacing(60.0, 5e-4).unwrap();
        let (n, a) = (2.3, 0.9);
        let f = RadialFunction::from_fn(grid, |r| r * r * (-r / 1.5).exp());
        let o = build_o_n(n, a, grid).unwrap();
        for (shift, next) in [(Shift::Raise, n + 1.0), (Shift::Lower, n - 1.0)] {
            let q = build_q(n, a, grid, shift).unwrap();
            let back = build_q(next, a, grid, if shift == Shift::Raise { Shift::Lower } else { Shift::Raise }).unwrap();
            let lhs = back.apply(&q.apply(&f).unwrap()).unwrap();
            let rhs = o.apply(&f).unwrap().combine(1.0, &f, n * next).unwrap();
            let res = interior_residual(&lhs, &rhs, 10).unwrap();
            assert!(res < 1e-3, "{shift:?}: {res}");
        }
    }

    #[test]
    fn ladder_matches_relation() {
        let p = KratzerParams::new(1.0, 0.5, 0.0, 0.0);
        assert_abs_diff_eq!(ladder_spectrum(&p, 1.0, 0).unwrap(), 15.0 / 17.0, epsilon = 1e-14);
        let p = KratzerParams::new(1.0, 0.9, 0.4, 0.05);
        for nodes in 0..5 {
            let e = ladder_spectrum(&p, 1.5, nodes).unwrap();
            let k = kratzer::spin_energy(&p, 1.5, nodes).unwrap();
            assert!((e - k).abs() < 1e-12, "{nodes}: {e} {k}");
        }
        assert!(matches!(
            ladder_spectrum(&KratzerParams::new(1.0, -0.5, 0.0, 0.0), 1.0, 0),
            Err(Error::NoBoundState(_))
        ));
    }

    #[test]
    fn raising_and_annihilation() {
        let p = KratzerParams::new(1.0, 0.9, 0.3, 0.0);
        let lvl = kratzer::level(Regime::SpinSymmetric, &p, 1.0, 0).unwrap();
        let lp = LadderParams::at_energy(&p, 1.0, lvl.energy).unwrap();
        assert!(lp.nodes.abs() < 1e-10);
        let kappa = 1.0 / (lp.a * (lp.n_eff + 1.0));
        let grid = RadialGrid::for_state(lp.ell_eff + 1.0, 1, kappa, 5e-4).unwrap();
        let ground = hydrogenic_state(lp.n_eff, lp.ell_eff, lp.a, grid).unwrap();
        let next = hydrogenic_state(lp.n_eff + 1.0, lp.ell_eff, lp.a, grid).unwrap();
        let raised = build_q(lp.n_eff, lp.a, grid, Shift::Raise).unwrap().apply(&ground).unwrap();
        assert!(normalized_overlap(&raised, &next).unwrap() > 1.0 - 1e-4);
        let eps = matrix_element_eps(lp.n_eff, lp.ell_eff, Shift::Raise).unwrap();
        assert!((raised.norm_sq().sqrt() / eps - 1.0).abs() < 1e-3);
        let lowered = build_q(lp.n_eff, lp.a, grid, Shift::Lower).unwrap().apply(&ground).unwrap();
        assert!(lowered.norm_sq().sqrt() < 1e-4);
    }

    #[test]
    fn radius_expectations() {
        let a = 1.3;
        let grid = RadialGrid::with_spacing(120.0, 5e-4).unwrap();
        let state = hydrogenic_state(1.0, 0.0, a, grid).unwrap();
        let e = expectation_r(1.0, 0.0, a, &state).unwrap();
        assert!((e.closed_form - 1.5 * a).abs() < 1e-15);
        assert!(e.relative_error() < 1e-5);
        assert!((r_dr_expectation(&state).unwrap() + 0.5).abs() < 1e-6);
        let excited = hydrogenic_state(2.0, 0.0, a, grid).unwrap();
        assert!(expectation_r(2.0, 0.0, a, &excited).unwrap().relative_error() < 1e-5);
        assert!(expectation_r(1.0, 0.0, a, &state.scaled(2.0)).is_err());
    }
}
