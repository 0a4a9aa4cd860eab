//! Finite-volume reference solver for the second-order radial equations
//!
//! `-psi'' + [L(E)/r^2 - 2 f v / r + 2 f c] psi = (E^2 - m^2) psi`,
//!
//! with `f = E + m`, `L = kd(kd+1) + 2 lambda f` for the upper component
//! under spin symmetry and `f = E - m`, `L = kd(kd-1) + 2 lambda f` for the
//! lower component under pseudo-spin symmetry. The Coulomb spin case is
//! solved for the transformed lower component, `L = kd(kd-1)`.
//!
//! The coefficients depend on E, so a level is the root of
//! `g(E) = mu_n(E) - (E^2 - m^2)` where `mu_n` is the n-th eigenvalue of the
//! discretized operator with E frozen. The sign of `g` is read off a single
//! Sturm count, so the root search never needs eigenvalues until the end.

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::linalg::{bisect_eigenvalue, sturm_count};
use crate::potential::{PotentialSpec, Shape};
use crate::quantum::Regime;
use crate::roots::bisect_flip;

/// Default spacing in units of the decay length of the level.
pub const RELATIVE_SPACING: f64 = 5e-4;

/// Scan points used to bracket the level on the coarse pass.
const SCAN_POINTS: usize = 240;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveProblem {
    pub spec: PotentialSpec,
    pub kd: f64,
    pub n: usize,
    pub grid: RadialGrid,
}

impl EffectiveProblem {
    pub fn new(spec: PotentialSpec, kd: f64, n: usize, grid: RadialGrid) -> Self {
        Self { spec, kd, n, grid }
    }

    fn coupling(&self, energy: f64) -> f64 {
        self.spec.regime.coupling_factor(self.spec.m, energy)
    }

    /// Coefficient of `1/r^2`.
    pub fn centrifugal(&self, energy: f64) -> f64 {
        let kd = self.kd;
        let base = match (self.spec.regime, self.spec.shape) {
            (Regime::SpinSymmetric, Shape::Kratzer { .. }) => kd * (kd + 1.0),
            _ => kd * (kd - 1.0),
        };
        base + 2.0 * self.spec.shape.lambda() * self.coupling(energy)
    }

    /// Value of the effective potential at infinity, `2 f c`.
    pub fn asymptote(&self, energy: f64) -> f64 {
        2.0 * self.coupling(energy) * self.spec.shape.c()
    }

    pub fn target(&self, energy: f64) -> f64 {
        energy * energy - self.spec.m * self.spec.m
    }

    pub fn v_eff(&self, r: f64, energy: f64) -> f64 {
        let f = self.coupling(energy);
        self.centrifugal(energy) / (r * r) - 2.0 * f * self.spec.shape.v() / r + self.asymptote(energy)
    }

    /// Frobenius exponent `s` of the regular solution `r^s` at the origin,
    /// from `s(s-1) = L(E)`; `None` when the core falls to the centre.
    pub fn local_exponent(&self, energy: f64) -> Option<f64> {
        let disc = 0.25 + self.centrifugal(energy);
        (disc >= 0.0).then(|| 0.5 + disc.sqrt())
    }

    /// Tridiagonal pencil `(A, M)` at frozen `energy`.
    ///
    /// With `psi = r^s phi`, where `r^s` is the regular Frobenius power at
    /// the origin, the equation reads `-(r^{2s} phi')' + r^{2s} U phi = mu r^{2s} phi`
    /// with `U = -2fv/r + 2fc`. Integrating over the cells around the nodes
    /// `r_i = i h`, starting with the half cell at the origin and closing
    /// with `phi = 0` at `r_max`, gives a symmetric pencil with exact cell
    /// weights. Since `phi` is smooth the eigenvalues converge like `h^2`
    /// for every `s > 1/2`; collocating the `1/r^2` term directly degrades
    /// to `h^{2s}` once `s < 1`.
    fn pencil(&self, energy: f64) -> Result<Pencil> {
        let s = self.local_exponent(energy).ok_or_else(|| {
            Error::Domain(format!("inverse-square coefficient below -1/4 at E = {energy}"))
        })?;
        let f = self.coupling(energy);
        let coulomb = -2.0 * f * self.spec.shape.v();
        let asymptote = self.asymptote(energy);
        let h = self.grid.h();
        let count = self.grid.n_points() + 1;
        let p = 2.0 * s;
        let mut diag = Vec::with_capacity(count);
        let mut off = Vec::with_capacity(count - 1);
        let mut mass = Vec::with_capacity(count);
        // r^p and r^{p+1} at the lower face of the current cell.
        let (mut lower_p, mut lower_p1) = (0.0, 0.0);
        for i in 0..count {
            let face = (i as f64 + 0.5) * h;
            let upper_p = (p * face.ln()).exp();
            let upper_p1 = upper_p * face;
            let m_cell = (upper_p1 - lower_p1) / (p + 1.0);
            let k_cell = coulomb * (upper_p - lower_p) / p;
            diag.push((upper_p + lower_p) / h + k_cell + asymptote * m_cell);
            mass.push(m_cell);
            if i + 1 < count {
                off.push(-upper_p / h);
            }
            (lower_p, lower_p1) = (upper_p, upper_p1);
        }
        Ok(Pencil { diag, off, mass })
    }

    /// Number of eigenvalues of the operator frozen at `energy` lying below `x`.
    pub fn count_below(&self, energy: f64, x: f64) -> Result<usize> {
        Ok(self.pencil(energy)?.count_below(x))
    }

    /// The lowest `count` eigenvalues at frozen `energy`.
    pub fn eigenvalues_at(&self, energy: f64, count: usize) -> Result<Vec<f64>> {
        let pencil = self.pencil(energy)?;
        let (lo, hi) = pencil.bounds();
        Ok((0..count)
            .map(|k| bisect_eigenvalue(|x| pencil.count_below(x), k, lo, hi))
            .collect())
    }

    /// Eigenvalue `k` at frozen `energy`, bracketed outward from `guess`.
    fn eigenvalue_near(&self, energy: f64, k: usize, guess: f64) -> Result<f64> {
        let pencil = self.pencil(energy)?;
        let (lo_bound, hi_bound) = pencil.bounds();
        let mut width = 1e-8 * (guess.abs() + 1.0);
        loop {
            let (lo, hi) = ((guess - width).max(lo_bound), (guess + width).min(hi_bound));
            if pencil.count_below(lo) <= k && pencil.count_below(hi) > k {
                return Ok(bisect_eigenvalue(|x| pencil.count_below(x), k, lo, hi));
            }
            if lo <= lo_bound && hi >= hi_bound {
                return Err(Error::Numerical(format!("eigenvalue {k} not bracketed at E = {energy}")));
            }
            width *= 16.0;
        }
    }
}

/// Symmetric tridiagonal `A` with positive diagonal `M`. The eigenvalues of
/// `A v = mu M v` are those of `M^{-1/2} A M^{-1/2}`, and `A - x M` has the
/// same inertia, so counting needs no square roots.
struct Pencil {
    diag: Vec<f64>,
    off: Vec<f64>,
    mass: Vec<f64>,
}

impl Pencil {
    fn count_below(&self, x: f64) -> usize {
        sturm_count(self.diag.len(), |i| self.diag[i] - x * self.mass[i], |i| self.off[i])
    }

    /// Gershgorin bounds of `M^{-1/2} A M^{-1/2}`.
    fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let scaled = |i: usize| self.off[i].abs() / (self.mass[i] * self.mass[i + 1]).sqrt();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let below = if i > 0 { scaled(i - 1) } else { 0.0 };
            let above = if i + 1 < n { scaled(i) } else { 0.0 };
            let d = self.diag[i] / self.mass[i];
            lo = lo.min(d - below - above);
            hi = hi.max(d + below + above);
        }
        (lo, hi)
    }
}

/// `mu_n` at frozen energy; fails when fewer than `n + 1` eigenvalues lie
/// below the asymptote of the effective potential.
pub fn eigenvalue_at(energy: f64, problem: &EffectiveProblem) -> Result<f64> {
    let available = problem.count_below(energy, problem.asymptote(energy))?;
    if available <= problem.n {
        return Err(Error::NoLevel {
            level: problem.n,
            available,
        });
    }
    Ok(problem.eigenvalues_at(energy, problem.n + 1)?[problem.n])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSolution {
    pub energy: f64,
    /// `mu_n(E) - (E^2 - m^2)` at the returned energy.
    pub residual: f64,
    pub grid: RadialGrid,
}

/// Energies below the asymptote, `E^2 - m^2 < 2 f c`, where the inverse-square
/// core does not fall to the centre.
fn search_interval(problem: &EffectiveProblem) -> Result<(f64, f64)> {
    let (m, c) = (problem.spec.m, problem.spec.shape.c());
    // (E + m)(E - m - 2c) < 0 or (E - m)(E + m - 2c) < 0.
    let (a, b) = match problem.spec.regime {
        Regime::SpinSymmetric => (-m, m + 2.0 * c),
        Regime::PseudoSpinSymmetric => (m, 2.0 * c - m),
    };
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let lambda = problem.spec.shape.lambda();
    if lambda != 0.0 {
        // L(E) + 1/4 is linear in E with slope 2 lambda.
        let edge = {
            let at_lo = problem.centrifugal(lo) + 0.25;
            lo - at_lo / (2.0 * lambda)
        };
        if lambda > 0.0 {
            lo = lo.max(edge);
        } else {
            hi = hi.min(edge);
        }
    }
    if !(lo < hi) {
        return Err(Error::NoBoundState("no energy keeps the effective core regular".into()));
    }
    Ok((lo, hi))
}

/// Level of `problem` on its own grid: the energy at which the Sturm count
/// of eigenvalues below `E^2 - m^2` passes `n`.
pub fn self_consistent_energy(problem: &EffectiveProblem) -> Result<OracleSolution> {
    let (lo, hi) = search_interval(problem)?;
    let flips = scan(problem, lo, hi, SCAN_POINTS);
    finish(problem, single_bracket(problem, flips?)?)
}

/// Predicate `mu_n(E) < E^2 - m^2`; `None` where the core is singular.
fn below(problem: &EffectiveProblem, energy: f64) -> Option<bool> {
    problem
        .count_below(energy, problem.target(energy))
        .ok()
        .map(|count| count > problem.n)
}

/// Chebyshev-spaced scan, dense near both ends where weakly bound levels sit.
fn scan(problem: &EffectiveProblem, lo: f64, hi: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    let mut flips = Vec::new();
    let mut prev: Option<(f64, bool)> = None;
    for k in 1..points {
        let t = std::f64::consts::PI * k as f64 / points as f64;
        let e = lo + (hi - lo) * 0.5 * (1.0 - t.cos());
        let Some(state) = below(problem, e) else {
            prev = None;
            continue;
        };
        if let Some((ep, sp)) = prev {
            if sp != state {
                flips.push((ep, e));
            }
        }
        prev = Some((e, state));
    }
    Ok(flips)
}

fn single_bracket(problem: &EffectiveProblem, flips: Vec<(f64, f64)>) -> Result<(f64, f64)> {
    match flips.as_slice() {
        [] => Err(Error::NoBoundState(format!(
            "no {} level n = {} for kd = {}",
            problem.spec.regime, problem.n, problem.kd
        ))),
        [one] => Ok(*one),
        _ => Err(Error::MultipleRoots {
            roots: flips
                .iter()
                .map(|&(a, b)| bisect_flip(|e| below(problem, e).unwrap_or(false), a, b, 0.0))
                .collect(),
        }),
    }
}

fn finish(problem: &EffectiveProblem, (a, b): (f64, f64)) -> Result<OracleSolution> {
    let energy = bisect_flip(|e| below(problem, e).unwrap_or(false), a, b, 0.0);
    let available = problem.count_below(energy, problem.asymptote(energy))?;
    if available <= problem.n {
        return Err(Error::NoLevel {
            level: problem.n,
            available,
        });
    }
    let mu = problem.eigenvalue_near(energy, problem.n, problem.target(energy))?;
    Ok(OracleSolution {
        energy,
        residual: mu - problem.target(energy),
        grid: problem.grid,
    })
}

/// Solves with a grid chosen from the level itself: a coarse pass locates the
/// level, then the grid is rebuilt with spacing `relative_spacing / kappa` and
/// `r_max = (3(s + n) + 30) / kappa`, where `kappa = sqrt(2fc - E^2 + m^2)` is
/// the asymptotic decay rate, until the grid matches the level it produced.
pub fn solve(spec: PotentialSpec, kd: f64, n: usize, relative_spacing: f64) -> Result<OracleSolution> {
    spec.validate()?;
    let v = spec.shape.v().abs();
    if v == 0.0 {
        return Err(Error::NoBoundState("no Coulomb tail to bind a level".into()));
    }
    // Coarse pass, sized generously from the coupling scale alone.
    let s0 = 0.5 + (0.25 + (kd * (kd + 1.0)).abs()).sqrt();
    let kappa0 = v * spec.m / (s0 + n as f64 + 1.0);
    let r_max0 = 3.0 * (3.0 * (s0 + n as f64) + 30.0) / kappa0;
    let coarse = EffectiveProblem::new(spec, kd, n, RadialGrid::with_spacing(r_max0, 0.05 / kappa0)?);
    let mut solution = self_consistent_energy(&coarse)?;

    for _ in 0..4 {
        let problem = fitted_problem(spec, kd, n, solution.energy, relative_spacing)?;
        let grid = problem.grid;
        if grid == solution.grid {
            return Ok(solution);
        }
        solution = near(&problem, solution.energy)?;
        let refit = fitted_problem(spec, kd, n, solution.energy, relative_spacing)?;
        if refit.grid.r_max() <= grid.r_max() * 1.01 && refit.grid.h() >= grid.h() * 0.99 {
            return Ok(solution);
        }
    }
    Err(Error::Numerical(format!(
        "oracle grid did not settle for {} kd = {kd} n = {n}",
        spec.regime
    )))
}

fn fitted_problem(spec: PotentialSpec, kd: f64, n: usize, energy: f64, relative_spacing: f64) -> Result<EffectiveProblem> {
    let probe = EffectiveProblem::new(spec, kd, n, RadialGrid::new(1.0, 3)?);
    let kappa_sq = probe.asymptote(energy) - probe.target(energy);
    if !(kappa_sq > 0.0) {
        return Err(Error::NoBoundState(format!("E = {energy} is not below the asymptote")));
    }
    let kappa = kappa_sq.sqrt();
    let s = probe
        .local_exponent(energy)
        .ok_or_else(|| Error::Domain(format!("singular core at E = {energy}")))?;
    let grid = RadialGrid::for_state(s, n, kappa, relative_spacing / kappa)?;
    Ok(EffectiveProblem::new(spec, kd, n, grid))
}

/// Re-solves on a finer grid near a known estimate, widening the bracket
/// until the predicate flips across it; falls back to a full scan.
fn near(problem: &EffectiveProblem, estimate: f64) -> Result<OracleSolution> {
    let (lo, hi) = search_interval(problem)?;
    let mut width = 1e-4 * (hi - lo);
    while width < 0.1 * (hi - lo) {
        let a = (estimate - width).max(lo + 0.5 * (estimate - lo).min(width));
        let b = (estimate + width).min(hi - 0.5 * (hi - estimate).min(width));
        if let (Some(pa), Some(pb)) = (below(problem, a), below(problem, b)) {
            if pa != pb {
                return finish(problem, (a, b));
            }
        }
        width *= 4.0;
    }
    self_consistent_energy(problem)
}
