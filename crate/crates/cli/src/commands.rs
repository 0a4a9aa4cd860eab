use dirac_susy::coulomb::{self, SpinorAssembly};
use dirac_susy::kratzer::{self, KratzerParams};
use dirac_susy::{Kd, PotentialSpec, QuantumNumbers, RadialGrid, Regime, Shape, SpinorPair};

use crate::args::{ModelArgs, PotentialArg, SpectrumArgs, WavefunctionArgs};
use crate::error::CliError;
use crate::output::{Cell, Table};

/// Largest allowed deviation of the emitted columns from unit joint norm
/// under the trapezoid rule applied to the file itself.
pub const NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct Model {
    pub spec: PotentialSpec,
    pub kd: Kd,
    pub quantum_numbers: Option<QuantumNumbers>,
}

impl Model {
    pub fn resolve(args: &ModelArgs) -> Result<Self, CliError> {
        let regime = Regime::from(args.regime);
        let (kd, quantum_numbers) = match (args.kd, args.d, args.j, args.ell) {
            (Some(twice), None, None, None) => (Kd::from_twice(twice)?, None),
            (None, Some(d), Some(twice_j), Some(ell)) => {
                let twice_j = u32::try_from(twice_j)
                    .map_err(|_| CliError::usage(format!("j = {twice_j}/2 must be positive")))?;
                let qn = QuantumNumbers::new(d, twice_j, ell, regime)?;
                (qn.kd, Some(qn))
            }
            _ => {
                return Err(CliError::usage(
                    "give either --kd or all three of --d, --j, --ell",
                ))
            }
        };
        let spec = match args.potential {
            PotentialArg::Coulomb => {
                if args.lambda.is_some_and(|x| x != 0.0) || args.c.is_some_and(|x| x != 0.0) {
                    return Err(CliError::usage("--lambda and --c apply to the kratzer potential only"));
                }
                PotentialSpec::coulomb(regime, args.m, args.v)
            }
            PotentialArg::Kratzer => PotentialSpec::kratzer(
                regime,
                args.m,
                args.v,
                args.lambda.unwrap_or(0.0),
                args.c.unwrap_or(0.0),
            ),
        };
        spec.validate()?;
        spec.check_regime()?;
        Ok(Self {
            spec,
            kd,
            quantum_numbers,
        })
    }

    pub fn regime(&self) -> Regime {
        self.spec.regime
    }

    fn kratzer_params(&self) -> KratzerParams {
        let s = &self.spec.shape;
        KratzerParams::new(self.spec.m, s.v(), s.lambda(), s.c())
    }

    pub fn level(&self, n: usize) -> Result<Level, CliError> {
        let kd = self.kd.value();
        let level = match self.spec.shape {
            Shape::Coulomb { v } => {
                let l = coulomb::level(self.regime(), self.spec.m, v, kd, n)?;
                Level {
                    energy: l.energy,
                    s: kd,
                    alpha: l.alpha,
                    decay: l.decay,
                }
            }
            Shape::Kratzer { .. } => {
                let l = kratzer::level(self.regime(), &self.kratzer_params(), kd, n)?;
                Level {
                    energy: l.energy,
                    s: l.s,
                    alpha: l.alpha,
                    decay: l.decay,
                }
            }
        };
        Ok(level)
    }

    fn describe(&self, table: &mut Table) {
        let s = &self.spec.shape;
        table
            .meta("regime", self.regime().name())
            .meta("potential", s.name())
            .meta("m", self.spec.m)
            .meta("v", s.v())
            .meta("lambda", s.lambda())
            .meta("c", s.c())
            .meta("kd", self.kd.to_string())
            .meta("kd_value", self.kd.value());
        if let Some(qn) = self.quantum_numbers {
            table
                .meta("d", qn.d)
                .meta("j", format!("{}/2", qn.twice_j))
                .meta("ell", qn.ell)
                .meta("tau", i64::from(qn.tau()));
        }
    }

    /// Normalized spinor of level `n`; the spin-symmetric Coulomb ground
    /// level has none.
    pub fn spinor(&self, n: usize, grid: RadialGrid) -> Result<SpinorPair, CliError> {
        let kd = self.kd.value();
        match self.spec.shape {
            Shape::Coulomb { v } => match coulomb::assemble_spinor(self.spec.m, v, kd, n, grid, self.regime())? {
                SpinorAssembly::Spinor { pair, .. } => Ok(pair),
                SpinorAssembly::MissingSinglet => Err(CliError::missing_singlet(format!(
                    "the spin-symmetric ground level (n = 0, kd = {}) has no normalizable spinor partner",
                    self.kd
                ))),
            },
            Shape::Kratzer { .. } => Ok(kratzer::assemble_spinor(self.regime(), &self.kratzer_params(), kd, n, grid)?),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    /// Power of `r` at the origin of the second-order component.
    pub s: f64,
    pub alpha: f64,
    pub decay: f64,
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Table, CliError> {
    let model = Model::resolve(&args.model)?;
    let mut table = Table::new(vec!["n", "energy", "s", "alpha", "decay", "binding", "missing_spinor_partner"]);
    table.meta("command", "spectrum");
    model.describe(&mut table);
    table.meta("nmax", args.nmax);
    let m = model.spec.m;
    for n in 0..=args.nmax {
        let level = model.level(n)?;
        table.push(vec![
            n.into(),
            level.energy.into(),
            level.s.into(),
            level.alpha.into(),
            level.decay.into(),
            (m - level.energy.abs()).into(),
            (model.regime() == Regime::SpinSymmetric && n == 0).into(),
        ]);
    }
    Ok(table)
}

/// Trapezoid on rows `(r, f)` as written, endpoints included.
pub fn trapezoid_rows(r: &[f64], f: &[f64]) -> f64 {
    r.windows(2)
        .zip(f.windows(2))
        .map(|(r, f)| 0.5 * (r[1] - r[0]) * (f[0] + f[1]))
        .sum()
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<Table, CliError> {
    let model = Model::resolve(&args.model)?;
    let level = model.level(args.n)?;
    let grid = match args.r_max {
        Some(r_max) => RadialGrid::with_spacing(r_max, args.h)?,
        None => RadialGrid::for_state(level.s, args.n, level.decay, args.h)?,
    };
    let pair = model.spinor(args.n, grid)?;

    // Dirichlet endpoints are written explicitly so that the file alone
    // carries the quadrature.
    let mut r = vec![0.0];
    r.extend(grid.points());
    r.push(grid.r_max());
    let pad = |f: &[f64]| {
        let mut out = Vec::with_capacity(f.len() + 2);
        out.push(0.0);
        out.extend_from_slice(f);
        out.push(0.0);
        out
    };
    let psi1 = pad(pair.psi1.values());
    let psi2 = pad(pair.psi2.values());
    let density: Vec<f64> = psi1.iter().zip(&psi2).map(|(a, b)| a * a + b * b).collect();
    let norm = trapezoid_rows(&r, &density);
    if !((norm - 1.0).abs() <= NORM_TOLERANCE) {
        return Err(CliError {
            code: "resolution",
            message: format!(
                "sampled spinor has trapezoid norm {norm:.10} on h = {}; refine --h",
                grid.h()
            ),
            exit_code: crate::error::exit::INVALID,
        });
    }

    let mut table = Table::new(vec!["r", "psi1", "psi2"]);
    table.meta("command", "wavefunction");
    model.describe(&mut table);
    table
        .meta("n", args.n)
        .meta("energy", level.energy)
        .meta("s", level.s)
        .meta("alpha", level.alpha)
        .meta("decay", level.decay)
        .meta("h", grid.h())
        .meta("r_max", grid.r_max())
        .meta("rows", r.len())
        .meta("norm", norm)
        .meta("norm_residual", norm - 1.0);
    for ((r, a), b) in r.iter().zip(&psi1).zip(&psi2) {
        table.push(vec![Cell::Float(*r), Cell::Float(*a), Cell::Float(*b)]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_on_rows() {
        let r: Vec<f64> = (0..=1000).map(|i| i as f64 * 1e-3).collect();
        let f: Vec<f64> = r.iter().map(|x| x * x).collect();
        assert!((trapezoid_rows(&r, &f) - 1.0 / 3.0).abs() < 1e-6);
        assert_eq!(trapezoid_rows(&[0.0], &[1.0]), 0.0);
    }
}
