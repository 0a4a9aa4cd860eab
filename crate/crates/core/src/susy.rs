//! First-order factorization `A^± = ±d/dr + W(r)` with `W(r) = s/r - alpha/s`,
//! the partner Hamiltonians it generates, and shape invariance under
//! `s -> s + 1`.

use crate::error::{Error, Result};
use crate::grid::{check_tail, RadialFunction, RadialGrid};
use crate::linalg::BandMatrix;
pub use crate::operator::TridiagonalOperator;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superpotential {
    pub s: f64,
    pub alpha: f64,
}

impl Superpotential {
    pub fn new(s: f64, alpha: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite() && alpha.is_finite()) {
            return Err(Error::Domain(format!("superpotential needs s > 0, got s = {s}, alpha = {alpha}")));
        }
        Ok(Self { s, alpha })
    }

    pub fn w(&self, r: f64) -> f64 {
        self.s / r - self.alpha / self.s
    }

    /// `W^2 + W'`, the potential of `A^+ A^-`.
    pub fn v2(&self, r: f64) -> f64 {
        let (s, a) = (self.s, self.alpha);
        s * (s - 1.0) / (r * r) - 2.0 * a / r + a * a / (s * s)
    }

    /// `W^2 - W'`, the potential of `A^- A^+`.
    pub fn v1(&self, r: f64) -> f64 {
        let (s, a) = (self.s, self.alpha);
        s * (s + 1.0) / (r * r) - 2.0 * a / r + a * a / (s * s)
    }

    /// Zero mode of `A^-`: `r^s e^{-alpha r / s}`.
    pub fn ground_state(&self, grid: RadialGrid) -> RadialFunction {
        let kappa = self.alpha / self.s;
        RadialFunction::from_fn(grid, |r| (self.s * r.ln() - kappa * r).exp())
    }
}

/// `(A^+, A^-)` with central differences; `A^-` is the transpose of `A^+`.
pub fn build_ladder(s: f64, alpha: f64, grid: RadialGrid) -> Result<(TridiagonalOperator, TridiagonalOperator)> {
    let w = Superpotential::new(s, alpha)?;
    Ok((
        TridiagonalOperator::first_order(grid, 1.0, |r| w.w(r)),
        TridiagonalOperator::first_order(grid, -1.0, |r| w.w(r)),
    ))
}

/// `H1 = -d^2/dr^2 + s(s+1)/r^2 - 2 alpha/r + alpha^2/s^2` and `H2`, the same
/// with `s(s-1)`, assembled directly with the three-point Laplacian.
pub fn partner_hamiltonians(s: f64, alpha: f64, grid: RadialGrid) -> Result<(TridiagonalOperator, TridiagonalOperator)> {
    let w = Superpotential::new(s, alpha)?;
    Ok((
        TridiagonalOperator::schrodinger(grid, |r| w.v1(r)),
        TridiagonalOperator::schrodinger(grid, |r| w.v2(r)),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeInvarianceRecord {
    /// `a_k = s + k - 1` for `k = 1..=levels`.
    pub a_sequence: Vec<f64>,
    /// `R(a_k) = alpha^2/a_k^2 - alpha^2/(a_k + 1)^2`.
    pub remainders: Vec<f64>,
    /// `E_n = sum_{k <= n} R(a_k)` for `n = 0..=levels`, starting at zero.
    pub accumulated: Vec<f64>,
    /// Largest spread of `V1(r; a_k) - V2(r; a_k + 1)` over the sampled radii.
    pub max_r_dependence: f64,
}

/// Checks `V1(r; a) = V2(r; a + 1) + R(a)` on the given radii along the chain
/// `a_1 = s, a_{k+1} = a_k + 1` and accumulates the remainders.
pub fn verify_shape_invariance(s: f64, alpha: f64, r_samples: &[f64], levels: usize) -> Result<ShapeInvarianceRecord> {
    Superpotential::new(s, alpha)?;
    let mut record = ShapeInvarianceRecord {
        a_sequence: Vec::with_capacity(levels),
        remainders: Vec::with_capacity(levels),
        accumulated: vec![0.0],
        max_r_dependence: 0.0,
    };
    let mut total = 0.0;
    for k in 0..levels {
        let a = s + k as f64;
        let this = Superpotential { s: a, alpha };
        let next = Superpotential { s: a + 1.0, alpha };
        let remainder = alpha * alpha / (a * a) - alpha * alpha / ((a + 1.0) * (a + 1.0));
        for &r in r_samples {
            let lhs = this.v1(r);
            let deviation = (lhs - next.v2(r) - remainder).abs() / lhs.abs().max(1.0);
            record.max_r_dependence = record.max_r_dependence.max(deviation);
        }
        total += remainder;
        record.a_sequence.push(a);
        record.remainders.push(remainder);
        record.accumulated.push(total);
    }
    if record.max_r_dependence > 1e-12 {
        return Err(Error::AlgebraViolation(record.max_r_dependence));
    }
    Ok(record)
}

/// `A^+(s, alpha)` applied to the previous state of the `s + 1` problem.
pub fn raise_state(psi_prev: &RadialFunction, s: f64, alpha: f64) -> Result<RadialFunction> {
    check_tail(psi_prev, 1e-10)?;
    let (plus, _) = build_ladder(s, alpha, *psi_prev.grid())?;
    plus.apply(psi_prev)
}

/// 2x2 block operator whose blocks are band matrices or structural zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    pub blocks: [[Option<BandMatrix>; 2]; 2],
}

impl BlockOperator {
    pub fn mul(&self, other: &BlockOperator) -> BlockOperator {
        let entry = |i: usize, j: usize| {
            (0..2)
                .filter_map(|k| match (&self.blocks[i][k], &other.blocks[k][j]) {
                    (Some(a), Some(b)) => Some(a.mul(b)),
                    _ => None,
                })
                .reduce(|acc, x| acc.add_scaled(&x, 1.0))
        };
        BlockOperator {
            blocks: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        }
    }

    pub fn add_scaled(&self, other: &BlockOperator, scale: f64) -> BlockOperator {
        let entry = |i: usize, j: usize| match (&self.blocks[i][j], &other.blocks[i][j]) {
            (Some(a), Some(b)) => Some(a.add_scaled(b, scale)),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(BandMatrix::zeros(b.dim(), 0, 0).add_scaled(b, scale)),
            (None, None) => None,
        };
        BlockOperator {
            blocks: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        }
    }

    /// True when every block is a structural zero.
    pub fn is_structural_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Option::is_none)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .flatten()
            .map(|b| b.frobenius_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperchargeReport {
    pub q_squared_zero: bool,
    pub q_dagger_squared_zero: bool,
    /// Frobenius norm of `{Q, Q^dagger} - diag(A^+ A^-, A^- A^+)`.
    pub anticommutator_deviation: f64,
    /// `||[H, Q]|| / (||H|| ||Q||)` with `H = {Q, Q^dagger}`.
    pub commutator_relative: f64,
}

/// Builds `Q = [[0, 0], [A^-, 0]]` and `Q^dagger = [[0, A^+], [0, 0]]` and
/// checks nilpotency, the anticommutator and `[H, Q] = 0`.
pub fn supercharge_check(a_plus: &TridiagonalOperator, a_minus: &TridiagonalOperator) -> Result<SuperchargeReport> {
    crate::grid::check_same_grid(a_plus.grid(), a_minus.grid())?;
    let (ap, am) = (a_plus.matrix().clone(), a_minus.matrix().clone());
    let q = BlockOperator {
        blocks: [[None, None], [Some(am.clone()), None]],
    };
    let q_dag = BlockOperator {
        blocks: [[None, Some(ap.clone())], [None, None]],
    };
    let h = q.mul(&q_dag).add_scaled(&q_dag.mul(&q), 1.0);
    let expected = BlockOperator {
        blocks: [[Some(ap.mul(&am)), None], [None, Some(am.mul(&ap))]],
    };
    let commutator = h.mul(&q).add_scaled(&q.mul(&h), -1.0);
    Ok(SuperchargeReport {
        q_squared_zero: q.mul(&q).is_structural_zero(),
        q_dagger_squared_zero: q_dag.mul(&q_dag).is_structural_zero(),
        anticommutator_deviation: h.add_scaled(&expected, -1.0).frobenius_norm(),
        commutator_relative: commutator.frobenius_norm() / (h.frobenius_norm() * q.frobenius_norm()),
    })
}
