//! Bracketing and refinement of scalar roots.

use crate::error::{Error, Result};

/// Samples `f` at `samples` points strictly inside `(lo, hi)` and returns
/// every consecutive pair whose values change sign. A sample that is exactly
/// zero is returned as a degenerate bracket.
pub fn scan_sign_changes(f: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Vec<(f64, f64)> {
    let step = (hi - lo) / (samples as f64 + 1.0);
    sign_changes_at(f, (1..=samples).map(|i| lo + step * i as f64))
}

/// Sign-change brackets of `f` between consecutive points of an increasing
/// sequence; infinities count with their sign and NaN breaks the chain.
pub fn sign_changes_at(f: impl Fn(f64) -> f64, points: impl IntoIterator<Item = f64>) -> Vec<(f64, f64)> {
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for x in points {
        let fx = f(x);
        if fx.is_nan() {
            prev = None;
            continue;
        }
        if fx == 0.0 {
            brackets.push((x, x));
            prev = None;
            continue;
        }
        if let Some((xp, fp)) = prev {
            if fp.signum() != fx.signum() {
                brackets.push((xp, x));
            }
        }
        prev = Some((x, fx));
    }
    brackets
}

/// Same scan for a boolean predicate: brackets where its value flips.
pub fn scan_flips(p: impl Fn(f64) -> bool, lo: f64, hi: f64, samples: usize) -> Vec<(f64, f64)> {
    let step = (hi - lo) / (samples as f64 + 1.0);
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, bool)> = None;
    for i in 1..=samples {
        let x = lo + step * i as f64;
        let px = p(x);
        if let Some((xp, pp)) = prev {
            if pp != px {
                brackets.push((xp, x));
            }
        }
        prev = Some((x, px));
    }
    brackets
}

/// Refines a sign-change bracket with regula falsi steps (Illinois
/// weighting) and a bisection fallback whenever a step fails to halve the
/// bracket. Stops when the bracket is below `xtol` or can no longer shrink
/// in floating point; returns the endpoint with the smaller residual.
pub fn refine_root(f: impl Fn(f64) -> f64, a: f64, b: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (a.min(b), a.max(b));
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::Numerical(format!(
            "[{a}, {b}] does not bracket a root (f = {fa}, {fb})"
        )));
    }
    // Which end was kept on the previous step: -1 left, +1 right.
    let mut retained = 0;
    for iter in 0..500 {
        let width = b - a;
        if width <= xtol || width <= 2.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
        let mut x = (a * fb - b * fa) / (fb - fa);
        // Every third step is a plain bisection so the width always shrinks.
        if iter % 3 == 2 || !(x > a && x < b) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if retained == 1 {
                fb *= 0.5;
            }
            retained = 1;
        } else {
            b = x;
            fb = fx;
            if retained == -1 {
                fa *= 0.5;
            }
            retained = -1;
        }
    }
    // The Illinois weights distort fa/fb; re-evaluate to pick the endpoint.
    Ok(if f(a).abs() <= f(b).abs() { a } else { b })
}

/// Bisection on a boolean predicate with `p(a) != p(b)`, down to adjacent
/// floating-point values or `xtol`. Returns the midpoint of the final bracket.
pub fn bisect_flip(p: impl Fn(f64) -> bool, a: f64, b: f64, xtol: f64) -> f64 {
    let (mut a, mut b) = (a.min(b), a.max(b));
    let pa = p(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a <= xtol || mid <= a || mid >= b {
            break;
        }
        if p(mid) == pa {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cubic_roots() {
        let f = |x: f64| (x - 0.3) * (x + 1.2) * (x - 2.0);
        let brackets = scan_sign_changes(f, -3.0, 3.0, 1000);
        assert_eq!(brackets.len(), 3);
        let roots: Vec<f64> = brackets
            .iter()
            .map(|&(a, b)| refine_root(f, a, b, 1e-15).unwrap())
            .collect();
        for (r, exact) in roots.iter().zip([-1.2, 0.3, 2.0]) {
            assert!((r - exact).abs() < 1e-14, "{r} vs {exact}");
        }
    }

    #[test]
    fn refines_square_root_edges() {
        // Infinite slope at the root, as near a bound-state threshold.
        let f = |x: f64| (1.0 - x).max(0.0).sqrt() - 0.01;
        let r = refine_root(f, 0.0, 1.0, 0.0).unwrap();
        assert!((r - 0.9999).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_bracket() {
        assert!(refine_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn predicate_bisection() {
        let r = bisect_flip(|x| x > std::f64::consts::E, 0.0, 10.0, 0.0);
        assert!((r - std::f64::consts::E).abs() < 1e-14);
        assert_eq!(scan_flips(|x| x.sin() > 0.0, 0.1, 7.0, 100).len(), 2);
    }
}
