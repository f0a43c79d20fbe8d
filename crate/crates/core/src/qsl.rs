//! Bures angle and Liouvillian-norm quantum speed limits along a trajectory.
//!
//! `V_QSL(t) = ‖dρ/dt‖_op / sin 2𝓛(t)` and
//! `τ_QSL(τ) = sin² 𝓛(τ) / ((1/τ) ∫₀^τ ‖dρ/dt‖_op dt)`, where `𝓛` is the
//! Bures angle from the initial state.

use crate::dynamics::Trajectory;
use crate::linalg2::{fidelity, infidelity, DensityMatrix};
use crate::{Error, Mat2, Real, Result};

/// Angles this close to `0` or `π/2` make `V_QSL` undefined.
pub const ANGLE_GUARD: f64 = 1e-9;

/// `arccos √F(ρ, σ)`, in `[0, π/2]`. Near-identical states go through
/// `arcsin √(1 − F)` so that the angle of a state with itself is exactly 0.
pub fn bures_angle<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> T {
    let f = fidelity(rho, sigma);
    let angle = if f > T::lit(0.5) { infidelity(rho, sigma).sqrt().asin() } else { f.sqrt().acos() };
    angle.max(T::zero()).min(T::FRAC_PI_2())
}

/// `‖dρ/dt‖_op` at a grid point, from the exact coherence rate when the
/// trajectory carries one and from finite differences otherwise.
pub fn liouvillian_norm(traj: &Trajectory, index: usize) -> Result<f64> {
    match liouvillian_norm_analytic(traj, index) {
        Some(v) => Ok(v),
        None => liouvillian_norm_fd(traj, index),
    }
}

/// Exact norm for trajectories with frozen populations and a known
/// coherence rate: `dρ/dt = [[0, ċ], [c̄̇, 0]]` has norm `|ċ|`.
pub fn liouvillian_norm_analytic(traj: &Trajectory, index: usize) -> Option<f64> {
    traj.coherence_rate().and_then(|r| r.get(index)).map(|c| c.norm())
}

/// Three-point finite-difference weights for the derivative at `x[i]`;
/// central inside the grid, one-sided second order at the ends.
fn stencil(x: &[f64], i: usize) -> Result<([usize; 3], [f64; 3])> {
    let n = x.len();
    if n < 3 || i >= n {
        return Err(Error::GridTooCoarse { index: i });
    }
    if i == 0 {
        let (h1, h2) = (x[1] - x[0], x[2] - x[1]);
        let w = [-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2), -h1 / (h2 * (h1 + h2))];
        Ok(([0, 1, 2], w))
    } else if i == n - 1 {
        let (h1, h2) = (x[i] - x[i - 1], x[i - 1] - x[i - 2]);
        let w = [h1 / (h2 * (h1 + h2)), -(h1 + h2) / (h1 * h2), (2.0 * h1 + h2) / (h1 * (h1 + h2))];
        Ok(([i - 2, i - 1, i], w))
    } else {
        let (h1, h2) = (x[i] - x[i - 1], x[i + 1] - x[i]);
        let w = [-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))];
        Ok(([i - 1, i, i + 1], w))
    }
}

/// Finite-difference `‖dρ/dt‖_op` on the physical states.
pub fn liouvillian_norm_fd(traj: &Trajectory, index: usize) -> Result<f64> {
    let (idx, w) = stencil(traj.times(), index)?;
    let states = traj.states();
    let d = idx
        .iter()
        .zip(w)
        .fold(Mat2::zero(), |acc, (&k, wk)| acc + states[k].matrix().scale_real(wk));
    Ok(d.opnorm())
}

/// `‖dρ/dt‖_op / (2 sin 𝓛 cos 𝓛)` at a grid point.
pub fn v_qsl(traj: &Trajectory, index: usize) -> Result<f64> {
    let angle = bures_angle(&traj.states()[0], &traj.states()[index]);
    let t = traj.times()[index];
    if angle < ANGLE_GUARD || angle > std::f64::consts::FRAC_PI_2 - ANGLE_GUARD {
        return Err(Error::AngleSingularity { t, angle });
    }
    Ok(liouvillian_norm(traj, index)? / (2.0 * angle.sin() * angle.cos()))
}

/// Options for [`tau_qsl_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TauOptions {
    /// Combine the trapezoid sums on the grid and on every other point.
    /// Needs an even number of intervals up to the horizon.
    pub richardson: bool,
}

/// `τ_QSL` at one horizon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauQsl {
    pub horizon: f64,
    pub tau_qsl: f64,
    /// `(1/τ) ∫₀^τ ‖dρ/dt‖_op dt`.
    pub mean_norm: f64,
    /// `τ_QSL ≤ τ`.
    pub bounded: bool,
}

fn horizon_index(times: &[f64], horizon: f64) -> Result<usize> {
    let slack = 1e-9 * horizon.abs().max(1.0);
    times
        .iter()
        .position(|&t| (t - horizon).abs() <= slack)
        .filter(|&i| i > 0)
        .ok_or_else(|| Error::InvalidGrid(format!("horizon {horizon} is not a positive grid point")))
}

fn trapezoid(x: &[f64], y: &[f64], step: usize, end: usize) -> f64 {
    let mut s = 0.0;
    let mut i = 0;
    while i + step <= end {
        s += 0.5 * (x[i + step] - x[i]) * (y[i] + y[i + step]);
        i += step;
    }
    s
}

pub fn tau_qsl(traj: &Trajectory, horizon: f64) -> Result<TauQsl> {
    tau_qsl_with(traj, horizon, TauOptions::default())
}

pub fn tau_qsl_with(traj: &Trajectory, horizon: f64, opts: TauOptions) -> Result<TauQsl> {
    let end = horizon_index(traj.times(), horizon)?;
    let norms = (0..=end).map(|i| liouvillian_norm(traj, i)).collect::<Result<Vec<_>>>()?;
    tau_from_norms(traj, &norms, end, opts)
}

fn tau_from_norms(traj: &Trajectory, norms: &[f64], end: usize, opts: TauOptions) -> Result<TauQsl> {
    let x = traj.times();
    let horizon = x[end];
    let fine = trapezoid(x, norms, 1, end);
    let integral = if opts.richardson {
        if end % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "Richardson refinement needs an even number of intervals, got {end}"
            )));
        }
        let coarse = trapezoid(x, norms, 2, end);
        fine + (fine - coarse) / 3.0
    } else {
        fine
    };
    let mean_norm = integral / horizon;
    if !(mean_norm.abs() >= 1e-15) {
        return Err(Error::DegenerateTrajectory { horizon });
    }
    let s = bures_angle(&traj.states()[0], &traj.states()[end]).sin();
    let tau = s * s / mean_norm;
    Ok(TauQsl { horizon, tau_qsl: tau, mean_norm, bounded: tau <= horizon })
}

/// Speed-limit quantities over a whole trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct QslSeries {
    pub times: Vec<f64>,
    pub bures_angle: Vec<f64>,
    pub liouvillian_norm: Vec<f64>,
    /// `None` where the angle is within [`ANGLE_GUARD`] of `0` or `π/2`.
    pub v_qsl: Vec<Option<f64>>,
    pub tau: Vec<TauQsl>,
}

impl QslSeries {
    /// An index strictly inside the defined range of `v_qsl` whose value
    /// exceeds the values at both ends of that range.
    pub fn interior_maximum(&self) -> Option<usize> {
        let defined: Vec<(usize, f64)> =
            self.v_qsl.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).collect();
        let (&(_, first), &(_, last)) = (defined.first()?, defined.last()?);
        let inner = defined.get(1..defined.len().saturating_sub(1))?;
        inner
            .iter()
            .filter(|&&(_, v)| v > first && v > last)
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|&(i, _)| i)
    }
}

pub fn qsl_series(traj: &Trajectory, horizons: &[f64], opts: TauOptions) -> Result<QslSeries> {
    let n = traj.len();
    let rho0 = &traj.states()[0];
    let angles: Vec<f64> = traj.states().iter().map(|s| bures_angle(rho0, s)).collect();
    let norms = (0..n).map(|i| liouvillian_norm(traj, i)).collect::<Result<Vec<_>>>()?;
    let v = angles
        .iter()
        .zip(&norms)
        .map(|(&a, &l)| {
            (a >= ANGLE_GUARD && a <= std::f64::consts::FRAC_PI_2 - ANGLE_GUARD)
                .then(|| l / (2.0 * a.sin() * a.cos()))
        })
        .collect();
    let tau = horizons
        .iter()
        .map(|&h| tau_from_norms(traj, &norms, horizon_index(traj.times(), h)?, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(QslSeries { times: traj.times().to_vec(), bures_angle: angles, liouvillian_norm: norms, v_qsl: v, tau })
}
