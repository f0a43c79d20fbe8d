//! PT and Anti-PT Hamiltonians and the dephased reduced dynamics.
//!
//! PT:  `H = [[α + iθ, ξ + iδ], [ξ − iδ, α − iθ]]`, `ω₀² = δ² + ξ² − θ²`.
//! APT: `H = [[α + iθ, ξ + iδ], [−ξ + iδ, −α + iθ]]`, `ω₀² = α² − ξ² − δ²`.
//!
//! A PT state is evolved in the frame that diagonalizes `H` and mapped back
//! with `T⁻¹ ρ (T⁻¹)†`. The APT state is evolved directly: populations are
//! frozen and the coherence picks up a phase and the damping `D(t)`.

use rayon::prelude::*;

use crate::bath::{BathKernels, BathParams, QuadratureResult, SpectralDensity, DEFAULT_TOL};
use crate::linalg2::CMat2;
use crate::{Error, Mat2, Result, State, C64};

/// Symmetry class of the qubit Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Pt,
    AntiPt,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Pt => "pt",
            Symmetry::AntiPt => "anti_pt",
        }
    }
}

impl std::fmt::Display for Symmetry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Hamiltonian parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitParams {
    pub alpha: f64,
    /// Gain/loss rate.
    pub theta: f64,
    pub xi: f64,
    pub delta: f64,
    pub symmetry: Symmetry,
}

impl QubitParams {
    pub fn pt(alpha: f64, theta: f64, xi: f64, delta: f64) -> Self {
        Self { alpha, theta, xi, delta, symmetry: Symmetry::Pt }
    }

    pub fn anti_pt(alpha: f64, theta: f64, xi: f64, delta: f64) -> Self {
        Self { alpha, theta, xi, delta, symmetry: Symmetry::AntiPt }
    }

    /// `ω₀²` of the class; negative in the broken phase. Values within
    /// rounding of zero are snapped to zero.
    pub fn omega0_squared(&self) -> f64 {
        let (a, t, x, d) = (self.alpha * self.alpha, self.theta * self.theta, self.xi * self.xi, self.delta * self.delta);
        let (w2, scale) = match self.symmetry {
            Symmetry::Pt => (d + x - t, d + x + t),
            Symmetry::AntiPt => (a - x - d, a + x + d),
        };
        if w2.abs() <= 4.0 * f64::EPSILON * scale {
            0.0
        } else {
            w2
        }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite() && self.theta.is_finite() && self.xi.is_finite() && self.delta.is_finite()
    }

    /// Finite parameters in the unbroken regime.
    pub fn validate(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::Domain(format!("qubit parameters must be finite ({self:?})")));
        }
        let w2 = self.omega0_squared();
        if w2 < 0.0 {
            let cond = match self.symmetry {
                Symmetry::Pt => "delta^2 + xi^2 >= theta^2",
                Symmetry::AntiPt => "alpha^2 >= xi^2 + delta^2",
            };
            return Err(Error::BrokenPhase(format!("{cond} violated (omega0^2 = {w2})")));
        }
        Ok(())
    }

    fn coupling(&self) -> C64 {
        C64::new(self.xi, self.delta)
    }
}

/// The system Hamiltonian of the requested class.
pub fn build_hamiltonian(p: &QubitParams) -> Mat2 {
    let b = p.coupling();
    match p.symmetry {
        Symmetry::Pt => CMat2::new(C64::new(p.alpha, p.theta), b, b.conj(), C64::new(p.alpha, -p.theta)),
        Symmetry::AntiPt => CMat2::new(C64::new(p.alpha, p.theta), b, -b.conj(), C64::new(-p.alpha, p.theta)),
    }
}

/// `(PT) m (PT)⁻¹ = σx m̄ σx`.
fn pt_conjugate(m: &Mat2) -> Mat2 {
    CMat2::new(m.a22.conj(), m.a21.conj(), m.a12.conj(), m.a11.conj())
}

/// Whether `m` commutes (PT) or anti-commutes (APT) with the combined
/// parity-time operator, to 1e-12 in the Frobenius norm.
pub fn check_symmetry(m: &Mat2, class: Symmetry) -> bool {
    let image = pt_conjugate(m);
    let defect = match class {
        Symmetry::Pt => image - *m,
        Symmetry::AntiPt => image + *m,
    };
    defect.frobenius_norm() <= 1e-12
}

/// Eigenvalue splitting and eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralSplit {
    pub omega0: f64,
    /// `[E₋, E₊]`.
    pub eigenvalues: [C64; 2],
}

pub fn split(p: &QubitParams) -> Result<SpectralSplit> {
    p.validate()?;
    let w = p.omega0_squared().sqrt();
    let center = match p.symmetry {
        Symmetry::Pt => C64::new(p.alpha, 0.0),
        Symmetry::AntiPt => C64::new(0.0, p.theta),
    };
    Ok(SpectralSplit { omega0: w, eigenvalues: [center - w, center + w] })
}

/// `T` with `T H T⁻¹ = diag(E₋, E₊)`.
///
/// APT: `[[ω − α, −b], [ω + α, b]]`; PT: `[[ω − iθ, −b], [ω + iθ, b]]`, with
/// `b = ξ + iδ`. `det T = 2ωb`, so `T` is singular at the exceptional point.
pub fn transformation(p: &QubitParams) -> Result<Mat2> {
    let w = split(p)?.omega0;
    let b = p.coupling();
    let (lo, hi) = match p.symmetry {
        Symmetry::Pt => (C64::new(w, -p.theta), C64::new(w, p.theta)),
        Symmetry::AntiPt => (C64::new(w - p.alpha, 0.0), C64::new(w + p.alpha, 0.0)),
    };
    let t = CMat2::new(lo, -b, hi, b);
    let scale = t.frobenius_norm();
    if !(t.det().norm() > 1e-14 * scale * scale) {
        return Err(Error::ExceptionalPoint);
    }
    Ok(t)
}

/// Source of the dephasing kernels for the evolution routines.
///
/// [`BathKernels`] is the production implementation; tests substitute
/// closed-form doubles.
pub trait DephasingKernels: Sync {
    fn gamma(&self, t: f64) -> Result<QuadratureResult>;
    fn gamma_rate(&self, t: f64) -> Result<QuadratureResult>;
    fn omega_pt(&self, t: f64, theta: f64) -> Result<QuadratureResult>;
    fn omega1(&self, t: f64, theta: f64) -> Result<QuadratureResult>;
    fn omega1_rate(&self, t: f64, theta: f64) -> Result<QuadratureResult>;
    fn omega2(&self, t: f64, theta: f64) -> f64;
    fn omega2_rate(&self, t: f64, theta: f64) -> f64;
}

impl<J: SpectralDensity> DephasingKernels for BathKernels<J> {
    fn gamma(&self, t: f64) -> Result<QuadratureResult> {
        BathKernels::gamma(self, t)
    }
    fn gamma_rate(&self, t: f64) -> Result<QuadratureResult> {
        BathKernels::gamma_rate(self, t)
    }
    fn omega_pt(&self, t: f64, theta: f64) -> Result<QuadratureResult> {
        BathKernels::omega_pt(self, t, theta)
    }
    fn omega1(&self, t: f64, theta: f64) -> Result<QuadratureResult> {
        BathKernels::omega1(self, t, theta)
    }
    fn omega1_rate(&self, t: f64, theta: f64) -> Result<QuadratureResult> {
        BathKernels::omega1_rate(self, t, theta)
    }
    fn omega2(&self, t: f64, theta: f64) -> f64 {
        BathKernels::omega2(self, t, theta)
    }
    fn omega2_rate(&self, t: f64, theta: f64) -> f64 {
        BathKernels::omega2_rate(self, t, theta)
    }
}

/// `n` equally spaced points on `[0, t_max]`.
pub fn uniform_grid(t_max: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidGrid(format!("t_max must be positive and finite, got {t_max}")));
    }
    let last = (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { t_max } else { t_max * (i as f64) / last }).collect())
}

fn check_grid(times: &[f64]) -> Result<()> {
    match times.first() {
        None => return Err(Error::InvalidGrid("empty time grid".into())),
        Some(&t0) if t0 != 0.0 => return Err(Error::InvalidGrid(format!("grid must start at 0, starts at {t0}"))),
        _ => {}
    }
    for w in times.windows(2) {
        if !(w[1] > w[0]) || !w[1].is_finite() {
            return Err(Error::InvalidGrid(format!("grid not strictly increasing at {} -> {}", w[0], w[1])));
        }
    }
    Ok(())
}

/// Largest reported quadrature error per kernel over a trajectory.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KernelErrors {
    pub gamma: f64,
    pub phase: f64,
    pub gamma_rate: f64,
    pub phase_rate: f64,
}

impl KernelErrors {
    pub fn max(&self) -> f64 {
        self.gamma.max(self.phase).max(self.gamma_rate).max(self.phase_rate)
    }

    pub fn merge(self, o: Self) -> Self {
        Self {
            gamma: self.gamma.max(o.gamma),
            phase: self.phase.max(o.phase),
            gamma_rate: self.gamma_rate.max(o.gamma_rate),
            phase_rate: self.phase_rate.max(o.phase_rate),
        }
    }
}

/// A time-evolved qubit.
///
/// `frame_states` are the PT states in the diagonalizing frame; for APT
/// they coincide with `states`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    qubit: QubitParams,
    omega0: f64,
    transform: Option<Mat2>,
    times: Vec<f64>,
    states: Vec<State>,
    frame_states: Vec<State>,
    decoherence: Vec<f64>,
    phase: Vec<f64>,
    phase_function: Vec<f64>,
    gamma: Vec<f64>,
    coherence_rate: Option<Vec<C64>>,
    errors: KernelErrors,
}

impl Trajectory {
    pub fn qubit(&self) -> &QubitParams {
        &self.qubit
    }

    pub fn symmetry(&self) -> Symmetry {
        self.qubit.symmetry
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// `T` for PT trajectories.
    pub fn transform(&self) -> Option<&Mat2> {
        self.transform.as_ref()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Physical-basis states.
    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn frame_states(&self) -> &[State] {
        &self.frame_states
    }

    /// `D(t) = exp(−ω₀² γ(t))`.
    pub fn decoherence(&self) -> &[f64] {
        &self.decoherence
    }

    /// Accumulated coherence phase, `2ω₀t − ω₀Ω(t)` (PT) or
    /// `2ω₀t − ω₀[Ω₂(t) − Ω₁(t)]` (APT).
    pub fn phase(&self) -> &[f64] {
        &self.phase
    }

    /// `Ω(t)` (PT) or `Ω₂(t) − Ω₁(t)` (APT).
    pub fn phase_function(&self) -> &[f64] {
        &self.phase_function
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// Exact `dρ₁₂/dt` where the closed form allows it (APT).
    pub fn coherence_rate(&self) -> Option<&[C64]> {
        self.coherence_rate.as_deref()
    }

    pub fn kernel_errors(&self) -> KernelErrors {
        self.errors
    }

    /// `T⁻¹ ρ^D(t) (T⁻¹)†` before any normalization (PT only).
    pub fn unnormalized_state(&self, index: usize) -> Option<Mat2> {
        let t_inv = self.transform?.inverse()?;
        Some(t_inv * self.frame_states[index].matrix() * t_inv.adjoint())
    }

    /// PT states normalized by the initial-time trace instead of the
    /// time-`t` trace. These need not have unit trace.
    pub fn initial_trace_normalized(&self) -> Option<Vec<Mat2>> {
        let first = self.unnormalized_state(0)?;
        let tr0 = first.trace().re;
        Some((0..self.len()).map(|i| self.unnormalized_state(i).expect("transform present").scale_real(1.0 / tr0)).collect())
    }
}

struct Point {
    state: State,
    frame: State,
    decoherence: f64,
    phase: f64,
    phase_function: f64,
    gamma: f64,
    rate: Option<C64>,
    errors: KernelErrors,
}

fn collect(qubit: QubitParams, omega0: f64, transform: Option<Mat2>, times: &[f64], points: Vec<Point>) -> Trajectory {
    let errors = points.iter().fold(KernelErrors::default(), |acc, p| acc.merge(p.errors));
    let has_rate = points.iter().all(|p| p.rate.is_some());
    Trajectory {
        qubit,
        omega0,
        transform,
        times: times.to_vec(),
        states: points.iter().map(|p| p.state).collect(),
        frame_states: points.iter().map(|p| p.frame).collect(),
        decoherence: points.iter().map(|p| p.decoherence).collect(),
        phase: points.iter().map(|p| p.phase).collect(),
        phase_function: points.iter().map(|p| p.phase_function).collect(),
        gamma: points.iter().map(|p| p.gamma).collect(),
        coherence_rate: has_rate.then(|| points.iter().map(|p| p.rate.unwrap()).collect()),
        errors,
    }
}

fn require(p: &QubitParams, class: Symmetry) -> Result<()> {
    if p.symmetry != class {
        return Err(Error::Domain(format!("expected {class} parameters, got {}", p.symmetry)));
    }
    Ok(())
}

/// PT evolution with the default kernels at tolerance 1e-9.
pub fn evolve_pt(p: &QubitParams, b: &BathParams, rho0_d: &State, times: &[f64]) -> Result<Trajectory> {
    evolve_pt_with(p, &BathKernels::new(b, DEFAULT_TOL)?, rho0_d, times)
}

/// PT evolution. `rho0_d` is the initial state in the diagonalizing frame.
pub fn evolve_pt_with<K: DephasingKernels>(
    p: &QubitParams,
    kernels: &K,
    rho0_d: &State,
    times: &[f64],
) -> Result<Trajectory> {
    require(p, Symmetry::Pt)?;
    let w = split(p)?.omega0;
    if w == 0.0 {
        return Err(Error::ExceptionalPoint);
    }
    check_grid(times)?;
    let t_mat = transformation(p)?;
    let t_inv = t_mat.inverse().ok_or(Error::ExceptionalPoint)?;
    let t_inv_dag = t_inv.adjoint();
    let c0 = rho0_d.coherence();

    let points = times
        .par_iter()
        .map(|&t| {
            let g = kernels.gamma(t)?;
            let om = kernels.omega_pt(t, p.theta)?;
            let decoherence = (-w * w * g.value).exp();
            let phase = 2.0 * w * t - w * om.value;
            let c = c0 * C64::from_polar(decoherence, phase);
            let frame = State::new(rho0_d.p1(), rho0_d.p2(), c)?;
            let state = State::from_matrix_normalized(&(t_inv * frame.matrix() * t_inv_dag))?;
            Ok(Point {
                state,
                frame,
                decoherence,
                phase,
                phase_function: om.value,
                gamma: g.value,
                rate: None,
                errors: KernelErrors { gamma: g.abs_error, phase: om.abs_error, ..Default::default() },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect(*p, w, Some(t_mat), times, points))
}

/// APT evolution with the default kernels at tolerance 1e-9.
pub fn evolve_apt(p: &QubitParams, b: &BathParams, rho0: &State, times: &[f64]) -> Result<Trajectory> {
    evolve_apt_with(p, &BathKernels::new(b, DEFAULT_TOL)?, rho0, times)
}

/// APT evolution. `ω₀ = 0` is allowed and gives a frozen state.
pub fn evolve_apt_with<K: DephasingKernels>(
    p: &QubitParams,
    kernels: &K,
    rho0: &State,
    times: &[f64],
) -> Result<Trajectory> {
    require(p, Symmetry::AntiPt)?;
    let w = split(p)?.omega0;
    check_grid(times)?;
    let c0 = rho0.coherence();

    let points = times
        .par_iter()
        .map(|&t| {
            let g = kernels.gamma(t)?;
            let g_rate = kernels.gamma_rate(t)?;
            let o1 = kernels.omega1(t, p.theta)?;
            let o1_rate = kernels.omega1_rate(t, p.theta)?;
            let o2 = kernels.omega2(t, p.theta);
            let o2_rate = kernels.omega2_rate(t, p.theta);

            let decoherence = (-w * w * g.value).exp();
            let phase_function = o2 - o1.value;
            let phase = 2.0 * w * t - w * phase_function;
            let c = c0 * C64::from_polar(decoherence, phase);
            let state = State::new(rho0.p1(), rho0.p2(), c)?;
            let log_rate = C64::new(-w * w * g_rate.value, 2.0 * w - w * (o2_rate - o1_rate.value));
            Ok(Point {
                state,
                frame: state,
                decoherence,
                phase,
                phase_function,
                gamma: g.value,
                rate: Some(c * log_rate),
                errors: KernelErrors {
                    gamma: g.abs_error,
                    phase: o1.abs_error,
                    gamma_rate: g_rate.abs_error,
                    phase_rate: o1_rate.abs_error,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect(*p, w, None, times, points))
}

/// Evolves either class; PT starts from `rho0` in the diagonalizing frame.
pub fn evolve_with<K: DephasingKernels>(p: &QubitParams, kernels: &K, rho0: &State, times: &[f64]) -> Result<Trajectory> {
    match p.symmetry {
        Symmetry::Pt => evolve_pt_with(p, kernels, rho0, times),
        Symmetry::AntiPt => evolve_apt_with(p, kernels, rho0, times),
    }
}

/// `D(t) = exp(−ω₀² γ(t))` for the class of `p`.
pub fn decoherence_function(p: &QubitParams, b: &BathParams, t: f64) -> Result<f64> {
    let w = split(p)?.omega0;
    b.validate()?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
    }
    if w == 0.0 {
        return Ok(1.0);
    }
    let g = crate::bath::gamma(t, b, DEFAULT_TOL)?;
    Ok((-w * w * g.value).exp())
}
