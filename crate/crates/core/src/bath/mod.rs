//! Bosonic bath: spectral density and the dephasing kernels.
//!
//! Every kernel is a semi-infinite integral of the form
//! `4 ∫₀^∞ J(ω) g(ω, t) dω` with `g` one of the filter functions below.
//! Evaluation splits the half-line into three pieces:
//!
//! * `[0, ε]` integrated in closed form from the low-frequency power law of
//!   `J`, which sidesteps the `ω^μ` endpoint singularity and the
//!   cancellation in `1 − cos ωt`;
//! * `[ε, W]` by adaptive Gauss–Kronrod with panels capped at `π/(4t)`;
//! * `[W, ∞)` bounded analytically and folded into the error estimate.

mod quadrature;

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::RwLock;

pub use quadrature::{integrate, Adaptive, QuadratureResult};

use crate::{Error, Result};

/// Default absolute tolerance for every kernel.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default evaluation budget per kernel call.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Parameters of the Ohmic-family bath.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathParams {
    /// Coupling amplitude `J₀`.
    pub j0: f64,
    /// Cutoff frequency `ω_c`.
    pub omega_c: f64,
    /// Spectral exponent; `0` is Ohmic, negative is sub-Ohmic.
    pub mu: f64,
    /// Inverse temperature. `f64::INFINITY` selects the zero-temperature bath.
    pub beta: f64,
}

impl BathParams {
    pub fn new(j0: f64, omega_c: f64, mu: f64, beta: f64) -> Result<Self> {
        let p = Self { j0, omega_c, mu, beta };
        p.validate()?;
        Ok(p)
    }

    /// `J₀ = 1, β = 0.5, ω_c = 1, μ = −0.5`, the set used for every figure.
    pub fn caption() -> Self {
        Self { j0: 1.0, omega_c: 1.0, mu: -0.5, beta: 0.5 }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.j0.is_finite()
            && self.j0 > 0.0
            && self.omega_c.is_finite()
            && self.omega_c > 0.0
            && self.mu.is_finite()
            && self.mu > -1.0
            && self.beta > 0.0
            && !self.beta.is_nan();
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "bath needs J0 > 0, omega_c > 0, mu > -1, beta > 0 (got {self:?})"
            )))
        }
    }
}

/// Low-frequency behaviour `J(ω) ≈ coeff · ω^exponent · (1 + slope · ω)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowFrequency {
    pub coeff: f64,
    pub exponent: f64,
    pub slope: f64,
}

/// Spectral density `J(ω)` of the bath.
///
/// Besides point evaluation, the kernels need the density's small-ω power
/// law and an upper bound on its weighted tail.
pub trait SpectralDensity: fmt::Debug + Send + Sync {
    fn eval(&self, omega: f64) -> f64;
    /// Frequency scale of the density.
    fn cutoff(&self) -> f64;
    fn low_frequency(&self) -> LowFrequency;
    /// Upper bound on `∫_from^∞ J(ω) ω^(-power) dω` for `from > 0`.
    fn tail_bound(&self, from: f64, power: f64) -> f64;
    /// `∫₀^∞ J(ω) dω`.
    fn total_weight(&self) -> f64;
}

/// `J(ω) = J₀ ω_c (ω/ω_c)^(1+μ) e^(−ω/ω_c)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OhmicExpCutoff {
    pub j0: f64,
    pub omega_c: f64,
    pub mu: f64,
}

impl From<&BathParams> for OhmicExpCutoff {
    fn from(p: &BathParams) -> Self {
        Self { j0: p.j0, omega_c: p.omega_c, mu: p.mu }
    }
}

/// Upper bound on the upper incomplete gamma function `Γ(a, x)`, `x > 0`.
fn upper_gamma_bound(a: f64, x: f64) -> f64 {
    let lead = ((a - 1.0) * x.ln() - x).exp();
    if a <= 1.0 {
        lead
    } else if x > 2.0 * (a - 1.0) {
        lead / (1.0 - (a - 1.0) / x)
    } else {
        libm::tgamma(a)
    }
}

impl SpectralDensity for OhmicExpCutoff {
    fn eval(&self, omega: f64) -> f64 {
        if omega == 0.0 {
            return 0.0;
        }
        let x = omega / self.omega_c;
        self.j0 * self.omega_c * ((1.0 + self.mu) * x.ln() - x).exp()
    }

    fn cutoff(&self) -> f64 {
        self.omega_c
    }

    fn low_frequency(&self) -> LowFrequency {
        LowFrequency {
            coeff: self.j0 * self.omega_c.powf(-self.mu),
            exponent: 1.0 + self.mu,
            slope: -1.0 / self.omega_c,
        }
    }

    fn tail_bound(&self, from: f64, power: f64) -> f64 {
        let a = 2.0 + self.mu - power;
        self.j0 * self.omega_c.powf(2.0 - power) * upper_gamma_bound(a, from / self.omega_c)
    }

    fn total_weight(&self) -> f64 {
        self.j0 * self.omega_c * self.omega_c * libm::tgamma(2.0 + self.mu)
    }
}

/// `J(ω)` of the Ohmic family.
pub fn spectral_density(omega: f64, p: &BathParams) -> Result<f64> {
    p.validate()?;
    if !(omega >= 0.0) {
        return Err(Error::Domain(format!("spectral density needs omega >= 0, got {omega}")));
    }
    Ok(OhmicExpCutoff::from(p).eval(omega))
}

/// The integrals evaluated by [`BathKernels`]. Phase kernels are stored per
/// unit `θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// `γ(t) = 4∫ J (1 − cos ωt)/ω² coth(βω/2)`.
    Gamma,
    /// `dγ/dt = 4∫ J sin(ωt)/ω coth(βω/2)`.
    GammaRate,
    /// `Ω(t)/θ = 4∫ J (ωt − sin ωt)/ω²`.
    PhasePt,
    /// `Ω₁(t)/θ = 4∫ J (1 − cos ωt)/ω²`.
    Phase1,
    /// `(dΩ₁/dt)/θ = 4∫ J sin(ωt)/ω`.
    Phase1Rate,
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Gamma => "gamma",
            Kernel::GammaRate => "gamma_rate",
            Kernel::PhasePt => "omega",
            Kernel::Phase1 => "omega1",
            Kernel::Phase1Rate => "omega1_rate",
        })
    }
}

#[inline]
fn coth_half(beta: f64, omega: f64) -> f64 {
    if beta.is_infinite() {
        1.0
    } else {
        1.0 / (0.5 * beta * omega).tanh()
    }
}

/// `(1 − cos x)/ω²` written without cancellation.
#[inline]
fn one_minus_cos_over_sq(omega: f64, t: f64) -> f64 {
    let s = (0.5 * omega * t).sin() / omega;
    2.0 * s * s
}

/// `(ωt − sin ωt)/ω²`.
#[inline]
fn linear_minus_sin_over_sq(omega: f64, t: f64) -> f64 {
    let x = omega * t;
    if x.abs() < 0.25 {
        let x2 = x * x;
        // x³/3! − x⁵/5! + x⁷/7! − x⁹/9! + x¹¹/11!
        let series = x2 * x
            * (1.0 / 6.0
                - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 * (1.0 / 362_880.0 - x2 / 39_916_800.0))));
        series / (omega * omega)
    } else {
        (x - x.sin()) / (omega * omega)
    }
}

impl Kernel {
    /// Integrand at `ω > 0`.
    #[inline]
    fn integrand<J: SpectralDensity>(self, density: &J, beta: f64, t: f64, omega: f64) -> f64 {
        let j = density.eval(omega);
        if j == 0.0 {
            return 0.0;
        }
        4.0 * j * match self {
            Kernel::Gamma => one_minus_cos_over_sq(omega, t) * coth_half(beta, omega),
            Kernel::GammaRate => (omega * t).sin() / omega * coth_half(beta, omega),
            Kernel::PhasePt => linear_minus_sin_over_sq(omega, t),
            Kernel::Phase1 => one_minus_cos_over_sq(omega, t),
            Kernel::Phase1Rate => (omega * t).sin() / omega,
        }
    }

    /// Leading small-ω behaviour `amplitude · ω^power` of the integrand
    /// relative to `J`'s own power law (the `(1 + slope·ω)` factor is
    /// applied by the caller).
    fn low_frequency(self, lf: &LowFrequency, beta: f64, t: f64) -> (f64, f64) {
        let c = lf.coeff;
        let s = lf.exponent;
        let thermal = beta.is_finite();
        match self {
            // (1 − cos ωt)/ω² → t²/2 and coth(βω/2) → 2/(βω)
            Kernel::Gamma if thermal => (4.0 * c * t * t / beta, s - 1.0),
            Kernel::Gamma => (2.0 * c * t * t, s),
            Kernel::GammaRate if thermal => (8.0 * c * t / beta, s - 1.0),
            Kernel::GammaRate => (4.0 * c * t, s),
            Kernel::PhasePt => (2.0 * c * t * t * t / 3.0, s + 1.0),
            Kernel::Phase1 => (2.0 * c * t * t, s),
            Kernel::Phase1Rate => (4.0 * c * t, s),
        }
    }

    /// Upper bound on the integrand tail `∫_from^∞ |integrand|`.
    fn tail_bound<J: SpectralDensity>(self, density: &J, beta: f64, t: f64, from: f64) -> f64 {
        let coth = coth_half(beta, from);
        match self {
            Kernel::Gamma => 8.0 * coth * density.tail_bound(from, 2.0),
            Kernel::GammaRate => 4.0 * coth * density.tail_bound(from, 1.0),
            Kernel::PhasePt => 4.0 * (t * density.tail_bound(from, 1.0) + density.tail_bound(from, 2.0)),
            Kernel::Phase1 => 8.0 * density.tail_bound(from, 2.0),
            Kernel::Phase1Rate => 4.0 * density.tail_bound(from, 1.0),
        }
    }
}

type CacheKey = (Kernel, u64, u64);

/// Evaluates the bath kernels for one parameter set, memoizing per `(kernel,
/// t, tolerance)`.
///
/// The cache is shared behind a lock; concurrent callers see the same
/// values a sequential caller would, since every entry is a deterministic
/// function of its key.
#[derive(Debug)]
pub struct BathKernels<J: SpectralDensity = OhmicExpCutoff> {
    density: J,
    beta: f64,
    tol: f64,
    budget: usize,
    total_weight: f64,
    cache: Option<RwLock<HashMap<CacheKey, QuadratureResult>>>,
}

impl BathKernels<OhmicExpCutoff> {
    pub fn new(p: &BathParams, tol: f64) -> Result<Self> {
        p.validate()?;
        Self::with_density(OhmicExpCutoff::from(p), p.beta, tol)
    }
}

impl<J: SpectralDensity> BathKernels<J> {
    pub fn with_density(density: J, beta: f64, tol: f64) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::Domain(format!("quadrature tolerance must be positive, got {tol}")));
        }
        if !(beta > 0.0) {
            return Err(Error::Domain(format!("beta must be positive, got {beta}")));
        }
        let total_weight = density.total_weight();
        Ok(Self {
            density,
            beta,
            tol,
            budget: DEFAULT_BUDGET,
            total_weight,
            cache: Some(RwLock::new(HashMap::new())),
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// Disables memoization.
    pub fn without_cache(mut self) -> Self {
        self.cache = None;
        self
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn density(&self) -> &J {
        &self.density
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `M₀ = ∫₀^∞ J(ω) dω`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// `γ(t)`.
    pub fn gamma(&self, t: f64) -> Result<QuadratureResult> {
        self.kernel(Kernel::Gamma, t, self.tol)
    }

    /// `dγ/dt`.
    pub fn gamma_rate(&self, t: f64) -> Result<QuadratureResult> {
        self.kernel(Kernel::GammaRate, t, self.tol)
    }

    /// `Ω(t)`, the PT phase function.
    pub fn omega_pt(&self, t: f64, theta: f64) -> Result<QuadratureResult> {
        self.phase_kernel(Kernel::PhasePt, t, theta)
    }

    /// `Ω₁(t)`.
    pub fn omega1(&self, t: f64, theta: f64) -> Result<QuadratureResult> {
        self.phase_kernel(Kernel::Phase1, t, theta)
    }

    /// `dΩ₁/dt`.
    pub fn omega1_rate(&self, t: f64, theta: f64) -> Result<QuadratureResult> {
        self.phase_kernel(Kernel::Phase1Rate, t, theta)
    }

    /// `Ω₂(t) = 2θt² M₀`.
    pub fn omega2(&self, t: f64, theta: f64) -> f64 {
        2.0 * theta * t * t * self.total_weight
    }

    /// `dΩ₂/dt = 4θt M₀`.
    pub fn omega2_rate(&self, t: f64, theta: f64) -> f64 {
        4.0 * theta * t * self.total_weight
    }

    fn phase_kernel(&self, kernel: Kernel, t: f64, theta: f64) -> Result<QuadratureResult> {
        if !theta.is_finite() {
            return Err(Error::Domain(format!("theta must be finite, got {theta}")));
        }
        if theta == 0.0 {
            check_time(t)?;
            return Ok(QuadratureResult::ZERO);
        }
        let mut unit = self.kernel(kernel, t, self.tol)?;
        if unit.abs_error * theta.abs() > self.tol {
            unit = self.kernel(kernel, t, self.tol / theta.abs())?;
        }
        Ok(unit.scaled(theta))
    }

    /// Evaluates one kernel per unit `θ`, consulting the cache.
    pub fn kernel(&self, kernel: Kernel, t: f64, tol: f64) -> Result<QuadratureResult> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(QuadratureResult::ZERO);
        }
        let key = (kernel, t.to_bits(), tol.to_bits());
        if let Some(cache) = &self.cache {
            if let Some(hit) = cache.read().expect("kernel cache poisoned").get(&key) {
                return Ok(*hit);
            }
        }
        let result = self.evaluate(kernel, t, tol);
        if !result.converged {
            return Err(Error::QuadratureDivergence {
                kernel,
                t,
                abs_error: result.abs_error,
                tol,
                evaluations: result.evaluations,
            });
        }
        if let Some(cache) = &self.cache {
            cache.write().expect("kernel cache poisoned").insert(key, result);
        }
        Ok(result)
    }

    /// Uncached, unchecked evaluation.
    pub fn evaluate(&self, kernel: Kernel, t: f64, tol: f64) -> QuadratureResult {
        let wc = self.density.cutoff();
        let beta = self.beta;

        // Closed-form piece on [0, eps], shrinking eps until its truncation
        // error is negligible.
        let mut eps = 1e-6 * wc;
        eps = eps.min(1e-3 / t);
        if beta.is_finite() {
            eps = eps.min(1e-3 / beta);
        }
        let lf = self.density.low_frequency();
        let (amp, power) = kernel.low_frequency(&lf, beta, t);
        let piece = |eps: f64| {
            let lead = amp * eps.powf(power + 1.0) / (power + 1.0);
            let value = lead + amp * lf.slope * eps.powf(power + 2.0) / (power + 2.0);
            let thermal = if beta.is_finite() { (beta * eps).powi(2) / 12.0 } else { 0.0 };
            let rel = (eps / wc).powi(2) + (eps * t).powi(2) / 6.0 + thermal;
            (value, lead.abs() * rel)
        };
        let (mut series, mut series_err) = piece(eps);
        for _ in 0..8 {
            if series_err <= 1e-2 * tol {
                break;
            }
            eps *= 0.1;
            (series, series_err) = piece(eps);
        }

        // Truncation point: first W with a negligible tail.
        let w_cap = wc * (40.0 + 10.0 * (1.0 / tol).ln().max(0.0));
        let tail_target = 1e-2 * tol;
        let mut upper = 20.0 * wc;
        let mut tail = kernel.tail_bound(&self.density, beta, t, upper);
        while tail > tail_target && upper < w_cap {
            upper = (upper + 5.0 * wc).min(w_cap);
            tail = kernel.tail_bound(&self.density, beta, t, upper);
        }

        let opts = Adaptive {
            tol: (tol - series_err - tail).max(0.5 * tol),
            budget: self.budget,
            max_panel_width: (PI / (4.0 * t)).min(2.0 * wc),
        };
        let density = &self.density;
        let body = integrate(|w| kernel.integrand(density, beta, t, w), eps, upper, &opts);

        let abs_error = body.abs_error + series_err + tail;
        QuadratureResult {
            value: series + body.value,
            abs_error,
            converged: body.converged && abs_error <= tol && body.value.is_finite(),
            evaluations: body.evaluations,
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and >= 0, got {t}")))
    }
}

/// `γ(t)` for one-off evaluation.
pub fn gamma(t: f64, p: &BathParams, tol: f64) -> Result<QuadratureResult> {
    BathKernels::new(p, tol)?.without_cache().gamma(t)
}

/// `Ω(t)` for one-off evaluation.
pub fn omega_pt(t: f64, theta: f64, p: &BathParams, tol: f64) -> Result<QuadratureResult> {
    BathKernels::new(p, tol)?.without_cache().omega_pt(t, theta)
}

/// `Ω₁(t)` for one-off evaluation.
pub fn omega1(t: f64, theta: f64, p: &BathParams, tol: f64) -> Result<QuadratureResult> {
    BathKernels::new(p, tol)?.without_cache().omega1(t, theta)
}

/// `Ω₂(t)` for one-off evaluation.
pub fn omega2(t: f64, theta: f64, p: &BathParams) -> Result<f64> {
    p.validate()?;
    check_time(t)?;
    Ok(2.0 * theta * t * t * OhmicExpCutoff::from(p).total_weight())
}
