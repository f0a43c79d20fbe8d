//! Brute-force reference values for the `nhqubit` test suite.
//!
//! Nothing here shares code with the main crate. The methods are chosen to
//! be easy to audit rather than fast: fixed-panel Gauss–Legendre for the
//! bath integrals, the characteristic polynomial for eigenvalues, explicit
//! matrix square roots for fidelity and power iteration for the operator
//! norm.

use num_complex::Complex64 as C;

/// 2×2 complex matrix, row-major.
pub type M2 = [[C; 2]; 2];

/// A reference value and its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reference {
    pub value: f64,
    pub error: f64,
}

/// Bath parameters as plain numbers: `J(ω) = j0 ωc (ω/ωc)^(1+μ) e^(−ω/ωc)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bath {
    pub j0: f64,
    pub omega_c: f64,
    pub mu: f64,
    /// `f64::INFINITY` for zero temperature.
    pub beta: f64,
}

/// Fixed panel count of the quadrature.
pub const PANELS: usize = 1_000_000;

const GL5_X: [f64; 5] = [
    -0.906_179_845_938_663_992_797_626_878_299_4,
    -0.538_469_310_105_683_091_036_314_420_700_2,
    0.0,
    0.538_469_310_105_683_091_036_314_420_700_2,
    0.906_179_845_938_663_992_797_626_878_299_4,
];
const GL5_W: [f64; 5] = [
    0.236_926_885_056_189_087_514_264_040_719_9,
    0.478_628_670_499_366_468_041_291_514_835_6,
    0.568_888_888_888_888_888_888_888_888_888_9,
    0.478_628_670_499_366_468_041_291_514_835_6,
    0.236_926_885_056_189_087_514_264_040_719_9,
];

/// Neumaier-compensated sum.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
    abs: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
        self.abs += x.abs();
    }

    fn total(&self) -> f64 {
        self.s + self.c
    }
}

/// `∫₀^upper f(ω) dω` with `n` Gauss–Legendre panels in the variable
/// `s = (ω/upper)^(1/k)`, which flattens an `ω^(1/k − 1)` endpoint
/// singularity.
fn fixed_panels(f: &dyn Fn(f64) -> f64, upper: f64, k: f64, n: usize) -> (f64, f64) {
    let h = 1.0 / n as f64;
    let mut acc = Sum::default();
    for i in 0..n {
        let mid = (i as f64 + 0.5) * h;
        for (x, w) in GL5_X.iter().zip(GL5_W) {
            let s = mid + 0.5 * h * x;
            let omega = upper * s.powf(k);
            let jac = upper * k * s.powf(k - 1.0);
            acc.add(0.5 * h * w * f(omega) * jac);
        }
    }
    (acc.total(), acc.abs)
}

/// Integrates `4 ∫₀^∞ J(ω) g(ω) dω`, truncated at `50 ωc`.
fn bath_integral(b: &Bath, g: impl Fn(f64) -> f64) -> Reference {
    let k = if b.mu < 0.0 { 1.0 / (1.0 + b.mu) } else { 1.0 };
    let f = |w: f64| {
        if w == 0.0 {
            return 0.0;
        }
        let x = w / b.omega_c;
        4.0 * b.j0 * b.omega_c * x.powf(1.0 + b.mu) * (-x).exp() * g(w)
    };
    let upper = 50.0 * b.omega_c;
    let (fine, abs) = fixed_panels(&f, upper, k, PANELS);
    let (coarse, _) = fixed_panels(&f, upper, k, PANELS / 2);
    // Gauss–Legendre with five nodes is tenth order on smooth integrands.
    let value = fine + (fine - coarse) / 1023.0;
    let error = (fine - coarse).abs() + 1e-15 * abs;
    Reference { value, error }
}

fn coth_half(beta: f64, w: f64) -> f64 {
    if beta.is_infinite() {
        1.0
    } else {
        (0.5 * beta * w).cosh() / (0.5 * beta * w).sinh()
    }
}

/// `γ(t) = 4∫ J (1 − cos ωt)/ω² coth(βω/2) dω`.
pub fn brute_gamma(t: f64, b: &Bath) -> Reference {
    if t == 0.0 {
        return Reference { value: 0.0, error: 0.0 };
    }
    bath_integral(b, |w| {
        let s = (0.5 * w * t).sin();
        2.0 * s * s / (w * w) * coth_half(b.beta, w)
    })
}

/// `Ω(t) = 4θ∫ J (ωt − sin ωt)/ω² dω`.
pub fn brute_omega(t: f64, theta: f64, b: &Bath) -> Reference {
    if t == 0.0 || theta == 0.0 {
        return Reference { value: 0.0, error: 0.0 };
    }
    let r = bath_integral(b, |w| {
        let x = w * t;
        let num = if x < 1e-3 { x * x * x / 6.0 * (1.0 - x * x / 20.0) } else { x - x.sin() };
        num / (w * w)
    });
    Reference { value: theta * r.value, error: theta.abs() * r.error }
}

/// `Ω₁(t) = 4θ∫ J (1 − cos ωt)/ω² dω`.
pub fn brute_omega1(t: f64, theta: f64, b: &Bath) -> Reference {
    if t == 0.0 || theta == 0.0 {
        return Reference { value: 0.0, error: 0.0 };
    }
    let r = bath_integral(b, |w| {
        let s = (0.5 * w * t).sin();
        2.0 * s * s / (w * w)
    });
    Reference { value: theta * r.value, error: theta.abs() * r.error }
}

/// `∫₀^∞ J(ω) dω` by the same fixed-panel rule.
pub fn brute_total_weight(b: &Bath) -> Reference {
    bath_integral(b, |_| 0.25)
}

/// Roots of `λ² − tr(m) λ + det(m)`, polished by Newton steps.
pub fn brute_eig(m: &M2) -> [C; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr - 4.0 * det).sqrt();
    // Larger-magnitude root first, the other from Vieta.
    let q = if (tr + disc).norm() >= (tr - disc).norm() { tr + disc } else { tr - disc };
    let mut roots = if q.norm() == 0.0 { [C::new(0.0, 0.0); 2] } else { [0.5 * q, 2.0 * det / q] };
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let p = *r * *r - tr * *r + det;
            let dp = 2.0 * *r - tr;
            if dp.norm() < 1e-300 {
                break;
            }
            *r -= p / dp;
        }
    }
    roots
}

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn adjoint(a: &M2) -> M2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

/// Eigendecomposition of a Hermitian 2×2 matrix by one complex Jacobi
/// rotation: returns eigenvalues and the unitary whose columns are the
/// eigenvectors.
pub fn hermitian_eigen(h: &M2) -> ([f64; 2], M2) {
    let a = h[0][0].re;
    let d = h[1][1].re;
    let b = h[0][1];
    let r = b.norm();
    if r == 0.0 {
        let id = [[C::new(1.0, 0.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::new(1.0, 0.0)]];
        return ([a, d], id);
    }
    let phase = b / r;
    let angle = 0.5 * (2.0 * r).atan2(a - d);
    let (s, c) = angle.sin_cos();
    // Columns: (c, e^{-iφ}s) and (−e^{iφ}s, c).
    let v = [[C::new(c, 0.0), -phase * s], [phase.conj() * s, C::new(c, 0.0)]];
    let mean = 0.5 * (a + d);
    let half = (0.25 * (a - d) * (a - d) + r * r).sqrt();
    ([mean + half, mean - half], v)
}

fn hermitian_sqrt(h: &M2) -> M2 {
    let (vals, v) = hermitian_eigen(h);
    let s = [vals[0].max(0.0).sqrt(), vals[1].max(0.0).sqrt()];
    let mut out = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = v[i][0] * s[0] * v[j][0].conj() + v[i][1] * s[1] * v[j][1].conj();
        }
    }
    out
}

/// `[Tr √(√ρ σ √ρ)]²` via explicit square roots.
pub fn brute_fidelity(rho: &M2, sigma: &M2) -> f64 {
    let r = hermitian_sqrt(rho);
    let inner = mul(&mul(&r, sigma), &r);
    let herm = [[inner[0][0], 0.5 * (inner[0][1] + inner[1][0].conj())], [0.5 * (inner[1][0] + inner[0][1].conj()), inner[1][1]]];
    let (vals, _) = hermitian_eigen(&herm);
    let t = vals[0].max(0.0).sqrt() + vals[1].max(0.0).sqrt();
    t * t
}

/// Steps of power iteration.
pub const POWER_STEPS: usize = 10_000;

/// Largest singular value by power iteration on `m† m`.
pub fn brute_opnorm(m: &M2) -> f64 {
    let g = mul(&adjoint(m), m);
    let mut best = 0.0f64;
    for start in [[C::new(1.0, 0.0), C::new(0.3, 0.2)], [C::new(-0.2, 0.4), C::new(1.0, 0.0)]] {
        let mut v = start;
        let mut lambda = 0.0;
        for _ in 0..POWER_STEPS {
            let w = [g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1]];
            let n = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
            if n == 0.0 {
                lambda = 0.0;
                break;
            }
            lambda = (v[0].conj() * w[0] + v[1].conj() * w[1]).re / (v[0].norm_sqr() + v[1].norm_sqr());
            v = [w[0] / n, w[1] / n];
        }
        best = best.max(lambda);
    }
    best.max(0.0).sqrt()
}

/// Trapezoid sums on `[a, b]` with the panel count doubled until two
/// successive values differ by less than `tol`.
pub fn refined_trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_doublings: u32) -> Reference {
    let mut n = 1usize;
    let mut sum = 0.5 * (f(a) + f(b));
    let mut prev = sum * (b - a);
    for _ in 0..max_doublings {
        let h = (b - a) / (2 * n) as f64;
        for i in 0..n {
            sum += f(a + (2 * i + 1) as f64 * h);
        }
        n *= 2;
        let cur = sum * h;
        if (cur - prev).abs() < tol {
            return Reference { value: cur, error: (cur - prev).abs() };
        }
        prev = cur;
    }
    Reference { value: prev, error: f64::INFINITY }
}

/// Romberg table on successively halved trapezoid sums, stopped when two
/// diagonal entries differ by less than `tol`.
pub fn romberg(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_levels: usize) -> Reference {
    let mut rows: Vec<Vec<f64>> = vec![vec![0.5 * (b - a) * (f(a) + f(b))]];
    let mut n = 1usize;
    for level in 1..=max_levels {
        let h = (b - a) / (2 * n) as f64;
        let mid: f64 = (0..n).map(|i| f(a + (2 * i + 1) as f64 * h)).sum();
        let mut row = vec![0.5 * rows[level - 1][0] + h * mid];
        let mut factor = 1.0;
        for k in 1..=level {
            factor *= 4.0;
            let prev = rows[level - 1][k - 1];
            row.push(row[k - 1] + (row[k - 1] - prev) / (factor - 1.0));
        }
        n *= 2;
        let (cur, last) = (row[level], rows[level - 1][level - 1]);
        rows.push(row);
        if (cur - last).abs() < tol && level >= 3 {
            return Reference { value: cur, error: (cur - last).abs() };
        }
    }
    let last = rows.last().unwrap();
    Reference { value: last[last.len() - 1], error: f64::INFINITY }
}
