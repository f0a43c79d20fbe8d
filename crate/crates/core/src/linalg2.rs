//! Closed-form complex 2×2 linear algebra.
//!
//! Everything here works on fixed-size values: no allocation, no iteration.
//! The characteristic polynomial of a 2×2 matrix is quadratic, so
//! eigenvalues, singular values and Hermitian matrix functions all have
//! explicit formulas.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::{Error, Real, Result};

/// A complex 2×2 matrix `[[a11, a12], [a21, a22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CMat2<T> {
    pub a11: Complex<T>,
    pub a12: Complex<T>,
    pub a21: Complex<T>,
    pub a22: Complex<T>,
}

/// Column vector of length two.
pub type CVec2<T> = [Complex<T>; 2];

#[inline]
fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

impl<T: Real> CMat2<T> {
    pub const fn new(a11: Complex<T>, a12: Complex<T>, a21: Complex<T>, a22: Complex<T>) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        Self::diag(re(T::one()), re(T::one()))
    }

    pub fn diag(d1: Complex<T>, d2: Complex<T>) -> Self {
        let z = re(T::zero());
        Self::new(d1, z, z, d2)
    }

    /// Builds a matrix from real entries.
    pub fn real(a11: T, a12: T, a21: T, a22: T) -> Self {
        Self::new(re(a11), re(a12), re(a21), re(a22))
    }

    pub fn pauli_x() -> Self {
        Self::real(T::zero(), T::one(), T::one(), T::zero())
    }

    pub fn pauli_y() -> Self {
        let z = T::zero();
        Self::new(re(z), c(z, -T::one()), c(z, T::one()), re(z))
    }

    pub fn pauli_z() -> Self {
        Self::real(T::one(), T::zero(), T::zero(), -T::one())
    }

    /// Outer product `u v†`.
    pub fn outer(u: CVec2<T>, v: CVec2<T>) -> Self {
        Self::new(
            u[0] * v[0].conj(),
            u[0] * v[1].conj(),
            u[1] * v[0].conj(),
            u[1] * v[1].conj(),
        )
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.a11.conj(), self.a12.conj(), self.a21.conj(), self.a22.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn trace(&self) -> Complex<T> {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex<T> {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(re(s))
    }

    pub fn mul_vec(&self, v: CVec2<T>) -> CVec2<T> {
        [
            self.a11 * v[0] + self.a12 * v[1],
            self.a21 * v[0] + self.a22 * v[1],
        ]
    }

    pub fn entries(&self) -> [Complex<T>; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.entries().iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `‖m − m†‖_F ≤ tol`.
    pub fn is_hermitian(&self, tol: T) -> bool {
        (*self - self.adjoint()).frobenius_norm() <= tol
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == T::zero() || !self.is_finite() {
            return None;
        }
        let inv = det.inv();
        Some(Self::new(self.a22, -self.a12, -self.a21, self.a11).scale(inv))
    }

    /// Singular values `(σ_max, σ_min)`.
    ///
    /// Uses `σ₁² + σ₂² = ‖m‖_F²` and `σ₁σ₂ = |det m|`.
    pub fn singular_values(&self) -> (T, T) {
        let two = T::lit(2.0);
        let f2 = self.entries().iter().map(|z| z.norm_sqr()).sum::<T>();
        let d = self.det().norm();
        let plus = (f2 + two * d).sqrt();
        let minus = (f2 - two * d).max(T::zero()).sqrt();
        let smax = (plus + minus) / two;
        let smin = if smax > T::zero() { d / smax } else { T::zero() };
        (smax, smin)
    }

    /// Operator (spectral) norm.
    pub fn opnorm(&self) -> T {
        self.singular_values().0
    }
}

impl<T: Real> Add for CMat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl<T: Real> Sub for CMat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl<T: Real> Neg for CMat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

impl<T: Real> Mul for CMat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl<T: Real> Mul<Complex<T>> for CMat2<T> {
    type Output = Self;
    fn mul(self, s: Complex<T>) -> Self {
        self.scale(s)
    }
}

/// Operator norm of `m` (largest singular value).
pub fn opnorm<T: Real>(m: &CMat2<T>) -> T {
    m.opnorm()
}

/// Eigenpairs of a 2×2 matrix.
///
/// For Hermitian input the eigenvalues have zero imaginary part and are
/// sorted descending, and the eigenvectors are exactly orthogonal. For general
/// input `values[0]` is the root with the larger real part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigen2<T> {
    pub values: [Complex<T>; 2],
    /// Unit-norm eigenvectors, `vectors[i]` pairs with `values[i]`.
    pub vectors: [CVec2<T>; 2],
}

fn vec_norm<T: Real>(v: &CVec2<T>) -> T {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

fn normalized<T: Real>(v: CVec2<T>) -> CVec2<T> {
    let n = vec_norm(&v);
    [v[0] / re(n), v[1] / re(n)]
}

/// `⟨u, v⟩ = u† v`.
pub fn inner<T: Real>(u: &CVec2<T>, v: &CVec2<T>) -> Complex<T> {
    u[0].conj() * v[0] + u[1].conj() * v[1]
}

/// Null vector of `m − λ I`, or `None` when `m − λ I` vanishes.
fn null_vector<T: Real>(m: &CMat2<T>, lambda: Complex<T>, scale: T) -> Option<CVec2<T>> {
    // Either row of (m − λI) gives an orthogonal null vector; take the
    // better-conditioned one.
    let from_row1 = [m.a12, lambda - m.a11];
    let from_row2 = [lambda - m.a22, m.a21];
    let (n1, n2) = (vec_norm(&from_row1), vec_norm(&from_row2));
    let floor = T::epsilon() * scale;
    if n1.max(n2) <= floor {
        None
    } else if n1 >= n2 {
        Some(normalized(from_row1))
    } else {
        Some(normalized(from_row2))
    }
}

fn eig_hermitian<T: Real>(m: &CMat2<T>) -> Eigen2<T> {
    let two = T::lit(2.0);
    let (p, q) = (m.a11.re, m.a22.re);
    let b = (m.a12 + m.a21.conj()) / re(two);
    let mean = (p + q) / two;
    let half = (p - q) / two;
    let r = half.hypot(b.norm());
    let values = [re(mean + r), re(mean - r)];
    if r == T::zero() {
        let (one, zero) = (re(T::one()), re(T::zero()));
        return Eigen2 { values, vectors: [[one, zero], [zero, one]] };
    }
    let v1 = if half >= T::zero() {
        normalized([re(half + r), b.conj()])
    } else {
        normalized([b, re(r - half)])
    };
    let v2 = [-v1[1].conj(), v1[0].conj()];
    Eigen2 { values, vectors: [v1, v2] }
}

/// Eigendecomposition of a 2×2 matrix.
///
/// Fails with [`Error::DegenerateNonDiagonalizable`] when the matrix is
/// defective within tolerance: the eigenvalue gap is below
/// `defect_gap_tol · ‖m‖` and the two eigenvectors nearly coincide. For a
/// non-Hermitian Hamiltonian this is an exceptional point.
pub fn eig2<T: Real>(m: &CMat2<T>) -> Result<Eigen2<T>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = m.frobenius_norm();
    let (one, zero) = (re(T::one()), re(T::zero()));
    if norm == T::zero() {
        return Ok(Eigen2 { values: [zero, zero], vectors: [[one, zero], [zero, one]] });
    }
    if m.is_hermitian(T::lit(4.0) * T::epsilon() * norm)
        && m.a11.im.abs() <= T::epsilon() * norm
        && m.a22.im.abs() <= T::epsilon() * norm
    {
        return Ok(eig_hermitian(m));
    }

    let two = re(T::lit(2.0));
    let mean = (m.a11 + m.a22) / two;
    let half = (m.a11 - m.a22) / two;
    let disc = (half * half + m.a12 * m.a21).sqrt();
    let values = [mean + disc, mean - disc];

    let v1 = null_vector(m, values[0], norm);
    let v2 = null_vector(m, values[1], norm);
    let vectors = match (v1, v2) {
        (Some(a), Some(b)) => [a, b],
        // m − λI vanishing means m = λI up to rounding.
        (None, _) | (_, None) => [[one, zero], [zero, one]],
    };

    let gap = (values[0] - values[1]).norm();
    if gap < T::defect_gap_tol() * norm {
        let overlap = inner(&vectors[0], &vectors[1]).norm();
        if overlap > T::one() - T::defect_overlap_tol() {
            return Err(Error::DegenerateNonDiagonalizable {
                gap: gap.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(Eigen2 { values, vectors })
}

/// Applies a scalar function to a Hermitian matrix through its spectrum:
/// `f(m) = Σ f(λᵢ) vᵢ vᵢ†`.
pub fn hermitian_map<T: Real>(m: &CMat2<T>, f: impl Fn(T) -> T) -> Result<CMat2<T>> {
    let norm = m.frobenius_norm();
    if !m.is_hermitian(T::lit(64.0) * T::epsilon() * norm.max(T::one())) {
        return Err(Error::Domain("hermitian_map requires a Hermitian matrix".into()));
    }
    let e = eig2(m)?;
    let p0 = CMat2::outer(e.vectors[0], e.vectors[0]).scale_real(f(e.values[0].re));
    let p1 = CMat2::outer(e.vectors[1], e.vectors[1]).scale_real(f(e.values[1].re));
    Ok(p0 + p1)
}

/// A qubit density matrix `[[p1, c], [c̄, p2]]`.
///
/// Hermitian by construction. Constructors check unit trace and
/// eigenvalues within `[-positivity_tol, 1 + positivity_tol]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    p1: T,
    p2: T,
    c: Complex<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates populations and coherence without renormalizing.
    pub fn new(p1: T, p2: T, c: Complex<T>) -> Result<Self> {
        let rho = Self { p1, p2, c };
        rho.validate()?;
        Ok(rho)
    }

    /// Hermitian part of `m`, divided by its trace.
    pub fn from_matrix_normalized(m: &CMat2<T>) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let two = T::lit(2.0);
        let tr = m.a11.re + m.a22.re;
        if !(tr > T::zero()) {
            return Err(Error::NonPhysicalState(format!("trace {tr} is not positive")));
        }
        let c = (m.a12 + m.a21.conj()) / re(two * tr);
        Self::new(m.a11.re / tr, m.a22.re / tr, c)
    }

    /// From a matrix that must already be Hermitian with unit trace.
    pub fn from_matrix(m: &CMat2<T>) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let tol = T::trace_tol().max(T::epsilon() * T::lit(16.0));
        if !m.is_hermitian(tol) || m.a11.im.abs() > tol || m.a22.im.abs() > tol {
            return Err(Error::NonPhysicalState("matrix is not Hermitian".into()));
        }
        Self::new(m.a11.re, m.a22.re, m.a12)
    }

    /// `ρ = (I + x σx + y σy + z σz) / 2`; requires `x² + y² + z² ≤ 1`.
    pub fn from_bloch(x: T, y: T, z: T) -> Result<Self> {
        let half = T::lit(0.5);
        Self::new(half * (T::one() + z), half * (T::one() - z), c(half * x, -half * y))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: CVec2<T>) -> Result<Self> {
        let n = vec_norm(&psi);
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::NonPhysicalState("state vector has zero or non-finite norm".into()));
        }
        let v = normalized(psi);
        Self::new(v[0].norm_sqr(), v[1].norm_sqr(), v[0] * v[1].conj())
    }

    /// `|+⟩⟨+|` with `|+⟩ = (|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        let half = T::lit(0.5);
        Self { p1: half, p2: half, c: re(half) }
    }

    /// `|0⟩⟨0|`.
    pub fn ground() -> Self {
        Self { p1: T::one(), p2: T::zero(), c: re(T::zero()) }
    }

    /// `|1⟩⟨1|`.
    pub fn excited() -> Self {
        Self { p1: T::zero(), p2: T::one(), c: re(T::zero()) }
    }

    pub fn maximally_mixed() -> Self {
        let half = T::lit(0.5);
        Self { p1: half, p2: half, c: re(T::zero()) }
    }

    fn validate(&self) -> Result<()> {
        let finite = self.p1.is_finite() && self.p2.is_finite() && self.c.re.is_finite() && self.c.im.is_finite();
        if !finite {
            return Err(Error::NonFinite);
        }
        let tr = self.p1 + self.p2;
        if (tr - T::one()).abs() > T::trace_tol() {
            return Err(Error::NonPhysicalState(format!("trace {tr} differs from 1")));
        }
        let [hi, lo] = self.eigenvalues();
        let tol = T::positivity_tol();
        if lo < -tol || hi > T::one() + tol {
            return Err(Error::NonPhysicalState(format!("eigenvalues ({hi}, {lo}) outside [0, 1]")));
        }
        Ok(())
    }

    pub fn p1(&self) -> T {
        self.p1
    }

    pub fn p2(&self) -> T {
        self.p2
    }

    /// Off-diagonal element `ρ₁₂`.
    pub fn coherence(&self) -> Complex<T> {
        self.c
    }

    pub fn matrix(&self) -> CMat2<T> {
        CMat2::new(re(self.p1), self.c, self.c.conj(), re(self.p2))
    }

    pub fn trace(&self) -> T {
        self.p1 + self.p2
    }

    pub fn det(&self) -> T {
        self.p1 * self.p2 - self.c.norm_sqr()
    }

    /// Bloch vector `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)`.
    pub fn bloch(&self) -> [T; 3] {
        let two = T::lit(2.0);
        [two * self.c.re, -two * self.c.im, self.p1 - self.p2]
    }

    pub fn purity(&self) -> T {
        self.p1 * self.p1 + self.p2 * self.p2 + T::lit(2.0) * self.c.norm_sqr()
    }

    /// Eigenvalues, largest first.
    pub fn eigenvalues(&self) -> [T; 2] {
        let two = T::lit(2.0);
        let mean = (self.p1 + self.p2) / two;
        let r = ((self.p1 - self.p2) / two).hypot(self.c.norm());
        [mean + r, mean - r]
    }

    /// Eigenvalues with the negative rounding slack clamped to zero.
    pub fn clamped_eigenvalues(&self) -> [T; 2] {
        self.eigenvalues().map(|l| l.max(T::zero()))
    }

    /// Matrix square root (principal, on the clamped spectrum).
    pub fn sqrt(&self) -> CMat2<T> {
        hermitian_map(&self.matrix(), |l| l.max(T::zero()).sqrt())
            .expect("density matrices are Hermitian")
    }
}

/// Uhlmann fidelity `[Tr √(√ρ σ √ρ)]²`.
///
/// Uses the qubit identity `F = Tr(ρσ) + 2√(det ρ · det σ)`; the expression
/// is symmetric in its arguments term by term.
pub fn fidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> T {
    let two = T::lit(2.0);
    let overlap = rho.p1 * sigma.p1
        + rho.p2 * sigma.p2
        + two * (rho.c.re * sigma.c.re + rho.c.im * sigma.c.im);
    let dets = rho.det().max(T::zero()) * sigma.det().max(T::zero());
    (overlap + two * dets.sqrt()).max(T::zero()).min(T::one())
}

/// `1 − F(ρ, σ)` for unit-trace states, formed without cancellation as
/// `¼|r − s|² + (√det ρ − √det σ)²` with `r`, `s` the Bloch vectors.
pub fn infidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> T {
    let quarter = T::lit(0.25);
    let dz = (rho.p1 - sigma.p1) - (rho.p2 - sigma.p2);
    let dc = (rho.c - sigma.c).norm_sqr();
    let dd = rho.det().max(T::zero()).sqrt() - sigma.det().max(T::zero()).sqrt();
    (quarter * dz * dz + dc + dd * dd).min(T::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = CMat2<f64>;

    fn residual(m: &M, e: &Eigen2<f64>, i: usize) -> f64 {
        let mv = m.mul_vec(e.vectors[i]);
        let lv = [e.values[i] * e.vectors[i][0], e.values[i] * e.vectors[i][1]];
        vec_norm(&[mv[0] - lv[0], mv[1] - lv[1]])
    }

    #[test]
    fn identity_eigen() {
        let e = eig2(&M::identity()).unwrap();
        assert_eq!(e.values, [re(1.0), re(1.0)]);
        assert!(inner(&e.vectors[0], &e.vectors[1]).norm() < 1e-15);
    }

    #[test]
    fn pauli_z_eigen() {
        let e = eig2(&M::pauli_z()).unwrap();
        assert_eq!(e.values, [re(1.0), re(-1.0)]);
        assert!((e.vectors[0][0].norm() - 1.0).abs() < 1e-15);
        assert!((e.vectors[1][1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_eigenvalues() {
        for m in [M::pauli_x(), M::pauli_y(), M::pauli_z()] {
            let e = eig2(&m).unwrap();
            assert!((e.values[0] - re(1.0)).norm() < 1e-15);
            assert!((e.values[1] + re(1.0)).norm() < 1e-15);
            for i in 0..2 {
                assert!(residual(&m, &e, i) < 1e-14);
            }
        }
    }

    #[test]
    fn jordan_block_is_defective() {
        let j = M::real(1.0, 1.0, 0.0, 1.0);
        assert!(matches!(eig2(&j), Err(Error::DegenerateNonDiagonalizable { .. })));
    }

    #[test]
    fn non_finite_rejected() {
        let m = M::real(f64::NAN, 0.0, 0.0, 1.0);
        assert_eq!(eig2(&m), Err(Error::NonFinite));
    }

    #[test]
    fn general_residuals() {
        let m = M::new(c(1.0, 0.86), c(0.81, 0.56), c(-0.81, 0.56), c(-1.0, 0.86));
        let e = eig2(&m).unwrap();
        for i in 0..2 {
            assert!(residual(&m, &e, i) <= 1e-10 * m.frobenius_norm());
        }
    }

    #[test]
    fn opnorm_diagonal() {
        assert!((M::identity().opnorm() - 1.0).abs() < 1e-15);
        assert!((M::real(3.0, 0.0, 0.0, -4.0).opnorm() - 4.0).abs() < 1e-15);
        let (s1, s2) = M::real(3.0, 0.0, 0.0, -4.0).singular_values();
        assert!((s1 - 4.0).abs() < 1e-15 && (s2 - 3.0).abs() < 1e-14);
    }

    #[test]
    fn infidelity_matches() {
        let a = DensityMatrix::<f64>::from_bloch(0.3, -0.2, 0.5).unwrap();
        let b = DensityMatrix::<f64>::from_bloch(-0.1, 0.6, 0.2).unwrap();
        assert!((infidelity(&a, &b) - (1.0 - fidelity(&a, &b))).abs() < 1e-15);
        let p = DensityMatrix::<f64>::from_bloch(0.6, 0.0, 0.8).unwrap();
        assert_eq!(infidelity(&p, &p), 0.0);
    }

    #[test]
    fn fidelity_examples() {
        let plus = DensityMatrix::<f64>::plus();
        assert!((fidelity(&plus, &plus) - 1.0).abs() < 1e-15);
        let (g, x) = (DensityMatrix::<f64>::ground(), DensityMatrix::<f64>::excited());
        assert_eq!(fidelity(&g, &x), 0.0);
        let mixed = DensityMatrix::<f64>::maximally_mixed();
        assert!((fidelity(&g, &mixed) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn density_rejects_unphysical() {
        assert!(DensityMatrix::new(0.5, 0.5, c(0.6, 0.0)).is_err());
        assert!(DensityMatrix::new(0.6, 0.6, c(0.0, 0.0)).is_err());
        assert!(DensityMatrix::<f64>::from_bloch(1.0, 1.0, 0.0).is_err());
        assert!(DensityMatrix::<f64>::pure([re(0.0), re(0.0)]).is_err());
    }

    #[test]
    fn bloch_roundtrip() {
        let rho = DensityMatrix::<f64>::from_bloch(0.3, -0.4, 0.5).unwrap();
        let b = rho.bloch();
        assert!((b[0] - 0.3).abs() < 1e-15 && (b[1] + 0.4).abs() < 1e-15 && (b[2] - 0.5).abs() < 1e-15);
        let plus = DensityMatrix::<f64>::from_bloch(1.0, 0.0, 0.0).unwrap();
        assert_eq!(plus, DensityMatrix::plus());
    }

    #[test]
    fn sqrt_squares_back() {
        let rho = DensityMatrix::<f64>::from_bloch(0.2, 0.1, -0.6).unwrap();
        let s = rho.sqrt();
        assert!((s * s - rho.matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn single_precision_path() {
        let e = eig2(&CMat2::<f32>::pauli_x()).unwrap();
        assert!((e.values[0].re - 1.0).abs() < 1e-6);
        let rho = DensityMatrix::<f32>::from_bloch(0.0, 0.0, 1.0).unwrap();
        assert!((fidelity(&rho, &DensityMatrix::maximally_mixed()) - 0.5).abs() < 1e-6);
    }
}
