//! Rényi entropies of a qubit state, in nats.

use std::fmt;

use crate::dynamics::Trajectory;
use crate::linalg2::DensityMatrix;
use crate::{Error, Real, Result};

/// Normalized eigenvalues; those at or below [`Real::rank_tol`] are set to
/// zero so that every order agrees with `S₀` on which eigenvalues count.
fn spectrum<T: Real>(rho: &DensityMatrix<T>) -> [T; 2] {
    let tr = rho.trace();
    rho.clamped_eigenvalues().map(|l| l / tr).map(|l| if l > T::rank_tol() { l } else { T::zero() })
}

/// `S_q = ln(Σ λᵢ^q) / (1 − q)`.
///
/// `q = 1` and `q = ∞` dispatch to [`von_neumann`] and [`renyi_inf`].
/// The sum is formed as `1 + Σ λᵢ(λᵢ^(q−1) − 1)` so the result stays
/// accurate as `q → 1`.
pub fn renyi<T: Real>(rho: &DensityMatrix<T>, q: T) -> Result<T> {
    if q.is_nan() || q <= T::zero() {
        return Err(Error::Domain(format!("Renyi order must be positive, got {q}")));
    }
    if q == T::one() {
        return Ok(von_neumann(rho));
    }
    if q.is_infinite() {
        return Ok(renyi_inf(rho));
    }
    let qm1 = q - T::one();
    let excess: T = spectrum(rho)
        .into_iter()
        .filter(|&l| l > T::zero())
        .map(|l| l * (qm1 * l.ln()).exp_m1())
        .sum();
    Ok((excess.ln_1p() / -qm1).max(T::zero()))
}

/// `S₀ = ln rank ρ`, counting eigenvalues above [`Real::rank_tol`].
pub fn renyi0<T: Real>(rho: &DensityMatrix<T>) -> T {
    let rank = spectrum(rho).into_iter().filter(|&l| l > T::zero()).count();
    T::lit(rank.max(1) as f64).ln()
}

/// `S₁ = −Σ λᵢ ln λᵢ` with `0 ln 0 = 0`.
pub fn von_neumann<T: Real>(rho: &DensityMatrix<T>) -> T {
    let s: T = spectrum(rho)
        .into_iter()
        .filter(|&l| l > T::zero())
        .map(|l| -l * l.ln())
        .sum();
    s.max(T::zero())
}

/// `S_∞ = −ln λ_max`.
pub fn renyi_inf<T: Real>(rho: &DensityMatrix<T>) -> T {
    (-spectrum(rho)[0].ln()).max(T::zero())
}

/// Von Neumann entropy of the equal-population state with coherence
/// magnitude `D/2`: `ln 2 − ½(1+D) ln(1+D) − ½(1−D) ln(1−D)`.
pub fn von_neumann_closed_form<T: Real>(d: T) -> Result<T> {
    if !(d >= T::zero() && d <= T::one()) {
        return Err(Error::Domain(format!("decoherence value must lie in [0, 1], got {d}")));
    }
    let half = T::lit(0.5);
    let up = (T::one() + d) * d.ln_1p();
    let down = if d == T::one() { T::zero() } else { (T::one() - d) * (-d).ln_1p() };
    Ok((T::LN_2() - half * up - half * down).max(T::zero()))
}

/// An entropy order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Order {
    /// `S₀`, log-rank.
    Zero,
    /// `S₁`, Von Neumann.
    One,
    /// Any other finite positive order.
    Q(f64),
    /// Min-entropy.
    Infinity,
}

impl Order {
    /// Normalizes `0`, `1` and `∞` to their dedicated variants.
    pub fn from_q(q: f64) -> Result<Self> {
        if q.is_nan() || q < 0.0 {
            return Err(Error::Domain(format!("entropy order must be >= 0, got {q}")));
        }
        Ok(if q == 0.0 {
            Order::Zero
        } else if q == 1.0 {
            Order::One
        } else if q.is_infinite() {
            Order::Infinity
        } else {
            Order::Q(q)
        })
    }

    pub fn q(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::One => 1.0,
            Order::Q(q) => q,
            Order::Infinity => f64::INFINITY,
        }
    }

    pub fn eval<T: Real>(self, rho: &DensityMatrix<T>) -> Result<T> {
        match self {
            Order::Zero => Ok(renyi0(rho)),
            Order::One => Ok(von_neumann(rho)),
            Order::Infinity => Ok(renyi_inf(rho)),
            Order::Q(q) => renyi(rho, T::lit(q)),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Zero => f.write_str("S0"),
            Order::One => f.write_str("S1"),
            Order::Infinity => f.write_str("Sinf"),
            Order::Q(q) => write!(f, "S{q}"),
        }
    }
}

/// Which states of a trajectory to measure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Frame {
    /// The diagonalizing frame. Identical to `Physical` for APT; for PT the
    /// spectrum is `(1 ± D)/2`, which is what the closed form describes.
    #[default]
    Diagonal,
    /// The physical-basis states.
    Physical,
}

/// Entropies along a trajectory: `values[k][i]` is order `orders[k]` at
/// `times[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyTable {
    pub times: Vec<f64>,
    pub orders: Vec<Order>,
    pub values: Vec<Vec<f64>>,
    /// [`von_neumann_closed_form`] applied to `D(t)`.
    pub closed_form: Vec<f64>,
}

impl EntropyTable {
    /// Largest violation of `S_q ≥ S_q'` for `q < q'` over all rows.
    pub fn hierarchy_violation(&self) -> f64 {
        let mut idx: Vec<usize> = (0..self.orders.len()).collect();
        idx.sort_by(|&a, &b| self.orders[a].q().total_cmp(&self.orders[b].q()));
        let mut worst = 0.0f64;
        for pair in idx.windows(2) {
            let (lo, hi) = (&self.values[pair[0]], &self.values[pair[1]]);
            for (a, b) in lo.iter().zip(hi) {
                worst = worst.max(b - a);
            }
        }
        worst
    }
}

pub fn entropy_series(traj: &Trajectory, orders: &[Order], frame: Frame) -> Result<EntropyTable> {
    let states = match frame {
        Frame::Diagonal => traj.frame_states(),
        Frame::Physical => traj.states(),
    };
    let values = orders
        .iter()
        .map(|o| states.iter().map(|s| o.eval(s)).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    let closed_form = traj
        .decoherence()
        .iter()
        .map(|&d| von_neumann_closed_form(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyTable { times: traj.times().to_vec(), orders: orders.to_vec(), values, closed_form })
}
