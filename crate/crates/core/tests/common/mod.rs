#![allow(dead_code)]

use nhqubit::{BathParams, Mat2, State, C64};
use nhqubit_oracle::{Bath, M2};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn to_oracle(m: &Mat2) -> M2 {
    [[m.a11, m.a12], [m.a21, m.a22]]
}

pub fn oracle_bath(p: &BathParams) -> Bath {
    Bath { j0: p.j0, omega_c: p.omega_c, mu: p.mu, beta: p.beta }
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> C64 {
    C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Mat2 {
    let s = 10f64.powf(rng.gen_range(-2.0..2.0));
    Mat2::new(random_complex(rng, s), random_complex(rng, s), random_complex(rng, s), random_complex(rng, s))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng) -> Mat2 {
    let a = rng.gen_range(-3.0..3.0);
    let d = rng.gen_range(-3.0..3.0);
    let b = random_complex(rng, 3.0);
    Mat2::new(C64::new(a, 0.0), b, b.conj(), C64::new(d, 0.0))
}

/// Uniform in the Bloch ball, with a share of pure and near-pure states.
pub fn random_state(rng: &mut ChaCha8Rng) -> State {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let r2: f64 = v.iter().map(|x| x * x).sum();
        if r2 > 1.0 || r2 == 0.0 {
            continue;
        }
        let r = match rng.gen_range(0..10) {
            0 => 1.0 / r2.sqrt(),
            1 => (1.0 - 1e-9) / r2.sqrt(),
            _ => 1.0,
        };
        if let Ok(s) = State::from_bloch(v[0] * r, v[1] * r, v[2] * r) {
            return s;
        }
    }
}

pub fn random_unitary(rng: &mut ChaCha8Rng) -> Mat2 {
    let (a, b) = (rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3));
    let th: f64 = rng.gen_range(0.0..1.6);
    let (s, co) = th.sin_cos();
    let e = |x: f64| C64::from_polar(1.0, x);
    let phase = e(rng.gen_range(0.0..6.3));
    Mat2::new(e(a) * co, e(b) * s, -e(-b) * s, e(-a) * co) * phase
}

/// Uniform in the open Bloch ball.
pub fn uniform_state(rng: &mut ChaCha8Rng) -> State {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if v.iter().map(|x| x * x).sum::<f64>() < 1.0 {
            return State::from_bloch(v[0], v[1], v[2]).unwrap();
        }
    }
}
