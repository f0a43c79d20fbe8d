mod common;

use common::{random_state, to_oracle};
use nhqubit::bath::{BathKernels, BathParams, DEFAULT_TOL};
use nhqubit::dynamics::{evolve_apt, evolve_apt_with, evolve_pt, uniform_grid, QubitParams};
use nhqubit::qsl::{bures_angle, liouvillian_norm, qsl_series, tau_qsl, tau_qsl_with, v_qsl, TauOptions};
use nhqubit::State;
use nhqubit_oracle::{brute_fidelity, romberg};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn caption_apt() -> QubitParams {
    QubitParams::anti_pt(1.0, 0.86, 0.81, 0.56)
}

#[test]
fn bures_angle_is_a_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10_000 {
        let (a, b, c) = (random_state(&mut rng), random_state(&mut rng), random_state(&mut rng));
        let (ab, ba) = (bures_angle(&a, &b), bures_angle(&b, &a));
        assert!((ab - ba).abs() <= 1e-9);
        assert!(bures_angle(&a, &c) <= ab + bures_angle(&b, &c) + 1e-9);
        assert!((0.0..=std::f64::consts::FRAC_PI_2).contains(&ab));
    }
}

#[test]
fn tau_bounded_by_horizon() {
    let b = BathParams::caption();
    let times = uniform_grid(20.0, 401).unwrap();
    let pt = evolve_pt(&QubitParams::pt(1.0, 0.86, 0.81, 0.56), &b, &State::plus(), &times).unwrap();
    let apt = evolve_apt(&caption_apt(), &b, &State::plus(), &times).unwrap();
    for traj in [&pt, &apt] {
        for h in [1.0, 2.5, 5.0, 10.0, 20.0] {
            let tau = tau_qsl(traj, h).unwrap();
            assert!(tau.bounded && tau.tau_qsl <= h, "{tau:?}");
        }
    }
}

#[test]
fn v_qsl_matches_recomputation() {
    let b = BathParams::caption();
    let times = uniform_grid(4.0, 4001).unwrap();
    let traj = evolve_apt(&caption_apt(), &b, &State::plus(), &times).unwrap();
    let rho0 = to_oracle(&traj.states()[0].matrix());
    for i in [500, 1000, 2000, 3000] {
        let f = brute_fidelity(&rho0, &to_oracle(&traj.states()[i].matrix()));
        let angle = f.sqrt().acos();
        let h = times[i + 1] - times[i - 1];
        let d = traj.states()[i + 1].matrix() - traj.states()[i - 1].matrix();
        let norm = d.scale_real(1.0 / h).opnorm();
        let expect = norm / (2.0 * angle.sin() * angle.cos());
        let got = v_qsl(&traj, i).unwrap();
        assert!((got - expect).abs() <= 1e-5 * expect, "t = {}: {got} vs {expect}", times[i]);
    }
}

#[test]
fn tau_matches_refinement_oracle() {
    let b = BathParams::caption();
    let p = caption_apt();
    let kernels = BathKernels::new(&b, DEFAULT_TOL).unwrap();
    let norm_at = |t: f64| {
        if t == 0.0 {
            let traj = evolve_apt_with(&p, &kernels, &State::plus(), &[0.0, 1.0]).unwrap();
            return liouvillian_norm(&traj, 0).unwrap();
        }
        let traj = evolve_apt_with(&p, &kernels, &State::plus(), &[0.0, t]).unwrap();
        liouvillian_norm(&traj, 1).unwrap()
    };
    let integral = romberg(norm_at, 0.0, 10.0, 1e-8, 16);
    assert!(integral.error < 1e-8, "{integral:?}");

    let end = evolve_apt(&p, &b, &State::plus(), &[0.0, 10.0]).unwrap();
    let f = brute_fidelity(&to_oracle(&end.states()[0].matrix()), &to_oracle(&end.states()[1].matrix()));
    let expect = (1.0 - f) / (integral.value / 10.0);

    let times = uniform_grid(10.0, 2001).unwrap();
    let traj = evolve_apt(&p, &b, &State::plus(), &times).unwrap();
    let got = tau_qsl_with(&traj, 10.0, TauOptions { richardson: true }).unwrap();
    assert!((got.tau_qsl - expect).abs() <= 1e-6, "{} vs {expect}", got.tau_qsl);
}

#[test]
fn series_shapes() {
    let b = BathParams::caption();
    let times = uniform_grid(20.0, 201).unwrap();
    let traj = evolve_apt(&caption_apt(), &b, &State::plus(), &times).unwrap();
    let s = qsl_series(&traj, &[1.0, 5.0, 10.0], TauOptions::default()).unwrap();
    assert_eq!(s.bures_angle[0], 0.0);
    assert!(s.v_qsl[0].is_none());
    assert!(s.liouvillian_norm.iter().all(|l| l.is_finite() && *l >= 0.0));
    assert_eq!(s.tau.len(), 3);
}
