//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use nhqubit::bath::DEFAULT_TOL;
use nhqubit::entropy::{entropy_series, Frame, Order};
use nhqubit::linalg2::{eig2, opnorm};
use nhqubit::{fidelity, BathKernels, BathParams, Mat2, State, Symmetry, C64};
use nhqubit_cli::presets::PRESETS;
use nhqubit_cli::{load, simulate, Outcome, Scenario};
use nhqubit_oracle::{brute_eig, brute_fidelity, brute_gamma, brute_omega, brute_omega1, brute_opnorm, Bath, M2};

type Verdict = Result<String, String>;

fn preset(name: &str) -> Scenario {
    load("", "acceptance", Some(name)).unwrap()
}

fn all_presets() -> &'static BTreeMap<&'static str, Outcome> {
    static CELL: OnceLock<BTreeMap<&'static str, Outcome>> = OnceLock::new();
    CELL.get_or_init(|| PRESETS.iter().map(|p| (p.name, simulate(&preset(p.name)).unwrap())).collect())
}

fn outcome(name: &str) -> &'static Outcome {
    &all_presets()[name]
}

fn ensure(ok: bool, pass: String, fail: String) -> Verdict {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn zero_order_entropy() -> Verdict {
    let s = preset("fig_apt_vs_pt_entropy0");
    let start = Instant::now();
    let out = simulate(&s).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let mut worst = 0.0f64;
    let mut points = Vec::new();
    for v in &out.variants {
        let e = v.entropy.as_ref().unwrap();
        assert_eq!(e.orders[0], Order::Zero);
        let checked: Vec<f64> = e.values[0].iter().zip(&e.times).filter(|(_, &t)| t > 0.0).map(|(s, _)| *s).collect();
        points.push(checked.len());
        for x in checked {
            worst = worst.max((x - LN_2).abs());
        }
    }
    let classes: Vec<_> = out.variants.iter().map(|v| v.variant.qubit.symmetry).collect();
    let msg = format!("max |S0 - ln 2| = {worst:.1e} over {points:?} points for {classes:?}, {secs:.2} s");
    ensure(worst <= 1e-6 && points == [200, 200] && secs < 10.0, msg.clone(), msg)
}

fn overlay_identity() -> Verdict {
    let mut worst = 0.0f64;
    let mut n = 0;
    for name in ["fig_entropy1_pt", "fig_entropy1_apt"] {
        for v in &outcome(name).variants {
            let e = v.entropy.as_ref().unwrap();
            let i = e.orders.iter().position(|&o| o == Order::One).unwrap();
            for (a, b) in e.values[i].iter().zip(&e.closed_form) {
                worst = worst.max((a - b).abs());
                n += 1;
            }
        }
    }
    let msg = format!("max |S1 - closed form| = {worst:.1e} over {n} points");
    ensure(worst <= 1e-10, msg.clone(), msg)
}

/// Largest violation of `S0 >= S1 >= S2 >= Sinf`.
fn hierarchy_gap(s: &State) -> f64 {
    let v: Vec<f64> = [Order::Zero, Order::One, Order::Q(2.0), Order::Infinity]
        .iter()
        .map(|o| o.eval(s).unwrap())
        .collect();
    v.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

fn random_state(rng: &mut ChaCha8Rng) -> State {
    loop {
        let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let r2: f64 = v.iter().map(|x: &f64| x * x).sum();
        if r2 >= 1.0 || r2 == 0.0 {
            continue;
        }
        let scale = match rng.gen_range(0..10) {
            0 => 1.0 / r2.sqrt(),
            1 => (1.0 - 1e-9) / r2.sqrt(),
            _ => 1.0,
        };
        if let Ok(s) = State::from_bloch(v[0] * scale, v[1] * scale, v[2] * scale) {
            return s;
        }
    }
}

fn renyi_hierarchy() -> Verdict {
    let orders = [Order::Zero, Order::One, Order::Q(2.0), Order::Infinity];
    let mut traj_worst = 0.0f64;
    let mut points = 0;
    for out in all_presets().values() {
        for v in &out.variants {
            for frame in [Frame::Diagonal, Frame::Physical] {
                let t = entropy_series(&v.trajectory, &orders, frame).unwrap();
                traj_worst = traj_worst.max(t.hierarchy_violation());
                points += t.times.len();
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rand_worst = (0..10_000).map(|_| hierarchy_gap(&random_state(&mut rng))).fold(0.0, f64::max);
    let msg = format!(
        "max violation {traj_worst:.1e} over {points} trajectory points, {rand_worst:.1e} over 10^4 random states"
    );
    ensure(traj_worst <= 1e-10 && rand_worst <= 1e-10, msg.clone(), msg)
}

fn robustness_ordering() -> Verdict {
    let s = load("preset = fig_apt_vs_pt_entropy0\noutputs = decoherence\n", "acceptance", None).unwrap();
    let out = simulate(&s).unwrap();
    let find = |c: Symmetry| out.variants.iter().find(|v| v.variant.qubit.symmetry == c).unwrap();
    let (apt, pt) = (find(Symmetry::AntiPt), find(Symmetry::Pt));
    let w2 = |v: &nhqubit_cli::run::VariantResult| v.variant.qubit.omega0_squared();
    let exponents_ok = (w2(apt) - 0.0303).abs() < 1e-12 && (w2(pt) - 0.2301).abs() < 1e-12;
    let (da, dp) = (apt.trajectory.decoherence(), pt.trajectory.decoherence());
    let mut strict = true;
    let mut worst_log = f64::INFINITY;
    let (mut abs_until, mut broken) = (0.0, false);
    for (i, &t) in out.times.iter().enumerate().filter(|(_, &t)| t > 0.0) {
        strict &= da[i] > dp[i];
        if t >= 0.1 - 1e-12 {
            worst_log = worst_log.min(da[i].ln() - dp[i].ln());
            if da[i] - dp[i] > 1e-12 && !broken {
                abs_until = t;
            } else {
                broken = true;
            }
        }
    }
    let msg = format!(
        "omega0^2 APT {:.4} < PT {:.4}; D_APT > D_PT at every t > 0: {strict}; \
         min ln D_APT - ln D_PT for t >= 0.1 = {worst_log:.3e} (absolute gap > 1e-12 up to t = {abs_until})",
        w2(apt),
        w2(pt)
    );
    ensure(exponents_ok && strict && worst_log > 1e-12, msg.clone(), msg)
}

fn theta_ordering() -> Verdict {
    let out = outcome("fig_pt_decoherence");
    let mut vs: Vec<_> = out.variants.iter().collect();
    vs.sort_by(|a, b| a.variant.qubit.theta.total_cmp(&b.variant.qubit.theta));
    let thetas: Vec<f64> = vs.iter().map(|v| v.variant.qubit.theta).collect();
    let w2: Vec<f64> = vs.iter().map(|v| v.variant.qubit.omega0_squared()).collect();
    let exponent_ok = w2.windows(2).all(|w| w[1] < w[0]);
    let mut violations = 0;
    for pair in vs.windows(2) {
        let (lo, hi) = (pair[0].trajectory.decoherence(), pair[1].trajectory.decoherence());
        violations += lo.iter().zip(hi).filter(|(a, b)| b < a).count();
    }
    let msg = format!(
        "theta {thetas:?}: omega0^2 strictly decreasing: {exponent_ok}; pointwise violations of D order: {violations}"
    );
    ensure(thetas == [0.0, 0.2, 0.4, 0.6, 0.8, 0.86, 0.9] && exponent_ok && violations == 0, msg.clone(), msg)
}

fn phase_properties() -> Verdict {
    let k = BathKernels::new(&BathParams::caption(), DEFAULT_TOL).unwrap();
    let grid: Vec<f64> = (0..=2000).map(|i| 20.0 * i as f64 / 2000.0).collect();
    let mut bad_sign = 0;
    let mut bad_mono = 0;
    for theta in [0.2, 0.4, 0.6, 0.8, 0.86, 0.9] {
        let om: Vec<f64> = grid.par_iter().map(|&t| k.omega_pt(t, theta).unwrap().value).collect();
        bad_sign += om.iter().skip(1).filter(|&&x| x <= 0.0).count();
        bad_mono += om.windows(2).filter(|w| w[1] <= w[0]).count();
    }
    let mut worst_lin = 0.0f64;
    for theta in [0.1, 0.2, 0.3, 0.4, 0.43, 0.45] {
        let d: f64 = grid
            .par_iter()
            .map(|&t| (k.omega_pt(t, 2.0 * theta).unwrap().value - 2.0 * k.omega_pt(t, theta).unwrap().value).abs())
            .reduce(|| 0.0, f64::max);
        worst_lin = worst_lin.max(d);
    }
    let msg = format!(
        "{} points: nonpositive {bad_sign}, non-increasing steps {bad_mono}, max |Omega(2 theta) - 2 Omega(theta)| = {worst_lin:.1e}",
        grid.len()
    );
    ensure(bad_sign == 0 && bad_mono == 0 && worst_lin <= 1e-10, msg.clone(), msg)
}

fn apt_phase_independence() -> Verdict {
    let out = outcome("fig_apt_phase");
    let tol = preset("fig_apt_phase").tol;
    let pairs: Vec<(f64, f64)> = out.variants.iter().map(|v| (v.variant.qubit.xi, v.variant.qubit.delta)).collect();
    let first = out.variants[0].trajectory.phase_function();
    let worst = out.variants[1..]
        .iter()
        .flat_map(|v| v.trajectory.phase_function().iter().zip(first).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max);
    let msg = format!("{} pairs {pairs:?}: max spread of Omega2 - Omega1 = {worst:.1e} (tol {tol:e})", pairs.len());
    let required = pairs.contains(&(0.81, 0.56)) && pairs.contains(&(0.65, 0.45)) && pairs.len() == 5;
    ensure(required && worst <= tol, msg.clone(), msg)
}

fn qsl_shape() -> Verdict {
    let mut no_max = Vec::new();
    let mut unbounded = Vec::new();
    let mut variants = 0;
    for name in ["fig_pt_qsl", "fig_apt_qsl"] {
        let s = preset(name);
        assert_eq!(s.horizons, [1.0, 5.0, 10.0]);
        for v in &outcome(name).variants {
            variants += 1;
            let label = format!("{name}[{}]", v.variant.label.as_deref().unwrap_or(""));
            let q = v.qsl.as_ref().unwrap();
            if q.interior_maximum().is_none() {
                let first = q.v_qsl.iter().position(Option::is_some);
                let argmax = q
                    .v_qsl
                    .iter()
                    .enumerate()
                    .filter_map(|(i, x)| x.map(|x| (i, x)))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .map(|(i, _)| q.times[i]);
                no_max.push(format!("{label} peaks at t={argmax:?} (first defined t={:?})", first.map(|i| q.times[i])));
            }
            for (h, tau) in s.horizons.iter().zip(&v.tau) {
                match tau {
                    Some(t) if t.tau_qsl <= *h => {}
                    other => unbounded.push(format!("{label} tau={h}: {:?}", other.map(|t| t.tau_qsl))),
                }
            }
        }
    }
    let msg = format!(
        "{variants} variants: {} without interior V_QSL maximum, {} with tau_QSL > tau{}",
        no_max.len(),
        unbounded.len(),
        no_max.first().map(|s| format!("; e.g. {s}")).unwrap_or_default()
    );
    ensure(no_max.is_empty() && unbounded.is_empty(), msg.clone(), msg)
}

fn to_oracle(m: &Mat2) -> M2 {
    [[m.a11, m.a12], [m.a21, m.a22]]
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Mat2 {
    let s = 10f64.powf(rng.gen_range(-2.0..2.0));
    let mut c = || C64::new(rng.gen_range(-s..s), rng.gen_range(-s..s));
    Mat2::new(c(), c(), c(), c())
}

fn uniform_state(rng: &mut ChaCha8Rng) -> State {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if v.iter().map(|x| x * x).sum::<f64>() < 1.0 {
            return State::from_bloch(v[0], v[1], v[2]).unwrap();
        }
    }
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let p = BathParams::caption();
    let b = Bath { j0: p.j0, omega_c: p.omega_c, mu: p.mu, beta: p.beta };
    let k = BathKernels::new(&p, DEFAULT_TOL).unwrap();
    let theta = 0.86;
    let probes = [
        0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 19.0, 20.0,
    ];
    let jobs: Vec<(usize, f64)> = (0..3).flat_map(|kind| probes.iter().map(move |&t| (kind, t))).collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(kind, t)| {
            let (name, ours, reference) = match kind {
                0 => ("gamma", k.gamma(t).unwrap(), brute_gamma(t, &b)),
                1 => ("omega", k.omega_pt(t, theta).unwrap(), brute_omega(t, theta, &b)),
                _ => ("omega1", k.omega1(t, theta).unwrap(), brute_omega1(t, theta, &b)),
            };
            let bound = DEFAULT_TOL + reference.error;
            let diff = (ours.value - reference.value).abs();
            (diff > bound).then(|| format!("{name}({t}): |diff| {diff:.1e} > {bound:.1e}"))
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut eig_worst, mut norm_worst, mut fid_worst) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let m = random_matrix(&mut rng);
        let scale = m.frobenius_norm();
        let key = |c: &C64| (c.re, c.im);
        let mut ours = eig2(&m).unwrap().values;
        let mut theirs = brute_eig(&to_oracle(&m));
        ours.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        theirs.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        for (a, b) in ours.iter().zip(&theirs) {
            eig_worst = eig_worst.max((a - b).norm() / scale);
        }
        norm_worst = norm_worst.max((opnorm(&m) - brute_opnorm(&to_oracle(&m))).abs() / scale);
        let (r, s) = (uniform_state(&mut rng), uniform_state(&mut rng));
        fid_worst = fid_worst.max((fidelity(&r, &s) - brute_fidelity(&to_oracle(&r.matrix()), &to_oracle(&s.matrix()))).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    let msg = format!(
        "{} kernel probes, {} outside bounds{}; 10^4 draws: eig {eig_worst:.1e}, opnorm {norm_worst:.1e}, fidelity {fid_worst:.1e}; {secs:.0} s",
        jobs.len(),
        failures.len(),
        failures.first().map(|f| format!(" (e.g. {f})")).unwrap_or_default()
    );
    let linalg_ok = eig_worst <= 1e-10 && norm_worst <= 1e-10 && fid_worst <= 1e-10;
    ensure(failures.is_empty() && linalg_ok && secs < 300.0, msg.clone(), msg)
}

fn state_physicality() -> Verdict {
    let mut states = 0;
    let (mut trace_worst, mut min_eig, mut non_hermitian) = (0.0f64, f64::INFINITY, 0);
    for out in all_presets().values() {
        for v in &out.variants {
            for s in v.trajectory.states().iter().chain(v.trajectory.frame_states()) {
                states += 1;
                let m = s.matrix();
                trace_worst = trace_worst.max((m.trace().re - 1.0).abs()).max(m.trace().im.abs());
                if m.a21 != m.a12.conj() || m.a11.im != 0.0 || m.a22.im != 0.0 {
                    non_hermitian += 1;
                }
                min_eig = min_eig.min(s.eigenvalues()[1]);
            }
        }
    }
    let msg = format!(
        "{states} states over {} presets: max |tr - 1| {trace_worst:.1e}, non-Hermitian {non_hermitian}, min eigenvalue {min_eig:.1e}",
        PRESETS.len()
    );
    ensure(trace_worst <= 1e-12 && non_hermitian == 0 && min_eig >= -1e-10, msg.clone(), msg)
}

fn read_dir(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect()
}

fn determinism() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let mut mismatches = Vec::new();
    let mut files = 0;
    for p in PRESETS {
        let mut runs = Vec::new();
        for (i, threads) in ["1", "8", "1", "8"].iter().enumerate() {
            let out = tmp.path().join(format!("{}-{i}", p.name));
            let status = Command::new(env!("CARGO_BIN_EXE_nhqubit"))
                .args(["run", "--preset", p.name, "--out"])
                .arg(&out)
                .env("NHQUBIT_THREADS", threads)
                .output()
                .unwrap();
            if !status.status.success() {
                return Err(format!("{} exited with {:?}", p.name, status.status.code()));
            }
            runs.push(read_dir(&out));
        }
        files += runs[0].keys().filter(|k| k.ends_with(".csv")).count();
        if runs.iter().any(|r| r != &runs[0]) {
            mismatches.push(p.name);
        }
    }
    let msg = format!(
        "{} presets x 4 runs (NHQUBIT_THREADS 1, 8, 1, 8), {files} CSV files each: mismatches {mismatches:?}",
        PRESETS.len()
    );
    ensure(mismatches.is_empty(), msg.clone(), msg)
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("zero-order entropy constancy", zero_order_entropy),
        ("Von Neumann overlay identity", overlay_identity),
        ("Renyi hierarchy", renyi_hierarchy),
        ("PT vs Anti-PT robustness ordering", robustness_ordering),
        ("theta ordering in PT", theta_ordering),
        ("phase-function properties", phase_properties),
        ("Anti-PT phase independence from (xi, delta)", apt_phase_independence),
        ("QSL shape", qsl_shape),
        ("oracle equivalence", oracle_equivalence),
        ("state physicality", state_physicality),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match verdict {
            Ok(detail) => println!("PASS {:>2} {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
