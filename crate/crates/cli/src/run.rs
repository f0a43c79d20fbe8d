//! Scenario execution and artifact rendering.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use nhqubit::dynamics::{self, KernelErrors, Trajectory};
use nhqubit::entropy::{self, EntropyTable};
use nhqubit::qsl::{self, QslSeries, TauOptions, TauQsl};
use nhqubit::{BathKernels, Error, Symmetry};

use crate::config::{frame_name, state_name, Output, Scenario, Sweep, Variant};
use crate::error::CliError;
use crate::format::{column, num, Table};

pub struct VariantResult {
    pub variant: Variant,
    pub trajectory: Trajectory,
    pub entropy: Option<EntropyTable>,
    pub qsl: Option<QslSeries>,
    /// Per horizon; `None` where the trajectory is stationary up to it.
    pub tau: Vec<Option<TauQsl>>,
}

pub struct Outcome {
    pub times: Vec<f64>,
    pub variants: Vec<VariantResult>,
    pub errors: KernelErrors,
}

/// Evolves every variant of `s` and computes the requested measures.
pub fn simulate(s: &Scenario) -> Result<Outcome, CliError> {
    let times = dynamics::uniform_grid(s.t_max, s.n_points)?;
    let kernels = BathKernels::new(&s.bath, s.tol)?;
    let rho0 = s.initial.state()?;
    let variants = s
        .variants()
        .into_par_iter()
        .map(|variant| {
            let trajectory = dynamics::evolve_with(&variant.qubit, &kernels, &rho0, &times)?;
            let entropy =
                s.wants(Output::Entropy).then(|| entropy::entropy_series(&trajectory, &s.orders, s.frame)).transpose()?;
            let opts = TauOptions { richardson: s.richardson };
            let (qsl, tau) = if s.wants(Output::Qsl) {
                let series = qsl::qsl_series(&trajectory, &[], opts)?;
                let tau = s
                    .horizons
                    .iter()
                    .map(|&h| match qsl::tau_qsl_with(&trajectory, h, opts) {
                        Ok(t) => Ok(Some(t)),
                        Err(Error::DegenerateTrajectory { .. }) => Ok(None),
                        Err(e) => Err(e),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (Some(series), tau)
            } else {
                (None, Vec::new())
            };
            Ok(VariantResult { variant, trajectory, entropy, qsl, tau })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let errors = variants.iter().fold(KernelErrors::default(), |acc, v| acc.merge(v.trajectory.kernel_errors()));
    if errors.max() > s.tol {
        return Err(CliError::Config(format!(
            "recorded quadrature error {} exceeds tol {}",
            num(errors.max()),
            num(s.tol)
        )));
    }
    Ok(Outcome { times, variants, errors })
}

/// Rendered output files, in write order.
pub struct Bundle {
    pub files: Vec<(String, String)>,
    pub manifest: String,
}

impl Bundle {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_str())
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for (name, contents) in self.files.iter().chain([&("manifest.json".to_string(), self.manifest.clone())]) {
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|e| CliError::io(path, e))?;
        }
        Ok(())
    }
}

pub fn run(s: &Scenario) -> Result<Bundle, CliError> {
    Ok(render(s, &simulate(s)?))
}

pub fn render(s: &Scenario, out: &Outcome) -> Bundle {
    let mut files: Vec<(String, String)> = Vec::new();
    let label = |v: &VariantResult| v.variant.label.clone();

    if s.wants(Output::Trajectory) {
        let mut t = Table::new(&out.times);
        for v in &out.variants {
            let l = label(v);
            let states = v.trajectory.states();
            t.push(column("rho11", l.as_deref()), states.iter().map(|r| r.p1()));
            t.push(column("rho22", l.as_deref()), states.iter().map(|r| r.p2()));
            t.push(column("re_rho12", l.as_deref()), states.iter().map(|r| r.coherence().re));
            t.push(column("im_rho12", l.as_deref()), states.iter().map(|r| r.coherence().im));
        }
        files.push(("trajectory.csv".into(), t.render()));
    }
    if s.wants(Output::Decoherence) {
        let mut t = Table::new(&out.times);
        for v in &out.variants {
            t.push(column("D", label(v).as_deref()), v.trajectory.decoherence().iter().copied());
        }
        files.push(("decoherence.csv".into(), t.render()));
    }
    if s.wants(Output::Phase) {
        let mut t = Table::new(&out.times);
        for v in &out.variants {
            let l = label(v);
            let f = match v.trajectory.symmetry() {
                Symmetry::Pt => "Omega",
                Symmetry::AntiPt => "Omega2_minus_Omega1",
            };
            t.push(column(f, l.as_deref()), v.trajectory.phase_function().iter().copied());
            t.push(column("phase", l.as_deref()), v.trajectory.phase().iter().copied());
        }
        files.push(("phase.csv".into(), t.render()));
    }
    if s.wants(Output::Qsl) {
        let mut t = Table::new(&out.times);
        for v in &out.variants {
            let l = label(v);
            let q = v.qsl.as_ref().expect("qsl requested");
            t.push(column("bures_angle", l.as_deref()), q.bures_angle.iter().copied());
            t.push(column("liouvillian_norm", l.as_deref()), q.liouvillian_norm.iter().copied());
            t.push_partial(column("V_QSL", l.as_deref()), q.v_qsl.iter().copied());
        }
        files.push(("qsl.csv".into(), t.render()));

        let mut t = Table::new(&s.horizons);
        t.rename_first("tau");
        for v in &out.variants {
            let l = label(v);
            t.push_partial(column("tau_QSL", l.as_deref()), v.tau.iter().map(|x| x.map(|x| x.tau_qsl)));
            t.push_partial(column("mean_norm", l.as_deref()), v.tau.iter().map(|x| x.map(|x| x.mean_norm)));
        }
        files.push(("tau_qsl.csv".into(), t.render()));
    }
    if s.wants(Output::Entropy) {
        let mut t = Table::new(&out.times);
        for v in &out.variants {
            let l = label(v);
            let e = v.entropy.as_ref().expect("entropy requested");
            for (o, values) in e.orders.iter().zip(&e.values) {
                t.push(column(&o.to_string(), l.as_deref()), values.iter().copied());
            }
            if s.closed_form {
                t.push(column("S1_closed", l.as_deref()), e.closed_form.iter().copied());
            }
        }
        files.push(("entropy.csv".into(), t.render()));
    }

    let manifest = Manifest::new(s, out, files.iter().map(|(n, _)| n.clone()).collect());
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    Bundle { files, manifest: json }
}

#[derive(Serialize)]
struct Manifest<'a> {
    name: &'a str,
    description: &'a str,
    version: &'static str,
    files: Vec<String>,
    scenario: ScenarioRecord<'a>,
    quadrature: QuadratureRecord,
    /// The resolved scenario as a config file.
    config: String,
}

#[derive(Serialize)]
struct ScenarioRecord<'a> {
    qubit: QubitRecord,
    bath: BathRecord,
    initial_state: StateRecord,
    grid: GridRecord,
    outputs: Vec<&'static str>,
    entropy: EntropyRecord,
    qsl: QslRecord<'a>,
    sweep: Option<SweepRecord>,
    variants: Vec<VariantRecord>,
}

#[derive(Serialize)]
struct QubitRecord {
    symmetry: &'static str,
    alpha: f64,
    theta: f64,
    xi: f64,
    delta: f64,
}

#[derive(Serialize)]
struct BathRecord {
    j0: f64,
    omega_c: f64,
    mu: f64,
    /// A string, since JSON has no infinity.
    beta: String,
}

#[derive(Serialize)]
struct StateRecord {
    preset: &'static str,
    bloch: [f64; 3],
}

#[derive(Serialize)]
struct GridRecord {
    t_max: f64,
    n_points: usize,
}

#[derive(Serialize)]
struct EntropyRecord {
    orders: Vec<String>,
    closed_form: bool,
    frame: &'static str,
}

#[derive(Serialize)]
struct QslRecord<'a> {
    horizons: &'a [f64],
    richardson: bool,
}

#[derive(Serialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
enum SweepRecord {
    Theta(Vec<f64>),
    XiDelta(Vec<[f64; 2]>),
    Symmetry(Vec<&'static str>),
}

#[derive(Serialize)]
struct VariantRecord {
    label: Option<String>,
    qubit: QubitRecord,
    omega0: f64,
}

#[derive(Serialize)]
struct QuadratureRecord {
    tol: f64,
    max_error: ErrorRecord,
}

#[derive(Serialize)]
struct ErrorRecord {
    gamma: f64,
    phase: f64,
    gamma_rate: f64,
    phase_rate: f64,
}

fn qubit_record(q: &nhqubit::QubitParams) -> QubitRecord {
    QubitRecord { symmetry: q.symmetry.name(), alpha: q.alpha, theta: q.theta, xi: q.xi, delta: q.delta }
}

impl<'a> Manifest<'a> {
    fn new(s: &'a Scenario, out: &Outcome, files: Vec<String>) -> Self {
        let rho0 = s.initial.state().expect("resolved scenario has a valid state");
        let scenario = ScenarioRecord {
            qubit: qubit_record(&s.qubit),
            bath: BathRecord { j0: s.bath.j0, omega_c: s.bath.omega_c, mu: s.bath.mu, beta: num(s.bath.beta) },
            initial_state: StateRecord { preset: state_name(s.initial), bloch: rho0.bloch() },
            grid: GridRecord { t_max: s.t_max, n_points: s.n_points },
            outputs: s.outputs.iter().map(|o| o.name()).collect(),
            entropy: EntropyRecord {
                orders: s.orders.iter().map(|o| num(o.q())).collect(),
                closed_form: s.closed_form,
                frame: frame_name(s.frame),
            },
            qsl: QslRecord { horizons: &s.horizons, richardson: s.richardson },
            sweep: s.sweep.as_ref().map(|w| match w {
                Sweep::Theta(v) => SweepRecord::Theta(v.clone()),
                Sweep::XiDelta(v) => SweepRecord::XiDelta(v.iter().map(|&(a, b)| [a, b]).collect()),
                Sweep::Symmetry(v) => SweepRecord::Symmetry(v.iter().map(|s| s.name()).collect()),
            }),
            variants: out
                .variants
                .iter()
                .map(|v| VariantRecord {
                    label: v.variant.label.clone(),
                    qubit: qubit_record(&v.variant.qubit),
                    omega0: v.trajectory.omega0(),
                })
                .collect(),
        };
        let e = out.errors;
        Manifest {
            name: &s.name,
            description: &s.description,
            version: nhqubit::VERSION,
            files,
            scenario,
            quadrature: QuadratureRecord {
                tol: s.tol,
                max_error: ErrorRecord {
                    gamma: e.gamma,
                    phase: e.phase,
                    gamma_rate: e.gamma_rate,
                    phase_rate: e.phase_rate,
                },
            },
            config: s.to_config(),
        }
    }
}
