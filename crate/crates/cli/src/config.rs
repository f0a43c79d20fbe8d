//! Flat `key = value` scenario files.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Keys are dotted (`qubit.alpha`). A file may name a built-in preset with
//! `preset = NAME`; the preset is applied first and the file's keys override
//! it. Repeating a key within one layer is an error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nhqubit::bath::DEFAULT_TOL;
use nhqubit::entropy::{Frame, Order};
use nhqubit::{BathParams, QubitParams, Symmetry};

use crate::error::CliError;
use crate::format::num;
use crate::presets;

/// Keys accepted in a scenario file, in canonical order.
pub const KEYS: &[&str] = &[
    "name",
    "description",
    "qubit.symmetry",
    "qubit.alpha",
    "qubit.theta",
    "qubit.xi",
    "qubit.delta",
    "bath.j0",
    "bath.omega_c",
    "bath.mu",
    "bath.beta",
    "state.preset",
    "state.sigma_x",
    "state.sigma_y",
    "state.sigma_z",
    "grid.t_max",
    "grid.n_points",
    "outputs",
    "entropy.orders",
    "entropy.closed_form",
    "entropy.frame",
    "qsl.horizons",
    "qsl.richardson",
    "quadrature.tol",
    "sweep.theta",
    "sweep.xi_delta",
    "sweep.symmetry",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Output {
    Trajectory,
    Decoherence,
    Phase,
    Qsl,
    Entropy,
}

impl Output {
    pub const ALL: [Output; 5] = [Output::Trajectory, Output::Decoherence, Output::Phase, Output::Qsl, Output::Entropy];

    pub fn name(self) -> &'static str {
        match self {
            Output::Trajectory => "trajectory",
            Output::Decoherence => "decoherence",
            Output::Phase => "phase",
            Output::Qsl => "qsl",
            Output::Entropy => "entropy",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitialState {
    Plus,
    Ground,
    Excited,
    Mixed,
    /// Expectation values of σx, σy, σz.
    Bloch([f64; 3]),
}

impl InitialState {
    pub fn state(self) -> Result<nhqubit::State, CliError> {
        Ok(match self {
            InitialState::Plus => nhqubit::State::plus(),
            InitialState::Ground => nhqubit::State::ground(),
            InitialState::Excited => nhqubit::State::excited(),
            InitialState::Mixed => nhqubit::State::maximally_mixed(),
            InitialState::Bloch([x, y, z]) => nhqubit::State::from_bloch(x, y, z)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sweep {
    Theta(Vec<f64>),
    XiDelta(Vec<(f64, f64)>),
    Symmetry(Vec<Symmetry>),
}

/// One parameter set of a scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Variant {
    /// Column suffix; `None` when the scenario has no sweep.
    pub label: Option<String>,
    pub qubit: QubitParams,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub qubit: QubitParams,
    pub bath: BathParams,
    pub initial: InitialState,
    pub t_max: f64,
    pub n_points: usize,
    pub outputs: Vec<Output>,
    pub orders: Vec<Order>,
    pub closed_form: bool,
    pub frame: Frame,
    pub horizons: Vec<f64>,
    pub richardson: bool,
    pub tol: f64,
    pub sweep: Option<Sweep>,
}

impl Scenario {
    pub fn variants(&self) -> Vec<Variant> {
        let with = |label: String, qubit: QubitParams| Variant { label: Some(label), qubit };
        match &self.sweep {
            None => vec![Variant { label: None, qubit: self.qubit }],
            Some(Sweep::Theta(v)) => {
                v.iter().map(|&theta| with(format!("theta={}", num(theta)), QubitParams { theta, ..self.qubit })).collect()
            }
            Some(Sweep::XiDelta(v)) => v
                .iter()
                .map(|&(xi, delta)| {
                    with(format!("xi={};delta={}", num(xi), num(delta)), QubitParams { xi, delta, ..self.qubit })
                })
                .collect(),
            Some(Sweep::Symmetry(v)) => {
                v.iter().map(|&symmetry| with(symmetry.name().into(), QubitParams { symmetry, ..self.qubit })).collect()
            }
        }
    }

    pub fn wants(&self, o: Output) -> bool {
        self.outputs.contains(&o)
    }

    /// The scenario as a self-contained config file.
    pub fn to_config(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", ");
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        put("name", self.name.clone());
        if !self.description.is_empty() {
            put("description", self.description.clone());
        }
        put("qubit.symmetry", self.qubit.symmetry.name().into());
        put("qubit.alpha", num(self.qubit.alpha));
        put("qubit.theta", num(self.qubit.theta));
        put("qubit.xi", num(self.qubit.xi));
        put("qubit.delta", num(self.qubit.delta));
        put("bath.j0", num(self.bath.j0));
        put("bath.omega_c", num(self.bath.omega_c));
        put("bath.mu", num(self.bath.mu));
        put("bath.beta", num(self.bath.beta));
        match self.initial {
            InitialState::Bloch([x, y, z]) => {
                put("state.sigma_x", num(x));
                put("state.sigma_y", num(y));
                put("state.sigma_z", num(z));
            }
            other => put("state.preset", state_name(other).into()),
        }
        put("grid.t_max", num(self.t_max));
        put("grid.n_points", self.n_points.to_string());
        put("outputs", self.outputs.iter().map(|o| o.name()).collect::<Vec<_>>().join(", "));
        put("entropy.orders", self.orders.iter().map(|o| num(o.q())).collect::<Vec<_>>().join(", "));
        put("entropy.closed_form", self.closed_form.to_string());
        put("entropy.frame", frame_name(self.frame).into());
        put("qsl.horizons", list(&self.horizons));
        put("qsl.richardson", self.richardson.to_string());
        put("quadrature.tol", num(self.tol));
        match &self.sweep {
            None => {}
            Some(Sweep::Theta(v)) => put("sweep.theta", list(v)),
            Some(Sweep::XiDelta(v)) => put(
                "sweep.xi_delta",
                v.iter().map(|&(a, b)| format!("{}:{}", num(a), num(b))).collect::<Vec<_>>().join(", "),
            ),
            Some(Sweep::Symmetry(v)) => {
                put("sweep.symmetry", v.iter().map(|s| s.name()).collect::<Vec<_>>().join(", "))
            }
        }
        s
    }
}

pub fn state_name(s: InitialState) -> &'static str {
    match s {
        InitialState::Plus => "plus",
        InitialState::Ground => "ground",
        InitialState::Excited => "excited",
        InitialState::Mixed => "mixed",
        InitialState::Bloch(_) => "bloch",
    }
}

pub fn frame_name(f: Frame) -> &'static str {
    match f {
        Frame::Diagonal => "diagonal",
        Frame::Physical => "physical",
    }
}

#[derive(Clone, Debug)]
struct Entry {
    value: String,
    origin: String,
}

/// Parsed assignments of one file, before defaults are applied.
#[derive(Clone, Debug, Default)]
pub struct Layer {
    entries: BTreeMap<String, Entry>,
}

impl Layer {
    pub fn parse(text: &str, source: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let origin = format!("{source}:{}", n + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("{origin}: expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            if key != "preset" && !KEYS.contains(&key) {
                return Err(CliError::Config(format!("{origin}: unknown key `{key}`")));
            }
            let entry = Entry { value: value.trim().to_string(), origin: origin.clone() };
            if let Some(prev) = entries.insert(key.to_string(), entry) {
                return Err(CliError::Config(format!("{origin}: `{key}` already set at {}", prev.origin)));
            }
        }
        Ok(Layer { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    /// `self` on top of `base`.
    pub fn over(mut self, base: Layer) -> Layer {
        for (k, v) in base.entries {
            self.entries.entry(k).or_insert(v);
        }
        self
    }
}

/// Resolves a config file, with an optional preset beneath it. An explicit
/// `preset` argument wins over a `preset` key in the file.
pub fn load(text: &str, source: &str, preset: Option<&str>) -> Result<Scenario, CliError> {
    let user = Layer::parse(text, source)?;
    let name = preset.map(str::to_string).or_else(|| user.get("preset").map(str::to_string));
    let layer = match name {
        Some(n) => user.over(presets::layer(&n)?),
        None => user,
    };
    resolve(&layer)
}

pub fn resolve(layer: &Layer) -> Result<Scenario, CliError> {
    let r = Reader { layer };
    let caption = BathParams::caption();

    let sweep = r.sweep()?;
    let symmetry = match (r.raw("qubit.symmetry"), &sweep) {
        (Some(v), _) => symmetry(v).map_err(|m| r.bad("qubit.symmetry", m))?,
        (None, Some(Sweep::Symmetry(v))) => v[0],
        (None, _) => return Err(CliError::Config("`qubit.symmetry` is required".into())),
    };
    let qubit = QubitParams {
        alpha: r.real("qubit.alpha", 0.0)?,
        theta: r.real("qubit.theta", 0.0)?,
        xi: r.real("qubit.xi", 0.0)?,
        delta: r.real("qubit.delta", 0.0)?,
        symmetry,
    };
    let bath = BathParams {
        j0: r.real("bath.j0", caption.j0)?,
        omega_c: r.real("bath.omega_c", caption.omega_c)?,
        mu: r.real("bath.mu", caption.mu)?,
        beta: r.real("bath.beta", caption.beta)?,
    };
    bath.validate()?;

    let bloch = ["state.sigma_x", "state.sigma_y", "state.sigma_z"];
    let initial = if bloch.iter().any(|k| r.raw(k).is_some()) {
        if r.raw("state.preset").is_some() {
            return Err(CliError::Config("`state.preset` and `state.sigma_*` are mutually exclusive".into()));
        }
        InitialState::Bloch([r.real(bloch[0], 0.0)?, r.real(bloch[1], 0.0)?, r.real(bloch[2], 0.0)?])
    } else {
        match r.raw("state.preset").unwrap_or("plus") {
            "plus" => InitialState::Plus,
            "ground" => InitialState::Ground,
            "excited" => InitialState::Excited,
            "mixed" => InitialState::Mixed,
            other => return Err(r.bad("state.preset", format!("unknown state `{other}`"))),
        }
    };
    initial.state()?;

    let t_max = r.real("grid.t_max", 20.0)?;
    let n_points = match r.raw("grid.n_points") {
        None => 201,
        Some(v) => v.parse::<usize>().map_err(|_| r.bad("grid.n_points", format!("`{v}` is not a count")))?,
    };
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(r.bad("grid.t_max", "must be positive and finite".into()));
    }
    if n_points < 2 {
        return Err(r.bad("grid.n_points", "need at least 2 points".into()));
    }

    let mut outputs = Vec::new();
    for item in r.list("outputs", "decoherence") {
        let o = Output::ALL
            .into_iter()
            .find(|o| o.name() == item)
            .ok_or_else(|| r.bad("outputs", format!("unknown output `{item}`")))?;
        if !outputs.contains(&o) {
            outputs.push(o);
        }
    }
    outputs.sort();

    let mut orders = Vec::new();
    for item in r.list("entropy.orders", "0, 1, 2, inf") {
        let q = real(&item).map_err(|m| r.bad("entropy.orders", m))?;
        let o = Order::from_q(q).map_err(|e| r.bad("entropy.orders", e.to_string()))?;
        if !orders.contains(&o) {
            orders.push(o);
        }
    }
    let frame = match r.raw("entropy.frame").unwrap_or("diagonal") {
        "diagonal" => Frame::Diagonal,
        "physical" => Frame::Physical,
        other => return Err(r.bad("entropy.frame", format!("unknown frame `{other}`"))),
    };

    let horizons = r.reals("qsl.horizons")?;
    let tol = r.real("quadrature.tol", DEFAULT_TOL)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(r.bad("quadrature.tol", "must lie in (0, 1)".into()));
    }

    let s = Scenario {
        name: r.raw("name").unwrap_or("scenario").to_string(),
        description: r.raw("description").unwrap_or("").to_string(),
        qubit,
        bath,
        initial,
        t_max,
        n_points,
        outputs,
        orders,
        closed_form: r.flag("entropy.closed_form", true)?,
        frame,
        horizons,
        richardson: r.flag("qsl.richardson", false)?,
        tol,
        sweep,
    };
    check(&s)?;
    Ok(s)
}

fn check(s: &Scenario) -> Result<(), CliError> {
    for v in s.variants() {
        v.qubit.validate()?;
    }
    if s.wants(Output::Qsl) {
        if s.n_points < 3 {
            return Err(CliError::Config("qsl output needs grid.n_points >= 3".into()));
        }
        let times = nhqubit::dynamics::uniform_grid(s.t_max, s.n_points)?;
        for &h in &s.horizons {
            let i = times
                .iter()
                .position(|&t| (t - h).abs() <= 1e-9 * h.abs().max(1.0))
                .filter(|&i| i > 0)
                .ok_or_else(|| CliError::Config(format!("qsl horizon {} is not a positive grid point", num(h))))?;
            if s.richardson && i % 2 != 0 {
                return Err(CliError::Config(format!(
                    "qsl horizon {} spans an odd number of intervals; Richardson needs an even one",
                    num(h)
                )));
            }
        }
    }
    Ok(())
}

struct Reader<'a> {
    layer: &'a Layer,
}

impl Reader<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.layer.get(key)
    }

    fn bad(&self, key: &str, msg: String) -> CliError {
        match self.layer.entries.get(key) {
            Some(e) => CliError::Config(format!("{}: `{key}`: {msg}", e.origin)),
            None => CliError::Config(format!("`{key}`: {msg}")),
        }
    }

    fn real(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => real(v).map_err(|m| self.bad(key, m)),
        }
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool, CliError> {
        match self.raw(key) {
            None => Ok(default),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(v) => Err(self.bad(key, format!("expected true or false, got `{v}`"))),
        }
    }

    fn list(&self, key: &str, default: &str) -> Vec<String> {
        split_list(self.raw(key).unwrap_or(default))
    }

    fn reals(&self, key: &str) -> Result<Vec<f64>, CliError> {
        self.list(key, "").iter().map(|v| real(v).map_err(|m| self.bad(key, m))).collect()
    }

    fn sweep(&self) -> Result<Option<Sweep>, CliError> {
        let set: Vec<&str> =
            ["sweep.theta", "sweep.xi_delta", "sweep.symmetry"].into_iter().filter(|k| self.raw(k).is_some()).collect();
        let sweep = match set.as_slice() {
            [] => return Ok(None),
            ["sweep.theta"] => Sweep::Theta(self.reals("sweep.theta")?),
            ["sweep.xi_delta"] => {
                let pairs = self
                    .list("sweep.xi_delta", "")
                    .iter()
                    .map(|item| {
                        let (a, b) = item.split_once(':').ok_or_else(|| format!("expected `xi:delta`, got `{item}`"))?;
                        Ok((real(a.trim())?, real(b.trim())?))
                    })
                    .collect::<Result<Vec<_>, String>>()
                    .map_err(|m| self.bad("sweep.xi_delta", m))?;
                Sweep::XiDelta(pairs)
            }
            ["sweep.symmetry"] => Sweep::Symmetry(
                self.list("sweep.symmetry", "")
                    .iter()
                    .map(|v| symmetry(v))
                    .collect::<Result<_, _>>()
                    .map_err(|m| self.bad("sweep.symmetry", m))?,
            ),
            _ => return Err(CliError::Config(format!("at most one sweep key allowed, got {}", set.join(", ")))),
        };
        let len = match &sweep {
            Sweep::Theta(v) => v.len(),
            Sweep::XiDelta(v) => v.len(),
            Sweep::Symmetry(v) => v.len(),
        };
        if len == 0 {
            return Err(CliError::Config(format!("`{}` is empty", set[0])));
        }
        Ok(Some(sweep))
    }
}

fn split_list(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::to_string).collect()
}

fn real(v: &str) -> Result<f64, String> {
    match v {
        "inf" | "+inf" => Ok(f64::INFINITY),
        _ => match v.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(format!("`{v}` is not a finite number")),
        },
    }
}

fn symmetry(v: &str) -> Result<Symmetry, String> {
    match v {
        "pt" => Ok(Symmetry::Pt),
        "anti_pt" => Ok(Symmetry::AntiPt),
        _ => Err(format!("unknown symmetry `{v}` (expected pt or anti_pt)")),
    }
}
