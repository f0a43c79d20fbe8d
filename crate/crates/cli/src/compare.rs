//! Pointwise comparison of the decoherence of two scenarios.

use nhqubit::dynamics;

use crate::config::Scenario;
use crate::error::CliError;
use crate::format::{num, Table};
use crate::run::simulate;

pub struct Comparison {
    pub times: Vec<f64>,
    pub d_a: Vec<f64>,
    pub d_b: Vec<f64>,
}

impl Comparison {
    pub fn ratio(&self) -> Vec<f64> {
        self.d_a.iter().zip(&self.d_b).map(|(a, b)| b / a).collect()
    }

    pub fn holds(&self) -> Vec<bool> {
        self.d_a.iter().zip(&self.d_b).map(|(a, b)| b >= a).collect()
    }

    /// `(holding, total)` over grid points with `t > 0`.
    pub fn tally(&self) -> (usize, usize) {
        let pairs = self.times.iter().zip(self.holds()).filter(|(&t, _)| t > 0.0);
        pairs.fold((0, 0), |(k, n), (_, h)| (k + h as usize, n + 1))
    }

    pub fn render(&self) -> String {
        let mut t = Table::new(&self.times);
        t.push("D_A".into(), self.d_a.iter().copied());
        t.push("D_B".into(), self.d_b.iter().copied());
        t.push("ratio".into(), self.ratio());
        t.push("B_ge_A".into(), self.holds().into_iter().map(|h| h as u8 as f64));
        let (k, n) = self.tally();
        let pct = if n == 0 { 100.0 } else { 100.0 * k as f64 / n as f64 };
        format!("{}# D_B >= D_A at {k} of {n} points with t > 0 ({}%)\n", t.render(), num(pct))
    }
}

fn single(s: &Scenario, which: &str) -> Result<(), CliError> {
    match s.variants().len() {
        1 => Ok(()),
        n => Err(CliError::Config(format!("scenario {which} ({}) has {n} sweep variants; compare needs one", s.name))),
    }
}

pub fn compare(a: &Scenario, b: &Scenario) -> Result<Comparison, CliError> {
    single(a, "A")?;
    single(b, "B")?;
    let ga = dynamics::uniform_grid(a.t_max, a.n_points)?;
    let gb = dynamics::uniform_grid(b.t_max, b.n_points)?;
    if ga != gb {
        let desc = |s: &Scenario| format!("{} points on [0, {}]", s.n_points, num(s.t_max));
        return Err(CliError::GridMismatch { a: desc(a), b: desc(b) });
    }
    let d = |s: &Scenario| -> Result<Vec<f64>, CliError> {
        let mut out = simulate(s)?;
        Ok(out.variants.remove(0).trajectory.decoherence().to_vec())
    };
    Ok(Comparison { times: ga, d_a: d(a)?, d_b: d(b)? })
}
