//! Built-in scenarios, one or more per published figure.

use crate::config::{Layer, Sweep};
use crate::error::CliError;
use crate::format::num;

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    body: &'static str,
}

const BATH: &str = "bath.j0 = 1\nbath.omega_c = 1\nbath.mu = -0.5\nbath.beta = 0.5\ngrid.t_max = 20\ngrid.n_points = 201\n";
const PT: &str = "qubit.symmetry = pt\nqubit.alpha = 1\nqubit.xi = 0.81\nqubit.delta = 0.56\n";
const APT: &str = "qubit.symmetry = anti_pt\nqubit.alpha = 1\nqubit.theta = 0.86\n";
const THETAS: &str = "sweep.theta = 0, 0.2, 0.4, 0.6, 0.8, 0.86, 0.9\n";
const PAIRS: &str = "sweep.xi_delta = 0.81:0.56, 0.8:0.5, 0.75:0.25, 0.65:0.45, 0.6:0.3\n";

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig_pt_phase",
        description: "PT phase evolution function over the theta sweep",
        body: "outputs = phase\n",
    },
    Preset {
        name: "fig_pt_decoherence",
        description: "PT decoherence function over the theta sweep",
        body: "outputs = decoherence\n",
    },
    Preset {
        name: "fig_apt_phase",
        description: "Anti-PT phase evolution function over the (xi, delta) sweep",
        body: "outputs = phase\n",
    },
    Preset {
        name: "fig_apt_decoherence",
        description: "Anti-PT decoherence function over the (xi, delta) sweep",
        body: "outputs = decoherence\n",
    },
    Preset {
        name: "fig_pt_qsl",
        description: "PT quantum speed limit over the theta sweep",
        body: "outputs = qsl\nqsl.horizons = 1, 5, 10\n",
    },
    Preset {
        name: "fig_apt_qsl",
        description: "Anti-PT quantum speed limit over the (xi, delta) sweep",
        body: "outputs = qsl\nqsl.horizons = 1, 5, 10\n",
    },
    Preset {
        name: "fig_apt_vs_pt_entropy0",
        description: "Zero-order Renyi entropy of both classes at theta = 0.86, xi = 0.81, delta = 0.56",
        body: "qubit.symmetry = pt\nqubit.alpha = 1\nqubit.theta = 0.86\nqubit.xi = 0.81\nqubit.delta = 0.56\n\
               sweep.symmetry = anti_pt, pt\noutputs = entropy\nentropy.orders = 0\nentropy.closed_form = false\n",
    },
    Preset {
        name: "fig_entropy1_pt",
        description: "PT Von Neumann entropy with the closed-form overlay over the theta sweep",
        body: "outputs = entropy\nentropy.orders = 1\nentropy.closed_form = true\n",
    },
    Preset {
        name: "fig_entropy1_apt",
        description: "Anti-PT Von Neumann entropy with the closed-form overlay over the (xi, delta) sweep",
        body: "outputs = entropy\nentropy.orders = 1\nentropy.closed_form = true\n",
    },
    Preset {
        name: "fig_entropy2_pt",
        description: "PT second-order Renyi entropy over the theta sweep",
        body: "outputs = entropy\nentropy.orders = 2\nentropy.closed_form = false\n",
    },
    Preset {
        name: "fig_entropy2_apt",
        description: "Anti-PT second-order Renyi entropy over the (xi, delta) sweep",
        body: "outputs = entropy\nentropy.orders = 2\nentropy.closed_form = false\n",
    },
    Preset {
        name: "fig_entropy_inf_pt",
        description: "PT min-entropy over the theta sweep",
        body: "outputs = entropy\nentropy.orders = inf\nentropy.closed_form = false\n",
    },
    Preset {
        name: "fig_entropy_inf_apt",
        description: "Anti-PT min-entropy over the (xi, delta) sweep",
        body: "outputs = entropy\nentropy.orders = inf\nentropy.closed_form = false\n",
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

impl Preset {
    /// The preset as config text.
    pub fn text(&self) -> String {
        let qubit = if self.name == "fig_apt_vs_pt_entropy0" {
            ""
        } else if self.name.contains("apt") {
            APT
        } else {
            PT
        };
        let sweep = match qubit {
            "" => "",
            APT => PAIRS,
            _ => THETAS,
        };
        format!("name = {}\ndescription = {}\n{qubit}{BATH}{sweep}{}", self.name, self.description, self.body)
    }
}

/// Parameters of the preset on one line, e.g. `J0=1 beta=0.5 ...`.
pub fn summary(p: &Preset) -> Result<String, CliError> {
    let s = crate::config::load("", "list", Some(p.name))?;
    let (q, b) = (s.qubit, s.bath);
    let mut parts = vec![
        format!("J0={}", num(b.j0)),
        format!("beta={}", num(b.beta)),
        format!("omega_c={}", num(b.omega_c)),
        format!("mu={}", num(b.mu)),
    ];
    let swept = |k: &str| match (&s.sweep, k) {
        (Some(Sweep::Theta(_)), "theta") => true,
        (Some(Sweep::XiDelta(_)), "xi" | "delta") => true,
        _ => false,
    };
    for (k, v) in [("alpha", q.alpha), ("theta", q.theta), ("xi", q.xi), ("delta", q.delta)] {
        if !swept(k) && (v != 0.0 || k == "alpha") {
            parts.push(format!("{k}={}", num(v)));
        }
    }
    match &s.sweep {
        Some(Sweep::Theta(v)) => {
            parts.push(format!("sweep theta={{{}}}", v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", ")))
        }
        Some(Sweep::XiDelta(v)) => parts.push(format!(
            "sweep (xi,delta)={{{}}}",
            v.iter().map(|&(a, b)| format!("({}, {})", num(a), num(b))).collect::<Vec<_>>().join(", ")
        )),
        Some(Sweep::Symmetry(v)) => {
            parts.push(format!("sweep symmetry={{{}}}", v.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")))
        }
        None => parts.push(format!("symmetry={}", q.symmetry)),
    }
    Ok(parts.join(" "))
}

pub fn layer(name: &str) -> Result<Layer, CliError> {
    let p = find(name).ok_or_else(|| CliError::Config(format!("unknown preset `{name}`")))?;
    Layer::parse(&p.text(), &format!("preset {name}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::load;
    use nhqubit::{BathParams, Symmetry};

    #[test]
    fn every_preset_resolves() {
        assert!(PRESETS.len() >= 7);
        for p in PRESETS {
            let s = load("", "test", Some(p.name)).unwrap();
            assert_eq!(s.name, p.name);
            assert_eq!(s.bath, BathParams::caption());
            assert_eq!((s.t_max, s.n_points), (20.0, 201));
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), PRESETS.len());
    }

    #[test]
    fn caption_parameters() {
        let s = load("", "test", Some("fig_pt_phase")).unwrap();
        assert_eq!((s.qubit.alpha, s.qubit.xi, s.qubit.delta), (1.0, 0.81, 0.56));
        assert_eq!(s.sweep, Some(Sweep::Theta(vec![0.0, 0.2, 0.4, 0.6, 0.8, 0.86, 0.9])));
        let s = load("", "test", Some("fig_apt_decoherence")).unwrap();
        assert_eq!((s.qubit.symmetry, s.qubit.alpha, s.qubit.theta), (Symmetry::AntiPt, 1.0, 0.86));
        assert!(matches!(s.sweep, Some(Sweep::XiDelta(ref v)) if v.len() == 5 && v.contains(&(0.65, 0.45))));
    }

    #[test]
    fn summaries() {
        let s = summary(find("fig_pt_phase").unwrap()).unwrap();
        assert!(s.starts_with("J0=1 beta=0.5 omega_c=1 mu=-0.5 alpha=1 xi=0.81 delta=0.56 sweep theta="), "{s}");
        let s = summary(find("fig_apt_decoherence").unwrap()).unwrap();
        assert!(s.contains("alpha=1 theta=0.86 sweep (xi,delta)={(0.81, 0.56)"), "{s}");
    }
}
