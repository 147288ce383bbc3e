//! `key = value` run configuration.
//!
//! One assignment per line, `#` starts a comment, keys are dotted
//! (`beam.theta_i`). Later assignments override earlier ones; `--set`
//! overrides are applied after the file.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::CliError;
use crate::kg_scatter::KleinStep;
use crate::media::{
    MediumDispersion, DEFAULT_CENTER_FREQUENCY_HZ, DEFAULT_EPSILON, DEFAULT_FILL_FACTOR, DEFAULT_MU,
};
use crate::units::{mass_from_rest_energy, uev_to_joules};
use crate::wavepacket::{BeamSpec, Carrier};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Lhm,
    Klein,
    Map,
    Coeffs,
    Sweep,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Lhm => "lhm",
            Scenario::Klein => "klein",
            Scenario::Map => "map",
            Scenario::Coeffs => "coeffs",
            Scenario::Sweep => "sweep",
        }
    }
}

impl FromStr for Scenario {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "lhm" => Scenario::Lhm,
            "klein" => Scenario::Klein,
            "map" => Scenario::Map,
            "coeffs" => Scenario::Coeffs,
            "sweep" => Scenario::Sweep,
            other => return Err(format!("unknown scenario `{other}`")),
        })
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which scattering picture a table is computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Picture {
    Em,
    Kg,
}

impl FromStr for Picture {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "em" => Ok(Picture::Em),
            "kg" => Ok(Picture::Kg),
            other => Err(format!("expected `em` or `kg`, got `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// Angle of incidence, radians.
    Theta,
    /// Step height, μeV (Klein picture).
    PotentialUev,
    /// Incident energy, μeV (Klein picture).
    EnergyUev,
    /// Frequency, Hz (electromagnetic picture).
    FrequencyHz,
}

impl FromStr for SweepParameter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "theta" => SweepParameter::Theta,
            "potential_uev" => SweepParameter::PotentialUev,
            "energy_uev" => SweepParameter::EnergyUev,
            "frequency_hz" => SweepParameter::FrequencyHz,
            other => return Err(format!("unknown sweep parameter `{other}`")),
        })
    }
}

impl SweepParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParameter::Theta => "theta",
            SweepParameter::PotentialUev => "potential_uev",
            SweepParameter::EnergyUev => "energy_uev",
            SweepParameter::FrequencyHz => "frequency_hz",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MediumConfig {
    pub center_frequency_hz: f64,
    pub epsilon: f64,
    pub mu: f64,
    pub fill_factor: f64,
    /// Overrides the fitted plasma frequency, rad/s.
    pub plasma_frequency: Option<f64>,
    /// Overrides the fitted resonance, rad/s.
    pub resonance_frequency: Option<f64>,
    pub electric_loss: f64,
    pub magnetic_loss: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KleinConfig {
    pub energy_uev: f64,
    pub potential_uev: f64,
    pub rest_energy_uev: f64,
    /// Build the particle beam from the electromagnetic one through the
    /// counter-dispersive mapping.
    pub mapped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeamConfig {
    pub theta_i: f64,
    pub angular_sigma: f64,
    pub n_components: usize,
    pub spectral_sigma: f64,
    pub n_spectral: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub nx: usize,
    pub nz: usize,
    /// Side length of the square grid in center wavelengths.
    pub wavelengths: f64,
    /// Snapshot time, s.
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffsConfig {
    pub picture: Picture,
    pub angles: Vec<f64>,
    /// Fixed index instead of the dispersive model.
    pub index: Option<f64>,
    pub mu: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapConfig {
    pub points: usize,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub picture: Picture,
    pub parameter: SweepParameter,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    /// Draw values uniformly at random (seeded) instead of on a lattice.
    pub random: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub output_prefix: String,
    pub seed: u64,
    pub medium: MediumConfig,
    pub klein: KleinConfig,
    pub beam: BeamConfig,
    pub grid: GridConfig,
    pub coeffs: CoeffsConfig,
    pub map: MapConfig,
    pub sweep: SweepConfig,
}

impl RunConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            output_prefix: format!("out/{scenario}"),
            seed: 0,
            medium: MediumConfig {
                center_frequency_hz: DEFAULT_CENTER_FREQUENCY_HZ,
                epsilon: DEFAULT_EPSILON,
                mu: DEFAULT_MU,
                fill_factor: DEFAULT_FILL_FACTOR,
                plasma_frequency: None,
                resonance_frequency: None,
                electric_loss: 0.0,
                magnetic_loss: 0.0,
            },
            klein: KleinConfig {
                energy_uev: 20.7,
                potential_uev: 70.63,
                rest_energy_uev: 0.0,
                mapped: false,
            },
            beam: BeamConfig {
                theta_i: PI / 6.0,
                angular_sigma: 0.06,
                n_components: 129,
                spectral_sigma: 0.0,
                n_spectral: 1,
            },
            grid: GridConfig {
                nx: 512,
                nz: 512,
                wavelengths: 20.0,
                time: 0.0,
            },
            coeffs: CoeffsConfig {
                picture: Picture::Em,
                angles: vec![0.0, PI / 6.0],
                index: None,
                mu: None,
            },
            map: MapConfig {
                points: 101,
                omega_min: None,
                omega_max: None,
            },
            sweep: SweepConfig {
                picture: Picture::Kg,
                parameter: SweepParameter::PotentialUev,
                min: 0.0,
                max: 150.0,
                points: 151,
                random: false,
            },
        }
    }

    /// Defaults, then `text` (a config file), then `--set` overrides.
    pub fn load(
        scenario: Scenario,
        text: Option<&str>,
        overrides: &[String],
        output_prefix: Option<&str>,
    ) -> Result<Self, CliError> {
        let mut cfg = Self::new(scenario);
        if let Some(text) = text {
            for (key, value) in parse_assignments(text)? {
                cfg.apply(&key, &value)?;
            }
        }
        for item in overrides {
            let (key, value) = split_assignment(item).ok_or_else(|| CliError::Config {
                key: item.clone(),
                reason: "override must have the form key=value".into(),
            })?;
            cfg.apply(&key, &value)?;
        }
        if let Some(prefix) = output_prefix {
            cfg.output_prefix = prefix.to_string();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "scenario" => {
                let s: Scenario = parse(key, value)?;
                if s != self.scenario {
                    return Err(config_error(
                        key,
                        format!("config is for `{s}` but `{}` was requested", self.scenario),
                    ));
                }
            }
            "output_prefix" => self.output_prefix = value.to_string(),
            "seed" => self.seed = parse(key, value)?,
            "medium.center_frequency_hz" => self.medium.center_frequency_hz = parse(key, value)?,
            "medium.epsilon" => self.medium.epsilon = parse(key, value)?,
            "medium.mu" => self.medium.mu = parse(key, value)?,
            "medium.magnetic_fill_factor" => self.medium.fill_factor = parse(key, value)?,
            "medium.plasma_frequency" => self.medium.plasma_frequency = Some(parse(key, value)?),
            "medium.magnetic_resonance_frequency" => {
                self.medium.resonance_frequency = Some(parse(key, value)?)
            }
            "medium.electric_loss" => self.medium.electric_loss = parse(key, value)?,
            "medium.magnetic_loss" => self.medium.magnetic_loss = parse(key, value)?,
            "klein.energy_uev" => self.klein.energy_uev = parse(key, value)?,
            "klein.potential_uev" => self.klein.potential_uev = parse(key, value)?,
            "klein.rest_energy_uev" => self.klein.rest_energy_uev = parse(key, value)?,
            "klein.mapped" => self.klein.mapped = parse(key, value)?,
            "beam.theta_i" => self.beam.theta_i = parse(key, value)?,
            "beam.angular_sigma" => self.beam.angular_sigma = parse(key, value)?,
            "beam.n_components" => self.beam.n_components = parse(key, value)?,
            "beam.spectral_sigma" => self.beam.spectral_sigma = parse(key, value)?,
            "beam.n_spectral" => self.beam.n_spectral = parse(key, value)?,
            "grid.nx" => self.grid.nx = parse(key, value)?,
            "grid.nz" => self.grid.nz = parse(key, value)?,
            "grid.wavelengths" => self.grid.wavelengths = parse(key, value)?,
            "grid.time" => self.grid.time = parse(key, value)?,
            "coeffs.picture" => self.coeffs.picture = parse(key, value)?,
            "coeffs.angles" => {
                self.coeffs.angles = value
                    .split(',')
                    .map(|v| parse(key, v.trim()))
                    .collect::<Result<_, _>>()?
            }
            "coeffs.index" => self.coeffs.index = Some(parse(key, value)?),
            "coeffs.mu" => self.coeffs.mu = Some(parse(key, value)?),
            "map.points" => self.map.points = parse(key, value)?,
            "map.omega_min" => self.map.omega_min = Some(parse(key, value)?),
            "map.omega_max" => self.map.omega_max = Some(parse(key, value)?),
            "sweep.picture" => self.sweep.picture = parse(key, value)?,
            "sweep.parameter" => self.sweep.parameter = parse(key, value)?,
            "sweep.min" => self.sweep.min = parse(key, value)?,
            "sweep.max" => self.sweep.max = parse(key, value)?,
            "sweep.points" => self.sweep.points = parse(key, value)?,
            "sweep.random" => self.sweep.random = parse(key, value)?,
            _ => return Err(config_error(key, "unknown key")),
        }
        Ok(())
    }

    /// Checks every physical parameter against the library invariants.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.output_prefix.is_empty() {
            return Err(config_error("output_prefix", "must not be empty"));
        }
        let model = self.medium_model()?;
        if !model.is_lossless() && matches!(self.scenario, Scenario::Lhm | Scenario::Map) {
            return Err(config_error(
                "medium.electric_loss",
                "scenarios sample the lossless model; set both loss rates to 0",
            ));
        }
        self.klein_step()?;
        let beam = self.em_beam()?;
        beam.validate().map_err(|e| prefixed("beam", e))?;
        self.kg_beam()?
            .validate()
            .map_err(|e| prefixed("beam", e))?;
        if self.grid.nx < 2 {
            return Err(config_error("grid.nx", "must be at least 2"));
        }
        if self.grid.nz < 2 {
            return Err(config_error("grid.nz", "must be at least 2"));
        }
        if !(self.grid.wavelengths.is_finite() && self.grid.wavelengths > 0.0) {
            return Err(config_error("grid.wavelengths", "must be positive"));
        }
        if !self.grid.time.is_finite() {
            return Err(config_error("grid.time", "must be finite"));
        }
        if self.coeffs.angles.is_empty()
            || self
                .coeffs
                .angles
                .iter()
                .any(|a| !(a.is_finite() && a.abs() < PI / 2.0))
        {
            return Err(config_error(
                "coeffs.angles",
                "needs at least one angle, each with |θ| < π/2",
            ));
        }
        match (self.coeffs.index, self.coeffs.mu) {
            (None, None) => {}
            (Some(n), Some(mu)) => {
                if !(n.is_finite() && n != 0.0) {
                    return Err(config_error("coeffs.index", "must be finite and nonzero"));
                }
                if !(mu.is_finite() && mu != 0.0 && mu.signum() == n.signum()) {
                    return Err(config_error(
                        "coeffs.mu",
                        "must be nonzero with the sign of coeffs.index",
                    ));
                }
            }
            (Some(_), None) => return Err(config_error("coeffs.mu", "required with coeffs.index")),
            (None, Some(_)) => return Err(config_error("coeffs.index", "required with coeffs.mu")),
        }
        if self.map.points == 0 {
            return Err(config_error("map.points", "must be positive"));
        }
        let (lo, hi) = model.negative_index_band();
        let (wmin, wmax) = self.map_range(&model);
        if !(wmin > lo && wmax < hi && wmin <= wmax) {
            return Err(config_error(
                "map.omega_min",
                format!("map range must lie inside the negative-index band ({lo:e}, {hi:e}) rad/s"),
            ));
        }
        if self.sweep.points == 0 {
            return Err(config_error("sweep.points", "must be positive"));
        }
        if !(self.sweep.min.is_finite()
            && self.sweep.max.is_finite()
            && self.sweep.min <= self.sweep.max)
        {
            return Err(config_error(
                "sweep.max",
                "need finite sweep.min ≤ sweep.max",
            ));
        }
        let allowed = match self.sweep.picture {
            Picture::Em => matches!(
                self.sweep.parameter,
                SweepParameter::Theta | SweepParameter::FrequencyHz
            ),
            Picture::Kg => matches!(
                self.sweep.parameter,
                SweepParameter::Theta | SweepParameter::PotentialUev | SweepParameter::EnergyUev
            ),
        };
        if !allowed {
            return Err(config_error(
                "sweep.parameter",
                "not available in the chosen sweep.picture",
            ));
        }
        if self.sweep.parameter == SweepParameter::Theta
            && !(self.sweep.min > -PI / 2.0 && self.sweep.max < PI / 2.0)
        {
            return Err(config_error("sweep.max", "angles must satisfy |θ| < π/2"));
        }
        Ok(())
    }

    pub fn center_omega(&self) -> f64 {
        2.0 * PI * self.medium.center_frequency_hz
    }

    pub fn medium_model(&self) -> Result<MediumDispersion, CliError> {
        let m = &self.medium;
        if !(m.center_frequency_hz.is_finite() && m.center_frequency_hz > 0.0) {
            return Err(config_error(
                "medium.center_frequency_hz",
                "must be positive",
            ));
        }
        let fitted = MediumDispersion::fit(self.center_omega(), m.epsilon, m.mu, m.fill_factor)
            .map_err(|e| prefixed("medium", e))?;
        let model = MediumDispersion::new(
            m.plasma_frequency.unwrap_or(fitted.plasma_frequency),
            m.resonance_frequency
                .unwrap_or(fitted.magnetic_resonance_frequency),
            m.fill_factor,
        )
        .map_err(|e| prefixed("medium", e))?;
        model
            .with_losses(m.electric_loss, m.magnetic_loss)
            .map_err(|e| prefixed("medium", e))
    }

    pub fn mass(&self) -> f64 {
        mass_from_rest_energy(uev_to_joules(self.klein.rest_energy_uev))
    }

    pub fn klein_step(&self) -> Result<KleinStep, CliError> {
        let k = &self.klein;
        if !(k.rest_energy_uev.is_finite() && k.rest_energy_uev >= 0.0) {
            return Err(config_error(
                "klein.rest_energy_uev",
                "must be non-negative",
            ));
        }
        if k.mapped && k.rest_energy_uev != 0.0 {
            return Err(config_error(
                "klein.rest_energy_uev",
                "the counter-dispersive mapping is massless",
            ));
        }
        KleinStep::new(
            uev_to_joules(k.potential_uev),
            self.mass(),
            uev_to_joules(k.energy_uev),
        )
        .map_err(|e| match e {
            Error::InvalidParameter {
                name: "potential",
                reason,
            } => config_error("klein.potential_uev", reason),
            Error::InvalidParameter {
                name: "energy",
                reason,
            } => config_error("klein.energy_uev", reason),
            other => prefixed("klein", other),
        })
    }

    pub fn em_beam(&self) -> Result<BeamSpec, CliError> {
        self.beam_with(Carrier::Electromagnetic {
            omega: self.center_omega(),
        })
    }

    pub fn kg_beam(&self) -> Result<BeamSpec, CliError> {
        self.beam_with(Carrier::KleinGordon {
            energy: uev_to_joules(self.klein.energy_uev),
            mass: self.mass(),
        })
    }

    fn beam_with(&self, carrier: Carrier) -> Result<BeamSpec, CliError> {
        let b = &self.beam;
        let spec = BeamSpec {
            carrier,
            theta_i: b.theta_i,
            angular_sigma: b.angular_sigma,
            n_components: b.n_components,
            spectral_sigma: b.spectral_sigma,
            n_spectral: b.n_spectral,
        };
        spec.validate().map_err(|e| prefixed("beam", e))?;
        Ok(spec)
    }

    /// Inclusive ω range tabulated by `map`.
    pub fn map_range(&self, model: &MediumDispersion) -> (f64, f64) {
        let (lo, hi) = model.negative_index_band();
        let inset = 1e-3 * (hi - lo);
        (
            self.map.omega_min.unwrap_or(lo + inset),
            self.map.omega_max.unwrap_or(hi - inset),
        )
    }
}

fn config_error(key: &str, reason: impl Into<String>) -> CliError {
    CliError::Config {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn prefixed(prefix: &str, err: Error) -> CliError {
    match err {
        Error::InvalidParameter { name, reason } => {
            let key = match (prefix, name) {
                ("beam", "carrier") => "beam.spectral_sigma".to_string(),
                ("beam", "mass") => "klein.rest_energy_uev".to_string(),
                ("medium", "epsilon") => "medium.epsilon".to_string(),
                ("medium", "mu") => "medium.mu".to_string(),
                (_, name) => format!("{prefix}.{name}"),
            };
            config_error(&key, reason)
        }
        other => config_error(prefix, other.to_string()),
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    value
        .parse::<T>()
        .map_err(|e| config_error(key, format!("cannot parse `{value}`: {e}")))
}

fn split_assignment(line: &str) -> Option<(String, String)> {
    let (k, v) = line.split_once('=')?;
    let k = k.trim();
    if k.is_empty() {
        return None;
    }
    Some((k.to_string(), v.trim().to_string()))
}

/// Parses `key = value` lines with `#` comments.
pub fn parse_assignments(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = split_assignment(line).ok_or_else(|| CliError::Config {
            key: format!("line {}", lineno + 1),
            reason: format!("expected `key = value`, got `{line}`"),
        })?;
        out.push((k, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_blank_lines_and_overrides() {
        let text = "# reference\n\nbeam.theta_i = 0.4 # inline\nklein.energy_uev=25\n";
        let cfg = RunConfig::load(
            Scenario::Klein,
            Some(text),
            &["klein.energy_uev = 30".to_string()],
            Some("tmp/x"),
        )
        .unwrap();
        assert_eq!(cfg.beam.theta_i, 0.4);
        assert_eq!(cfg.klein.energy_uev, 30.0);
        assert_eq!(cfg.output_prefix, "tmp/x");
    }

    #[test]
    fn unknown_and_malformed_keys_are_named() {
        let err = RunConfig::load(Scenario::Lhm, Some("beam.thetai = 1"), &[], None).unwrap_err();
        assert!(matches!(err, CliError::Config { ref key, .. } if key == "beam.thetai"));
        let err = RunConfig::load(Scenario::Lhm, Some("grid.nx = many"), &[], None).unwrap_err();
        assert!(matches!(err, CliError::Config { ref key, .. } if key == "grid.nx"));
        let err = RunConfig::load(Scenario::Lhm, Some("just words"), &[], None).unwrap_err();
        assert!(matches!(err, CliError::Config { ref key, .. } if key == "line 1"));
    }

    #[test]
    fn invariant_violations_name_the_key() {
        let cases = [
            ("beam.n_components = 4", "beam.n_components"),
            ("beam.angular_sigma = 0.5", "beam.angular_sigma"),
            ("beam.theta_i = 1.5", "beam.theta_i"),
            (
                "medium.magnetic_fill_factor = 1.5",
                "medium.magnetic_fill_factor",
            ),
            ("klein.energy_uev = -1", "klein.energy_uev"),
            ("klein.potential_uev = -3", "klein.potential_uev"),
            ("coeffs.index = -1", "coeffs.mu"),
            ("sweep.parameter = frequency_hz", "sweep.parameter"),
            ("grid.nx = 1", "grid.nx"),
        ];
        for (line, key) in cases {
            let err = RunConfig::load(Scenario::Sweep, Some(line), &[], None).unwrap_err();
            match err {
                CliError::Config { key: k, .. } => assert_eq!(k, key, "for `{line}`"),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn scenario_key_must_agree() {
        assert!(RunConfig::load(Scenario::Lhm, Some("scenario = lhm"), &[], None).is_ok());
        assert!(RunConfig::load(Scenario::Lhm, Some("scenario = klein"), &[], None).is_err());
    }

    #[test]
    fn default_model_is_the_reference_fit() {
        let cfg = RunConfig::new(Scenario::Lhm);
        assert_eq!(
            cfg.medium_model().unwrap(),
            MediumDispersion::fitted_default()
        );
    }
}
