use std::f64::consts::{FRAC_PI_2, FRAC_PI_8};

use super::PlaneWaveComponent;
use crate::units::rest_energy;
use crate::{Error, Result};

/// Spectrum is cut at ± this many standard deviations.
pub const TRUNCATION_SIGMAS: f64 = 3.0;

/// Center of the beam spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Carrier {
    /// Center angular frequency, rad/s.
    Electromagnetic { omega: f64 },
    /// Center energy (J) of particles of mass `mass` (kg).
    KleinGordon { energy: f64, mass: f64 },
}

impl Carrier {
    fn center(&self) -> f64 {
        match *self {
            Carrier::Electromagnetic { omega } => omega,
            Carrier::KleinGordon { energy, .. } => energy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    pub carrier: Carrier,
    /// Beam axis angle of incidence, radians.
    pub theta_i: f64,
    /// Gaussian spread of the propagation angle, radians.
    pub angular_sigma: f64,
    /// Odd number of angular components.
    pub n_components: usize,
    /// Gaussian spread of frequency or energy relative to the center; 0 for a
    /// monochromatic beam.
    pub spectral_sigma: f64,
    /// Odd number of spectral samples; 1 for a monochromatic beam.
    pub n_spectral: usize,
}

impl BeamSpec {
    pub fn monochromatic(
        carrier: Carrier,
        theta_i: f64,
        angular_sigma: f64,
        n_components: usize,
    ) -> Result<Self> {
        let spec = Self {
            carrier,
            theta_i,
            angular_sigma,
            n_components,
            spectral_sigma: 0.0,
            n_spectral: 1,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Adds a Gaussian spread in frequency (or energy).
    pub fn with_spectrum(mut self, spectral_sigma: f64, n_spectral: usize) -> Result<Self> {
        self.spectral_sigma = spectral_sigma;
        self.n_spectral = n_spectral;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_components == 0 || self.n_components.is_multiple_of(2) {
            return Err(Error::invalid("n_components", "must be odd and positive"));
        }
        if !(self.angular_sigma > 0.0 && self.angular_sigma < FRAC_PI_8) {
            return Err(Error::invalid("angular_sigma", "must lie in (0, π/8)"));
        }
        let reach = TRUNCATION_SIGMAS * self.angular_sigma;
        if !(self.theta_i.is_finite()
            && self.theta_i + reach < FRAC_PI_2
            && self.theta_i - reach > -FRAC_PI_2)
        {
            return Err(Error::invalid(
                "theta_i",
                "the truncated spectrum must stay within (−π/2, π/2)",
            ));
        }
        if self.n_spectral == 0 || self.n_spectral.is_multiple_of(2) {
            return Err(Error::invalid("n_spectral", "must be odd and positive"));
        }
        if !(self.spectral_sigma.is_finite() && self.spectral_sigma >= 0.0) {
            return Err(Error::invalid("spectral_sigma", "must be non-negative"));
        }
        if self.n_spectral > 1 && self.spectral_sigma == 0.0 {
            return Err(Error::invalid(
                "spectral_sigma",
                "must be positive when more than one spectral sample is requested",
            ));
        }
        let lowest = 1.0 - TRUNCATION_SIGMAS * self.spectral_sigma;
        match self.carrier {
            Carrier::Electromagnetic { omega } => {
                if !(omega.is_finite() && omega > 0.0 && lowest > 0.0) {
                    return Err(Error::invalid(
                        "carrier",
                        "all component frequencies must be positive",
                    ));
                }
            }
            Carrier::KleinGordon { energy, mass } => {
                if !(mass.is_finite() && mass >= 0.0) {
                    return Err(Error::invalid("mass", "must be non-negative"));
                }
                if !(energy.is_finite() && energy * lowest > rest_energy(mass)) {
                    return Err(Error::invalid(
                        "carrier",
                        "all component energies must exceed the rest energy",
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Equally spaced offsets over ±3σ with unnormalized Gaussian weights.
fn gaussian_nodes(count: usize, sigma: f64) -> Vec<(f64, f64)> {
    if count == 1 {
        return vec![(0.0, 1.0)];
    }
    let half = (count - 1) / 2;
    let step = TRUNCATION_SIGMAS * sigma / half as f64;
    (0..count)
        .map(|j| {
            let offset = (j as f64 - half as f64) * step;
            let u = offset / sigma;
            (offset, (-0.5 * u * u).exp())
        })
        .collect()
}

/// Components ordered by angle, then frequency, with Σw² = 1.
pub fn build_spectrum(spec: &BeamSpec) -> Result<Vec<PlaneWaveComponent>> {
    spec.validate()?;
    let angles = gaussian_nodes(spec.n_components, spec.angular_sigma);
    let spectral = gaussian_nodes(spec.n_spectral, spec.spectral_sigma);
    let norm: f64 = angles
        .iter()
        .flat_map(|&(_, a)| spectral.iter().map(move |&(_, s)| (a * s) * (a * s)))
        .sum::<f64>()
        .sqrt();
    let center = spec.carrier.center();
    let mut out = Vec::with_capacity(angles.len() * spectral.len());
    for &(dtheta, wa) in &angles {
        let theta = spec.theta_i + dtheta;
        for &(rel, ws) in &spectral {
            let value = center * (1.0 + rel);
            let weight = wa * ws / norm;
            out.push(match spec.carrier {
                Carrier::Electromagnetic { .. } => {
                    PlaneWaveComponent::electromagnetic(theta, value, weight)
                }
                Carrier::KleinGordon { mass, .. } => {
                    PlaneWaveComponent::klein_gordon(theta, value, mass, weight)
                }
            });
        }
    }
    Ok(out)
}
