//! Angular-spectrum beams and their scattered fields.
//!
//! A beam is a finite sum of plane waves with Gaussian weights in
//! propagation angle (and optionally in frequency). Every component is
//! scattered independently; the total field is the weighted superposition of
//! incident plus reflected waves for z < 0 and transmitted waves for z ≥ 0.

mod centroid;
mod field;
mod spectrum;

pub use centroid::{centroid_angle, mean_x, HalfPlane};
pub use field::{
    assemble_field, assemble_parts, evaluate, interface_traces, FieldGrid, GridSpec, Side, WaveSet,
    MIN_POINTS_PER_WAVELENGTH,
};
pub use spectrum::{build_spectrum, BeamSpec, Carrier, TRUNCATION_SIGMAS};

use num_complex::Complex64;

use crate::em_scatter::{refract_em, EmIncident, EmScatterResult};
use crate::interface::TransmittedWaveVector;
use crate::kg_scatter::{refract_kg, KgIncident, KgScatterResult, KleinStep};
use crate::media::{sample_medium, Dispersion};
use crate::units::{rest_energy, Vec2, HBAR, SPEED_OF_LIGHT};
use crate::Result;

/// What kind of wave a component is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveKind {
    Electromagnetic,
    /// Spin-0 particle of the given mass (kg).
    KleinGordon {
        mass: f64,
    },
}

/// One plane-wave component of a beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveComponent {
    /// Propagation angle from +z, radians.
    pub theta: f64,
    /// Angular frequency of the time factor e^{−iωt}; E/ħ for particles.
    pub omega: f64,
    /// Incident wavevector, rad/m.
    pub k: Vec2,
    /// Real amplitude; a beam's weights satisfy Σw² = 1.
    pub weight: f64,
    pub kind: WaveKind,
}

impl PlaneWaveComponent {
    pub fn electromagnetic(theta: f64, omega: f64, weight: f64) -> Self {
        let k0 = omega / SPEED_OF_LIGHT;
        Self {
            theta,
            omega,
            k: Vec2::new(k0 * theta.sin(), k0 * theta.cos()),
            weight,
            kind: WaveKind::Electromagnetic,
        }
    }

    pub fn klein_gordon(theta: f64, energy: f64, mass: f64, weight: f64) -> Self {
        let mc2 = rest_energy(mass);
        let k0 = ((energy - mc2) * (energy + mc2)).sqrt() / (HBAR * SPEED_OF_LIGHT);
        Self {
            theta,
            omega: energy / HBAR,
            k: Vec2::new(k0 * theta.sin(), k0 * theta.cos()),
            weight,
            kind: WaveKind::KleinGordon { mass },
        }
    }

    /// ħω, joules.
    pub fn energy(&self) -> f64 {
        HBAR * self.omega
    }
}

/// Scattering outcome of one component in either picture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScatterResult {
    Em(EmScatterResult),
    Kg(KgScatterResult),
}

impl ScatterResult {
    pub fn q(&self) -> TransmittedWaveVector {
        match self {
            ScatterResult::Em(r) => r.q,
            ScatterResult::Kg(r) => r.q,
        }
    }

    pub fn tau(&self) -> Complex64 {
        match self {
            ScatterResult::Em(r) => r.tau,
            ScatterResult::Kg(r) => r.tau,
        }
    }

    pub fn rho(&self) -> Complex64 {
        match self {
            ScatterResult::Em(r) => r.rho,
            ScatterResult::Kg(r) => r.rho,
        }
    }

    pub fn transmittance(&self) -> f64 {
        match self {
            ScatterResult::Em(r) => r.transmittance,
            ScatterResult::Kg(r) => r.transmittance,
        }
    }

    pub fn reflectance(&self) -> f64 {
        match self {
            ScatterResult::Em(r) => r.reflectance,
            ScatterResult::Kg(r) => r.reflectance,
        }
    }
}

impl From<EmScatterResult> for ScatterResult {
    fn from(r: EmScatterResult) -> Self {
        ScatterResult::Em(r)
    }
}

impl From<KgScatterResult> for ScatterResult {
    fn from(r: KgScatterResult) -> Self {
        ScatterResult::Kg(r)
    }
}

/// Scatters every component off the medium, sampling it at each component frequency.
pub fn scatter_em<D: Dispersion + ?Sized>(
    components: &[PlaneWaveComponent],
    model: &D,
) -> Result<Vec<ScatterResult>> {
    components
        .iter()
        .map(|c| {
            let med = sample_medium(model, c.omega)?;
            let inc = EmIncident::from_wavevector(c.omega, c.k)?;
            Ok(refract_em(&inc, &med)?.into())
        })
        .collect()
}

/// Scatters every component off a step of height `potential` (J).
pub fn scatter_kg(components: &[PlaneWaveComponent], potential: f64) -> Result<Vec<ScatterResult>> {
    components
        .iter()
        .map(|c| {
            let mass = match c.kind {
                WaveKind::KleinGordon { mass } => mass,
                WaveKind::Electromagnetic => 0.0,
            };
            let step = KleinStep::new(potential, mass, c.energy())?;
            let inc = KgIncident::from_wavevector(&step, c.k)?;
            Ok(refract_kg(&step, &inc)?.into())
        })
        .collect()
}
