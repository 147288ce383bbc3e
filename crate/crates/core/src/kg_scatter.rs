//! Spin-0 scattering from a two-dimensional Klein step.
//!
//! The potential is 0 for z < 0 and V for z > 0. On the incident side
//! `E² = c²ħ²K² + m²c⁴`; behind the step `c²ħ²Q² = (E − V)² − m²c⁴`.
//! Three regimes follow from the position of V relative to E ± mc²:
//!
//! - weak, `V < E − mc²`: propagating, Q parallel to its group velocity;
//! - intermediate, `E − mc² < V < E + mc²`: Q imaginary, total reflection;
//! - strong, `V > E + mc²`: Q real again but `E − V < 0`, so the group
//!   velocity `c²ħQ/(E − V)` is antiparallel to Q. Causality then requires
//!   `Q_z < 0`, giving negative refraction, `T < 0` and `R > 1`.
//!
//! In two dimensions the strong regime still has an evanescent window
//! `0 < ΔV < ΔV*` set by the tangential wavenumber.

use num_complex::Complex64;

use crate::em_scatter::check_angle;
use crate::interface::{amplitude_coefficients, flux_coefficients, TransmittedWaveVector};
use crate::units::{rest_energy, Vec2, HBAR, SPEED_OF_LIGHT};
use crate::{Error, Result};

const DISPERSION_TOLERANCE: f64 = 1e-12;

fn hbar_c() -> f64 {
    HBAR * SPEED_OF_LIGHT
}

/// Step height, particle mass and incident energy, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinStep {
    /// V, joules.
    pub potential: f64,
    /// m, kilograms; zero is allowed.
    pub mass: f64,
    /// E, joules; must exceed mc².
    pub energy: f64,
}

impl KleinStep {
    pub fn new(potential: f64, mass: f64, energy: f64) -> Result<Self> {
        if !(potential.is_finite() && potential >= 0.0) {
            return Err(Error::invalid("potential", "must be non-negative"));
        }
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(Error::invalid("mass", "must be non-negative"));
        }
        if !(energy.is_finite() && energy > rest_energy(mass)) {
            return Err(Error::invalid(
                "energy",
                "must exceed the rest energy for a propagating incident particle",
            ));
        }
        Ok(Self {
            potential,
            mass,
            energy,
        })
    }

    pub fn rest_energy(&self) -> f64 {
        rest_energy(self.mass)
    }

    /// |K| on the incident side, rad/m.
    pub fn incident_wavenumber(&self) -> f64 {
        let mc2 = self.rest_energy();
        ((self.energy - mc2) * (self.energy + mc2)).sqrt() / hbar_c()
    }
}

/// Classification of the step from V, E and m alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepStrength {
    Weak,
    Intermediate,
    Strong,
}

/// Regime of one scattered component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `V < E − mc²`. The transmitted wave can still be evanescent beyond
    /// the critical angle.
    Weak,
    Intermediate,
    StrongPropagating,
    StrongEvanescent,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Weak => "weak",
            Regime::Intermediate => "intermediate",
            Regime::StrongPropagating => "strong-propagating",
            Regime::StrongEvanescent => "strong-evanescent",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_regime(step: &KleinStep) -> Result<StepStrength> {
    let mc2 = step.rest_energy();
    let lower = step.energy - mc2;
    let upper = step.energy + mc2;
    let v = step.potential;
    if v == lower || v == upper {
        Err(Error::RegimeBoundary { potential: v })
    } else if v < lower {
        Ok(StepStrength::Weak)
    } else if v < upper {
        Ok(StepStrength::Intermediate)
    } else {
        Ok(StepStrength::Strong)
    }
}

/// ΔV = V − E − mc², joules.
pub fn excess_potential(step: &KleinStep) -> f64 {
    step.potential - step.energy - step.rest_energy()
}

/// ΔV* = −mc² + √(c²ħ²K_x² + m²c⁴): the excess potential below which a
/// strong step still damps the transmitted wave.
pub fn evanescence_threshold(mass: f64, k_x: f64) -> f64 {
    let mc2 = rest_energy(mass);
    let p = hbar_c() * k_x;
    // −a + √(p² + a²) without cancellation
    if p == 0.0 {
        0.0
    } else {
        p * p / (mc2 + p.hypot(mc2))
    }
}

/// c²ħ²Q_z² in J² written with the step height: `c²ħ²K_z² − 2EV + V²`.
pub fn qz_squared_from_potential(step: &KleinStep, k_z: f64) -> f64 {
    let pz = hbar_c() * k_z;
    let (e, v) = (step.energy, step.potential);
    pz * pz - 2.0 * e * v + v * v
}

/// c²ħ²Q_z² in J² written with the excess potential: `2mc²ΔV + ΔV² − c²ħ²K_x²`.
pub fn qz_squared_from_excess(step: &KleinStep, k_x: f64) -> f64 {
    let dv = excess_potential(step);
    let px = hbar_c() * k_x;
    2.0 * step.rest_energy() * dv + dv * dv - px * px
}

/// Incident positive-energy plane wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgIncident {
    pub k: Vec2,
    pub theta_i: f64,
}

impl KgIncident {
    pub fn new(step: &KleinStep, theta_i: f64) -> Result<Self> {
        check_angle(theta_i)?;
        let k0 = step.incident_wavenumber();
        Ok(Self {
            k: Vec2::new(k0 * theta_i.sin(), k0 * theta_i.cos()),
            theta_i,
        })
    }

    /// Accepts an explicit wavevector on the incident mass shell.
    pub fn from_wavevector(step: &KleinStep, k: Vec2) -> Result<Self> {
        if !(k.z > 0.0) {
            return Err(Error::invalid(
                "k",
                "K_z must be positive (towards the step)",
            ));
        }
        let k0 = step.incident_wavenumber();
        let lhs = k.dot(k);
        if ((lhs - k0 * k0) / (k0 * k0)).abs() > DISPERSION_TOLERANCE {
            return Err(Error::invalid("k", "c²ħ²K² must equal E² − m²c⁴"));
        }
        Ok(Self {
            k,
            theta_i: k.angle_from_normal(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgScatterResult {
    pub q: TransmittedWaveVector,
    pub k_reflect: Vec2,
    pub tau: Complex64,
    pub rho: Complex64,
    /// Probability transmission T; negative in the strong-propagating regime.
    pub transmittance: f64,
    /// Probability reflection R; above one in the strong-propagating regime.
    pub reflectance: f64,
    pub regime: Regime,
}

impl KgScatterResult {
    pub fn refraction_angle(&self) -> Option<f64> {
        self.q.real().map(|q| q.angle_from_normal())
    }
}

pub fn refract_kg(step: &KleinStep, inc: &KgIncident) -> Result<KgScatterResult> {
    let strength = classify_regime(step)?;
    let scale = hbar_c();
    // the excess form keeps Q_z² > 0 for K_x = 0 on any strong step
    let qz_sq = qz_squared_from_excess(step, inc.k.x) / (scale * scale);
    let propagating = qz_sq > 0.0;
    let (qz, regime) = match (strength, propagating) {
        (StepStrength::Weak, true) => (Complex64::new(qz_sq.sqrt(), 0.0), Regime::Weak),
        // group velocity is antiparallel to Q here, so the causal wave has Q_z < 0
        (StepStrength::Strong, true) => (
            Complex64::new(-qz_sq.sqrt(), 0.0),
            Regime::StrongPropagating,
        ),
        (strength, _) => {
            let regime = match strength {
                StepStrength::Weak => Regime::Weak,
                StepStrength::Intermediate => Regime::Intermediate,
                StepStrength::Strong => Regime::StrongEvanescent,
            };
            (Complex64::new(0.0, (-qz_sq).max(0.0).sqrt()), regime)
        }
    };
    let (tau, rho) = amplitude_coefficients(inc.k.z, qz)?;
    let (transmittance, reflectance) = flux_coefficients(inc.k.z, qz, tau, rho);
    Ok(KgScatterResult {
        q: TransmittedWaveVector { x: inc.k.x, z: qz },
        k_reflect: Vec2::new(inc.k.x, -inc.k.z),
        tau,
        rho,
        transmittance,
        reflectance,
        regime,
    })
}

/// Transmitted-side group velocity ∇_Q E / ħ = c²ħQ/(E − V), m/s.
pub fn kg_group_velocity(step: &KleinStep, q: Vec2) -> Result<Vec2> {
    let gap = step.energy - step.potential;
    if gap == 0.0 {
        return Err(Error::SingularGroupVelocity);
    }
    Ok(q * (SPEED_OF_LIGHT * SPEED_OF_LIGHT * HBAR / gap))
}

/// A complex field value with its spatial gradient (∂x, ∂z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub value: Complex64,
    pub gradient: [Complex64; 2],
}

/// Probability current `(1/2im)(Ψ*∇Ψ − Ψ∇Ψ*) = Im(Ψ*∇Ψ)/m`.
///
/// For `m > 0` the SI prefactor ħ/m is applied. For `m = 0` the prefactor is
/// dropped and `Im(Ψ*∇Ψ)` is returned; only ratios of currents are
/// meaningful then, which is all T and R need.
pub fn probability_current(sample: &FieldSample, mass: f64) -> Result<Vec2> {
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(Error::invalid("mass", "must be non-negative"));
    }
    let conj = sample.value.conj();
    let j = Vec2::new(
        (conj * sample.gradient[0]).im,
        (conj * sample.gradient[1]).im,
    );
    Ok(if mass > 0.0 { j * (HBAR / mass) } else { j })
}
