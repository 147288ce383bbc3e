//! Transformation from the left-handed medium to the Klein step.
//!
//! Each electromagnetic component with index n is paired with a Klein-Gordon
//! component whose transmitted-to-incident wavenumber ratio is |n|. For a
//! massless particle that fixes `V = E(1 − n)`. Going the other way, a single
//! constant V over a dispersive spectrum requires each frequency to carry
//! its own energy `E(ω) = V/(1 − n(ω))`, which undoes the medium's
//! dispersion.
//!
//! Only wavevector ratios are matched. Power coefficients agree only for
//! μ = 1; the reference medium has μ ≠ 1 and its T differs from the Klein T.

use crate::kg_scatter::{classify_regime, KleinStep, StepStrength};
use crate::media::{sample_medium, MediumDispersion, MediumSample};
use crate::units::{rest_energy, HBAR, SPEED_OF_LIGHT};
use crate::wavepacket::PlaneWaveComponent;
use crate::{Error, Result};

/// Target Klein configuration of a mapping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappingSpec {
    /// Constant step height V, joules.
    pub potential: f64,
    /// Particle mass, kilograms.
    pub mass: f64,
    /// Center energy E_c, joules.
    pub center_energy: f64,
}

impl MappingSpec {
    pub fn new(potential: f64, mass: f64, center_energy: f64) -> Result<Self> {
        let step = KleinStep::new(potential, mass, center_energy)?;
        if classify_regime(&step)? != StepStrength::Strong {
            return Err(Error::invalid(
                "potential",
                "must exceed E + mc² for negative refraction",
            ));
        }
        Ok(Self {
            potential,
            mass,
            center_energy,
        })
    }

    pub fn center_step(&self) -> KleinStep {
        KleinStep {
            potential: self.potential,
            mass: self.mass,
            energy: self.center_energy,
        }
    }
}

/// The step height whose Klein wavenumber ratio is |n|.
pub fn index_to_potential(n: f64, energy: f64, mass: f64) -> Result<f64> {
    if !(n.is_finite() && n < 0.0) {
        return Err(Error::domain(format!(
            "only negative indices map to a strong step, got n = {n}"
        )));
    }
    let mc2 = rest_energy(mass);
    if !(energy > mc2) {
        return Err(Error::domain("energy must exceed the rest energy"));
    }
    if mass == 0.0 {
        return Ok(energy * (1.0 - n));
    }
    let p_sq = (energy - mc2) * (energy + mc2);
    Ok(energy + (n * n * p_sq + mc2 * mc2).sqrt())
}

/// Inverse of [`index_to_potential`]: `n = −√((V−E)² − m²c⁴)/√(E² − m²c⁴)`.
pub fn potential_to_index(potential: f64, energy: f64, mass: f64) -> Result<f64> {
    let step = KleinStep::new(potential, mass, energy).map_err(|e| Error::domain(e.to_string()))?;
    match classify_regime(&step) {
        Ok(StepStrength::Strong) => {}
        _ => {
            return Err(Error::domain(
                "index mapping needs a strong step, V > E + mc²",
            ))
        }
    }
    let mc2 = rest_energy(mass);
    if mass == 0.0 {
        return Ok(-(potential - energy) / energy);
    }
    let gap = potential - energy;
    Ok(-((gap - mc2) * (gap + mc2)).sqrt() / ((energy - mc2) * (energy + mc2)).sqrt())
}

/// Energy a massless particle needs at frequency ω so that the constant step
/// `potential` reproduces the medium index there: `E(ω) = V/(1 − n(ω))`.
pub fn counter_dispersive_energy(
    model: &MediumDispersion,
    potential: f64,
    omega: f64,
) -> Result<f64> {
    let sample = sample_medium(model, omega)?;
    if sample.n >= 0.0 {
        return Err(Error::domain(format!(
            "ω = {omega} rad/s lies outside the negative-index band (n = {})",
            sample.n
        )));
    }
    if !(potential.is_finite() && potential > 0.0) {
        return Err(Error::invalid("potential", "must be positive"));
    }
    Ok(potential / (1.0 - sample.n))
}

/// The μ = 1 medium with the same τ and ρ as the Klein step at equal angle.
///
/// Its group index makes the electromagnetic group velocity equal to the
/// Klein one, `|V_g| = c·|Q|ħc/(V − E)`.
pub fn equivalent_medium(step: &KleinStep) -> Result<MediumSample> {
    let n = potential_to_index(step.potential, step.energy, step.mass)?;
    let gap = step.potential - step.energy;
    let mc2 = step.rest_energy();
    let n_g = gap / ((gap - mc2) * (gap + mc2)).sqrt();
    Ok(MediumSample {
        omega: step.energy / HBAR,
        epsilon: n * n,
        mu: 1.0,
        n,
        n_g,
    })
}

/// Klein-Gordon counterparts of electromagnetic components for a constant
/// step `potential`: same angle and weight, massless, with the
/// counter-dispersive energy at each component frequency.
pub fn map_components(
    components: &[PlaneWaveComponent],
    model: &MediumDispersion,
    potential: f64,
) -> Result<Vec<PlaneWaveComponent>> {
    components
        .iter()
        .map(|c| {
            let energy = counter_dispersive_energy(model, potential, c.omega)?;
            Ok(PlaneWaveComponent::klein_gordon(
                c.theta, energy, 0.0, c.weight,
            ))
        })
        .collect()
}

/// Free-space wavelength of a massless particle of energy `energy`, metres.
pub fn massless_wavelength(energy: f64) -> f64 {
    2.0 * std::f64::consts::PI * HBAR * SPEED_OF_LIGHT / energy
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::em_scatter::{em_group_velocity, refract_em, EmIncident};
    use crate::interface::amplitude_coefficients;
    use crate::kg_scatter::{kg_group_velocity, refract_kg, KgIncident};
    use crate::media::default_center_omega;
    use crate::units::{joules_to_uev, mass_from_rest_energy, uev_to_joules};

    #[test]
    fn reference_index_maps_to_reference_potential() {
        let v = index_to_potential(-2.412, uev_to_joules(20.7), 0.0).unwrap();
        assert!((joules_to_uev(v) - 70.63).abs() < 0.01);
    }

    #[test]
    fn symmetric_step() {
        let e = uev_to_joules(13.0);
        assert_eq!(index_to_potential(-1.0, e, 0.0).unwrap(), 2.0 * e);
        assert_eq!(potential_to_index(2.0 * e, e, 0.0).unwrap(), -1.0);
    }

    #[test]
    fn reference_potential_maps_back() {
        let n = potential_to_index(uev_to_joules(70.63), uev_to_joules(20.7), 0.0).unwrap();
        assert!((n - -2.4121).abs() < 1e-4);
        assert!((n - -2.412).abs() < 1e-3);
    }

    #[test]
    fn round_trip_with_and_without_mass() {
        let e = uev_to_joules(20.7);
        for rest_uev in [0.0, 1.0, 10.0, 20.0] {
            let m = mass_from_rest_energy(uev_to_joules(rest_uev));
            for n in [-0.3, -1.0, -2.412, -7.5] {
                let v = index_to_potential(n, e, m).unwrap();
                let back = potential_to_index(v, e, m).unwrap();
                assert!(
                    ((back - n) / n).abs() < 1e-12,
                    "m={rest_uev}, n={n}: {back}"
                );
            }
        }
    }

    #[test]
    fn domain_errors() {
        let e = uev_to_joules(20.7);
        assert!(index_to_potential(0.5, e, 0.0).is_err());
        assert!(index_to_potential(-1.0, 0.0, 0.0).is_err());
        assert!(potential_to_index(0.5 * e, e, 0.0).is_err());
        let model = MediumDispersion::fitted_default();
        let above_band = model.negative_index_band().1 * 3.0;
        assert!(counter_dispersive_energy(&model, uev_to_joules(70.63), above_band).is_err());
        assert!(MappingSpec::new(0.5 * e, 0.0, e).is_err());
        assert!(MappingSpec::new(4.0 * e, 0.0, e).is_ok());
    }

    #[test]
    fn counter_dispersive_energy_at_center() {
        let model = MediumDispersion::fitted_default();
        let e = counter_dispersive_energy(&model, uev_to_joules(70.63), default_center_omega())
            .unwrap();
        assert!((joules_to_uev(e) - 20.70).abs() < 5e-3);
    }

    #[test]
    fn counter_dispersive_energy_keeps_potential_constant() {
        let model = MediumDispersion::fitted_default();
        let v = uev_to_joules(70.63);
        let (lo, hi) = model.negative_index_band();
        for i in 1..500 {
            let w = lo + (hi - lo) * i as f64 / 500.0;
            let e = counter_dispersive_energy(&model, v, w).unwrap();
            let n = sample_medium(&model, w).unwrap().n;
            let back = index_to_potential(n, e, 0.0).unwrap();
            assert!(((back - v) / v).abs() < 1e-10);
        }
    }

    #[test]
    fn counter_dispersive_energy_near_unit_index() {
        // n = −1 halfway: E → V/2
        let model = MediumDispersion::fitted_default();
        let (lo, hi) = model.negative_index_band();
        let (mut a, mut b) = (lo * (1.0 + 1e-9), hi * (1.0 - 1e-9));
        // n runs from −∞ at the resonance up to 0 at the band edge
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if sample_medium(&model, mid).unwrap().n < -1.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let v = uev_to_joules(70.63);
        let e = counter_dispersive_energy(&model, v, 0.5 * (a + b)).unwrap();
        assert!((e / v - 0.5).abs() < 1e-9);
    }

    #[test]
    fn unit_mu_coefficients_are_bitwise_equal() {
        let step = KleinStep::new(uev_to_joules(70.63), 0.0, uev_to_joules(20.7)).unwrap();
        let inc = KgIncident::new(&step, PI / 6.0).unwrap();
        let kg = refract_kg(&step, &inc).unwrap();
        // EM formula with a = μK_z at μ = 1 on the same (K_z, Q_z)
        let (tau, rho) = amplitude_coefficients(1.0 * inc.k.z, kg.q.z).unwrap();
        assert_eq!(tau, kg.tau);
        assert_eq!(rho, kg.rho);
    }

    #[test]
    fn mapped_pairs_agree_through_both_pipelines() {
        for rest_uev in [0.0, 4.0] {
            let m = mass_from_rest_energy(uev_to_joules(rest_uev));
            let step = KleinStep::new(uev_to_joules(70.63), m, uev_to_joules(20.7)).unwrap();
            let med = equivalent_medium(&step).unwrap();
            for theta in [0.0, 0.3, PI / 6.0, 1.2] {
                let kg = refract_kg(&step, &KgIncident::new(&step, theta).unwrap()).unwrap();
                let em = refract_em(&EmIncident::new(med.omega, theta).unwrap(), &med).unwrap();
                assert!((kg.tau - em.tau).norm() < 1e-12);
                assert!((kg.rho - em.rho).norm() < 1e-12);
                assert!((kg.transmittance - em.transmittance).abs() < 1e-12);
                assert!((kg.reflectance - em.reflectance).abs() < 1e-12);
                let (a, b) = (
                    kg.refraction_angle().unwrap(),
                    em.refraction_angle().unwrap(),
                );
                assert!((a - b).abs() < 1e-12);
                if rest_uev == 0.0 {
                    let vk = kg_group_velocity(&step, kg.q.real().unwrap()).unwrap();
                    let ve = em_group_velocity(&em, &med).unwrap();
                    assert!((vk - ve).norm() / SPEED_OF_LIGHT < 1e-12);
                }
            }
        }
    }

    #[test]
    fn reference_medium_power_coefficients_differ_by_mu() {
        let omega = default_center_omega();
        let lhm = MediumSample::nondispersive(omega, -2.412, -1.222).unwrap();
        let unit_mu = MediumSample::nondispersive(omega, -2.412, 1.0);
        assert!(unit_mu.is_err(), "μ must share the sign of n");
        let inc = EmIncident::new(omega, PI / 6.0).unwrap();
        let em = refract_em(&inc, &lhm).unwrap();
        let v = index_to_potential(-2.412, uev_to_joules(20.7), 0.0).unwrap();
        let step = KleinStep::new(v, 0.0, uev_to_joules(20.7)).unwrap();
        let kg = refract_kg(&step, &KgIncident::new(&step, PI / 6.0).unwrap()).unwrap();
        // same Q_z/K_z, different a: μK_z versus K_z
        let k0 = omega / SPEED_OF_LIGHT;
        assert!((em.q.z.re / k0 - kg.q.z.re / step.incident_wavenumber()).abs() < 1e-12);
        let (tau_mu, _) = amplitude_coefficients(lhm.mu * inc.k.z, em.q.z).unwrap();
        assert_eq!(tau_mu, em.tau);
        assert!((em.transmittance - 0.855).abs() < 1e-3);
        assert!((kg.transmittance - -3.66).abs() < 1e-2);
    }

    #[test]
    fn mapped_components_share_angles() {
        let model = MediumDispersion::fitted_default();
        let omega = default_center_omega();
        let em = vec![
            PlaneWaveComponent::electromagnetic(0.4, omega, 0.6),
            PlaneWaveComponent::electromagnetic(0.5, omega * 1.01, 0.8),
        ];
        let v = uev_to_joules(70.63);
        let kg = map_components(&em, &model, v).unwrap();
        for (a, b) in em.iter().zip(&kg) {
            assert_eq!(a.theta, b.theta);
            assert_eq!(a.weight, b.weight);
            let n = sample_medium(&model, a.omega).unwrap().n;
            let e = b.omega * HBAR;
            assert!(((potential_to_index(v, e, 0.0).unwrap() - n) / n).abs() < 1e-10);
        }
    }

    #[test]
    fn wavelength_of_reference_energy() {
        let lambda = massless_wavelength(uev_to_joules(20.7));
        assert!((lambda - 0.0599).abs() < 1e-3);
    }
}
