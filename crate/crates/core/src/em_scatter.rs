//! Plane-wave refraction at the vacuum / medium interface (TE, E along y).
//!
//! The incident side z < 0 is vacuum, the medium fills z > 0. The
//! tangential wavenumber is copied to the reflected and transmitted waves;
//! the transmitted normal wavenumber takes the sign of the index, so in a
//! left-handed medium the phase runs back towards the interface while the
//! group velocity points away from it.

use num_complex::Complex64;

use crate::interface::{amplitude_coefficients, flux_coefficients, TransmittedWaveVector};
use crate::media::MediumSample;
use crate::units::{Vec2, SPEED_OF_LIGHT};
use crate::{Error, Result};

const WAVENUMBER_TOLERANCE: f64 = 1e-12;

/// Handedness of the transmitted medium, the sign σ in front of Q_z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    RightHanded,
    LeftHanded,
}

impl Branch {
    pub fn of_index(n: f64) -> Self {
        if n < 0.0 {
            Branch::LeftHanded
        } else {
            Branch::RightHanded
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Branch::RightHanded => 1.0,
            Branch::LeftHanded => -1.0,
        }
    }
}

/// Incident vacuum plane wave of unit amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmIncident {
    pub omega: f64,
    pub k: Vec2,
    pub theta_i: f64,
}

impl EmIncident {
    pub fn new(omega: f64, theta_i: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid("omega", "must be positive"));
        }
        check_angle(theta_i)?;
        let k0 = omega / SPEED_OF_LIGHT;
        Ok(Self {
            omega,
            k: Vec2::new(k0 * theta_i.sin(), k0 * theta_i.cos()),
            theta_i,
        })
    }

    /// Accepts an explicit wavevector if it lies on the vacuum light cone.
    pub fn from_wavevector(omega: f64, k: Vec2) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid("omega", "must be positive"));
        }
        if !(k.z > 0.0) {
            return Err(Error::invalid(
                "k",
                "K_z must be positive (towards the interface)",
            ));
        }
        let k0 = omega / SPEED_OF_LIGHT;
        if ((k.norm() - k0) / k0).abs() > WAVENUMBER_TOLERANCE {
            return Err(Error::invalid("k", "|K| must equal ω/c"));
        }
        Ok(Self {
            omega,
            k,
            theta_i: k.angle_from_normal(),
        })
    }
}

pub(crate) fn check_angle(theta_i: f64) -> Result<()> {
    if theta_i.is_finite() && theta_i.abs() < std::f64::consts::FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::invalid("theta_i", "must satisfy |θ| < π/2"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmScatterResult {
    pub q: TransmittedWaveVector,
    pub k_reflect: Vec2,
    pub tau: Complex64,
    pub rho: Complex64,
    /// Power transmission T.
    pub transmittance: f64,
    /// Power reflection R.
    pub reflectance: f64,
    pub branch: Branch,
}

impl EmScatterResult {
    /// Refraction angle of the transmitted phase vector, radians from +z.
    pub fn refraction_angle(&self) -> Option<f64> {
        self.q.real().map(|q| q.angle_from_normal())
    }
}

pub fn refract_em(inc: &EmIncident, med: &MediumSample) -> Result<EmScatterResult> {
    if !med.n.is_finite() || !med.mu.is_finite() {
        return Err(Error::domain("medium constants must be finite and real"));
    }
    let branch = Branch::of_index(med.n);
    let k0 = inc.omega / SPEED_OF_LIGHT;
    let kx = inc.k.x;
    let qz_sq = med.n * med.n * k0 * k0 - kx * kx;
    let qz = if qz_sq > 0.0 {
        Complex64::new(branch.sign() * qz_sq.sqrt(), 0.0)
    } else {
        // decays into z > 0
        Complex64::new(0.0, (-qz_sq).sqrt())
    };
    let a = med.mu * inc.k.z;
    let (tau, rho) = amplitude_coefficients(a, qz)?;
    let (transmittance, reflectance) = flux_coefficients(a, qz, tau, rho);
    Ok(EmScatterResult {
        q: TransmittedWaveVector { x: kx, z: qz },
        k_reflect: Vec2::new(kx, -inc.k.z),
        tau,
        rho,
        transmittance,
        reflectance,
        branch,
    })
}

/// Group velocity `Q̂·σc/n_g` of the transmitted wave, m/s.
pub fn em_group_velocity(result: &EmScatterResult, med: &MediumSample) -> Result<Vec2> {
    let q = result
        .q
        .real()
        .ok_or_else(|| Error::domain("evanescent transmitted wave has no group velocity"))?;
    let dir = q
        .normalized()
        .ok_or_else(|| Error::domain("transmitted wavevector vanishes"))?;
    if !(med.n_g > 0.0) {
        return Err(Error::domain(format!(
            "group index {} is not positive",
            med.n_g
        )));
    }
    Ok(dir * (result.branch.sign() * SPEED_OF_LIGHT / med.n_g))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::media::{default_center_omega, sample_medium, Dispersion, MediumDispersion};

    fn reference_medium() -> MediumSample {
        MediumSample::nondispersive(default_center_omega(), -2.412, -1.222).unwrap()
    }

    #[test]
    fn reference_coefficients() {
        let inc = EmIncident::new(default_center_omega(), PI / 6.0).unwrap();
        let r = refract_em(&inc, &reference_medium()).unwrap();
        assert!(
            (r.transmittance - 0.855).abs() < 1e-3,
            "T = {}",
            r.transmittance
        );
        assert!(
            (r.reflectance - 0.145).abs() < 1e-3,
            "R = {}",
            r.reflectance
        );
    }

    #[test]
    fn reference_amplitudes_by_hand() {
        // K = 1: μK_z = −1.0583, Q_z = −√(2.412² − 0.25)
        let omega = default_center_omega();
        let k0 = omega / SPEED_OF_LIGHT;
        let inc = EmIncident::new(omega, PI / 6.0).unwrap();
        let r = refract_em(&inc, &reference_medium()).unwrap();
        assert!((r.q.z.re / k0 - -2.3597).abs() < 1e-3);
        assert!((r.tau.re - 0.6192).abs() < 1e-3 && r.tau.im == 0.0);
        assert!((r.rho.re - -0.3807).abs() < 1e-3 && r.rho.im == 0.0);
        assert_eq!(r.branch, Branch::LeftHanded);
    }

    #[test]
    fn impedance_matched_normal_incidence() {
        let omega = default_center_omega();
        let inc = EmIncident::new(omega, 0.0).unwrap();
        let med = MediumSample::nondispersive(omega, -1.0, -1.0).unwrap();
        let r = refract_em(&inc, &med).unwrap();
        assert_eq!(r.tau, Complex64::new(1.0, 0.0));
        assert_eq!(r.rho, Complex64::new(0.0, 0.0));
        assert_eq!((r.transmittance, r.reflectance), (1.0, 0.0));
    }

    #[test]
    fn phase_matching_is_exact() {
        let inc = EmIncident::new(default_center_omega(), 0.4).unwrap();
        let r = refract_em(&inc, &reference_medium()).unwrap();
        assert_eq!(r.q.x.to_bits(), inc.k.x.to_bits());
        assert_eq!(r.k_reflect, Vec2::new(inc.k.x, -inc.k.z));
    }

    #[test]
    fn evanescent_branch() {
        let omega = default_center_omega();
        let inc = EmIncident::new(omega, 1.2).unwrap();
        let med = MediumSample::nondispersive(omega, -0.5, -0.5).unwrap();
        let r = refract_em(&inc, &med).unwrap();
        assert!(r.q.z.re == 0.0 && r.q.z.im > 0.0);
        assert_eq!((r.transmittance, r.reflectance), (0.0, 1.0));
        assert!(em_group_velocity(&r, &med).is_err());
    }

    #[test]
    fn vacuum_group_velocity_is_c() {
        let omega = default_center_omega();
        let inc = EmIncident::new(omega, 0.0).unwrap();
        let med = sample_medium(&crate::media::Nondispersive::VACUUM, omega).unwrap();
        let r = refract_em(&inc, &med).unwrap();
        let vg = em_group_velocity(&r, &med).unwrap();
        assert_eq!(vg, Vec2::new(0.0, SPEED_OF_LIGHT));
    }

    #[test]
    fn left_handed_group_velocity_is_antiparallel() {
        let model = MediumDispersion::fitted_default();
        let omega = default_center_omega();
        let med = sample_medium(&model, omega).unwrap();
        for theta in [0.0, 0.2, PI / 6.0, 1.0] {
            let inc = EmIncident::new(omega, theta).unwrap();
            let r = refract_em(&inc, &med).unwrap();
            let q = r.q.real().unwrap();
            let vg = em_group_velocity(&r, &med).unwrap();
            assert!(vg.dot(q) < 0.0);
            assert!(vg.z > 0.0);
            assert!(((vg.norm() - SPEED_OF_LIGHT / med.n_g) / vg.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn group_speed_matches_dispersion_slope() {
        // |Q|(ω) = |n(ω)|ω/c along the transmitted dispersion curve
        let model = MediumDispersion::fitted_default();
        let omega = default_center_omega();
        let q_of = |w: f64| {
            let n = -(model.permittivity(w) * model.permeability(w)).sqrt();
            n.abs() * w / SPEED_OF_LIGHT
        };
        let h = 1e-6 * omega;
        let slope = (2.0 * h) / (q_of(omega + h) - q_of(omega - h));
        let med = sample_medium(&model, omega).unwrap();
        let inc = EmIncident::new(omega, 0.0).unwrap();
        let vg = em_group_velocity(&refract_em(&inc, &med).unwrap(), &med).unwrap();
        assert!(((vg.norm() - slope.abs()) / vg.norm()).abs() < 1e-4);
    }

    #[test]
    fn incident_validation() {
        let omega = default_center_omega();
        assert!(EmIncident::new(omega, PI / 2.0).is_err());
        assert!(EmIncident::new(-1.0, 0.0).is_err());
        let k0 = omega / SPEED_OF_LIGHT;
        assert!(EmIncident::from_wavevector(omega, Vec2::new(0.0, k0)).is_ok());
        assert!(EmIncident::from_wavevector(omega, Vec2::new(0.0, 1.01 * k0)).is_err());
        assert!(EmIncident::from_wavevector(omega, Vec2::new(0.0, -k0)).is_err());
    }
}
