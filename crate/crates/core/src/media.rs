//! Effective-medium dispersion of the left-handed half-space.
//!
//! Permittivity follows a Drude plasma form, `ε(ω) = 1 − ω_p²/ω²`, and
//! permeability the split-ring Lorentz form, `μ(ω) = 1 − Fω²/(ω² − ω₀²)`.
//! Between the magnetic resonance ω₀ and the magnetic plasma edge
//! ω₀/√(1−F) (and below ω_p) both are negative and the index is negative.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Center frequency of the reference scenario, Hz.
pub const DEFAULT_CENTER_FREQUENCY_HZ: f64 = 5e9;
/// Permittivity the default model reproduces at the center frequency.
pub const DEFAULT_EPSILON: f64 = -4.76;
/// Permeability the default model reproduces at the center frequency.
pub const DEFAULT_MU: f64 = -1.222;
/// Split-ring fill factor of the default model.
pub const DEFAULT_FILL_FACTOR: f64 = 0.5;

/// Angular center frequency of the reference scenario, rad/s.
pub fn default_center_omega() -> f64 {
    2.0 * PI * DEFAULT_CENTER_FREQUENCY_HZ
}

/// A lossless, real-valued dispersion relation `ε(ω)`, `μ(ω)`.
pub trait Dispersion {
    fn permittivity(&self, omega: f64) -> f64;
    fn permeability(&self, omega: f64) -> f64;
    /// dε/dω
    fn permittivity_slope(&self, omega: f64) -> f64;
    /// dμ/dω
    fn permeability_slope(&self, omega: f64) -> f64;

    /// Rejects frequencies where the real-valued closed forms do not apply.
    fn validate(&self, omega: f64) -> Result<()> {
        check_omega(omega)
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega.is_finite() && omega > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "angular frequency must be positive and finite, got {omega}"
        )))
    }
}

/// Drude electric response plus split-ring Lorentz magnetic response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumDispersion {
    /// Drude pole of ε, rad/s.
    pub plasma_frequency: f64,
    /// Lorentz pole of μ, rad/s.
    pub magnetic_resonance_frequency: f64,
    /// Dimensionless F in (0, 1).
    pub magnetic_fill_factor: f64,
    /// Collision rate of the Drude term, rad/s.
    pub electric_loss: f64,
    /// Damping rate of the Lorentz term, rad/s.
    pub magnetic_loss: f64,
}

impl MediumDispersion {
    pub fn new(
        plasma_frequency: f64,
        magnetic_resonance_frequency: f64,
        magnetic_fill_factor: f64,
    ) -> Result<Self> {
        if !(plasma_frequency.is_finite() && plasma_frequency > 0.0) {
            return Err(Error::invalid("plasma_frequency", "must be positive"));
        }
        if !(magnetic_resonance_frequency.is_finite() && magnetic_resonance_frequency > 0.0) {
            return Err(Error::invalid(
                "magnetic_resonance_frequency",
                "must be positive",
            ));
        }
        if !(magnetic_fill_factor > 0.0 && magnetic_fill_factor < 1.0) {
            return Err(Error::invalid(
                "magnetic_fill_factor",
                "must lie strictly between 0 and 1",
            ));
        }
        Ok(Self {
            plasma_frequency,
            magnetic_resonance_frequency,
            magnetic_fill_factor,
            electric_loss: 0.0,
            magnetic_loss: 0.0,
        })
    }

    pub fn with_losses(mut self, electric: f64, magnetic: f64) -> Result<Self> {
        if !(electric.is_finite() && electric >= 0.0) {
            return Err(Error::invalid("electric_loss", "must be non-negative"));
        }
        if !(magnetic.is_finite() && magnetic >= 0.0) {
            return Err(Error::invalid("magnetic_loss", "must be non-negative"));
        }
        self.electric_loss = electric;
        self.magnetic_loss = magnetic;
        Ok(self)
    }

    /// Pins `ε(ω_c) = epsilon` through ω_p and `μ(ω_c) = mu` through ω₀ at fixed F.
    pub fn fit(center_omega: f64, epsilon: f64, mu: f64, fill_factor: f64) -> Result<Self> {
        check_omega(center_omega)?;
        if !(epsilon < 1.0) {
            return Err(Error::invalid(
                "epsilon",
                "a Drude form only reaches values below 1",
            ));
        }
        if !(fill_factor > 0.0 && fill_factor < 1.0) {
            return Err(Error::invalid(
                "magnetic_fill_factor",
                "must lie strictly between 0 and 1",
            ));
        }
        // μ(ω_c) = 1 − F/(1 − r²) with r = ω₀/ω_c.
        let r_sq = 1.0 - fill_factor / (1.0 - mu);
        if !(mu < 1.0 && r_sq > 0.0) {
            return Err(Error::invalid(
                "mu",
                format!(
                    "no resonance below the center frequency gives μ = {mu} with F = {fill_factor}"
                ),
            ));
        }
        Self::new(
            center_omega * (1.0 - epsilon).sqrt(),
            center_omega * r_sq.sqrt(),
            fill_factor,
        )
    }

    /// The reference model: 5 GHz center, ε = −4.76, μ = −1.222, F = 0.5.
    pub fn fitted_default() -> Self {
        Self::fit(
            default_center_omega(),
            DEFAULT_EPSILON,
            DEFAULT_MU,
            DEFAULT_FILL_FACTOR,
        )
        .expect("default fit is valid")
    }

    pub fn is_lossless(&self) -> bool {
        self.electric_loss == 0.0 && self.magnetic_loss == 0.0
    }

    /// Open interval of ω where ε < 0 and μ < 0.
    ///
    /// Empty (lower ≥ upper) when the plasma frequency sits below the resonance.
    pub fn negative_index_band(&self) -> (f64, f64) {
        let magnetic_edge =
            self.magnetic_resonance_frequency / (1.0 - self.magnetic_fill_factor).sqrt();
        (
            self.magnetic_resonance_frequency,
            magnetic_edge.min(self.plasma_frequency),
        )
    }

    /// Complex ε and μ with the damping terms, time convention e^{−iωt}.
    pub fn response(&self, omega: f64) -> (Complex64, Complex64) {
        let w = Complex64::new(omega, 0.0);
        let i = Complex64::i();
        let wp2 = self.plasma_frequency * self.plasma_frequency;
        let w02 = self.magnetic_resonance_frequency * self.magnetic_resonance_frequency;
        let eps = 1.0 - wp2 / (w * w + i * self.electric_loss * w);
        let mu =
            1.0 - self.magnetic_fill_factor * w * w / (w * w - w02 + i * self.magnetic_loss * w);
        (eps, mu)
    }
}

impl Dispersion for MediumDispersion {
    fn permittivity(&self, omega: f64) -> f64 {
        let r = self.plasma_frequency / omega;
        1.0 - r * r
    }

    fn permeability(&self, omega: f64) -> f64 {
        let w2 = omega * omega;
        let w02 = self.magnetic_resonance_frequency * self.magnetic_resonance_frequency;
        1.0 - self.magnetic_fill_factor * w2 / (w2 - w02)
    }

    fn permittivity_slope(&self, omega: f64) -> f64 {
        2.0 * self.plasma_frequency * self.plasma_frequency / (omega * omega * omega)
    }

    fn permeability_slope(&self, omega: f64) -> f64 {
        let w02 = self.magnetic_resonance_frequency * self.magnetic_resonance_frequency;
        let d = omega * omega - w02;
        2.0 * self.magnetic_fill_factor * omega * w02 / (d * d)
    }

    fn validate(&self, omega: f64) -> Result<()> {
        check_omega(omega)?;
        if !self.is_lossless() {
            return Err(Error::LossyModel);
        }
        if omega == self.magnetic_resonance_frequency {
            return Err(Error::ResonanceSingularity { omega });
        }
        Ok(())
    }
}

/// Frequency-independent ε and μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nondispersive {
    pub epsilon: f64,
    pub mu: f64,
}

impl Nondispersive {
    pub const VACUUM: Nondispersive = Nondispersive {
        epsilon: 1.0,
        mu: 1.0,
    };
}

impl Dispersion for Nondispersive {
    fn permittivity(&self, _omega: f64) -> f64 {
        self.epsilon
    }
    fn permeability(&self, _omega: f64) -> f64 {
        self.mu
    }
    fn permittivity_slope(&self, _omega: f64) -> f64 {
        0.0
    }
    fn permeability_slope(&self, _omega: f64) -> f64 {
        0.0
    }
}

/// Medium constants at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumSample {
    pub omega: f64,
    pub epsilon: f64,
    pub mu: f64,
    /// Signed index; negative exactly when ε and μ are both negative.
    pub n: f64,
    pub n_g: f64,
}

impl MediumSample {
    /// A sample for given `(n, μ)` with ε = n²/μ and no dispersion (n_g = n).
    pub fn nondispersive(omega: f64, n: f64, mu: f64) -> Result<Self> {
        check_omega(omega)?;
        if !(n.is_finite() && n != 0.0) {
            return Err(Error::invalid("n", "must be finite and nonzero"));
        }
        if !(mu.is_finite() && mu != 0.0 && mu.signum() == n.signum()) {
            return Err(Error::invalid(
                "mu",
                "must be nonzero with the same sign as n in a lossless medium",
            ));
        }
        Ok(Self {
            omega,
            epsilon: n * n / mu,
            mu,
            n,
            n_g: n,
        })
    }

    pub fn is_left_handed(&self) -> bool {
        self.n < 0.0
    }
}

/// Lossless branch rule: n = −√(εμ) when both are negative, +√(εμ) when both are positive.
pub fn refractive_index(epsilon: f64, mu: f64) -> Result<f64> {
    let product = epsilon * mu;
    if !(product > 0.0) {
        return Err(Error::domain(format!(
            "ε = {epsilon}, μ = {mu} is a stop band (εμ ≤ 0)"
        )));
    }
    let magnitude = product.sqrt();
    Ok(if epsilon < 0.0 { -magnitude } else { magnitude })
}

pub fn sample_medium<D: Dispersion + ?Sized>(model: &D, omega: f64) -> Result<MediumSample> {
    model.validate(omega)?;
    let epsilon = model.permittivity(omega);
    let mu = model.permeability(omega);
    let n = refractive_index(epsilon, mu)?;
    Ok(MediumSample {
        omega,
        epsilon,
        mu,
        n,
        n_g: group_index_from(model, omega, epsilon, mu, n),
    })
}

/// Group index d(ωn)/dω from the closed-form slopes of ε and μ.
pub fn group_index<D: Dispersion + ?Sized>(model: &D, omega: f64) -> Result<f64> {
    model.validate(omega)?;
    let epsilon = model.permittivity(omega);
    let mu = model.permeability(omega);
    let n = refractive_index(epsilon, mu)?;
    Ok(group_index_from(model, omega, epsilon, mu, n))
}

fn group_index_from<D: Dispersion + ?Sized>(
    model: &D,
    omega: f64,
    epsilon: f64,
    mu: f64,
    n: f64,
) -> f64 {
    // n² = εμ  ⇒  dn/dω = (ε'μ + εμ')/(2n)
    let dn = (model.permittivity_slope(omega) * mu + epsilon * model.permeability_slope(omega))
        / (2.0 * n);
    n + omega * dn
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega_n(model: &MediumDispersion, w: f64) -> f64 {
        let n = refractive_index(model.permittivity(w), model.permeability(w)).unwrap();
        w * n
    }

    #[test]
    fn default_fit_reproduces_center_constants() {
        let model = MediumDispersion::fitted_default();
        let s = sample_medium(&model, default_center_omega()).unwrap();
        assert!((s.epsilon - -4.76).abs() < 1e-3);
        assert!((s.mu - -1.222).abs() < 1e-3);
        assert!((s.n - -2.412).abs() < 1e-3);
        assert!(s.n_g > 1.0);
    }

    #[test]
    fn plasma_frequency_fit_is_exact() {
        let model = MediumDispersion::fitted_default();
        let wc = default_center_omega();
        assert!((model.plasma_frequency / wc - 2.4).abs() < 1e-15);
        assert!((model.permittivity(wc) - (1.0 - 2.4 * 2.4)).abs() < 1e-12);
        assert!((model.permeability(wc) - DEFAULT_MU).abs() < 1e-12);
    }

    #[test]
    fn high_frequency_limit() {
        let model = MediumDispersion::fitted_default();
        let w = default_center_omega() * 1e7;
        let s = sample_medium(&model, w).unwrap();
        let f = model.magnetic_fill_factor;
        assert!((s.epsilon - 1.0).abs() < 1e-12);
        assert!((s.mu - (1.0 - f)).abs() < 1e-12);
        assert!((s.n - (1.0 - f).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn nondispersive_stub_has_unit_group_index() {
        assert_eq!(group_index(&Nondispersive::VACUUM, 1e9).unwrap(), 1.0);
    }

    #[test]
    fn group_index_matches_centered_difference_at_center() {
        let model = MediumDispersion::fitted_default();
        let w = default_center_omega();
        let h = 1e-6 * w;
        let fd = (omega_n(&model, w + h) - omega_n(&model, w - h)) / (2.0 * h);
        let ng = group_index(&model, w).unwrap();
        assert!(((ng - fd) / fd).abs() < 1e-6, "analytic {ng} vs fd {fd}");
    }

    #[test]
    fn group_index_matches_centered_difference_across_bands() {
        let model = MediumDispersion::fitted_default();
        let (lo, hi) = model.negative_index_band();
        let upper_start = model.plasma_frequency.max(hi);
        let points = (1..200)
            .map(|i| lo + (hi - lo) * i as f64 / 200.0)
            .chain((1..200).map(|i| upper_start * (1.0 + 0.05 * i as f64)));
        for w in points {
            let h = 1e-6 * w;
            let fd = (omega_n(&model, w + h) - omega_n(&model, w - h)) / (2.0 * h);
            let ng = group_index(&model, w).unwrap();
            assert!(((ng - fd) / fd).abs() < 1e-6, "ω = {w}: {ng} vs {fd}");
        }
    }

    #[test]
    fn negative_index_band_invariants() {
        let model = MediumDispersion::fitted_default();
        let (lo, hi) = model.negative_index_band();
        assert!(lo < default_center_omega() && default_center_omega() < hi);
        for i in 1..=1000 {
            let w = lo + (hi - lo) * i as f64 / 1001.0;
            let s = sample_medium(&model, w).unwrap();
            assert!(s.epsilon < 0.0 && s.mu < 0.0 && s.n < 0.0);
            assert!(((s.n * s.n - s.epsilon * s.mu) / (s.epsilon * s.mu)).abs() < 1e-12);
            assert!(s.n_g >= 1.0, "n_g = {} at ω = {w}", s.n_g);
        }
    }

    #[test]
    fn upper_passband_group_index_tends_to_sqrt_one_minus_f() {
        // μ(∞) = 1 − F, so the positive band is not causal far above ω_p.
        let model = MediumDispersion::fitted_default();
        let ng = group_index(&model, model.plasma_frequency * 1e4).unwrap();
        assert!((ng - (1.0 - model.magnetic_fill_factor).sqrt()).abs() < 1e-6);
    }

    #[test]
    fn stop_band_and_bad_frequencies_are_rejected() {
        let model = MediumDispersion::fitted_default();
        let w0 = model.magnetic_resonance_frequency;
        assert_eq!(
            sample_medium(&model, w0),
            Err(Error::ResonanceSingularity { omega: w0 })
        );
        assert!(matches!(sample_medium(&model, 0.0), Err(Error::Domain(_))));
        assert!(matches!(sample_medium(&model, -1.0), Err(Error::Domain(_))));
        // below the resonance ε < 0 but μ > 0
        assert!(matches!(
            group_index(&model, 0.5 * w0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lossy_models_expose_only_the_complex_response() {
        let model = MediumDispersion::fitted_default()
            .with_losses(1e7, 1e7)
            .unwrap();
        assert_eq!(
            sample_medium(&model, default_center_omega()),
            Err(Error::LossyModel)
        );
        let (eps, mu) = model.response(default_center_omega());
        assert!(eps.im > 0.0 && mu.im > 0.0);
        let (eps0, mu0) = MediumDispersion::fitted_default().response(default_center_omega());
        assert!((eps0.re - DEFAULT_EPSILON).abs() < 1e-12 && eps0.im == 0.0);
        assert!((mu0.re - DEFAULT_MU).abs() < 1e-12);
    }

    #[test]
    fn constructor_invariants() {
        assert!(MediumDispersion::new(1.0, 1.0, 0.0).is_err());
        assert!(MediumDispersion::new(1.0, 1.0, 1.0).is_err());
        assert!(MediumDispersion::new(0.0, 1.0, 0.5).is_err());
        assert!(MediumDispersion::new(1.0, -1.0, 0.5).is_err());
        assert!(MediumDispersion::fit(1.0, -4.76, 0.9, 0.5).is_err());
    }
}
