//! Coefficient algebra shared by both pictures.
//!
//! A field continuous across z = 0 whose normal "admittance" is `a` on the
//! incident side and `b` on the transmitted side has
//! `τ = 2a/(a + b)` and `ρ = (a − b)/(a + b)`. Electromagnetic TE waves use
//! `a = μK_z`, Klein-Gordon waves `a = K_z`; both use `b = Q_z`. The flux
//! ratio is `T = |τ|²·b/a` for real `b`, and zero for evanescent `b`.

use num_complex::Complex64;

use crate::units::Vec2;
use crate::{Error, Result};

/// Transmitted wavevector; the normal component may be imaginary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmittedWaveVector {
    pub x: f64,
    pub z: Complex64,
}

impl TransmittedWaveVector {
    pub fn is_propagating(&self) -> bool {
        self.z.im == 0.0
    }

    /// The real vector, or `None` when the normal component is evanescent.
    pub fn real(&self) -> Option<Vec2> {
        self.is_propagating().then(|| Vec2::new(self.x, self.z.re))
    }
}

/// Field transmission and reflection amplitudes.
pub fn amplitude_coefficients(a: f64, b: Complex64) -> Result<(Complex64, Complex64)> {
    let sum = b + a;
    if sum.norm() <= f64::EPSILON * (a.abs() + b.norm()) {
        return Err(Error::DegenerateDenominator);
    }
    let tau = Complex64::new(2.0 * a, 0.0) / sum;
    let rho = (Complex64::new(a, 0.0) - b) / sum;
    Ok((tau, rho))
}

/// `(T, R)` from the amplitudes; evanescent transmission carries no flux.
pub fn flux_coefficients(a: f64, b: Complex64, tau: Complex64, rho: Complex64) -> (f64, f64) {
    if b.im != 0.0 {
        (0.0, 1.0)
    } else {
        (tau.norm_sqr() * b.re / a, rho.norm_sqr())
    }
}
