//! Physical constants, energy unit conversion and a small 2D vector type.
//!
//! Everything inside the library is SI: joules, kilograms, rad/s, rad/m.
//! The command line speaks μeV for energies.

use std::ops::{Add, Mul, Neg, Sub};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// One electronvolt in joules (exact, CODATA 2018).
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

pub fn uev_to_joules(uev: f64) -> f64 {
    uev * 1e-6 * ELECTRON_VOLT
}

pub fn joules_to_uev(joules: f64) -> f64 {
    joules / ELECTRON_VOLT * 1e6
}

/// Rest energy m·c² in joules.
pub fn rest_energy(mass: f64) -> f64 {
    mass * SPEED_OF_LIGHT * SPEED_OF_LIGHT
}

/// Mass in kilograms whose rest energy is `joules`.
pub fn mass_from_rest_energy(joules: f64) -> f64 {
    joules / (SPEED_OF_LIGHT * SPEED_OF_LIGHT)
}

/// Vector in the plane of incidence: `x` along the interface, `z` along its normal.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub z: f64,
}

impl Vec2 {
    pub const fn new(x: f64, z: f64) -> Self {
        Self { x, z }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.z)
    }

    /// Unit vector along `self`; `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    /// Angle from the +z axis towards +x, radians.
    pub fn angle_from_normal(self) -> f64 {
        self.x.atan2(self.z)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.z + rhs.z)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.z - rhs.z)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.z)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.z * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn microelectronvolt_round_trip() {
        let e = uev_to_joules(20.7);
        assert!((e - 3.316_505_632_38e-24).abs() < 1e-33);
        assert!((joules_to_uev(e) - 20.7).abs() < 1e-12);
    }

    #[test]
    fn angle_from_normal_sign() {
        assert!(Vec2::new(1.0, 1.0).angle_from_normal() > 0.0);
        assert!(Vec2::new(-1.0, 1.0).angle_from_normal() < 0.0);
        assert_eq!(Vec2::default().normalized(), None);
    }
}
