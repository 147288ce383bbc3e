use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{PlaneWaveComponent, ScatterResult};
use crate::kg_scatter::FieldSample;
use crate::{Error, Result};

/// Coarsest sampling accepted by [`assemble_field`].
pub const MIN_POINTS_PER_WAVELENGTH: f64 = 8.0;

/// Rectangular sampling lattice including both end points on each axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub z_min: f64,
    pub z_max: f64,
    pub nx: usize,
    pub nz: usize,
}

impl GridSpec {
    /// Square grid `[−half_extent, half_extent]²`.
    pub fn centered(half_extent: f64, nx: usize, nz: usize) -> Result<Self> {
        let g = Self {
            x_min: -half_extent,
            x_max: half_extent,
            z_min: -half_extent,
            z_max: half_extent,
            nx,
            nz,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.nz < 2 {
            return Err(Error::invalid("grid", "needs at least two points per axis"));
        }
        if !(self.x_min < self.x_max) {
            return Err(Error::invalid("grid", "x range is empty"));
        }
        if !(self.z_min < 0.0 && self.z_max > 0.0) {
            return Err(Error::invalid(
                "grid",
                "z range must straddle the interface",
            ));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dz(&self) -> f64 {
        (self.z_max - self.z_min) / (self.nz - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn z(&self, j: usize) -> f64 {
        self.z_min + j as f64 * self.dz()
    }
}

/// Complex field samples and their squared magnitude.
///
/// Storage is row-major with z fastest: index `ix * nz + iz`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub spec: GridSpec,
    pub time: f64,
    pub values: Vec<Complex64>,
    pub density: Vec<f64>,
}

impl FieldGrid {
    /// Builds a grid from an arbitrary field function of `(x, z)`.
    pub fn from_fn(spec: GridSpec, time: f64, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        spec.validate()?;
        let mut values = Vec::with_capacity(spec.nx * spec.nz);
        for ix in 0..spec.nx {
            for iz in 0..spec.nz {
                values.push(f(spec.x(ix), spec.z(iz)));
            }
        }
        Ok(Self::from_values(spec, time, values))
    }

    fn from_values(spec: GridSpec, time: f64, values: Vec<Complex64>) -> Self {
        let density = values.iter().map(|v| v.norm_sqr()).collect();
        Self {
            spec,
            time,
            values,
            density,
        }
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.spec.x_min, self.spec.x_max)
    }

    pub fn z_range(&self) -> (f64, f64) {
        (self.spec.z_min, self.spec.z_max)
    }

    pub fn index(&self, ix: usize, iz: usize) -> usize {
        ix * self.spec.nz + iz
    }

    pub fn value(&self, ix: usize, iz: usize) -> Complex64 {
        self.values[self.index(ix, iz)]
    }

    pub fn density_at(&self, ix: usize, iz: usize) -> f64 {
        self.density[self.index(ix, iz)]
    }
}

/// Which partial waves enter a sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WaveSet {
    pub incident: bool,
    pub reflected: bool,
    pub transmitted: bool,
}

impl WaveSet {
    pub const ALL: WaveSet = WaveSet {
        incident: true,
        reflected: true,
        transmitted: true,
    };
    pub const INCIDENT: WaveSet = WaveSet {
        incident: true,
        reflected: false,
        transmitted: false,
    };
}

/// Side of the interface whose representation is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Incident plus reflected waves (z < 0 formula).
    Incident,
    /// Transmitted waves (z > 0 formula).
    Transmitted,
}

/// Component order for every sum: ascending angle, then frequency.
fn summation_order(components: &[PlaneWaveComponent]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..components.len()).collect();
    order.sort_by(|&a, &b| {
        let (ca, cb) = (&components[a], &components[b]);
        match ca.theta.total_cmp(&cb.theta) {
            Ordering::Equal => ca.omega.total_cmp(&cb.omega),
            other => other,
        }
    });
    order
}

fn check_pairs(components: &[PlaneWaveComponent], results: &[ScatterResult]) -> Result<()> {
    if components.len() != results.len() {
        return Err(Error::invalid(
            "results",
            format!(
                "{} components but {} scatter results",
                components.len(),
                results.len()
            ),
        ));
    }
    Ok(())
}

fn check_sampling(
    components: &[PlaneWaveComponent],
    results: &[ScatterResult],
    grid: &GridSpec,
) -> Result<()> {
    let k_max = components
        .iter()
        .zip(results)
        .map(|(c, r)| {
            let q = r.q();
            c.k.norm().max(q.x.hypot(q.z.re))
        })
        .fold(0.0_f64, f64::max);
    if k_max == 0.0 {
        return Ok(());
    }
    let points_per_wavelength = (2.0 * PI / k_max) / grid.dx().max(grid.dz());
    if points_per_wavelength < MIN_POINTS_PER_WAVELENGTH {
        return Err(Error::Undersampled {
            points_per_wavelength,
        });
    }
    Ok(())
}

/// Total field on `grid` at time `t`.
pub fn assemble_field(
    components: &[PlaneWaveComponent],
    results: &[ScatterResult],
    grid: &GridSpec,
    t: f64,
) -> Result<FieldGrid> {
    assemble_parts(components, results, grid, t, WaveSet::ALL)
}

/// Field on `grid` restricted to the selected partial waves.
///
/// The sum factorizes as `Σ_j a_j(x)·b_j(z)`; both factors are tabulated
/// once and every grid point accumulates components in a fixed order, so the
/// output does not depend on the number of worker threads.
pub fn assemble_parts(
    components: &[PlaneWaveComponent],
    results: &[ScatterResult],
    grid: &GridSpec,
    t: f64,
    waves: WaveSet,
) -> Result<FieldGrid> {
    grid.validate()?;
    check_pairs(components, results)?;
    check_sampling(components, results, grid)?;
    let order = summation_order(components);
    let i = Complex64::i();
    let (nx, nz) = (grid.nx, grid.nz);

    let z_factors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&j| {
            let (c, r) = (&components[j], &results[j]);
            let (tau, rho, qz) = (r.tau(), r.rho(), r.q().z);
            (0..nz)
                .map(|iz| {
                    let z = grid.z(iz);
                    if z < 0.0 {
                        let mut acc = Complex64::new(0.0, 0.0);
                        if waves.incident {
                            acc += (i * c.k.z * z).exp();
                        }
                        if waves.reflected {
                            acc += rho * (-i * c.k.z * z).exp();
                        }
                        acc
                    } else if waves.transmitted {
                        tau * (i * qz * z).exp()
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect();
    let amplitudes: Vec<Complex64> = order
        .iter()
        .map(|&j| {
            let c = &components[j];
            c.weight * (-i * c.omega * t).exp()
        })
        .collect();
    let kx: Vec<f64> = order.iter().map(|&j| components[j].k.x).collect();

    let mut values = vec![Complex64::new(0.0, 0.0); nx * nz];
    values.par_chunks_mut(nz).enumerate().for_each(|(ix, row)| {
        let x = grid.x(ix);
        let row_factors: Vec<Complex64> = amplitudes
            .iter()
            .zip(&kx)
            .map(|(a, k)| a * (i * k * x).exp())
            .collect();
        for (iz, out) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, zf) in row_factors.iter().zip(&z_factors) {
                acc += a * zf[iz];
            }
            *out = acc;
        }
    });
    Ok(FieldGrid::from_values(*grid, t, values))
}

/// Field and gradient at `(x, z)` using one side's representation.
///
/// Either side may be evaluated at any z; at z = 0 the two give the
/// one-sided limits of the total field.
pub fn evaluate(
    components: &[PlaneWaveComponent],
    results: &[ScatterResult],
    x: f64,
    z: f64,
    t: f64,
    side: Side,
) -> Result<FieldSample> {
    check_pairs(components, results)?;
    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    let mut value = zero;
    let mut gx = zero;
    let mut gz = zero;
    for j in summation_order(components) {
        let (c, r) = (&components[j], &results[j]);
        let a = c.weight * (-i * c.omega * t).exp() * (i * c.k.x * x).exp();
        match side {
            Side::Incident => {
                let inc = (i * c.k.z * z).exp();
                let refl = r.rho() * (-i * c.k.z * z).exp();
                value += a * (inc + refl);
                gx += i * c.k.x * a * (inc + refl);
                gz += i * c.k.z * a * (inc - refl);
            }
            Side::Transmitted => {
                let q = r.q();
                let tr = r.tau() * (i * q.z * z).exp();
                value += a * tr;
                gx += i * q.x * a * tr;
                gz += i * q.z * a * tr;
            }
        }
    }
    Ok(FieldSample {
        value,
        gradient: [gx, gz],
    })
}

/// One-sided limits `(z → 0⁻, z → 0⁺)` of field and gradient at each `x`.
pub fn interface_traces(
    components: &[PlaneWaveComponent],
    results: &[ScatterResult],
    xs: &[f64],
    t: f64,
) -> Result<Vec<(FieldSample, FieldSample)>> {
    xs.iter()
        .map(|&x| {
            Ok((
                evaluate(components, results, x, 0.0, t, Side::Incident)?,
                evaluate(components, results, x, 0.0, t, Side::Transmitted)?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interface::TransmittedWaveVector;
    use crate::kg_scatter::{refract_kg, KgIncident, KleinStep};
    use crate::units::Vec2;
    use crate::wavepacket::{build_spectrum, scatter_kg, BeamSpec, Carrier};

    fn free_component() -> (PlaneWaveComponent, ScatterResult) {
        let energy = 3.3e-24;
        let c = PlaneWaveComponent::klein_gordon(0.3, energy, 0.0, 0.8);
        let step = KleinStep::new(0.0, 0.0, energy).unwrap();
        let inc = KgIncident::from_wavevector(&step, c.k).unwrap();
        (c, refract_kg(&step, &inc).unwrap().into())
    }

    #[test]
    fn free_plane_wave_has_uniform_density() {
        let (c, r) = free_component();
        let lambda = 2.0 * PI / c.k.norm();
        let grid = GridSpec::centered(2.0 * lambda, 64, 64).unwrap();
        let f = assemble_field(&[c], &[r], &grid, 1e-9).unwrap();
        for d in &f.density {
            assert!((d - 0.64).abs() < 1e-12);
        }
        for (v, d) in f.values.iter().zip(&f.density) {
            assert!(((v.norm_sqr() - d) / d).abs() < 1e-12);
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let (c, r) = free_component();
        let lambda = 2.0 * PI / c.k.norm();
        let grid = GridSpec::centered(20.0 * lambda, 64, 64).unwrap();
        assert!(matches!(
            assemble_field(&[c], &[r], &grid, 0.0),
            Err(Error::Undersampled { .. })
        ));
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let (c, _) = free_component();
        let grid = GridSpec::centered(1.0, 8, 8).unwrap();
        assert!(assemble_field(&[c], &[], &grid, 0.0).is_err());
        assert!(GridSpec::centered(1.0, 1, 8).is_err());
        let one_sided = GridSpec {
            z_min: 0.0,
            ..GridSpec::centered(1.0, 8, 8).unwrap()
        };
        assert!(one_sided.validate().is_err());
    }

    #[test]
    fn grid_matches_pointwise_evaluation() {
        let spec = BeamSpec::monochromatic(
            Carrier::KleinGordon {
                energy: 3.3e-24,
                mass: 0.0,
            },
            0.5,
            0.06,
            9,
        )
        .unwrap();
        let comps = build_spectrum(&spec).unwrap();
        let results = scatter_kg(&comps, 3.3e-24 * 3.4).unwrap();
        let lambda = 2.0 * PI / comps[4].k.norm();
        let grid = GridSpec::centered(1.5 * lambda, 96, 97).unwrap();
        let f = assemble_field(&comps, &results, &grid, 2e-11).unwrap();
        for (ix, iz) in [(0, 0), (10, 40), (50, 48), (95, 96), (30, 70)] {
            let (x, z) = (grid.x(ix), grid.z(iz));
            let side = if z < 0.0 {
                Side::Incident
            } else {
                Side::Transmitted
            };
            let s = evaluate(&comps, &results, x, z, 2e-11, side).unwrap();
            assert!((s.value - f.value(ix, iz)).norm() < 1e-12 * (1.0 + s.value.norm()));
        }
    }

    #[test]
    fn component_order_does_not_change_the_field() {
        let spec = BeamSpec::monochromatic(
            Carrier::KleinGordon {
                energy: 3.3e-24,
                mass: 0.0,
            },
            0.5,
            0.06,
            15,
        )
        .unwrap();
        let comps = build_spectrum(&spec).unwrap();
        let results = scatter_kg(&comps, 3.3e-24 * 3.4).unwrap();
        let mut rc: Vec<_> = comps.iter().copied().zip(results.iter().copied()).collect();
        rc.reverse();
        rc.swap(2, 9);
        let (c2, r2): (Vec<_>, Vec<_>) = rc.into_iter().unzip();
        let lambda = 2.0 * PI / comps[0].k.norm();
        let grid = GridSpec::centered(1.5 * lambda, 80, 80).unwrap();
        let a = assemble_field(&comps, &results, &grid, 0.0).unwrap();
        let b = assemble_field(&c2, &r2, &grid, 0.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn evanescent_component_decays() {
        let c = PlaneWaveComponent::electromagnetic(0.0, 1e10, 1.0);
        let kappa = 5.0;
        let r = ScatterResult::Em(crate::em_scatter::EmScatterResult {
            q: TransmittedWaveVector {
                x: 0.0,
                z: Complex64::new(0.0, kappa),
            },
            k_reflect: Vec2::new(0.0, -c.k.z),
            tau: Complex64::new(1.0, 0.0),
            rho: Complex64::new(0.0, 0.0),
            transmittance: 0.0,
            reflectance: 1.0,
            branch: crate::em_scatter::Branch::RightHanded,
        });
        let s = evaluate(&[c], &[r], 0.0, 0.2, 0.0, Side::Transmitted).unwrap();
        assert!((s.value.norm() - (-kappa * 0.2).exp()).abs() < 1e-15);
    }
}
