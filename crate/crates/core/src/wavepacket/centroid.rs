use super::FieldGrid;
use crate::{Error, Result};

/// Half of the grid on one side of the interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    /// z < 0
    Incident,
    /// z ≥ 0
    Transmitted,
}

/// Per-row spread above this fraction of a flat row's spread means no beam.
const LOCALIZATION_LIMIT: f64 = 0.5;

/// Direction of the density ridge on one half of the grid, radians from +z.
///
/// Each z row contributes its density-weighted mean x; a straight line is
/// fitted through these centroids by weighted least squares. The angle is
/// `atan(dx/dz)`: the incident beam (travelling towards +x) comes out
/// positive, and a transmitted beam on the same side of the normal as the
/// incident one comes out negative.
///
/// On the incident half the ridge mixes incident and reflected beams unless
/// the grid was assembled with the incident waves alone.
pub fn centroid_angle(grid: &FieldGrid, half: HalfPlane) -> Result<f64> {
    let spec = &grid.spec;
    let rows: Vec<usize> = (0..spec.nz)
        .filter(|&iz| {
            let z = spec.z(iz);
            match half {
                HalfPlane::Incident => z < 0.0,
                HalfPlane::Transmitted => z >= 0.0,
            }
        })
        .collect();

    // (z, row mass, centroid x, spread²)
    let mut stats = Vec::with_capacity(rows.len());
    for &iz in &rows {
        let mut mass = 0.0;
        let mut first = 0.0;
        for ix in 0..spec.nx {
            let d = grid.density_at(ix, iz);
            mass += d;
            first += d * spec.x(ix);
        }
        if mass <= 0.0 {
            continue;
        }
        let mean = first / mass;
        let second: f64 = (0..spec.nx)
            .map(|ix| {
                let dx = spec.x(ix) - mean;
                grid.density_at(ix, iz) * dx * dx
            })
            .sum();
        stats.push((spec.z(iz), mass, mean, second / mass));
    }
    if stats.len() < 2 {
        return Err(Error::UndefinedAxis(
            "fewer than two rows carry density".into(),
        ));
    }

    let total: f64 = stats.iter().map(|s| s.1).sum();
    let spread = (stats.iter().map(|s| s.1 * s.3).sum::<f64>() / total).sqrt();
    let flat = (spec.x_max - spec.x_min) / 12f64.sqrt();
    if spread >= LOCALIZATION_LIMIT * flat {
        return Err(Error::UndefinedAxis(format!(
            "density is not localized across x (spread {spread:e} m vs {flat:e} m for a flat row)"
        )));
    }

    let zbar = stats.iter().map(|s| s.1 * s.0).sum::<f64>() / total;
    let xbar = stats.iter().map(|s| s.1 * s.2).sum::<f64>() / total;
    let (mut szz, mut szx) = (0.0, 0.0);
    for &(z, w, x, _) in &stats {
        szz += w * (z - zbar) * (z - zbar);
        szx += w * (z - zbar) * (x - xbar);
    }
    if szz <= 0.0 {
        return Err(Error::UndefinedAxis("rows carry no z extent".into()));
    }
    Ok((szx / szz).atan())
}

/// Density-weighted mean x over one half of the grid.
pub fn mean_x(grid: &FieldGrid, half: HalfPlane) -> f64 {
    let spec = &grid.spec;
    let (mut m, mut fx) = (0.0, 0.0);
    for iz in 0..spec.nz {
        let z = spec.z(iz);
        let keep = match half {
            HalfPlane::Incident => z < 0.0,
            HalfPlane::Transmitted => z >= 0.0,
        };
        if !keep {
            continue;
        }
        for ix in 0..spec.nx {
            let d = grid.density_at(ix, iz);
            m += d;
            fx += d * spec.x(ix);
        }
    }
    fx / m
}
