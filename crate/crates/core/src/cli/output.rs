//! File writers: density CSV, grayscale PPM with scale sidecar, summaries, tables.
//!
//! Numbers are written in the shortest decimal form that parses back to the
//! same binary64 value.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::wavepacket::FieldGrid;

/// Shortest round-trip text for `v`; exponent form outside [1e-4, 1e15).
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

pub fn path_with_suffix(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}{suffix}"))
}

fn create(path: &Path) -> io::Result<BufWriter<fs::File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    Ok(BufWriter::new(fs::File::create(path)?))
}

/// `x,z,value` rows, row-major with z fastest.
pub fn write_density_csv(path: &Path, grid: &FieldGrid) -> io::Result<()> {
    let mut w = create(path)?;
    writeln!(w, "x,z,value")?;
    let spec = &grid.spec;
    for ix in 0..spec.nx {
        let x = format_number(spec.x(ix));
        for iz in 0..spec.nz {
            writeln!(
                w,
                "{x},{},{}",
                format_number(spec.z(iz)),
                format_number(grid.density_at(ix, iz))
            )?;
        }
    }
    w.flush()
}

/// 8-bit level for `v` on the linear scale `[lo, hi]`.
pub fn gray_level(v: f64, lo: f64, hi: f64) -> u8 {
    if hi <= lo {
        return 0;
    }
    let level = (255.0 * (v - lo) / (hi - lo) + 0.5).floor();
    level.clamp(0.0, 255.0) as u8
}

/// Binary P6 image of the density: one image row per x sample, one column
/// per z sample, equal RGB channels. Returns the `(min, max)` scale.
pub fn write_density_ppm(path: &Path, grid: &FieldGrid) -> io::Result<(f64, f64)> {
    let (lo, hi) = grid
        .density
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let mut w = create(path)?;
    write!(w, "P6\n{} {}\n255\n", grid.spec.nz, grid.spec.nx)?;
    let mut bytes = Vec::with_capacity(grid.density.len() * 3);
    for &v in &grid.density {
        let g = gray_level(v, lo, hi);
        bytes.extend_from_slice(&[g, g, g]);
    }
    w.write_all(&bytes)?;
    w.flush()?;
    Ok((lo, hi))
}

pub fn write_scale(path: &Path, lo: f64, hi: f64) -> io::Result<()> {
    write_summary(
        path,
        &[
            ("vmin".to_string(), format_number(lo)),
            ("vmax".to_string(), format_number(hi)),
        ],
    )
}

pub fn write_summary(path: &Path, entries: &[(String, String)]) -> io::Result<()> {
    let mut w = create(path)?;
    for (k, v) in entries {
        writeln!(w, "{k}={v}")?;
    }
    w.flush()
}

pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> io::Result<()> {
    let mut w = create(path)?;
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        let line: Vec<String> = row.iter().map(Cell::render).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    w.flush()
}
