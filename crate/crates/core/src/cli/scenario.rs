use std::f64::consts::PI;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Picture, RunConfig, Scenario, SweepParameter};
use super::output::{self, format_number, path_with_suffix, Cell};
use super::CliError;
use crate::em_scatter::{em_group_velocity, refract_em, EmIncident, EmScatterResult};
use crate::kg_scatter::{
    evanescence_threshold, excess_potential, kg_group_velocity, refract_kg, KgIncident,
    KgScatterResult, KleinStep,
};
use crate::mapping::{
    counter_dispersive_energy, index_to_potential, map_components, potential_to_index,
};
use crate::media::{sample_medium, MediumSample};
use crate::units::{joules_to_uev, uev_to_joules, SPEED_OF_LIGHT};
use crate::wavepacket::{
    assemble_field, build_spectrum, centroid_angle, scatter_em, scatter_kg, FieldGrid, GridSpec,
    HalfPlane,
};
use crate::Error;

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// One human-readable line for the terminal.
    pub summary_line: String,
    pub files: Vec<PathBuf>,
}

pub fn run_scenario(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.scenario {
        Scenario::Lhm => run_lhm(cfg),
        Scenario::Klein => run_klein(cfg),
        Scenario::Map => run_map(cfg),
        Scenario::Coeffs => run_coeffs(cfg),
        Scenario::Sweep => run_sweep(cfg),
    }
}

type Summary = Vec<(String, String)>;

fn push(summary: &mut Summary, key: &str, value: impl Into<String>) {
    summary.push((key.to_string(), value.into()));
}

fn push_num(summary: &mut Summary, key: &str, value: f64) {
    push(summary, key, format_number(value));
}

fn degrees(rad: f64) -> f64 {
    rad.to_degrees()
}

fn field_files(
    cfg: &RunConfig,
    grid: &FieldGrid,
    summary: &mut Summary,
) -> Result<Vec<PathBuf>, CliError> {
    let prefix = &cfg.output_prefix;
    let csv = path_with_suffix(prefix, ".density.csv");
    let ppm = path_with_suffix(prefix, ".density.ppm");
    let scale = path_with_suffix(prefix, ".scale.txt");
    output::write_density_csv(&csv, grid).map_err(CliError::io(&csv))?;
    let (lo, hi) = output::write_density_ppm(&ppm, grid).map_err(CliError::io(&ppm))?;
    output::write_scale(&scale, lo, hi).map_err(CliError::io(&scale))?;
    match centroid_angle(grid, HalfPlane::Transmitted) {
        Ok(a) => push_num(summary, "transmitted_centroid_deg", degrees(a)),
        Err(_) => push(summary, "transmitted_centroid_deg", "undefined"),
    }
    push(summary, "grid_nx", grid.spec.nx.to_string());
    push(summary, "grid_nz", grid.spec.nz.to_string());
    push_num(summary, "grid_half_extent_m", grid.spec.x_max);
    push_num(summary, "time_s", grid.time);
    Ok(vec![csv, ppm, scale])
}

fn write_summary_file(cfg: &RunConfig, summary: &Summary) -> Result<PathBuf, CliError> {
    let path = path_with_suffix(&cfg.output_prefix, ".summary.txt");
    output::write_summary(&path, summary).map_err(CliError::io(&path))?;
    Ok(path)
}

fn push_amplitudes(
    summary: &mut Summary,
    t: f64,
    r: f64,
    tau: num_complex::Complex64,
    rho: num_complex::Complex64,
) {
    push_num(summary, "T", t);
    push_num(summary, "R", r);
    push_num(summary, "tau_re", tau.re);
    push_num(summary, "tau_im", tau.im);
    push_num(summary, "rho_re", rho.re);
    push_num(summary, "rho_im", rho.im);
}

fn grid_for(cfg: &RunConfig, wavelength: f64) -> Result<GridSpec, CliError> {
    Ok(GridSpec::centered(
        0.5 * cfg.grid.wavelengths * wavelength,
        cfg.grid.nx,
        cfg.grid.nz,
    )?)
}

fn run_lhm(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = cfg.medium_model()?;
    let omega = cfg.center_omega();
    let med = sample_medium(&model, omega)?;
    let inc = EmIncident::new(omega, cfg.beam.theta_i)?;
    let center = refract_em(&inc, &med)?;

    let components = build_spectrum(&cfg.em_beam()?)?;
    let results = scatter_em(&components, &model)?;
    let grid = grid_for(cfg, 2.0 * PI * SPEED_OF_LIGHT / omega)?;
    let field = assemble_field(&components, &results, &grid, cfg.grid.time)?;

    let mut s = Summary::new();
    push(&mut s, "scenario", "lhm");
    push_num(&mut s, "frequency_hz", cfg.medium.center_frequency_hz);
    push_num(&mut s, "omega", omega);
    push_num(&mut s, "theta_i", cfg.beam.theta_i);
    push_num(&mut s, "epsilon", med.epsilon);
    push_num(&mut s, "mu", med.mu);
    push_num(&mut s, "n", med.n);
    push_num(&mut s, "n_g", med.n_g);
    push_num(&mut s, "sigma", center.branch.sign());
    push_amplitudes(
        &mut s,
        center.transmittance,
        center.reflectance,
        center.tau,
        center.rho,
    );
    push(&mut s, "regime", em_regime(&center));
    push_em_angles(&mut s, &center, &med);
    push(&mut s, "components", components.len().to_string());
    let mut files = field_files(cfg, &field, &mut s)?;
    files.push(write_summary_file(cfg, &s)?);

    Ok(Report {
        summary_line: format!(
            "lhm: T={:.3} R={:.3} n={:.3} mu={:.3} theta_i={:.4} rad",
            center.transmittance, center.reflectance, med.n, med.mu, cfg.beam.theta_i
        ),
        files,
    })
}

fn em_regime(r: &EmScatterResult) -> &'static str {
    if r.q.is_propagating() {
        "propagating"
    } else {
        "evanescent"
    }
}

fn push_em_angles(s: &mut Summary, r: &EmScatterResult, med: &MediumSample) {
    match (r.refraction_angle(), em_group_velocity(r, med)) {
        (Some(phase), Ok(vg)) => {
            push_num(s, "phase_angle_deg", degrees(phase));
            push_num(s, "beam_angle_deg", degrees(vg.angle_from_normal()));
        }
        _ => {
            push(s, "phase_angle_deg", "evanescent");
            push(s, "beam_angle_deg", "evanescent");
        }
    }
}

fn run_klein(cfg: &RunConfig) -> Result<Report, CliError> {
    let potential = uev_to_joules(cfg.klein.potential_uev);
    let (step, components) = if cfg.klein.mapped {
        let model = cfg.medium_model()?;
        let energy = counter_dispersive_energy(&model, potential, cfg.center_omega())?;
        let em = build_spectrum(&cfg.em_beam()?)?;
        (
            KleinStep::new(potential, 0.0, energy)?,
            map_components(&em, &model, potential)?,
        )
    } else {
        (cfg.klein_step()?, build_spectrum(&cfg.kg_beam()?)?)
    };
    let inc = KgIncident::new(&step, cfg.beam.theta_i)?;
    let center = refract_kg(&step, &inc)?;
    let results = scatter_kg(&components, potential)?;
    let grid = grid_for(cfg, 2.0 * PI / step.incident_wavenumber())?;
    let field = assemble_field(&components, &results, &grid, cfg.grid.time)?;

    let mut s = Summary::new();
    push(&mut s, "scenario", "klein");
    push(&mut s, "mapped", cfg.klein.mapped.to_string());
    push_num(&mut s, "E_ueV", joules_to_uev(step.energy));
    push_num(&mut s, "V_ueV", joules_to_uev(step.potential));
    push_num(&mut s, "rest_energy_ueV", joules_to_uev(step.rest_energy()));
    push_num(&mut s, "theta_i", cfg.beam.theta_i);
    push(&mut s, "regime", center.regime.as_str());
    push_amplitudes(
        &mut s,
        center.transmittance,
        center.reflectance,
        center.tau,
        center.rho,
    );
    push_num(
        &mut s,
        "excess_potential_ueV",
        joules_to_uev(excess_potential(&step)),
    );
    push_num(
        &mut s,
        "evanescence_threshold_ueV",
        joules_to_uev(evanescence_threshold(step.mass, inc.k.x)),
    );
    match potential_to_index(step.potential, step.energy, step.mass) {
        Ok(n) => push_num(&mut s, "equivalent_index", n),
        Err(_) => push(&mut s, "equivalent_index", "none"),
    }
    push_kg_angles(&mut s, &center, &step);
    push(&mut s, "components", components.len().to_string());
    let mut files = field_files(cfg, &field, &mut s)?;
    files.push(write_summary_file(cfg, &s)?);

    Ok(Report {
        summary_line: format!(
            "klein: T={:.2} R={:.2} V={:.2} μeV E={:.2} μeV regime={}",
            center.transmittance,
            center.reflectance,
            joules_to_uev(step.potential),
            joules_to_uev(step.energy),
            center.regime
        ),
        files,
    })
}

fn push_kg_angles(s: &mut Summary, r: &KgScatterResult, step: &KleinStep) {
    match r.q.real().map(|q| (q, kg_group_velocity(step, q))) {
        Some((q, Ok(vg))) => {
            push_num(s, "phase_angle_deg", degrees(q.angle_from_normal()));
            push_num(s, "beam_angle_deg", degrees(vg.angle_from_normal()));
        }
        _ => {
            push(s, "phase_angle_deg", "evanescent");
            push(s, "beam_angle_deg", "evanescent");
        }
    }
}

fn run_map(cfg: &RunConfig) -> Result<Report, CliError> {
    let model = cfg.medium_model()?;
    let potential = uev_to_joules(cfg.klein.potential_uev);
    let (wmin, wmax) = cfg.map_range(&model);
    let points = cfg.map.points;
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let omega = if points == 1 {
            0.5 * (wmin + wmax)
        } else {
            wmin + (wmax - wmin) * i as f64 / (points - 1) as f64
        };
        let n = sample_medium(&model, omega)?.n;
        let energy = counter_dispersive_energy(&model, potential, omega)?;
        let v_back = index_to_potential(n, energy, 0.0)?;
        rows.push(vec![
            Cell::Num(omega),
            Cell::Num(n),
            Cell::Num(joules_to_uev(energy)),
            Cell::Num(joules_to_uev(v_back)),
        ]);
    }
    let path = path_with_suffix(&cfg.output_prefix, ".table.csv");
    output::write_table(&path, &["omega", "n", "energy_uev", "potential_uev"], &rows)
        .map_err(CliError::io(&path))?;
    Ok(Report {
        summary_line: format!(
            "map: {points} rows over ω ∈ [{wmin:.4e}, {wmax:.4e}] rad/s at V={} μeV",
            cfg.klein.potential_uev
        ),
        files: vec![path],
    })
}

/// Table label for scattering failures that a sweep records instead of aborting on.
fn failure_label(err: &Error) -> Option<&'static str> {
    match err {
        Error::RegimeBoundary { .. } => Some("boundary"),
        Error::DegenerateDenominator => Some("pole"),
        Error::Domain(_) | Error::ResonanceSingularity { .. } => Some("stop-band"),
        Error::InvalidParameter { .. } => Some("invalid"),
        _ => None,
    }
}

type Row = (
    f64,
    f64,
    num_complex::Complex64,
    num_complex::Complex64,
    f64,
    &'static str,
);

fn em_row(med: &MediumSample, theta: f64) -> Result<Row, Error> {
    let inc = EmIncident::new(med.omega, theta)?;
    let r = refract_em(&inc, med)?;
    Ok((
        r.transmittance,
        r.reflectance,
        r.tau,
        r.rho,
        r.q.z.re / inc.k.norm(),
        em_regime(&r),
    ))
}

fn kg_row(step: &KleinStep, theta: f64) -> Result<Row, Error> {
    let inc = KgIncident::new(step, theta)?;
    let r = refract_kg(step, &inc)?;
    Ok((
        r.transmittance,
        r.reflectance,
        r.tau,
        r.rho,
        r.q.z.re / inc.k.norm(),
        r.regime.as_str(),
    ))
}

fn row_cells(param: f64, row: Result<Row, Error>) -> Result<Vec<Cell>, CliError> {
    match row {
        Ok((t, r, tau, rho, qz, regime)) => Ok(vec![
            param.into(),
            t.into(),
            r.into(),
            tau.re.into(),
            tau.im.into(),
            rho.re.into(),
            rho.im.into(),
            qz.into(),
            regime.into(),
        ]),
        Err(e) => {
            let label = failure_label(&e).ok_or(CliError::Numerical(e))?;
            let mut cells = vec![param.into()];
            cells.extend(std::iter::repeat_n(Cell::Num(f64::NAN), 7));
            cells.push(label.into());
            Ok(cells)
        }
    }
}

const ROW_COLUMNS: [&str; 8] = [
    "T",
    "R",
    "tau_re",
    "tau_im",
    "rho_re",
    "rho_im",
    "qz_over_k",
    "regime",
];

fn run_coeffs(cfg: &RunConfig) -> Result<Report, CliError> {
    let c = &cfg.coeffs;
    let rows: Vec<Vec<Cell>> = match c.picture {
        Picture::Em => {
            let omega = cfg.center_omega();
            let med = match (c.index, c.mu) {
                (Some(n), Some(mu)) => MediumSample::nondispersive(omega, n, mu)?,
                _ => sample_medium(&cfg.medium_model()?, omega)?,
            };
            c.angles
                .iter()
                .map(|&th| row_cells(th, em_row(&med, th)))
                .collect::<Result<_, _>>()?
        }
        Picture::Kg => {
            let step = cfg.klein_step()?;
            c.angles
                .iter()
                .map(|&th| row_cells(th, kg_row(&step, th)))
                .collect::<Result<_, _>>()?
        }
    };
    let mut header = vec!["theta"];
    header.extend(ROW_COLUMNS);
    let path = path_with_suffix(&cfg.output_prefix, ".table.csv");
    output::write_table(&path, &header, &rows).map_err(CliError::io(&path))?;
    let first = rows.first().map(|r| render_row(r)).unwrap_or_default();
    Ok(Report {
        summary_line: format!("coeffs: {} angles; first row {first}", rows.len()),
        files: vec![path],
    })
}

fn render_row(row: &[Cell]) -> String {
    let cell = |i: usize| match &row[i] {
        Cell::Num(v) => format!("{v:.3}"),
        Cell::Text(t) => t.clone(),
    };
    format!("theta={} T={} R={}", cell(0), cell(1), cell(2))
}

fn sweep_values(cfg: &RunConfig) -> Vec<f64> {
    let s = &cfg.sweep;
    if s.random {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..s.points)
            .map(|_| {
                if s.max > s.min {
                    rng.gen_range(s.min..s.max)
                } else {
                    s.min
                }
            })
            .collect()
    } else if s.points == 1 {
        vec![s.min]
    } else {
        (0..s.points)
            .map(|i| s.min + (s.max - s.min) * i as f64 / (s.points - 1) as f64)
            .collect()
    }
}

fn run_sweep(cfg: &RunConfig) -> Result<Report, CliError> {
    let values = sweep_values(cfg);
    let theta = cfg.beam.theta_i;
    let mut rows = Vec::with_capacity(values.len());
    match cfg.sweep.picture {
        Picture::Em => {
            let model = cfg.medium_model()?;
            let center = sample_medium(&model, cfg.center_omega());
            for &v in &values {
                let row = match cfg.sweep.parameter {
                    SweepParameter::Theta => center.clone().and_then(|med| em_row(&med, v)),
                    SweepParameter::FrequencyHz => {
                        sample_medium(&model, 2.0 * PI * v).and_then(|med| em_row(&med, theta))
                    }
                    _ => unreachable!("validated in RunConfig"),
                };
                rows.push(row_cells(v, row)?);
            }
        }
        Picture::Kg => {
            let base = cfg.klein_step()?;
            for &v in &values {
                let row = match cfg.sweep.parameter {
                    SweepParameter::Theta => kg_row(&base, v),
                    SweepParameter::PotentialUev => {
                        KleinStep::new(uev_to_joules(v), base.mass, base.energy)
                            .and_then(|step| kg_row(&step, theta))
                    }
                    SweepParameter::EnergyUev => {
                        KleinStep::new(base.potential, base.mass, uev_to_joules(v))
                            .and_then(|step| kg_row(&step, theta))
                    }
                    SweepParameter::FrequencyHz => unreachable!("validated in RunConfig"),
                };
                rows.push(row_cells(v, row)?);
            }
        }
    }
    let mut header = vec![cfg.sweep.parameter.as_str()];
    header.extend(ROW_COLUMNS);
    let path = path_with_suffix(&cfg.output_prefix, ".table.csv");
    output::write_table(&path, &header, &rows).map_err(CliError::io(&path))?;
    Ok(Report {
        summary_line: format!(
            "sweep: {} rows of {} in [{}, {}]",
            rows.len(),
            cfg.sweep.parameter.as_str(),
            format_number(cfg.sweep.min),
            format_number(cfg.sweep.max)
        ),
        files: vec![path],
    })
}
