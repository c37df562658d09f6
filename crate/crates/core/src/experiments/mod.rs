//! Reproduction harness for the two worked examples, the blow-up family and
//! the bound evaluators: noise models, the `E(z0)` metric, table runners and
//! CSV output.
//!
//! Example 1: `k = 1/3`, `d = 1/2`, exact solution `u = x y (z - d)^4` on the
//! unit square, forcing `f = x y phi(z)` with `phi(s) = -(s-d)^2 (12 + k^2 (s-d)^2)`,
//! errors on the cutoff disk restricted to `A1`, grid spacing
//! `sqrt(1/eps) / 30`.
//!
//! Example 2: `d = pi / sqrt 3`, `k = sqrt 5`, solution spectrum
//! `2 pi e^{-2 pi^2 |rho|^2} cos(z pi / d)`, marched backward in `M = 50`
//! steps. A reported depth `z0` is evaluated at the nearest march node.

pub mod config;
pub mod noise;
pub mod report;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::illposed::{demo_blowup, BlowupReport};
use crate::nonlinear::{example2_rhat, fixed_point_solve, volterra_march, AffineForcing, NonlinearRegSetup};
use crate::quadrature::GaussRule;
use crate::quasiboundary::{xiong_uhat, QuasiBoundaryParams};
use crate::spectral::{fourier_coeff_separable, CauchyData, ForcingSpectrum, ModeGrid, Region, SpectralField, WaveParams};
use crate::truncation::{bound_report, eps_apriori_formula, eps_logrule, eps_thm17, regularized_uhat, thm11_error_bound, RegParams};

pub use config::{Experiment, ExperimentConfig, NoiseKind, EXAMPLE1_NORM_CONST};
pub use noise::{NoiseModel, NoisyData};
pub use report::{emit_figure_data, error_e, format_sci, ErrorReport, ErrorRow};

/// Regularized solver used on Example 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example1Method {
    Truncation,
    QuasiBoundary,
}

/// Solver used on Example 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example2Solver {
    March,
    FixedPoint,
}

/// `phi(s) = -(s-d)^2 (12 + k^2 (s-d)^2)`.
pub fn example1_profile(s: f64, params: &WaveParams) -> f64 {
    let t = s - params.d();
    -t * t * (12.0 + params.k() * params.k() * t * t)
}

/// Everything one Example-1 cell needs.
#[derive(Debug, Clone)]
pub struct Example1Fields {
    pub reg: RegParams,
    /// Cutoff disk intersected with `A1`, depths = sorted `z0`.
    pub grid: Arc<ModeGrid>,
    pub exact: SpectralField,
    pub approx: SpectralField,
}

fn sorted_depths(z0: &[f64]) -> Vec<f64> {
    let mut z = z0.to_vec();
    z.sort_by(f64::total_cmp);
    z.dedup();
    z
}

/// Square window `[-sqrt(1/eps), sqrt(1/eps)]^2` restricted by `keep`.
fn cutoff_grid<F>(reg: &RegParams, divisor: f64, z: Vec<f64>, params: WaveParams, keep: F) -> Result<Arc<ModeGrid>>
where
    F: Fn([f64; 2], Region) -> bool,
{
    let r = reg.radius_sq().sqrt();
    let window = ModeGrid::square_window(r, r / divisor, z, params)?;
    let grid = window.retain(|rho, region| reg.contains(rho) && keep(rho, region));
    if grid.is_empty() {
        return Err(Error::param("the cutoff window contains no modes"));
    }
    Ok(Arc::new(grid))
}

/// Builds the Example-1 grid, data, exact and regularized fields for one `delta`.
pub fn example1_fields(cfg: &ExperimentConfig, delta: f64, method: Example1Method) -> Result<Example1Fields> {
    cfg.validate()?;
    let params = cfg.wave_params()?;
    let rule = GaussRule::new(cfg.quad_order)?;
    let reg = eps_apriori_formula(delta, cfg.m0, &params)?;
    let grid = cutoff_grid(&reg, cfg.spacing_divisor, sorted_depths(&cfg.z0), params, |_, region| {
        region == Region::A1
    })?;
    let coeffs: Vec<(Complex64, Complex64)> = grid
        .rho()
        .par_iter()
        .map(|&rho| {
            Ok((
                fourier_coeff_separable(|x| x, |y| y, 1.0, rho, cfg.quad_order)?,
                fourier_coeff_separable(|_| 1.0, |_| 1.0, 1.0, rho, cfg.quad_order)?,
            ))
        })
        .collect::<Result<_>>()?;
    let cxy: Vec<Complex64> = coeffs.iter().map(|c| c.0).collect();
    let unit: Vec<Complex64> = coeffs.iter().map(|c| c.1).collect();
    let zero = vec![Complex64::new(0.0, 0.0); grid.len()];
    let noisy = NoiseModel::new(cfg.noise, delta, cfg.noise_norm_const, cfg.seed)?.apply(&zero, &cxy, &unit)?;
    let f_hat = ForcingSpectrum::separable(noisy.f_coeffs, move |s| example1_profile(s, &params));
    let data = CauchyData::without_neumann(noisy.g_hat, f_hat);
    let approx = match method {
        Example1Method::Truncation => regularized_uhat(&data, &grid, &reg, &rule)?,
        Example1Method::QuasiBoundary => {
            xiong_uhat(&data, &grid, &QuasiBoundaryParams::from_noise(reg, cfg.m0)?, &rule)?
        }
    };
    let d = params.d();
    let exact = SpectralField::from_rows(Arc::clone(&grid), |m| {
        Ok(grid.z().iter().map(|&z| cxy[m] * (z - d).powi(4)).collect())
    })?;
    Ok(Example1Fields {
        reg,
        grid,
        exact,
        approx,
    })
}

fn run_example1(cfg: &ExperimentConfig, method: Example1Method) -> Result<ErrorReport> {
    cfg.validate()?;
    let params = cfg.wave_params()?;
    let mut rows = Vec::with_capacity(cfg.deltas.len());
    for &delta in &cfg.deltas {
        let cell = example1_fields(cfg, delta, method)?;
        let window: Vec<usize> = (0..cell.grid.len()).collect();
        let errors = cfg
            .z0
            .iter()
            .map(|&z| error_e(&cell.exact, &cell.approx, z, &window))
            .collect::<Result<Vec<_>>>()?;
        let bounds = if method == Example1Method::Truncation && delta < cfg.m0 {
            Some(
                cfg.z0
                    .iter()
                    .map(|&z| thm11_error_bound(z, delta, cfg.m0, &params))
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        rows.push(ErrorRow {
            delta,
            eps: cell.reg.eps,
            modes: window.len(),
            errors,
            bounds,
        });
    }
    let name = match method {
        Example1Method::Truncation => "truncation",
        Example1Method::QuasiBoundary => "quasi-boundary",
    };
    Ok(ErrorReport::new(name, cfg.z0.clone(), rows, cfg.echo(), cfg.hash()))
}

/// Errors of the truncation method on Example 1.
pub fn run_table1(cfg: &ExperimentConfig) -> Result<ErrorReport> {
    run_example1(cfg, Example1Method::Truncation)
}

/// Errors of the quasi-boundary method (`alpha = delta / M0`) on Example 1.
pub fn run_table2(cfg: &ExperimentConfig) -> Result<ErrorReport> {
    run_example1(cfg, Example1Method::QuasiBoundary)
}

/// `-2 pi e^{-2 pi^2 |rho|^2}`.
pub fn example2_g_hat(rho: [f64; 2]) -> Complex64 {
    let r2 = rho[0] * rho[0] + rho[1] * rho[1];
    Complex64::new(-2.0 * PI * (-2.0 * PI * PI * r2).exp(), 0.0)
}

/// `2 pi e^{-2 pi^2 |rho|^2} cos(z pi / d)`.
pub fn example2_exact(rho: [f64; 2], z: f64, params: &WaveParams) -> Complex64 {
    -example2_g_hat(rho) * (z * PI / params.d()).cos()
}

/// `F_hat(w) = -k^2 w + 2 pi (2 - 4 pi^2 |rho|^2) e^{-2 pi^2 |rho|^2} cos(s pi / d)`.
pub fn example2_forcing(grid: &ModeGrid) -> AffineForcing {
    let params = *grid.params();
    let amps: Vec<f64> = (0..grid.len())
        .map(|m| {
            let r2 = grid.rho_norm_sq(m);
            2.0 * PI * (2.0 - 4.0 * PI * PI * r2) * (-2.0 * PI * PI * r2).exp()
        })
        .collect();
    let d = params.d();
    let source = ForcingSpectrum::from_fn(move |m, s| Complex64::new(amps[m] * (s * PI / d).cos(), 0.0));
    AffineForcing::new(0.0, params.k(), source)
}

/// Example-2 grid (cutoff disk, all regions) and setup for one `delta`.
pub fn example2_setup(cfg: &ExperimentConfig, delta: f64) -> Result<(Arc<ModeGrid>, NonlinearRegSetup)> {
    cfg.validate()?;
    let params = cfg.wave_params()?;
    let reg = eps_thm17(delta, &params)?;
    let grid = cutoff_grid(&reg, cfg.spacing_divisor, vec![params.d()], params, |_, _| true)?;
    let mut setup = NonlinearRegSetup::new(reg);
    setup.steps = cfg.volterra_steps;
    setup.quad_order = cfg.quad_order;
    let grid = setup.depth_grid(&grid)?;
    Ok((grid, setup))
}

/// Example-2 solution on the march depths, and the exact spectrum there.
pub fn example2_fields(cfg: &ExperimentConfig, delta: f64, solver: Example2Solver) -> Result<(SpectralField, SpectralField)> {
    let (grid, setup) = example2_setup(cfg, delta)?;
    let params = *grid.params();
    let g_hat: Vec<Complex64> = grid.rho().iter().map(|&r| example2_g_hat(r)).collect();
    let approx = match solver {
        Example2Solver::March => {
            let rho = grid.rho().to_vec();
            volterra_march(move |m, z| example2_rhat(rho[m], z, &params), &g_hat, &setup, &grid)?
        }
        Example2Solver::FixedPoint => {
            let data = CauchyData::without_neumann(g_hat, ForcingSpectrum::zero());
            fixed_point_solve(&data, &setup, &example2_forcing(&grid), &grid)?.field
        }
    };
    let exact = SpectralField::from_rows(Arc::clone(&grid), |m| {
        Ok(grid.z().iter().map(|&z| example2_exact(grid.rho()[m], z, &params)).collect())
    })?;
    Ok((exact, approx))
}

/// Errors of the nonlinear scheme on Example 2.
pub fn run_table3_with(cfg: &ExperimentConfig, solver: Example2Solver) -> Result<ErrorReport> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.deltas.len());
    for &delta in &cfg.deltas {
        let (exact, approx) = example2_fields(cfg, delta, solver)?;
        let grid = exact.grid();
        let window: Vec<usize> = (0..grid.len()).collect();
        let errors = cfg
            .z0
            .iter()
            .map(|&z| {
                let node = grid.z()[grid.nearest_z_index(z)];
                error_e(&exact, &approx, node, &window)
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(ErrorRow {
            delta,
            eps: eps_thm17(delta, grid.params())?.eps,
            modes: window.len(),
            errors,
            bounds: None,
        });
    }
    let name = match solver {
        Example2Solver::March => "volterra-march",
        Example2Solver::FixedPoint => "fixed-point",
    };
    Ok(ErrorReport::new(name, cfg.z0.clone(), rows, cfg.echo(), cfg.hash()))
}

pub fn run_table3(cfg: &ExperimentConfig) -> Result<ErrorReport> {
    run_table3_with(cfg, Example2Solver::March)
}

pub fn run_blowup(cfg: &ExperimentConfig) -> Result<BlowupReport> {
    cfg.validate()?;
    let rule = GaussRule::new(cfg.quad_order)?;
    demo_blowup(&cfg.blowup_n, cfg.blowup_samples, &cfg.wave_params()?, &rule)
}

/// Bound table: per `delta` and `z0`, the stability function and the
/// a-priori bound (a-priori formula), the log-rule bound with `P = 1`, and the
/// measure of the cutoff set.
pub fn bounds_csv(cfg: &ExperimentConfig) -> Result<String> {
    cfg.validate()?;
    let params = cfg.wave_params()?;
    let mut s = String::from("delta,z,m1,thm11_bound,thm13_bound_logrule,theta_measure\n");
    for &delta in &cfg.deltas {
        let reg = eps_apriori_formula(delta, cfg.m0, &params)?;
        let rep = bound_report(&cfg.z0, &reg, &params)?;
        let log = if delta < 1.0 { Some(eps_logrule(delta, &params)?) } else { None };
        for (j, &z) in cfg.z0.iter().enumerate() {
            let t11 = rep.thm11_bound.as_ref().map(|b| format_sci(b[j], 8)).unwrap_or_default();
            let t13 = match log {
                Some(l) => format_sci(crate::truncation::thm13_error_bound(z, &l, &params, cfg.m0, 1.0)?, 8),
                None => String::new(),
            };
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                format_sci(delta, 8),
                format_sci(z, 8),
                format_sci(rep.m1_of_z[j], 8),
                t11,
                t13,
                format_sci(rep.theta_area, 8)
            ));
        }
    }
    Ok(s)
}

/// Figure data for Example 1: the moduli of the regularized and exact spectra
/// at every `(delta, z0)` of the configuration. Returns the written paths.
pub fn run_figure(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    std::fs::create_dir_all(out_dir)?;
    let mut paths = Vec::new();
    for &delta in &cfg.deltas {
        let cell = example1_fields(cfg, delta, Example1Method::Truncation)?;
        for &z in &cfg.z0 {
            for (tag, field) in [("regularized", &cell.approx), ("exact", &cell.exact)] {
                let p = out_dir.join(format!("figure_{tag}_delta{}_z{}.csv", format_sci(delta, 2), z));
                emit_figure_data(field, z, &p)?;
                paths.push(p);
            }
        }
    }
    Ok(paths)
}

/// Runs the configured experiment and writes its CSV and manifest into `out_dir`.
pub fn run_to_dir(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let name = cfg.experiment.name();
    let (csv, extra) = match cfg.experiment {
        Experiment::Table1 => (run_table1(cfg)?.to_csv(), Vec::new()),
        Experiment::Table2 => (run_table2(cfg)?.to_csv(), Vec::new()),
        Experiment::Table3 => (run_table3(cfg)?.to_csv(), Vec::new()),
        Experiment::Blowup => (report::blowup_csv(&run_blowup(cfg)?), Vec::new()),
        Experiment::Bounds => (bounds_csv(cfg)?, Vec::new()),
        Experiment::Figure => {
            let files = run_figure(cfg, out_dir)?;
            let mut index = String::from("file\n");
            for f in &files {
                index.push_str(&format!("{}\n", f.file_name().map(|n| n.to_string_lossy()).unwrap_or_default()));
            }
            (index, files)
        }
    };
    let main = report::write_with_manifest(out_dir, name, &csv, &cfg.echo(), &cfg.hash(), &extra)?;
    let mut all = vec![main];
    all.extend(extra);
    Ok(all)
}
