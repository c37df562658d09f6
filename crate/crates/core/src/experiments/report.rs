use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::illposed::{least_squares_slope, BlowupReport};
use crate::spectral::{compensated_sum, SpectralField};

/// Scientific notation with `sig` significant digits and a two-digit signed
/// exponent, e.g. `1.4042179E-02`.
pub fn format_sci(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*E}", sig.saturating_sub(1), x);
    let (mant, exp) = s.split_once('E').expect("E formatting always has an exponent");
    let e: i32 = exp.parse().expect("exponent is an integer");
    let sign = if e < 0 { '-' } else { '+' };
    format!("{mant}E{sign}{:02}", e.abs())
}

/// Root-mean-square difference over the modes in `window` at depth `z0`.
pub fn error_e(exact: &SpectralField, approx: &SpectralField, z0: f64, window: &[usize]) -> Result<f64> {
    if !exact.same_grid(approx) {
        return Err(Error::param("error_e: fields live on different grids"));
    }
    if window.is_empty() {
        return Err(Error::param("error_e: empty mode window"));
    }
    let zi = exact.grid().z_index(z0)?;
    let s = compensated_sum(
        window
            .iter()
            .map(|&m| (exact.value(m, zi) - approx.value(m, zi)).norm_sqr()),
    );
    Ok((s / window.len() as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub delta: f64,
    pub eps: f64,
    /// Number of modes the error is averaged over.
    pub modes: usize,
    /// `E(z0)` per column.
    pub errors: Vec<f64>,
    /// Error bound per column, when the method has one that applies.
    pub bounds: Option<Vec<f64>>,
}

/// Errors per noise level and depth, with the configuration that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub method: String,
    pub z0: Vec<f64>,
    /// Sorted by descending `delta`.
    pub rows: Vec<ErrorRow>,
    pub config_echo: String,
    pub config_hash: String,
}

impl ErrorReport {
    pub fn new(method: &str, z0: Vec<f64>, mut rows: Vec<ErrorRow>, config_echo: String, config_hash: String) -> Self {
        rows.sort_by(|a, b| b.delta.total_cmp(&a.delta));
        ErrorReport {
            method: method.to_string(),
            z0,
            rows,
            config_echo,
            config_hash,
        }
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.errors[j]).collect()
    }

    pub fn cell(&self, delta: f64, z0: f64) -> Option<f64> {
        let j = self.z0.iter().position(|&z| (z - z0).abs() < 1e-12)?;
        let r = self.rows.iter().find(|r| (r.delta / delta - 1.0).abs() < 1e-12)?;
        Some(r.errors[j])
    }

    /// Least-squares slope of `log E` against `log delta` in column `j`.
    pub fn log_slope(&self, j: usize) -> f64 {
        let xs: Vec<f64> = self.rows.iter().map(|r| r.delta.ln()).collect();
        let ys: Vec<f64> = self.rows.iter().map(|r| r.errors[j].ln()).collect();
        least_squares_slope(&xs, &ys)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("delta");
        for z in &self.z0 {
            let _ = write!(s, ",E({z})");
        }
        let has_bounds = self.rows.iter().any(|r| r.bounds.is_some());
        if has_bounds {
            for z in &self.z0 {
                let _ = write!(s, ",bound({z})");
            }
        }
        s.push_str(",eps,modes\n");
        for r in &self.rows {
            s.push_str(&format_sci(r.delta, 8));
            for e in &r.errors {
                let _ = write!(s, ",{}", format_sci(*e, 8));
            }
            if has_bounds {
                match &r.bounds {
                    Some(b) => b.iter().for_each(|v| {
                        let _ = write!(s, ",{}", format_sci(*v, 8));
                    }),
                    None => self.z0.iter().for_each(|_| s.push(',')),
                }
            }
            let _ = writeln!(s, ",{},{}", format_sci(r.eps, 8), r.modes);
        }
        s
    }
}

pub fn blowup_csv(report: &BlowupReport) -> String {
    let mut s = String::from("n,g_norm_sq,f_norm_sq,solution_norm_sq_z0,lower_bound\n");
    for r in &report.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.n,
            format_sci(r.g_sq, 8),
            format_sci(r.f_sq, 8),
            format_sci(r.solution_sq, 8),
            format_sci(r.lower_bound, 8)
        );
    }
    s
}

/// Writes `rho1,rho2,modulus` for every mode at depth `z0`, 17 significant digits.
pub fn emit_figure_data(field: &SpectralField, z0: f64, path: &Path) -> Result<()> {
    let zi = field.grid().z_index(z0)?;
    let mut s = String::from("rho1,rho2,modulus\n");
    for (m, r) in field.grid().rho().iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{}",
            format_sci(r[0], 17),
            format_sci(r[1], 17),
            format_sci(field.value(m, zi).norm(), 17)
        );
    }
    fs::write(path, s)?;
    Ok(())
}

/// Writes `<dir>/<name>.csv` and `<dir>/<name>_manifest.txt` with the
/// configuration echo and hash. Returns the CSV path.
pub fn write_with_manifest(dir: &Path, name: &str, csv: &str, echo: &str, hash: &str, extra: &[PathBuf]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("{name}.csv"));
    fs::write(&csv_path, csv)?;
    let mut m = String::new();
    let _ = writeln!(m, "# run manifest");
    let _ = writeln!(m, "# config_hash = {hash}");
    let _ = writeln!(m, "# output = {}", csv_path.display());
    for p in extra {
        let _ = writeln!(m, "# output = {}", p.display());
    }
    let _ = writeln!(m, "# configuration");
    m.push_str(echo);
    fs::write(dir.join(format!("{name}_manifest.txt")), m)?;
    Ok(csv_path)
}
