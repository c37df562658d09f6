//! Closed-form Fourier-mode solutions of the Cauchy problem
//! `u_zz - lambda u = -f_hat`, `u(d) = g_hat`, `u_z(d) = h_hat`.
//!
//! For `h = 0` the solution splits into the value part
//! `w1 = g_hat C(d - z)` and the forcing part
//! `w2 = int_z^d f_hat(s) S(z - s) ds`, with `C`, `S` the cosh/sinh kernels
//! of the mode (cos/sin on `A3`). On `A2` the double-integral form is used.
//! The Neumann part with `g = f = 0` and `u(0) = 0` is handled by
//! [`u1_hat_homogeneous`].

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{gcosh, gsinh, mul_gcosh, mul_gsinh, sinh_over_cosh};
use crate::quadrature::GaussRule;
use crate::spectral::{CauchyData, ForcingSpectrum, ModeGrid, Region, SpectralField, WaveParams};

/// Value part and forcing part of a solution on a grid without `A2` modes.
#[derive(Debug, Clone)]
pub struct ModeSolutionParts {
    pub w1: SpectralField,
    pub w2: SpectralField,
}

impl ModeSolutionParts {
    pub fn total(&self) -> Result<SpectralField> {
        self.w1.add(&self.w2)
    }
}

fn finite(v: Complex64) -> bool {
    v.re.is_finite() && v.im.is_finite()
}

pub(crate) fn overflow(grid: &ModeGrid, mode: usize, z: f64) -> Error {
    let r = grid.rho()[mode];
    Error::validity(format!(
        "mode {mode} (rho = ({:.6}, {:.6}), lambda = {:.6e}) overflows at z = {z}; \
         this frequency is not representable without regularization",
        r[0],
        r[1],
        grid.lambda(mode)
    ))
}

fn check_len(n: usize, grid: &ModeGrid, what: &str) -> Result<()> {
    if n != grid.len() {
        return Err(Error::param(format!("{what} has {n} modes, grid has {}", grid.len())));
    }
    Ok(())
}

fn reject_a2(grid: &ModeGrid, what: &str) -> Result<()> {
    if let Some(m) = (0..grid.len()).find(|&m| grid.region(m) == Region::A2) {
        return Err(Error::param(format!(
            "{what}: mode {m} lies in A2 (|rho| = k); use a2_solution_hat for it"
        )));
    }
    Ok(())
}

/// `g C(d - z)` for one mode.
pub fn mode_w1(g: Complex64, lambda: f64, d: f64, z: f64) -> Complex64 {
    mul_gcosh(g, lambda, d - z)
}

/// `int_z^d f(s) S(z - s) ds` for one mode, one Gauss rule on `[z, d]`.
pub fn mode_w2<F>(f: F, lambda: f64, d: f64, z: f64, rule: &GaussRule) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    rule.integrate(z, d, |s| mul_gsinh(f(s), lambda, z - s))
}

/// `g + int_d^z int_s^d f(gamma) d gamma ds` for one mode, nested rules.
pub fn mode_a2<F>(g: Complex64, f: F, d: f64, z: f64, rule: &GaussRule) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let outer: Complex64 = rule.integrate(z, d, |s| {
        rule.integrate(s, d, &f).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    })?;
    Ok(g - outer)
}

/// Full mode solution with `h = 0` at every depth of `zs`, region-dispatched.
pub(crate) fn mode_solution(
    g: Complex64,
    f: &ForcingSpectrum,
    mode: usize,
    grid: &ModeGrid,
    rule: &GaussRule,
) -> Result<Vec<Complex64>> {
    let d = grid.params().d();
    let lambda = grid.lambda(mode);
    let region = grid.region(mode);
    let fm = |s: f64| f.at(mode, s);
    let mut out = Vec::with_capacity(grid.z().len());
    for &z in grid.z() {
        let v = match region {
            Region::A2 => mode_a2(g, fm, d, z, rule)?,
            _ => {
                let w1 = mode_w1(g, lambda, d, z);
                if f.is_zero() {
                    w1
                } else {
                    w1 + mode_w2(fm, lambda, d, z, rule).map_err(|e| match e {
                        Error::Data(_) => overflow(grid, mode, z),
                        other => other,
                    })?
                }
            }
        };
        if !finite(v) {
            return Err(overflow(grid, mode, z));
        }
        out.push(v);
    }
    Ok(out)
}

/// Solution of the Neumann-only problem `u(0) = 0`, `u_z(d) = h_hat`:
/// `h_hat S(z) / C(d)` (`z h_hat` on `A2`). Requires `k d < pi/2`.
pub fn u1_hat_homogeneous(h_hat: &[Complex64], grid: &Arc<ModeGrid>) -> Result<SpectralField> {
    let params = grid.params();
    params.require_small_kd("the Neumann solution")?;
    check_len(h_hat.len(), grid, "h_hat")?;
    let d = params.d();
    SpectralField::from_rows(Arc::clone(grid), |m| {
        let lambda = grid.lambda(m);
        Ok(grid
            .z()
            .iter()
            .map(|&z| {
                if grid.region(m) == Region::A2 {
                    h_hat[m] * z
                } else if lambda.abs() * d * d < 1e-8 {
                    h_hat[m] * (gsinh(lambda, z) / gcosh(lambda, d))
                } else {
                    h_hat[m] * sinh_over_cosh(lambda, z, d)
                }
            })
            .collect())
    })
}

/// Value part `g_hat C(d - z)`. The grid must not contain `A2` modes.
pub fn w1_hat(g_hat: &[Complex64], grid: &Arc<ModeGrid>) -> Result<SpectralField> {
    check_len(g_hat.len(), grid, "g_hat")?;
    reject_a2(grid, "w1_hat")?;
    let d = grid.params().d();
    SpectralField::from_rows(Arc::clone(grid), |m| {
        let lambda = grid.lambda(m);
        grid.z()
            .iter()
            .map(|&z| {
                let v = mode_w1(g_hat[m], lambda, d, z);
                if finite(v) {
                    Ok(v)
                } else {
                    Err(overflow(grid, m, z))
                }
            })
            .collect()
    })
}

/// Forcing part `int_z^d f_hat(s) S(z - s) ds`. The grid must not contain `A2` modes.
pub fn w2_hat(f_hat: &ForcingSpectrum, grid: &Arc<ModeGrid>, rule: &GaussRule) -> Result<SpectralField> {
    reject_a2(grid, "w2_hat")?;
    let d = grid.params().d();
    SpectralField::from_rows(Arc::clone(grid), |m| {
        let lambda = grid.lambda(m);
        grid.z()
            .iter()
            .map(|&z| {
                let v = mode_w2(|s| f_hat.at(m, s), lambda, d, z, rule)?;
                if finite(v) {
                    Ok(v)
                } else {
                    Err(overflow(grid, m, z))
                }
            })
            .collect()
    })
}

/// `w1_hat` and `w2_hat` together.
pub fn solution_parts(data: &CauchyData, grid: &Arc<ModeGrid>, rule: &GaussRule) -> Result<ModeSolutionParts> {
    Ok(ModeSolutionParts {
        w1: w1_hat(&data.g_hat, grid)?,
        w2: w2_hat(&data.f_hat, grid, rule)?,
    })
}

/// Solution on `A2` modes: `g_hat + int_d^z int_s^d f_hat d gamma ds`.
pub fn a2_solution_hat(
    g_hat: &[Complex64],
    f_hat: &ForcingSpectrum,
    grid: &Arc<ModeGrid>,
    rule: &GaussRule,
) -> Result<SpectralField> {
    check_len(g_hat.len(), grid, "g_hat")?;
    if let Some(m) = (0..grid.len()).find(|&m| grid.region(m) != Region::A2) {
        return Err(Error::param(format!(
            "a2_solution_hat: mode {m} has lambda = {:e}, not in A2",
            grid.lambda(m)
        )));
    }
    let d = grid.params().d();
    SpectralField::from_rows(Arc::clone(grid), |m| {
        grid.z()
            .iter()
            .map(|&z| mode_a2(g_hat[m], |s| f_hat.at(m, s), d, z, rule))
            .collect()
    })
}

/// Solution of the Cauchy problem with `h = 0` on every mode of the grid.
pub fn exact_uhat(data: &CauchyData, grid: &Arc<ModeGrid>, rule: &GaussRule) -> Result<SpectralField> {
    data.check_grid(grid)?;
    if data.has_neumann() {
        return Err(Error::param(
            "exact_uhat expects h = 0; add u1_hat_homogeneous for the Neumann part",
        ));
    }
    SpectralField::from_rows(Arc::clone(grid), |m| mode_solution(data.g_hat[m], &data.f_hat, m, grid, rule))
}

/// Stability bound on `A2 u A3`:
/// `||w||^2_{L2(Omega)} <= 2 d C^2 (||g||^2 + d ||f||^2_{L2(Omega)})`,
/// `C = max(tan(d k) / k, 1)`.
pub fn wellposed_bound(g_norm: f64, f_norm: f64, params: &WaveParams) -> Result<f64> {
    params.require_small_kd("the well-posedness bound")?;
    let (k, d) = (params.k(), params.d());
    let c = ((d * k).tan() / k).max(1.0);
    Ok(2.0 * d * c * c * (g_norm * g_norm + d * f_norm * f_norm))
}
