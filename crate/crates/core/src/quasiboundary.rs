//! Quasi-boundary regularization combined with the cutoff, used as a
//! comparison method. On `A1` modes inside the cutoff disk:
//!
//! `u = g cosh((d-z) mu) / (1 + alpha cosh(d mu))
//!      - (1/mu) int_z^d f(s) [sinh((s-z) mu) - alpha sinh((d-s+z) mu)] / (1 + alpha sinh(d mu)) ds`
//!
//! with `mu = sqrt(lambda)`; zero on every other mode.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::GaussRule;
use crate::spectral::{CauchyData, ModeGrid, Region, SpectralField};
use crate::truncation::RegParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiBoundaryParams {
    pub alpha: f64,
    pub reg: RegParams,
}

impl QuasiBoundaryParams {
    pub fn new(alpha: f64, reg: RegParams) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::param(format!("alpha must be positive, got {alpha}")));
        }
        Ok(QuasiBoundaryParams { alpha, reg })
    }

    /// `alpha = delta / M0`.
    pub fn from_noise(reg: RegParams, m0: f64) -> Result<Self> {
        QuasiBoundaryParams::new(reg.delta / m0, reg)
    }
}

pub fn xiong_uhat(
    data_delta: &CauchyData,
    grid: &Arc<ModeGrid>,
    qb: &QuasiBoundaryParams,
    rule: &GaussRule,
) -> Result<SpectralField> {
    data_delta.check_grid(grid)?;
    if data_delta.has_neumann() {
        return Err(Error::param("xiong_uhat expects h = 0"));
    }
    let keep = qb.reg.mask(grid);
    let d = grid.params().d();
    let alpha = qb.alpha;
    let nz = grid.z().len();
    SpectralField::from_rows(Arc::clone(grid), |m| {
        if !keep[m] || grid.region(m) != Region::A1 {
            return Ok(vec![Complex64::new(0.0, 0.0); nz]);
        }
        let mu = grid.lambda(m).sqrt();
        let g_den = 1.0 + alpha * (d * mu).cosh();
        let f_den = 1.0 + alpha * (d * mu).sinh();
        grid.z()
            .iter()
            .map(|&z| {
                let value = data_delta.g_hat[m] * ((d - z) * mu).cosh() / g_den;
                let v = if data_delta.f_hat.is_zero() {
                    value
                } else {
                    let integral: Complex64 = rule.integrate(z, d, |s| {
                        data_delta.f_hat.at(m, s) * (((s - z) * mu).sinh() - alpha * ((d - s + z) * mu).sinh())
                    })?;
                    value - integral / (mu * f_den)
                };
                if v.re.is_finite() && v.im.is_finite() {
                    Ok(v)
                } else {
                    Err(crate::analytic::overflow(grid, m, z))
                }
            })
            .collect()
    })
}
