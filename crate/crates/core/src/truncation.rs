//! Spectral cutoff: keep the modes with `|rho|^2 <= 1/eps`, solve the
//! (otherwise unstable) mode equations there, and zero everything else.
//! Also the rules tying `eps` to the noise level and the error bounds
//! they come with.

use std::sync::Arc;

use num_complex::Complex64;

use crate::analytic::mode_solution;
use crate::error::{Error, Result};
use crate::kernels::sinh_minus_id_over_cube;
use crate::quadrature::GaussRule;
use crate::spectral::{CauchyData, ModeGrid, SpectralField, WaveParams};

/// Relative slack on `|rho|^2 <= 1/eps` so that grid points on the circle stay in.
const DISK_SLACK: f64 = 1e-12;

/// How `eps` was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// `kappa = ln(M0 / delta) / d`, requires `delta < M0`.
    Apriori,
    /// `kappa = ln(1 / delta) / d`, which fixes `P = 1`.
    LogRule,
    /// `eps` given directly.
    Manual,
    /// `eps = d^2 / ln^2(1 / delta)` for the nonlinear problem.
    Thm17,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Apriori => "apriori",
            Rule::LogRule => "logrule",
            Rule::Manual => "manual",
            Rule::Thm17 => "thm17",
        }
    }
}

/// Noise level, cutoff and the constants attached to the rule that produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegParams {
    pub delta: f64,
    pub eps: f64,
    /// `sqrt(1/eps - k^2)`; zero when `1/eps <= k^2`.
    pub kappa: f64,
    pub m0: Option<f64>,
    /// The constant `P` of the log-rule bound, when the rule fixes it.
    pub p_const: Option<f64>,
    pub rule: Rule,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::param(format!("noise level must be positive, got {delta}")));
    }
    Ok(())
}

fn from_kappa(kappa: f64, params: &WaveParams) -> f64 {
    let k = params.k();
    1.0 / (kappa * kappa + k * k)
}

/// A-priori rule `eps = (k^2 + ln^2(delta / M0) / d^2)^-1`.
pub fn eps_apriori(delta: f64, m0: f64, params: &WaveParams) -> Result<RegParams> {
    check_delta(delta)?;
    if !(m0 > 0.0) {
        return Err(Error::param(format!("M0 must be positive, got {m0}")));
    }
    if delta >= m0 {
        return Err(Error::param(format!(
            "the a-priori rule needs delta < M0 (delta = {delta}, M0 = {m0})"
        )));
    }
    let kappa = -(delta / m0).ln() / params.d();
    Ok(RegParams {
        delta,
        eps: from_kappa(kappa, params),
        kappa,
        m0: Some(m0),
        p_const: None,
        rule: Rule::Apriori,
    })
}

/// The a-priori formula with `|ln(delta / M0)|`, accepted for any `delta`.
/// Reported as a manual choice since the bound of the a-priori rule does not apply.
pub fn eps_apriori_formula(delta: f64, m0: f64, params: &WaveParams) -> Result<RegParams> {
    if delta > 0.0 && delta < m0 {
        return eps_apriori(delta, m0, params);
    }
    check_delta(delta)?;
    if !(m0 > 0.0) {
        return Err(Error::param(format!("M0 must be positive, got {m0}")));
    }
    let kappa = (delta / m0).ln().abs() / params.d();
    Ok(RegParams {
        delta,
        eps: from_kappa(kappa, params),
        kappa,
        m0: Some(m0),
        p_const: None,
        rule: Rule::Manual,
    })
}

/// Log rule `kappa = ln(1 / delta) / d`, `0 < delta < 1`.
pub fn eps_logrule(delta: f64, params: &WaveParams) -> Result<RegParams> {
    check_delta(delta)?;
    if delta >= 1.0 {
        return Err(Error::param(format!("the log rule needs delta < 1, got {delta}")));
    }
    let kappa = -delta.ln() / params.d();
    Ok(RegParams {
        delta,
        eps: from_kappa(kappa, params),
        kappa,
        m0: None,
        p_const: Some(1.0),
        rule: Rule::LogRule,
    })
}

/// `eps = d^2 / ln^2(1 / delta)`, `0 < delta < 1`.
pub fn eps_thm17(delta: f64, params: &WaveParams) -> Result<RegParams> {
    check_delta(delta)?;
    if delta >= 1.0 {
        return Err(Error::param(format!("this rule needs delta < 1, got {delta}")));
    }
    let l = delta.ln();
    let eps = params.d() * params.d() / (l * l);
    Ok(RegParams {
        delta,
        eps,
        kappa: kappa_of(eps, params),
        m0: None,
        p_const: None,
        rule: Rule::Thm17,
    })
}

fn kappa_of(eps: f64, params: &WaveParams) -> f64 {
    (1.0 / eps - params.k() * params.k()).max(0.0).sqrt()
}

impl RegParams {
    /// A user-chosen cutoff; `p_const` is the constant `P` if known.
    pub fn manual(eps: f64, delta: f64, params: &WaveParams, p_const: Option<f64>) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::param(format!("eps must be positive, got {eps}")));
        }
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::param(format!("noise level must be nonnegative, got {delta}")));
        }
        Ok(RegParams {
            delta,
            eps,
            kappa: kappa_of(eps, params),
            m0: None,
            p_const,
            rule: Rule::Manual,
        })
    }

    /// `1 / eps`, the squared cutoff radius.
    pub fn radius_sq(&self) -> f64 {
        1.0 / self.eps
    }

    pub fn contains(&self, rho: [f64; 2]) -> bool {
        rho[0] * rho[0] + rho[1] * rho[1] <= self.radius_sq() * (1.0 + DISK_SLACK)
    }

    /// Membership of every grid mode in the cutoff disk.
    pub fn mask(&self, grid: &ModeGrid) -> Vec<bool> {
        grid.rho().iter().map(|&r| self.contains(r)).collect()
    }
}

/// Zeroes every mode outside the cutoff disk.
pub fn truncate(field: &SpectralField, reg: &RegParams) -> SpectralField {
    field.masked(&reg.mask(field.grid()))
}

/// Data restricted to the cutoff disk.
pub fn truncate_data(data: &CauchyData, grid: &ModeGrid, reg: &RegParams) -> Result<CauchyData> {
    data.check_grid(grid)?;
    let keep = reg.mask(grid);
    let zero = Complex64::new(0.0, 0.0);
    let cut = |v: &[Complex64]| -> Vec<Complex64> {
        v.iter().zip(&keep).map(|(&x, &k)| if k { x } else { zero }).collect()
    };
    Ok(CauchyData {
        g_hat: cut(&data.g_hat),
        h_hat: cut(&data.h_hat),
        f_hat: data.f_hat.masked(Arc::new(keep)),
    })
}

/// Regularized solution: the mode solution of the truncated data inside the
/// cutoff disk, zero outside.
pub fn regularized_uhat(
    data_delta: &CauchyData,
    grid: &Arc<ModeGrid>,
    reg: &RegParams,
    rule: &GaussRule,
) -> Result<SpectralField> {
    data_delta.check_grid(grid)?;
    if data_delta.has_neumann() {
        return Err(Error::param("regularized_uhat expects h = 0"));
    }
    let keep = reg.mask(grid);
    let nz = grid.z().len();
    SpectralField::from_rows(Arc::clone(grid), |m| {
        if keep[m] {
            mode_solution(data_delta.g_hat[m], &data_delta.f_hat, m, grid, rule)
        } else {
            Ok(vec![Complex64::new(0.0, 0.0); nz])
        }
    })
}

/// Stability function
/// `M1(z)^2 = 2 cosh^2((d-z) kappa) + (d-z) [sinh(2 kappa (d-z)) - 2 kappa (d-z)] / (2 kappa^3)`.
pub fn m1_stability(z: f64, reg: &RegParams, params: &WaveParams) -> Result<f64> {
    let d = params.d();
    if !(0.0..=d).contains(&z) {
        return Err(Error::param(format!("z = {z} outside [0, {d}]")));
    }
    let kappa = reg.kappa;
    if !(kappa > 0.0) {
        return Err(Error::param("m1_stability needs kappa > 0"));
    }
    let t = d - z;
    let c = (t * kappa).cosh();
    // [sinh(y) - y] / (2 kappa^3) with y = 2 kappa t equals 4 t^3 (sinh(y) - y) / y^3.
    let y = 2.0 * kappa * t;
    let tail = t * 4.0 * t * t * t * sinh_minus_id_over_cube(y);
    Ok((2.0 * c * c + tail).sqrt())
}

fn check_z_delta_m0(z: f64, delta: f64, m0: f64, d: f64) -> Result<()> {
    if !(z > 0.0 && z <= d) {
        return Err(Error::param(format!("z = {z} outside (0, {d}]")));
    }
    check_delta(delta)?;
    if delta >= m0 {
        return Err(Error::param(format!(
            "the a-priori bound needs delta < M0 (delta = {delta}, M0 = {m0})"
        )));
    }
    Ok(())
}

/// Error bound of the a-priori rule at depth `z`:
/// `(2 sqrt(2 delta^{2(1-z/d)} + M0^{2(d-z)/d} [1 + d^3 (d-z) / (4 ln^3(M0/delta))])
///   + M0^{(d-z)/d}) delta^{z/d}`.
pub fn thm11_error_bound(z: f64, delta: f64, m0: f64, params: &WaveParams) -> Result<f64> {
    let d = params.d();
    check_z_delta_m0(z, delta, m0, d)?;
    let t = d - z;
    let l = (m0 / delta).ln();
    let inner = 2.0 * delta.powf(2.0 * (1.0 - z / d)) + m0.powf(2.0 * t / d) * (1.0 + d.powi(3) * t / (4.0 * l.powi(3)));
    Ok((2.0 * inner.sqrt() + m0.powf(t / d)) * delta.powf(z / d))
}

/// Error bound of the log rule: `(M0 + P) sqrt(2 + (d-z) / (4 kappa^3)) e^{-z kappa}`.
pub fn thm13_error_bound(z: f64, reg: &RegParams, params: &WaveParams, m0: f64, p: f64) -> Result<f64> {
    let d = params.d();
    if !(0.0..=d).contains(&z) {
        return Err(Error::param(format!("z = {z} outside [0, {d}]")));
    }
    let kappa = reg.kappa;
    if !(kappa > 0.0) {
        return Err(Error::param("thm13_error_bound needs kappa > 0"));
    }
    Ok((m0 + p) * (2.0 + (d - z) / (4.0 * kappa.powi(3))).sqrt() * (-z * kappa).exp())
}

/// Measure of the cutoff set: the a-priori upper bound
/// `k^2 + ln^2(delta / M0) / d^2` for the a-priori rule, the disk area
/// `pi / eps` otherwise.
pub fn theta_measure(reg: &RegParams, params: &WaveParams) -> f64 {
    match (reg.rule, reg.m0) {
        (Rule::Apriori, Some(m0)) => {
            let l = (reg.delta / m0).ln() / params.d();
            params.k() * params.k() + l * l
        }
        _ => std::f64::consts::PI / reg.eps,
    }
}

/// Bound evaluations at a set of depths.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub z: Vec<f64>,
    pub m1_of_z: Vec<f64>,
    /// Present when `M0` is known and `delta < M0`.
    pub thm11_bound: Option<Vec<f64>>,
    /// Present when both `M0` and `P` are known.
    pub thm13_bound: Option<Vec<f64>>,
    pub p_const: Option<f64>,
    pub theta_area: f64,
}

/// Evaluates every bound that applies to `reg` at depths `zs` (each in `(0, d]`).
pub fn bound_report(zs: &[f64], reg: &RegParams, params: &WaveParams) -> Result<BoundReport> {
    let m1_of_z = zs.iter().map(|&z| m1_stability(z, reg, params)).collect::<Result<_>>()?;
    let thm11_bound = match reg.m0 {
        Some(m0) if reg.delta > 0.0 && reg.delta < m0 => Some(
            zs.iter()
                .map(|&z| thm11_error_bound(z, reg.delta, m0, params))
                .collect::<Result<_>>()?,
        ),
        _ => None,
    };
    let thm13_bound = match (reg.m0, reg.p_const) {
        (Some(m0), Some(p)) => Some(
            zs.iter()
                .map(|&z| thm13_error_bound(z, reg, params, m0, p))
                .collect::<Result<_>>()?,
        ),
        _ => None,
    };
    Ok(BoundReport {
        z: zs.to_vec(),
        m1_of_z,
        thm11_bound,
        thm13_bound,
        p_const: reg.p_const,
        theta_area: theta_measure(reg, params),
    })
}
