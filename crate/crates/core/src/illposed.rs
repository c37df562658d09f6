//! The blow-up family: data `g_n`, `f_n` supported on a small square `W_n`
//! of high frequencies whose norms vanish as `n` grows while the solution
//! at `z = 0` grows like `e^{2 d n}`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::analytic::exact_uhat;
use crate::error::{Error, Result};
use crate::quadrature::GaussRule;
use crate::spectral::{CauchyData, ForcingSpectrum, ModeGrid, WaveParams};
use crate::truncation::{regularized_uhat, RegParams};

/// Largest admissible `2 d n`.
pub const EXPONENT_BUDGET: f64 = 700.0;

/// `g_hat_n = sqrt(n)` and `f_hat_n = sqrt(n) / d` on
/// `W_n = (n+k+1, n+k+1+1/n)^2`, zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupFamily {
    pub n: u32,
    pub params: WaveParams,
}

impl BlowupFamily {
    pub fn new(n: u32, params: WaveParams) -> Result<Self> {
        if n < 2 {
            return Err(Error::param(format!("family index must be >= 2, got {n}")));
        }
        Ok(BlowupFamily { n, params })
    }

    /// Lower corner and side of the square `W_n`.
    pub fn window(&self) -> (f64, f64) {
        let n = self.n as f64;
        (n + self.params.k() + 1.0, 1.0 / n)
    }

    pub fn g_amp(&self) -> f64 {
        (self.n as f64).sqrt()
    }

    pub fn f_amp(&self) -> f64 {
        self.g_amp() / self.params.d()
    }

    /// Midpoint sub-grid with `samples^2` points covering `W_n`, depth `z = 0` only.
    pub fn sub_grid(&self, samples: usize) -> Result<ModeGrid> {
        if samples == 0 {
            return Err(Error::param("sub-grid needs at least one sample per axis"));
        }
        let (lo, side) = self.window();
        let h = side / samples as f64;
        let mut rho = Vec::with_capacity(samples * samples);
        for i in 0..samples {
            for j in 0..samples {
                rho.push([lo + (i as f64 + 0.5) * h, lo + (j as f64 + 0.5) * h]);
            }
        }
        ModeGrid::new(rho, h, vec![0.0], self.params)
    }

    fn data(&self, modes: usize) -> CauchyData {
        let g = Complex64::new(self.g_amp(), 0.0);
        let f = Complex64::new(self.f_amp(), 0.0);
        CauchyData::without_neumann(vec![g; modes], ForcingSpectrum::from_fn(move |_, _| f))
    }
}

/// Squared data norms: closed form and midpoint-rule value on the sub-grid.
/// The forcing norm is taken over the whole slab `R^2 x (0, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyNorms {
    pub g_sq: f64,
    pub f_sq: f64,
    pub g_sq_discrete: f64,
    pub f_sq_discrete: f64,
}

pub fn family_norms(fam: &BlowupFamily, samples: usize) -> Result<FamilyNorms> {
    let grid = fam.sub_grid(samples)?;
    let n = fam.n as f64;
    let d = fam.params.d();
    let h = grid.spacing();
    let cell = h * h;
    let g_sq_discrete = crate::spectral::compensated_sum(grid.rho().iter().map(|_| n * cell));
    let f_amp_sq = fam.f_amp() * fam.f_amp();
    let f_sq_discrete = d * crate::spectral::compensated_sum(grid.rho().iter().map(|_| f_amp_sq * cell));
    Ok(FamilyNorms {
        g_sq: 1.0 / n,
        f_sq: 1.0 / (n * d),
        g_sq_discrete,
        f_sq_discrete,
    })
}

/// `(n^2 - 1) / (2 (n^2 + 1)) * e^{2 d n} / (4 n e^{2 k d})`.
pub fn blowup_lower_bound(fam: &BlowupFamily) -> f64 {
    let n = fam.n as f64;
    let (k, d) = (fam.params.k(), fam.params.d());
    (n * n - 1.0) / (2.0 * (n * n + 1.0)) * (2.0 * d * n - 2.0 * k * d).exp() / (4.0 * n)
}

fn check_budget(fam: &BlowupFamily) -> Result<()> {
    let e = 2.0 * fam.params.d() * fam.n as f64;
    if e >= EXPONENT_BUDGET {
        return Err(Error::validity(format!(
            "2 d n = {e} exceeds the double-precision exponent budget {EXPONENT_BUDGET}; use a smaller n"
        )));
    }
    Ok(())
}

/// `||u_n(., 0)||^2` by the midpoint rule on the sub-grid, optionally after truncation.
pub fn solution_norm_sq(
    fam: &BlowupFamily,
    samples: usize,
    rule: &GaussRule,
    reg: Option<&RegParams>,
) -> Result<f64> {
    check_budget(fam)?;
    let grid = Arc::new(fam.sub_grid(samples)?);
    let data = fam.data(grid.len());
    let u = match reg {
        Some(r) => regularized_uhat(&data, &grid, r, rule)?,
        None => exact_uhat(&data, &grid, rule)?,
    };
    Ok(u.parseval_norm(0).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupRow {
    pub n: u32,
    pub g_sq: f64,
    pub f_sq: f64,
    pub solution_sq: f64,
    pub lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupReport {
    pub rows: Vec<BlowupRow>,
}

impl BlowupReport {
    /// Least-squares slope of `ln ||u_n(., 0)||^2` against `n`.
    pub fn log_growth_slope(&self) -> f64 {
        let xs: Vec<f64> = self.rows.iter().map(|r| r.n as f64).collect();
        let ys: Vec<f64> = self.rows.iter().map(|r| r.solution_sq.ln()).collect();
        least_squares_slope(&xs, &ys)
    }
}

/// Slope of the least-squares line through `(xs, ys)`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Solution norms against data norms and the lower bound for each `n`.
/// Fails if a solution norm does not exceed its lower bound.
pub fn demo_blowup(ns: &[u32], samples: usize, params: &WaveParams, rule: &GaussRule) -> Result<BlowupReport> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let fam = BlowupFamily::new(n, *params)?;
        let norms = family_norms(&fam, samples)?;
        let solution_sq = solution_norm_sq(&fam, samples, rule, None)?;
        let lower_bound = blowup_lower_bound(&fam);
        if !(solution_sq > lower_bound) {
            return Err(Error::validity(format!(
                "n = {n}: solution norm {solution_sq:e} does not exceed the lower bound {lower_bound:e}"
            )));
        }
        rows.push(BlowupRow {
            n,
            g_sq: norms.g_sq_discrete,
            f_sq: norms.f_sq_discrete,
            solution_sq,
            lower_bound,
        });
    }
    Ok(BlowupReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ex1() -> WaveParams {
        WaveParams::new(1.0 / 3.0, 0.5).unwrap()
    }

    #[test]
    fn norms_closed_form() {
        let fam = BlowupFamily::new(4, ex1()).unwrap();
        let nm = family_norms(&fam, 100).unwrap();
        assert_eq!(nm.g_sq, 0.25);
        assert_eq!(nm.f_sq, 0.5);
        assert_relative_eq!(nm.g_sq_discrete, 0.25, max_relative = 1e-3);
        assert_relative_eq!(nm.f_sq_discrete, 0.5, max_relative = 1e-3);
        let mut last = f64::INFINITY;
        for n in 2..20 {
            let v = family_norms(&BlowupFamily::new(n, ex1()).unwrap(), 4).unwrap().g_sq;
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn window_inside_a1() {
        let fam = BlowupFamily::new(2, ex1()).unwrap();
        let g = fam.sub_grid(10).unwrap();
        assert!((0..g.len()).all(|m| g.region(m) == crate::spectral::Region::A1));
    }

    #[test]
    fn lower_bound_examples() {
        let p = ex1();
        let b2 = blowup_lower_bound(&BlowupFamily::new(2, p).unwrap());
        assert_relative_eq!(b2, 0.3 * 2f64.exp() / (8.0 * (1.0f64 / 3.0).exp()), max_relative = 1e-14);
        let r = blowup_lower_bound(&BlowupFamily::new(301, p).unwrap())
            / blowup_lower_bound(&BlowupFamily::new(300, p).unwrap());
        assert_relative_eq!(r, 1f64.exp(), max_relative = 1e-2);
    }

    #[test]
    fn small_n_rejected_and_budget_enforced() {
        assert!(BlowupFamily::new(1, ex1()).is_err());
        let fam = BlowupFamily::new(800, ex1()).unwrap();
        let rule = GaussRule::new(5).unwrap();
        assert!(matches!(solution_norm_sq(&fam, 4, &rule, None), Err(Error::Validity(_))));
    }

    #[test]
    fn truncation_zeroes_family() {
        let p = ex1();
        let rule = GaussRule::new(5).unwrap();
        let fam = BlowupFamily::new(6, p).unwrap();
        let reg = RegParams::manual(1.0 / 40.0, 0.0, &p, None).unwrap();
        assert_eq!(solution_norm_sq(&fam, 20, &rule, Some(&reg)).unwrap(), 0.0);
    }
}
