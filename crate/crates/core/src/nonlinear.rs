//! Nonlinear forcing `Delta u = F(u)`, `F(u) = f(u) - k^2 u`, with `f`
//! globally Lipschitz. Per mode the regularized mild solution solves
//!
//! `w(z) = g C0(d - z) + h S0(d - z) + int_z^d S0(s - z) F_hat(s, w(s)) ds`
//!
//! on the cutoff disk, where `C0`, `S0` are the cosh/sinh kernels of
//! `lambda0 = |rho|^2` (the wave number lives in `F`). Two solvers are
//! provided: Picard iteration of this map on a uniform depth grid, and the
//! backward Volterra march.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{mul_gcosh, mul_gsinh, gsinh, sinhc};
use crate::quadrature::GaussRule;
use crate::spectral::{compensated_sum, CauchyData, ForcingSpectrum, ModeGrid, SpectralField, WaveParams};
use crate::truncation::{eps_thm17, RegParams};

pub const DEFAULT_FP_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITERS: usize = 500;
pub const DEFAULT_STEPS: usize = 50;

/// Spectral action of a mode-diagonal forcing `F`.
pub trait LipschitzForcing: Sync {
    /// `F_hat(rho_mode, s)` for the mode value `w`.
    fn eval(&self, mode: usize, s: f64, w: Complex64) -> Complex64;
    /// Lipschitz constant `L_f` of `f`.
    fn lipschitz(&self) -> f64;
    fn k(&self) -> f64;
    /// `L_f + k^2`, the Lipschitz constant of `F`.
    fn ell_f(&self) -> f64 {
        self.lipschitz() + self.k() * self.k()
    }
}

/// `f(u) = a u + source`, hence `F_hat(w) = (a - k^2) w + source_hat(s)`.
#[derive(Debug, Clone)]
pub struct AffineForcing {
    pub a: f64,
    pub k: f64,
    pub source: ForcingSpectrum,
}

impl AffineForcing {
    pub fn new(a: f64, k: f64, source: ForcingSpectrum) -> Self {
        AffineForcing { a, k, source }
    }

    /// `F_hat(w) = -k^2 w - f_hat`, which turns the map into the linear
    /// problem with source `f_hat`.
    pub fn linear(k: f64, f_hat: &ForcingSpectrum) -> Self {
        AffineForcing::new(0.0, k, f_hat.scaled(-1.0))
    }
}

impl LipschitzForcing for AffineForcing {
    fn eval(&self, mode: usize, s: f64, w: Complex64) -> Complex64 {
        w * (self.a - self.k * self.k) + self.source.at(mode, s)
    }

    fn lipschitz(&self) -> f64 {
        self.a.abs()
    }

    fn k(&self) -> f64 {
        self.k
    }
}

/// Cutoff, solver tolerances and the depth step count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearRegSetup {
    pub reg: RegParams,
    /// A-priori constant of the error bound, if known.
    pub q: Option<f64>,
    pub max_iters: usize,
    pub fp_tol: f64,
    /// Number of uniform depth steps on `[0, d]`.
    pub steps: usize,
    /// Gauss order per depth step.
    pub quad_order: usize,
}

impl NonlinearRegSetup {
    pub fn new(reg: RegParams) -> Self {
        NonlinearRegSetup {
            reg,
            q: None,
            max_iters: DEFAULT_MAX_ITERS,
            fp_tol: DEFAULT_FP_TOL,
            steps: DEFAULT_STEPS,
            quad_order: crate::quadrature::DEFAULT_ORDER,
        }
    }

    /// `eps = d^2 / ln^2(1 / delta)`.
    pub fn thm17(delta: f64, params: &WaveParams) -> Result<Self> {
        Ok(NonlinearRegSetup::new(eps_thm17(delta, params)?))
    }

    fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::param("max_iters must be at least 1"));
        }
        if self.steps == 0 {
            return Err(Error::param("the depth partition needs at least one step"));
        }
        if !(self.fp_tol > 0.0) {
            return Err(Error::param(format!("fp_tol must be positive, got {}", self.fp_tol)));
        }
        Ok(())
    }

    /// Same modes as `grid`, depths `i d / steps`.
    pub fn depth_grid(&self, grid: &ModeGrid) -> Result<Arc<ModeGrid>> {
        self.validate()?;
        Ok(Arc::new(grid.with_depths(uniform_depths(grid.params().d(), self.steps))?))
    }
}

pub fn uniform_depths(d: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| if i == steps { d } else { d * i as f64 / steps as f64 })
        .collect()
}

fn steps_of(grid: &ModeGrid) -> Result<usize> {
    let z = grid.z();
    let d = grid.params().d();
    let m = z.len().saturating_sub(1);
    let uniform = m >= 1
        && z.iter()
            .enumerate()
            .all(|(i, &zi)| (zi - d * i as f64 / m as f64).abs() <= 1e-12 * d);
    if !uniform {
        return Err(Error::param("the nonlinear solvers need uniform depths 0 = z_0 < ... < z_M = d"));
    }
    Ok(m)
}

/// Quadrature of the mild-solution integral on a uniform depth grid: Gauss
/// nodes in every step, unknowns interpolated by local cubic Lagrange.
struct Propagator {
    steps: usize,
    h: f64,
    d: f64,
    /// Node offsets in `(0, 1)` and weights summing to 1.
    local: Vec<(f64, f64)>,
    /// Per quadrature point `j * N + n`: stencil start, length and coefficients.
    interp: Vec<(usize, usize, [f64; 4])>,
}

impl Propagator {
    fn new(d: f64, steps: usize, order: usize) -> Result<Self> {
        let rule = GaussRule::new(order)?;
        let local: Vec<(f64, f64)> = rule.mapped(0.0, 1.0).collect();
        let h = d / steps as f64;
        let len = 4.min(steps + 1);
        let mut interp = Vec::with_capacity(steps * local.len());
        for j in 0..steps {
            let start = (j as isize - 1).clamp(0, (steps + 1 - len) as isize) as usize;
            for &(t, _) in &local {
                let x = j as f64 + t;
                let mut c = [0.0; 4];
                for (l, cl) in c.iter_mut().enumerate().take(len) {
                    let xl = (start + l) as f64;
                    *cl = (0..len)
                        .filter(|&m| m != l)
                        .map(|m| (x - (start + m) as f64) / (xl - (start + m) as f64))
                        .product();
                }
                interp.push((start, len, c));
            }
        }
        Ok(Propagator {
            steps,
            h,
            d,
            local,
            interp,
        })
    }

    fn order(&self) -> usize {
        self.local.len()
    }

    /// `kern[delta * N + n] = h w_n S0((delta + t_n) h)`.
    fn kernel(&self, lambda0: f64) -> Vec<f64> {
        let mut k = Vec::with_capacity(self.steps * self.order());
        for delta in 0..self.steps {
            for &(t, w) in &self.local {
                k.push(self.h * w * gsinh(lambda0, (delta as f64 + t) * self.h));
            }
        }
        k
    }

    fn base(&self, g: Complex64, h: Complex64, lambda0: f64) -> Vec<Complex64> {
        (0..=self.steps)
            .map(|i| {
                let t = self.d - self.h * i as f64;
                mul_gcosh(g, lambda0, t) + mul_gsinh(h, lambda0, t)
            })
            .collect()
    }

    fn apply<F: LipschitzForcing + ?Sized>(
        &self,
        mode: usize,
        base: &[Complex64],
        kern: &[f64],
        w: &[Complex64],
        forcing: &F,
    ) -> Vec<Complex64> {
        let n_ord = self.order();
        let mut fq = Vec::with_capacity(self.interp.len());
        for (q, &(start, len, c)) in self.interp.iter().enumerate() {
            let j = q / n_ord;
            let s = (j as f64 + self.local[q % n_ord].0) * self.h;
            let mut wq = Complex64::new(0.0, 0.0);
            for l in 0..len {
                wq += w[start + l] * c[l];
            }
            fq.push(forcing.eval(mode, s, wq));
        }
        let mut out = base.to_vec();
        for (i, o) in out.iter_mut().enumerate().take(self.steps) {
            let mut acc = Complex64::new(0.0, 0.0);
            for q in (i * n_ord)..(self.steps * n_ord) {
                acc += fq[q] * kern[q - i * n_ord];
            }
            *o += acc;
        }
        out
    }
}

fn mode_inputs(grid: &ModeGrid, data: &CauchyData, reg: &RegParams, prop: &Propagator) -> Vec<Option<(Vec<Complex64>, Vec<f64>)>> {
    let keep = reg.mask(grid);
    (0..grid.len())
        .into_par_iter()
        .map(|m| {
            if !keep[m] {
                return None;
            }
            let l0 = grid.rho_norm_sq(m);
            Some((prop.base(data.g_hat[m], data.h_hat[m], l0), prop.kernel(l0)))
        })
        .collect()
}

fn check_finite(grid: &ModeGrid, m: usize, row: &[Complex64]) -> Result<()> {
    if let Some(i) = row.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(crate::analytic::overflow(grid, m, grid.z()[i]));
    }
    Ok(())
}

fn to_field(grid: &Arc<ModeGrid>, rows: Vec<Vec<Complex64>>) -> Result<SpectralField> {
    let nz = grid.z().len();
    let mut values = Array2::zeros((grid.len(), nz));
    for (m, r) in rows.into_iter().enumerate() {
        for (i, v) in r.into_iter().enumerate() {
            values[(m, i)] = v;
        }
    }
    SpectralField::from_values(Arc::clone(grid), values)
}

/// One application of the mild-solution map to `w`, whose grid must carry
/// uniform depths on `[0, d]`. Modes outside the cutoff disk map to zero.
pub fn apply_g<F: LipschitzForcing + ?Sized>(
    w: &SpectralField,
    data: &CauchyData,
    setup: &NonlinearRegSetup,
    forcing: &F,
) -> Result<SpectralField> {
    setup.validate()?;
    let grid = w.grid();
    data.check_grid(grid)?;
    let steps = steps_of(grid)?;
    let prop = Propagator::new(grid.params().d(), steps, setup.quad_order)?;
    let inputs = mode_inputs(grid, data, &setup.reg, &prop);
    let nz = steps + 1;
    let rows: Vec<Vec<Complex64>> = inputs
        .par_iter()
        .enumerate()
        .map(|(m, inp)| match inp {
            Some((base, kern)) => {
                let wr: Vec<Complex64> = w.row(m).to_vec();
                let r = prop.apply(m, base, kern, &wr, forcing);
                check_finite(grid, m, &r)?;
                Ok(r)
            }
            None => Ok(vec![Complex64::new(0.0, 0.0); nz]),
        })
        .collect::<Result<_>>()?;
    to_field(grid, rows)
}

/// Result of [`fixed_point_solve`].
#[derive(Debug, Clone)]
pub struct FixedPointOutcome {
    pub field: SpectralField,
    pub iterations: usize,
    pub residual: f64,
    /// Residual after each iteration.
    pub history: Vec<f64>,
}

/// `sup_z sqrt(spacing^2 sum_m |a - b|^2)`, summed in mode order.
fn sup_residual(a: &[Vec<Complex64>], b: &[Vec<Complex64>], spacing: f64, nz: usize) -> f64 {
    (0..nz)
        .map(|i| {
            let s = compensated_sum(a.iter().zip(b).map(|(x, y)| (x[i] - y[i]).norm_sqr()));
            (spacing * spacing * s).sqrt()
        })
        .fold(0.0, f64::max)
}

/// Picard iteration `w <- G(w)` from `w_0 = G(0)` on the depths
/// `i d / steps`, stopping once the sup over depths of the discrete `L^2`
/// residual drops below `fp_tol`.
pub fn fixed_point_solve<F: LipschitzForcing + ?Sized>(
    data: &CauchyData,
    setup: &NonlinearRegSetup,
    forcing: &F,
    grid: &ModeGrid,
) -> Result<FixedPointOutcome> {
    let out_grid = setup.depth_grid(grid)?;
    data.check_grid(&out_grid)?;
    let prop = Propagator::new(out_grid.params().d(), setup.steps, setup.quad_order)?;
    let inputs = mode_inputs(&out_grid, data, &setup.reg, &prop);
    let nz = setup.steps + 1;
    let zero_row = vec![Complex64::new(0.0, 0.0); nz];
    let step = |w: &[Vec<Complex64>]| -> Result<Vec<Vec<Complex64>>> {
        inputs
            .par_iter()
            .enumerate()
            .map(|(m, inp)| match inp {
                Some((base, kern)) => {
                    let r = prop.apply(m, base, kern, &w[m], forcing);
                    check_finite(&out_grid, m, &r)?;
                    Ok(r)
                }
                None => Ok(zero_row.clone()),
            })
            .collect()
    };
    let zeros = vec![zero_row.clone(); out_grid.len()];
    let mut w = step(&zeros)?;
    let mut history = Vec::new();
    for it in 1..=setup.max_iters {
        let gw = step(&w)?;
        let res = sup_residual(&w, &gw, out_grid.spacing(), nz);
        history.push(res);
        w = gw;
        if res < setup.fp_tol {
            return Ok(FixedPointOutcome {
                field: to_field(&out_grid, w)?,
                iterations: it,
                residual: res,
                history,
            });
        }
    }
    Err(Error::Convergence {
        iterations: setup.max_iters,
        last_residual: *history.last().unwrap_or(&f64::NAN),
        history,
    })
}

/// Backward Volterra march on the depths `z_i = i d / M`:
/// `u_M = g_hat`, and for `i = M-1, ..., 0`
/// `u_i = r(z_i) - (k^2 / lambda0) sum_{j=i}^{M-1} [cosh((z_i - z_{j+1}) a) - cosh((z_i - z_j) a)] u_{j+1}`,
/// `a = |rho|`, `lambda0 = a^2`. Modes outside the cutoff disk are zero.
pub fn volterra_march<R>(
    rhat: R,
    g_hat: &[Complex64],
    setup: &NonlinearRegSetup,
    grid: &ModeGrid,
) -> Result<SpectralField>
where
    R: Fn(usize, f64) -> Complex64 + Sync,
{
    let out_grid = setup.depth_grid(grid)?;
    if g_hat.len() != out_grid.len() {
        return Err(Error::param(format!(
            "g_hat has {} modes, grid has {}",
            g_hat.len(),
            out_grid.len()
        )));
    }
    let k2 = out_grid.params().k().powi(2);
    let m_steps = setup.steps;
    let h = out_grid.params().d() / m_steps as f64;
    let z = out_grid.z().to_vec();
    let keep = setup.reg.mask(&out_grid);
    let rows: Vec<Vec<Complex64>> = (0..out_grid.len())
        .into_par_iter()
        .map(|m| {
            let mut u = vec![Complex64::new(0.0, 0.0); m_steps + 1];
            if !keep[m] {
                return Ok(u);
            }
            let a = out_grid.rho_norm_sq(m).sqrt();
            // coupling[delta] = [cosh((delta+1) h a) - cosh(delta h a)] / a^2
            let coupling: Vec<f64> = (0..m_steps)
                .map(|delta| {
                    let p = (2 * delta + 1) as f64 * h / 2.0;
                    let q = h / 2.0;
                    2.0 * p * q * sinhc(p * a) * sinhc(q * a)
                })
                .collect();
            u[m_steps] = g_hat[m];
            for i in (0..m_steps).rev() {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in (i..m_steps).rev() {
                    acc += u[j + 1] * coupling[j - i];
                }
                u[i] = rhat(m, z[i]) - acc * k2;
            }
            check_finite(&out_grid, m, &u)?;
            Ok(u)
        })
        .collect::<Result<_>>()?;
    to_field(&out_grid, rows)
}

/// `r(rho, z)` of the second worked example (`d = pi / sqrt 3`, `k = sqrt 5`):
/// `g_hat [cosh((d-z) a) + C ((pi/a) sin(z pi/d) sinh((d-z) a) - d (1 + cos(z pi/d) cosh((d-z) a)))]`
/// with `g_hat = -2 pi e^{-2 pi^2 |rho|^2}`, `a = |rho|` and
/// `C = d (2 - 4 pi^2 |rho|^2) / (pi^2 + |rho|^2 d^2)`.
pub fn example2_rhat(rho: [f64; 2], z: f64, params: &WaveParams) -> Complex64 {
    let d = params.d();
    let r2 = rho[0] * rho[0] + rho[1] * rho[1];
    let a = r2.sqrt();
    let g = -2.0 * PI * (-2.0 * PI * PI * r2).exp();
    let c = d * (2.0 - 4.0 * PI * PI * r2) / (PI * PI + r2 * d * d);
    let t = d - z;
    let ch = (t * a).cosh();
    let sh_over_a = gsinh(r2, t);
    let w = z * PI / d;
    Complex64::new(g * (ch + c * (PI * w.sin() * sh_over_a - d * (1.0 + w.cos() * ch))), 0.0)
}

/// `(sqrt(Q) e^{d^2 l^2 (d-z) / 2} + sqrt(3 (d^2 + 1)) e^{3 d^2 l^2 (d-z) / 2}) delta^{z/d}`.
pub fn thm17_error_bound(z: f64, delta: f64, q: f64, ell_f: f64, params: &WaveParams) -> Result<f64> {
    let d = params.d();
    if !(z > 0.0 && z <= d) {
        return Err(Error::param(format!("z = {z} outside (0, {d}]")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !(q > 0.0) {
        return Err(Error::param(format!("Q must be positive, got {q}")));
    }
    let e = d * d * ell_f * ell_f * (d - z);
    Ok(((q.sqrt() * (0.5 * e).exp()) + (3.0 * (d * d + 1.0)).sqrt() * (1.5 * e).exp()) * delta.powf(z / d))
}

/// Factor bounding `||G^m w - G^m v||(z)` by `sup_z ||w - v||`:
/// `sqrt((e^{2d/sqrt(eps)} d^2 l^2)^m (d-z)^m / m!)`.
pub fn contraction_envelope(m: u32, z: f64, eps: f64, ell_f: f64, d: f64) -> f64 {
    let base = (2.0 * d / eps.sqrt()).exp() * d * d * ell_f * ell_f * (d - z);
    let log_fact: f64 = (1..=m).map(|i| (i as f64).ln()).sum();
    (0.5 * (m as f64 * base.ln() - log_fact)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ex2() -> WaveParams {
        WaveParams::new(5f64.sqrt(), PI / 3f64.sqrt()).unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn propagator_interpolates_cubics() {
        let p = Propagator::new(1.0, 6, 5).unwrap();
        let w: Vec<Complex64> = (0..=6).map(|i| c((i as f64 / 6.0).powi(3))).collect();
        for (q, &(start, len, cf)) in p.interp.iter().enumerate() {
            let s = ((q / 5) as f64 + p.local[q % 5].0) * p.h;
            let v: f64 = (0..len).map(|l| cf[l] * w[start + l].re).sum();
            assert!((v - s.powi(3)).abs() < 1e-14);
        }
    }

    #[test]
    fn apply_g_homogeneous_cases() {
        let p = ex2();
        let setup = NonlinearRegSetup::new(RegParams::manual(0.01, 0.0, &p, None).unwrap());
        let grid = ModeGrid::new(vec![[0.0, 0.0], [1.0, 0.5]], 0.1, vec![0.0], p).unwrap();
        let g = setup.depth_grid(&grid).unwrap();
        let data = CauchyData::new(vec![c(2.0), c(1.5)], vec![c(0.5), c(0.0)], ForcingSpectrum::zero()).unwrap();
        let zero_f = AffineForcing::new(p.k() * p.k(), p.k(), ForcingSpectrum::zero());
        let w = SpectralField::zeros(Arc::clone(&g));
        let out = apply_g(&w, &data, &setup, &zero_f).unwrap();
        let d = p.d();
        for (i, &z) in g.z().iter().enumerate() {
            assert_relative_eq!(out.value(0, i).re, 2.0 + 0.5 * (d - z), max_relative = 1e-14);
            let a = 1.25f64.sqrt();
            assert_relative_eq!(out.value(1, i).re, 1.5 * ((d - z) * a).cosh(), max_relative = 1e-14);
        }
    }

    #[test]
    fn zero_forcing_converges_in_one_iteration() {
        let p = ex2();
        let setup = NonlinearRegSetup::new(RegParams::manual(0.1, 0.0, &p, None).unwrap());
        let grid = ModeGrid::square_window(1.0, 0.5, vec![0.0], p).unwrap();
        let data = CauchyData::without_neumann(vec![c(1.0); grid.len()], ForcingSpectrum::zero());
        let f = AffineForcing::new(p.k() * p.k(), p.k(), ForcingSpectrum::zero());
        let out = fixed_point_solve(&data, &setup, &f, &grid).unwrap();
        assert_eq!(out.iterations, 1);
        assert_eq!(out.residual, 0.0);
    }

    #[test]
    fn non_convergence_reports_history() {
        let p = ex2();
        let mut setup = NonlinearRegSetup::new(RegParams::manual(0.1, 0.0, &p, None).unwrap());
        setup.max_iters = 2;
        setup.fp_tol = 1e-300;
        let grid = ModeGrid::square_window(1.0, 0.5, vec![0.0], p).unwrap();
        let data = CauchyData::without_neumann(vec![c(1.0); grid.len()], ForcingSpectrum::zero());
        let f = AffineForcing::new(0.0, p.k(), ForcingSpectrum::zero());
        match fixed_point_solve(&data, &setup, &f, &grid) {
            Err(Error::Convergence { iterations, history, .. }) => {
                assert_eq!(iterations, 2);
                assert_eq!(history.len(), 2);
            }
            other => panic!("expected a convergence error, got {other:?}"),
        }
    }

    #[test]
    fn march_without_coupling_returns_r() {
        let p = WaveParams::new(1e-12, 1.0).unwrap();
        let setup = NonlinearRegSetup::new(RegParams::manual(0.5, 0.0, &p, None).unwrap());
        let grid = ModeGrid::new(vec![[0.3, 0.4]], 0.1, vec![0.0], p).unwrap();
        let u = volterra_march(|_, z| c(z * z), &[c(1.0)], &setup, &grid).unwrap();
        for (i, &z) in u.grid().z().iter().enumerate().take(50) {
            assert!((u.value(0, i).re - z * z).abs() < 1e-20);
        }
        assert_eq!(u.value(0, 50), c(1.0));
    }

    #[test]
    fn march_single_step() {
        let p = ex2();
        let mut setup = NonlinearRegSetup::new(RegParams::manual(0.01, 0.0, &p, None).unwrap());
        setup.steps = 1;
        let grid = ModeGrid::new(vec![[0.6, 0.8], [0.0, 0.0]], 0.1, vec![0.0], p).unwrap();
        let u = volterra_march(|_, _| c(0.7), &[c(2.0), c(3.0)], &setup, &grid).unwrap();
        let d = p.d();
        let want = 0.7 - 5.0 * (d.cosh() - 1.0) / 1.0 * 2.0;
        assert_relative_eq!(u.value(0, 0).re, want, max_relative = 1e-13);
        let want0 = 0.7 - 5.0 * (d * d / 2.0) * 3.0;
        assert_relative_eq!(u.value(1, 0).re, want0, max_relative = 1e-13);
    }

    #[test]
    fn rhat_boundary_and_origin() {
        let p = ex2();
        for rho in [[0.1, 0.2], [0.5, -0.3], [0.0, 0.0]] {
            let r2: f64 = rho[0] * rho[0] + rho[1] * rho[1];
            let g = -2.0 * PI * (-2.0 * PI * PI * r2).exp();
            assert_relative_eq!(example2_rhat(rho, p.d(), &p).re, g, max_relative = 1e-12);
        }
        let v = example2_rhat([0.0, 0.0], 0.4, &p);
        assert!(v.re.is_finite());
        let near = example2_rhat([1e-9, 0.0], 0.4, &p);
        assert_relative_eq!(v.re, near.re, max_relative = 1e-12);
    }

    #[test]
    fn thm17_at_boundary() {
        let p = ex2();
        let b = thm17_error_bound(p.d(), 1e-5, 4.0, 5.0, &p).unwrap();
        assert_relative_eq!(b, (2.0 + (3.0 * (p.d() * p.d() + 1.0)).sqrt()) * 1e-5, max_relative = 1e-14);
        let r1 = thm17_error_bound(1.0, 1e-3, 1.0, 5.0, &p).unwrap() / 1e-3f64.powf(1.0 / p.d());
        let r2 = thm17_error_bound(1.0, 1e-9, 1.0, 5.0, &p).unwrap() / 1e-9f64.powf(1.0 / p.d());
        assert_relative_eq!(r1, r2, max_relative = 1e-12);
        assert!(thm17_error_bound(1.0, 2.0, 1.0, 5.0, &p).is_err());
    }

    #[test]
    fn affine_forcing_lipschitz() {
        let f = AffineForcing::new(0.3, 2.0, ForcingSpectrum::zero());
        assert_eq!(f.ell_f(), 0.3 + 4.0);
        let a = f.eval(0, 0.1, c(1.0)) - f.eval(0, 0.1, c(-0.5));
        assert!(a.norm() <= f.ell_f() * 1.5);
    }
}
