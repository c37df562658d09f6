//! Shared numeric foundation: wave parameters, frequency/depth grids, region
//! labels, complex spectral fields, forcing spectra and Parseval norms.
//!
//! Frequencies follow the transform convention
//! `u_hat(rho) = int u(xi) exp(-2 pi i <rho, xi>) d xi`, and the mode symbol is
//! `lambda = |rho|^2 - k^2` exactly as written, without a `4 pi^2` factor.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use ndarray::{Array2, ArrayView1};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::GaussRule;

/// Absolute tolerance (scaled by `max(1, k^2)`) under which a mode counts as `A2`.
pub const A2_TOLERANCE: f64 = 1e-12;

/// Wave number `k` and slab depth `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParams {
    k: f64,
    d: f64,
}

impl WaveParams {
    pub fn new(k: f64, d: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::param(format!("wave number k must be positive, got {k}")));
        }
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::param(format!("slab depth d must be positive, got {d}")));
        }
        Ok(WaveParams { k, d })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// `k d < pi / 2`, the condition under which the `A3` branch stays bounded.
    pub fn small_kd(&self) -> bool {
        self.k * self.d < FRAC_PI_2
    }

    pub(crate) fn require_small_kd(&self, what: &str) -> Result<()> {
        if self.small_kd() {
            Ok(())
        } else {
            Err(Error::validity(format!(
                "{what} requires k*d < pi/2 (k = {}, d = {}, kd = {})",
                self.k,
                self.d,
                self.k * self.d
            )))
        }
    }
}

/// Sign class of `lambda = |rho|^2 - k^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `|rho| > k`: exponentially unstable modes.
    A1,
    /// `|rho| = k` (within tolerance).
    A2,
    /// `|rho| < k`: oscillatory modes.
    A3,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::A1 => "A1",
            Region::A2 => "A2",
            Region::A3 => "A3",
        };
        f.write_str(s)
    }
}

/// `|rho|^2 - k^2`.
pub fn lambda_of(rho: [f64; 2], params: &WaveParams) -> f64 {
    rho[0] * rho[0] + rho[1] * rho[1] - params.k * params.k
}

pub fn classify(lambda: f64, params: &WaveParams) -> Region {
    let tol = A2_TOLERANCE * (params.k * params.k).max(1.0);
    if lambda.abs() <= tol {
        Region::A2
    } else if lambda > 0.0 {
        Region::A1
    } else {
        Region::A3
    }
}

/// Finite set of frequency samples together with the depth samples every
/// field on this grid is evaluated at.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeGrid {
    rho: Vec<[f64; 2]>,
    spacing: f64,
    z: Vec<f64>,
    lambda: Vec<f64>,
    region: Vec<Region>,
    params: WaveParams,
}

impl ModeGrid {
    pub fn new(rho: Vec<[f64; 2]>, spacing: f64, z: Vec<f64>, params: WaveParams) -> Result<Self> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::param(format!("grid spacing must be positive, got {spacing}")));
        }
        if z.is_empty() {
            return Err(Error::param("grid needs at least one depth sample"));
        }
        if z.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::param("depth samples must be strictly ascending"));
        }
        if z[0] < 0.0 || z[z.len() - 1] > params.d() {
            return Err(Error::param(format!(
                "depth samples must lie in [0, {}]",
                params.d()
            )));
        }
        if rho.iter().any(|r| !(r[0].is_finite() && r[1].is_finite())) {
            return Err(Error::param("non-finite frequency sample"));
        }
        let lambda: Vec<f64> = rho.iter().map(|&r| lambda_of(r, &params)).collect();
        let region = lambda.iter().map(|&l| classify(l, &params)).collect();
        Ok(ModeGrid {
            rho,
            spacing,
            z,
            lambda,
            region,
            params,
        })
    }

    /// Uniform samples of the square `[-half_width, half_width]^2`, `rho_1`
    /// major. The sample count per axis is `2 floor(half_width / spacing) + 1`.
    pub fn square_window(half_width: f64, spacing: f64, z: Vec<f64>, params: WaveParams) -> Result<Self> {
        if !(half_width >= 0.0 && half_width.is_finite()) {
            return Err(Error::param(format!("window half-width must be nonnegative, got {half_width}")));
        }
        if !(spacing > 0.0) {
            return Err(Error::param(format!("grid spacing must be positive, got {spacing}")));
        }
        let n = (half_width / spacing + 1e-9).floor() as i64;
        let mut rho = Vec::with_capacity(((2 * n + 1) * (2 * n + 1)) as usize);
        for i in -n..=n {
            for j in -n..=n {
                rho.push([i as f64 * spacing, j as f64 * spacing]);
            }
        }
        ModeGrid::new(rho, spacing, z, params)
    }

    /// Sub-grid keeping the modes for which `keep(rho, region)` holds, in order.
    pub fn retain<F>(&self, mut keep: F) -> ModeGrid
    where
        F: FnMut([f64; 2], Region) -> bool,
    {
        let mut out = ModeGrid {
            rho: Vec::new(),
            spacing: self.spacing,
            z: self.z.clone(),
            lambda: Vec::new(),
            region: Vec::new(),
            params: self.params,
        };
        for i in 0..self.len() {
            if keep(self.rho[i], self.region[i]) {
                out.rho.push(self.rho[i]);
                out.lambda.push(self.lambda[i]);
                out.region.push(self.region[i]);
            }
        }
        out
    }

    /// Same modes, different depth samples.
    pub fn with_depths(&self, z: Vec<f64>) -> Result<ModeGrid> {
        ModeGrid::new(self.rho.clone(), self.spacing, z, self.params)
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn rho(&self) -> &[[f64; 2]] {
        &self.rho
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn params(&self) -> &WaveParams {
        &self.params
    }

    pub fn lambda(&self, mode: usize) -> f64 {
        self.lambda[mode]
    }

    pub fn region(&self, mode: usize) -> Region {
        self.region[mode]
    }

    pub fn rho_norm_sq(&self, mode: usize) -> f64 {
        let r = self.rho[mode];
        r[0] * r[0] + r[1] * r[1]
    }

    /// Index of the depth sample equal to `z` (within `1e-12`).
    pub fn z_index(&self, z: f64) -> Result<usize> {
        self.z
            .iter()
            .position(|&s| (s - z).abs() <= 1e-12 * self.params.d().max(1.0))
            .ok_or_else(|| Error::param(format!("depth {z} is not a sample of this grid")))
    }

    /// Index of the depth sample closest to `z`.
    pub fn nearest_z_index(&self, z: f64) -> usize {
        let mut best = 0;
        for (i, &s) in self.z.iter().enumerate() {
            if (s - z).abs() < (self.z[best] - z).abs() {
                best = i;
            }
        }
        best
    }
}

/// Neumaier-compensated sum in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Complex field over the modes and depths of a [`ModeGrid`]. Rows are modes,
/// columns depth samples.
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Arc<ModeGrid>,
    values: Array2<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: Arc<ModeGrid>) -> Self {
        let shape = (grid.len(), grid.z().len());
        SpectralField {
            grid,
            values: Array2::zeros(shape),
        }
    }

    /// Wraps `values`, rejecting a wrong shape or any non-finite entry.
    pub fn from_values(grid: Arc<ModeGrid>, values: Array2<Complex64>) -> Result<Self> {
        if values.dim() != (grid.len(), grid.z().len()) {
            return Err(Error::param(format!(
                "field shape {:?} does not match grid ({}, {})",
                values.dim(),
                grid.len(),
                grid.z().len()
            )));
        }
        if let Some(((m, zi), _)) = values
            .indexed_iter()
            .find(|(_, v)| !(v.re.is_finite() && v.im.is_finite()))
        {
            let r = grid.rho()[m];
            return Err(Error::validity(format!(
                "non-finite value at mode {m} (rho = ({:.6}, {:.6}), region {}) depth z = {}",
                r[0],
                r[1],
                grid.region(m),
                grid.z()[zi]
            )));
        }
        Ok(SpectralField { grid, values })
    }

    /// Builds a field row by row. `row(mode)` must return one value per depth.
    pub fn from_rows<F>(grid: Arc<ModeGrid>, row: F) -> Result<Self>
    where
        F: Fn(usize) -> Result<Vec<Complex64>> + Sync,
    {
        use rayon::prelude::*;
        let nz = grid.z().len();
        let rows: Vec<Vec<Complex64>> = (0..grid.len())
            .into_par_iter()
            .map(&row)
            .collect::<Result<_>>()?;
        let mut values = Array2::zeros((grid.len(), nz));
        for (m, r) in rows.into_iter().enumerate() {
            if r.len() != nz {
                return Err(Error::param(format!(
                    "row {m} has {} depth values, expected {nz}",
                    r.len()
                )));
            }
            for (zi, v) in r.into_iter().enumerate() {
                values[(m, zi)] = v;
            }
        }
        SpectralField::from_values(grid, values)
    }

    pub fn grid(&self) -> &Arc<ModeGrid> {
        &self.grid
    }

    pub fn values(&self) -> &Array2<Complex64> {
        &self.values
    }

    pub fn value(&self, mode: usize, zi: usize) -> Complex64 {
        self.values[(mode, zi)]
    }

    /// Values of every mode at depth index `zi`.
    pub fn at_depth(&self, zi: usize) -> ArrayView1<'_, Complex64> {
        self.values.column(zi)
    }

    pub fn row(&self, mode: usize) -> ArrayView1<'_, Complex64> {
        self.values.row(mode)
    }

    pub fn same_grid(&self, other: &SpectralField) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    pub fn scaled(&self, a: Complex64) -> SpectralField {
        SpectralField {
            grid: Arc::clone(&self.grid),
            values: self.values.mapv(|v| v * a),
        }
    }

    pub fn add(&self, other: &SpectralField) -> Result<SpectralField> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SpectralField) -> Result<SpectralField> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &SpectralField, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<SpectralField> {
        if !self.same_grid(other) {
            return Err(Error::param("fields live on different grids"));
        }
        let mut values = self.values.clone();
        values.zip_mut_with(&other.values, |a, &b| *a = f(*a, b));
        Ok(SpectralField {
            grid: Arc::clone(&self.grid),
            values,
        })
    }

    /// Same values with every mode outside `keep` set to zero.
    pub fn masked(&self, keep: &[bool]) -> SpectralField {
        let mut values = self.values.clone();
        for (m, mut row) in values.rows_mut().into_iter().enumerate() {
            if !keep[m] {
                row.fill(Complex64::new(0.0, 0.0));
            }
        }
        SpectralField {
            grid: Arc::clone(&self.grid),
            values,
        }
    }

    /// Discrete `L^2` norm over the modes at depth index `zi`:
    /// `sqrt(spacing^2 * sum |v|^2)`, summed in mode order with compensation.
    pub fn parseval_norm(&self, zi: usize) -> f64 {
        parseval_norm(self, zi)
    }
}

/// See [`SpectralField::parseval_norm`].
pub fn parseval_norm(field: &SpectralField, zi: usize) -> f64 {
    let h = field.grid.spacing();
    let s = compensated_sum(field.values.column(zi).iter().map(|v| v.norm_sqr()));
    (h * h * s).sqrt()
}

/// Discrete `L^2` norm of per-mode values.
pub fn discrete_l2(values: &[Complex64], spacing: f64) -> f64 {
    (spacing * spacing * compensated_sum(values.iter().map(|v| v.norm_sqr()))).sqrt()
}

/// Forcing spectrum `f_hat(rho_m, s)`: callable at any depth `s`, since the
/// depth integrals sample it at quadrature nodes rather than grid depths.
#[derive(Clone)]
pub struct ForcingSpectrum {
    eval: Arc<dyn Fn(usize, f64) -> Complex64 + Send + Sync>,
    zero: bool,
}

impl fmt::Debug for ForcingSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ForcingSpectrum")
            .field("zero", &self.zero)
            .finish_non_exhaustive()
    }
}

impl ForcingSpectrum {
    pub fn zero() -> Self {
        ForcingSpectrum {
            eval: Arc::new(|_, _| Complex64::new(0.0, 0.0)),
            zero: true,
        }
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(usize, f64) -> Complex64 + Send + Sync + 'static,
    {
        ForcingSpectrum {
            eval: Arc::new(f),
            zero: false,
        }
    }

    /// `f_hat(rho_m, s) = coeffs[m] * profile(s)`.
    pub fn separable<P>(coeffs: Vec<Complex64>, profile: P) -> Self
    where
        P: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ForcingSpectrum::from_fn(move |m, s| coeffs[m] * profile(s))
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn at(&self, mode: usize, s: f64) -> Complex64 {
        (self.eval)(mode, s)
    }

    pub fn scaled(&self, a: f64) -> Self {
        let inner = Arc::clone(&self.eval);
        ForcingSpectrum {
            eval: Arc::new(move |m, s| inner(m, s) * a),
            zero: self.zero,
        }
    }

    pub fn masked(&self, keep: Arc<Vec<bool>>) -> Self {
        let inner = Arc::clone(&self.eval);
        ForcingSpectrum {
            eval: Arc::new(move |m, s| {
                if keep[m] {
                    inner(m, s)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
            zero: self.zero,
        }
    }

    pub fn plus(&self, other: &ForcingSpectrum) -> Self {
        let a = Arc::clone(&self.eval);
        let b = Arc::clone(&other.eval);
        ForcingSpectrum {
            eval: Arc::new(move |m, s| a(m, s) + b(m, s)),
            zero: self.zero && other.zero,
        }
    }
}

/// Spectral Cauchy data: value `g_hat` and normal derivative `h_hat` at
/// `z = d` per mode, and the forcing spectrum.
#[derive(Debug, Clone)]
pub struct CauchyData {
    pub g_hat: Vec<Complex64>,
    pub h_hat: Vec<Complex64>,
    pub f_hat: ForcingSpectrum,
}

impl CauchyData {
    pub fn new(g_hat: Vec<Complex64>, h_hat: Vec<Complex64>, f_hat: ForcingSpectrum) -> Result<Self> {
        if g_hat.len() != h_hat.len() {
            return Err(Error::param("g_hat and h_hat have different mode counts"));
        }
        Ok(CauchyData { g_hat, h_hat, f_hat })
    }

    /// Data with `h == 0`.
    pub fn without_neumann(g_hat: Vec<Complex64>, f_hat: ForcingSpectrum) -> Self {
        let n = g_hat.len();
        CauchyData {
            g_hat,
            h_hat: vec![Complex64::new(0.0, 0.0); n],
            f_hat,
        }
    }

    pub fn zeros(modes: usize) -> Self {
        CauchyData::without_neumann(vec![Complex64::new(0.0, 0.0); modes], ForcingSpectrum::zero())
    }

    pub fn modes(&self) -> usize {
        self.g_hat.len()
    }

    pub fn has_neumann(&self) -> bool {
        self.h_hat.iter().any(|h| h.norm_sqr() != 0.0)
    }

    pub(crate) fn check_grid(&self, grid: &ModeGrid) -> Result<()> {
        if self.modes() != grid.len() {
            return Err(Error::param(format!(
                "data has {} modes, grid has {}",
                self.modes(),
                grid.len()
            )));
        }
        Ok(())
    }
}

fn panels_for(rho_inf: f64, c: f64) -> usize {
    (4.0 * rho_inf * c.max(1.0) + 1.0).ceil() as usize
}

/// `int_{(0,c)^2} fn(xi) exp(-2 pi i <rho, xi>) d xi` by a composite tensor
/// Gauss-Legendre rule of the given order per axis. Each panel spans at most
/// `1 / (4 |rho|_inf + 1)` of the side.
pub fn fourier_coeff_rect<F>(f: F, c: f64, rho: [f64; 2], order: usize) -> Result<Complex64>
where
    F: Fn(f64, f64) -> f64,
{
    if !(c > 0.0) {
        return Err(Error::param(format!("square side must be positive, got {c}")));
    }
    let rule = GaussRule::new(order)?;
    let px = panels_for(rho[0].abs().max(rho[1].abs()), c);
    let h = c / px as f64;
    let mut nodes = Vec::with_capacity(px * order);
    for p in 0..px {
        let lo = h * p as f64;
        nodes.extend(rule.mapped(lo, lo + h));
    }
    let mut acc_re = Vec::with_capacity(nodes.len() * nodes.len());
    let mut acc_im = Vec::with_capacity(nodes.len() * nodes.len());
    for &(x, wx) in &nodes {
        for &(y, wy) in &nodes {
            let v = f(x, y);
            if !v.is_finite() {
                return Err(Error::data(format!("non-finite sample at ({x}, {y})")));
            }
            let phase = -2.0 * PI * (rho[0] * x + rho[1] * y);
            let w = wx * wy * v;
            acc_re.push(w * phase.cos());
            acc_im.push(w * phase.sin());
        }
    }
    Ok(Complex64::new(compensated_sum(acc_re), compensated_sum(acc_im)))
}

/// 1D transform `int_0^c f(x) exp(-2 pi i r x) dx` with the same panel rule.
pub fn fourier_coeff_interval<F>(f: F, c: f64, r: f64, order: usize) -> Result<Complex64>
where
    F: Fn(f64) -> f64,
{
    if !(c > 0.0) {
        return Err(Error::param(format!("interval length must be positive, got {c}")));
    }
    let rule = GaussRule::new(order)?;
    let panels = panels_for(r.abs(), c);
    rule.integrate_composite(0.0, c, panels, |x| {
        let v = f(x);
        let phase = -2.0 * PI * r * x;
        Complex64::new(v * phase.cos(), v * phase.sin())
    })
}

/// Coefficient of a separable function `fx(x) fy(y)` on `(0,c)^2`: the
/// product of two 1D transforms.
pub fn fourier_coeff_separable<Fx, Fy>(fx: Fx, fy: Fy, c: f64, rho: [f64; 2], order: usize) -> Result<Complex64>
where
    Fx: Fn(f64) -> f64,
    Fy: Fn(f64) -> f64,
{
    Ok(fourier_coeff_interval(fx, c, rho[0], order)? * fourier_coeff_interval(fy, c, rho[1], order)?)
}
