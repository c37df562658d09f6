use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::NoiseKind;
use crate::error::{Error, Result};

/// Measurement model for separable data `g_hat`, `f_hat(rho, s) = c(rho) phi(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub delta: f64,
    pub norm_const: f64,
    pub seed: u64,
}

/// Perturbed value data and forcing coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyData {
    pub g_hat: Vec<Complex64>,
    pub f_coeffs: Vec<Complex64>,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, delta: f64, norm_const: f64, seed: u64) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::param(format!("noise level must be nonnegative, got {delta}")));
        }
        if !(norm_const > 0.0) {
            return Err(Error::param(format!("norm constant must be positive, got {norm_const}")));
        }
        Ok(NoiseModel {
            kind,
            delta,
            norm_const,
            seed,
        })
    }

    /// Factor multiplying the forcing under the deterministic model.
    pub fn forcing_factor(&self) -> f64 {
        1.0 + self.delta / self.norm_const
    }

    /// `unit` holds the transform of the indicator of the data square, the
    /// shape of the measured value data.
    ///
    /// * `example1`: `g + delta * unit`, `c * (1 + delta / norm_const)`;
    /// * `uniform`: `g + delta * (xi + i eta) |unit|` with `xi, eta ~ U(-1/2, 1/2)`,
    ///   `c * (1 + delta zeta / norm_const)` with `zeta ~ U(-1, 1)`, seeded;
    /// * `none`: unchanged.
    pub fn apply(&self, g_hat: &[Complex64], f_coeffs: &[Complex64], unit: &[Complex64]) -> Result<NoisyData> {
        if g_hat.len() != unit.len() || f_coeffs.len() != unit.len() {
            return Err(Error::param("noise model inputs have different mode counts"));
        }
        let d = self.delta;
        Ok(match self.kind {
            NoiseKind::None => NoisyData {
                g_hat: g_hat.to_vec(),
                f_coeffs: f_coeffs.to_vec(),
            },
            NoiseKind::Example1Deterministic => NoisyData {
                g_hat: g_hat.iter().zip(unit).map(|(g, u)| g + u * d).collect(),
                f_coeffs: f_coeffs.iter().map(|c| c * self.forcing_factor()).collect(),
            },
            NoiseKind::AdditiveUniform => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut g = Vec::with_capacity(g_hat.len());
                let mut f = Vec::with_capacity(g_hat.len());
                for i in 0..g_hat.len() {
                    let xi: f64 = rng.gen_range(-0.5..0.5);
                    let eta: f64 = rng.gen_range(-0.5..0.5);
                    let zeta: f64 = rng.gen_range(-1.0..1.0);
                    g.push(g_hat[i] + Complex64::new(xi, eta) * (d * unit[i].norm()));
                    f.push(f_coeffs[i] * (1.0 + d * zeta / self.norm_const));
                }
                NoisyData { g_hat: g, f_coeffs: f }
            }
        })
    }
}
