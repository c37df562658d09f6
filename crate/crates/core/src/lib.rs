//! Spectral cutoff regularization for the Cauchy problem of the
//! non-homogeneous Helmholtz equation `Delta u + k^2 u = -f` in the slab
//! `R^2 x (0, d)`, with value and normal-derivative data given on `z = d`.
//!
//! Everything is computed per Fourier mode `rho` of the horizontal variables:
//!
//! * [`analytic`]: closed-form mode solutions and the well-posedness bound,
//! * [`truncation`]: the cutoff `|rho|^2 <= 1/eps`, parameter rules and bounds,
//! * [`illposed`]: the blow-up family showing the problem is ill-posed,
//! * [`nonlinear`]: Lipschitz forcing, the fixed-point solver and the Volterra march,
//! * [`quasiboundary`]: the quasi-boundary comparison method,
//! * [`experiments`]: error metric, noise models, table runners and CSV output.

pub mod analytic;
pub mod error;
pub mod experiments;
pub mod illposed;
pub mod nonlinear;
pub mod quadrature;
pub mod quasiboundary;
pub mod spectral;
pub mod truncation;

mod kernels;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use quadrature::GaussRule;
pub use spectral::{CauchyData, ForcingSpectrum, ModeGrid, Region, SpectralField, WaveParams};
pub use truncation::{RegParams, Rule};
