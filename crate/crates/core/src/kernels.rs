//! Mode kernels `C(t) = cosh(t sqrt(lambda))` and
//! `S(t) = sinh(t sqrt(lambda)) / sqrt(lambda)`, continued to `lambda <= 0`
//! (where they become `cos`/`sin` forms and `1`/`t`). Both are entire in
//! `lambda`, so one code path serves all three regions.

use std::f64::consts::LN_2;

use num_complex::Complex64;

/// Below this natural argument the Taylor series replace the closed forms.
const SERIES_ARG: f64 = 1e-6;

/// Above this argument `cosh`/`sinh` are applied in log-scaled form.
const SCALED_ARG: f64 = 700.0;

/// `sinh(x) / x`.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < SERIES_ARG {
        let x2 = x * x;
        1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0)))
    } else {
        x.sinh() / x
    }
}

/// `sin(x) / x`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_ARG {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    } else {
        x.sin() / x
    }
}

/// `C(t)` for symbol `lambda`.
pub fn gcosh(lambda: f64, t: f64) -> f64 {
    if lambda > 0.0 {
        (t * lambda.sqrt()).cosh()
    } else if lambda < 0.0 {
        (t * (-lambda).sqrt()).cos()
    } else {
        1.0
    }
}

/// `S(t)` for symbol `lambda`; `S(t) = t` at `lambda = 0`.
pub fn gsinh(lambda: f64, t: f64) -> f64 {
    if lambda > 0.0 {
        t * sinhc(t * lambda.sqrt())
    } else if lambda < 0.0 {
        t * sinc(t * (-lambda).sqrt())
    } else {
        t
    }
}

/// `c * sign * exp(log_mag)` without forming `exp(log_mag)` on its own.
fn scaled_mul(c: Complex64, log_mag: f64, sign: f64) -> Complex64 {
    let m = c.norm();
    if m == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    c / m * (sign * (log_mag + m.ln()).exp())
}

/// `c * C(t)`, finite whenever the product is representable.
pub fn mul_gcosh(c: Complex64, lambda: f64, t: f64) -> Complex64 {
    if lambda > 0.0 {
        let x = t.abs() * lambda.sqrt();
        if x > SCALED_ARG {
            return scaled_mul(c, x - LN_2, 1.0);
        }
    }
    c * gcosh(lambda, t)
}

/// `c * S(t)`, finite whenever the product is representable.
pub fn mul_gsinh(c: Complex64, lambda: f64, t: f64) -> Complex64 {
    if lambda > 0.0 {
        let x = t.abs() * lambda.sqrt();
        if x > SCALED_ARG {
            return scaled_mul(c, x - LN_2 - 0.5 * lambda.ln(), t.signum());
        }
    }
    c * gsinh(lambda, t)
}

/// `S(z) / C(d)`, `0 <= z <= d`, evaluated without overflow for `lambda > 0`.
pub fn sinh_over_cosh(lambda: f64, z: f64, d: f64) -> f64 {
    if lambda > 0.0 {
        let mu = lambda.sqrt();
        if d * mu > 1.0 {
            let num = -(-2.0 * z * mu).exp_m1();
            let den = 1.0 + (-2.0 * d * mu).exp();
            return ((z - d) * mu).exp() * num / (den * mu);
        }
    }
    gsinh(lambda, z) / gcosh(lambda, d)
}

/// `(sinh(y) - y) / y^3` for `y >= 0`.
pub fn sinh_minus_id_over_cube(y: f64) -> f64 {
    if y < 1e-2 {
        let y2 = y * y;
        (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0 * (1.0 + y2 / 72.0 * (1.0 + y2 / 110.0)))) / 6.0
    } else {
        (y.sinh() - y) / (y * y * y)
    }
}
