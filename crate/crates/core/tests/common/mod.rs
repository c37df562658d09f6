#![allow(dead_code)]

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex64;

const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

/// Arbitrary-precision scalar arithmetic, used to recompute closed forms
/// without cancellation or overflow.
pub struct Hp {
    cc: RefCell<Consts>,
}

impl Hp {
    pub fn new() -> Self {
        Hp {
            cc: RefCell::new(Consts::new().expect("constant cache")),
        }
    }

    pub fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, PREC, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, PREC, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, PREC, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, PREC, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(PREC, RM)
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        a.exp(PREC, RM, &mut self.cc.borrow_mut())
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        a.ln(PREC, RM, &mut self.cc.borrow_mut())
    }

    pub fn pow(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.pow(b, PREC, RM, &mut self.cc.borrow_mut())
    }

    pub fn cosh(&self, a: &BigFloat) -> BigFloat {
        a.cosh(PREC, RM, &mut self.cc.borrow_mut())
    }

    pub fn sinh(&self, a: &BigFloat) -> BigFloat {
        a.sinh(PREC, RM, &mut self.cc.borrow_mut())
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        a.sin(PREC, RM, &mut self.cc.borrow_mut())
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        a.cos(PREC, RM, &mut self.cc.borrow_mut())
    }

    pub fn pi(&self) -> BigFloat {
        self.cc.borrow_mut().pi(PREC, RM)
    }

    pub fn to_f64(&self, a: &BigFloat) -> f64 {
        format!("{a}").parse().expect("decimal rendering parses")
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Second-order central differences for `u'' - lambda u = rhs(z)` on
/// `[0, d]` with `u(d) = g`, `u'(d) = 0`, marched from `z = d` with `n`
/// steps. Returns the nodal values, index `i` at `z = i d / n`.
pub fn fd_cauchy<R>(lambda: f64, g: Complex64, rhs: R, d: f64, n: usize) -> Vec<Complex64>
where
    R: Fn(f64) -> Complex64,
{
    let h = d / n as f64;
    let z = |i: usize| d * i as f64 / n as f64;
    let mut u = vec![Complex64::new(0.0, 0.0); n + 1];
    u[n] = g;
    // ghost node u_{n+1} = u_{n-1} from the zero slope
    u[n - 1] = g + (u[n] * lambda + rhs(d)) * (0.5 * h * h);
    for i in (1..n).rev() {
        u[i - 1] = u[i] * 2.0 - u[i + 1] + (u[i] * lambda + rhs(z(i))) * (h * h);
    }
    u
}

/// Value at `z` of nodal data on `i d / n`, by linear interpolation.
pub fn sample(u: &[Complex64], d: f64, z: f64) -> Complex64 {
    let n = u.len() - 1;
    let x = z / d * n as f64;
    let i = (x.floor() as usize).min(n - 1);
    let t = x - i as f64;
    u[i] * (1.0 - t) + u[i + 1] * t
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `(2 sqrt(2 delta^{2(1-z/d)} + M0^{2(d-z)/d} [1 + d^3 (d-z) / (4 ln^3(M0/delta))]) + M0^{(d-z)/d}) delta^{z/d}`.
pub fn hp_thm11(hp: &Hp, z: f64, delta: f64, m0: f64, d: f64) -> f64 {
    let d = hp.num(d);
    let z = hp.num(z);
    let delta = hp.num(delta);
    let m0 = hp.num(m0);
    let t = hp.sub(&d, &z);
    let zd = hp.div(&z, &d);
    let td = hp.div(&t, &d);
    let l = hp.ln(&hp.div(&m0, &delta));
    let l3 = hp.mul(&l, &hp.mul(&l, &l));
    let d3 = hp.mul(&d, &hp.mul(&d, &d));
    let a = hp.mul(&hp.num(2.0), &hp.pow(&delta, &hp.mul(&hp.num(2.0), &hp.sub(&hp.num(1.0), &zd))));
    let m0_2t = hp.pow(&m0, &hp.mul(&hp.num(2.0), &td));
    let br = hp.add(&hp.num(1.0), &hp.div(&hp.mul(&d3, &t), &hp.mul(&hp.num(4.0), &l3)));
    let inner = hp.add(&a, &hp.mul(&m0_2t, &br));
    let lead = hp.add(&hp.mul(&hp.num(2.0), &hp.sqrt(&inner)), &hp.pow(&m0, &td));
    hp.to_f64(&hp.mul(&lead, &hp.pow(&delta, &zd)))
}

/// `(M0 + P) sqrt(2 + (d-z) / (4 kappa^3)) e^{-z kappa}` with `kappa = ln(1/delta) / d`.
pub fn hp_thm13(hp: &Hp, z: f64, delta: f64, m0: f64, p: f64, d: f64) -> f64 {
    let d = hp.num(d);
    let z = hp.num(z);
    let kappa = hp.div(&hp.ln(&hp.div(&hp.num(1.0), &hp.num(delta))), &d);
    let k3 = hp.mul(&kappa, &hp.mul(&kappa, &kappa));
    let root = hp.sqrt(&hp.add(&hp.num(2.0), &hp.div(&hp.sub(&d, &z), &hp.mul(&hp.num(4.0), &k3))));
    let decay = hp.exp(&hp.mul(&hp.num(-1.0), &hp.mul(&z, &kappa)));
    hp.to_f64(&hp.mul(&hp.mul(&hp.add(&hp.num(m0), &hp.num(p)), &root), &decay))
}

/// `(sqrt(Q) e^{d^2 l^2 (d-z) / 2} + sqrt(3 (d^2 + 1)) e^{3 d^2 l^2 (d-z) / 2}) delta^{z/d}`.
pub fn hp_thm17(hp: &Hp, z: f64, delta: f64, q: f64, ell: f64, d: f64) -> f64 {
    let d = hp.num(d);
    let z = hp.num(z);
    let e = hp.mul(&hp.mul(&hp.mul(&d, &d), &hp.mul(&hp.num(ell), &hp.num(ell))), &hp.sub(&d, &z));
    let first = hp.mul(&hp.sqrt(&hp.num(q)), &hp.exp(&hp.mul(&hp.num(0.5), &e)));
    let second = hp.mul(
        &hp.sqrt(&hp.mul(&hp.num(3.0), &hp.add(&hp.mul(&d, &d), &hp.num(1.0)))),
        &hp.exp(&hp.mul(&hp.num(1.5), &e)),
    );
    hp.to_f64(&hp.mul(&hp.add(&first, &second), &hp.pow(&hp.num(delta), &hp.div(&z, &d))))
}

/// `sqrt(2 cosh^2((d-z) kappa) + (d-z) [sinh(2 kappa (d-z)) - 2 kappa (d-z)] / (2 kappa^3))`.
pub fn hp_m1(hp: &Hp, z: f64, kappa: f64, d: f64) -> f64 {
    let kap = hp.num(kappa);
    let t = hp.sub(&hp.num(d), &hp.num(z));
    let ch = hp.cosh(&hp.mul(&t, &kap));
    let y = hp.mul(&hp.num(2.0), &hp.mul(&kap, &t));
    let k3 = hp.mul(&kap, &hp.mul(&kap, &kap));
    let tail = hp.div(&hp.mul(&t, &hp.sub(&hp.sinh(&y), &y)), &hp.mul(&hp.num(2.0), &k3));
    hp.to_f64(&hp.sqrt(&hp.add(&hp.mul(&hp.num(2.0), &hp.mul(&ch, &ch)), &tail)))
}

/// Outcome of comparing `exact_uhat` with [`fd_cauchy`] on random single modes.
pub struct ModeStudy {
    /// Largest relative error at 10^4 depth points.
    pub worst: f64,
    /// Summed error at 5000 points over summed error at 10^4 points.
    pub halving_ratio: f64,
    /// Modes per region, `[A1, A2, A3]`.
    pub seen: [usize; 3],
}

/// 50 modes cycling through the three regions (`k = 2`, `d = 1/2`), random
/// value data and random forcing `a + b s`.
pub fn fd_mode_study(seed: u64) -> ModeStudy {
    use helmcauchy_core::analytic::exact_uhat;
    use helmcauchy_core::{CauchyData, ForcingSpectrum, GaussRule, ModeGrid, Region, WaveParams};
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;
    use std::sync::Arc;

    const DEPTHS: [f64; 6] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5];
    let params = WaveParams::new(2.0, 0.5).unwrap();
    let rule = GaussRule::new(20).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut coords = rand_chacha::ChaCha8Rng::seed_from_u64(seed + 1);
    let max_rel = |a: &[Complex64], b: &[Complex64]| {
        let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
    };
    let mut study = ModeStudy {
        worst: 0.0,
        halving_ratio: 0.0,
        seen: [0; 3],
    };
    let (mut fine_total, mut coarse_total) = (0.0, 0.0);
    for i in 0..50 {
        let theta = coords.gen_range(0.0..2.0 * PI);
        let r = match i % 3 {
            0 => coords.gen_range(2.05..10.0),
            1 => 2.0,
            _ => coords.gen_range(0.0..1.95),
        };
        let grid = Arc::new(ModeGrid::new(vec![[r * theta.cos(), r * theta.sin()]], 1.0, DEPTHS.to_vec(), params).unwrap());
        study.seen[match grid.region(0) {
            Region::A1 => 0,
            Region::A2 => 1,
            Region::A3 => 2,
        }] += 1;
        let (g, a, b) = (c(), c(), c());
        let data = CauchyData::without_neumann(vec![g], ForcingSpectrum::from_fn(move |_, s| a + b * s));
        let exact: Vec<Complex64> = exact_uhat(&data, &grid, &rule).unwrap().row(0).to_vec();
        let lambda = grid.lambda(0);
        let fd = |n| {
            let nodes = fd_cauchy(lambda, g, |z| -(a + b * z), 0.5, n);
            DEPTHS.iter().map(|&z| sample(&nodes, 0.5, z)).collect::<Vec<_>>()
        };
        let fine = max_rel(&fd(10_000), &exact);
        study.worst = study.worst.max(fine);
        fine_total += fine;
        coarse_total += max_rel(&fd(5_000), &exact);
    }
    study.halving_ratio = coarse_total / fine_total;
    study
}
