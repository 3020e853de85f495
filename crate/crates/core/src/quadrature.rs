//! Adaptive Gauss–Kronrod (7/15-point) quadrature with global bisection.
//!
//! The 15 Kronrod nodes are interior to each panel, so integrands with a
//! removable or integrable singularity at an endpoint are never evaluated
//! there.

use rayon::prelude::*;

use crate::error::{MeritError, Result};
use crate::summation::pairwise_sum_by;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Default cap on the number of subintervals per adaptive run.
pub const MAX_INTERVALS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn absolute(abs: f64) -> Self {
        Self { abs, rel: 0.0 }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// One 15-point Kronrod evaluation with a QUADPACK-style error estimate.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, error }
}

/// Adaptive integral of `f` over `[a, b]`: the panel with the largest error
/// estimate is bisected until the summed estimate meets `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    integrate_capped(&f, a, b, tol, MAX_INTERVALS)
}

pub fn integrate_capped<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: Tolerance,
    max_intervals: usize,
) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0, intervals: 0 });
    }
    let mut panels = vec![gk15(f, a, b)];
    loop {
        let value = pairwise_sum_by(panels.len(), |i| panels[i].value);
        let error = pairwise_sum_by(panels.len(), |i| panels[i].error);
        let target = tol.target(value);
        if error <= target {
            return Ok(Estimate { value, error, intervals: panels.len() });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels[worst];
        let mid = 0.5 * (p.a + p.b);
        if panels.len() >= max_intervals || !(p.a < mid && mid < p.b) {
            return Err(MeritError::NonConvergence { a, b, estimate: error, tolerance: target });
        }
        panels[worst] = gk15(f, p.a, mid);
        panels.insert(worst + 1, gk15(f, mid, p.b));
    }
}

/// Integrates panel by panel over consecutive `breakpoints`; each panel must
/// meet `tol` on its own. Panels are evaluated in parallel and summed in order.
pub fn integrate_panels<F>(f: F, breakpoints: &[f64], tol: Tolerance) -> Result<Estimate>
where
    F: Fn(f64) -> f64 + Sync,
{
    let pieces: Vec<Estimate> = breakpoints
        .par_windows(2)
        .map(|w| integrate_capped(&f, w[0], w[1], tol, MAX_INTERVALS))
        .collect::<Result<_>>()?;
    Ok(Estimate {
        value: pairwise_sum_by(pieces.len(), |i| pieces[i].value),
        error: pairwise_sum_by(pieces.len(), |i| pieces[i].error),
        intervals: pieces.iter().map(|p| p.intervals).sum(),
    })
}

/// `∫_a^∞ f` through the substitution `x = a + t / (1 - t)`, `t ∈ [0, 1)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: Tolerance) -> Result<Estimate> {
    let mapped = |t: f64| {
        let s = 1.0 - t;
        f(a + t / s) / (s * s)
    };
    integrate_capped(&mapped, 0.0, 1.0, tol, MAX_INTERVALS)
}
