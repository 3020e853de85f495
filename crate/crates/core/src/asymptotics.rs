//! Limits of the normalized L⁴ excess and the analytic ingredients behind them.
//!
//! For Chu polynomials `α_n = (‖g_n‖₄⁴ − n²)/n^{3/2} → 2/π`; for Frank
//! polynomials `β_n = (‖h_n‖₄⁴ − n⁴)/n³ → 4/π²`. This module tabulates both
//! ratios, compares them with Littlewood's constant and Mercer's bound, and
//! checks the auxiliary functions, derivative bounds, Euler–Maclaurin
//! remainders and integral identities that lead to those limits.
//!
//! The auxiliary functions, with `w = πx/n` and `θ = πx²/n`, are
//!
//! ```text
//! r(x)   = sin²θ / w²
//! r'(x)  = (2/w)·(sin 2θ − sin²θ/θ)
//! r''(x) = 8 cos 2θ − 6 sin 2θ/θ + 6 sin²θ/θ²
//! p(y)   = (y − sin y cos y) / sin²y
//! p'(y)  = 2 − 2 (y − sin y cos y) cos y / sin³y
//! ```
//!
//! (`r''` depends on `x` only through `θ`, because `(π/n)/w² = 1/θ`.)

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{chu_l4_closed, frank_l4_closed, ClosedFormBreakdown};
use crate::error::{MeritError, Result};
use crate::format::{sci17, serialize_sci17};
use crate::norms::alpha_ratio;
use crate::quadrature::{integrate, integrate_panels, integrate_to_infinity, Estimate, Tolerance};
use crate::sequences::Family;
use crate::summation::pairwise_sum_by;

/// `2/π`, the limit of `α_n`.
pub const CHU_LIMIT: f64 = 2.0 / PI;
/// `4/π²`, the limit of `β_n`.
pub const FRANK_LIMIT: f64 = 4.0 / (PI * PI);
/// Littlewood's value `√2 − (2/π)(√2 − 1) = 1.15051…`, which is not the limit.
pub const LITTLEWOOD_CONSTANT: f64 =
    std::f64::consts::SQRT_2 - 2.0 / PI * (std::f64::consts::SQRT_2 - 1.0);
/// Mercer's upper bound `16/(3π^{3/2}) = 0.95779…` on `limsup α_n`.
pub const MERCER_BOUND: f64 = 16.0 / (3.0 * PI * 1.772_453_850_905_516);

/// Absolute tolerance per panel for the integral identities.
pub const PANEL_TOLERANCE: f64 = 1e-11;
/// Beyond this abscissa `sin²y / y^{3/2}` is integrated in half-period panels.
pub const OSCILLATORY_START: f64 = 50.0;
/// Minimum grid size for bound witnesses.
pub const WITNESS_GRID: usize = 100_000;
/// Slack allowed above a claimed bound before it counts as violated.
pub const BOUND_SLACK: f64 = 1e-9;

pub fn limit_constant(family: Family) -> Result<f64> {
    match family {
        Family::Chu => Ok(CHU_LIMIT),
        Family::Frank => Ok(FRANK_LIMIT),
        Family::Custom => Err(MeritError::InvalidParameter(
            "custom sequences have no limit constant".into(),
        )),
    }
}

pub fn closed_form(family: Family, n: usize) -> Result<ClosedFormBreakdown> {
    match family {
        Family::Chu => chu_l4_closed(n),
        Family::Frank => frank_l4_closed(n),
        Family::Custom => Err(MeritError::InvalidParameter(
            "custom sequences have no closed form".into(),
        )),
    }
}

/// `α_n` for Chu, `β_n` for Frank, computed from the closed form.
pub fn limit_ratio(family: Family, n: usize) -> Result<f64> {
    let b = closed_form(family, n)?;
    let d = if family == Family::Frank { n * n } else { n };
    alpha_ratio(b.total, d)
}

/// `δ_n` of the conjectured refinement: −2 for `n ≡ 0, 1`, +1 for `n ≡ 2, 3 (mod 4)`.
pub fn borwein_choi_delta(n: usize) -> f64 {
    if n % 4 <= 1 {
        -2.0
    } else {
        1.0
    }
}

/// `‖g_n‖₄⁴ − n² − (2/π) n^{3/2} − δ_n n^{1/2}`.
pub fn borwein_choi_residual(n: usize, l4_4: f64) -> f64 {
    let nf = n as f64;
    l4_4 - nf * nf - CHU_LIMIT * nf.powf(1.5) - borwein_choi_delta(n) * nf.sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub family: Family,
    pub n: usize,
    #[serde(serialize_with = "serialize_sci17")]
    pub ratio: f64,
    #[serde(serialize_with = "serialize_sci17")]
    pub limit_gap: f64,
    pub bc_residual: Option<f64>,
    pub runtime_ms: f64,
}

/// One row per `n`, evaluated in parallel and returned in input order.
pub fn convergence_table(family: Family, n_list: &[usize]) -> Result<Vec<ConvergenceRow>> {
    if n_list.is_empty() {
        return Err(MeritError::InvalidParameter("empty n list".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MeritError::InvalidParameter("n list must be strictly ascending".into()));
    }
    let limit = limit_constant(family)?;
    n_list
        .par_iter()
        .map(|&n| {
            let start = Instant::now();
            let b = closed_form(family, n)?;
            let d = if family == Family::Frank { n * n } else { n };
            let ratio = alpha_ratio(b.total, d)?;
            let bc_residual = (family == Family::Chu).then(|| borwein_choi_residual(n, b.total));
            Ok(ConvergenceRow {
                family,
                n,
                ratio,
                limit_gap: ratio - limit,
                bc_residual,
                runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

/// Writes rows as CSV with header `family,n,ratio,limit_gap,bc_residual,runtime_ms`.
///
/// Runtimes are machine-dependent; with `include_timings = false` that column
/// is left empty so identical inputs give byte-identical output.
pub fn write_convergence_csv<W: Write>(
    rows: &[ConvergenceRow],
    include_timings: bool,
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "n", "ratio", "limit_gap", "bc_residual", "runtime_ms"])?;
    for r in rows {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            sci17(r.ratio),
            sci17(r.limit_gap),
            r.bc_residual.map(sci17).unwrap_or_default(),
            if include_timings { sci17(r.runtime_ms) } else { String::new() },
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Maximum of `|bc_residual|·√n` over `[n_min, n_max]`.
///
/// The refinement is conjectural, so callers report this value rather than assert on it.
pub fn borwein_choi_scaled_residual(n_min: usize, n_max: usize) -> Result<f64> {
    let ns: Vec<usize> = (n_min..=n_max).collect();
    let rows = convergence_table(Family::Chu, &ns)?;
    Ok(rows
        .iter()
        .map(|r| r.bc_residual.unwrap_or(0.0).abs() * (r.n as f64).sqrt())
        .fold(0.0, f64::max))
}

/// `(‖g_n‖₄⁴ − n² − (2/π) n^{3/2}) / (δ_n n^{1/2})`: the observed coefficient
/// of the `n^{1/2}` term relative to the conjectured `δ_n`.
pub fn borwein_choi_delta_ratio(n: usize) -> Result<f64> {
    let nf = n as f64;
    let l4 = chu_l4_closed(n)?.total;
    Ok((l4 - nf * nf - CHU_LIMIT * nf.powf(1.5)) / (borwein_choi_delta(n) * nf.sqrt()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LittlewoodReport {
    pub n_min: usize,
    pub n_max: usize,
    #[serde(serialize_with = "serialize_sci17")]
    pub max_alpha: f64,
    pub argmax_n: usize,
    #[serde(serialize_with = "serialize_sci17")]
    pub alpha_at_n_max: f64,
    #[serde(serialize_with = "serialize_sci17")]
    pub distance_to_littlewood: f64,
    #[serde(serialize_with = "serialize_sci17")]
    pub distance_to_mercer: f64,
    #[serde(serialize_with = "serialize_sci17")]
    pub distance_to_limit: f64,
    /// Largest `|α_n − 2/π|` over the range.
    #[serde(serialize_with = "serialize_sci17")]
    pub max_limit_gap: f64,
    /// Every `α_n` in range is closer to `2/π` than to Littlewood's constant.
    pub all_closer_to_limit: bool,
    pub pass: bool,
}

/// Compares `α_n` over `[n_min, n_max]` with `2/π`, Littlewood's constant and Mercer's bound.
///
/// Distances are measured from `α_{n_max}`. Passes iff `max α_n < 16/(3π^{3/2})`
/// and `α_{n_max}` is closer to `2/π` than to `1.15051…`.
pub fn littlewood_refutation(n_min: usize, n_max: usize) -> Result<LittlewoodReport> {
    if n_min < 2 || n_min > n_max {
        return Err(MeritError::InvalidParameter(format!(
            "need 2 ≤ n_min ≤ n_max, got [{n_min}, {n_max}]"
        )));
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    let rows = convergence_table(Family::Chu, &ns)?;
    let (argmax_n, max_alpha) = rows
        .iter()
        .map(|r| (r.n, r.ratio))
        .fold((n_min, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let last = rows.last().expect("non-empty range").ratio;
    let closer = |a: f64| (a - CHU_LIMIT).abs() < (a - LITTLEWOOD_CONSTANT).abs();
    Ok(LittlewoodReport {
        n_min,
        n_max,
        max_alpha,
        argmax_n,
        alpha_at_n_max: last,
        distance_to_littlewood: (last - LITTLEWOOD_CONSTANT).abs(),
        distance_to_mercer: (last - MERCER_BOUND).abs(),
        distance_to_limit: (last - CHU_LIMIT).abs(),
        max_limit_gap: rows.iter().map(|r| r.limit_gap.abs()).fold(0.0, f64::max),
        all_closer_to_limit: rows.iter().all(|r| closer(r.ratio)),
        pass: max_alpha < MERCER_BOUND && closer(last),
    })
}

// ---------------------------------------------------------------------------
// Auxiliary functions

/// `y − sin y cos y`, by series for small `y` where the difference cancels.
pub fn y_minus_sin_cos(y: f64) -> f64 {
    if y.abs() >= 0.25 {
        return y - 0.5 * (2.0 * y).sin();
    }
    // Σ_{k≥1} (−1)^{k+1} (2y)^{2k+1} / (2 (2k+1)!)
    let z = 2.0 * y;
    let z2 = z * z;
    let mut term = z * z2 / 12.0;
    let mut sum = term;
    let mut k = 1.0;
    while term.abs() > 1e-18 * sum.abs() {
        let m = 2.0 * k + 1.0;
        term *= -z2 / ((m + 1.0) * (m + 2.0));
        sum += term;
        k += 1.0;
    }
    sum
}

/// `p(y) = (y − sin y cos y)/sin²y`, extended by `0` at `y = 0`.
pub fn p(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let s = y.sin();
    y_minus_sin_cos(y) / (s * s)
}

pub fn p_prime(y: f64) -> f64 {
    if y == 0.0 {
        return 2.0 / 3.0;
    }
    let (s, c) = y.sin_cos();
    2.0 - 2.0 * y_minus_sin_cos(y) * c / (s * s * s)
}

/// `r(x) = (sin(πx²/n) / (πx/n))²` for a fixed `n`, and its first two derivatives.
#[derive(Clone, Copy, Debug)]
pub struct RFunction {
    n: f64,
}

impl RFunction {
    pub fn new(n: usize) -> Self {
        Self { n: n as f64 }
    }

    fn w_theta(&self, x: f64) -> (f64, f64) {
        (PI * x / self.n, PI * x * x / self.n)
    }

    pub fn value(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let (w, theta) = self.w_theta(x);
        let s = theta.sin() / w;
        s * s
    }

    pub fn first(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let (w, theta) = self.w_theta(x);
        let s = theta.sin();
        2.0 / w * ((2.0 * theta).sin() - s * s / theta)
    }

    pub fn second(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 2.0;
        }
        let (_, theta) = self.w_theta(x);
        let s = theta.sin();
        let (s2, c2) = (2.0 * theta).sin_cos();
        8.0 * c2 - 6.0 * s2 / theta + 6.0 * s * s / (theta * theta)
    }

    /// Abscissae `√(k·n/2)` where `θ = kπ/2`, capped at `upper`. Panels between
    /// them contain at most a quarter oscillation of `sin θ`.
    pub fn panel_breakpoints(&self, upper: f64) -> Vec<f64> {
        let mut bps = Vec::new();
        let mut k = 0.0;
        loop {
            let x = (k * self.n / 2.0).sqrt();
            if x >= upper {
                break;
            }
            bps.push(x);
            k += 1.0;
        }
        bps.push(upper);
        bps
    }
}

// ---------------------------------------------------------------------------
// Integral identities

fn sin2_over_y32(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let s = y.sin();
    s * s / (y * y.sqrt())
}

/// `∫_0^T sin²y / y^{3/2} dy`, whose limit as `T → ∞` is `√π`.
pub fn integral_sin2_over_y32(t: f64) -> Result<Estimate> {
    if !(t > 0.0) {
        return Err(MeritError::InvalidParameter(format!("T = {t} must be positive")));
    }
    let mut breakpoints = vec![0.0, t.min(OSCILLATORY_START)];
    let mut y = OSCILLATORY_START;
    while y < t {
        y = (y + FRAC_PI_2).min(t);
        breakpoints.push(y);
    }
    integrate_panels(sin2_over_y32, &breakpoints, Tolerance::absolute(PANEL_TOLERANCE))
}

/// Returns `(∫_0^∞ e^{−yt} sin²y dy by quadrature, 2/(t³ + 4t))`.
pub fn laplace_transform_sin2(t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(MeritError::InvalidParameter(format!("t = {t} must be positive")));
    }
    // e^{−t y} < 1e-19 beyond 44/t; the truncated tail is below that over t.
    let upper = 44.0 / t;
    let mut breakpoints = vec![0.0];
    while let Some(&last) = breakpoints.last().filter(|&&y| y < upper) {
        breakpoints.push((last + FRAC_PI_2).min(upper));
    }
    let f = |y: f64| {
        let s = y.sin();
        (-y * t).exp() * s * s
    };
    let e = integrate_panels(f, &breakpoints, Tolerance::absolute(PANEL_TOLERANCE))?;
    Ok((e.value, 2.0 / (t * t * t + 4.0 * t)))
}

/// `(2/√π) ∫_0^∞ 2√t/(t³ + 4t) dt`, evaluated after `t = x²` as
/// `(2/√π) ∫_0^∞ 4/(x⁴ + 4) dx`. Equals `√π`.
pub fn laplace_route_sqrt_pi() -> Result<f64> {
    let e = integrate_to_infinity(|x| 4.0 / (x.powi(4) + 4.0), 0.0, Tolerance::absolute(1e-13))?;
    Ok(2.0 / PI.sqrt() * e.value)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPiIntegral {
    /// Adaptive quadrature of `p` over `(0, π/2]`.
    pub quadrature: f64,
    pub error_estimate: f64,
    /// `−y/tan y` at `y = π/2`.
    pub antiderivative_upper: f64,
    /// `−y/tan y` evaluated close to `0`, approximating the limit `−1`.
    pub antiderivative_lower: f64,
}

impl HalfPiIntegral {
    pub fn antiderivative_difference(&self) -> f64 {
        self.antiderivative_upper - self.antiderivative_lower
    }
}

/// `∫_0^{π/2} p(y) dy`, which equals one.
pub fn integral_p_on_half_pi() -> Result<HalfPiIntegral> {
    let e = integrate(p, 0.0, FRAC_PI_2, Tolerance::absolute(1e-13))?;
    let antiderivative = |y: f64| -y / y.tan();
    Ok(HalfPiIntegral {
        quadrature: e.value,
        error_estimate: e.error,
        antiderivative_upper: antiderivative(FRAC_PI_2),
        antiderivative_lower: antiderivative(1e-8),
    })
}

// ---------------------------------------------------------------------------
// Bound witnesses

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessFunction {
    R,
    RPrime,
    RDoublePrime,
    P,
    PPrime,
}

impl std::fmt::Display for WitnessFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WitnessFunction::R => "r",
            WitnessFunction::RPrime => "r'",
            WitnessFunction::RDoublePrime => "r''",
            WitnessFunction::P => "p",
            WitnessFunction::PPrime => "p'",
        })
    }
}

/// Observed behaviour of one auxiliary function against its claimed bound.
///
/// `observed ≤ claimed` is the claim; for `p'` there is also the strict lower
/// bound `claimed_lower < grid_min`. `observed` means:
///
/// | function | observed | claimed |
/// |---|---|---|
/// | `r`   | `|r(n/2)|` | `4/π²` |
/// | `r'`  | `|r'(n/2)|` | `8/π + 16/(nπ²)` |
/// | `r''` | `max |r''|` on the grid | `34` |
/// | `p`   | `max p` on the grid | `p(π/2) = π/2` |
/// | `p'`  | `max p'` on the grid | `2` (and `> −3`) |
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofFunctionWitness {
    pub function: WitnessFunction,
    pub n: Option<usize>,
    pub grid_points: usize,
    pub domain: (f64, f64),
    pub grid_min: f64,
    pub grid_max: f64,
    pub observed: f64,
    pub claimed: f64,
    pub claimed_lower: Option<f64>,
    /// `|f(1e-6)|` for the functions whose limit at zero vanishes, with its threshold.
    pub near_zero: Option<(f64, f64)>,
    /// Largest deviation of the analytic derivative from a central difference, relative.
    pub finite_difference_deviation: Option<f64>,
    pub pass: bool,
}

/// Relative tolerance for the finite-difference cross-check of analytic derivatives.
pub const FINITE_DIFFERENCE_TOLERANCE: f64 = 1e-5;

fn grid_extrema<F: Fn(f64) -> f64 + Sync>(f: F, upper: f64, points: usize) -> (f64, f64) {
    (1..=points)
        .into_par_iter()
        .map(|i| f(upper * i as f64 / points as f64))
        .fold(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), v| (lo.min(v), hi.max(v)),
        )
        .reduce(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |a, b| (a.0.min(b.0), a.1.max(b.1)),
        )
}

/// Max relative deviation of `derivative` from a central difference of
/// `base` at 64 interior points of `(0, upper)`.
fn finite_difference_check<F, G>(base: F, derivative: G, upper: f64) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let h = 1e-5 * upper.min(1.0);
    (1..=64)
        .map(|i| {
            let x = upper * (i as f64 - 0.5) / 64.0;
            let fd = (base(x + h) - base(x - h)) / (2.0 * h);
            let exact = derivative(x);
            (fd - exact).abs() / exact.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Samples `which` on a grid of [`WITNESS_GRID`] points and compares with its claimed bound.
///
/// `n` parametrizes the `r` family and is ignored for `p`, `p'`. A bound
/// exceeded by more than [`BOUND_SLACK`] gives [`MeritError::BoundViolation`].
pub fn proof_bound_witness(which: WitnessFunction, n: usize) -> Result<ProofFunctionWitness> {
    let points = WITNESS_GRID;
    let is_r = matches!(
        which,
        WitnessFunction::R | WitnessFunction::RPrime | WitnessFunction::RDoublePrime
    );
    if is_r && n == 0 {
        return Err(MeritError::InvalidParameter("n must be at least 1".into()));
    }
    let r = RFunction::new(n.max(1));
    let upper = if is_r { n as f64 / 2.0 } else { FRAC_PI_2 };
    let nf = n as f64;

    let (grid_min, grid_max) = match which {
        WitnessFunction::R => grid_extrema(|x| r.value(x), upper, points),
        WitnessFunction::RPrime => grid_extrema(|x| r.first(x), upper, points),
        WitnessFunction::RDoublePrime => grid_extrema(|x| r.second(x), upper, points),
        WitnessFunction::P => grid_extrema(p, upper, points),
        WitnessFunction::PPrime => grid_extrema(p_prime, upper, points),
    };

    let (observed, claimed, claimed_lower, near_zero, fd) = match which {
        WitnessFunction::R => (
            r.value(upper).abs(),
            4.0 / (PI * PI),
            None,
            Some((r.value(1e-6).abs(), 1e-9)),
            None,
        ),
        WitnessFunction::RPrime => (
            r.first(upper).abs(),
            8.0 / PI + 16.0 / (nf * PI * PI),
            None,
            Some((r.first(1e-6).abs(), 1e-5)),
            Some(finite_difference_check(|x| r.value(x), |x| r.first(x), upper)),
        ),
        WitnessFunction::RDoublePrime => (
            grid_min.abs().max(grid_max.abs()),
            34.0,
            None,
            None,
            Some(finite_difference_check(|x| r.first(x), |x| r.second(x), upper)),
        ),
        WitnessFunction::P => (grid_max, FRAC_PI_2, None, Some((p(1e-6).abs(), 1e-5)), None),
        WitnessFunction::PPrime => (
            grid_max,
            2.0,
            Some(-3.0),
            None,
            Some(finite_difference_check(p, p_prime, upper)),
        ),
    };

    let pass = observed <= claimed + BOUND_SLACK
        && claimed_lower.is_none_or(|lo| grid_min > lo - BOUND_SLACK)
        && near_zero.is_none_or(|(v, t)| v < t)
        && fd.is_none_or(|d| d <= FINITE_DIFFERENCE_TOLERANCE);

    let witness = ProofFunctionWitness {
        function: which,
        n: is_r.then_some(n),
        grid_points: points,
        domain: (0.0, upper),
        grid_min,
        grid_max,
        observed,
        claimed,
        claimed_lower,
        near_zero,
        finite_difference_deviation: fd,
        pass,
    };
    if pass {
        Ok(witness)
    } else {
        Err(MeritError::BoundViolation(Box::new(witness)))
    }
}

// ---------------------------------------------------------------------------
// Euler–Maclaurin and sine-replacement checks

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmRemainder {
    pub n: usize,
    /// `Σ_{1≤u≤n/2} r(u)`.
    pub sum: f64,
    /// `∫_0^{n/2} r(x) dx`.
    pub integral: f64,
    pub actual: f64,
    /// `½(|r(0)| + |r(n/2)| + ∫_0^{n/2} |r'|)`.
    pub simple_bound: f64,
    /// `2/π² + 2/(3π) + 4/(3nπ²) + 17n/12`.
    pub sharp_bound: f64,
}

impl EmRemainder {
    pub fn pass(&self) -> bool {
        self.actual <= self.simple_bound + 1e-8 && self.actual <= self.sharp_bound
    }
}

/// `Σ_{1≤u≤n/2} r(u)` by pairwise summation.
pub fn r_sum(n: usize) -> f64 {
    let r = RFunction::new(n);
    pairwise_sum_by(n / 2, |i| r.value((i + 1) as f64))
}

/// Compares the sum of `r` over `1 ≤ u ≤ n/2` with its integral against both remainder bounds.
pub fn em_remainder_check(n: usize) -> Result<EmRemainder> {
    if n < 2 {
        return Err(MeritError::InvalidParameter("n must be at least 2".into()));
    }
    let r = RFunction::new(n);
    let upper = n as f64 / 2.0;
    let bps = r.panel_breakpoints(upper);
    let tol = Tolerance { abs: PANEL_TOLERANCE, rel: 1e-12 };
    let integral = integrate_panels(|x| r.value(x), &bps, tol)?.value;
    let variation = integrate_panels(|x| r.first(x).abs(), &bps, tol)?.value;
    let sum = r_sum(n);
    let nf = n as f64;
    Ok(EmRemainder {
        n,
        sum,
        integral,
        actual: (sum - integral).abs(),
        simple_bound: 0.5 * (r.value(upper).abs() + variation),
        sharp_bound: 2.0 / (PI * PI) + 2.0 / (3.0 * PI) + 4.0 / (3.0 * nf * PI * PI) + 17.0 * nf / 12.0,
    })
}

/// `Σ_{1≤u≤n/2} r(u) / n^{3/2}`, which tends to `1/(2π)`.
pub fn scaled_r_sum(n: usize) -> f64 {
    r_sum(n) / (n as f64).powf(1.5)
}

/// `|Σ (sin(πu²/n)/sin(πu/n))² − Σ r(u)|` over `1 ≤ u ≤ n/2`; the claim is that it is below `n/2`.
pub fn sine_replacement_gap(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(MeritError::InvalidParameter("n must be at least 2".into()));
    }
    let r = RFunction::new(n);
    let nf = n as f64;
    let gap = pairwise_sum_by(n / 2, |i| {
        let u = (i + 1) as f64;
        let num = (PI * crate::sequences::chu_phase_numerator(i + 1, n) as f64 / nf).sin();
        let with_sine = num / (PI * u / nf).sin();
        with_sine * with_sine - r.value(u)
    });
    Ok(gap.abs())
}
