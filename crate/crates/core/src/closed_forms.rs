//! Exact trigonometric-sum expressions for ‖g_n‖₄⁴ and ‖h_n‖₄⁴, and the
//! structural identities satisfied by the Frank autocorrelations.
//!
//! Chu:
//! ```text
//! ‖g_n‖₄⁴ = n² − ε_n + 4 Σ_{1≤u≤n/2} (sin(πu²/n) / sin(πu/n))²,   ε_n = 2 iff n ≡ 2 (mod 4)
//! ```
//! Frank:
//! ```text
//! ‖h_n‖₄⁴ = n⁴ − γ_n + 8n Σ_{1≤v≤n/2} Σ_{1≤k≤v} (sin(πk/n) / sin(πv/n))²,
//! γ_n = 3n² (n even), 2n² − 2n (n odd)
//! ```
//! The upper limit `n/2` is inclusive, so the `u = n/2` term is present for even `n`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::autocorrelation::{acf, AutocorrelationProfile};
use crate::error::{MeritError, Result};
use crate::format::sci17;
use crate::sequences::{chu_phase_numerator, frank, Family};
use crate::summation::{pairwise_sum, pairwise_sum_by, NeumaierSum};

/// Denominators `sin(πu/n)` below this are treated as a bug.
const MIN_DENOMINATOR: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormBreakdown {
    pub family: Family,
    pub n: usize,
    pub main_term: f64,
    pub correction: f64,
    pub trig_sum: f64,
    pub total: f64,
}

impl ClosedFormBreakdown {
    fn new(family: Family, n: usize, main_term: f64, correction: f64, trig_sum: f64) -> Self {
        Self {
            family,
            n,
            main_term,
            correction,
            trig_sum,
            total: main_term - correction + trig_sum,
        }
    }
}

/// Writes breakdowns as CSV with header `family,n,main_term,correction,trig_sum,total`.
pub fn write_breakdown_csv<W: Write>(rows: &[ClosedFormBreakdown], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "n", "main_term", "correction", "trig_sum", "total"])?;
    for b in rows {
        w.write_record([
            b.family.to_string(),
            b.n.to_string(),
            sci17(b.main_term),
            sci17(b.correction),
            sci17(b.trig_sum),
            sci17(b.total),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn sin_pi_ratio(k: usize, n: usize) -> f64 {
    (PI * k as f64 / n as f64).sin()
}

/// `sin(πu²/n)` with `u²` reduced modulo `2n` first.
fn sin_pi_square_ratio(u: usize, n: usize) -> f64 {
    (PI * chu_phase_numerator(u, n) as f64 / n as f64).sin()
}

fn checked_denominator(s: f64) -> f64 {
    assert!(s.abs() >= MIN_DENOMINATOR, "vanishing denominator {s}");
    s
}

pub fn chu_epsilon(n: usize) -> f64 {
    if n % 4 == 2 {
        2.0
    } else {
        0.0
    }
}

pub fn frank_gamma(n: usize) -> f64 {
    let nf = n as f64;
    if n.is_multiple_of(2) {
        3.0 * nf * nf
    } else {
        2.0 * nf * nf - 2.0 * nf
    }
}

/// Closed form for ‖g_n‖₄⁴.
pub fn chu_l4_closed(n: usize) -> Result<ClosedFormBreakdown> {
    if n == 0 {
        return Err(MeritError::InvalidParameter("n must be at least 1".into()));
    }
    let half = n / 2;
    let sum = pairwise_sum_by(half, |i| {
        let u = i + 1;
        let ratio = sin_pi_square_ratio(u, n) / checked_denominator(sin_pi_ratio(u, n));
        ratio * ratio
    });
    let nf = n as f64;
    Ok(ClosedFormBreakdown::new(Family::Chu, n, nf * nf, chu_epsilon(n), 4.0 * sum))
}

/// `|sin(πu²/n) / sin(πu/n)|`, the magnitude of lag `u` of the Chu sequence.
pub fn chu_acf_magnitude(n: usize, u: usize) -> Result<f64> {
    if u == 0 || u >= n {
        return Err(MeritError::InvalidParameter(format!(
            "lag {u} outside [1, {}]",
            n.saturating_sub(1)
        )));
    }
    Ok((sin_pi_square_ratio(u, n) / checked_denominator(sin_pi_ratio(u, n))).abs())
}

/// Closed form for ‖h_n‖₄⁴ in O(n): the inner sum over `k` is a running
/// prefix sum of `sin²(πk/n)` shared across `v`.
pub fn frank_l4_closed(n: usize) -> Result<ClosedFormBreakdown> {
    if n == 0 {
        return Err(MeritError::InvalidParameter("n must be at least 1".into()));
    }
    let half = n / 2;
    let mut prefix = NeumaierSum::new();
    let mut terms = Vec::with_capacity(half);
    for v in 1..=half {
        let s = sin_pi_ratio(v, n);
        let s2 = s * s;
        prefix.add(s2);
        terms.push(prefix.value() / checked_denominator(s2));
    }
    Ok(frank_breakdown(n, pairwise_sum(&terms)))
}

/// The O(n²) form evaluating every inner sum afresh. Reference for [`frank_l4_closed`].
pub fn frank_l4_closed_naive(n: usize) -> Result<ClosedFormBreakdown> {
    if n == 0 {
        return Err(MeritError::InvalidParameter("n must be at least 1".into()));
    }
    let sum = pairwise_sum_by(n / 2, |i| {
        let v = i + 1;
        let denom = checked_denominator(sin_pi_ratio(v, n));
        pairwise_sum_by(v, |j| {
            let r = sin_pi_ratio(j + 1, n) / denom;
            r * r
        })
    });
    Ok(frank_breakdown(n, sum))
}

fn frank_breakdown(n: usize, double_sum: f64) -> ClosedFormBreakdown {
    let nf = n as f64;
    ClosedFormBreakdown::new(
        Family::Frank,
        n,
        nf.powi(4),
        frank_gamma(n),
        8.0 * nf * double_sum,
    )
}

/// Returns `(8n Σ_{k=1}^{n/2} sin²(πk/n), 2n² + 4n)` for even `n`.
pub fn even_n_correction_identity(n: usize) -> Result<(f64, f64)> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(MeritError::InvalidParameter(format!(
            "n = {n} must be even and positive"
        )));
    }
    let nf = n as f64;
    let lhs = 8.0
        * nf
        * pairwise_sum_by(n / 2, |i| {
            let s = sin_pi_ratio(i + 1, n);
            s * s
        });
    Ok((lhs, 2.0 * nf * nf + 4.0 * nf))
}

/// Maximum deviations of the four Frank autocorrelation identities.
#[derive(Clone, Debug, PartialEq)]
pub struct FrankLagReport {
    pub n: usize,
    /// (a) `max |c_{nu}|` over `1 ≤ u < n`.
    pub zero_multiples: f64,
    /// (b) `max |c_{nu+v} + ζ^v c_{nu+n-v}|` over stored pairs `(u, v) ≠ (0, 0)`.
    pub symmetry: f64,
    /// (c) `max_v |Σ_u |c_{nu+v}|² − (2n Σ_{k≤v} (sin(πk/n)/sin(πv/n))² − n)|` over `0 < v < n/2`.
    pub per_v_energy: f64,
    /// (d) `|2 Σ_u |c_{nu+n/2}|² − n²|`, even `n` only.
    pub half_point: Option<f64>,
}

impl FrankLagReport {
    pub fn zero_multiples_tolerance(&self) -> f64 {
        1e-9 * (self.n * self.n) as f64
    }

    pub fn symmetry_tolerance(&self) -> f64 {
        1e-8 * self.n as f64
    }

    /// Energy identities are compared with an absolute tolerance scaled by `c_0 = n²`.
    pub fn energy_tolerance(&self) -> f64 {
        1e-9 * (self.n * self.n) as f64
    }

    /// The first failing identity, if any.
    pub fn failure(&self) -> Option<MeritError> {
        let checks = [
            ("c_{nu} = 0", self.zero_multiples, self.zero_multiples_tolerance()),
            ("c_{nu+v} = -ζ^v c_{nu+n-v}", self.symmetry, self.symmetry_tolerance()),
            ("per-v energy sum", self.per_v_energy, self.energy_tolerance()),
            ("half-point energy n²", self.half_point.unwrap_or(0.0), self.energy_tolerance()),
        ];
        checks
            .into_iter()
            .find(|(_, dev, tol)| !(dev <= tol))
            .map(|(identity, deviation, tolerance)| MeritError::StructuralIdentity {
                identity,
                n: self.n,
                deviation,
                tolerance,
            })
    }
}

/// Computes the deviations of all four identities from the profile of `frank(n)`.
pub fn frank_lag_deviations(n: usize) -> Result<FrankLagReport> {
    if n < 2 {
        return Err(MeritError::InvalidParameter("n must be at least 2".into()));
    }
    let p = acf(&frank(n)?);
    Ok(frank_lag_deviations_from(n, &p))
}

pub(crate) fn frank_lag_deviations_from(n: usize, p: &AutocorrelationProfile) -> FrankLagReport {
    let c = p.values();
    let d = n * n;
    let at = |i: usize| c.get(i).copied().unwrap_or_default();
    let zeta = |v: usize| Complex64::from_polar(1.0, 2.0 * PI * v as f64 / n as f64);

    let zero_multiples = (1..n).map(|u| at(n * u).norm()).fold(0.0, f64::max);

    let mut symmetry: f64 = 0.0;
    for u in 0..n {
        for v in 0..n {
            if (u, v) == (0, 0) || n * u + n - v >= d {
                continue;
            }
            let dev = (at(n * u + v) + zeta(v) * at(n * u + n - v)).norm();
            symmetry = symmetry.max(dev);
        }
    }

    let energy = |v: usize| pairwise_sum_by(n, |u| at(n * u + v).norm_sqr());
    let nf = n as f64;
    let mut per_v_energy: f64 = 0.0;
    for v in (1..n).take_while(|&v| 2 * v < n) {
        let denom = sin_pi_ratio(v, n);
        let inner = pairwise_sum_by(v, |j| {
            let r = sin_pi_ratio(j + 1, n) / denom;
            r * r
        });
        per_v_energy = per_v_energy.max((energy(v) - (2.0 * nf * inner - nf)).abs());
    }

    let half_point = n.is_multiple_of(2).then(|| (2.0 * energy(n / 2) - nf * nf).abs());

    FrankLagReport {
        n,
        zero_multiples,
        symmetry,
        per_v_energy,
        half_point,
    }
}

/// Like [`frank_lag_deviations`], but fails with a report naming the first
/// identity that does not hold within tolerance.
pub fn frank_lag_structure_check(n: usize) -> Result<FrankLagReport> {
    let report = frank_lag_deviations(n)?;
    match report.failure() {
        Some(err) => Err(err),
        None => Ok(report),
    }
}
