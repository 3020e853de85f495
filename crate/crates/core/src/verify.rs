//! The full identity and bound suite behind `meritlab verify`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{
    borwein_choi_delta_ratio, borwein_choi_scaled_residual, convergence_table, em_remainder_check, integral_p_on_half_pi,
    integral_sin2_over_y32, laplace_route_sqrt_pi, laplace_transform_sin2, littlewood_refutation,
    proof_bound_witness, sine_replacement_gap, WitnessFunction, BOUND_SLACK, MERCER_BOUND,
};
use crate::autocorrelation::acf_direct;
use crate::closed_forms::{
    chu_acf_magnitude, chu_l4_closed, even_n_correction_identity, frank_l4_closed,
    frank_l4_closed_naive, frank_lag_deviations,
};
use crate::error::{MeritError, Result};
use crate::format::serialize_sci17;
use crate::norms::{l4_from_acf, l4_quadrature_value};
use crate::sequences::{chu, frank, Family};

/// Environment variable naming a `key=value` file that overrides [`VerifyCaps`].
pub const CONFIG_ENV: &str = "MERITLAB_CONFIG";

/// Upper limits of the `n` sweeps run by the suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyCaps {
    pub chu_oracle_max: usize,
    pub frank_oracle_max: usize,
    pub frank_structure_max: usize,
    pub chu_magnitude_max: usize,
    pub frank_prefix_max: usize,
    pub even_correction_max: usize,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        Self {
            chu_oracle_max: 2000,
            frank_oracle_max: 150,
            frank_structure_max: 64,
            chu_magnitude_max: 500,
            frank_prefix_max: 500,
            even_correction_max: 10_000,
        }
    }
}

impl VerifyCaps {
    /// Every cap halved.
    pub fn quick() -> Self {
        Self::default().halved()
    }

    pub fn halved(&self) -> Self {
        let h = |x: usize| (x / 2).max(2);
        Self {
            chu_oracle_max: h(self.chu_oracle_max),
            frank_oracle_max: h(self.frank_oracle_max),
            frank_structure_max: h(self.frank_structure_max),
            chu_magnitude_max: h(self.chu_magnitude_max),
            frank_prefix_max: h(self.frank_prefix_max),
            even_correction_max: h(self.even_correction_max),
        }
    }

    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                MeritError::Parse(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let value: usize = value.trim().parse().map_err(|e| {
                MeritError::Parse(format!("config line {}: {e}", lineno + 1))
            })?;
            let slot = match key.trim() {
                "chu_oracle_max" => &mut self.chu_oracle_max,
                "frank_oracle_max" => &mut self.frank_oracle_max,
                "frank_structure_max" => &mut self.frank_structure_max,
                "chu_magnitude_max" => &mut self.chu_magnitude_max,
                "frank_prefix_max" => &mut self.frank_prefix_max,
                "even_correction_max" => &mut self.even_correction_max,
                other => {
                    return Err(MeritError::Parse(format!(
                        "config line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            };
            *slot = value;
        }
        Ok(())
    }

    pub fn from_file(path: &Path, base: Self) -> Result<Self> {
        let mut caps = base;
        caps.apply_config(&std::fs::read_to_string(path)?)?;
        Ok(caps)
    }
}

/// One entry of the verification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationCheck {
    pub check_id: String,
    #[serde(serialize_with = "serialize_sci17")]
    pub claimed: f64,
    #[serde(serialize_with = "serialize_sci17")]
    pub observed: f64,
    #[serde(serialize_with = "serialize_sci17")]
    pub tolerance: f64,
    pub pass: bool,
}

impl VerificationCheck {
    /// `|observed − claimed| ≤ tolerance`.
    fn equal(id: impl Into<String>, claimed: f64, observed: f64, tolerance: f64) -> Self {
        Self {
            check_id: id.into(),
            claimed,
            observed,
            tolerance,
            pass: (observed - claimed).abs() <= tolerance,
        }
    }

    /// `observed ≤ claimed + tolerance`.
    fn at_most(id: impl Into<String>, claimed: f64, observed: f64, tolerance: f64) -> Self {
        Self {
            check_id: id.into(),
            claimed,
            observed,
            tolerance,
            pass: observed <= claimed + tolerance,
        }
    }

    fn failed(id: impl Into<String>, err: &MeritError) -> Self {
        eprintln!("check failed with error: {err}");
        Self {
            check_id: id.into(),
            claimed: f64::NAN,
            observed: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
        }
    }

    /// Diagnostic checks are reported but do not affect the exit status.
    pub fn is_diagnostic(&self) -> bool {
        self.check_id.starts_with("diagnostic.")
    }
}

pub fn all_pass(checks: &[VerificationCheck]) -> bool {
    checks.iter().all(|c| c.pass || c.is_diagnostic())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn max_over<F>(ns: impl IntoParallelIterator<Item = usize>, f: F) -> Result<f64>
where
    F: Fn(usize) -> Result<f64> + Sync + Send,
{
    let v: Vec<f64> = ns.into_par_iter().map(f).collect::<Result<_>>()?;
    Ok(v.into_iter().fold(0.0, f64::max))
}

fn lift(id: &str, r: Result<VerificationCheck>) -> VerificationCheck {
    r.unwrap_or_else(|e| VerificationCheck::failed(id, &e))
}

/// Runs every check and returns the report in a fixed order.
pub fn run_verification(caps: &VerifyCaps) -> Vec<VerificationCheck> {
    let mut out = Vec::new();

    out.push(lift(
        "chu.closed_vs_acf",
        max_over(1..=caps.chu_oracle_max, |n| {
            Ok(rel(chu_l4_closed(n)?.total, l4_from_acf(&chu(n)?)?.l4_4))
        })
        .map(|m| VerificationCheck::at_most("chu.closed_vs_acf", 0.0, m, 1e-10)),
    ));

    out.push(lift(
        "chu.acf_magnitude",
        max_over(2..=caps.chu_magnitude_max, |n| {
            let p = acf_direct(&chu(n)?);
            (1..n).try_fold(0.0f64, |m, u| {
                Ok(m.max((chu_acf_magnitude(n, u)? - p.values()[u].norm()).abs()))
            })
        })
        .map(|m| VerificationCheck::at_most("chu.acf_magnitude", 0.0, m, 1e-9)),
    ));

    out.push(lift(
        "frank.closed_vs_acf",
        max_over(1..=caps.frank_oracle_max, |n| {
            Ok(rel(frank_l4_closed(n)?.total, l4_from_acf(&frank(n)?)?.l4_4))
        })
        .map(|m| VerificationCheck::at_most("frank.closed_vs_acf", 0.0, m, 1e-10)),
    ));

    out.push(lift(
        "frank.prefix_vs_naive",
        max_over(1..=caps.frank_prefix_max, |n| {
            Ok(rel(frank_l4_closed(n)?.total, frank_l4_closed_naive(n)?.total))
        })
        .map(|m| VerificationCheck::at_most("frank.prefix_vs_naive", 0.0, m, 1e-11)),
    ));

    let structure: Result<Vec<_>> = (2..=caps.frank_structure_max)
        .into_par_iter()
        .map(frank_lag_deviations)
        .collect();
    match structure {
        Ok(reports) => {
            let worst = |f: &dyn Fn(&crate::closed_forms::FrankLagReport) -> f64| {
                reports.iter().map(f).fold(0.0, f64::max)
            };
            // Deviations are scaled by each n's own tolerance so one check covers the sweep.
            out.push(VerificationCheck::at_most(
                "frank.structure.zero_multiples",
                1.0,
                worst(&|r| r.zero_multiples / r.zero_multiples_tolerance()),
                0.0,
            ));
            out.push(VerificationCheck::at_most(
                "frank.structure.symmetry",
                1.0,
                worst(&|r| r.symmetry / r.symmetry_tolerance()),
                0.0,
            ));
            out.push(VerificationCheck::at_most(
                "frank.structure.per_v_energy",
                1.0,
                worst(&|r| r.per_v_energy / r.energy_tolerance()),
                0.0,
            ));
            out.push(VerificationCheck::at_most(
                "frank.structure.half_point",
                1.0,
                worst(&|r| r.half_point.unwrap_or(0.0) / r.energy_tolerance()),
                0.0,
            ));
        }
        Err(e) => out.push(VerificationCheck::failed("frank.structure", &e)),
    }

    out.push(lift(
        "frank.even_correction",
        max_over((1..=caps.even_correction_max / 2).map(|h| 2 * h).collect::<Vec<_>>(), |n| {
            let (l, r) = even_n_correction_identity(n)?;
            Ok(rel(l, r))
        })
        .map(|m| VerificationCheck::at_most("frank.even_correction", 0.0, m, 1e-9)),
    ));

    for family in [Family::Chu, Family::Frank] {
        for n in [2usize, 3, 4, 17, 64, 257] {
            let id = format!("routes.{family}.{n}");
            let r = (|| -> Result<VerificationCheck> {
                let s = if family == Family::Chu { chu(n)? } else { frank(n)? };
                let a = l4_from_acf(&s)?.l4_4;
                let q = l4_quadrature_value(s.coefficients());
                let c = if family == Family::Chu { chu_l4_closed(n)? } else { frank_l4_closed(n)? }.total;
                let spread = rel(a, q).max(rel(a, c)).max(rel(q, c));
                Ok(VerificationCheck::at_most(id.clone(), 0.0, spread, 1e-10))
            })();
            out.push(lift(&id, r));
        }
    }

    let littlewood_range: Result<Vec<_>> =
        convergence_table(Family::Chu, &(18..=41).collect::<Vec<_>>());
    match littlewood_range {
        Ok(rows) => {
            let lo = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
            let hi = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
            out.push(VerificationCheck {
                check_id: "chu.littlewood_range.min".into(),
                claimed: 0.604,
                observed: lo,
                tolerance: 0.0,
                pass: lo >= 0.604,
            });
            out.push(VerificationCheck::at_most("chu.littlewood_range.max", 0.656, hi, 0.0));
        }
        Err(e) => out.push(VerificationCheck::failed("chu.littlewood_range", &e)),
    }

    out.push(lift(
        "chu.mercer",
        littlewood_refutation(100, 1000).map(|r| {
            let mut c = VerificationCheck::at_most("chu.mercer", MERCER_BOUND, r.max_alpha, 0.0);
            c.pass = r.pass && r.all_closer_to_limit && r.max_alpha < MERCER_BOUND;
            c
        }),
    ));

    out.push(lift(
        "diagnostic.borwein_choi",
        borwein_choi_scaled_residual(1000, 2000)
            .map(|m| VerificationCheck::at_most("diagnostic.borwein_choi", 10.0, m, 0.0)),
    ));
    out.push(lift(
        "diagnostic.borwein_choi.delta_ratio",
        max_over(1000..=2000, |n| Ok((borwein_choi_delta_ratio(n)? - 1.0).abs()))
            .map(|m| VerificationCheck::at_most("diagnostic.borwein_choi.delta_ratio", 0.0, m, 0.05)),
    ));

    for t in [1e2, 1e4, 1e6] {
        let id = format!("integral.sin2_over_y32.T{t:e}");
        let r = integral_sin2_over_y32(t).map(|e| {
            VerificationCheck::equal(id.clone(), PI.sqrt(), e.value, 2.0 / t.sqrt() + 1e-8)
        });
        out.push(lift(&id, r));
    }
    for t in [1.0, 2.0, 5.0] {
        let id = format!("integral.laplace_sin2.t{t}");
        let r = laplace_transform_sin2(t).map(|(q, exact)| VerificationCheck::equal(id.clone(), exact, q, 1e-8));
        out.push(lift(&id, r));
    }
    out.push(lift(
        "integral.laplace_route",
        laplace_route_sqrt_pi().map(|v| VerificationCheck::equal("integral.laplace_route", PI.sqrt(), v, 1e-10)),
    ));
    match integral_p_on_half_pi() {
        Ok(h) => {
            out.push(VerificationCheck::equal("integral.p_half_pi", 1.0, h.quadrature, 1e-10));
            out.push(VerificationCheck::equal(
                "integral.p_antiderivative",
                1.0,
                h.antiderivative_difference(),
                1e-10,
            ));
        }
        Err(e) => out.push(VerificationCheck::failed("integral.p_half_pi", &e)),
    }

    let mut witnesses = Vec::new();
    for n in [10usize, 100, 1000] {
        for f in [WitnessFunction::R, WitnessFunction::RPrime, WitnessFunction::RDoublePrime] {
            witnesses.push((f, n));
        }
    }
    witnesses.push((WitnessFunction::P, 1));
    witnesses.push((WitnessFunction::PPrime, 1));
    for (f, n) in witnesses {
        let id = match f {
            WitnessFunction::P | WitnessFunction::PPrime => format!("bound.{f}"),
            _ => format!("bound.{f}.n{n}"),
        };
        let check = match proof_bound_witness(f, n) {
            Ok(w) => VerificationCheck {
                check_id: id,
                claimed: w.claimed,
                observed: w.observed,
                tolerance: BOUND_SLACK,
                pass: w.pass,
            },
            Err(MeritError::BoundViolation(w)) => VerificationCheck {
                check_id: id,
                claimed: w.claimed,
                observed: w.observed,
                tolerance: BOUND_SLACK,
                pass: false,
            },
            Err(e) => VerificationCheck::failed(id, &e),
        };
        out.push(check);
    }

    for n in [10usize, 100, 10_000] {
        let id = format!("euler_maclaurin.n{n}");
        match em_remainder_check(n) {
            Ok(em) => {
                out.push(VerificationCheck::at_most(
                    format!("{id}.simple"),
                    em.simple_bound,
                    em.actual,
                    1e-8,
                ));
                out.push(VerificationCheck::at_most(format!("{id}.sharp"), em.sharp_bound, em.actual, 0.0));
            }
            Err(e) => out.push(VerificationCheck::failed(id, &e)),
        }
        let id = format!("sine_replacement.n{n}");
        let r = sine_replacement_gap(n).map(|g| VerificationCheck {
            check_id: id.clone(),
            claimed: n as f64 / 2.0,
            observed: g,
            tolerance: 0.0,
            pass: g < n as f64 / 2.0,
        });
        out.push(lift(&id, r));
    }

    out
}

/// Report summary keyed by check id, handy for tests.
pub fn by_id(checks: &[VerificationCheck]) -> BTreeMap<&str, &VerificationCheck> {
    checks.iter().map(|c| (c.check_id.as_str(), c)).collect()
}
