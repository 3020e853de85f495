//! Exit criteria. Every criterion runs at its pinned tolerance and prints one
//! PASS/FAIL line; the test fails if any criterion fails.
//!
//! Criteria run sequentially inside one test so the timing criteria are not
//! measured while other heavy tests compete for the cores.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use meritlab::asymptotics::{
    integral_p_on_half_pi, integral_sin2_over_y32, littlewood_refutation, proof_bound_witness,
    em_remainder_check, sine_replacement_gap, WitnessFunction, CHU_LIMIT, FRANK_LIMIT,
    LITTLEWOOD_CONSTANT, MERCER_BOUND,
};
use meritlab::autocorrelation::{acf_direct_lag, acf_fft};
use meritlab::closed_forms::{chu_l4_closed, frank_l4_closed, frank_lag_structure_check};
use meritlab::norms::{alpha_ratio, l4_from_acf, l4_quadrature, merit_factor};
use meritlab::sequences::{chu, frank};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = fn() -> Outcome;

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn chu_alpha(n: usize) -> f64 {
    alpha_ratio(chu_l4_closed(n).unwrap().total, n).unwrap()
}

fn frank_beta(n: usize) -> f64 {
    alpha_ratio(frank_l4_closed(n).unwrap().total, n * n).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn c1_littlewood_range() -> Outcome {
    let (alphas, t) = timed(|| (18..=41).map(chu_alpha).collect::<Vec<_>>());
    let lo = alphas.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = alphas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let inside = alphas.iter().all(|a| (0.604..=0.656).contains(a));
    outcome(
        inside && t < Duration::from_secs(1),
        format!("α_n ∈ [{lo:.6}, {hi:.6}] for n ∈ [18, 41], {t:.2?}"),
    )
}

fn c2_chu_limit() -> Outcome {
    let (gaps, t) = timed(|| {
        (500..=2000usize)
            .into_par_iter()
            .map(|n| (chu_alpha(n) - CHU_LIMIT).abs())
            .collect::<Vec<_>>()
    });
    let worst = gaps.iter().copied().fold(0.0, f64::max);
    let last = *gaps.last().unwrap();
    outcome(
        worst < 0.01 && last < 0.002 && t < Duration::from_secs(10),
        format!("max |α_n − 2/π| = {worst:.3e} on [500, 2000], |α_2000 − 2/π| = {last:.3e}, {t:.2?}"),
    )
}

fn c3_frank_limit() -> Outcome {
    let (gaps, t) = timed(|| {
        (60..=150usize)
            .map(|n| (frank_beta(n) - FRANK_LIMIT).abs())
            .collect::<Vec<_>>()
    });
    let worst = gaps.iter().copied().fold(0.0, f64::max);
    outcome(
        worst < 0.01 && t < Duration::from_secs(10),
        format!("max |β_n − 4/π²| = {worst:.3e} on [60, 150], {t:.2?}"),
    )
}

fn c4_chu_oracle() -> Outcome {
    let worst = (1..=2000usize)
        .into_par_iter()
        .map(|n| rel(chu_l4_closed(n).unwrap().total, l4_from_acf(&chu(n).unwrap()).unwrap().l4_4))
        .reduce(|| 0.0, f64::max);
    outcome(worst <= 1e-10, format!("max relative gap {worst:.3e} for n ≤ 2000"))
}

fn c5_frank_oracle() -> Outcome {
    let worst = (1..=150usize)
        .into_par_iter()
        .map(|n| rel(frank_l4_closed(n).unwrap().total, l4_from_acf(&frank(n).unwrap()).unwrap().l4_4))
        .reduce(|| 0.0, f64::max);
    let structure: Vec<_> = (2..=64usize)
        .into_par_iter()
        .map(frank_lag_structure_check)
        .collect();
    let failures: Vec<String> = structure
        .iter()
        .filter_map(|r| r.as_ref().err().map(|e| e.to_string()))
        .collect();
    outcome(
        worst <= 1e-10 && failures.is_empty(),
        format!(
            "max relative gap {worst:.3e} for n ≤ 150; structure identities failing for {} of 63 n{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

fn c6_triple_route() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [2usize, 3, 4, 17, 64, 257] {
        for (s, closed) in [
            (chu(n).unwrap(), chu_l4_closed(n).unwrap().total),
            (frank(n).unwrap(), frank_l4_closed(n).unwrap().total),
        ] {
            let a = l4_from_acf(&s).unwrap().l4_4;
            let q = l4_quadrature(&s).unwrap().l4_4;
            worst = worst.max(rel(a, q)).max(rel(a, closed)).max(rel(q, closed));
        }
    }
    outcome(worst <= 1e-10, format!("max pairwise relative gap {worst:.3e}"))
}

fn c7_integrals() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for t in [1e2, 1e4, 1e6] {
        let v = integral_sin2_over_y32(t).unwrap().value;
        let gap = (v - PI.sqrt()).abs();
        ok &= gap <= 2.0 / t.sqrt() + 1e-8;
        parts.push(format!("T={t:e}: gap {gap:.3e} ≤ {:.3e}", 2.0 / t.sqrt() + 1e-8));
    }
    let p = integral_p_on_half_pi().unwrap().quadrature;
    ok &= (p - 1.0).abs() <= 1e-10;
    parts.push(format!("∫p = 1 {:+.3e}", p - 1.0));
    outcome(ok, parts.join("; "))
}

fn c8_bounds() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [10usize, 100, 1000] {
        for f in [WitnessFunction::R, WitnessFunction::RPrime, WitnessFunction::RDoublePrime] {
            match proof_bound_witness(f, n) {
                Ok(w) => {
                    ok &= w.pass && w.grid_points >= 100_000;
                    parts.push(format!("{f}(n={n}) {:.4} ≤ {:.4}", w.observed, w.claimed));
                }
                Err(e) => {
                    ok = false;
                    parts.push(e.to_string());
                }
            }
        }
    }
    match proof_bound_witness(WitnessFunction::PPrime, 1) {
        Ok(w) => {
            ok &= w.pass && w.grid_min > -3.0 && w.grid_max <= 2.0 + 1e-9;
            parts.push(format!("p' ∈ [{:.4}, {:.4}]", w.grid_min, w.grid_max));
        }
        Err(e) => {
            ok = false;
            parts.push(e.to_string());
        }
    }
    for n in [10usize, 100, 10_000] {
        let em = em_remainder_check(n).unwrap();
        let gap = sine_replacement_gap(n).unwrap();
        ok &= em.pass() && gap < n as f64 / 2.0;
        parts.push(format!("EM(n={n}) {:.3} ≤ {:.3}, gap {gap:.1} < {}", em.actual, em.simple_bound, n / 2));
    }
    outcome(ok, parts.join("; "))
}

fn c9_refutation() -> Outcome {
    let r = littlewood_refutation(100, 1000).unwrap();
    outcome(
        r.pass && r.max_alpha < MERCER_BOUND && r.all_closer_to_limit,
        format!(
            "max α_n = {:.6} < {MERCER_BOUND:.5}; all closer to 2/π than to {LITTLEWOOD_CONSTANT:.5}: {}",
            r.max_alpha, r.all_closer_to_limit
        ),
    )
}

fn c10_merit_growth() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [500usize, 1000, 2000] {
        let mf = merit_factor(chu_l4_closed(n).unwrap().total, n) / (n as f64).sqrt();
        ok &= (mf - PI / 2.0).abs() <= 0.05;
        parts.push(format!("chu {n}: {mf:.4}"));
    }
    for n in [60usize, 100, 150] {
        let mf = merit_factor(frank_l4_closed(n).unwrap().total, n * n) / n as f64;
        ok &= (mf - PI * PI / 4.0).abs() <= 0.05;
        parts.push(format!("frank {n}: {mf:.4}"));
    }
    outcome(ok, format!("π/2 = {:.4}, π²/4 = {:.4}; {}", PI / 2.0, PI * PI / 4.0, parts.join(", ")))
}

fn c11_performance() -> Outcome {
    let s = chu(1_000_000).unwrap();
    let (profile, t_fft) = timed(|| acf_fft(&s));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let worst = (0..32)
        .map(|_| {
            let u = rng.random_range(0..s.len());
            (profile.values()[u] - acf_direct_lag(s.coefficients(), u)).norm()
        })
        .fold(0.0, f64::max);
    let (_, t_closed) = timed(|| frank_l4_closed(10_000).unwrap());
    outcome(
        t_fft < Duration::from_secs(5) && worst <= 1e-6 && t_closed < Duration::from_secs(1),
        format!("acf_fft(chu(10⁶)) {t_fft:.2?}, max lag error {worst:.3e}; frank_l4_closed(10⁴) {t_closed:.2?}"),
    )
}

fn c12_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_meritlab"))
            .args(["table", "--family", "chu", "--n-min", "2", "--n-max", "500", "--jobs", "8"])
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    outcome(
        a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty(),
        format!("two runs, {} bytes each, identical: {}", a.stdout.len(), a.stdout == b.stdout),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, Criterion); 12] = [
        ("1  Littlewood range reproduction", c1_littlewood_range),
        ("2  Chu ratio tends to 2/π", c2_chu_limit),
        ("3  Frank ratio tends to 4/π²", c3_frank_limit),
        ("4  Chu closed form vs correlations", c4_chu_oracle),
        ("5  Frank closed form vs correlations + structure", c5_frank_oracle),
        ("6  Triple-route agreement", c6_triple_route),
        ("7  Integral identities", c7_integrals),
        ("8  Bound witnesses", c8_bounds),
        ("9  Refutation report", c9_refutation),
        ("10 Merit-factor growth", c10_merit_growth),
        ("11 Performance", c11_performance),
        ("12 Determinism", c12_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let o = check();
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
