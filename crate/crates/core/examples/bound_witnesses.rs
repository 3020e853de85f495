//! Sample r, r', r'', p and p' on dense grids against their claimed bounds, and
//! check the Euler–Maclaurin remainder and the sine-replacement gap.
//!
//! ```bash
//! cargo run --release -p meritlab --example bound_witnesses
//! ```

use meritlab::asymptotics::{
    em_remainder_check, proof_bound_witness, scaled_r_sum, sine_replacement_gap, WitnessFunction,
};
use meritlab::MeritError;

fn main() -> meritlab::Result<()> {
    let mut jobs = vec![(WitnessFunction::P, 1), (WitnessFunction::PPrime, 1)];
    for n in [10, 100, 1000] {
        jobs.extend([
            (WitnessFunction::R, n),
            (WitnessFunction::RPrime, n),
            (WitnessFunction::RDoublePrime, n),
        ]);
    }
    for (f, n) in jobs {
        match proof_bound_witness(f, n) {
            Ok(w) => println!(
                "{:<4} n = {:<5} range on grid [{:+.4}, {:+.4}]  {} {:.6} ≤ {:.6}{}",
                f.to_string(),
                n,
                w.grid_min,
                w.grid_max,
                // r and r' are bounded at the endpoint n/2, the rest over the whole grid
                if matches!(f, WitnessFunction::R | WitnessFunction::RPrime) { "|f(n/2)|" } else { "max|f|   " },
                w.observed,
                w.claimed,
                w.claimed_lower.map(|lo| format!(", min > {lo}")).unwrap_or_default()
            ),
            Err(MeritError::BoundViolation(w)) => println!("{f} n = {n}: VIOLATED {w:?}"),
            Err(e) => return Err(e),
        }
    }

    println!("\nEuler–Maclaurin remainder for r on (0, n/2]:");
    for n in [10usize, 100, 1000, 10_000] {
        let em = em_remainder_check(n)?;
        println!(
            "  n = {n:>5}: |Σ − ∫| = {:.4}, first-order bound {:.2}, second-order bound {:.2}",
            em.actual, em.simple_bound, em.sharp_bound
        );
    }

    println!("\nReplacing sin(πu/n) by πu/n:");
    for n in [2usize, 100, 10_000] {
        println!("  n = {n:>5}: gap {:.4} < n/2 = {}", sine_replacement_gap(n)?, n as f64 / 2.0);
    }
    println!("\nΣ r(u) / n^1.5 at n = 10⁵: {:.6} (1/2π = {:.6})", scaled_r_sum(100_000), 0.5 / std::f64::consts::PI);
    Ok(())
}
