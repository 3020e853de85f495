//! Littlewood's constant 1.15051… against the observed α_n and Mercer's bound.
//!
//! ```bash
//! cargo run --release -p meritlab --example littlewood
//! ```

use meritlab::asymptotics::{
    borwein_choi_delta_ratio, littlewood_refutation, CHU_LIMIT, LITTLEWOOD_CONSTANT, MERCER_BOUND,
};

fn main() -> meritlab::Result<()> {
    println!("Littlewood's constant  {LITTLEWOOD_CONSTANT:.10}");
    println!("Mercer's bound         {MERCER_BOUND:.10}");
    println!("2/π                    {CHU_LIMIT:.10}\n");

    for (lo, hi) in [(18, 41), (100, 1000), (1000, 20000)] {
        let r = littlewood_refutation(lo, hi)?;
        println!(
            "n ∈ [{lo}, {hi}]: max α = {:.6} (n = {}), α_{hi} = {:.6}, |α − 2/π| = {:.2e}, |α − 1.15051| = {:.4}, pass = {}",
            r.max_alpha, r.argmax_n, r.alpha_at_n_max, r.distance_to_limit, r.distance_to_littlewood, r.pass
        );
    }

    println!("\nObserved n^(1/2) coefficient of ‖g_n‖₄⁴ relative to the conjectured δ_n:");
    for n in [1000usize, 1001, 1002, 1003, 100_000] {
        println!("  n = {n:>6}: {:.6}", borwein_choi_delta_ratio(n)?);
    }
    Ok(())
}
