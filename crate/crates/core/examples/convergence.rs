//! Convergence of α_n (Chu) to 2/π and β_n (Frank) to 4/π², with merit factors.
//!
//! ```bash
//! cargo run --release -p meritlab --example convergence
//! ```

use std::f64::consts::PI;

use meritlab::asymptotics::{convergence_table, write_convergence_csv};
use meritlab::sequences::Family;

fn main() -> meritlab::Result<()> {
    let chu_ns: Vec<usize> = [10, 100, 1_000, 10_000, 100_000, 1_000_000].into();
    let frank_ns: Vec<usize> = [10, 30, 100, 300, 1_000, 10_000].into();

    println!("Chu: α_n → 2/π = {:.10}", 2.0 / PI);
    for r in convergence_table(Family::Chu, &chu_ns)? {
        println!(
            "  n = {:>8}: α = {:.10}  gap = {:+.3e}  MF/√n = {:.6}",
            r.n,
            r.ratio,
            r.limit_gap,
            1.0 / r.ratio
        );
    }

    println!("\nFrank: β_n → 4/π² = {:.10}", 4.0 / (PI * PI));
    for r in convergence_table(Family::Frank, &frank_ns)? {
        println!(
            "  n = {:>8}: β = {:.10}  gap = {:+.3e}  MF/n  = {:.6}",
            r.n,
            r.ratio,
            r.limit_gap,
            1.0 / r.ratio
        );
    }

    println!("\nPlot-ready CSV for Chu, n = 2..20:");
    let rows = convergence_table(Family::Chu, &(2..=20).collect::<Vec<_>>())?;
    write_convergence_csv(&rows, false, std::io::stdout())?;
    Ok(())
}
