//! Generate Chu and Frank sequences, rotate one, and export it as CSV.
//!
//! ```bash
//! cargo run -p meritlab --example sequences -- 8
//! ```

use std::f64::consts::PI;

use meritlab::sequences::{chu, frank, rotate};

fn main() -> meritlab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);

    let g = chu(n)?;
    println!("chu({n}): {} coefficients", g.len());
    for (k, a) in g.coefficients().iter().enumerate() {
        println!("  a_{k:<3} = {:+.6} {:+.6}i   (phase {:.4}π)", a.re, a.im, a.arg() / PI);
    }

    let h = frank(n.min(6))?;
    println!("\nfrank({}): {} coefficients, laid out as an n×n grid of phases/π", h.n(), h.len());
    for row in h.coefficients().chunks(h.n()) {
        let phases: Vec<String> = row.iter().map(|a| format!("{:+.3}", a.arg() / PI)).collect();
        println!("  {}", phases.join(" "));
    }

    // g_n(e^{iπ/n} z) is a common variant in the literature; same norms.
    let shifted = rotate(&g, PI / n as f64);
    println!("\nrotated by π/{n}, as CSV:");
    shifted.write_csv(std::io::stdout())?;
    Ok(())
}
