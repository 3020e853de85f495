//! ‖f‖₄⁴ by three independent routes: correlations, exact quadrature on the
//! unit circle, and the closed-form trigonometric sums.
//!
//! ```bash
//! cargo run --release -p meritlab --example norm_routes
//! ```

use meritlab::closed_forms::{chu_l4_closed, frank_l4_closed};
use meritlab::norms::{l4_from_acf, l4_quadrature};
use meritlab::sequences::{chu, frank};

fn main() -> meritlab::Result<()> {
    println!("{:<7} {:>4} {:>24} {:>24} {:>24}", "family", "n", "correlation", "quadrature", "closed form");
    for n in [2usize, 3, 4, 17, 64, 257] {
        let s = chu(n)?;
        println!(
            "{:<7} {n:>4} {:>24.10} {:>24.10} {:>24.10}",
            "chu",
            l4_from_acf(&s)?.l4_4,
            l4_quadrature(&s)?.l4_4,
            chu_l4_closed(n)?.total
        );
    }
    for n in [2usize, 3, 4, 17, 64] {
        let s = frank(n)?;
        println!(
            "{:<7} {n:>4} {:>24.10} {:>24.10} {:>24.10}",
            "frank",
            l4_from_acf(&s)?.l4_4,
            l4_quadrature(&s)?.l4_4,
            frank_l4_closed(n)?.total
        );
    }

    let report = l4_from_acf(&chu(64)?)?;
    println!("\nNormReport for chu(64):\n{}", report.to_json());
    Ok(())
}
