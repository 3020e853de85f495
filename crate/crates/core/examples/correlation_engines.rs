//! Compare the direct and FFT autocorrelation engines on a Chu sequence.
//!
//! ```bash
//! cargo run --release -p meritlab --example correlation_engines -- 4096
//! ```

use std::time::Instant;

use meritlab::autocorrelation::{acf_direct, acf_fft, max_abs_difference, sum_abs_squared};
use meritlab::sequences::chu;

fn main() -> meritlab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4096);
    let s = chu(n)?;

    let t = Instant::now();
    let direct = acf_direct(&s);
    let t_direct = t.elapsed();

    let t = Instant::now();
    let fft = acf_fft(&s);
    let t_fft = t.elapsed();

    println!("chu({n})");
    println!("  direct engine   {t_direct:>10.2?}");
    println!("  fft engine      {t_fft:>10.2?}");
    println!("  max |Δc_u|      {:.3e}", max_abs_difference(&direct, &fft));
    println!("  c_0             {}", direct.values()[0]);
    println!("  first lags |c_u|:");
    for u in 1..8.min(n) {
        println!("    u = {u}: {:.6}", direct.values()[u].norm());
    }
    println!("  ‖g_n‖₄⁴ = c_0² + 2Σ|c_u|² = {:.6}", sum_abs_squared(&direct));
    Ok(())
}
