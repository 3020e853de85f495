//! Run the norm pipeline on user-supplied unimodular coefficients: here the
//! length-13 Barker sequence, read back through the CSV format.
//!
//! ```bash
//! cargo run -p meritlab --example custom_sequence
//! ```

use num_complex::Complex64;

use meritlab::autocorrelation::acf_direct;
use meritlab::norms::{l4_from_acf, l4_quadrature};
use meritlab::UnimodularSequence;

fn main() -> meritlab::Result<()> {
    let barker = [1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1];
    let s = UnimodularSequence::from_coefficients(
        barker.iter().map(|&b| Complex64::new(b as f64, 0.0)).collect(),
    )?;

    let mut csv = Vec::new();
    s.write_csv(&mut csv)?;
    let s = UnimodularSequence::read_csv(csv.as_slice())?;

    let profile = acf_direct(&s);
    let lags: Vec<String> = profile.values().iter().map(|c| format!("{:.0}", c.re)).collect();
    println!("Barker-13 autocorrelations: [{}]", lags.join(", "));

    let by_acf = l4_from_acf(&s)?;
    let by_quad = l4_quadrature(&s)?;
    println!("‖f‖₄⁴: {} (correlations), {:.12} (quadrature)", by_acf.l4_4, by_quad.l4_4);
    println!("merit factor: {:.6}", by_acf.merit_factor);
    println!("{}", by_acf.to_json());
    Ok(())
}
