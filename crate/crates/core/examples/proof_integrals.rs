//! The integral identities: ∫₀^∞ sin²y / y^{3/2} dy = √π (directly and via the
//! Laplace transform of sin²) and ∫₀^{π/2} p(y) dy = 1.
//!
//! ```bash
//! cargo run --release -p meritlab --example proof_integrals
//! ```

use std::f64::consts::PI;

use meritlab::asymptotics::{
    integral_p_on_half_pi, integral_sin2_over_y32, laplace_route_sqrt_pi, laplace_transform_sin2,
};

fn main() -> meritlab::Result<()> {
    println!("√π = {:.12}", PI.sqrt());
    for t in [1e1, 1e2, 1e4, 1e6] {
        let e = integral_sin2_over_y32(t)?;
        println!(
            "  ∫_0^{t:<8e} sin²y/y^1.5 = {:.12}  (√π − value = {:.3e}, tail bound {:.3e})",
            e.value,
            PI.sqrt() - e.value,
            2.0 / t.sqrt()
        );
    }

    println!("\nLaplace transform of sin²y:");
    for t in [0.5, 1.0, 2.0, 5.0] {
        let (q, exact) = laplace_transform_sin2(t)?;
        println!("  t = {t}: quadrature {q:.14}, 2/(t³+4t) = {exact:.14}");
    }
    println!("  (2/√π)∫ 2√t/(t³+4t) dt = {:.14}", laplace_route_sqrt_pi()?);

    let h = integral_p_on_half_pi()?;
    println!("\n∫_0^(π/2) p(y) dy = {:.15} (error estimate {:.1e})", h.quadrature, h.error_estimate);
    println!(
        "  −y/tan y: {:.3e} at π/2, {:.12} near 0, difference {:.12}",
        h.antiderivative_upper,
        h.antiderivative_lower,
        h.antiderivative_difference()
    );
    Ok(())
}
