//! Closed-form breakdowns for both families and the Frank lag-structure identities.
//!
//! ```bash
//! cargo run --release -p meritlab --example closed_forms
//! ```

use meritlab::closed_forms::{
    chu_l4_closed, even_n_correction_identity, frank_l4_closed, frank_lag_structure_check,
    write_breakdown_csv,
};

fn main() -> meritlab::Result<()> {
    let mut rows = Vec::new();
    for n in 1..=8 {
        rows.push(chu_l4_closed(n)?);
    }
    for n in 1..=8 {
        rows.push(frank_l4_closed(n)?);
    }
    write_breakdown_csv(&rows, std::io::stdout())?;

    println!("\nFrank autocorrelation structure (max deviations):");
    for n in [2usize, 3, 8, 16, 31, 64] {
        let r = frank_lag_structure_check(n)?;
        println!(
            "  n = {n:>2}: c_nu {:.1e}, symmetry {:.1e}, per-v energy {:.1e}, half point {}",
            r.zero_multiples,
            r.symmetry,
            r.per_v_energy,
            r.half_point.map(|h| format!("{h:.1e}")).unwrap_or_else(|| "n/a".into())
        );
    }

    println!("\nEven-n correction term 8nΣ sin²(πk/n) = 2n² + 4n:");
    for n in [2usize, 4, 10, 1000] {
        let (lhs, rhs) = even_n_correction_identity(n)?;
        println!("  n = {n:>4}: {lhs:.6} vs {rhs}");
    }
    Ok(())
}
