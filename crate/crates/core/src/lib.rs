//! Aperiodic autocorrelations, L⁴ norms and merit factors of the Chu
//! polynomials `g_n(z) = Σ e^{πik²/n} z^k` and the Frank polynomials
//! `h_n(z) = Σ_{j,k} e^{2πijk/n} z^{nj+k}`.
//!
//! Every quantity is available by more than one independent route so the
//! routes can check each other:
//!
//! - [`autocorrelation`]: direct and FFT correlation engines,
//! - [`norms`]: ‖f‖₄⁴ from correlations and from exact quadrature on the circle,
//! - [`closed_forms`]: exact trigonometric sums for both families,
//! - [`asymptotics`]: convergence of the normalized excess to `2/π` and `4/π²`,
//!   and the analytic bounds and integrals that explain it.
//!
//! ```
//! use meritlab::{closed_forms, norms, sequences};
//!
//! let s = sequences::chu(4).unwrap();
//! let report = norms::l4_from_acf(&s).unwrap();
//! assert!((report.l4_4 - 20.0).abs() < 1e-12);
//! assert!((closed_forms::chu_l4_closed(4).unwrap().total - 20.0).abs() < 1e-12);
//! ```

// `!(x > 0.0)` style guards are deliberate: they reject NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod autocorrelation;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod format;
pub mod norms;
pub mod quadrature;
pub mod sequences;
pub mod summation;
pub mod verify;

pub use error::{MeritError, Result};
pub use sequences::{Family, UnimodularSequence};
