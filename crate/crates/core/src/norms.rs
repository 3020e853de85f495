//! ‖f‖₂, ‖f‖₄⁴, the Littlewood ratio and the merit factor.
//!
//! The fourth power of the L⁴ norm is computed by two independent routes:
//! from the autocorrelations, and by equispaced sampling of `|f|⁴` on the
//! unit circle. `|f(e^{iθ})|⁴` is a trigonometric polynomial of degree
//! `2(d-1)`, so any rule with `N ≥ 4d-3` equispaced nodes integrates it
//! exactly and the two routes differ only by rounding.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::autocorrelation::{acf, sum_abs_squared, transform_length};
use crate::closed_forms::ClosedFormBreakdown;
use crate::error::{MeritError, Result};
use crate::format::serialize_sci17;
use crate::sequences::{Family, UnimodularSequence};
use crate::summation::pairwise_sum_by;

/// Relative slack below `d²` tolerated by [`alpha_ratio`] before it reports
/// a domain error. Flat sequences legitimately land on `d²` up to rounding.
pub const ALPHA_DOMAIN_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    CorrelationSum,
    Quadrature,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormReport {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    #[serde(serialize_with = "serialize_sci17")]
    pub l2: f64,
    #[serde(serialize_with = "serialize_sci17")]
    pub l4_4: f64,
    #[serde(serialize_with = "serialize_sci17")]
    pub alpha: f64,
    /// `+inf` when the spectrum is flat.
    #[serde(serialize_with = "serialize_sci17")]
    pub merit_factor: f64,
    pub method: NormMethod,
}

impl NormReport {
    /// Fills `l2`, `alpha` and `merit_factor` from `l4_4` and the length.
    pub fn from_l4(family: Family, n: usize, d: usize, l4_4: f64, method: NormMethod) -> Result<Self> {
        alpha_ratio(l4_4, d)?;
        let l2 = (d as f64).sqrt();
        // Recomputed from the stored l2 so the field identity holds bit for bit.
        let alpha = (l4_4 - l2.powi(4)) / l2.powi(3);
        Ok(Self {
            family,
            n,
            d,
            l2,
            l4_4,
            alpha,
            merit_factor: merit_factor(l4_4, d),
            method,
        })
    }

    pub fn from_closed_form(family: Family, b: &ClosedFormBreakdown) -> Result<Self> {
        let d = match family {
            Family::Frank => b.n * b.n,
            _ => b.n,
        };
        Self::from_l4(family, b.n, d, b.total, NormMethod::ClosedForm)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// `(l4_4 - d²) / d^{3/2}`.
pub fn alpha_ratio(l4_4: f64, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(MeritError::InvalidParameter("length must be positive".into()));
    }
    let d = d as f64;
    let d2 = d * d;
    if !(l4_4 >= d2 * (1.0 - ALPHA_DOMAIN_SLACK)) {
        return Err(MeritError::Domain(format!(
            "‖f‖₄⁴ = {l4_4} is below ‖f‖₂⁴ = {d2}"
        )));
    }
    Ok((l4_4 - d2) / d.powf(1.5))
}

/// `d² / (l4_4 - d²)`, or `+inf` for a flat spectrum.
pub fn merit_factor(l4_4: f64, d: usize) -> f64 {
    let d2 = (d as f64).powi(2);
    let excess = l4_4 - d2;
    if excess <= 0.0 {
        f64::INFINITY
    } else {
        d2 / excess
    }
}

/// ‖f‖₄⁴ through the autocorrelation identity.
pub fn l4_from_acf(s: &UnimodularSequence) -> Result<NormReport> {
    let l4 = sum_abs_squared(&acf(s));
    NormReport::from_l4(s.family(), s.n(), s.len(), l4, NormMethod::CorrelationSum)
}

/// Number of equispaced nodes used by [`l4_quadrature`].
pub fn quadrature_nodes(d: usize) -> usize {
    transform_length((4 * d).saturating_sub(3))
}

/// Mean of `|f|⁴` over the `N` roots of unity, `N` from [`quadrature_nodes`].
pub fn l4_quadrature_value(a: &[Complex64]) -> f64 {
    let len = quadrature_nodes(a.len());
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    buf[..a.len()].copy_from_slice(a);
    FftPlanner::<f64>::new().plan_fft_forward(len).process(&mut buf);
    pairwise_sum_by(len, |k| buf[k].norm_sqr().powi(2)) / len as f64
}

/// ‖f‖₄⁴ through exact equispaced quadrature on the unit circle.
pub fn l4_quadrature(s: &UnimodularSequence) -> Result<NormReport> {
    let l4 = l4_quadrature_value(s.coefficients());
    NormReport::from_l4(s.family(), s.n(), s.len(), l4, NormMethod::Quadrature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{chu, frank, rotate};

    #[test]
    fn acf_route_hand_values() {
        let r = l4_from_acf(&chu(4).unwrap()).unwrap();
        assert!((r.l4_4 - 20.0).abs() < 1e-12);
        assert!((r.alpha - 0.5).abs() < 1e-12);
        assert_eq!(r.l2, 2.0);

        let r = l4_from_acf(&frank(2).unwrap()).unwrap();
        assert!((r.l4_4 - 20.0).abs() < 1e-12);
        assert!((r.alpha - 0.5).abs() < 1e-12);

        let r = l4_from_acf(&chu(1).unwrap()).unwrap();
        assert_eq!(r.l4_4, 1.0);
        assert_eq!(r.alpha, 0.0);
        assert!(r.merit_factor.is_infinite());
    }

    #[test]
    fn quadrature_hand_values() {
        assert!((l4_quadrature(&chu(4).unwrap()).unwrap().l4_4 - 20.0).abs() < 1e-10);
        assert!((l4_quadrature(&frank(2).unwrap()).unwrap().l4_4 - 20.0).abs() < 1e-10);
        assert!((l4_quadrature(&chu(1).unwrap()).unwrap().l4_4 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_matches_acf_for_chu_257() {
        let s = chu(257).unwrap();
        let q = l4_quadrature(&s).unwrap().l4_4;
        let a = l4_from_acf(&s).unwrap().l4_4;
        assert!((q - a).abs() / a < 1e-11);
    }

    #[test]
    fn alpha_ratio_cases() {
        assert!((alpha_ratio(20.0, 4).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(alpha_ratio(49.0, 7).unwrap(), 0.0);
        assert!((alpha_ratio(6.0, 2).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(alpha_ratio(15.0, 4), Err(MeritError::Domain(_))));
        assert!(alpha_ratio(1.0, 0).is_err());
    }

    #[test]
    fn report_identities() {
        let r = l4_from_acf(&chu(33).unwrap()).unwrap();
        assert!(r.l4_4 >= r.l2.powi(4));
        assert!((r.merit_factor * r.alpha - r.l2).abs() < 1e-12);
        assert_eq!(r.alpha, (r.l4_4 - r.l2.powi(4)) / r.l2.powi(3));
    }

    #[test]
    fn rotation_keeps_l4() {
        let s = chu(20).unwrap();
        let a = l4_from_acf(&s).unwrap().l4_4;
        let b = l4_from_acf(&rotate(&s, 0.7)).unwrap().l4_4;
        assert!((a - b).abs() / a < 1e-10);
    }

    #[test]
    fn json_keys() {
        let r = l4_from_acf(&frank(2).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in ["family", "n", "d", "l2", "l4_4", "alpha", "merit_factor", "method"] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(v["family"], "frank");
        assert_eq!(v["method"], "correlation_sum");
        assert_eq!(v["l4_4"].as_f64(), Some(20.0));
    }

    #[test]
    fn flat_merit_factor_serializes_as_string() {
        let r = l4_from_acf(&chu(1).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["merit_factor"], "inf");
    }
}
