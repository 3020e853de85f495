//! Aperiodic autocorrelations `c_u = Σ_j a_j · conj(a_{j+u})`.
//!
//! Two engines share one contract: [`acf_direct`] evaluates the defining sum
//! lag by lag and serves as the reference, [`acf_fft`] reads every lag off
//! the inverse transform of the zero-padded power spectrum.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::Result;
use crate::format::sci17;
use crate::sequences::UnimodularSequence;
use crate::summation::{pairwise_sum_by, pairwise_sum_complex};

/// Above this length [`acf`] switches from the direct to the FFT engine.
pub const FFT_THRESHOLD: usize = 4096;

/// Non-negative lags `c_0 .. c_{d-1}`; `c_{-u}` is `conj(c_u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AutocorrelationProfile {
    c: Vec<Complex64>,
}

impl AutocorrelationProfile {
    pub fn new(c: Vec<Complex64>) -> Self {
        Self { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.c
    }

    /// `c_u` for any integer lag; zero outside `(-d, d)`.
    pub fn lag(&self, u: isize) -> Complex64 {
        let idx = u.unsigned_abs();
        match self.c.get(idx) {
            Some(v) if u < 0 => v.conj(),
            Some(v) => *v,
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Writes the profile as CSV with header `u,re,im,abs`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["u", "re", "im", "abs"])?;
        for (u, c) in self.c.iter().enumerate() {
            w.write_record([u.to_string(), sci17(c.re), sci17(c.im), sci17(c.norm())])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// One lag of the defining sum, pairwise accumulated.
pub fn acf_direct_lag(a: &[Complex64], u: usize) -> Complex64 {
    if u >= a.len() {
        return Complex64::new(0.0, 0.0);
    }
    pairwise_sum_by(a.len() - u, |j| a[j] * a[j + u].conj())
}

/// Quadratic-time reference engine.
pub fn acf_direct(s: &UnimodularSequence) -> AutocorrelationProfile {
    acf_direct_coefficients(s.coefficients())
}

pub fn acf_direct_coefficients(a: &[Complex64]) -> AutocorrelationProfile {
    let c = (0..a.len())
        .into_par_iter()
        .map(|u| acf_direct_lag(a, u))
        .collect();
    AutocorrelationProfile::new(c)
}

/// Smallest power of two that is at least `min_len` (and at least one).
pub fn transform_length(min_len: usize) -> usize {
    min_len.max(1).next_power_of_two()
}

/// FFT engine: transform length is the smallest power of two `≥ 2d`.
pub fn acf_fft(s: &UnimodularSequence) -> AutocorrelationProfile {
    acf_fft_coefficients(s.coefficients())
}

pub fn acf_fft_coefficients(a: &[Complex64]) -> AutocorrelationProfile {
    let d = a.len();
    let len = transform_length(2 * d);
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(len);
    let inverse = planner.plan_fft_inverse(len);

    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    buf[..d].copy_from_slice(a);
    forward.process(&mut buf);
    for z in buf.iter_mut() {
        *z = Complex64::new(z.norm_sqr(), 0.0);
    }
    inverse.process(&mut buf);

    // The inverse transform yields Σ_j a_{j+u} conj(a_j) = conj(c_u).
    let scale = 1.0 / len as f64;
    let c = buf[..d].iter().map(|z| z.conj() * scale).collect();
    AutocorrelationProfile::new(c)
}

/// Direct engine up to [`FFT_THRESHOLD`], FFT engine beyond.
pub fn acf(s: &UnimodularSequence) -> AutocorrelationProfile {
    if s.len() > FFT_THRESHOLD {
        acf_fft(s)
    } else {
        acf_direct(s)
    }
}

/// `c_0² + 2 Σ_{u≥1} |c_u|²`, which equals the fourth power of the L⁴ norm.
pub fn sum_abs_squared(p: &AutocorrelationProfile) -> f64 {
    let c = p.values();
    let Some(c0) = c.first() else {
        return 0.0;
    };
    let tail = pairwise_sum_by(c.len() - 1, |u| c[u + 1].norm_sqr());
    c0.re * c0.re + 2.0 * tail
}

/// Largest absolute lag-wise difference between two profiles of equal length.
pub fn max_abs_difference(p: &AutocorrelationProfile, q: &AutocorrelationProfile) -> f64 {
    assert_eq!(p.len(), q.len(), "profiles of different lengths");
    p.values()
        .iter()
        .zip(q.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// The reversed sequence. Its profile is `conj(c_u)`, i.e. `c_{-u}` of the original.
pub fn reversed(a: &[Complex64]) -> Vec<Complex64> {
    a.iter().rev().copied().collect()
}

/// The reversed-conjugated sequence, which has exactly the same profile as the original.
pub fn reverse_conjugate(a: &[Complex64]) -> Vec<Complex64> {
    a.iter().rev().map(|z| z.conj()).collect()
}

/// Sum of all `c_u` over `u ∈ (-d, d)`, i.e. `|Σ a_k|²`. Handy as a cheap checksum.
pub fn total_correlation(p: &AutocorrelationProfile) -> Complex64 {
    let c = p.values();
    if c.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let tail = pairwise_sum_complex(&c[1..]);
    c[0] + tail + tail.conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{chu, frank};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn direct_hand_values() {
        let p = acf_direct(&chu(2).unwrap());
        assert!((p.values()[0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((p.values()[1] - c(0.0, -1.0)).norm() < 1e-15);

        let p = acf_direct(&frank(2).unwrap());
        for (x, y) in p.values().iter().zip([4.0, 1.0, 0.0, -1.0]) {
            assert!((x - c(y, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn fft_hand_values() {
        let p = acf_fft(&chu(2).unwrap());
        assert!((p.values()[0] - c(2.0, 0.0)).norm() < 1e-12);
        assert!((p.values()[1] - c(0.0, -1.0)).norm() < 1e-12);

        let p = acf_fft(&frank(3).unwrap());
        assert!(p.values()[3].norm() < 1e-10);
        assert!(p.values()[6].norm() < 1e-10);
    }

    #[test]
    fn fft_matches_direct_on_chu_512() {
        let s = chu(512).unwrap();
        assert!(max_abs_difference(&acf_fft(&s), &acf_direct(&s)) < 1e-8);
    }

    #[test]
    fn zero_lag_is_length() {
        for s in [chu(37).unwrap(), frank(6).unwrap()] {
            let d = s.len() as f64;
            assert!((acf_direct(&s).values()[0].re - d).abs() <= 1e-9 * d);
            assert!((acf_fft(&s).values()[0].re - d).abs() <= 1e-9 * d);
        }
    }

    #[test]
    fn sum_abs_squared_hand_values() {
        assert!((sum_abs_squared(&acf_direct(&chu(2).unwrap())) - 6.0).abs() < 1e-14);
        assert!((sum_abs_squared(&acf_direct(&frank(2).unwrap())) - 20.0).abs() < 1e-14);
        let flat = AutocorrelationProfile::new(vec![c(5.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(sum_abs_squared(&flat), 25.0);
    }

    #[test]
    fn negative_lags_are_conjugates() {
        let p = acf_direct(&chu(5).unwrap());
        for u in 1..5isize {
            assert_eq!(p.lag(-u), p.lag(u).conj());
        }
        assert_eq!(p.lag(5), c(0.0, 0.0));
        assert_eq!(p.lag(-9), c(0.0, 0.0));
    }

    #[test]
    fn chu_lag_symmetry_and_half_point() {
        for n in 2..=60usize {
            let p = acf_direct(&chu(n).unwrap());
            for u in 1..n {
                assert!((p.values()[u].norm() - p.values()[n - u].norm()).abs() < 1e-9);
            }
            if n % 2 == 0 {
                let eps = if n % 4 == 2 { 2.0 } else { 0.0 };
                assert!((2.0 * p.values()[n / 2].norm() - eps).abs() < 1e-9, "n={n}");
            }
        }
    }

    #[test]
    fn total_correlation_is_squared_sum() {
        let s = chu(9).unwrap();
        let sum: Complex64 = s.coefficients().iter().sum();
        let t = total_correlation(&acf_direct(&s));
        assert!((t - c(sum.norm_sqr(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        acf_direct(&chu(3).unwrap()).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("u,re,im,abs\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
