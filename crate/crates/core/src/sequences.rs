//! Coefficient vectors of the Chu polynomials `g_n` and Frank polynomials `h_n`.
//!
//! Phases are reduced in exact integer arithmetic before any trigonometric
//! call, so the argument handed to `sin_cos` always lies in `[0, 2π)` even
//! when `k²` is many orders of magnitude larger than `n`.

use std::f64::consts::PI;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{MeritError, Result};
use crate::format::sci17;

/// Maximum allowed deviation of `|a_k|` from one.
pub const UNIMODULAR_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Chu,
    Frank,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Chu => "chu",
            Family::Frank => "frank",
            Family::Custom => "custom",
        })
    }
}

impl FromStr for Family {
    type Err = MeritError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chu" => Ok(Family::Chu),
            "frank" => Ok(Family::Frank),
            "custom" => Ok(Family::Custom),
            other => Err(MeritError::InvalidParameter(format!(
                "unknown family `{other}` (expected chu, frank or custom)"
            ))),
        }
    }
}

/// A finite list of unit-magnitude coefficients `a_0 .. a_{d-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnimodularSequence {
    family: Family,
    n: usize,
    rotation: f64,
    coefficients: Vec<Complex64>,
}

impl UnimodularSequence {
    /// Wraps user-supplied coefficients as a `Custom` sequence, rejecting
    /// empty input and any coefficient off the unit circle.
    pub fn from_coefficients(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(MeritError::InvalidParameter(
                "a sequence needs at least one coefficient".into(),
            ));
        }
        if let Some((k, a)) = coefficients
            .iter()
            .enumerate()
            .find(|(_, a)| !((a.norm() - 1.0).abs() <= UNIMODULAR_TOLERANCE))
        {
            return Err(MeritError::InvalidParameter(format!(
                "coefficient {k} has magnitude {} (expected 1 within {UNIMODULAR_TOLERANCE:e})",
                a.norm()
            )));
        }
        Ok(Self {
            family: Family::Custom,
            n: coefficients.len(),
            rotation: 0.0,
            coefficients,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The family parameter (`d` for custom sequences).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sequence length, i.e. the degree of the polynomial plus one.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Accumulated rotation angle in radians.
    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Writes the sequence as CSV with header `index,re,im`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["index", "re", "im"])?;
        for (k, a) in self.coefficients.iter().enumerate() {
            w.write_record([k.to_string(), sci17(a.re), sci17(a.im)])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a `Custom` sequence from CSV with header `index,re,im`. Rows must
    /// be listed in index order starting at zero.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let header = r.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["index", "re", "im"] {
            return Err(MeritError::Parse(format!(
                "expected header `index,re,im`, found `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut coefficients = Vec::new();
        for (row, record) in r.records().enumerate() {
            let record = record?;
            let field = |i: usize| -> Result<&str> {
                record
                    .get(i)
                    .ok_or_else(|| MeritError::Parse(format!("row {row}: missing column {i}")))
            };
            let index: usize = field(0)?
                .parse()
                .map_err(|e| MeritError::Parse(format!("row {row}: bad index: {e}")))?;
            if index != row {
                return Err(MeritError::Parse(format!(
                    "row {row}: index {index} out of order"
                )));
            }
            let parse = |s: &str, what: &str| -> Result<f64> {
                s.parse()
                    .map_err(|e| MeritError::Parse(format!("row {row}: bad {what}: {e}")))
            };
            coefficients.push(Complex64::new(parse(field(1)?, "re")?, parse(field(2)?, "im")?));
        }
        Self::from_coefficients(coefficients)
    }
}

fn check_parameter(n: usize) -> Result<()> {
    if n == 0 {
        return Err(MeritError::InvalidParameter("n must be at least 1".into()));
    }
    Ok(())
}

/// `exp(iπ·m/n)` for an already reduced `m ∈ [0, 2n)`.
fn half_turn_phase(m: u128, n: u128) -> Complex64 {
    let (s, c) = (PI * m as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

/// `k² mod 2n`, the reduced numerator of the Chu phase `πk²/n`.
pub fn chu_phase_numerator(k: usize, n: usize) -> u128 {
    let k = k as u128;
    (k * k) % (2 * n as u128)
}

/// Chu sequence: `a_k = exp(iπk²/n)` for `k = 0 .. n-1`.
pub fn chu(n: usize) -> Result<UnimodularSequence> {
    check_parameter(n)?;
    let coefficients = (0..n)
        .map(|k| half_turn_phase(chu_phase_numerator(k, n), n as u128))
        .collect();
    Ok(UnimodularSequence {
        family: Family::Chu,
        n,
        rotation: 0.0,
        coefficients,
    })
}

/// Frank sequence: `a_{nj+k} = exp(2πi·jk/n)` for `0 ≤ j, k < n`.
pub fn frank(n: usize) -> Result<UnimodularSequence> {
    check_parameter(n)?;
    let nn = n as u128;
    let mut coefficients = Vec::with_capacity(n * n);
    for j in 0..nn {
        for k in 0..nn {
            // exp(2πi m/n) = exp(iπ·2m/n) with 2m ∈ [0, 2n)
            coefficients.push(half_turn_phase(2 * ((j * k) % nn), nn));
        }
    }
    Ok(UnimodularSequence {
        family: Family::Frank,
        n,
        rotation: 0.0,
        coefficients,
    })
}

/// Coefficientwise `a_k · exp(ikφ)`, i.e. the polynomial `f(e^{iφ} z)`.
pub fn rotate(s: &UnimodularSequence, phi: f64) -> UnimodularSequence {
    let coefficients = s
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, a)| {
            // Reduce kφ modulo 2π before the trig call.
            let angle = (k as f64 * phi).rem_euclid(2.0 * PI);
            a * Complex64::from_polar(1.0, angle)
        })
        .collect();
    UnimodularSequence {
        family: s.family,
        n: s.n,
        rotation: s.rotation + phi,
        coefficients,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn chu_small_cases() {
        let i = Complex64::i();
        assert_eq!(chu(1).unwrap().coefficients(), &[Complex64::new(1.0, 0.0)]);

        let c2 = chu(2).unwrap();
        assert!(close(c2.coefficients()[0], 1.0.into(), 1e-15));
        assert!(close(c2.coefficients()[1], i, 1e-15));

        let e = Complex64::from_polar(1.0, PI / 4.0);
        let expected = [1.0.into(), e, (-1.0).into(), e];
        let c4 = chu(4).unwrap();
        for (a, b) in c4.coefficients().iter().zip(expected) {
            assert!(close(*a, b, 1e-15), "{a} vs {b}");
        }
    }

    #[test]
    fn frank_small_cases() {
        assert_eq!(frank(1).unwrap().coefficients(), &[Complex64::new(1.0, 0.0)]);
        let f2 = frank(2).unwrap();
        let expected = [1.0, 1.0, 1.0, -1.0];
        for (a, b) in f2.coefficients().iter().zip(expected) {
            assert!(close(*a, b.into(), 1e-15));
        }
        let f3 = frank(3).unwrap();
        assert_eq!(f3.len(), 9);
        assert!(f3.coefficients().iter().all(|a| (a.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn zero_parameter_is_rejected() {
        assert!(matches!(chu(0), Err(MeritError::InvalidParameter(_))));
        assert!(matches!(frank(0), Err(MeritError::InvalidParameter(_))));
    }

    #[test]
    fn unimodular_and_lengths_up_to_1000() {
        for n in (1..=1000).step_by(37).chain([1000]) {
            let c = chu(n).unwrap();
            assert_eq!(c.len(), n);
            assert!(c.coefficients().iter().all(|a| (a.norm() - 1.0).abs() <= 1e-12));
        }
        for n in [1, 2, 7, 31, 100] {
            let f = frank(n).unwrap();
            assert_eq!(f.len(), n * n);
            assert!(f.coefficients().iter().all(|a| (a.norm() - 1.0).abs() <= 1e-12));
        }
    }

    #[test]
    fn chu_matches_naive_phase() {
        for n in 1..=200usize {
            let c = chu(n).unwrap();
            for (k, a) in c.coefficients().iter().enumerate() {
                let naive = Complex64::from_polar(1.0, PI * (k * k) as f64 / n as f64);
                assert!(close(*a, naive, 1e-9), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn frank_is_symmetric_in_j_and_k() {
        for n in [2, 5, 12] {
            let f = frank(n).unwrap();
            let a = f.coefficients();
            for j in 0..n {
                for k in 0..n {
                    assert_eq!(a[n * j + k], a[n * k + j]);
                }
            }
        }
    }

    #[test]
    fn rotation_by_zero_is_identity() {
        let c = chu(5).unwrap();
        let r = rotate(&c, 0.0);
        for (a, b) in c.coefficients().iter().zip(r.coefficients()) {
            assert!(close(*a, *b, 1e-15));
        }
    }

    #[test]
    fn custom_validation() {
        assert!(UnimodularSequence::from_coefficients(vec![]).is_err());
        assert!(UnimodularSequence::from_coefficients(vec![Complex64::new(1.1, 0.0)]).is_err());
        assert!(UnimodularSequence::from_coefficients(vec![Complex64::new(f64::NAN, 0.0)]).is_err());
        let s = UnimodularSequence::from_coefficients(vec![Complex64::i(), (-1.0).into()]).unwrap();
        assert_eq!(s.family(), Family::Custom);
        assert_eq!(s.n(), 2);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let s = chu(13).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("index,re,im\n"));
        let back = UnimodularSequence::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.coefficients(), s.coefficients());
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(UnimodularSequence::read_csv("k,re,im\n0,1,0\n".as_bytes()).is_err());
        assert!(UnimodularSequence::read_csv("index,re,im\n1,1,0\n".as_bytes()).is_err());
        assert!(UnimodularSequence::read_csv("index,re,im\n0,2,0\n".as_bytes()).is_err());
        assert!(UnimodularSequence::read_csv("index,re,im\n0,x,0\n".as_bytes()).is_err());
    }
}
