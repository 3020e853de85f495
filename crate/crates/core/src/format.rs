//! Number formatting shared by every CSV and JSON writer.

use serde_json::value::RawValue;

/// Scientific notation with 17 significant digits, which round-trips every `f64`.
///
/// Non-finite values are spelled `inf`, `-inf` and `nan`.
pub fn sci17(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        // `+ 0.0` turns -0.0 into 0.0, which keeps diffs between runs clean
        format!("{:.16e}", x + 0.0)
    }
}

/// A JSON token for `x`: a 17-digit number, or a quoted string for non-finite values.
pub fn json_number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() {
        sci17(x)
    } else {
        format!("\"{}\"", sci17(x))
    };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

pub(crate) fn serialize_sci17<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&json_number(*x), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI * 1e12, -2.5e-300, 0.0] {
            let s = sci17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
    }

    #[test]
    fn negative_zero_prints_as_zero() {
        assert_eq!(sci17(-0.0), "0.0000000000000000e0");
    }

    #[test]
    fn non_finite_json_is_a_string() {
        assert_eq!(json_number(f64::INFINITY).get(), "\"inf\"");
        let v: serde_json::Value = serde_json::from_str(json_number(2.0).get()).unwrap();
        assert_eq!(v.as_f64(), Some(2.0));
    }
}
