//! Numeric formatting: 15 significant digits, plain decimal where the
//! exponent allows it, `.` as the decimal separator. Deterministic, so CSV
//! output is byte-identical across runs.

/// Format with 15 significant digits, trimming trailing zeros.
pub fn sig15(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // round to 15 significant digits in scientific form first
    let sci = format!("{:.14e}", x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exponent.parse().expect("exponent parses");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_values() {
        assert_eq!(sig15(0.8), "0.8");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(-1.5), "-1.5");
        assert_eq!(sig15(1.0), "1");
        assert_eq!(sig15(0.05), "0.05");
    }

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sig15(2.5132741228718345), "2.51327412287183");
        assert_eq!(sig15(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(sig15(1234.5678901234567), "1234.56789012346");
    }

    #[test]
    fn extreme_magnitudes_use_exponent() {
        assert_eq!(sig15(1.5e-7), "1.5e-7");
        assert_eq!(sig15(2.0e18), "2e18");
        assert_eq!(sig15(-3.25e-12), "-3.25e-12");
    }

    #[test]
    fn special_values() {
        assert_eq!(sig15(f64::NAN), "NaN");
        assert_eq!(sig15(f64::INFINITY), "inf");
        assert_eq!(sig15(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn deterministic() {
        for &x in &[0.123456789012345678, 9.87e-3, 1.0 / 3.0] {
            assert_eq!(sig15(x), sig15(x));
        }
    }
}
