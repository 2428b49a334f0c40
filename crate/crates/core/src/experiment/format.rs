//! Deterministic float rendering.

/// Renders `x` like C's `%.17g`: 17 significant digits, which is enough for
/// any `f64` to parse back to the same bits.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

/// Up to ten decimals with trailing zeros removed, for human-readable tables.
pub fn format_short(x: f64) -> String {
    let s = format!("{:.10}", x);
    let s = trim_zeros(&s);
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
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
    fn matches_printf_g17() {
        assert_eq!(format_g17(0.3), "0.29999999999999999");
        assert_eq!(format_g17(0.5), "0.5");
        assert_eq!(format_g17(16.0), "16");
        assert_eq!(format_g17(-1.3), "-1.3");
        assert_eq!(format_g17(1e-20), "9.9999999999999995e-21");
        assert_eq!(format_g17(1e20), "1e+20");
        assert_eq!(format_g17(0.0001), "0.0001");
    }

    #[test]
    fn g17_round_trips() {
        for x in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            6.02214076e23,
            std::f64::consts::PI,
            0.5 - std::f64::consts::PI / 10.0,
        ] {
            assert_eq!(format_g17(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn short_form() {
        assert_eq!(format_short(0.49999999999999994), "0.5");
        assert_eq!(format_short(-1.3), "-1.3");
        assert_eq!(format_short(-1e-13), "0");
        assert_eq!(format_short(2.0), "2");
    }
}
