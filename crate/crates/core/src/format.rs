//! Fixed-decimal rendering used by every table and CSV the crate emits.

use std::str::FromStr;

use rust_decimal::{Decimal, RoundingStrategy};

/// Places used for prices, w and q in rendered output.
pub const DISPLAY_DP: u32 = 6;

/// Renders `x` with `dp` decimals, rounding half away from zero on the
/// shortest decimal representation of `x`, so `0.0000005` renders as
/// `0.000001` regardless of its binary expansion.
pub fn fixed(x: f64, dp: u32) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    match Decimal::from_str(&x.to_string()) {
        Ok(value) => {
            let mut rounded = value.round_dp_with_strategy(dp, RoundingStrategy::MidpointAwayFromZero);
            if rounded.is_zero() {
                rounded.set_sign_positive(true);
            }
            rounded.rescale(dp);
            rounded.to_string()
        }
        // magnitude beyond Decimal's range
        Err(_) => format!("{x:.prec$}", prec = dp as usize),
    }
}

pub fn fixed6(x: f64) -> String {
    fixed(x, DISPLAY_DP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_up() {
        assert_eq!(fixed6(0.0000005), "0.000001");
        assert_eq!(fixed6(-0.0000005), "-0.000001");
        assert_eq!(fixed6(2.0000025), "2.000003");
        // {:.6} would give 1.000000 (binary value sits below the midpoint)
        assert_eq!(fixed6(1.0000005), "1.000001");
        assert_eq!(fixed(99.17, 5), "99.17000");
    }

    #[test]
    fn pads_and_clears_negative_zero() {
        assert_eq!(fixed6(145.0), "145.000000");
        assert_eq!(fixed6(-0.0000001), "0.000000");
        assert_eq!(fixed6(0.104972375690607), "0.104972");
    }

    #[test]
    fn extreme_values_do_not_panic() {
        assert_eq!(fixed6(1e-40), "0.000000");
        assert!(fixed6(1e30).starts_with("1000000000000000019884624838656"));
        assert_eq!(fixed6(f64::NAN), "NaN");
    }
}
