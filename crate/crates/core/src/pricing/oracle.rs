use super::{PricingError, PricingInputs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Street,
    Treasury,
}

/// Prices by discounting every cash flow on its own, with no closed form.
///
/// Street: coupons at exponents `w + t - 1` for `t = 1..=N`, principal at
/// `w + N - 1`. Treasury: coupons at `w + t` for `t = 0..=N`, principal at
/// `w + N`. With `include_first == false` the earliest coupon is dropped,
/// which is how an ex-dividend settlement is valued.
pub fn price_extended_oracle(
    face: f64,
    coupon_rate: f64,
    yield_rate: f64,
    w: f64,
    n: u32,
    method: OracleMethod,
    include_first: bool,
) -> Result<f64, PricingError> {
    PricingInputs::new(face, coupon_rate, yield_rate, w, n)?;
    let (first_exp, last_exp) = match method {
        OracleMethod::Street if n < 1 => {
            return Err(PricingError::TooFewPeriods { method: "street", n, min: 1 });
        }
        OracleMethod::Street => (0, n - 1),
        OracleMethod::Treasury => (0, n),
    };
    let growth = 1.0 + yield_rate;
    let pv = |periods: u32| growth.powf(-(w + periods as f64));
    let coupon = face * coupon_rate;
    let skip = usize::from(!include_first);
    let coupons: f64 = (first_exp..=last_exp).skip(skip).map(|k| coupon * pv(k)).sum();
    Ok(coupons + face * pv(last_exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_street_flow() {
        let p = price_extended_oracle(100.0, 0.04, 0.02225, 1.0, 1, OracleMethod::Street, true).unwrap();
        assert!((p - 104.0 / 1.02225).abs() < 1e-12);
    }

    #[test]
    fn scenario_one_by_summation() {
        let p = price_extended_oracle(
            100.0,
            0.04,
            0.04445 / 2.0,
            14.0 / 182.0,
            33,
            OracleMethod::Treasury,
            true,
        )
        .unwrap();
        assert!((p - 145.012268).abs() < 5e-6, "{p}");
    }

    #[test]
    fn dropping_first_coupon_gives_scenario_three() {
        let p = price_extended_oracle(
            100.0,
            0.04,
            0.04445 / 2.0,
            11.0 / 182.0,
            33,
            OracleMethod::Treasury,
            false,
        )
        .unwrap();
        assert!((p - 141.070132).abs() < 5e-6, "{p}");
    }

    #[test]
    fn street_needs_a_coupon() {
        assert!(price_extended_oracle(100.0, 0.04, 0.02, 0.5, 0, OracleMethod::Street, true).is_err());
        assert!(price_extended_oracle(100.0, 0.04, 0.02, 0.5, 0, OracleMethod::Treasury, true).is_ok());
        assert!(price_extended_oracle(100.0, 0.04, -1.5, 0.5, 3, OracleMethod::Treasury, true).is_err());
    }
}
