use rust_decimal::Decimal;

use super::{DmoCashflows, PricingError, PricingInputs};

/// `1 + q + q^2 + ... + q^(n-1)`, evaluated in closed form.
///
/// Uses `expm1`/`ln_1p` so the ratio stays accurate as `q` approaches 1;
/// at `q == 1` the sum is `n`.
pub fn geometric_sum(q: f64, n: u32) -> Result<f64, PricingError> {
    if n < 1 {
        return Err(PricingError::TooFewPeriods {
            method: "geometric sum",
            n,
            min: 1,
        });
    }
    if !(q.is_finite() && q > 0.0) {
        return Err(PricingError::InvalidInput {
            field: "q",
            value: q,
            reason: "must be finite and positive",
        });
    }
    Ok(geometric_sum_unchecked(q, n))
}

pub(crate) fn geometric_sum_unchecked(q: f64, n: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let delta = q - 1.0;
    if delta == 0.0 {
        return n as f64;
    }
    let one_minus_qn = -(n as f64 * delta.ln_1p()).exp_m1();
    one_minus_qn / -delta
}

/// Street-method dirty price: `N` coupons discounted at `w, w+1, ..., w+N-1`
/// and the principal with the last coupon.
pub fn price_street(inputs: &PricingInputs) -> Result<f64, PricingError> {
    let n = inputs.n();
    if n < 1 {
        return Err(PricingError::TooFewPeriods { method: "street", n, min: 1 });
    }
    let q = inputs.q();
    let m = inputs.face();
    let block = inputs.coupon() * geometric_sum_unchecked(q, n) + m * q.powi(n as i32 - 1);
    Ok(inputs.discount_to_next() * block)
}

/// Price on a coupon date (`w = 1`) written in terms of the yield.
/// At `y == 0` this is `M i N + M`.
pub fn price_street_coupon_date(face: f64, coupon_rate: f64, yield_rate: f64, n: u32) -> Result<f64, PricingError> {
    // validates face, rate and yield
    let inputs = PricingInputs::new(face, coupon_rate, yield_rate, 1.0, n)?;
    if n < 1 {
        return Err(PricingError::TooFewPeriods { method: "street", n, min: 1 });
    }
    let coupon = inputs.coupon();
    if yield_rate == 0.0 {
        return Ok(coupon * n as f64 + face);
    }
    let log_growth = yield_rate.ln_1p();
    let discount_n = (-(n as f64) * log_growth).exp();
    let annuity = -(-(n as f64) * log_growth).exp_m1() / yield_rate;
    Ok(coupon * annuity + face * discount_n)
}

/// Treasury-method dirty price: `N + 1` coupons at `w, ..., w+N` and the
/// principal at `w+N`. `N = 0` (one coupon left) is allowed.
pub fn price_treasury(inputs: &PricingInputs) -> Result<f64, PricingError> {
    let n = inputs.n();
    let q = inputs.q();
    let m = inputs.face();
    let block = inputs.coupon() * geometric_sum_unchecked(q, n + 1) + m * q.powi(n as i32);
    Ok(inputs.discount_to_next() * block)
}

/// DMO variant of the Treasury form with the first two coupons `C1`, `C2`
/// taken out of the sum:
/// `q^w { C1 + C2 q + C q^2 (1 - q^(N-1)) / (1 - q) + M q^N }`.
///
/// Coupon amounts come from `cash`; the coupon rate in `inputs` is unused.
pub fn price_dmo_variant(cash: &DmoCashflows, inputs: &PricingInputs) -> Result<f64, PricingError> {
    let n = inputs.n();
    if n < 2 {
        return Err(PricingError::TooFewPeriods { method: "dmo variant", n, min: 2 });
    }
    cash.validate()?;
    let q = inputs.q();
    let block = cash.first
        + cash.second * q
        + cash.regular * q * q * geometric_sum_unchecked(q, n - 1)
        + inputs.face() * q.powi(n as i32);
    Ok(inputs.discount_to_next() * block)
}

/// Removes the first coupon's present value `C1 q^w` from a price that
/// included it.
pub fn ex_dividend_adjust(price: f64, first_coupon: f64, q: f64, w: f64) -> f64 {
    price - first_coupon * q.powf(w)
}

/// Simple-interest accrual `M i days / period`.
pub fn accrued_interest(face: f64, coupon_rate: f64, days_accrued: i64, days_in_period: i64) -> Result<f64, PricingError> {
    if days_in_period < 1 || days_accrued < 0 || days_accrued > days_in_period {
        return Err(PricingError::AccrualOutOfRange {
            days: days_accrued,
            period: days_in_period,
        });
    }
    Ok(face * coupon_rate * days_accrued as f64 / days_in_period as f64)
}

pub fn dirty_from_clean(clean: Decimal, accrued: Decimal) -> Decimal {
    clean + accrued
}

pub fn clean_from_dirty(dirty: Decimal, accrued: Decimal) -> Decimal {
    dirty - accrued
}
