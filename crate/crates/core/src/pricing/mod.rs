//! Bond pricing between coupon dates.
//!
//! All prices here are dirty prices. Cash flows are discounted with the
//! per-period ratio `q = 1 / (1 + y)` and a fractional first exponent `w`,
//! the share of the current coupon period still to run at settlement.

mod bond;
mod closed_form;
mod oracle;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use bond::{price_bond, BondSpec, PriceBreakdown, PricingOverrides};
pub use closed_form::{
    accrued_interest, clean_from_dirty, dirty_from_clean, ex_dividend_adjust, geometric_sum,
    price_dmo_variant, price_street, price_street_coupon_date, price_treasury,
};
pub use oracle::{price_extended_oracle, OracleMethod};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PricingError {
    #[error("invalid {field}: {value} ({reason})")]
    InvalidInput {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("{method} needs N >= {min}, got {n}")]
    TooFewPeriods { method: &'static str, n: u32, min: u32 },
    #[error("accrual of {days} days is outside a {period}-day coupon period")]
    AccrualOutOfRange { days: i64, period: i64 },
}

/// Pricing convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    /// Discounting starts at the next coupon; N counts remaining coupons.
    Street,
    /// Discounting indexed from the accrual start; N is one less than the
    /// remaining coupons.
    #[default]
    Treasury,
    /// Treasury form with the first two coupons broken out (C1, C2).
    DmoVariant,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Street => "street",
            Method::Treasury => "treasury",
            Method::DmoVariant => "dmo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "street" => Ok(Method::Street),
            "treasury" => Ok(Method::Treasury),
            "dmo" | "dmo-variant" | "dmovariant" => Ok(Method::DmoVariant),
            other => Err(format!("unknown method {other:?} (expected street, treasury or dmo)")),
        }
    }
}

/// Per-period pricing parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PricingInputs {
    face: f64,
    coupon_rate: f64,
    yield_rate: f64,
    q: f64,
    w: f64,
    n: u32,
}

impl PricingInputs {
    /// `coupon_rate` and `yield_rate` are per period (annual / frequency).
    pub fn new(face: f64, coupon_rate: f64, yield_rate: f64, w: f64, n: u32) -> Result<Self, PricingError> {
        if !(yield_rate.is_finite() && yield_rate > -1.0) {
            return Err(PricingError::InvalidInput {
                field: "yield",
                value: yield_rate,
                reason: "must be finite and greater than -1",
            });
        }
        Self::build(face, coupon_rate, yield_rate, 1.0 / (1.0 + yield_rate), w, n)
    }

    /// Builds inputs from a quoted discount ratio instead of a yield.
    pub fn from_discount_ratio(face: f64, coupon_rate: f64, q: f64, w: f64, n: u32) -> Result<Self, PricingError> {
        if !(q.is_finite() && q > 0.0) {
            return Err(PricingError::InvalidInput {
                field: "q",
                value: q,
                reason: "must be finite and positive",
            });
        }
        Self::build(face, coupon_rate, 1.0 / q - 1.0, q, w, n)
    }

    fn build(face: f64, coupon_rate: f64, yield_rate: f64, q: f64, w: f64, n: u32) -> Result<Self, PricingError> {
        if !(face.is_finite() && face > 0.0) {
            return Err(PricingError::InvalidInput {
                field: "face",
                value: face,
                reason: "must be finite and positive",
            });
        }
        if !(coupon_rate.is_finite() && coupon_rate >= 0.0) {
            return Err(PricingError::InvalidInput {
                field: "coupon rate",
                value: coupon_rate,
                reason: "must be finite and non-negative",
            });
        }
        if !(w > 0.0 && w <= 1.0) {
            return Err(PricingError::InvalidInput {
                field: "w",
                value: w,
                reason: "must lie in (0, 1]",
            });
        }
        Ok(PricingInputs {
            face,
            coupon_rate,
            yield_rate,
            q,
            w,
            n,
        })
    }

    pub fn face(&self) -> f64 {
        self.face
    }

    pub fn coupon_rate(&self) -> f64 {
        self.coupon_rate
    }

    pub fn yield_rate(&self) -> f64 {
        self.yield_rate
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Regular coupon amount `M * i`.
    pub fn coupon(&self) -> f64 {
        self.face * self.coupon_rate
    }

    /// Discount factor to the next quasi-coupon date, `q^w`.
    pub fn discount_to_next(&self) -> f64 {
        self.q.powf(self.w)
    }

    pub fn with_n(self, n: u32) -> Self {
        PricingInputs { n, ..self }
    }

    pub fn with_w(self, w: f64) -> Result<Self, PricingError> {
        Self::build(self.face, self.coupon_rate, self.yield_rate, self.q, w, self.n)
    }
}

/// Coupon amounts for the DMO variant formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DmoCashflows {
    pub first: f64,
    pub second: f64,
    pub regular: f64,
}

impl DmoCashflows {
    pub fn level(coupon: f64) -> Self {
        DmoCashflows {
            first: coupon,
            second: coupon,
            regular: coupon,
        }
    }

    fn validate(&self) -> Result<(), PricingError> {
        for (field, value) in [("C1", self.first), ("C2", self.second), ("C", self.regular)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(PricingError::InvalidInput {
                    field,
                    value,
                    reason: "coupon amounts must be finite and non-negative",
                });
            }
        }
        Ok(())
    }
}
