//! Settlement-date bond pricing: closed-form Street, Treasury and DMO-variant
//! prices between coupon dates, accrued interest, coupon calendars, and
//! replication of published UK gilt tables.

pub mod calendar;
pub mod cli;
pub mod format;
pub mod market;
pub mod pricing;

pub use calendar::{CivilDate, DayCountConvention};
pub use pricing::{price_bond, BondSpec, Method, PriceBreakdown, PricingInputs, PricingOverrides};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Calendar(#[from] calendar::CalendarError),
    #[error(transparent)]
    Pricing(#[from] pricing::PricingError),
    #[error(transparent)]
    Market(#[from] market::MarketError),
}
