//! Civil dates, day counts, quasi-coupon schedules and settlement location.

mod date;
mod day_count;
mod schedule;

pub use date::{days_in_month, CivilDate};
pub use day_count::{day_count, DayCountConvention};
pub use schedule::{
    build_schedule, build_schedule_covering, default_exdiv_date, default_exdiv_date_skipping,
    locate, months_per_period, CouponSchedule, SettlementContext, EX_DIVIDEND_BUSINESS_DAYS,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalendarError {
    #[error("invalid date {year:04}-{month:02}-{day:02}")]
    InvalidDate { year: i32, month: u32, day: u32 },
    #[error("cannot parse date {0:?} (expected YYYY-MM-DD or DD-Mon-YY)")]
    Parse(String),
    #[error("unknown day-count convention {0:?} (expected actact, 30-360 or act-360)")]
    UnknownConvention(String),
    #[error("start date {start} is after end date {end}")]
    ReversedDates { start: CivilDate, end: CivilDate },
    #[error("coupon frequency {0} is not one of 1, 2, 4, 12")]
    InvalidFrequency(u32),
    #[error("a schedule needs at least one period")]
    EmptySchedule,
    #[error("anchor {anchor} is not on the coupon grid of maturity {maturity}")]
    AnchorOffGrid { anchor: CivilDate, maturity: CivilDate },
    #[error("settlement {settlement} is on or after maturity {maturity}")]
    SettlementAtOrAfterMaturity { settlement: CivilDate, maturity: CivilDate },
    #[error("settlement {settlement} precedes the first schedule date {first}")]
    SettlementBeforeSchedule { settlement: CivilDate, first: CivilDate },
    #[error("settlement {settlement} gives a degenerate period fraction (r = {r}, s = {s})")]
    DegenerateFraction { settlement: CivilDate, r: i64, s: i64 },
}
