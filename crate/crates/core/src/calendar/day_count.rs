use std::fmt;
use std::str::FromStr;

use super::{CalendarError, CivilDate};

/// Rule for counting the days between two dates.
///
/// `ActualActual` and `Actual360` both count calendar days; they differ only
/// in the year basis, which this engine never needs because every ratio is
/// taken against the day count of the enclosing coupon period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DayCountConvention {
    #[default]
    ActualActual,
    /// US 30/360 (bond basis).
    Thirty360,
    Actual360,
}

impl DayCountConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            DayCountConvention::ActualActual => "actact",
            DayCountConvention::Thirty360 => "30-360",
            DayCountConvention::Actual360 => "act-360",
        }
    }
}

impl fmt::Display for DayCountConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DayCountConvention {
    type Err = CalendarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "actact" | "act/act" | "actual/actual" => Ok(DayCountConvention::ActualActual),
            "30-360" | "30/360" | "thirty360" => Ok(DayCountConvention::Thirty360),
            "act-360" | "act/360" | "actual/360" => Ok(DayCountConvention::Actual360),
            _ => Err(CalendarError::UnknownConvention(s.to_string())),
        }
    }
}

/// Days from `start` to `end` under `convention`. `start` must not be after `end`.
pub fn day_count(
    start: CivilDate,
    end: CivilDate,
    convention: DayCountConvention,
) -> Result<i64, CalendarError> {
    if start > end {
        return Err(CalendarError::ReversedDates { start, end });
    }
    Ok(match convention {
        DayCountConvention::ActualActual | DayCountConvention::Actual360 => start.days_until(end),
        DayCountConvention::Thirty360 => thirty_360(start, end),
    })
}

fn thirty_360(start: CivilDate, end: CivilDate) -> i64 {
    let mut d1 = start.day() as i64;
    let mut d2 = end.day() as i64;
    if d1 == 31 {
        d1 = 30;
    }
    if d2 == 31 && d1 == 30 {
        d2 = 30;
    }
    360 * (end.year() - start.year()) as i64
        + 30 * (end.month() as i64 - start.month() as i64)
        + (d2 - d1)
}
