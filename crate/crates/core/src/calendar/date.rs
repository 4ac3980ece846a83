use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Months, NaiveDate, Weekday};

use super::CalendarError;

const MONTH_ABBREV: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

/// A Gregorian calendar date with no time-of-day or zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CivilDate(NaiveDate);

impl CivilDate {
    pub fn new(year: i32, month: u32, day: u32) -> Result<Self, CalendarError> {
        NaiveDate::from_ymd_opt(year, month, day)
            .map(CivilDate)
            .ok_or(CalendarError::InvalidDate { year, month, day })
    }

    pub fn year(self) -> i32 {
        self.0.year()
    }

    pub fn month(self) -> u32 {
        self.0.month()
    }

    pub fn day(self) -> u32 {
        self.0.day()
    }

    pub fn weekday(self) -> Weekday {
        self.0.weekday()
    }

    pub fn is_weekend(self) -> bool {
        matches!(self.weekday(), Weekday::Sat | Weekday::Sun)
    }

    pub fn is_leap_year(self) -> bool {
        self.0.leap_year()
    }

    /// Signed number of calendar days from `self` to `other`.
    pub fn days_until(self, other: CivilDate) -> i64 {
        (other.0 - self.0).num_days()
    }

    pub fn add_days(self, days: i64) -> CivilDate {
        CivilDate(self.0 + chrono::Duration::days(days))
    }

    /// Shifts by whole months, clamping the day to the end of the target month.
    pub fn add_months(self, months: i32) -> CivilDate {
        let shifted = if months >= 0 {
            self.0.checked_add_months(Months::new(months.unsigned_abs()))
        } else {
            self.0.checked_sub_months(Months::new(months.unsigned_abs()))
        };
        CivilDate(shifted.expect("month shift stays inside chrono's supported range"))
    }

    pub fn days_in_month(self) -> u32 {
        days_in_month(self.year(), self.month())
    }

    pub fn as_naive(self) -> NaiveDate {
        self.0
    }

    pub fn parse_iso(text: &str) -> Result<Self, CalendarError> {
        NaiveDate::parse_from_str(text.trim(), "%Y-%m-%d")
            .map(CivilDate)
            .map_err(|_| CalendarError::Parse(text.to_string()))
    }

    /// Parses `DD-Mon-YY` (e.g. `24-May-99`). Two-digit years 69..=99 map to
    /// 19xx, 00..=68 to 20xx. A four-digit year is also accepted.
    pub fn parse_dmy(text: &str) -> Result<Self, CalendarError> {
        let err = || CalendarError::Parse(text.to_string());
        let mut parts = text.trim().split('-');
        let (Some(d), Some(m), Some(y), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(err());
        };
        let day: u32 = d.parse().map_err(|_| err())?;
        let month = MONTH_ABBREV
            .iter()
            .position(|abbrev| abbrev.eq_ignore_ascii_case(m))
            .ok_or_else(err)? as u32
            + 1;
        let year: i32 = match y.len() {
            2 => {
                let yy: i32 = y.parse().map_err(|_| err())?;
                if yy >= 69 {
                    1900 + yy
                } else {
                    2000 + yy
                }
            }
            4 => y.parse().map_err(|_| err())?,
            _ => return Err(err()),
        };
        CivilDate::new(year, month, day).map_err(|_| err())
    }

    /// `DD-Mon-YY` rendering, the inverse of [`CivilDate::parse_dmy`] for
    /// years 1969..=2068.
    pub fn to_dmy(self) -> String {
        format!(
            "{:02}-{}-{:02}",
            self.day(),
            MONTH_ABBREV[self.month() as usize - 1],
            self.year().rem_euclid(100)
        )
    }
}

impl fmt::Display for CivilDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.format("%Y-%m-%d"))
    }
}

impl FromStr for CivilDate {
    type Err = CalendarError;

    /// Accepts ISO-8601 first, then `DD-Mon-YY`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CivilDate::parse_iso(s).or_else(|_| CivilDate::parse_dmy(s))
    }
}

impl From<NaiveDate> for CivilDate {
    fn from(date: NaiveDate) -> Self {
        CivilDate(date)
    }
}

impl From<CivilDate> for NaiveDate {
    fn from(date: CivilDate) -> Self {
        date.0
    }
}

pub fn days_in_month(year: i32, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if NaiveDate::from_ymd_opt(year, 2, 29).is_some() => 29,
        2 => 28,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(y: i32, m: u32, day: u32) -> CivilDate {
        CivilDate::new(y, m, day).unwrap()
    }

    #[test]
    fn rejects_impossible_dates() {
        assert!(CivilDate::new(2017, 2, 29).is_err());
        assert!(CivilDate::new(2016, 2, 29).is_ok());
        assert!(CivilDate::new(1900, 2, 29).is_err());
        assert!(CivilDate::new(2000, 2, 29).is_ok());
        assert!(CivilDate::new(2018, 13, 1).is_err());
        assert!(CivilDate::new(2018, 4, 31).is_err());
    }

    #[test]
    fn dmy_pivot() {
        assert_eq!(CivilDate::parse_dmy("24-May-99").unwrap(), d(1999, 5, 24));
        assert_eq!(CivilDate::parse_dmy("07-Dec-15").unwrap(), d(2015, 12, 7));
        assert_eq!(CivilDate::parse_dmy("01-Jan-69").unwrap(), d(1969, 1, 1));
        assert_eq!(CivilDate::parse_dmy("31-Dec-68").unwrap(), d(2068, 12, 31));
        assert_eq!(CivilDate::parse_dmy("7-jun-1999").unwrap(), d(1999, 6, 7));
        assert!(CivilDate::parse_dmy("31-Feb-99").is_err());
        assert!(CivilDate::parse_dmy("24-Mai-99").is_err());
        assert!(CivilDate::parse_dmy("24-May-999").is_err());
    }

    #[test]
    fn from_str_accepts_both_forms() {
        assert_eq!("2017-07-03".parse::<CivilDate>().unwrap(), d(2017, 7, 3));
        assert_eq!("03-Jul-17".parse::<CivilDate>().unwrap(), d(2017, 7, 3));
        assert!("2017/07/03".parse::<CivilDate>().is_err());
    }

    #[test]
    fn display_is_iso() {
        assert_eq!(d(1999, 6, 7).to_string(), "1999-06-07");
        assert_eq!(d(1999, 6, 7).to_dmy(), "07-Jun-99");
    }

    #[test]
    fn month_shift_clamps() {
        assert_eq!(d(2020, 12, 31).add_months(-6), d(2020, 6, 30));
        assert_eq!(d(2021, 3, 31).add_months(-1), d(2021, 2, 28));
        assert_eq!(d(2015, 12, 7).add_months(-6), d(2015, 6, 7));
    }

    #[test]
    fn ordering_follows_chronology() {
        assert!(d(1998, 12, 7) < d(1999, 6, 7));
        assert!(d(1999, 5, 26) < d(1999, 5, 27));
        assert_eq!(d(1998, 12, 7).days_until(d(1999, 6, 7)), 182);
    }
}
