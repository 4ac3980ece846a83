use super::{day_count, CalendarError, CivilDate, DayCountConvention};

/// Business days between the ex-dividend date and the coupon it precedes.
pub const EX_DIVIDEND_BUSINESS_DAYS: u32 = 7;

/// Checks `frequency` and returns the number of months in one coupon period.
pub fn months_per_period(frequency: u32) -> Result<u32, CalendarError> {
    match frequency {
        1 | 2 | 4 | 12 => Ok(12 / frequency),
        other => Err(CalendarError::InvalidFrequency(other)),
    }
}

/// Quasi-coupon dates of a bond, ending at maturity.
///
/// Dates may precede the issue date: compounding follows the regular grid
/// whether or not a payment is made on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouponSchedule {
    dates: Vec<CivilDate>,
    frequency: u32,
    maturity: CivilDate,
    issue_date: Option<CivilDate>,
}

impl CouponSchedule {
    pub fn quasi_coupon_dates(&self) -> &[CivilDate] {
        &self.dates
    }

    pub fn frequency(&self) -> u32 {
        self.frequency
    }

    pub fn maturity(&self) -> CivilDate {
        self.maturity
    }

    pub fn issue_date(&self) -> Option<CivilDate> {
        self.issue_date
    }

    pub fn first(&self) -> CivilDate {
        self.dates[0]
    }

    pub fn with_issue_date(mut self, issue: CivilDate) -> Self {
        self.issue_date = Some(issue);
        self
    }
}

/// Steps back from `maturity` in `12 / frequency`-month increments and returns
/// `span_periods` dates, the last of which is `maturity`.
///
/// The day of month is taken from `anchor` when given (otherwise from
/// `maturity`) and clamped to the end of shorter months without carrying the
/// clamp into later dates.
pub fn build_schedule(
    maturity: CivilDate,
    frequency: u32,
    anchor: Option<CivilDate>,
    span_periods: u32,
) -> Result<CouponSchedule, CalendarError> {
    let step = months_per_period(frequency)? as i32;
    if span_periods < 1 {
        return Err(CalendarError::EmptySchedule);
    }
    let roll_day = match anchor {
        Some(a) => {
            let months_apart = month_index(maturity) - month_index(a);
            if months_apart.rem_euclid(step) != 0 || maturity.day() != a.day().min(maturity.days_in_month()) {
                return Err(CalendarError::AnchorOffGrid { anchor: a, maturity });
            }
            a.day()
        }
        None => maturity.day(),
    };
    let dates = (0..span_periods as i32)
        .rev()
        .map(|k| grid_date(maturity, -k * step, roll_day))
        .collect();
    Ok(CouponSchedule {
        dates,
        frequency,
        maturity,
        issue_date: None,
    })
}

/// Builds the shortest schedule whose first quasi-coupon date is on or before
/// `earliest`.
pub fn build_schedule_covering(
    maturity: CivilDate,
    frequency: u32,
    anchor: Option<CivilDate>,
    earliest: CivilDate,
) -> Result<CouponSchedule, CalendarError> {
    let step = months_per_period(frequency)? as i32;
    let months = (month_index(maturity) - month_index(earliest)).max(0);
    let mut span = (months / step + 2) as u32;
    loop {
        let schedule = build_schedule(maturity, frequency, anchor, span)?;
        if schedule.first() <= earliest {
            return Ok(schedule);
        }
        span += 1;
    }
}

fn month_index(date: CivilDate) -> i32 {
    date.year() * 12 + date.month() as i32 - 1
}

fn grid_date(maturity: CivilDate, month_offset: i32, roll_day: u32) -> CivilDate {
    let first = CivilDate::new(maturity.year(), maturity.month(), 1)
        .expect("first of month exists")
        .add_months(month_offset);
    let day = roll_day.min(first.days_in_month());
    CivilDate::new(first.year(), first.month(), day).expect("clamped day exists")
}

/// Where a settlement date sits inside the coupon schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettlementContext {
    pub settlement: CivilDate,
    pub prev_quasi: CivilDate,
    pub next_quasi: CivilDate,
    /// Days from settlement to the next quasi-coupon date.
    pub r: i64,
    /// Days in the current quasi-coupon period.
    pub s: i64,
    /// `r / s`, in (0, 1].
    pub w: f64,
    /// `s - r + 1`: accrual days counting the settlement day itself.
    pub days_accrued: i64,
    /// Coupon dates strictly after settlement, through maturity.
    pub n_remaining: u32,
    pub ex_dividend: bool,
    /// The ex-dividend date that governed `ex_dividend`.
    pub exdiv_date: CivilDate,
}

impl SettlementContext {
    /// Accrual days with the settlement day counted (`inclusive`) or not.
    pub fn accrued_days(&self, inclusive: bool) -> i64 {
        if inclusive {
            self.days_accrued
        } else {
            self.days_accrued - 1
        }
    }

    pub fn on_quasi_coupon_date(&self) -> bool {
        self.settlement == self.prev_quasi
    }
}

/// Locates `settlement` in `schedule`.
///
/// A settlement that falls on a quasi-coupon date belongs to the period that
/// starts there, so `r = s` and `w = 1`. An explicit `exdiv_date` is honoured
/// only when it falls inside the located period; otherwise the weekday rule
/// of [`default_exdiv_date`] applies. The bond trades ex-dividend when the
/// ex-dividend date is strictly before settlement.
pub fn locate(
    schedule: &CouponSchedule,
    settlement: CivilDate,
    convention: DayCountConvention,
    exdiv_date: Option<CivilDate>,
) -> Result<SettlementContext, CalendarError> {
    let maturity = schedule.maturity();
    if settlement >= maturity {
        return Err(CalendarError::SettlementAtOrAfterMaturity { settlement, maturity });
    }
    let dates = schedule.quasi_coupon_dates();
    if settlement < dates[0] {
        return Err(CalendarError::SettlementBeforeSchedule {
            settlement,
            first: dates[0],
        });
    }
    let next_idx = dates.partition_point(|&d| d <= settlement);
    let prev_quasi = dates[next_idx - 1];
    let next_quasi = dates[next_idx];

    let r = day_count(settlement, next_quasi, convention)?;
    let s = day_count(prev_quasi, next_quasi, convention)?;
    if r < 1 || s < 1 {
        return Err(CalendarError::DegenerateFraction { settlement, r, s });
    }

    let exdiv_date = match exdiv_date {
        Some(x) if prev_quasi < x && x < next_quasi => x,
        _ => default_exdiv_date(next_quasi),
    };

    Ok(SettlementContext {
        settlement,
        prev_quasi,
        next_quasi,
        r,
        s,
        w: r as f64 / s as f64,
        days_accrued: s - r + 1,
        n_remaining: (dates.len() - next_idx) as u32,
        ex_dividend: exdiv_date < settlement && settlement < next_quasi,
        exdiv_date,
    })
}

/// The date [`EX_DIVIDEND_BUSINESS_DAYS`] weekdays before `next_coupon`.
/// No holiday calendar is applied.
pub fn default_exdiv_date(next_coupon: CivilDate) -> CivilDate {
    default_exdiv_date_skipping(next_coupon, &[])
}

/// Like [`default_exdiv_date`], additionally treating every date in
/// `non_business` as a holiday.
pub fn default_exdiv_date_skipping(next_coupon: CivilDate, non_business: &[CivilDate]) -> CivilDate {
    let mut date = next_coupon;
    let mut remaining = EX_DIVIDEND_BUSINESS_DAYS;
    while remaining > 0 {
        date = date.add_days(-1);
        if !date.is_weekend() && !non_business.contains(&date) {
            remaining -= 1;
        }
    }
    date
}
