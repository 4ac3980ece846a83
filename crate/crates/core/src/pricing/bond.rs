use crate::calendar::{
    build_schedule_covering, locate, months_per_period, CivilDate, CouponSchedule, DayCountConvention,
    SettlementContext,
};
use crate::Error;

use super::{
    accrued_interest, ex_dividend_adjust, price_dmo_variant, price_street, price_treasury, DmoCashflows,
    Method, PricingInputs,
};

/// Static terms of a fixed-coupon bond.
#[derive(Debug, Clone, PartialEq)]
pub struct BondSpec {
    pub face: f64,
    /// Annual coupon rate as a fraction (0.08 for 8%).
    pub annual_coupon_rate: f64,
    pub frequency: u32,
    pub maturity: CivilDate,
    /// A known coupon date fixing the roll day; defaults to the maturity day.
    pub anchor: Option<CivilDate>,
    pub issue_date: Option<CivilDate>,
    pub day_count: DayCountConvention,
}

impl BondSpec {
    /// A bond with face 100 and Actual/Actual day counting.
    pub fn new(annual_coupon_rate: f64, frequency: u32, maturity: CivilDate) -> Self {
        BondSpec {
            face: 100.0,
            annual_coupon_rate,
            frequency,
            maturity,
            anchor: None,
            issue_date: None,
            day_count: DayCountConvention::ActualActual,
        }
    }

    pub fn with_face(mut self, face: f64) -> Self {
        self.face = face;
        self
    }

    pub fn with_anchor(mut self, anchor: CivilDate) -> Self {
        self.anchor = Some(anchor);
        self
    }

    pub fn with_issue_date(mut self, issue: CivilDate) -> Self {
        self.issue_date = Some(issue);
        self
    }

    pub fn with_day_count(mut self, day_count: DayCountConvention) -> Self {
        self.day_count = day_count;
        self
    }

    /// Per-period coupon rate `i`.
    pub fn period_coupon_rate(&self) -> f64 {
        self.annual_coupon_rate / self.frequency as f64
    }

    pub fn coupon(&self) -> f64 {
        self.face * self.period_coupon_rate()
    }

    /// Quasi-coupon schedule reaching back to (at least) `earliest`.
    pub fn schedule_covering(&self, earliest: CivilDate) -> Result<CouponSchedule, Error> {
        months_per_period(self.frequency)?;
        let schedule = build_schedule_covering(self.maturity, self.frequency, self.anchor, earliest)?;
        Ok(match self.issue_date {
            Some(issue) => schedule.with_issue_date(issue),
            None => schedule,
        })
    }

    pub fn locate(&self, settlement: CivilDate, exdiv_date: Option<CivilDate>) -> Result<SettlementContext, Error> {
        let schedule = self.schedule_covering(settlement)?;
        Ok(locate(&schedule, settlement, self.day_count, exdiv_date)?)
    }
}

/// Optional replacements for schedule-derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PricingOverrides {
    /// Exponent count N passed to the closed form as-is.
    pub n: Option<u32>,
    /// Forces the ex-dividend treatment on or off.
    pub ex_dividend: Option<bool>,
    /// Ex-dividend date for the settlement's coupon period.
    pub exdiv_date: Option<CivilDate>,
    /// Count the settlement day in the accrual (default true).
    pub inclusive_days: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceBreakdown {
    pub dirty: f64,
    pub accrued: f64,
    pub clean: f64,
    pub method: Method,
    pub w: f64,
    pub q: f64,
    pub n: u32,
    pub ex_div_applied: bool,
    /// `q^w`
    pub discount_to_next: f64,
    pub context: SettlementContext,
}

/// Prices `spec` for `settlement` at `annual_yield` (a fraction, 0.04445 for
/// 4.445%).
///
/// N defaults to the remaining coupon count for Street and one less for the
/// Treasury and DMO forms. An ex-dividend settlement drops the next coupon.
/// The DMO form needs N >= 2 and falls back to the Treasury form below that.
pub fn price_bond(
    spec: &BondSpec,
    settlement: CivilDate,
    annual_yield: f64,
    method: Method,
    overrides: PricingOverrides,
) -> Result<PriceBreakdown, Error> {
    let context = spec.locate(settlement, overrides.exdiv_date)?;
    let ex_dividend = overrides.ex_dividend.unwrap_or(context.ex_dividend);

    let frequency = spec.frequency as f64;
    let n = overrides.n.unwrap_or(match method {
        Method::Street => context.n_remaining,
        Method::Treasury | Method::DmoVariant => context.n_remaining - 1,
    });
    let inputs = PricingInputs::new(
        spec.face,
        spec.period_coupon_rate(),
        annual_yield / frequency,
        context.w,
        n,
    )?;
    let coupon = inputs.coupon();
    let first_coupon = if ex_dividend { coupon } else { 0.0 };

    let dirty = match method {
        Method::Street => ex_dividend_adjust(price_street(&inputs)?, first_coupon, inputs.q(), inputs.w()),
        Method::DmoVariant if n >= 2 => {
            let cash = DmoCashflows {
                first: coupon - first_coupon,
                ..DmoCashflows::level(coupon)
            };
            price_dmo_variant(&cash, &inputs)?
        }
        Method::Treasury | Method::DmoVariant => {
            ex_dividend_adjust(price_treasury(&inputs)?, first_coupon, inputs.q(), inputs.w())
        }
    };

    let days = context.accrued_days(overrides.inclusive_days.unwrap_or(true));
    let accrued = accrued_interest(spec.face, spec.period_coupon_rate(), days, context.s)?;

    Ok(PriceBreakdown {
        dirty,
        accrued,
        clean: dirty - accrued,
        method,
        w: inputs.w(),
        q: inputs.q(),
        n,
        ex_div_applied: ex_dividend,
        discount_to_next: inputs.discount_to_next(),
        context,
    })
}
