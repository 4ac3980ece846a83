//! Python bindings for `couponclock`.
//!
//! Dates cross the boundary as `datetime.date`, decimal currency amounts as
//! `decimal.Decimal`, everything else as plain floats and ints. Library
//! errors surface as `ValueError`.

use chrono::NaiveDate;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rust_decimal::Decimal;

use couponclock::calendar::{self, CivilDate, DayCountConvention};
use couponclock::market::{self, golden};
use couponclock::pricing::{self, DmoCashflows, Method, OracleMethod, PricingInputs, PricingOverrides};

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn day_count_convention(name: &str) -> PyResult<DayCountConvention> {
    name.parse().map_err(value_err)
}

fn method(name: &str) -> PyResult<Method> {
    name.parse().map_err(value_err)
}

fn date(d: NaiveDate) -> CivilDate {
    CivilDate::from(d)
}

#[pyclass(name = "SettlementContext", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PySettlementContext {
    settlement: NaiveDate,
    prev_quasi: NaiveDate,
    next_quasi: NaiveDate,
    r: i64,
    s: i64,
    w: f64,
    days_accrued: i64,
    n_remaining: u32,
    ex_dividend: bool,
    exdiv_date: NaiveDate,
}

impl From<calendar::SettlementContext> for PySettlementContext {
    fn from(c: calendar::SettlementContext) -> Self {
        PySettlementContext {
            settlement: c.settlement.into(),
            prev_quasi: c.prev_quasi.into(),
            next_quasi: c.next_quasi.into(),
            r: c.r,
            s: c.s,
            w: c.w,
            days_accrued: c.days_accrued,
            n_remaining: c.n_remaining,
            ex_dividend: c.ex_dividend,
            exdiv_date: c.exdiv_date.into(),
        }
    }
}

#[pymethods]
impl PySettlementContext {
    fn __repr__(&self) -> String {
        format!(
            "SettlementContext(settlement={}, prev_quasi={}, next_quasi={}, r={}, s={}, w={}, n_remaining={}, ex_dividend={})",
            self.settlement, self.prev_quasi, self.next_quasi, self.r, self.s, self.w, self.n_remaining, self.ex_dividend
        )
    }
}

#[pyclass(name = "PriceBreakdown", frozen, get_all)]
struct PyPriceBreakdown {
    dirty: f64,
    accrued: f64,
    clean: f64,
    method: String,
    w: f64,
    q: f64,
    n: u32,
    ex_div_applied: bool,
    discount_to_next: f64,
    context: PySettlementContext,
}

impl From<pricing::PriceBreakdown> for PyPriceBreakdown {
    fn from(p: pricing::PriceBreakdown) -> Self {
        PyPriceBreakdown {
            dirty: p.dirty,
            accrued: p.accrued,
            clean: p.clean,
            method: p.method.to_string(),
            w: p.w,
            q: p.q,
            n: p.n,
            ex_div_applied: p.ex_div_applied,
            discount_to_next: p.discount_to_next,
            context: p.context.into(),
        }
    }
}

#[pymethods]
impl PyPriceBreakdown {
    fn __repr__(&self) -> String {
        format!(
            "PriceBreakdown(method={}, dirty={}, accrued={}, clean={}, w={}, q={}, n={}, ex_div_applied={})",
            self.method, self.dirty, self.accrued, self.clean, self.w, self.q, self.n, self.ex_div_applied
        )
    }
}

#[pyclass(name = "BondSpec", frozen)]
struct PyBondSpec {
    inner: pricing::BondSpec,
}

#[pymethods]
impl PyBondSpec {
    /// `annual_coupon_rate` is a fraction (0.08 for 8%).
    #[new]
    #[pyo3(signature = (annual_coupon_rate, frequency, maturity, face=100.0, anchor=None, issue_date=None, day_count="actact"))]
    fn new(
        annual_coupon_rate: f64,
        frequency: u32,
        maturity: NaiveDate,
        face: f64,
        anchor: Option<NaiveDate>,
        issue_date: Option<NaiveDate>,
        day_count: &str,
    ) -> PyResult<Self> {
        calendar::months_per_period(frequency).map_err(value_err)?;
        let mut inner = pricing::BondSpec::new(annual_coupon_rate, frequency, date(maturity))
            .with_face(face)
            .with_day_count(day_count_convention(day_count)?);
        inner.anchor = anchor.map(date);
        inner.issue_date = issue_date.map(date);
        Ok(PyBondSpec { inner })
    }

    /// Dirty/clean breakdown at `settlement`; `annual_yield` is a fraction.
    #[pyo3(signature = (settlement, annual_yield, method="treasury", n=None, ex_dividend=None, exdiv_date=None, inclusive_days=true))]
    #[allow(clippy::too_many_arguments)]
    fn price(
        &self,
        settlement: NaiveDate,
        annual_yield: f64,
        method: &str,
        n: Option<u32>,
        ex_dividend: Option<bool>,
        exdiv_date: Option<NaiveDate>,
        inclusive_days: bool,
    ) -> PyResult<PyPriceBreakdown> {
        let overrides = PricingOverrides {
            n,
            ex_dividend,
            exdiv_date: exdiv_date.map(date),
            inclusive_days: Some(inclusive_days),
        };
        pricing::price_bond(&self.inner, date(settlement), annual_yield, self::method(method)?, overrides)
            .map(Into::into)
            .map_err(value_err)
    }

    #[pyo3(signature = (settlement, exdiv_date=None))]
    fn locate(&self, settlement: NaiveDate, exdiv_date: Option<NaiveDate>) -> PyResult<PySettlementContext> {
        self.inner
            .locate(date(settlement), exdiv_date.map(date))
            .map(Into::into)
            .map_err(value_err)
    }

    #[getter]
    fn coupon(&self) -> f64 {
        self.inner.coupon()
    }

    #[getter]
    fn maturity(&self) -> NaiveDate {
        self.inner.maturity.into()
    }

    #[getter]
    fn frequency(&self) -> u32 {
        self.inner.frequency
    }

    fn __repr__(&self) -> String {
        format!(
            "BondSpec(annual_coupon_rate={}, frequency={}, maturity={}, face={})",
            self.inner.annual_coupon_rate, self.inner.frequency, self.inner.maturity, self.inner.face
        )
    }
}

#[pyclass(name = "QuoteRow", frozen, get_all)]
struct PyQuoteRow {
    gilt_name: String,
    date: NaiveDate,
    clean_price: f64,
    dirty_price_published: Option<f64>,
    accrued_published: Option<f64>,
    annual_yield_pct: f64,
}

#[pyclass(name = "ReplicationRow", frozen, get_all)]
struct PyReplicationRow {
    date: NaiveDate,
    r: i64,
    w: f64,
    q: f64,
    n_street: u32,
    n_treasury: u32,
    dirty_street: f64,
    dirty_treasury: f64,
    dirty_dmo: f64,
    accrued: f64,
    published_dirty: f64,
    diff_dmo: f64,
    diff_street: f64,
}

impl From<market::ReplicationRow> for PyReplicationRow {
    fn from(r: market::ReplicationRow) -> Self {
        PyReplicationRow {
            date: r.date.into(),
            r: r.r,
            w: r.w,
            q: r.q,
            n_street: r.n_street,
            n_treasury: r.n_treasury,
            dirty_street: r.dirty_street,
            dirty_treasury: r.dirty_treasury,
            dirty_dmo: r.dirty_dmo,
            accrued: r.accrued,
            published_dirty: r.published_dirty,
            diff_dmo: r.diff_dmo_minus_dmo_formula,
            diff_street: r.diff_dmo_minus_street,
        }
    }
}

#[pyclass(name = "ScenarioResult", frozen, get_all)]
struct PyScenarioResult {
    scenario: u8,
    settlement: NaiveDate,
    exdiv_date: NaiveDate,
    ex_dividend: bool,
    prev_quasi: NaiveDate,
    next_quasi: NaiveDate,
    q: f64,
    r: i64,
    s: i64,
    n: u32,
    dirty: f64,
    published_dirty: f64,
}

#[pyfunction]
#[pyo3(signature = (start, end, convention="actact"))]
fn day_count(start: NaiveDate, end: NaiveDate, convention: &str) -> PyResult<i64> {
    calendar::day_count(date(start), date(end), day_count_convention(convention)?).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (maturity, frequency, span_periods, anchor=None))]
fn build_schedule(
    maturity: NaiveDate,
    frequency: u32,
    span_periods: u32,
    anchor: Option<NaiveDate>,
) -> PyResult<Vec<NaiveDate>> {
    let schedule =
        calendar::build_schedule(date(maturity), frequency, anchor.map(date), span_periods).map_err(value_err)?;
    Ok(schedule.quasi_coupon_dates().iter().map(|&d| d.into()).collect())
}

#[pyfunction]
fn default_exdiv_date(next_coupon: NaiveDate) -> NaiveDate {
    calendar::default_exdiv_date(date(next_coupon)).into()
}

#[pyfunction]
fn geometric_sum(q: f64, n: u32) -> PyResult<f64> {
    pricing::geometric_sum(q, n).map_err(value_err)
}

/// Per-period rates; `n` is the remaining coupon count.
#[pyfunction]
fn price_street(face: f64, coupon_rate: f64, yield_rate: f64, w: f64, n: u32) -> PyResult<f64> {
    let inputs = PricingInputs::new(face, coupon_rate, yield_rate, w, n).map_err(value_err)?;
    pricing::price_street(&inputs).map_err(value_err)
}

#[pyfunction]
fn price_street_coupon_date(face: f64, coupon_rate: f64, yield_rate: f64, n: u32) -> PyResult<f64> {
    pricing::price_street_coupon_date(face, coupon_rate, yield_rate, n).map_err(value_err)
}

/// Per-period rates; `n` is one less than the remaining coupon count.
#[pyfunction]
fn price_treasury(face: f64, coupon_rate: f64, yield_rate: f64, w: f64, n: u32) -> PyResult<f64> {
    let inputs = PricingInputs::new(face, coupon_rate, yield_rate, w, n).map_err(value_err)?;
    pricing::price_treasury(&inputs).map_err(value_err)
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn price_dmo_variant(c1: f64, c2: f64, c: f64, face: f64, yield_rate: f64, w: f64, n: u32) -> PyResult<f64> {
    let inputs = PricingInputs::new(face, 0.0, yield_rate, w, n).map_err(value_err)?;
    let cash = DmoCashflows {
        first: c1,
        second: c2,
        regular: c,
    };
    pricing::price_dmo_variant(&cash, &inputs).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (face, coupon_rate, yield_rate, w, n, method="treasury", include_first=true))]
fn price_extended_oracle(
    face: f64,
    coupon_rate: f64,
    yield_rate: f64,
    w: f64,
    n: u32,
    method: &str,
    include_first: bool,
) -> PyResult<f64> {
    let method = match method {
        "street" => OracleMethod::Street,
        "treasury" => OracleMethod::Treasury,
        other => return Err(value_err(format!("oracle method must be street or treasury, got {other:?}"))),
    };
    pricing::price_extended_oracle(face, coupon_rate, yield_rate, w, n, method, include_first).map_err(value_err)
}

#[pyfunction]
fn ex_dividend_adjust(price: f64, first_coupon: f64, q: f64, w: f64) -> f64 {
    pricing::ex_dividend_adjust(price, first_coupon, q, w)
}

#[pyfunction]
fn accrued_interest(face: f64, coupon_rate: f64, days_accrued: i64, days_in_period: i64) -> PyResult<f64> {
    pricing::accrued_interest(face, coupon_rate, days_accrued, days_in_period).map_err(value_err)
}

#[pyfunction]
fn dirty_from_clean(clean: Decimal, accrued: Decimal) -> Decimal {
    pricing::dirty_from_clean(clean, accrued)
}

#[pyfunction]
fn clean_from_dirty(dirty: Decimal, accrued: Decimal) -> Decimal {
    pricing::clean_from_dirty(dirty, accrued)
}

#[pyfunction]
fn parse_quotes(csv_text: &str) -> PyResult<Vec<PyQuoteRow>> {
    let rows = market::parse_quotes(csv_text).map_err(value_err)?;
    Ok(rows
        .into_iter()
        .map(|r| PyQuoteRow {
            gilt_name: r.gilt_name,
            date: r.date.into(),
            clean_price: r.clean_price,
            dirty_price_published: r.dirty_price_published,
            accrued_published: r.accrued_published,
            annual_yield_pct: r.annual_yield_pct,
        })
        .collect())
}

#[pyfunction]
fn replicate_gilt2015() -> PyResult<Vec<PyScenarioResult>> {
    let results = market::replicate_gilt2015().map_err(value_err)?;
    Ok(results
        .into_iter()
        .map(|r| PyScenarioResult {
            scenario: r.scenario,
            settlement: r.settlement.into(),
            exdiv_date: r.exdiv_date.into(),
            ex_dividend: r.ex_dividend,
            prev_quasi: r.prev_quasi.into(),
            next_quasi: r.next_quasi.into(),
            q: r.q,
            r: r.r,
            s: r.s,
            n: r.n,
            dirty: r.dirty,
            published_dirty: r.published_dirty,
        })
        .collect())
}

/// Uses the embedded DMO quotes unless `csv_text` is given.
#[pyfunction]
#[pyo3(signature = (n_override=None, csv_text=None))]
fn replicate_gilt2022(n_override: Option<u32>, csv_text: Option<&str>) -> PyResult<Vec<PyReplicationRow>> {
    let quotes = match csv_text {
        Some(text) => market::parse_quotes(text).map_err(value_err)?,
        None => golden::gilt2022_quotes(),
    };
    let rows = market::replicate_gilt2022(&quotes, n_override).map_err(value_err)?;
    Ok(rows.into_iter().map(Into::into).collect())
}

#[pymodule]
#[pyo3(name = "couponclock")]
fn couponclock_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBondSpec>()?;
    m.add_class::<PyPriceBreakdown>()?;
    m.add_class::<PySettlementContext>()?;
    m.add_class::<PyQuoteRow>()?;
    m.add_class::<PyReplicationRow>()?;
    m.add_class::<PyScenarioResult>()?;
    m.add_function(wrap_pyfunction!(day_count, m)?)?;
    m.add_function(wrap_pyfunction!(build_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(default_exdiv_date, m)?)?;
    m.add_function(wrap_pyfunction!(geometric_sum, m)?)?;
    m.add_function(wrap_pyfunction!(price_street, m)?)?;
    m.add_function(wrap_pyfunction!(price_street_coupon_date, m)?)?;
    m.add_function(wrap_pyfunction!(price_treasury, m)?)?;
    m.add_function(wrap_pyfunction!(price_dmo_variant, m)?)?;
    m.add_function(wrap_pyfunction!(price_extended_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(ex_dividend_adjust, m)?)?;
    m.add_function(wrap_pyfunction!(accrued_interest, m)?)?;
    m.add_function(wrap_pyfunction!(dirty_from_clean, m)?)?;
    m.add_function(wrap_pyfunction!(clean_from_dirty, m)?)?;
    m.add_function(wrap_pyfunction!(parse_quotes, m)?)?;
    m.add_function(wrap_pyfunction!(replicate_gilt2015, m)?)?;
    m.add_function(wrap_pyfunction!(replicate_gilt2022, m)?)?;
    m.add("GILT2022_PAPER_N", golden::GILT2022_PAPER_N)?;
    Ok(())
}
