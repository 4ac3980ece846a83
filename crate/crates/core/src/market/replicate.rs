use crate::calendar::CivilDate;
use crate::format::fixed6;
use crate::pricing::{price_bond, BondSpec, Method, PricingOverrides};
use crate::Error;

use super::golden::{gilt2015_published, gilt2015_spec, gilt2022_period, gilt2022_spec, GILT2015_YIELD};
use super::{MarketError, QuoteRow};

pub const REPLICATION_COLUMNS: [&str; 10] = [
    "date",
    "r",
    "w",
    "q",
    "dirty_street",
    "dirty_treasury",
    "dirty_dmo",
    "accrued",
    "diff_dmo",
    "diff_street",
];

/// One quote priced by all three formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationRow {
    pub date: CivilDate,
    pub r: i64,
    pub w: f64,
    pub q: f64,
    pub n_street: u32,
    pub n_treasury: u32,
    pub dirty_street: f64,
    pub dirty_treasury: f64,
    pub dirty_dmo: f64,
    pub accrued: f64,
    /// Published dirty price, or clean + computed accrued when absent.
    pub published_dirty: f64,
    /// `published_dirty - dirty_dmo`
    pub diff_dmo_minus_dmo_formula: f64,
    /// `published_dirty - dirty_street`
    pub diff_dmo_minus_street: f64,
}

/// Prices every quote of `spec` with the Street, Treasury and DMO forms at
/// the quote's own yield. With `n_override` all three use that N; without
/// it N comes from the schedule.
pub fn replicate_quotes(
    spec: &BondSpec,
    quotes: &[QuoteRow],
    n_override: Option<u32>,
) -> Result<Vec<ReplicationRow>, Error> {
    quotes.iter().map(|quote| replicate_one(spec, quote, n_override)).collect()
}

fn replicate_one(spec: &BondSpec, quote: &QuoteRow, n_override: Option<u32>) -> Result<ReplicationRow, Error> {
    let overrides = PricingOverrides {
        n: n_override,
        ..Default::default()
    };
    let price = |method| price_bond(spec, quote.date, quote.annual_yield(), method, overrides);
    let street = price(Method::Street)?;
    let treasury = price(Method::Treasury)?;
    let dmo = price(Method::DmoVariant)?;

    let published_dirty = quote
        .dirty_price_published
        .unwrap_or(quote.clean_price + treasury.accrued);
    Ok(ReplicationRow {
        date: quote.date,
        r: treasury.context.r,
        w: treasury.w,
        q: treasury.q,
        n_street: street.n,
        n_treasury: treasury.n,
        dirty_street: street.dirty,
        dirty_treasury: treasury.dirty,
        dirty_dmo: dmo.dirty,
        accrued: treasury.accrued,
        published_dirty,
        diff_dmo_minus_dmo_formula: published_dirty - dmo.dirty,
        diff_dmo_minus_street: published_dirty - street.dirty,
    })
}

/// Replicates the 0½% Treasury Gilt 2022 computations. Every quote must
/// settle inside the 22-Jan-2017 to 22-Jul-2017 quasi-coupon period.
pub fn replicate_gilt2022(quotes: &[QuoteRow], n_override: Option<u32>) -> Result<Vec<ReplicationRow>, Error> {
    let (start, end) = gilt2022_period();
    if let Some(outside) = quotes.iter().find(|q| q.date < start || q.date >= end) {
        return Err(MarketError::QuoteOutsidePeriod {
            date: outside.date,
            start,
            end,
        }
        .into());
    }
    replicate_quotes(&gilt2022_spec(), quotes, n_override)
}

/// One scenario of the 8% Treasury Gilt 2015, from schedule-derived inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioResult {
    pub scenario: u8,
    pub settlement: CivilDate,
    pub exdiv_date: CivilDate,
    pub ex_dividend: bool,
    pub prev_quasi: CivilDate,
    pub next_quasi: CivilDate,
    pub q: f64,
    pub r: i64,
    pub s: i64,
    pub n: u32,
    pub dirty: f64,
    pub published_dirty: f64,
}

/// Prices the four published settlement scenarios of the 8% Treasury Gilt
/// 2015 with the Treasury form.
pub fn replicate_gilt2015() -> Result<Vec<ScenarioResult>, Error> {
    let spec = gilt2015_spec();
    gilt2015_published()
        .iter()
        .map(|published| {
            let overrides = PricingOverrides {
                exdiv_date: Some(published.exdiv_date),
                ..Default::default()
            };
            let p = price_bond(&spec, published.settlement, GILT2015_YIELD, Method::Treasury, overrides)?;
            Ok(ScenarioResult {
                scenario: published.scenario,
                settlement: published.settlement,
                exdiv_date: p.context.exdiv_date,
                ex_dividend: p.ex_div_applied,
                prev_quasi: p.context.prev_quasi,
                next_quasi: p.context.next_quasi,
                q: p.q,
                r: p.context.r,
                s: p.context.s,
                n: p.n,
                dirty: p.dirty,
                published_dirty: published.dirty,
            })
        })
        .collect()
}

/// CSV in [`REPLICATION_COLUMNS`] order, every number at 6 dp.
pub fn render_replication_csv(rows: &[ReplicationRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(REPLICATION_COLUMNS).expect("in-memory write");
    for row in rows {
        writer
            .write_record([
                row.date.to_string(),
                row.r.to_string(),
                fixed6(row.w),
                fixed6(row.q),
                fixed6(row.dirty_street),
                fixed6(row.dirty_treasury),
                fixed6(row.dirty_dmo),
                fixed6(row.accrued),
                fixed6(row.diff_dmo_minus_dmo_formula),
                fixed6(row.diff_dmo_minus_street),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// A rendered replication row read back from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedReplicationRow {
    pub date: CivilDate,
    pub r: i64,
    /// w, q, the three prices, accrued and the two differences, in column order.
    pub values: [f64; 8],
}

/// Parses CSV produced by [`render_replication_csv`].
pub fn parse_replication_csv(text: &str) -> Result<Vec<RenderedReplicationRow>, MarketError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| MarketError::Csv {
        line: 1,
        message: e.to_string(),
    })?;
    if headers.iter().ne(REPLICATION_COLUMNS) {
        return Err(MarketError::Header {
            expected: REPLICATION_COLUMNS.join(","),
            found: headers.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| MarketError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field_err = |idx: usize| MarketError::Field {
            line,
            field: REPLICATION_COLUMNS[idx],
            value: record.get(idx).unwrap_or_default().to_string(),
            reason: "unparseable".to_string(),
        };
        let date = record[0].parse::<CivilDate>().map_err(|_| field_err(0))?;
        let r = record[1].parse::<i64>().map_err(|_| field_err(1))?;
        let mut values = [0.0; 8];
        for (k, slot) in values.iter_mut().enumerate() {
            *slot = record[k + 2].parse::<f64>().map_err(|_| field_err(k + 2))?;
        }
        rows.push(RenderedReplicationRow { date, r, values });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::super::golden::{gilt2022_quotes, GILT2022_PAPER_N};
    use super::*;

    #[test]
    fn first_row_fixed_n() {
        let rows = replicate_gilt2022(&gilt2022_quotes(), Some(GILT2022_PAPER_N)).unwrap();
        let row = &rows[0];
        assert_eq!(row.r, 19);
        assert!((row.dirty_street - 99.17000).abs() < 5e-5);
        assert!((row.dirty_dmo - 99.077089).abs() < 5e-5);
        assert!((row.accrued - 0.225138).abs() < 5e-7);
        assert!((row.diff_dmo_minus_dmo_formula - 0.188049).abs() < 5e-5);
        assert!((row.diff_dmo_minus_street - 0.095136).abs() < 5e-5);
    }

    #[test]
    fn twelfth_july_fixed_n() {
        let rows = replicate_gilt2022(&gilt2022_quotes(), Some(GILT2022_PAPER_N)).unwrap();
        let row = rows.last().unwrap();
        assert_eq!(row.date, CivilDate::new(2017, 7, 12).unwrap());
        assert!((row.dirty_dmo - 99.267750).abs() < 5e-6);
        assert!((row.accrued - 0.237569).abs() < 5e-7);
    }

    #[test]
    fn schedule_n_tracks_published_dirty() {
        let rows = replicate_gilt2022(&gilt2022_quotes(), None).unwrap();
        let row = &rows[0];
        assert_eq!((row.n_street, row.n_treasury), (11, 10));
        assert!((row.dirty_treasury - 99.2632374).abs() < 1e-6);
        assert!((row.published_dirty - row.dirty_treasury).abs() < 0.005);
    }

    #[test]
    fn treasury_and_dmo_identical_with_level_coupons() {
        for n in [None, Some(GILT2022_PAPER_N)] {
            for row in replicate_gilt2022(&gilt2022_quotes(), n).unwrap() {
                assert!((row.dirty_treasury - row.dirty_dmo).abs() < 1e-9);
                assert_eq!(row.diff_dmo_minus_dmo_formula, row.published_dirty - row.dirty_dmo);
                assert_eq!(row.diff_dmo_minus_street, row.published_dirty - row.dirty_street);
            }
        }
    }

    #[test]
    fn quote_outside_period_rejected() {
        let mut quotes = gilt2022_quotes();
        quotes[2].date = CivilDate::new(2017, 7, 24).unwrap();
        assert!(matches!(
            replicate_gilt2022(&quotes, None),
            Err(Error::Market(MarketError::QuoteOutsidePeriod { .. }))
        ));
    }

    #[test]
    fn missing_published_dirty_falls_back_to_clean_plus_accrued() {
        let mut quotes = gilt2022_quotes();
        quotes.truncate(1);
        quotes[0].dirty_price_published = None;
        let row = &replicate_gilt2022(&quotes, None).unwrap()[0];
        assert_eq!(row.published_dirty, 99.04 + row.accrued);
    }

    #[test]
    fn gilt2015_scenarios() {
        let results = replicate_gilt2015().unwrap();
        assert_eq!(results.len(), 4);
        for r in &results {
            assert!((r.dirty - r.published_dirty).abs() < 5e-6, "scenario {}", r.scenario);
        }
        assert_eq!(results.iter().map(|r| r.n).collect::<Vec<_>>(), [33, 33, 33, 32]);
        assert_eq!(results.iter().map(|r| r.ex_dividend).collect::<Vec<_>>(), [false, false, true, false]);
    }

    #[test]
    fn csv_round_trip() {
        let rows = replicate_gilt2022(&gilt2022_quotes(), Some(GILT2022_PAPER_N)).unwrap();
        let text = render_replication_csv(&rows);
        assert!(text.starts_with("date,r,w,q,dirty_street,dirty_treasury,dirty_dmo,accrued,diff_dmo,diff_street\n"));
        assert!(text.contains("2017-07-03,19,0.104972,0.996543,99.170002,99.077089,99.077089,0.225138,"));
        let parsed = parse_replication_csv(&text).unwrap();
        assert_eq!(parsed.len(), rows.len());
        for (p, row) in parsed.iter().zip(&rows) {
            assert_eq!(p.date, row.date);
            assert_eq!(p.r, row.r);
            assert!((p.values[4] - row.dirty_dmo).abs() <= 5e-7);
        }
    }
}
