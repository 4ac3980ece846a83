use crate::calendar::CivilDate;

use super::MarketError;

pub const QUOTE_COLUMNS: [&str; 6] = [
    "gilt_name",
    "date",
    "clean_price",
    "dirty_price",
    "accrued_interest",
    "yield_pct",
];

/// One end-of-day market observation in DMO export layout.
#[derive(Debug, Clone, PartialEq)]
pub struct QuoteRow {
    pub gilt_name: String,
    pub date: CivilDate,
    pub clean_price: f64,
    pub dirty_price_published: Option<f64>,
    pub accrued_published: Option<f64>,
    /// Percent: 0.693781 means 0.693781%.
    pub annual_yield_pct: f64,
}

impl QuoteRow {
    /// Annual yield as a fraction.
    pub fn annual_yield(&self) -> f64 {
        self.annual_yield_pct / 100.0
    }
}

/// Parses quote CSV text, failing on the first bad row.
pub fn parse_quotes(text: &str) -> Result<Vec<QuoteRow>, MarketError> {
    let (rows, mut errors) = parse_rows(text)?;
    match errors.is_empty() {
        true => Ok(rows),
        false => Err(errors.swap_remove(0)),
    }
}

/// Parses quote CSV text, keeping good rows and collecting row errors.
/// A missing or wrong header is still fatal.
pub fn parse_quotes_lenient(text: &str) -> Result<(Vec<QuoteRow>, Vec<MarketError>), MarketError> {
    parse_rows(text)
}

fn parse_rows(text: &str) -> Result<(Vec<QuoteRow>, Vec<MarketError>), MarketError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = reader.headers().map_err(|e| MarketError::Csv {
        line: 1,
        message: e.to_string(),
    })?;
    let found: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
    if found.len() != QUOTE_COLUMNS.len() || found.iter().zip(QUOTE_COLUMNS).any(|(a, b)| a != b) {
        return Err(MarketError::Header {
            expected: QUOTE_COLUMNS.join(","),
            found: headers.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                errors.push(MarketError::Csv {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        match parse_record(&record, line) {
            Ok(row) => rows.push(row),
            Err(e) => errors.push(e),
        }
    }
    Ok((rows, errors))
}

fn parse_record(record: &csv::StringRecord, line: u64) -> Result<QuoteRow, MarketError> {
    if record.len() != QUOTE_COLUMNS.len() {
        return Err(MarketError::Csv {
            line,
            message: format!("expected {} fields, found {}", QUOTE_COLUMNS.len(), record.len()),
        });
    }
    let field_err = |idx: usize, reason: &str| MarketError::Field {
        line,
        field: QUOTE_COLUMNS[idx],
        value: record[idx].to_string(),
        reason: reason.to_string(),
    };
    let number = |idx: usize| -> Result<f64, MarketError> {
        record[idx]
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| field_err(idx, "not a number"))
    };
    let optional = |idx: usize| -> Result<Option<f64>, MarketError> {
        if record[idx].is_empty() {
            Ok(None)
        } else {
            number(idx).map(Some)
        }
    };

    let date = record[1]
        .parse::<CivilDate>()
        .map_err(|_| field_err(1, "not a date"))?;
    let clean_price = number(2)?;
    if clean_price <= 0.0 {
        return Err(field_err(2, "must be positive"));
    }
    Ok(QuoteRow {
        gilt_name: record[0].to_string(),
        date,
        clean_price,
        dirty_price_published: optional(3)?,
        accrued_published: optional(4)?,
        annual_yield_pct: number(5)?,
    })
}

/// Writes rows back in the input layout. Numbers use the shortest
/// representation that parses back to the same `f64`.
pub fn render_quotes(rows: &[QuoteRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(QUOTE_COLUMNS).expect("in-memory write");
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for row in rows {
        writer
            .write_record([
                row.gilt_name.clone(),
                row.date.to_string(),
                row.clean_price.to_string(),
                opt(row.dirty_price_published),
                opt(row.accrued_published),
                row.annual_yield_pct.to_string(),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}
