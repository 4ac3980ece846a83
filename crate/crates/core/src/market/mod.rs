//! Market quote ingestion and replication of the published gilt tables.

pub mod golden;
mod quotes;
mod replicate;

pub use quotes::{parse_quotes, parse_quotes_lenient, render_quotes, QuoteRow, QUOTE_COLUMNS};
pub use replicate::{
    parse_replication_csv, render_replication_csv, replicate_gilt2015, replicate_gilt2022, replicate_quotes,
    RenderedReplicationRow, ReplicationRow, ScenarioResult, REPLICATION_COLUMNS,
};

use thiserror::Error;

use crate::calendar::CivilDate;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarketError {
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("line {line}: field {field} = {value:?}: {reason}")]
    Field {
        line: u64,
        field: &'static str,
        value: String,
        reason: String,
    },
    #[error("header must be {expected:?}, found {found:?}")]
    Header { expected: String, found: String },
    #[error("quote dated {date} is outside the quasi-coupon period {start} to {end}")]
    QuoteOutsidePeriod {
        date: CivilDate,
        start: CivilDate,
        end: CivilDate,
    },
}
