//! Command-line front end. [`run`] parses arguments, dispatches and returns
//! the exit code with everything that should be printed, so the binary is a
//! thin wrapper and tests can drive it in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use crate::calendar::{build_schedule, build_schedule_covering, day_count, locate, months_per_period, CalendarError};
use crate::format::fixed6;
use crate::market::golden::{gilt2022_quotes, GILT2022_PAPER_N};
use crate::market::{
    parse_quotes, parse_quotes_lenient, render_replication_csv, replicate_gilt2015, replicate_gilt2022,
    replicate_quotes, MarketError, ReplicationRow, REPLICATION_COLUMNS,
};
use crate::pricing::{accrued_interest, price_bond, PricingError, PricingOverrides};
use crate::{BondSpec, CivilDate, DayCountConvention, Error, Method};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DATA: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable that sets the output format when `--output` is absent.
pub const OUTPUT_ENV: &str = "COUPONCLOCK_OUTPUT";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn ok(stdout: String) -> Self {
        CliOutcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: u8, message: String) -> Self {
        CliOutcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "couponclock", version, about = "Bond prices between coupon dates")]
struct Cli {
    /// Output format (also read from COUPONCLOCK_OUTPUT)
    #[arg(long, global = true, value_enum, env = OUTPUT_ENV)]
    output: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dirty price, accrued interest and clean price at a settlement date
    Price(PriceArgs),
    /// Accrued interest inside one coupon period
    Accrued(AccruedArgs),
    /// Quasi-coupon dates of a bond
    Schedule(ScheduleArgs),
    /// Price every quote in a CSV file with all three formulas
    Batch(BatchArgs),
    /// Reproduce the published gilt tables
    Replicate(ReplicateArgs),
}

#[derive(Debug, Args)]
struct BondArgs {
    /// Face value
    #[arg(long, default_value_t = 100.0)]
    face: f64,
    /// Annual coupon rate in percent (8 means 8%)
    #[arg(long)]
    coupon: f64,
    /// Coupon payments per year (1, 2, 4 or 12)
    #[arg(long)]
    freq: u32,
    #[arg(long, value_parser = parse_date)]
    maturity: CivilDate,
    /// A coupon day as MM-DD
    #[arg(long = "coupon-day1", value_parser = parse_month_day)]
    coupon_day1: Option<(u32, u32)>,
    /// The other coupon day as MM-DD
    #[arg(long = "coupon-day2", value_parser = parse_month_day)]
    coupon_day2: Option<(u32, u32)>,
    #[arg(long = "day-count", default_value = "actact", value_parser = parse_day_count)]
    day_count: DayCountConvention,
}

#[derive(Debug, Args)]
struct PriceArgs {
    #[command(flatten)]
    bond: BondArgs,
    #[arg(long, value_parser = parse_date)]
    settle: CivilDate,
    /// Annual yield in percent (4.445 means 4.445%)
    #[arg(long = "yield", allow_negative_numbers = true)]
    yield_pct: f64,
    #[arg(long, default_value = "treasury", value_parser = parse_method)]
    method: Method,
    /// Exponent count N, replacing the schedule-derived value
    #[arg(long = "n")]
    n: Option<u32>,
    /// Ex-dividend date of the settlement's coupon period
    #[arg(long = "exdiv-date", value_parser = parse_date)]
    exdiv_date: Option<CivilDate>,
    /// Force ex-dividend treatment on or off
    #[arg(long = "ex-div", action = ArgAction::Set)]
    ex_div: Option<bool>,
    /// Count the settlement day in the accrual
    #[arg(long = "inclusive-days", default_value_t = true, action = ArgAction::Set)]
    inclusive_days: bool,
}

#[derive(Debug, Args)]
struct AccruedArgs {
    #[arg(long, default_value_t = 100.0)]
    face: f64,
    /// Annual coupon rate in percent
    #[arg(long)]
    coupon: f64,
    #[arg(long)]
    freq: u32,
    #[arg(long = "period-start", value_parser = parse_date)]
    period_start: CivilDate,
    #[arg(long = "period-end", value_parser = parse_date)]
    period_end: CivilDate,
    #[arg(long, value_parser = parse_date)]
    settle: CivilDate,
    #[arg(long = "day-count", default_value = "actact", value_parser = parse_day_count)]
    day_count: DayCountConvention,
    #[arg(long = "inclusive-days", default_value_t = true, action = ArgAction::Set)]
    inclusive_days: bool,
}

#[derive(Debug, Args)]
struct ScheduleArgs {
    #[arg(long, value_parser = parse_date)]
    maturity: CivilDate,
    #[arg(long)]
    freq: u32,
    #[arg(long = "coupon-day1", value_parser = parse_month_day)]
    coupon_day1: Option<(u32, u32)>,
    #[arg(long = "coupon-day2", value_parser = parse_month_day)]
    coupon_day2: Option<(u32, u32)>,
    /// Number of dates to list, ending at maturity
    #[arg(long, conflicts_with = "from")]
    periods: Option<u32>,
    /// List every date from the period containing this date
    #[arg(long, value_parser = parse_date)]
    from: Option<CivilDate>,
    /// Also show where this settlement date falls
    #[arg(long, value_parser = parse_date)]
    settle: Option<CivilDate>,
    #[arg(long = "day-count", default_value = "actact", value_parser = parse_day_count)]
    day_count: DayCountConvention,
    #[arg(long = "exdiv-date", value_parser = parse_date)]
    exdiv_date: Option<CivilDate>,
}

#[derive(Debug, Args)]
struct BatchArgs {
    #[command(flatten)]
    bond: BondArgs,
    /// Quote CSV (gilt_name,date,clean_price,dirty_price,accrued_interest,yield_pct)
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "n")]
    n: Option<u32>,
    /// Skip malformed rows instead of failing
    #[arg(long)]
    lenient: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    Gilt2015,
    Gilt2022,
}

#[derive(Debug, Args)]
struct ReplicateArgs {
    #[arg(value_enum)]
    table: Table,
    /// Use N = 12 for every 2022 row, as the published computations did
    #[arg(long = "paper-n")]
    paper_n: bool,
    /// Quote CSV to use instead of the embedded 2022 quotes
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

fn parse_date(s: &str) -> Result<CivilDate, String> {
    s.parse::<CivilDate>().map_err(|e| e.to_string())
}

fn parse_month_day(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("{s:?} is not a month-day in MM-DD form");
    let (m, d) = s.split_once('-').ok_or_else(bad)?;
    let (m, d): (u32, u32) = (m.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?);
    // 2000 is a leap year, so 02-29 is accepted
    CivilDate::new(2000, m, d).map_err(|_| bad())?;
    Ok((m, d))
}

fn parse_day_count(s: &str) -> Result<DayCountConvention, String> {
    s.parse::<DayCountConvention>().map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse::<Method>()
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutcome::ok(rendered),
                _ => CliOutcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let output = cli.output.unwrap_or_default();
    let result = match cli.command {
        Command::Price(args) => cmd_price(args, output).map(|text| (text, String::new())),
        Command::Accrued(args) => cmd_accrued(args, output).map(|text| (text, String::new())),
        Command::Schedule(args) => cmd_schedule(args, output).map(|text| (text, String::new())),
        Command::Batch(args) => cmd_batch(args, output),
        Command::Replicate(args) => cmd_replicate(args, output).map(|text| (text, String::new())),
    };
    match result {
        Ok((stdout, stderr)) => CliOutcome {
            code: EXIT_OK,
            stdout,
            stderr,
        },
        Err(failure) => CliOutcome::fail(failure.code, failure.message),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(flag: &str, message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("{flag}: {message}"),
        }
    }

    fn data(flag: &str, message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_DATA,
            message: format!("{flag}: {message}"),
        }
    }
}

/// The flag a library error is attributable to.
fn flag_for(err: &Error) -> &'static str {
    match err {
        Error::Calendar(c) => match c {
            CalendarError::InvalidFrequency(_) => "--freq",
            CalendarError::AnchorOffGrid { .. } => "--coupon-day1",
            CalendarError::EmptySchedule => "--periods",
            CalendarError::UnknownConvention(_) => "--day-count",
            _ => "--settle",
        },
        Error::Pricing(p) => match p {
            PricingError::InvalidInput { field: "yield", .. } => "--yield",
            PricingError::InvalidInput { field: "face", .. } => "--face",
            PricingError::InvalidInput { field: "coupon rate", .. } => "--coupon",
            PricingError::InvalidInput { .. } => "--settle",
            PricingError::TooFewPeriods { .. } => "--n",
            PricingError::AccrualOutOfRange { .. } => "--settle",
        },
        Error::Market(_) => "--in",
    }
}

fn data_failure(err: Error) -> Failure {
    Failure::data(flag_for(&err), err)
}

impl BondArgs {
    fn to_spec(&self) -> Result<BondSpec, Failure> {
        let step = months_per_period(self.freq).map_err(|e| Failure::usage("--freq", e))? as i32;
        let mut anchor: Option<CivilDate> = None;
        for (flag, day) in [("--coupon-day1", self.coupon_day1), ("--coupon-day2", self.coupon_day2)] {
            let Some((month, dom)) = day else { continue };
            let apart = self.maturity.month() as i32 - month as i32;
            if apart.rem_euclid(step) != 0 {
                return Err(Failure::usage(
                    flag,
                    format!(
                        "{month:02}-{dom:02} is not on the {}-month coupon grid of maturity {}",
                        step, self.maturity
                    ),
                ));
            }
            let candidate = CivilDate::new(2000, month, dom).expect("validated by parser");
            if anchor.is_none_or(|a| candidate.day() > a.day()) {
                anchor = Some(candidate);
            }
        }
        let mut spec = BondSpec::new(self.coupon / 100.0, self.freq, self.maturity)
            .with_face(self.face)
            .with_day_count(self.day_count);
        if let Some(anchor) = anchor {
            build_schedule(self.maturity, self.freq, Some(anchor), 1)
                .map_err(|e| Failure::usage("--coupon-day1", e))?;
            spec = spec.with_anchor(anchor);
        }
        Ok(spec)
    }
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn cmd_price(args: PriceArgs, output: OutputFormat) -> Result<String, Failure> {
    let spec = args.bond.to_spec()?;
    let overrides = PricingOverrides {
        n: args.n,
        ex_dividend: args.ex_div,
        exdiv_date: args.exdiv_date,
        inclusive_days: Some(args.inclusive_days),
    };
    let p = price_bond(&spec, args.settle, args.yield_pct / 100.0, args.method, overrides)
        .map_err(data_failure)?;
    let ctx = &p.context;
    let fields: Vec<(&str, String)> = vec![
        ("method", p.method.to_string()),
        ("settlement", ctx.settlement.to_string()),
        ("prev_quasi", ctx.prev_quasi.to_string()),
        ("next_quasi", ctx.next_quasi.to_string()),
        ("r", ctx.r.to_string()),
        ("s", ctx.s.to_string()),
        ("w", fixed6(p.w)),
        ("q", fixed6(p.q)),
        ("n", p.n.to_string()),
        ("exdiv_date", ctx.exdiv_date.to_string()),
        ("ex_dividend", yes_no(p.ex_div_applied).to_string()),
        ("dirty", fixed6(p.dirty)),
        ("accrued", fixed6(p.accrued)),
        ("clean", fixed6(p.clean)),
    ];
    Ok(render_record(&fields, output))
}

fn cmd_accrued(args: AccruedArgs, output: OutputFormat) -> Result<String, Failure> {
    months_per_period(args.freq).map_err(|e| Failure::usage("--freq", e))?;
    if args.period_start >= args.period_end {
        return Err(Failure::usage("--period-end", "must be after --period-start"));
    }
    if args.settle < args.period_start || args.settle >= args.period_end {
        return Err(Failure::data(
            "--settle",
            format!("{} is outside [{}, {})", args.settle, args.period_start, args.period_end),
        ));
    }
    let s = day_count(args.period_start, args.period_end, args.day_count)
        .map_err(|e| Failure::data("--period-end", e))?;
    let r = day_count(args.settle, args.period_end, args.day_count).map_err(|e| Failure::data("--settle", e))?;
    let days = s - r + i64::from(args.inclusive_days);
    let rate = args.coupon / 100.0 / args.freq as f64;
    let accrued = accrued_interest(args.face, rate, days, s).map_err(|e| Failure::data("--settle", e))?;
    let fields: Vec<(&str, String)> = vec![
        ("days_accrued", days.to_string()),
        ("days_in_period", s.to_string()),
        ("accrued", fixed6(accrued)),
    ];
    Ok(render_record(&fields, output))
}

fn cmd_schedule(args: ScheduleArgs, output: OutputFormat) -> Result<String, Failure> {
    let bond = BondArgs {
        face: 100.0,
        coupon: 0.0,
        freq: args.freq,
        maturity: args.maturity,
        coupon_day1: args.coupon_day1,
        coupon_day2: args.coupon_day2,
        day_count: args.day_count,
    };
    let spec = bond.to_spec()?;
    let earliest = args.from.or(args.settle);
    let schedule = match (args.periods, earliest) {
        (Some(k), _) => build_schedule(spec.maturity, spec.frequency, spec.anchor, k)
            .map_err(|e| Failure::usage("--periods", e))?,
        (None, Some(from)) => build_schedule_covering(spec.maturity, spec.frequency, spec.anchor, from)
            .map_err(|e| Failure::data("--from", e))?,
        (None, None) => return Err(Failure::usage("--periods", "give --periods, --from or --settle")),
    };
    let mut rows: Vec<Vec<String>> = schedule
        .quasi_coupon_dates()
        .iter()
        .enumerate()
        .map(|(k, d)| vec![k.to_string(), d.to_string()])
        .collect();
    let mut text = render_rows(&["index", "quasi_coupon_date"], &mut rows, output);
    if let Some(settle) = args.settle {
        let ctx = locate(&schedule, settle, args.day_count, args.exdiv_date)
            .map_err(|e| Failure::data("--settle", e))?;
        let fields: Vec<(&str, String)> = vec![
            ("settlement", ctx.settlement.to_string()),
            ("prev_quasi", ctx.prev_quasi.to_string()),
            ("next_quasi", ctx.next_quasi.to_string()),
            ("r", ctx.r.to_string()),
            ("s", ctx.s.to_string()),
            ("w", fixed6(ctx.w)),
            ("days_accrued", ctx.days_accrued.to_string()),
            ("n_remaining", ctx.n_remaining.to_string()),
            ("exdiv_date", ctx.exdiv_date.to_string()),
            ("ex_dividend", yes_no(ctx.ex_dividend).to_string()),
        ];
        text.push('\n');
        text.push_str(&render_record(&fields, output));
    }
    Ok(text)
}

fn read_quotes(path: &PathBuf, lenient: bool) -> Result<(Vec<crate::market::QuoteRow>, String), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::data("--in", format!("cannot read {}: {e}", path.display())))?;
    let in_failure = |e: MarketError| Failure::data("--in", format!("{}: {e}", path.display()));
    if lenient {
        let (rows, errors) = parse_quotes_lenient(&text).map_err(in_failure)?;
        let warnings = errors
            .iter()
            .map(|e| format!("warning: --in: skipped {e}\n"))
            .collect();
        Ok((rows, warnings))
    } else {
        Ok((parse_quotes(&text).map_err(in_failure)?, String::new()))
    }
}

/// Returns the rendered rows and any skipped-row warnings.
fn cmd_batch(args: BatchArgs, output: OutputFormat) -> Result<(String, String), Failure> {
    let spec = args.bond.to_spec()?;
    let (quotes, warnings) = read_quotes(&args.input, args.lenient)?;
    let rows = replicate_quotes(&spec, &quotes, args.n).map_err(data_failure)?;
    Ok((render_replication(&rows, output), warnings))
}

fn cmd_replicate(args: ReplicateArgs, output: OutputFormat) -> Result<String, Failure> {
    match args.table {
        Table::Gilt2015 => {
            if args.input.is_some() {
                return Err(Failure::usage("--in", "only applies to gilt2022"));
            }
            let results = replicate_gilt2015().map_err(data_failure)?;
            let headers = [
                "scenario",
                "settlement",
                "exdiv_date",
                "ex_dividend",
                "prev_quasi",
                "next_quasi",
                "q",
                "r",
                "s",
                "n",
                "dirty",
                "published",
            ];
            let mut rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        r.scenario.to_string(),
                        r.settlement.to_string(),
                        r.exdiv_date.to_string(),
                        yes_no(r.ex_dividend).to_string(),
                        r.prev_quasi.to_string(),
                        r.next_quasi.to_string(),
                        crate::format::fixed(r.q, 9),
                        r.r.to_string(),
                        r.s.to_string(),
                        r.n.to_string(),
                        fixed6(r.dirty),
                        fixed6(r.published_dirty),
                    ]
                })
                .collect();
            Ok(render_rows(&headers, &mut rows, output))
        }
        Table::Gilt2022 => {
            let quotes = match &args.input {
                Some(path) => read_quotes(path, false)?.0,
                None => gilt2022_quotes(),
            };
            let n = args.paper_n.then_some(GILT2022_PAPER_N);
            let rows = replicate_gilt2022(&quotes, n).map_err(data_failure)?;
            Ok(render_replication(&rows, output))
        }
    }
}

fn render_replication(rows: &[ReplicationRow], output: OutputFormat) -> String {
    match output {
        OutputFormat::Csv => render_replication_csv(rows),
        OutputFormat::Table => {
            let mut cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.date.to_string(),
                        r.r.to_string(),
                        fixed6(r.w),
                        fixed6(r.q),
                        fixed6(r.dirty_street),
                        fixed6(r.dirty_treasury),
                        fixed6(r.dirty_dmo),
                        fixed6(r.accrued),
                        fixed6(r.diff_dmo_minus_dmo_formula),
                        fixed6(r.diff_dmo_minus_street),
                    ]
                })
                .collect();
            render_rows(&REPLICATION_COLUMNS, &mut cells, OutputFormat::Table)
        }
    }
}

/// One record: `key value` lines for tables, a header plus one row for CSV.
fn render_record(fields: &[(&str, String)], output: OutputFormat) -> String {
    match output {
        OutputFormat::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let values: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
            format!("{}\n{}\n", keys.join(","), values.join(","))
        }
        OutputFormat::Table => {
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            fields
                .iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect()
        }
    }
}

fn render_rows(headers: &[&str], rows: &mut [Vec<String>], output: OutputFormat) -> String {
    match output {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(headers).expect("in-memory write");
            for row in rows.iter() {
                writer.write_record(row).expect("in-memory write");
            }
            String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        OutputFormat::Table => {
            let widths: Vec<usize> = (0..headers.len())
                .map(|c| rows.iter().map(|r| r[c].len()).chain([headers[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:>w$}"))
                    .collect();
                format!("{}\n", padded.join("  "))
            };
            let mut out = line(headers.to_vec());
            for row in rows.iter() {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
            out
        }
    }
}
