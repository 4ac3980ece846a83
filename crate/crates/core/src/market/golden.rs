//! Published reference values for the two gilts, embedded so replication
//! runs offline.

use crate::calendar::CivilDate;
use crate::pricing::BondSpec;

use super::{parse_quotes, QuoteRow};

fn date(y: i32, m: u32, d: u32) -> CivilDate {
    CivilDate::new(y, m, d).expect("fixture dates are valid")
}

/// 8% Treasury Gilt 2015: semi-annual coupons on 7 June and 7 December.
pub fn gilt2015_spec() -> BondSpec {
    BondSpec::new(0.08, 2, date(2015, 12, 7)).with_anchor(date(1999, 6, 7))
}

/// Yield used for every 8% 2015 scenario (fraction).
pub const GILT2015_YIELD: f64 = 0.04445;

/// Discount ratio as printed (9 dp) alongside the 8% 2015 scenarios.
pub const GILT2015_PUBLISHED_Q: f64 = 0.978258211;

/// One published scenario for the 8% Treasury Gilt 2015.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedScenario {
    pub scenario: u8,
    pub settlement: CivilDate,
    pub exdiv_date: CivilDate,
    pub ex_dividend: bool,
    pub prev_quasi: CivilDate,
    pub next_quasi: CivilDate,
    pub r: i64,
    pub s: i64,
    /// N as printed; scenario 4 prints 33 although its price needs 32.
    /// Scenario 4 also prints 07-Dec-98 as its previous quasi-coupon date;
    /// `prev_quasi` here holds the 07-Jun-99 implied by its r = s = 183.
    pub n_printed: u32,
    pub dirty: f64,
}

pub fn gilt2015_published() -> [PublishedScenario; 4] {
    let exdiv = date(1999, 5, 26);
    let row = |scenario, settlement, ex_dividend, prev_quasi, next_quasi, r, s, dirty| PublishedScenario {
        scenario,
        settlement,
        exdiv_date: exdiv,
        ex_dividend,
        prev_quasi,
        next_quasi,
        r,
        s,
        n_printed: 33,
        dirty,
    };
    [
        row(1, date(1999, 5, 24), false, date(1998, 12, 7), date(1999, 6, 7), 14, 182, 145.012268),
        row(2, date(1999, 5, 26), false, date(1998, 12, 7), date(1999, 6, 7), 12, 182, 145.047301),
        row(3, date(1999, 5, 27), true, date(1998, 12, 7), date(1999, 6, 7), 11, 182, 141.070132),
        row(4, date(1999, 6, 7), false, date(1999, 6, 7), date(1999, 12, 7), 183, 183, 141.257676),
    ]
}

/// 0½% Treasury Gilt 2022: coupons 22 January / 22 July, issued 21 April 2017.
pub fn gilt2022_spec() -> BondSpec {
    BondSpec::new(0.005, 2, date(2022, 7, 22)).with_issue_date(date(2017, 4, 21))
}

/// The quasi-coupon period every published 2022 quote falls in.
pub fn gilt2022_period() -> (CivilDate, CivilDate) {
    (date(2017, 1, 22), date(2017, 7, 22))
}

/// N that reproduces the printed 2022 computations in every formula.
pub const GILT2022_PAPER_N: u32 = 12;

pub const GILT2022_QUOTES_CSV: &str = include_str!("../../data/gilt2022_dmo_d3b.csv");

/// Daily DMO quotes for 3–12 July 2017, verbatim (including the 07-Jul
/// accrued figure that disagrees with the accrual formula).
pub fn gilt2022_quotes() -> Vec<QuoteRow> {
    parse_quotes(GILT2022_QUOTES_CSV).expect("embedded fixture parses")
}

/// A printed computation row for the 2022 gilt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedComputation {
    pub date: CivilDate,
    pub r: i64,
    pub w: f64,
    pub q: f64,
    pub dirty_street: f64,
    pub dirty_treasury: f64,
    pub dirty_dmo: f64,
    pub accrued: f64,
    pub diff_dmo: f64,
    pub diff_street: f64,
}

pub fn gilt2022_published_computations() -> [PublishedComputation; 8] {
    let row = |day, r, w, q, street, treasury, dmo, accrued, diff_dmo, diff_street| PublishedComputation {
        date: date(2017, 7, day),
        r,
        w,
        q,
        dirty_street: street,
        dirty_treasury: treasury,
        dirty_dmo: dmo,
        accrued,
        diff_dmo,
        diff_street,
    };
    [
        row(3, 19, 0.104972, 0.996543, 99.17000, 99.077089, 99.077089, 0.225138, 0.188049, 0.095136),
        row(4, 18, 0.099448, 0.996684, 99.32495, 99.245467, 99.245467, 0.226519, 0.161052, 0.081571),
        row(5, 17, 0.093923, 0.996784, 99.43603, 99.366161, 99.366161, 0.227901, 0.141740, 0.071867),
        row(6, 16, 0.088398, 0.996441, 99.06427, 98.961574, 98.961574, 0.229282, 0.207708, 0.105014),
        row(7, 15, 0.082873, 0.996580, 99.21812, 99.128763, 99.128763, 0.230663, 0.184662, 0.095303),
        row(10, 12, 0.066298, 0.996742, 99.39883, 99.324889, 99.324889, 0.234807, 0.149918, 0.075977),
        row(11, 11, 0.060773, 0.996660, 99.31235, 99.230623, 99.230623, 0.236188, 0.165565, 0.083839),
        row(12, 10, 0.055249, 0.996690, 99.34662, 99.267750, 99.267750, 0.237569, 0.159819, 0.080951),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        let quotes = gilt2022_quotes();
        assert_eq!(quotes.len(), 8);
        assert!(quotes.iter().zip(gilt2022_published_computations()).all(|(q, c)| q.date == c.date));
        assert_eq!(quotes[4].accrued_published, Some(0.233425));
    }
}
