//! CSV and JSON emitters.
//!
//! Exact integers are written as decimal strings. Every JSON document carries
//! `"schema": 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::census::{render_scientific, CensusResult, Rounding};
use crate::oracle::OracleCensus;
use crate::random::{ExperimentConfig, ExperimentReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub mixed_count: String,
    pub selfconverse_count: String,
    /// Unreduced `S/M`.
    pub fraction_exact: String,
    pub fraction: String,
}

impl From<&CensusResult> for CensusRow {
    fn from(r: &CensusResult) -> Self {
        Self {
            n: r.n,
            mixed_count: r.mixed_count.to_string(),
            selfconverse_count: r.selfconverse_count.to_string(),
            fraction_exact: r.fraction_string(),
            fraction: r.rendered(),
        }
    }
}

/// Census columns plus the labeled counts only enumeration can provide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub n: usize,
    pub mixed_count: String,
    pub selfconverse_count: String,
    pub fraction_exact: String,
    pub fraction: String,
    pub labeled_total: String,
    pub labeled_selfconverse: String,
    pub labeled_fraction_exact: String,
}

impl From<&OracleCensus> for OracleRow {
    fn from(c: &OracleCensus) -> Self {
        let fraction = BigRational::new(
            BigInt::from(c.unlabeled_selfconverse),
            BigInt::from(c.unlabeled_total),
        );
        Self {
            n: c.n,
            mixed_count: c.unlabeled_total.to_string(),
            selfconverse_count: c.unlabeled_selfconverse.to_string(),
            fraction_exact: format!("{}/{}", c.unlabeled_selfconverse, c.unlabeled_total),
            fraction: render_scientific(&fraction, 3, Rounding::Truncate),
            labeled_total: c.labeled_total.to_string(),
            labeled_selfconverse: c.labeled_selfconverse.to_string(),
            labeled_fraction_exact: format!("{}/{}", c.labeled_selfconverse, c.labeled_total),
        }
    }
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct Table<'a, T> {
    schema: u32,
    command: &'a str,
    rows: &'a [T],
}

/// `{"schema": 1, "command": .., "rows": [..]}`, pretty-printed.
pub fn table_json<T: Serialize>(command: &str, rows: &[T]) -> String {
    serde_json::to_string_pretty(&Table {
        schema: SCHEMA_VERSION,
        command,
        rows,
    })
    .expect("rows serialize")
}

#[derive(Serialize)]
struct Experiment<'a> {
    schema: u32,
    command: &'static str,
    experiment: &'a str,
    config: &'a ExperimentConfig,
    #[serde(flatten)]
    report: &'a ExperimentReport,
}

pub fn experiment_json(
    experiment: &str,
    config: &ExperimentConfig,
    report: &ExperimentReport,
) -> String {
    serde_json::to_string_pretty(&Experiment {
        schema: SCHEMA_VERSION,
        command: "mc",
        experiment,
        config,
        report,
    })
    .expect("report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::selfconverse_fraction;

    #[test]
    fn census_csv_columns() {
        let rows: Vec<CensusRow> = (3..=4)
            .map(|n| CensusRow::from(&selfconverse_fraction(n).unwrap()))
            .collect();
        assert_eq!(
            to_csv(&rows).unwrap(),
            "n,mixed_count,selfconverse_count,fraction_exact,fraction\n\
             3,16,10,10/16,6.25e-1\n\
             4,218,70,70/218,3.21e-1\n"
        );
    }

    #[test]
    fn census_json_is_versioned() {
        let rows = vec![CensusRow::from(&selfconverse_fraction(3).unwrap())];
        let v: serde_json::Value = serde_json::from_str(&table_json("census", &rows)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["rows"][0]["mixed_count"], "16");
        assert_eq!(v["rows"][0]["fraction"], "6.25e-1");
    }

    #[test]
    fn oracle_row_extends_census_columns() {
        let c = OracleCensus {
            n: 2,
            labeled_total: 4,
            labeled_selfconverse: 4,
            unlabeled_total: 3,
            unlabeled_selfconverse: 3,
        };
        let row = OracleRow::from(&c);
        assert_eq!(row.fraction, "1.00e0");
        assert_eq!(row.labeled_fraction_exact, "4/4");
    }
}
