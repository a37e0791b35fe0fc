use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Reads one value column (and optionally a date column) from a CSV file
/// with a header row.
///
/// Values must use a dot decimal separator; `"3,622"` is rejected rather
/// than guessed at. Row numbers in errors are 1-based file lines, the header
/// being line 1. If any date fails to parse as `YYYY-MM-DD`, or the dates are
/// not strictly increasing, the index is dropped with a warning.
pub fn ingest_csv(path: &Path, date_col: Option<&str>, value_col: &str) -> Result<TimeSeries> {
    if !path.exists() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    let file = std::fs::File::open(path)?;
    ingest_reader(file, date_col, value_col)
}

pub fn ingest_reader<R: std::io::Read>(
    reader: R,
    date_col: Option<&str>,
    value_col: &str,
) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse {
            row: 1,
            message: e.to_string(),
        })?
        .clone();
    let find = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
            row: 1,
            message: format!(
                "column {name:?} not found; available columns: {}",
                headers.iter().collect::<Vec<_>>().join(", ")
            ),
        })
    };
    let value_idx = find(value_col)?;
    let date_idx = date_col.filter(|c| !c.is_empty()).map(find).transpose()?;

    let mut values = Vec::new();
    let mut dates = Vec::new();
    let mut dates_ok = date_idx.is_some();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| Error::Parse {
            row: e.position().map_or(row, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let cell = record.get(value_idx).unwrap_or("");
        if cell.is_empty() {
            return Err(Error::Parse {
                row,
                message: format!("empty value in column {value_col:?}"),
            });
        }
        let value: f64 = cell.parse().map_err(|_| Error::NonNumericValue {
            row,
            value: cell.to_string(),
        })?;
        if !value.is_finite() {
            return Err(Error::NonNumericValue {
                row,
                value: cell.to_string(),
            });
        }
        values.push(value);
        if let (Some(di), true) = (date_idx, dates_ok) {
            match NaiveDate::parse_from_str(record.get(di).unwrap_or(""), "%Y-%m-%d") {
                Ok(d) => dates.push(d),
                Err(_) => {
                    log::warn!("row {row}: date does not parse as YYYY-MM-DD; dropping the date index");
                    dates_ok = false;
                }
            }
        }
    }
    if values.is_empty() {
        return Err(Error::Parse {
            row: 2,
            message: "no data rows".into(),
        });
    }
    if dates_ok {
        match TimeSeries::with_index(values.clone(), dates) {
            Ok(s) => return Ok(s),
            Err(e) => log::warn!("{e}; dropping the date index"),
        }
    }
    TimeSeries::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str) -> Result<TimeSeries> {
        ingest_reader(text.as_bytes(), Some("date"), "cases")
    }

    #[test]
    fn reads_values_and_dates() {
        let s = read("date,cases\n2020-03-02,2\n2020-03-03,0\n").unwrap();
        assert_eq!(s.values(), &[2.0, 0.0]);
        let idx = s.index().unwrap();
        assert_eq!(idx[0], NaiveDate::from_ymd_opt(2020, 3, 2).unwrap());
    }

    #[test]
    fn missing_column_names_alternatives() {
        let err = ingest_reader("date,count\n2020-03-02,2\n".as_bytes(), Some("date"), "cases")
            .unwrap_err();
        match err {
            Error::Parse { row, message } => {
                assert_eq!(row, 1);
                assert!(message.contains("date, count"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_locale_numbers() {
        let err = read("date,cases\n2020-03-02,\"3,622\"\n").unwrap_err();
        assert!(matches!(err, Error::NonNumericValue { row: 2, ref value } if value == "3,622"));
    }

    #[test]
    fn rejects_empty_cells() {
        let err = read("date,cases\n2020-03-02,1\n2020-03-03,\n").unwrap_err();
        assert!(matches!(err, Error::Parse { row: 3, .. }));
    }

    #[test]
    fn unparseable_dates_drop_index() {
        let s = read("date,cases\nmonday,1\ntuesday,2\n").unwrap();
        assert!(s.index().is_none());
        assert_eq!(s.values(), &[1.0, 2.0]);
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            ingest_csv(Path::new("/nonexistent/cases.csv"), None, "cases"),
            Err(Error::FileNotFound(_))
        ));
    }
}
