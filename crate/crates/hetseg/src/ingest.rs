//! File ingestion and plot-ready output tables.
//!
//! Input is delimiter-separated text with a header row, dates in ISO-8601
//! day form. The delimiter is sniffed from the header line (tab wins over
//! comma over semicolon). Rows are sorted by date; duplicate dates are an
//! error, unparseable rows follow the configured missing policy.
//!
//! Variance intervals come from one of two schemes: `CalendarMonth` pools
//! observations by month-of-year across years (Januaries of all years share
//! one scale), labeling densely in calendar order when some months are
//! absent; `ExplicitLabels` reads positive integers from a named column and
//! also relabels densely, remembering the original values as names.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::{Datelike, NaiveDate};

use crate::domain::{ScaleEstimates, Segmentation, TimeSeries, VarianceIntervalMap};
use crate::error::{Error, Result};

pub const MONTH_NAMES: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

/// What to do with rows whose value (or date, or label) fails to parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Skip the row and count it.
    #[default]
    Drop,
    /// Fail with the offending line number.
    Error,
}

impl MissingPolicy {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "drop" => Ok(MissingPolicy::Drop),
            "error" => Ok(MissingPolicy::Error),
            other => Err(Error::InvalidArgument(format!(
                "unknown missing policy {other:?}; expected drop or error"
            ))),
        }
    }
}

/// How observation indices map to variance intervals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum IntervalScheme {
    /// Month-of-year of each date, pooled across years.
    #[default]
    CalendarMonth,
    /// Positive integers from this column.
    ExplicitLabels { column: String },
}

/// Column names and policies for [`parse_series`].
#[derive(Debug, Clone)]
pub struct IngestConfig {
    pub date_column: String,
    pub value_column: String,
    pub missing_policy: MissingPolicy,
    pub scheme: IntervalScheme,
}

impl Default for IngestConfig {
    fn default() -> Self {
        Self {
            date_column: "date".into(),
            value_column: "value".into(),
            missing_policy: MissingPolicy::Drop,
            scheme: IntervalScheme::CalendarMonth,
        }
    }
}

/// A parsed input file: the dated series, its interval map, human names for
/// the intervals (month names, or the original label values), and how many
/// rows the missing policy dropped.
#[derive(Debug, Clone)]
pub struct ParsedSeries {
    pub series: TimeSeries,
    pub map: VarianceIntervalMap,
    pub interval_names: Vec<String>,
    pub dropped_rows: usize,
}

fn sniff_delimiter(header: &str) -> u8 {
    if header.contains('\t') {
        b'\t'
    } else if header.contains(',') {
        b','
    } else {
        b';'
    }
}

fn find_column(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| Error::UnknownColumn { name: name.into() })
}

struct RawRow {
    date: NaiveDate,
    value: f64,
    label: Option<usize>,
}

/// Parses a delimiter-separated reader per the config. See the module docs
/// for the format and relabeling contracts.
pub fn parse_series<R: Read>(mut input: R, cfg: &IngestConfig) -> Result<ParsedSeries> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let header_line = text.lines().next().unwrap_or("");
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(sniff_delimiter(header_line))
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let date_idx = find_column(&headers, &cfg.date_column)?;
    let value_idx = find_column(&headers, &cfg.value_column)?;
    let label_idx = match &cfg.scheme {
        IntervalScheme::ExplicitLabels { column } => Some(find_column(&headers, column)?),
        IntervalScheme::CalendarMonth => None,
    };

    let mut rows: Vec<RawRow> = Vec::new();
    let mut dropped = 0usize;
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        let field = |idx: usize| record.get(idx).unwrap_or("").trim();

        let parsed: std::result::Result<RawRow, String> = (|| {
            let date: NaiveDate = field(date_idx)
                .parse()
                .map_err(|_| format!("bad date {:?}", field(date_idx)))?;
            let value: f64 = field(value_idx)
                .parse()
                .map_err(|_| format!("bad value {:?}", field(value_idx)))?;
            if !value.is_finite() {
                return Err(format!("non-finite value {:?}", field(value_idx)));
            }
            let label = match label_idx {
                Some(idx) => {
                    let l: usize = field(idx)
                        .parse()
                        .map_err(|_| format!("bad label {:?}", field(idx)))?;
                    if l == 0 {
                        return Err("labels start at 1".into());
                    }
                    Some(l)
                }
                None => None,
            };
            Ok(RawRow { date, value, label })
        })();
        match parsed {
            Ok(row) => rows.push(row),
            Err(msg) => match cfg.missing_policy {
                MissingPolicy::Drop => dropped += 1,
                MissingPolicy::Error => return Err(Error::Parse { line, msg }),
            },
        }
    }

    rows.sort_by_key(|r| r.date);
    for pair in rows.windows(2) {
        if pair[0].date == pair[1].date {
            return Err(Error::DuplicateDate {
                date: pair[0].date.to_string(),
            });
        }
    }
    if rows.len() < 2 {
        return Err(Error::TooShort {
            len: rows.len(),
            min: 2,
        });
    }

    let (labels, interval_names) = match &cfg.scheme {
        IntervalScheme::CalendarMonth => {
            let present: BTreeSet<u32> = rows.iter().map(|r| r.date.month()).collect();
            let order: Vec<u32> = present.into_iter().collect();
            let names: Vec<String> = order
                .iter()
                .map(|&m| MONTH_NAMES[m as usize - 1].to_string())
                .collect();
            let labels = rows
                .iter()
                .map(|r| order.binary_search(&r.date.month()).unwrap() + 1)
                .collect();
            (labels, names)
        }
        IntervalScheme::ExplicitLabels { .. } => {
            let present: BTreeSet<usize> = rows.iter().map(|r| r.label.unwrap()).collect();
            let order: Vec<usize> = present.into_iter().collect();
            let names: Vec<String> = order.iter().map(|&l| format!("label {l}")).collect();
            let labels = rows
                .iter()
                .map(|r| order.binary_search(&r.label.unwrap()).unwrap() + 1)
                .collect();
            (labels, names)
        }
    };

    let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
    let dates: Vec<NaiveDate> = rows.iter().map(|r| r.date).collect();
    let series = TimeSeries::with_dates(values, dates)?;
    let map = VarianceIntervalMap::new(labels, interval_names.len())?;
    Ok(ParsedSeries {
        series,
        map,
        interval_names,
        dropped_rows: dropped,
    })
}

/// [`parse_series`] on a file path.
pub fn parse_series_path(path: &Path, cfg: &IngestConfig) -> Result<ParsedSeries> {
    let file =
        File::open(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    parse_series(file, cfg)
}

/// One row per variance interval: name, dense label, estimated scale.
pub fn write_scales_tsv<W: Write>(
    mut out: W,
    names: &[String],
    scales: &ScaleEstimates,
) -> Result<()> {
    writeln!(out, "month\tlabel\tsigma")?;
    for (i, name) in names.iter().enumerate() {
        writeln!(out, "{name}\t{}\t{}", i + 1, scales.sigma(i + 1))?;
    }
    Ok(())
}

/// One row per segment: index, last date (empty when the series is
/// undated), last observation index, fitted mean.
pub fn write_breaks_tsv<W: Write>(
    mut out: W,
    series: &TimeSeries,
    seg: &Segmentation,
) -> Result<()> {
    writeln!(out, "k\tlastDate\tlastIndex\tmean")?;
    for (k, (_, end)) in seg.segments().into_iter().enumerate() {
        let date = series
            .dates()
            .map(|d| d[end - 1].to_string())
            .unwrap_or_default();
        writeln!(out, "{}\t{date}\t{end}\t{}", k + 1, seg.means()[k])?;
    }
    Ok(())
}

/// The optimal cost curve, one row per candidate segment count.
pub fn write_contrast_tsv<W: Write>(mut out: W, contrast: &[f64]) -> Result<()> {
    writeln!(out, "K\tsswg")?;
    for (i, c) in contrast.iter().enumerate() {
        writeln!(out, "{}\t{c}", i + 1)?;
    }
    Ok(())
}

/// The series itself, parseable back by [`parse_series`]. Floats render in
/// shortest round-trip form, so parse, write, parse is the identity.
pub fn write_series_tsv<W: Write>(mut out: W, series: &TimeSeries) -> Result<()> {
    let dates = series.dates().ok_or_else(|| {
        Error::InvalidArgument("cannot serialize an undated series with dates".into())
    })?;
    writeln!(out, "date\tvalue")?;
    for (d, v) in dates.iter().zip(series.values()) {
        writeln!(out, "{d}\t{v}")?;
    }
    Ok(())
}
