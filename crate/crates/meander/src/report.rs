//! CSV reports: per-district ratios and Handley measures.

use std::io::{Read, Write};

use meander_core::metrics::RatioReport;

use crate::error::IoError;

pub const RATIO_HEADER: [&str; 6] = ["STATEFP", "CD115FP", "Medial", "Hull", "Ratio", "Category"];
pub const MEANDER_HEADER: [&str; 4] = ["STATEFP", "CD115FP", "Mu", "SeedCount"];

/// One row of the Handley report.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanderRow {
    pub state_fips: String,
    pub district_id: String,
    pub mu: f64,
    pub seed_count: usize,
}

fn by_key<T>(rows: &[T], key: impl Fn(&T) -> (&str, &str)) -> Vec<&T> {
    let mut sorted: Vec<&T> = rows.iter().collect();
    sorted.sort_by(|a, b| key(a).cmp(&key(b)));
    sorted
}

/// Writes reports sorted by (STATEFP, CD115FP). Lengths and ratio carry two
/// decimals; the category comes from the unrounded ratio.
pub fn write_report_csv<W: Write>(reports: &[RatioReport], out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RATIO_HEADER)?;
    for r in by_key(reports, |r| (&r.state_fips, &r.district_id)) {
        w.write_record([
            r.state_fips.clone(),
            r.district_id.clone(),
            format!("{:.2}", r.medial_length),
            format!("{:.2}", r.hull_length),
            format!("{:.2}", r.ratio),
            r.category.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_report_csv<R: Read>(input: R) -> Result<Vec<RatioReport>, IoError> {
    let mut rd = csv::Reader::from_reader(input);
    check_header(rd.headers()?, &RATIO_HEADER)?;
    let mut reports = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let num = |k: usize| -> Result<f64, IoError> {
            rec[k]
                .parse()
                .map_err(|_| IoError::Malformed(format!("row {}: bad {}", i + 1, RATIO_HEADER[k])))
        };
        reports.push(RatioReport {
            state_fips: rec[0].to_string(),
            district_id: rec[1].to_string(),
            medial_length: num(2)?,
            hull_length: num(3)?,
            ratio: num(4)?,
            category: rec[5]
                .parse()
                .map_err(|_| IoError::Malformed(format!("row {}: bad Category", i + 1)))?,
        });
    }
    Ok(reports)
}

fn check_header(found: &csv::StringRecord, expected: &[&str]) -> Result<(), IoError> {
    if found.iter().ne(expected.iter().copied()) {
        return Err(IoError::Malformed(format!(
            "unexpected header {:?}",
            found.iter().collect::<Vec<_>>()
        )));
    }
    Ok(())
}

/// Writes Handley rows sorted by (STATEFP, CD115FP) with Mu to four decimals.
pub fn write_meander_csv<W: Write>(rows: &[MeanderRow], out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(MEANDER_HEADER)?;
    for r in by_key(rows, |r| (&r.state_fips, &r.district_id)) {
        w.write_record([
            r.state_fips.clone(),
            r.district_id.clone(),
            format!("{:.4}", r.mu),
            r.seed_count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_meander_csv<R: Read>(input: R) -> Result<Vec<MeanderRow>, IoError> {
    let mut rd = csv::Reader::from_reader(input);
    check_header(rd.headers()?, &MEANDER_HEADER)?;
    let mut rows = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let bad = |what: &str| IoError::Malformed(format!("row {}: bad {what}", i + 1));
        rows.push(MeanderRow {
            state_fips: rec[0].to_string(),
            district_id: rec[1].to_string(),
            mu: rec[2].parse().map_err(|_| bad("Mu"))?,
            seed_count: rec[3].parse().map_err(|_| bad("SeedCount"))?,
        });
    }
    Ok(rows)
}
