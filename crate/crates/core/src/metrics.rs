//! The medial-hull ratio, its categories and statewide averages.

use alloc::string::String;
use alloc::vec::Vec;

use crate::geometry::PlanarMultiPolygon;
use crate::medial::{
    approximate_medial_axis, axis_length, hull_axis, HullAxis, PipelineParams, SegmentSet,
};
use crate::{Error, Result};

/// Category lower bounds: a ratio at or above `CATEGORY_BOUNDS[i]` is at
/// least category `i + 2`.
pub const CATEGORY_BOUNDS: [f64; 3] = [2.00, 2.40, 2.80];

/// Per-district result of the medial-hull ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioReport {
    pub state_fips: String,
    pub district_id: String,
    pub medial_length: f64,
    pub hull_length: f64,
    pub ratio: f64,
    pub category: u8,
}

impl RatioReport {
    /// Builds a report from the two axis lengths.
    pub fn from_lengths(medial_length: f64, hull_length: f64) -> Result<RatioReport> {
        if hull_length.is_nan() || hull_length <= 0.0 {
            return Err(Error::ZeroHullAxis);
        }
        let ratio = medial_length / hull_length;
        Ok(RatioReport {
            state_fips: String::new(),
            district_id: String::new(),
            medial_length,
            hull_length,
            ratio,
            category: categorize(ratio)?,
        })
    }

    pub fn labeled(
        mut self,
        state_fips: impl Into<String>,
        district_id: impl Into<String>,
    ) -> RatioReport {
        self.state_fips = state_fips.into();
        self.district_id = district_id.into();
        self
    }
}

/// Grades a ratio: 1 below 2.00, 2 below 2.40, 3 below 2.80, otherwise 4.
pub fn categorize(ratio: f64) -> Result<u8> {
    if !ratio.is_finite() || ratio < 0.0 {
        return Err(Error::InvalidRatio);
    }
    Ok(1 + CATEGORY_BOUNDS.iter().filter(|&&b| ratio >= b).count() as u8)
}

/// Everything computed for one district.
#[derive(Clone, Debug, PartialEq)]
pub struct DistrictAnalysis {
    pub report: RatioReport,
    pub medial_axis: SegmentSet,
    pub hull: HullAxis,
}

/// Runs both pipelines on a district and returns the axes along with the report.
pub fn analyze_district(
    district: &PlanarMultiPolygon,
    state: &PlanarMultiPolygon,
    params: &PipelineParams,
) -> Result<DistrictAnalysis> {
    let medial_axis = approximate_medial_axis(district, params)?;
    let hull = hull_axis(district, state, params)?;
    let report = RatioReport::from_lengths(axis_length(&medial_axis), axis_length(&hull.axis))?;
    Ok(DistrictAnalysis {
        report,
        medial_axis,
        hull,
    })
}

/// Medial axis length of the district over that of its state-clipped hull.
pub fn medial_hull_ratio(
    district: &PlanarMultiPolygon,
    state: &PlanarMultiPolygon,
    params: &PipelineParams,
) -> Result<RatioReport> {
    analyze_district(district, state, params).map(|a| a.report)
}

/// Unweighted mean ratio over a state's districts and the category of the mean.
///
/// Ratios are summed in district-id order so the result does not depend on
/// the order reports arrive in.
pub fn statewide_average(reports: &[RatioReport]) -> Result<(f64, u8)> {
    if reports.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut order: Vec<&RatioReport> = reports.iter().collect();
    order.sort_by(|a, b| {
        (a.state_fips.as_str(), a.district_id.as_str())
            .cmp(&(b.state_fips.as_str(), b.district_id.as_str()))
    });
    let mean = order.iter().map(|r| r.ratio).sum::<f64>() / reports.len() as f64;
    Ok((mean, categorize(mean)?))
}

/// Number of reports in each category, indexed by category - 1.
pub fn category_counts(reports: &[RatioReport]) -> [usize; 4] {
    let mut counts = [0; 4];
    for r in reports {
        if (1..=4).contains(&r.category) {
            counts[r.category as usize - 1] += 1;
        }
    }
    counts
}
