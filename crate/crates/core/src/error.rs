use core::fmt;

/// Failure modes of the geometric pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Too few distinct points, all points collinear, or an otherwise unusable shape.
    DegenerateInput(&'static str),
    /// A coordinate was NaN or infinite.
    NonFinite,
    /// Pipeline parameters violate their invariants.
    InvalidParams(&'static str),
    /// The convex hull of a district does not meet its state at all.
    EmptyIntersection,
    /// The hull axis has zero length, so the medial-hull ratio is undefined.
    ZeroHullAxis,
    /// A ratio that is negative, NaN or infinite.
    InvalidRatio,
    /// An aggregate was requested over no reports.
    EmptyInput,
    /// The Handley seed is not strictly inside the district.
    SeedOutsideDistrict,
    /// None of the sampled seeds is strictly inside the district.
    NoValidSeeds,
    /// The ray step must divide 360 degrees and produce at least three rays.
    InvalidStep,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateInput(why) => write!(f, "degenerate input: {why}"),
            Error::NonFinite => f.write_str("non-finite coordinate"),
            Error::InvalidParams(why) => write!(f, "invalid parameters: {why}"),
            Error::EmptyIntersection => f.write_str("convex hull does not intersect the state"),
            Error::ZeroHullAxis => f.write_str("hull axis has zero length"),
            Error::InvalidRatio => f.write_str("ratio must be finite and non-negative"),
            Error::EmptyInput => f.write_str("no reports to aggregate"),
            Error::SeedOutsideDistrict => f.write_str("seed is not strictly inside the district"),
            Error::NoValidSeeds => f.write_str("no seed lies strictly inside the district"),
            Error::InvalidStep => {
                f.write_str("step must divide 360 degrees and give at least 3 rays")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
