use alloc::vec::Vec;

use super::{Point2D, Segment};

/// A bag of line segments with an optional generating-site pair per segment.
///
/// Zero-length segments are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SegmentSet {
    segments: Vec<Segment>,
    provenance: Vec<Option<(usize, usize)>>,
}

impl SegmentSet {
    pub fn new() -> SegmentSet {
        SegmentSet::default()
    }

    /// Adds a segment; returns false (and stores nothing) when it has zero
    /// length or a non-finite endpoint.
    pub fn push(&mut self, seg: Segment, sites: Option<(usize, usize)>) -> bool {
        if seg.a == seg.b || !seg.a.is_finite() || !seg.b.is_finite() {
            return false;
        }
        self.segments.push(seg);
        self.provenance.push(sites);
        true
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn provenance(&self) -> &[Option<(usize, usize)>] {
        &self.provenance
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Segment, Option<(usize, usize)>)> {
        self.segments.iter().zip(self.provenance.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Sum of segment lengths.
    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length()).sum()
    }

    pub fn extend(&mut self, other: SegmentSet) {
        self.segments.extend(other.segments);
        self.provenance.extend(other.provenance);
    }

    pub fn map(&self, f: impl Fn(Point2D) -> Point2D) -> SegmentSet {
        let mut out = SegmentSet::new();
        for (s, prov) in self.iter() {
            out.push(Segment::new(f(s.a), f(s.b)), prov);
        }
        out
    }
}

impl FromIterator<Segment> for SegmentSet {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        let mut set = SegmentSet::new();
        for s in iter {
            set.push(s, None);
        }
        set
    }
}
