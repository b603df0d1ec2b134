//! SVG overlays of a district, its approximate medial axis and hull.

use std::fmt::Write as _;
use std::io::Write;

use meander_core::geometry::{BBox, PlanarMultiPolygon, Point2D, Ring, SegmentSet};

use crate::error::IoError;

/// Longer side of the rendered image, pixels.
const IMAGE_SIZE: f64 = 800.0;
const MARGIN: f64 = 0.02;

struct Frame {
    min_x: f64,
    max_y: f64,
    pad: f64,
}

impl Frame {
    fn x(&self, p: Point2D) -> f64 {
        p.x - self.min_x + self.pad
    }

    /// SVG's y axis points down.
    fn y(&self, p: Point2D) -> f64 {
        self.max_y - p.y + self.pad
    }
}

fn ring_path(d: &mut String, ring: &Ring, frame: &Frame) {
    for (i, &p) in ring.vertices().iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{:.3},{:.3} ", frame.x(p), frame.y(p));
    }
    d.push('Z');
}

fn multipolygon_path(mp: &PlanarMultiPolygon, frame: &Frame) -> String {
    let mut d = String::new();
    for ring in mp.parts().iter().flat_map(|p| p.rings()) {
        if !d.is_empty() {
            d.push(' ');
        }
        ring_path(&mut d, ring, frame);
    }
    d
}

/// Draws the district as one filled even-odd path, the hull as an unfilled
/// outline and each axis segment as a `<line>`.
pub fn render_svg<W: Write>(
    district: &PlanarMultiPolygon,
    medial: &SegmentSet,
    hull: Option<&PlanarMultiPolygon>,
    mut out: W,
) -> Result<(), IoError> {
    let extent = [Some(district), hull]
        .into_iter()
        .flatten()
        .filter_map(PlanarMultiPolygon::bbox)
        .reduce(|a, b| a.union(&b))
        .unwrap_or(BBox {
            min: Point2D::new(0.0, 0.0),
            max: Point2D::new(1.0, 1.0),
        });
    let w = extent.width();
    let h = extent.height();
    let pad = MARGIN * w.max(h).max(f64::MIN_POSITIVE);
    let frame = Frame {
        min_x: extent.min.x,
        max_y: extent.max.y,
        pad,
    };
    let (vw, vh) = (w + 2.0 * pad, h + 2.0 * pad);
    let scale = IMAGE_SIZE / vw.max(vh);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {vw:.3} {vh:.3}">"#,
        vw * scale,
        vh * scale
    );
    let _ = writeln!(
        s,
        r##"<path class="district" fill="#f3e9d2" fill-rule="evenodd" stroke="#4a4a4a" stroke-width="1" vector-effect="non-scaling-stroke" d="{}"/>"##,
        multipolygon_path(district, &frame)
    );
    if let Some(hull) = hull {
        let _ = writeln!(
            s,
            r##"<path class="hull" fill="none" stroke="#3366cc" stroke-width="1" stroke-dasharray="6 4" vector-effect="non-scaling-stroke" d="{}"/>"##,
            multipolygon_path(hull, &frame)
        );
    }
    if !medial.is_empty() {
        s.push_str("<g class=\"medial-axis\" stroke=\"#e07000\" stroke-width=\"1.5\" stroke-linecap=\"round\">\n");
        for seg in medial.segments() {
            let _ = writeln!(
                s,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" vector-effect="non-scaling-stroke"/>"#,
                frame.x(seg.a),
                frame.y(seg.a),
                frame.x(seg.b),
                frame.y(seg.b)
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(())
}
