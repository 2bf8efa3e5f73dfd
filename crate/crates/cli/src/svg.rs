//! Static SVG 1.1 figures of point sets.

use std::fmt::Write;

use horton_islands::{convex_hull, Point, PointSet};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub const SIZE: f64 = 800.0;
pub const MARGIN: f64 = 40.0;

/// Maps one axis onto `[MARGIN, SIZE - MARGIN]`. Each axis is scaled on its
/// own since Horton sets are much taller than wide.
struct Axis {
    min: BigInt,
    span: f64,
}

impl Axis {
    fn new<'a>(values: impl Iterator<Item = &'a BigInt> + Clone) -> Axis {
        let min = values.clone().min().cloned().unwrap_or_default();
        let max = values.max().cloned().unwrap_or_default();
        let span = (&max - &min).to_f64().unwrap_or(f64::MAX);
        Axis { min, span }
    }

    fn map(&self, v: &BigInt) -> f64 {
        let inner = SIZE - 2.0 * MARGIN;
        if self.span == 0.0 {
            return SIZE / 2.0;
        }
        let off = (v - &self.min).to_f64().unwrap_or(f64::MAX);
        MARGIN + inner * (off / self.span)
    }
}

fn coord(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Renders `set` with the points of `highlight` drawn larger and their hull
/// outlined. `highlight` must hold valid indices.
pub fn render(set: &PointSet, highlight: &[usize]) -> String {
    let ax = Axis::new(set.iter().map(|p| &p.x));
    let ay = Axis::new(set.iter().map(|p| &p.y));
    let project = |p: &Point| (coord(ax.map(&p.x)), coord(SIZE - ay.map(&p.y)));

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{s}" height="{s}" fill="white"/>"#,
        s = SIZE
    );

    let mut hl: Vec<usize> = highlight.to_vec();
    hl.sort_unstable();
    hl.dedup();
    if !hl.is_empty() {
        let hull = convex_hull(&set.select(&hl));
        let pts: Vec<String> = hull
            .vertices
            .iter()
            .map(|p| {
                let (x, y) = project(p);
                format!("{x},{y}")
            })
            .collect();
        match pts.len() {
            0 | 1 => {}
            2 => {
                let _ = writeln!(
                    out,
                    r#"<polyline class="hull" points="{}" fill="none" stroke="crimson" stroke-width="2"/>"#,
                    pts.join(" ")
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    r#"<polygon class="hull" points="{}" fill="crimson" fill-opacity="0.1" stroke="crimson" stroke-width="2"/>"#,
                    pts.join(" ")
                );
            }
        }
    }

    for (i, p) in set.iter().enumerate() {
        let (x, y) = project(p);
        if hl.binary_search(&i).is_ok() {
            let _ = writeln!(
                out,
                r#"<circle class="highlight" data-index="{i}" cx="{x}" cy="{y}" r="6" fill="crimson"/>"#
            );
        } else {
            let _ = writeln!(
                out,
                r#"<circle class="point" data-index="{i}" cx="{x}" cy="{y}" r="4" fill="black"/>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_centred() {
        let set = PointSet::new(vec![Point::new(5, 5)]).unwrap();
        let svg = render(&set, &[]);
        assert!(svg.contains(r#"cx="400.000" cy="400.000""#));
        assert!(!svg.contains("hull"));
    }

    #[test]
    fn y_axis_is_flipped() {
        let set = PointSet::new(vec![Point::new(0, 0), Point::new(1, 1)]).unwrap();
        let svg = render(&set, &[]);
        assert!(svg.contains(r#"data-index="0" cx="40.000" cy="760.000""#));
        assert!(svg.contains(r#"data-index="1" cx="760.000" cy="40.000""#));
    }
}
