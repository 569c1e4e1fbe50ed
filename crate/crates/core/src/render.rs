//! SVG rendering of 2-dimensional configurations: orange labeled cubes,
//! with optional strip-grouping overlays (block-1 hulls as vertical
//! light-blue strips, block-2 hulls as horizontal red strips).

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::factorization::StripGrouping;
use crate::geometry::Configuration;
use crate::rational::Rational;

const SIZE: f64 = 512.0;

fn fmt_coord(v: f64) -> String {
    format!("{:.3}", v)
}

fn x_of(r: &Rational) -> String {
    fmt_coord(r.to_f64() * SIZE)
}

/// SVG y grows downward; flip so the configuration reads like the plane.
fn y_of(r: &Rational) -> String {
    fmt_coord((1.0 - r.to_f64()) * SIZE)
}

fn len_of(r: &Rational) -> String {
    fmt_coord(r.to_f64() * SIZE)
}

/// Deterministic SVG 1.1 document for a dim-2 configuration. Strip
/// overlays must come from 1-dimensional blocks of a (1,1) partition.
pub fn render_svg(config: &Configuration, strips: &[StripGrouping]) -> Result<String> {
    if config.dim() != 2 {
        return Err(Error::RenderDimension(config.dim()));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE as u64
    );
    let _ = writeln!(
        out,
        r#"  <rect x="0" y="0" width="{s}" height="{s}" fill="white" stroke="black" stroke-width="1"/>"#,
        s = SIZE as u64
    );

    // strip hulls first so the cubes draw on top
    for grouping in strips {
        for hull in &grouping.hulls {
            if hull.dim() != 1 {
                return Err(Error::RenderDimension(hull.dim()));
            }
            let iv = hull.interval(0);
            let (color, rect) = match grouping.block {
                1 => (
                    "#9ed2e6",
                    format!(
                        r#"x="{}" y="0" width="{}" height="{}""#,
                        x_of(iv.lo()),
                        len_of(&iv.length()),
                        SIZE as u64
                    ),
                ),
                _ => (
                    "#e05252",
                    format!(
                        r#"x="0" y="{}" width="{}" height="{}""#,
                        y_of(iv.hi()),
                        SIZE as u64,
                        len_of(&iv.length())
                    ),
                ),
            };
            let _ = writeln!(
                out,
                r#"  <rect {rect} fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="2"/>"#
            );
        }
    }

    for (i, cube) in config.cubes().iter().enumerate() {
        let x = cube.interval(0);
        let y = cube.interval(1);
        let _ = writeln!(
            out,
            r##"  <rect x="{}" y="{}" width="{}" height="{}" fill="#f59e42" stroke="#9a5b1c" stroke-width="1.5"/>"##,
            x_of(x.lo()),
            y_of(y.hi()),
            len_of(&x.length()),
            len_of(&y.length())
        );
        let half = Rational::new(1, 2);
        let cx = &(x.lo() + x.hi()) * &half;
        let cy = &(y.lo() + y.hi()) * &half;
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="20" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            x_of(&cx),
            y_of(&cy),
            i + 1
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{pinwheel, strip_grouping};
    use crate::words::AxisBlocks;

    #[test]
    fn identity_is_one_full_rect() {
        let svg = render_svg(&Configuration::identity(2), &[]).unwrap();
        assert!(svg.contains("<svg"));
        // background plus one cube
        assert_eq!(svg.matches("<rect").count(), 2);
        assert!(svg.contains("#f59e42"));
    }

    #[test]
    fn pinwheel_with_groupings() {
        let blocks = AxisBlocks::new(vec![1, 1]).unwrap();
        let g1 = strip_grouping(&pinwheel(), &blocks, 1).unwrap();
        let g2 = strip_grouping(&pinwheel(), &blocks, 2).unwrap();
        let svg = render_svg(&pinwheel(), &[g1, g2]).unwrap();
        // 1 background + 2 single-group hulls + 4 cubes
        assert_eq!(svg.matches("<rect").count(), 7);
        assert!(svg.contains("#9ed2e6"));
        assert!(svg.contains("#e05252"));
        // identical input gives identical bytes
        let g1 = strip_grouping(&pinwheel(), &blocks, 1).unwrap();
        let g2 = strip_grouping(&pinwheel(), &blocks, 2).unwrap();
        assert_eq!(render_svg(&pinwheel(), &[g1, g2]).unwrap(), svg);
    }

    #[test]
    fn wrong_dimension_rejected() {
        assert!(render_svg(&Configuration::identity(3), &[]).is_err());
    }
}
