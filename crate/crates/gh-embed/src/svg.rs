//! Deterministic SVG rendering of a scaffold: one shape per block, one dot
//! per marker, abscissa annotations. World coordinates are carried along as
//! `data-*` attributes so renders can be checked without parsing geometry
//! back out of pixel values.

use std::fmt::Write;

use crate::scaffold::{BlockVariant, Scaffold, Sign};

/// Pixels per world unit.
const SCALE: f64 = 4.0;
/// Margin around the drawing, in pixels.
const MARGIN: f64 = 20.0;
/// Extra room below the axis for text labels.
const LABEL_BAND: f64 = 16.0;

/// Renders a scaffold as an SVG 1.1 document. Equal scaffolds produce
/// byte-identical output.
pub fn render_svg(k: &Scaffold) -> String {
    let m = k.bound();
    let n = k.dim();
    let world_width = k.params().c + k.params().d * (n - 1) as f64 + 2.0 * m;
    let width = 2.0 * MARGIN + SCALE * world_width;
    let height = 2.0 * MARGIN + SCALE * 2.0 * m + LABEL_BAND;
    let sx = |wx: f64| MARGIN + SCALE * wx;
    let sy = |wy: f64| MARGIN + SCALE * (m - wy);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#ccc" stroke-width="1"/>"##,
        sx(0.0),
        sy(0.0),
        sx(world_width),
        sy(0.0)
    );

    for block in k.blocks() {
        let (x0, x1) = k.block_interval(block.index).unwrap();
        match k.variant() {
            BlockVariant::FullSquare => {
                let _ = writeln!(
                    out,
                    r##"  <rect x="{}" y="{}" width="{}" height="{}" fill="#7a7a7a" data-x0="{x0}" data-x1="{x1}"/>"##,
                    sx(x0),
                    sy(m),
                    SCALE * (x1 - x0),
                    SCALE * 2.0 * m
                );
            }
            BlockVariant::Frame => {
                let _ = writeln!(
                    out,
                    r##"  <rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#7a7a7a" stroke-width="2" data-x0="{x0}" data-x1="{x1}"/>"##,
                    sx(x0),
                    sy(m),
                    SCALE * (x1 - x0),
                    SCALE * 2.0 * m
                );
            }
            BlockVariant::FourCorners | BlockVariant::ThreePoints => {
                for g in k.block_generators(block.index).unwrap() {
                    let _ = writeln!(
                        out,
                        r##"  <circle cx="{}" cy="{}" r="3" fill="#7a7a7a" data-x="{}" data-y="{}" data-x0="{x0}" data-x1="{x1}"/>"##,
                        sx(g.x),
                        sy(g.y),
                        g.x,
                        g.y
                    );
                }
            }
        }
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="10" text-anchor="middle">{x0}</text>"#,
            sx((x0 + x1) / 2.0),
            height - 6.0
        );
    }

    for (index, pair) in k.markers().iter().enumerate() {
        let mut drawn = Vec::new();
        for sign in Sign::BOTH {
            let p = match sign {
                Sign::Plus => pair.plus,
                Sign::Minus => pair.minus,
            };
            if drawn.contains(&p) {
                continue;
            }
            drawn.push(p);
            let _ = writeln!(
                out,
                r##"  <circle cx="{}" cy="{}" r="2" fill="#000" data-marker="{index}" data-x="{}" data-y="{}"/>"##,
                sx(p.x),
                sy(p.y),
                p.x,
                p.y
            );
        }
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
            sx(pair.plus.x),
            height - 6.0,
            pair.plus.x
        );
    }

    out.push_str("</svg>\n");
    out
}
