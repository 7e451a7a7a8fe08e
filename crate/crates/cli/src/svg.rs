//! SVG 1.1 rendering of a hull raster.

use std::fmt::Write as _;

use maxmin::{Matrix, Raster, Scalar};
use num_traits::ToPrimitive;

const PLOT: f64 = 480.0;
const MARGIN: f64 = 40.0;

fn to_f64(s: &Scalar) -> f64 {
    s.as_ratio().to_f64().unwrap_or(0.0)
}

/// Member lattice points become square cells centered on the point, merged
/// into horizontal runs; generators are drawn as circles on top.
pub fn render(a: &Matrix, raster: &Raster) -> String {
    let side = raster.resolution + 1;
    let cell = PLOT / side as f64;
    let size = PLOT + 2.0 * MARGIN;
    // Lattice index to the left or top edge of its cell; y grows upward.
    let x_edge = |i: usize| MARGIN + i as f64 * cell;
    let y_edge = |j: usize| MARGIN + (side - 1 - j) as f64 * cell;
    let x_at = |v: f64| MARGIN + cell / 2.0 + v * (PLOT - cell);
    let y_at = |v: f64| MARGIN + cell / 2.0 + (1.0 - v) * (PLOT - cell);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        out,
        "<title>max-min hull of {} generators, resolution {}</title>",
        a.ncols(),
        raster.resolution
    );
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{PLOT}" height="{PLOT}" fill="#ffffff" stroke="#000000" stroke-width="1"/>"##
    );
    let _ = writeln!(out, r##"<g id="hull" fill="#4a7ab5" stroke="none">"##);
    for j in 0..side {
        let mut i = 0;
        while i < side {
            if !raster.get(i, j) {
                i += 1;
                continue;
            }
            let start = i;
            while i < side && raster.get(i, j) {
                i += 1;
            }
            let _ = writeln!(
                out,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
                x_edge(start),
                y_edge(j),
                (i - start) as f64 * cell,
                cell
            );
        }
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r##"<g id="generators" fill="#d1495b" stroke="#000000" stroke-width="1">"##
    );
    for (k, col) in a.columns().iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="5"><title>column {} ({}, {})</title></circle>"#,
            x_at(to_f64(&col[0])),
            y_at(to_f64(&col[1])),
            k + 1,
            col[0],
            col[1]
        );
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r##"<g font-family="sans-serif" font-size="12" fill="#000000">"##
    );
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}" text-anchor="middle">0</text>"#,
        size - MARGIN / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">1</text>"#,
        MARGIN + PLOT,
        size - MARGIN / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">1</text>"#,
        MARGIN / 2.0,
        MARGIN + 4.0
    );
    out.push_str("</g>\n</svg>\n");
    out
}
