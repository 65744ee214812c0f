//! SVG rendering of a fan's planar slice.
//!
//! Every ray of every pipeline fan lies on the plane n₁+n₂+n₃ = 5, so a
//! fan is faithfully drawn by its slice cells in the (n₂, n₃) chart. The
//! screen mapping is a fixed integer shear — px = 100·n₂ + 50·n₃,
//! py = 87·(5 − n₃) — which renders the slice triangle near-equilateral
//! while keeping every emitted coordinate an exact integer, so the output
//! is byte-identical across runs and platforms.

use std::fmt::Write as _;

use mirrorkit_core::toric::{Fan, Point};

const SCALE_X: i64 = 100;
const SHEAR: i64 = 50;
const SCALE_Y: i64 = 87;
const MARGIN: i64 = 60;
const WIDTH: i64 = 2 * MARGIN + 5 * SCALE_X + 5 * SHEAR;
const HEIGHT: i64 = 2 * MARGIN + 5 * SCALE_Y;

fn screen(p: Point) -> (i64, i64) {
    (
        MARGIN + SCALE_X * p[1] + SHEAR * p[2],
        MARGIN + SCALE_Y * (5 - p[2]),
    )
}

/// Renders the fan's slice as a standalone SVG document.
pub fn render_slice_svg(fan: &Fan, step: &str) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "  <title>Slice of the resolution fan after step {step}</title>"
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>"
    );

    for cell in fan.cells() {
        let points: Vec<String> = cell
            .vertices()
            .iter()
            .map(|&v| {
                let (x, y) = screen(v);
                format!("{x},{y}")
            })
            .collect();
        let fill = if cell.is_triangle() {
            "#e8f0fb"
        } else {
            "#fbeee8"
        };
        let _ = writeln!(
            svg,
            "  <polygon points=\"{}\" fill=\"{fill}\" stroke=\"#39404a\" stroke-width=\"2\"/>",
            points.join(" ")
        );
    }

    for ray in fan.rays() {
        let (x, y) = screen(ray);
        let _ = writeln!(
            svg,
            "  <circle cx=\"{x}\" cy=\"{y}\" r=\"6\" fill=\"#39404a\"/>"
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"17\" \
             fill=\"#39404a\">({},{},{})</text>",
            x + 9,
            y - 9,
            ray[0],
            ray[1],
            ray[2]
        );
    }

    svg.push_str("</svg>\n");
    svg
}
