use std::fmt::Write;

use crate::regiongraph::GridPartition;

/// Renders a grid partition as an SVG 1.1 document with one square `rect`
/// per cell, filled with its region's color. `fills` is indexed by canonical
/// region. With `stroke`, cells get thin black borders.
pub fn render_grid_svg(
    grid: &GridPartition,
    fills: &[String],
    cell_px: u32,
    stroke: bool,
) -> String {
    assert_eq!(fills.len(), grid.region_count(), "one fill per region");
    let width = grid.cols() as u64 * u64::from(cell_px);
    let height = grid.rows() as u64 * u64::from(cell_px);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let border = if stroke {
        " stroke=\"#000000\" stroke-width=\"1\""
    } else {
        ""
    };
    for r in 0..grid.rows() {
        for c in 0..grid.cols() {
            let fill = &fills[grid.region_at(r, c)];
            let (x, y) = (c as u64 * u64::from(cell_px), r as u64 * u64::from(cell_px));
            let _ = writeln!(
                out,
                "<rect x=\"{x}\" y=\"{y}\" width=\"{cell_px}\" height=\"{cell_px}\" fill=\"{fill}\"{border}/>"
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
