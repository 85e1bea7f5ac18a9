//! Text renderings: number formatting, CSV tables and the SVG heatmap.

use std::fmt::Write as _;

use rescue_core::FigureMatrix;

/// Shortest fixed-point form with at most 12 decimals, e.g. `2.5`, `0.128`.
pub fn fmt_value(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Fixed-point probability carrying three significant digits of whichever
/// is smaller, `p` or `1 - p`: 5.3265e-4 prints as `0.000533`, 0.99996772
/// as `0.9999677`.
pub fn fmt_probability(p: f64) -> String {
    let gap = p.min(1.0 - p);
    if gap <= 0.0 {
        return fmt_value(p);
    }
    let decimals = (2 - gap.log10().floor() as i32).clamp(1, 15) as usize;
    format!("{p:.decimals$}")
}

/// One line per stage, six decimals. With `header`, a `stage,person_1,..`
/// line is added and every row starts with its stage number.
pub fn figure_csv(matrix: &FigureMatrix, header: bool) -> String {
    let n = matrix.n();
    let mut out = String::new();
    if header {
        out.push_str("stage");
        for j in 1..=n {
            write!(out, ",person_{j}").unwrap();
        }
        out.push('\n');
    }
    for (i, row) in matrix.rows().enumerate() {
        if header {
            write!(out, "{},", i + 1).unwrap();
        }
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

const CELL: f64 = 40.0;
const MIN_SIDE: f64 = 4.0;
const MARGIN: f64 = 48.0;

/// Square side for a cell value; affine and increasing in `v`.
pub fn square_side(v: f64) -> f64 {
    MIN_SIDE + (CELL - MIN_SIDE - 4.0) * v
}

/// Gray level (0 = black) for a cell value; affine and decreasing in `v`.
pub fn gray_level(v: f64) -> u8 {
    (255.0 * (1.0 - v)).round().clamp(0.0, 255.0) as u8
}

/// Heatmap with one centred square per cell; larger and darker squares mean
/// higher survival probability. Rows are stages, columns people.
pub fn figure_svg(matrix: &FigureMatrix) -> String {
    let n = matrix.n();
    let size = 2.0 * MARGIN + CELL * n as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{size}" height="{size}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="16" font-family="sans-serif" font-size="12" text-anchor="middle">person j (weakest to strongest)</text>"#,
        size / 2.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="14" y="{0}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 14 {0})">stage i</text>"#,
        size / 2.0
    )
    .unwrap();
    for k in 0..n {
        let mid = MARGIN + CELL * (k as f64 + 0.5);
        writeln!(
            out,
            r#"<text x="{mid}" y="{}" font-family="sans-serif" font-size="10" text-anchor="middle">{}</text>"#,
            MARGIN - 6.0,
            k + 1
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10" text-anchor="end">{}</text>"#,
            MARGIN - 6.0,
            mid + 3.0,
            k + 1
        )
        .unwrap();
    }
    for (i, row) in matrix.rows().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let side = square_side(v);
            let x = MARGIN + CELL * j as f64 + (CELL - side) / 2.0;
            let y = MARGIN + CELL * i as f64 + (CELL - side) / 2.0;
            let g = gray_level(v);
            writeln!(
                out,
                r#"<rect x="{x:.3}" y="{y:.3}" width="{side:.3}" height="{side:.3}" fill="rgb({g},{g},{g})" stroke="rgb(200,200,200)" stroke-width="0.5"><title>stage {} person {}: {v:.6}</title></rect>"#,
                i + 1,
                j + 1
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
