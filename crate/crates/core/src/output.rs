//! CSV, JSON and SVG writers for scan tables.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimation::EstimationRecord;
use crate::scan::ScanTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// Formats `v` with 12 significant digits, plain notation for moderate
/// exponents and `1.5e-7` style otherwise.
pub fn format_number(v: f64) -> String {
    const DIGITS: usize = 12;
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS as i32).contains(&exp) {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn metadata_line(table: &ScanTable) -> String {
    let m = &table.metadata;
    format!(
        "# {} {} {} {} generated_unix={}",
        m.tool, m.version, m.command, m.config, m.generated_unix
    )
}

/// Writes the `#` metadata line, the header and one line per record.
pub fn write_csv<W: Write>(table: &ScanTable, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{}", metadata_line(table))?;
    writeln!(out, "{}", EstimationRecord::COLUMNS.join(","))?;
    for row in &table.rows {
        let fields: Vec<String> = row.values().iter().map(|&v| format_number(v)).collect();
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn write_json<W: Write>(table: &ScanTable, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, table)?;
    Ok(())
}

pub fn to_csv_string(table: &ScanTable) -> String {
    let mut buf = Vec::new();
    write_csv(table, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn write_table(table: &ScanTable, format: Format, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    match format {
        Format::Csv => write_csv(table, &mut out).map_err(|e| Error::io(path, e))?,
        Format::Json => write_json(table, &mut out)?,
    }
    out.flush().map_err(|e| Error::io(path, e))
}

pub fn read_json(path: &Path) -> Result<ScanTable> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_reader(std::io::BufReader::new(file))?)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn column(table: &ScanTable, name: &str) -> Result<Vec<f64>> {
    if !EstimationRecord::COLUMNS.contains(&name) {
        return Err(Error::InvalidArgument(format!("unknown column {name:?}")));
    }
    Ok(table
        .rows
        .iter()
        .map(|r| r.column(name).expect("known column"))
        .collect())
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// SVG markup for a line chart with one polyline per y-column.
pub fn svg_lineplot(table: &ScanTable, x_column: &str, y_columns: &[&str]) -> Result<String> {
    let xs = column(table, x_column)?;
    let ys = y_columns
        .iter()
        .map(|c| column(table, c))
        .collect::<Result<Vec<_>>>()?;
    let (x_lo, x_hi) = extent(xs.iter().copied());
    let (y_lo, y_hi) = extent(ys.iter().flatten().copied());
    let px = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, y0, x1, y1) = (MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, MARGIN);
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    );
    let label = |v: f64| format!("{v:.3}");
    let _ = writeln!(
        svg,
        r#"<text x="{x0}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        y0 + 16.0,
        label(x_lo)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{x1}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        y0 + 16.0,
        label(x_hi)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{y0}" font-size="12" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        label(y_lo)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        y1 + 4.0,
        label(y_hi)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">{x_column}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{}" font-size="14" text-anchor="middle" transform="rotate(-90 15 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        y_columns.join(", ")
    );

    for (i, (name, series)) in y_columns.iter().zip(&ys).enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = xs
            .iter()
            .zip(series)
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12" fill="{color}">{name}</text>"#,
            x1 - 80.0,
            y1 + 16.0 * (i as f64 + 1.0)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn render_svg_lineplot(
    table: &ScanTable,
    x_column: &str,
    y_columns: &[&str],
    path: &Path,
) -> Result<()> {
    let svg = svg_lineplot(table, x_column, y_columns)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

/// `F/F_Q` against `|K_LG|`, one polyline per distinct `b`, with the
/// `|K_LG| = 2` boundary drawn as a dashed line.
pub fn svg_contours(table: &ScanTable) -> String {
    let mut groups: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for row in &table.rows {
        let point = (row.k_lg.abs(), row.ratio);
        match groups.last_mut() {
            Some((b, pts)) if *b == row.b => pts.push(point),
            _ => groups.push((row.b, vec![point])),
        }
    }
    let (x_lo, x_hi) = extent(table.rows.iter().map(|r| r.k_lg.abs()).chain([2.0]));
    let (y_lo, y_hi) = (0.0, 1.0);
    let px = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, y0, x1, y1) = (MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, MARGIN);
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    );
    let bx = px(2.0);
    let _ = writeln!(
        svg,
        r#"<line x1="{bx}" y1="{y0}" x2="{bx}" y2="{y1}" stroke="gray" stroke-dasharray="4 4"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">|K_LG|</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{}" font-size="14" text-anchor="middle" transform="rotate(-90 15 {})">F_ratio</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (i, (b, pts)) in groups.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12" fill="{color}">b = {b}</text>"#,
            x1 - 80.0,
            y1 + 16.0 * (i as f64 + 1.0)
        );
    }
    svg.push_str("</svg>\n");
    svg
}
