use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Number, Value};

use super::report::{AsymptoteLine, LocusReport};
use super::{Artifact, RunConfig};
use crate::error::Result;
use crate::geometry::{gnomonic_lift, SpherePoint};
use crate::pjrl::Patch;
use crate::poly::rational_to_f64;

/// `x` rounded to 12 significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

/// Shortest text that round-trips `round_sig(x)`.
pub fn format_float(x: f64) -> String {
    format!("{}", round_sig(x))
}

pub(crate) fn json_number(x: f64) -> Value {
    Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

/// Writes `bytes` to a sibling temp file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("artifact");
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

pub(crate) fn locus_csv(report: &LocusReport) -> String {
    let mut out = String::from("k,branch_id,x,y\n");
    for (s, ids) in report.sweep.iter().zip(&report.branch_ids) {
        let k = format_float(rational_to_f64(&s.k));
        for (&(x, y), id) in s.roots.iter().zip(ids) {
            let _ = writeln!(out, "{k},{id},{},{}", format_float(x), format_float(y));
        }
    }
    out
}

pub(crate) fn complementary_csv(report: &LocusReport) -> String {
    let mut out = String::from("k,branch_id,z,y,blow_up\n");
    for (c, ids) in report.complementary.iter().zip(&report.branch_ids) {
        let k = format_float(rational_to_f64(&c.k));
        let mut rows: Vec<(usize, String)> = c
            .points
            .iter()
            .map(|&(i, z, y)| (i, format!("{k},{},{},{},false", ids[i], format_float(z), format_float(y))))
            .collect();
        rows.extend(c.blow_up.iter().map(|&i| (i, format!("{k},{},,,true", ids[i]))));
        rows.sort_by_key(|r| r.0);
        for (_, row) in rows {
            out.push_str(&row);
            out.push('\n');
        }
    }
    out
}

fn sphere_triple(p: &SpherePoint) -> Value {
    json!([json_number(p.x), json_number(p.y), json_number(p.z)])
}

pub(crate) fn sphere_json(report: &LocusReport) -> Value {
    let branches: Vec<Value> = report
        .branches()
        .iter()
        .map(|b| {
            let pts: Vec<Value> = b
                .points
                .iter()
                .filter_map(|&(_, x, y)| SpherePoint::from_direction(x, y, 1.0))
                .map(|p| sphere_triple(&p))
                .collect();
            json!({ "id": b.id, "points": pts })
        })
        .collect();
    let markers = |pts: Vec<_>| pts.iter().map(|p| sphere_triple(&gnomonic_lift(p))).collect::<Vec<_>>();
    json!({
        "branches": branches,
        "initial": markers(report.initial().all_points()),
        "terminal": markers(report.terminal().all_points()),
    })
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

fn percentile_range(mut values: Vec<f64>) -> (f64, f64) {
    values.retain(|v| v.is_finite());
    if values.is_empty() {
        return (-1.0, 1.0);
    }
    values.sort_by(f64::total_cmp);
    let at = |q: f64| values[((values.len() - 1) as f64 * q).round() as usize];
    let (mut lo, mut hi) = (at(0.02), at(0.98));
    if hi - lo < 1e-9 {
        lo -= 1.0;
        hi += 1.0;
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

/// A 2-D polyline plot autoscaled to the 2nd-98th percentile, with dashed
/// asymptote lines clipped to the frame.
pub(crate) fn svg_plot(title: &str, labels: (&str, &str), branches: &[Vec<(f64, f64)>], lines: &[AsymptoteLine]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const M: f64 = 40.0;
    let all = || branches.iter().flatten();
    let (x0, x1) = percentile_range(all().map(|p| p.0).collect());
    let (y0, y1) = percentile_range(all().map(|p| p.1).collect());
    let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let f = |v: f64| format!("{:.2}", v);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<title>{title}</title>"#);
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="frame"><rect x="{M}" y="{M}" width="{}" height="{}"/></clipPath></defs>"#,
        W - 2.0 * M,
        H - 2.0 * M
    );
    let _ = writeln!(s, r#"<rect x="{M}" y="{M}" width="{}" height="{}" fill="white" stroke="black"/>"#, W - 2.0 * M, H - 2.0 * M);
    let _ = writeln!(s, r#"<g clip-path="url(#frame)">"#);
    if x0 < 0.0 && x1 > 0.0 {
        let _ = writeln!(s, r##"<line x1="{0}" y1="{M}" x2="{0}" y2="{1}" stroke="#bbb"/>"##, f(sx(0.0)), H - M);
    }
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(s, r##"<line x1="{M}" y1="{0}" x2="{1}" y2="{0}" stroke="#bbb"/>"##, f(sy(0.0)), W - M);
    }
    for l in lines {
        let (a, b) = match l.slope {
            Some(m) => {
                let y = |x: f64| m * (x - l.through.0) + l.through.1;
                ((sx(x0), sy(y(x0))), (sx(x1), sy(y(x1))))
            }
            None => ((sx(l.through.0), M), (sx(l.through.0), H - M)),
        };
        if [a.0, a.1, b.0, b.1].iter().all(|v| v.is_finite()) {
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-dasharray="6 4"/>"##,
                f(a.0),
                f(a.1),
                f(b.0),
                f(b.1)
            );
        }
    }
    for (i, b) in branches.iter().enumerate() {
        let mut pts = String::new();
        for &(x, y) in b.iter().filter(|p| p.0.is_finite() && p.1.is_finite()) {
            let _ = write!(pts, "{},{} ", f(sx(x)), f(sy(y)));
        }
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            pts.trim_end(),
            PALETTE[i % PALETTE.len()]
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 10.0, labels.0);
    let _ = writeln!(s, r#"<text x="12" y="{}" text-anchor="middle">{}</text>"#, H / 2.0, labels.1);
    let _ = writeln!(s, r#"<text x="{M}" y="25">{title}</text>"#);
    s.push_str("</svg>\n");
    s
}

fn xy_polylines(report: &LocusReport) -> Vec<Vec<(f64, f64)>> {
    report.branches().into_iter().map(|b| b.points.into_iter().map(|(_, x, y)| (x, y)).collect()).collect()
}

fn zy_polylines(report: &LocusReport) -> Vec<Vec<(f64, f64)>> {
    let mut out: Vec<Vec<(f64, f64)>> = Vec::new();
    for (c, ids) in report.complementary.iter().zip(&report.branch_ids) {
        for &(i, z, y) in &c.points {
            let id = ids[i];
            if out.len() <= id {
                out.resize(id + 1, Vec::new());
            }
            out[id].push((z, y));
        }
        for &i in &c.blow_up {
            let id = ids[i];
            if out.len() <= id {
                out.resize(id + 1, Vec::new());
            }
            // break the polyline across the blow-up
            out[id].push((f64::NAN, f64::NAN));
        }
    }
    out
}

fn lines_for(report: &LocusReport, patch: Patch) -> Vec<AsymptoteLine> {
    report.patch(patch).map(|p| p.lines.clone()).unwrap_or_default()
}

/// Renders every selected artifact, then writes them one by one.
pub(crate) fn write_artifacts(report: &LocusReport, config: &RunConfig) -> Result<()> {
    let mut files: Vec<(&str, Vec<u8>)> = Vec::new();
    let sel = config.patch;
    if config.emit.contains(&Artifact::Csv) {
        if sel.includes(Patch::XY) {
            files.push(("locus.csv", locus_csv(report).into_bytes()));
        }
        if sel.includes(Patch::ZY) {
            files.push(("complementary.csv", complementary_csv(report).into_bytes()));
        }
    }
    if config.emit.contains(&Artifact::Svg) {
        if sel.includes(Patch::XY) {
            let svg = svg_plot("root locus", ("x", "y"), &xy_polylines(report), &lines_for(report, Patch::XY));
            files.push(("locus.svg", svg.into_bytes()));
        }
        if sel.includes(Patch::ZY) {
            let svg =
                svg_plot("complementary root locus", ("z", "y"), &zy_polylines(report), &lines_for(report, Patch::ZY));
            files.push(("complementary.svg", svg.into_bytes()));
        }
    }
    if config.emit.contains(&Artifact::Json) {
        if sel.includes_sphere() {
            files.push(("sphere.json", pretty(&sphere_json(report))?));
        }
        files.push(("report.json", pretty(&report.to_json())?));
    }
    if files.is_empty() {
        return Ok(());
    }
    fs::create_dir_all(&config.out_dir)?;
    for (name, bytes) in files {
        write_atomic(&config.out_dir.join(name), &bytes)?;
    }
    Ok(())
}

fn pretty(v: &Value) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(v)?;
    bytes.push(b'\n');
    Ok(bytes)
}
