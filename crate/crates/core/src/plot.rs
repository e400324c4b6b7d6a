//! Plot data for 2D instances: staircase outlines, level lines and
//! reference-point circles as CSV, plus an optional SVG sketch.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{check_dims, Error, Result};
use crate::geometry::{staircase, CapabilitySet};
use crate::instance::Instance;
use crate::measures::gx_outcome;
use crate::valuation::ValueModel;

/// Outline of the closure of a 2D set, from the second axis to the first.
pub fn outline(set: &CapabilitySet) -> Vec<[f64; 2]> {
    let verts: Vec<[f64; 2]> = match set {
        CapabilitySet::Points(p) => {
            let s = staircase(p);
            let mut v = Vec::with_capacity(2 * s.len());
            for (i, a) in s.iter().enumerate() {
                if i > 0 {
                    v.push([s[i - 1].x(), a.y()]);
                }
                v.push([a.x(), a.y()]);
            }
            v
        }
        CapabilitySet::Polyline2D(p) => p.iter().map(|b| [b.x(), b.y()]).collect(),
    };
    let mut out = Vec::with_capacity(verts.len() + 2);
    if verts[0][0] > 0.0 {
        out.push([0.0, verts[0][1]]);
    }
    out.extend_from_slice(&verts);
    let last = verts[verts.len() - 1];
    if last[1] > 0.0 {
        out.push([last[0], 0.0]);
    }
    out
}

/// Segment of `{v = t}` inside the box `[0, upper]`, if it meets it.
pub fn level_segment(v: &ValueModel, t: f64, upper: &[f64]) -> Option<[[f64; 2]; 2]> {
    let (w1, w2) = (v.weights()[0], v.weights()[1]);
    let x0 = ((t - w2 * upper[1]) / w1).max(0.0);
    let x1 = (t / w1).min(upper[0]);
    if x0 > x1 {
        return None;
    }
    let y = |x: f64| ((t - w1 * x) / w2).max(0.0);
    Some([[x0, y(x0)], [x1, y(x1)]])
}

/// A circle record: the reference being, radius and branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Circle {
    pub set: String,
    pub center: [f64; 2],
    pub radius: f64,
    pub branch: &'static str,
}

pub struct PlotData {
    pub outlines: Vec<(String, Vec<[f64; 2]>)>,
    pub levels: Vec<(f64, [[f64; 2]; 2])>,
    pub circles: Vec<Circle>,
    pub upper: [f64; 2],
}

pub fn plot_data(inst: &Instance) -> Result<PlotData> {
    check_dims(2, inst.dimensions)?;
    let sets = inst.built_sets()?;
    let space = inst.space()?;
    let u = space.upper().coords();
    let v = inst.value_model();
    let outlines = sets.iter().map(|(n, s)| (n.clone(), outline(s))).collect();
    let levels = inst
        .levels
        .iter()
        .filter_map(|&t| level_segment(&v, t, u).map(|seg| (t, seg)))
        .collect();
    let mut circles = Vec::new();
    if let Some(cfg) = &inst.gx {
        for (n, s) in sets.iter().filter(|(_, s)| !s.is_polyline()) {
            let o = gx_outcome(s, cfg, &space)?;
            circles.push(Circle {
                set: n.clone(),
                center: [cfg.k0.x(), cfg.k0.y()],
                radius: o.radius(),
                branch: if o.inside { "positive" } else { "negative" },
            });
        }
    }
    Ok(PlotData {
        outlines,
        levels,
        circles,
        upper: [u[0], u[1]],
    })
}

fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(csv_err)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Writes `staircase_<set>.csv` per set, `levels.csv` when levels are given,
/// `circles.csv` when a reference being is configured, and `plot.svg` when
/// asked. Returns the files written.
pub fn write_plot_data(inst: &Instance, dir: &Path, svg: bool) -> Result<Vec<PathBuf>> {
    let data = plot_data(inst)?;
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, pts) in &data.outlines {
        let path = dir.join(format!("staircase_{}.csv", file_safe(name)));
        let mut w = csv_writer(&path)?;
        w.write_record(["set", "x", "y"]).map_err(csv_err)?;
        for p in pts {
            w.write_record([name.clone(), p[0].to_string(), p[1].to_string()]).map_err(csv_err)?;
        }
        w.flush()?;
        written.push(path);
    }
    if !data.levels.is_empty() {
        let path = dir.join("levels.csv");
        let mut w = csv_writer(&path)?;
        w.write_record(["set", "x", "y"]).map_err(csv_err)?;
        for (t, seg) in &data.levels {
            for p in seg {
                w.write_record([format!("level={t}"), p[0].to_string(), p[1].to_string()])
                    .map_err(csv_err)?;
            }
        }
        w.flush()?;
        written.push(path);
    }
    if !data.circles.is_empty() {
        let path = dir.join("circles.csv");
        let mut w = csv_writer(&path)?;
        w.write_record(["set", "cx", "cy", "r", "branch"]).map_err(csv_err)?;
        for c in &data.circles {
            w.write_record([
                c.set.clone(),
                c.center[0].to_string(),
                c.center[1].to_string(),
                c.radius.to_string(),
                c.branch.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        written.push(path);
    }
    if svg {
        let path = dir.join("plot.svg");
        std::fs::write(&path, render_svg(&data))?;
        written.push(path);
    }
    Ok(written)
}

fn file_safe(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

pub fn render_svg(data: &PlotData) -> String {
    let scale = 40.0;
    let pad = 30.0;
    let (w, h) = (data.upper[0] * scale + 2.0 * pad, data.upper[1] * scale + 2.0 * pad);
    let tx = |x: f64| pad + x * scale;
    let ty = |y: f64| h - pad - y * scale;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        s,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
        tx(0.0),
        ty(data.upper[1]),
        data.upper[0] * scale,
        data.upper[1] * scale
    );
    for (i, (name, pts)) in data.outlines.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = pts.iter().map(|p| format!("{},{}", tx(p[0]), ty(p[1]))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"><title>{name}</title></polyline>"#,
            path.join(" ")
        );
    }
    for (t, seg) in &data.levels {
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-dasharray="4 3"><title>v = {t}</title></line>"##,
            tx(seg[0][0]),
            ty(seg[0][1]),
            tx(seg[1][0]),
            ty(seg[1][1])
        );
    }
    for c in &data.circles {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#333" stroke-dasharray="2 2"><title>{} ({})</title></circle>"##,
            tx(c.center[0]),
            ty(c.center[1]),
            c.radius * scale,
            c.set,
            c.branch
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::bundled;

    #[test]
    fn outline_of_single_point() {
        let s = CapabilitySet::points(vec![crate::geometry::Being::new(vec![10., 3.]).unwrap()]).unwrap();
        assert_eq!(outline(&s), vec![[0., 3.], [10., 3.], [10., 0.]]);
    }

    #[test]
    fn example1_files() {
        let dir = tempfile::tempdir().unwrap();
        let files = write_plot_data(&bundled::load(bundled::EXAMPLE1), dir.path(), false).unwrap();
        assert_eq!(files.len(), 5);
        let circles = std::fs::read_to_string(dir.path().join("circles.csv")).unwrap();
        assert_eq!(circles.lines().count(), 5);
        assert!(circles.starts_with("set,cx,cy,r,branch\n"));
        assert!(circles.contains("D,4,4,2,positive"));
    }

    #[test]
    fn example3_levels() {
        let data = plot_data(&bundled::load(bundled::EXAMPLE3)).unwrap();
        assert_eq!(data.outlines.len(), 3);
        assert_eq!(data.levels.len(), 6);
        assert_eq!(data.levels[0].1, [[3., 10.], [10., 3.]]);
        assert!(data.circles.is_empty());
    }
}
