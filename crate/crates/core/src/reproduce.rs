//! Reference reproductions: bundled instances evaluated against published and
//! derived values. Every expected value carries its source, and published
//! values that disagree with exact computation are annotated, not patched.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::Being;
use crate::instance::bundled;
use crate::measures::{rank, Algorithm, Evaluator, GxConfig, Measure, MeasureResult, Metric, Variant};
use crate::report::{num, Report};
use crate::valuation::Sensitivity;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundle {
    Example1,
    Example2,
    Example3,
    Compromise,
    Table1,
    All,
}

impl std::str::FromStr for Bundle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "example1" => Bundle::Example1,
            "example2" => Bundle::Example2,
            "example3" => Bundle::Example3,
            "compromise" => Bundle::Compromise,
            "table1" => Bundle::Table1,
            "all" => Bundle::All,
            _ => return Err(Error::Invalid(format!("unknown bundle '{s}'"))),
        })
    }
}

/// One expected-versus-actual comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub bundle: &'static str,
    pub item: String,
    pub expected: Value,
    pub actual: Value,
    /// Absolute tolerance against `expected`.
    pub tolerance: Option<f64>,
    pub source: &'static str,
    /// Printed value and the tolerance it is held to.
    pub published: Option<(f64, f64)>,
    /// Set when the printed value is known to disagree with exact computation.
    pub annotation: Option<String>,
    pub pass: bool,
}

const PUBLISHED: &str = "published";
const CLOSED_FORM: &str = "derived: closed form";
const RADICAL: &str = "derived: exact radical";
const CORNERS: &str = "derived: corner enumeration";

/// Relative tolerance for values printed with a few significant digits.
pub const PRINT_REL_TOL: f64 = 5e-3;

#[allow(clippy::too_many_arguments)]
fn numeric(
    bundle: &'static str,
    item: impl Into<String>,
    actual: f64,
    expected: f64,
    tolerance: f64,
    source: &'static str,
    published: Option<(f64, f64)>,
    annotation: Option<String>,
) -> Entry {
    let ok = (actual - expected).abs() <= tolerance;
    let print_ok = annotation.is_some()
        || published.is_none_or(|(p, t)| (actual - p).abs() <= t);
    Entry {
        bundle,
        item: item.into(),
        expected: num(expected),
        actual: num(actual),
        tolerance: Some(tolerance),
        source,
        published,
        annotation,
        pass: ok && print_ok,
    }
}

fn ordering(bundle: &'static str, item: &str, scored: &[(String, MeasureResult)], want: &str) -> Result<Entry> {
    let r = rank(scored)?;
    let mut s = r[0].name.clone();
    for e in &r[1..] {
        s += if e.tied { " = " } else { " > " };
        s += &e.name;
    }
    Ok(Entry {
        bundle,
        item: item.into(),
        expected: json!(want),
        actual: json!(s),
        tolerance: None,
        source: PUBLISHED,
        published: None,
        annotation: None,
        pass: s == want,
    })
}

fn gx_scores(variant: Variant) -> Result<(Evaluator, Vec<(String, MeasureResult)>)> {
    let inst = bundled::load(bundled::EXAMPLE1);
    let ev = inst.evaluator()?;
    let cfg = GxConfig {
        k0: Being::new(vec![4.0, 4.0])?,
        metric: Metric::Euclidean,
        variant,
    };
    let scored = inst
        .built_sets()?
        .into_iter()
        .map(|(n, s)| Ok((n, ev.evaluate(&s, &Measure::Gx(cfg.clone()))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((ev, scored))
}

pub fn example1() -> Result<Vec<Entry>> {
    let (_, scored) = gx_scores(Variant::Standard)?;
    let want = [-2.5, -1.5, 1.0, 2.0];
    let mut out: Vec<Entry> = scored
        .iter()
        .zip(want)
        .map(|((n, r), w)| {
            numeric("example1", format!("standard {n}"), r.score, w, 1e-9, PUBLISHED, None, None)
        })
        .collect();
    out.push(ordering("example1", "standard ranking", &scored, "D > C > B > A")?);
    Ok(out)
}

pub fn example2() -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    let cases = [
        (
            Variant::Optimistic,
            [-2.5, -1.5, 16.25f64.sqrt(), 8f64.sqrt()],
            [-2.5, -1.5, 4.03, 2.83],
            "C > D > B > A",
        ),
        (
            Variant::Pessimistic,
            [-(10.25f64.sqrt()), -(14.5f64.sqrt()), 1.0, 2.0],
            [-3.20, -3.80, 1.0, 2.0],
            "D > C > A > B",
        ),
    ];
    for (variant, exact, printed, order) in cases {
        let (_, scored) = gx_scores(variant)?;
        let label = format!("{variant:?}").to_lowercase();
        for (((n, r), e), p) in scored.iter().zip(exact).zip(printed) {
            // The printed -3.80 truncates -sqrt(14.5) = -3.8079 instead of rounding it.
            let note = (variant == Variant::Pessimistic && n == "B").then(|| {
                format!("printed {p:.2} truncates {e:.4}; off by {:.4}", (e - p).abs())
            });
            out.push(numeric(
                "example2",
                format!("{label} {n}"),
                r.score,
                e,
                1e-9,
                RADICAL,
                Some((p, 0.005)),
                note,
            ));
        }
        out.push(ordering("example2", &format!("{label} ranking"), &scored, order)?);
    }
    Ok(out)
}

pub fn example3() -> Result<Vec<Entry>> {
    let inst = bundled::load(bundled::EXAMPLE3);
    let ev = inst.evaluator()?;
    let sets = inst.built_sets()?;
    let mut out = Vec::new();
    for ((n, s), w) in sets.iter().zip([13.0, 9.0, 12.0]) {
        let r = ev.evaluate(s, &Measure::Max)?;
        out.push(numeric("example3", format!("max {n}"), r.score, w, 0.0, PUBLISHED, None, None));
    }
    for ((n, s), w) in sets.iter().zip([3.0, 8.0, 5.0]) {
        let r = ev.evaluate(s, &Measure::Min)?;
        let (source, published, note) = if n == "B" {
            (
                CORNERS,
                Some((7.0, 0.0)),
                Some(
                    "printed text gives 7; every notch corner has value 8, consistent with the \
                     tabulated intrinsic entries 8^3/3 and 8^4/4"
                        .to_string(),
                ),
            )
        } else {
            (PUBLISHED, None, None)
        };
        out.push(numeric("example3", format!("min {n}"), r.score, w, 0.0, source, published, note));
    }
    Ok(out)
}

fn example3_evaluator(gamma: f64) -> Result<(Evaluator, Vec<(String, crate::geometry::CapabilitySet)>)> {
    let inst = bundled::load(bundled::EXAMPLE3);
    let mut ev = inst.evaluator()?;
    ev.sensitivity = Sensitivity::power(gamma)?;
    Ok((ev, inst.built_sets()?))
}

fn sqrt_a() -> f64 {
    4.0 * (13f64.powf(2.5) - 10f64.powf(2.5) - 3f64.powf(2.5)) / 15.0
}

pub fn compromise() -> Result<Vec<Entry>> {
    // Closed forms: strip sums of exact rectangle integrals.
    let table = [
        (1.0, "v", [195.0, 204.0, 210.0], [195.0, 204.0, 210.0]),
        (2.0, "v^2", [1540.0, 1302.0, 8855.0 / 6.0], [1540.0, 1302.0, 1475.8]),
        (0.5, "sqrt v", [sqrt_a(), 83.953_593_638_985_2, 83.543_231_706_713_86], [74.03, 83.95, 83.55]),
    ];
    let mut out = Vec::new();
    for (g, label, exact, printed) in table {
        let (ev, sets) = example3_evaluator(g)?;
        for (((n, s), e), p) in sets.iter().zip(exact).zip(printed) {
            let ie = ev.compromise(s, Algorithm::InclusionExclusion)?;
            let sweep = ev.compromise(s, Algorithm::Sweep)?;
            let quad = ev.compromise(s, Algorithm::Quadrature)?;
            let mut note = None;
            let mut e_ok = true;
            for (name, r) in [("sweep", &sweep), ("quadrature", &quad)] {
                if (r.score - ie.score).abs() > 1e-6 * ie.score.abs() {
                    e_ok = false;
                    note = Some(format!("{name} gives {}", r.score));
                }
            }
            let anomaly = (n == "A" && g == 0.5).then(|| {
                format!("printed 74.03 in the text and 74.3 in the table; the closed form is {:.4}", sqrt_a())
            });
            let mut entry = numeric(
                "compromise",
                format!("{n} phi={label}"),
                ie.score,
                e,
                1e-9 * e.abs().max(1.0),
                if g == 1.0 { PUBLISHED } else { CLOSED_FORM },
                Some((p, PRINT_REL_TOL * p.abs())),
                anomaly.or(note),
            );
            entry.pass &= e_ok;
            out.push(entry);
        }
    }
    Ok(out)
}

pub fn table1() -> Result<Vec<Entry>> {
    let rows: [(f64, &str, [[f64; 3]; 3]); 3] = [
        (1.0, "v", [[9.0, 170.67, 41.67], [195.0, 204.0, 210.0], [772.33, 243.0, 576.0]]),
        (2.0, "v^2", [[20.25, 1024.0, 156.25], [1540.0, 1302.0, 1475.8], [7140.25, 1640.25, 5184.0]]),
        (0.5, "sqrt v", [[6.24, 72.41, 22.36], [74.3, 83.95, 83.55], [243.73, 97.20, 199.48]]),
    ];
    let kinds = ["intrinsic", "compromise", "instrumental"];
    let mut out = Vec::new();
    for (g, label, grid) in rows {
        let (ev, sets) = example3_evaluator(g)?;
        for (kind, printed) in kinds.iter().zip(grid) {
            for ((n, s), p) in sets.iter().zip(printed) {
                let m = match *kind {
                    "intrinsic" => Measure::Intrinsic { clip: false },
                    "instrumental" => Measure::Instrumental { clip: false },
                    _ => Measure::Compromise(Algorithm::Auto),
                };
                let r = ev.evaluate(s, &m)?;
                let item = format!("{n} phi={label} {kind}");
                let entry = if n == "A" && g == 1.0 && *kind == "instrumental" {
                    let clipped = ev.evaluate(s, &Measure::Instrumental { clip: true })?.score;
                    let want = 13f64.powi(3) / 3.0;
                    numeric("table1", item, r.score, want, 1e-9 * want, CLOSED_FORM, Some((p, 0.0)), Some(format!(
                        "printed 772.33; unclipped sublevel integral is 13^3/3 = {want:.2} (clipped to the space: {clipped:.2})"
                    )))
                } else if n == "A" && g == 0.5 && *kind == "compromise" {
                    numeric("table1", item, r.score, sqrt_a(), 1e-9 * sqrt_a(), RADICAL, Some((p, 0.0)), Some(format!(
                        "printed 74.3; the closed form is {:.4}", sqrt_a()
                    )))
                } else {
                    numeric("table1", item, r.score, p, PRINT_REL_TOL * p.abs(), PUBLISHED, None, None)
                };
                out.push(entry);
            }
        }
    }
    Ok(out)
}

pub fn reproduce(bundle: Bundle) -> Result<Vec<Entry>> {
    Ok(match bundle {
        Bundle::Example1 => example1()?,
        Bundle::Example2 => example2()?,
        Bundle::Example3 => example3()?,
        Bundle::Compromise => compromise()?,
        Bundle::Table1 => table1()?,
        Bundle::All => {
            let mut v = example1()?;
            v.extend(example2()?);
            v.extend(example3()?);
            v.extend(compromise()?);
            v.extend(table1()?);
            v
        }
    })
}

pub fn report(entries: &[Entry]) -> Report {
    let mut r = Report::new(
        "reproduce",
        &["bundle", "item", "expected", "actual", "tolerance", "source", "published", "status", "annotation"],
    );
    for e in entries {
        r.push(vec![
            json!(e.bundle),
            json!(e.item),
            e.expected.clone(),
            e.actual.clone(),
            e.tolerance.map_or(Value::Null, num),
            json!(e.source),
            e.published.map_or(Value::Null, |p| num(p.0)),
            json!(if e.pass { "pass" } else { "FAIL" }),
            e.annotation.clone().map_or(Value::Null, Value::String),
        ]);
    }
    r.ok = entries.iter().all(|e| e.pass);
    let anomalies = entries.iter().filter(|e| e.annotation.is_some()).count();
    r.notes.push(format!(
        "{} entries, {} passed, {} annotated",
        entries.len(),
        entries.iter().filter(|e| e.pass).count(),
        anomalies
    ));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundle_passes() {
        for b in [Bundle::Example1, Bundle::Example2, Bundle::Example3, Bundle::Compromise, Bundle::Table1] {
            let e = reproduce(b).unwrap();
            for x in &e {
                assert!(x.pass, "{x:?}");
            }
        }
    }

    #[test]
    fn bundle_sizes_and_annotations() {
        assert_eq!(reproduce(Bundle::Compromise).unwrap().len(), 9);
        let t = reproduce(Bundle::Table1).unwrap();
        assert_eq!(t.len(), 27);
        assert_eq!(t.iter().filter(|e| e.annotation.is_some()).count(), 2);
        let e2 = reproduce(Bundle::Example2).unwrap();
        assert_eq!(e2.iter().filter(|e| e.annotation.is_some()).count(), 1);
        let e3 = reproduce(Bundle::Example3).unwrap();
        assert_eq!(e3.iter().filter(|e| e.annotation.is_some()).count(), 1);
        assert_eq!(reproduce(Bundle::Example2).unwrap().iter().filter(|e| e.tolerance.is_some()).count(), 8);
    }
}
