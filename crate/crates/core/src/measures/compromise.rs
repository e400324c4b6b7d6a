//! The compromise measure: the integral of `phi(v(.))` over the closure of a
//! set, by inclusion-exclusion over boxes, by a 2D strip sweep, by region
//! quadrature, or by Monte Carlo.

use crate::error::{check_dims, Error, Result};
use crate::geometry::{Being, CapabilitySet};
use crate::par::{map_indexed, pairwise_sum, Execution};
use crate::quadrature::{integrate_region, mc_integrate_with, QuadConfig};
use crate::region::Region;
use crate::valuation::{box_integral, psi, Sensitivity, ValueModel};

use super::MeasureResult;

/// Largest clipped frontier accepted by inclusion-exclusion.
pub const IE_SIZE_GUARD: usize = 20;

/// Subsets handled per parallel task.
const IE_CHUNK: usize = 1 << 12;

/// Frontier members with every coordinate strictly positive; the others
/// span null boxes.
fn clipped_frontier(set: &CapabilitySet) -> Vec<Being> {
    set.frontier()
        .into_iter()
        .filter(|a| a.coords().iter().all(|c| *c > 0.0))
        .collect()
}

pub fn compromise_ie(set: &CapabilitySet, v: &ValueModel, phi: &Sensitivity) -> Result<MeasureResult> {
    compromise_ie_with(set, v, phi, Execution::default())
}

pub fn compromise_ie_with(
    set: &CapabilitySet,
    v: &ValueModel,
    phi: &Sensitivity,
    exec: Execution,
) -> Result<MeasureResult> {
    check_dims(v.dims(), set.dims())?;
    if set.is_polyline() {
        return Err(Error::Unsupported("inclusion-exclusion over a polyline".into()));
    }
    let pts = clipped_frontier(set);
    let (value, err) = ie_sum(&pts, |lo, hi| box_integral(v, phi, lo, hi), exec)?;
    let mut r = MeasureResult::exact(value, "inclusion-exclusion");
    r.error_bound = err;
    r.note("points", pts.len());
    r.note("subsets", (1u64 << pts.len()) - 1);
    Ok(r)
}

/// Signed sum of `term(0, meet(Z))` over nonempty subsets `Z` of `points`,
/// with the summed per-term error bounds.
pub(crate) fn ie_sum<F>(points: &[Being], term: F, exec: Execution) -> Result<(f64, f64)>
where
    F: Fn(&[f64], &[f64]) -> (f64, f64) + Sync,
{
    let n = points.len();
    if n > IE_SIZE_GUARD {
        return Err(Error::SizeGuard {
            what: "inclusion-exclusion frontier",
            size: n,
            limit: IE_SIZE_GUARD,
        });
    }
    if n == 0 {
        return Ok((0.0, 0.0));
    }
    let dims = points[0].dims();
    let total = 1usize << n;
    let chunks = total.div_ceil(IE_CHUNK);
    let parts = map_indexed(exec, chunks, |k| {
        let zero = vec![0.0; dims];
        let mut meet = vec![0.0; dims];
        let mut vals = Vec::with_capacity(IE_CHUNK);
        let mut err = 0.0;
        for mask in (k * IE_CHUNK).max(1)..((k + 1) * IE_CHUNK).min(total) {
            meet.fill(f64::INFINITY);
            for (i, p) in points.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (m, c) in meet.iter_mut().zip(p.coords()) {
                        *m = m.min(*c);
                    }
                }
            }
            let (t, e) = term(&zero, &meet);
            vals.push(if mask.count_ones() % 2 == 1 { t } else { -t });
            err += e;
        }
        (pairwise_sum(&vals), err)
    });
    let vals: Vec<f64> = parts.iter().map(|p| p.0).collect();
    let errs: Vec<f64> = parts.iter().map(|p| p.1).collect();
    // Cancellation in the signed sum costs roughly one ulp of each term.
    let value = pairwise_sum(&vals);
    Ok((value, pairwise_sum(&errs) + f64::EPSILON * (n as f64) * value.abs()))
}

/// Strip sweep: with the frontier sorted by increasing second coordinate,
/// strip `i` is `[0, x_i] x (y_{i-1}, y_i]`.
pub fn compromise_sweep2d(
    set: &CapabilitySet,
    v: &ValueModel,
    phi: &Sensitivity,
    cfg: &QuadConfig,
) -> Result<MeasureResult> {
    check_dims(2, set.dims())?;
    check_dims(2, v.dims())?;
    if set.is_polyline() {
        let mut r = compromise_region(&Region::dominance(set.clone()), v, phi, cfg)?;
        r.method = "sweep/quadrature".into();
        return Ok(r);
    }
    let mut pts = clipped_frontier(set);
    pts.sort_by(|a, b| a.y().total_cmp(&b.y()));
    let mut vals = Vec::with_capacity(pts.len());
    let mut err = 0.0;
    let mut y0 = 0.0;
    for a in &pts {
        let (t, e) = box_integral(v, phi, &[0.0, y0], &[a.x(), a.y()]);
        vals.push(t);
        err += e;
        y0 = a.y();
    }
    let mut r = MeasureResult::exact(pairwise_sum(&vals), "sweep");
    r.error_bound = err;
    r.note("strips", pts.len());
    Ok(r)
}

/// Integral of `phi(v(.))` over an arbitrary region by adaptive quadrature.
pub fn compromise_region(
    region: &Region,
    v: &ValueModel,
    phi: &Sensitivity,
    cfg: &QuadConfig,
) -> Result<MeasureResult> {
    check_dims(v.dims(), region.dims())?;
    let e = integrate_region(psi(v, phi), region, cfg)?;
    Ok(MeasureResult::from_estimate(e, "quadrature"))
}

/// Monte-Carlo estimate with a three-standard-error bound.
pub fn compromise_mc(
    set: &CapabilitySet,
    v: &ValueModel,
    phi: &Sensitivity,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<MeasureResult> {
    check_dims(v.dims(), set.dims())?;
    let e = mc_integrate_with(psi(v, phi), &Region::dominance(set.clone()), samples, seed, exec)?;
    let mut r = MeasureResult::from_estimate(e, "monte-carlo");
    r.note("seed", seed);
    Ok(r)
}
