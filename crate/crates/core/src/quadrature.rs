//! Certified numerical integration over boxes and downward-closed regions,
//! and a seeded Monte-Carlo estimator used as an independent oracle.
//!
//! Both deterministic integrators are nested adaptive Gauss-Kronrod (7/15)
//! rules, one axis at a time. For regions the inner axes integrate over the
//! exact section of the region at the current outer abscissa, with outer
//! breakpoints placed at every abscissa where a section changes form, so each
//! panel sees a smooth integrand.

use std::cell::Cell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{map_indexed, pairwise_sum, Execution};
use crate::region::{Region, Shape};

/// Highest dimension the nested integrators accept.
pub const MAX_DIMS: usize = 6;

/// Segment budget per one-dimensional adaptive integration.
const MAX_SEGMENTS: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
    pub seed: u64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            max_depth: 40,
            seed: 0,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Invalid("tolerances must be positive".into()));
        }
        if self.max_depth == 0 {
            return Err(Error::Invalid("max_depth must be at least 1".into()));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Numeric result with an error bound and an evaluation count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
    pub evaluations: u64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            error_bound: 0.0,
            evaluations: 0,
        }
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    rule_err: f64,
    floor: f64,
    inner_err: f64,
    depth: u32,
}

/// `f` returns a value and the error bound already attached to it.
fn gk15<F: FnMut(f64) -> (f64, f64)>(f: &mut F, a: f64, b: f64, depth: u32) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    let mut inner = 0.0;
    let mut resabs = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(&WGK).enumerate() {
        let mut eval = |t: f64| {
            let (v, e) = f(t);
            inner += wk * e;
            v
        };
        let s = if x == 0.0 {
            eval(c)
        } else {
            eval(c - h * x) + eval(c + h * x)
        };
        kron += wk * s;
        resabs += wk * s.abs();
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    let floor = 50.0 * f64::EPSILON * resabs * h.abs();
    Segment {
        a,
        b,
        value: kron * h,
        // never claim better than roundoff allows
        rule_err: ((kron - gauss) * h).abs().max(floor),
        floor,
        inner_err: inner * h.abs(),
        depth,
    }
}

struct Adaptive {
    value: f64,
    error: f64,
    converged: bool,
}

/// Globally adaptive integration over `[edges[0], edges[last]]`, with the
/// interior edges as forced breakpoints.
fn adaptive<F: FnMut(f64) -> (f64, f64)>(
    f: &mut F,
    edges: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
) -> Adaptive {
    let mut segs: Vec<Segment> = edges
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gk15(f, w[0], w[1], 0))
        .collect();
    let converged = loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.rule_err + s.inner_err).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) {
            break true;
        }
        if segs.len() >= MAX_SEGMENTS {
            break false;
        }
        let worst = segs
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                s.depth < max_depth
                    && s.rule_err > s.floor
                    && s.b - s.a > f64::EPSILON * s.a.abs().max(1.0)
            })
            .max_by(|x, y| x.1.rule_err.total_cmp(&y.1.rule_err))
            .map(|(i, _)| i);
        let Some(i) = worst else { break false };
        let s = segs.swap_remove(i);
        let m = 0.5 * (s.a + s.b);
        segs.push(gk15(f, s.a, m, s.depth + 1));
        segs.push(gk15(f, m, s.b, s.depth + 1));
    };
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let vals: Vec<f64> = segs.iter().map(|s| s.value).collect();
    let errs: Vec<f64> = segs.iter().map(|s| s.rule_err + s.inner_err).collect();
    Adaptive {
        value: pairwise_sum(&vals),
        error: pairwise_sum(&errs),
        converged,
    }
}

fn finish(value: f64, error: f64, evals: u64, cfg: &QuadConfig) -> Result<Estimate> {
    let est = Estimate {
        value,
        error_bound: error,
        evaluations: evals,
    };
    if error <= cfg.target(value) {
        Ok(est)
    } else {
        Err(Error::ToleranceUnmet(est))
    }
}

/// Tolerances handed to the next axis in: tighter so inner noise does not
/// dominate the outer rule error.
fn inner_tols(abs_tol: f64, rel_tol: f64, span: f64) -> (f64, f64) {
    (0.1 * abs_tol / span.max(1.0), 0.1 * rel_tol)
}

fn check_dims_supported(d: usize) -> Result<()> {
    if d == 0 || d > MAX_DIMS {
        return Err(Error::Unsupported(format!(
            "integration in {d} dimensions (supported: 1..={MAX_DIMS})"
        )));
    }
    Ok(())
}

/// Integrates `psi` over the box `[lower, upper]`.
pub fn integrate_box<F>(psi: F, lower: &[f64], upper: &[f64], cfg: &QuadConfig) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64,
{
    cfg.validate()?;
    crate::error::check_dims(lower.len(), upper.len())?;
    check_dims_supported(lower.len())?;
    if lower.iter().zip(upper).any(|(l, u)| !(l <= u) || !l.is_finite() || !u.is_finite()) {
        return Err(Error::InvalidBounds(format!(
            "lower {lower:?} must not exceed upper {upper:?}"
        )));
    }
    let evals = Cell::new(0u64);
    let mut point = Vec::with_capacity(lower.len());
    let r = box_level(&psi, lower, upper, &mut point, cfg.abs_tol, cfg.rel_tol, cfg.max_depth, &evals);
    finish(r.value, r.error, evals.get(), cfg)
}

#[allow(clippy::too_many_arguments)]
fn box_level<F: Fn(&[f64]) -> f64>(
    psi: &F,
    lower: &[f64],
    upper: &[f64],
    point: &mut Vec<f64>,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
    evals: &Cell<u64>,
) -> Adaptive {
    let k = point.len();
    let (a, b) = (lower[k], upper[k]);
    if k + 1 == lower.len() {
        let mut f = |x: f64| {
            point.push(x);
            let v = psi(point);
            point.pop();
            evals.set(evals.get() + 1);
            (v, 0.0)
        };
        return adaptive(&mut f, &[a, b], abs_tol, rel_tol, max_depth);
    }
    let (ia, ir) = inner_tols(abs_tol, rel_tol, b - a);
    let mut f = |x: f64| {
        point.push(x);
        let r = box_level(psi, lower, upper, point, ia, ir, max_depth, evals);
        point.pop();
        (r.value, r.error)
    };
    adaptive(&mut f, &[a, b], abs_tol, rel_tol, max_depth)
}

/// Integrates `psi` over a downward-closed region.
pub fn integrate_region<F>(psi: F, region: &Region, cfg: &QuadConfig) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64,
{
    cfg.validate()?;
    region.validate()?;
    let dims = region.dims();
    check_dims_supported(dims)?;
    let evals = Cell::new(0u64);
    let mut point = Vec::with_capacity(dims);
    let shape = region.shape();
    let r = region_level(&psi, &shape, dims, &mut point, cfg.abs_tol, cfg.rel_tol, cfg.max_depth, &evals);
    finish(r.value, r.error, evals.get(), cfg)
}

#[allow(clippy::too_many_arguments)]
fn region_level<F: Fn(&[f64]) -> f64>(
    psi: &F,
    shape: &Shape,
    dims: usize,
    point: &mut Vec<f64>,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
    evals: &Cell<u64>,
) -> Adaptive {
    let zero = Adaptive {
        value: 0.0,
        error: 0.0,
        converged: true,
    };
    let remaining = dims - point.len();
    let Some(ext) = shape.extent().filter(|e| *e > 0.0) else {
        return zero;
    };
    if remaining == 1 {
        let mut f = |x: f64| {
            point.push(x);
            let v = psi(point);
            point.pop();
            evals.set(evals.get() + 1);
            (v, 0.0)
        };
        return adaptive(&mut f, &[0.0, ext], abs_tol, rel_tol, max_depth);
    }
    let mut edges = vec![0.0, ext];
    shape.breaks(remaining, &mut edges);
    edges.retain(|x| *x >= 0.0 && *x <= ext);
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let (ia, ir) = inner_tols(abs_tol, rel_tol, ext);
    let mut f = |x: f64| {
        let section = shape.slice(x);
        point.push(x);
        let r = region_level(psi, &section, dims, point, ia, ir, max_depth, evals);
        point.pop();
        (r.value, r.error)
    };
    let r = adaptive(&mut f, &edges, abs_tol, rel_tol, max_depth);
    Adaptive { converged: r.converged, ..r }
}

const MC_CHUNK: usize = 1 << 16;

/// Uniform-sampling estimate over the region's bounding box, with a
/// three-standard-error bound.
pub fn mc_integrate<F>(psi: F, region: &Region, n: usize, seed: u64) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    mc_integrate_with(psi, region, n, seed, Execution::default())
}

/// [`mc_integrate`] with an explicit execution mode. Results do not depend
/// on the mode.
pub fn mc_integrate_with<F>(
    psi: F,
    region: &Region,
    n: usize,
    seed: u64,
    exec: Execution,
) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if n < 1000 {
        return Err(Error::Invalid(format!("need at least 1000 samples, got {n}")));
    }
    region.validate()?;
    let bbox = region.bounding_box();
    let vol: f64 = bbox.iter().product();
    if vol <= 0.0 {
        return Ok(Estimate {
            value: 0.0,
            error_bound: 0.0,
            evaluations: n as u64,
        });
    }
    let chunks = n.div_ceil(MC_CHUNK);
    let partial = map_indexed(exec, chunks, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let count = MC_CHUNK.min(n - k * MC_CHUNK);
        let mut x = vec![0.0; bbox.len()];
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..count {
            for (xi, hi) in x.iter_mut().zip(&bbox) {
                *xi = rng.random::<f64>() * hi;
            }
            if region.contains(&x) {
                let v = psi(&x) * vol;
                s += v;
                s2 += v * v;
            }
        }
        (s, s2)
    });
    let sums: Vec<f64> = partial.iter().map(|p| p.0).collect();
    let sqs: Vec<f64> = partial.iter().map(|p| p.1).collect();
    let nf = n as f64;
    let mean = pairwise_sum(&sums) / nf;
    let var = (pairwise_sum(&sqs) / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
    Ok(Estimate {
        value: mean,
        error_bound: 3.0 * (var / nf).sqrt(),
        evaluations: n as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Being, CapabilitySet};
    use crate::valuation::ValueModel;
    use approx::assert_relative_eq;

    fn dom(c: &[[f64; 2]]) -> Region {
        Region::dominance(
            CapabilitySet::points(c.iter().map(|p| Being::new(p.to_vec()).unwrap()).collect())
                .unwrap(),
        )
    }

    #[test]
    fn box_worked_values() {
        let cfg = QuadConfig::default();
        let one = integrate_box(|_| 1.0, &[0., 0.], &[10., 3.], &cfg).unwrap();
        assert_relative_eq!(one.value, 30.0, max_relative = 1e-12);
        let lin = integrate_box(|x| x[0] + x[1], &[0., 0.], &[10., 3.], &cfg).unwrap();
        assert_relative_eq!(lin.value, 195.0, max_relative = 1e-10);
        let sq = integrate_box(|x| (x[0] + x[1]).powi(2), &[0., 0.], &[10., 3.], &cfg).unwrap();
        assert_relative_eq!(sq.value, 1540.0, max_relative = 1e-10);
        assert!(sq.error_bound <= cfg.target(sq.value));
        assert!(sq.evaluations > 0);
    }

    #[test]
    fn box_rejects_inverted_bounds() {
        let r = integrate_box(|_| 1.0, &[1., 0.], &[0., 1.], &QuadConfig::default());
        assert!(matches!(r, Err(Error::InvalidBounds(_))));
    }

    #[test]
    fn unmet_tolerance_is_reported() {
        let cfg = QuadConfig {
            max_depth: 1,
            rel_tol: 1e-15,
            abs_tol: 1e-300,
            ..QuadConfig::default()
        };
        let r = integrate_box(|x| (x[0] - 0.3).abs().sqrt(), &[0.], &[1.], &cfg);
        assert!(matches!(r, Err(Error::ToleranceUnmet(_))));
    }

    #[test]
    fn region_worked_values() {
        let cfg = QuadConfig::default();
        let v = ValueModel::sum(2);
        let lin = |x: &[f64]| x[0] + x[1];
        let r = integrate_region(lin, &Region::sublevel(v.clone(), 3.0).unwrap(), &cfg).unwrap();
        assert_relative_eq!(r.value, 9.0, max_relative = 1e-9);
        let r = integrate_region(lin, &Region::sublevel(v, 9.0).unwrap(), &cfg).unwrap();
        assert_relative_eq!(r.value, 243.0, max_relative = 1e-9);
        let root = |x: &[f64]| (x[0] + x[1]).sqrt();
        let r = integrate_region(root, &dom(&[[10., 3.]]), &cfg).unwrap();
        let radical = 4.0 * (13f64.powf(2.5) - 10f64.powf(2.5) - 3f64.powf(2.5)) / 15.0;
        assert_relative_eq!(r.value, radical, max_relative = 1e-8);
    }

    #[test]
    fn mc_oracle_examples() {
        let r = dom(&[[10., 3.]]);
        let one = mc_integrate(|_| 1.0, &r, 1_000_000, 7).unwrap();
        assert!((one.value - 30.0).abs() <= one.error_bound);
        let lin = mc_integrate(|x| x[0] + x[1], &r, 1_000_000, 7).unwrap();
        assert!((lin.value - 195.0).abs() <= lin.error_bound);
        let empty = dom(&[[10., 0.]]).intersect(dom(&[[0., 3.]]));
        let z = mc_integrate(|x| x[0] + x[1], &empty, 10_000, 1).unwrap();
        assert_eq!(z.value, 0.0);
        assert!(mc_integrate(|_| 1.0, &r, 10, 1).is_err());
    }

    #[test]
    fn mc_is_deterministic_across_execution_modes() {
        let r = dom(&[[4., 2.], [2., 5.]]);
        let a = mc_integrate_with(|x| x[0], &r, 200_000, 3, Execution::Parallel).unwrap();
        let b = mc_integrate_with(|x| x[0], &r, 200_000, 3, Execution::Sequential).unwrap();
        assert_eq!(a, b);
    }
}
