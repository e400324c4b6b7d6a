//! Axioms of the compromise measure as executable checks, on given instances
//! and on seeded random families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_dims, Error, Result};
use crate::geometry::{
    set_strong_dominates, set_weak_dominates, Being, CapabilitySet, CapabilitySpace,
};
use crate::measures::{compromise_region, phi_max, phi_min, Algorithm, Evaluator, MeasureResult};
use crate::par::{map_indexed, Execution};
use crate::region::Region;
use crate::valuation::{box_integral, vmax_on, Sensitivity, ValueModel};

/// Outcome of one axiom over one or more instances.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub tried: usize,
    /// Strict inequalities whose margin did not clear the error bounds.
    pub inconclusive: usize,
    pub failures: Vec<String>,
    pub tolerance: f64,
}

impl CheckReport {
    pub fn new(name: &str, tolerance: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            tried: 0,
            inconclusive: 0,
            failures: Vec::new(),
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.tried += other.tried;
        self.inconclusive += other.inconclusive;
        self.failures.extend(other.failures);
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

fn phi(ev: &Evaluator, set: &CapabilitySet) -> Result<MeasureResult> {
    ev.compromise(set, Algorithm::Auto)
}

/// Absolute slack for comparing two scores.
fn slack(tol: f64, a: &MeasureResult, b: &MeasureResult) -> f64 {
    tol * a.score.abs().max(b.score.abs()).max(1.0) + a.error_bound + b.error_bound
}

fn show(set: &CapabilitySet) -> String {
    let m: Vec<String> = set.members().iter().map(|b| b.to_string()).collect();
    format!("{{{}}}", m.join(", "))
}

/// Adding dominated beings changes neither the closure nor the score.
pub fn check_indifference(
    ev: &Evaluator,
    a: &CapabilitySet,
    b: &CapabilitySet,
    tol: f64,
) -> Result<CheckReport> {
    if !set_weak_dominates(a, b)? {
        return Err(Error::Precondition(format!("{} does not dominate {}", show(a), show(b))));
    }
    let mut rep = CheckReport::new("indifference", tol);
    rep.tried = 1;
    let joint = a.union(b)?;
    let (pa, pj) = (phi(ev, a)?, phi(ev, &joint)?);
    if (pa.score - pj.score).abs() > slack(tol, &pa, &pj) {
        rep.fail(format!(
            "A={} B={}: score(A u B)={} != score(A)={}",
            show(a),
            show(b),
            pj.score,
            pa.score
        ));
    }
    let (ra, rj) = (Region::dominance(a.clone()), Region::dominance(joint.clone()));
    let bbox = rj.bounding_box();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut probes: Vec<Vec<f64>> = b.members().iter().map(|m| m.coords().to_vec()).collect();
    probes.extend((0..256).map(|_| bbox.iter().map(|h| rng.random::<f64>() * h * 1.1).collect()));
    if let Some(p) = probes.iter().find(|p| ra.contains(p) != rj.contains(p)) {
        rep.fail(format!("A={} B={}: closures differ at {p:?}", show(a), show(b)));
    }
    Ok(rep)
}

/// Weak dominance implies a score at least as high; strong dominance a
/// strictly higher one, declared only when the margin clears the error bounds.
pub fn check_strong_monotonicity(
    ev: &Evaluator,
    a: &CapabilitySet,
    b: &CapabilitySet,
    tol: f64,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("strong-monotonicity", tol);
    if !set_weak_dominates(a, b)? {
        return Ok(rep);
    }
    rep.tried = 1;
    let (pa, pb) = (phi(ev, a)?, phi(ev, b)?);
    let margin = pa.score - pb.score;
    if margin < -slack(tol, &pa, &pb) {
        rep.fail(format!(
            "A={} >= B={} but {} < {}",
            show(a),
            show(b),
            pa.score,
            pb.score
        ));
    }
    if set_strong_dominates(a, b)? {
        if margin <= 0.0 {
            rep.fail(format!(
                "A={} >> B={} but margin {margin}",
                show(a),
                show(b)
            ));
        } else if margin <= pa.error_bound + pb.error_bound {
            rep.inconclusive += 1;
        }
    }
    Ok(rep)
}

/// Rescaling every set by `alpha` (with the value model rescaled to match)
/// multiplies every score by the product of `alpha`, so order is preserved.
pub fn check_scaling(
    ev: &Evaluator,
    a: &CapabilitySet,
    b: &CapabilitySet,
    alpha: &[f64],
    tol: f64,
) -> Result<CheckReport> {
    check_dims(a.dims(), alpha.len())?;
    let mut rep = CheckReport::new("scaling", tol);
    rep.tried = 1;
    let upper = ev.space.upper().scaled(alpha);
    let scaled = Evaluator {
        space: CapabilitySpace::new(upper)?,
        value: ev.value.rescaled(alpha)?,
        ..ev.clone()
    };
    let factor: f64 = alpha.iter().product();
    let (pa, pb) = (phi(ev, a)?, phi(ev, b)?);
    let (qa, qb) = (phi(&scaled, &a.scaled(alpha)?)?, phi(&scaled, &b.scaled(alpha)?)?);
    for (name, p, q) in [("A", &pa, &qa), ("B", &pb, &qb)] {
        let want = factor * p.score;
        let slack = tol * want.abs().max(1.0) + factor * p.error_bound + q.error_bound;
        if (q.score - want).abs() > slack {
            rep.fail(format!(
                "{name}={}: alpha={alpha:?}, scaled score {} != {factor} * {}",
                show(if name == "A" { a } else { b }),
                q.score,
                p.score
            ));
        }
    }
    let before = pa.score - pb.score;
    let after = qa.score - qb.score;
    if before.abs() > slack(tol, &pa, &pb) && before.signum() != after.signum() {
        rep.fail(format!(
            "A={} B={}: order flipped under alpha={alpha:?}",
            show(a),
            show(b)
        ));
    }
    Ok(rep)
}

/// The score lies between the scores of the clipped sublevel sets at the
/// lowest unattainable and the best attained value.
pub fn check_bounded(ev: &Evaluator, a: &CapabilitySet, tol: f64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("bounded", tol);
    rep.tried = 1;
    ev.space.check_set(a)?;
    let lo_t = phi_min(a, &ev.value, &ev.space)?.score;
    let hi_t = phi_max(a, &ev.value)?.score;
    let lo = ev.level(lo_t, true, "intrinsic")?;
    let hi = ev.level(hi_t, true, "instrumental")?;
    let mid = phi(ev, a)?;
    if mid.score < lo.score - slack(tol, &mid, &lo) || mid.score > hi.score + slack(tol, &mid, &hi) {
        rep.fail(format!(
            "A={}: {} <= {} <= {} violated",
            show(a),
            lo.score,
            mid.score,
            hi.score
        ));
    }
    Ok(rep)
}

/// Result of the continuity construction.
#[derive(Clone, Debug)]
pub struct Intermediate {
    pub t_star: f64,
    /// `(A ∩ C) ∪ ((A ∪ C) ∩ {v <= t*})` on closures.
    pub region: Region,
    pub score: f64,
    pub error_bound: f64,
    pub evaluations: usize,
}

fn intermediate_region(a: &Region, c: &Region, v: &ValueModel, t: f64) -> Result<Region> {
    let inter = a.clone().intersect(c.clone());
    let uni = a.clone().union(c.clone());
    Ok(inter.union(uni.intersect(Region::sublevel(v.clone(), t)?)))
}

/// Points of the guard grid used before bisection.
pub const MONOTONICITY_GRID: usize = 64;

/// Finds a region between the closures of `C` and `A` whose score is
/// `lambda` within `tol`.
pub fn intermediate_set(
    ev: &Evaluator,
    a: &CapabilitySet,
    c: &CapabilitySet,
    lambda: f64,
    tol: f64,
) -> Result<Intermediate> {
    check_dims(a.dims(), c.dims())?;
    let (pa, pc) = (phi(ev, a)?.score, phi(ev, c)?.score);
    if !(pa > pc) {
        return Err(Error::Precondition(format!(
            "need score(A) > score(C), got {pa} and {pc}"
        )));
    }
    if !(lambda >= pc && lambda <= pa) {
        return Err(Error::OutOfRange(format!("lambda {lambda} outside [{pc}, {pa}]")));
    }
    let (ra, rc) = (Region::dominance(a.clone()), Region::dominance(c.clone()));
    let v = &ev.value;
    let t_max = vmax_on(&ra.clone().union(rc.clone()), v)?;
    let mut evals = 0;
    let mut g = |t: f64| -> Result<(f64, f64)> {
        evals += 1;
        let r = compromise_region(&intermediate_region(&ra, &rc, v, t)?, v, &ev.sensitivity, &ev.quad)?;
        Ok((r.score, r.error_bound))
    };
    let grid: Vec<f64> = (0..MONOTONICITY_GRID)
        .map(|i| t_max * i as f64 / (MONOTONICITY_GRID - 1) as f64)
        .collect();
    let mut vals = Vec::with_capacity(grid.len());
    for &t in &grid {
        vals.push(g(t)?);
    }
    for (i, w) in vals.windows(2).enumerate() {
        if w[1].0 < w[0].0 - (w[0].1 + w[1].1) {
            return Err(Error::Precondition(format!(
                "G is not monotone between t={} and t={}",
                grid[i],
                grid[i + 1]
            )));
        }
    }
    let done = |t: f64, (s, e): (f64, f64), evaluations| -> Result<Intermediate> {
        Ok(Intermediate {
            t_star: t,
            region: intermediate_region(&ra, &rc, v, t)?,
            score: s,
            error_bound: e,
            evaluations,
        })
    };
    let mut bracket = None;
    for i in 0..grid.len() {
        if (vals[i].0 - lambda).abs() <= tol {
            return done(grid[i], vals[i], MONOTONICITY_GRID);
        }
        if i + 1 < grid.len() && vals[i].0 < lambda && lambda < vals[i + 1].0 {
            bracket = Some((grid[i], grid[i + 1]));
        }
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        Error::OutOfRange(format!("lambda {lambda} not reached by G on [0, {t_max}]"))
    })?;
    let mut best = (lo, vals[0]);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        if (gm.0 - lambda).abs() < (best.1 .0 - lambda).abs() {
            best = (mid, gm);
        }
        if (gm.0 - lambda).abs() <= tol || hi - lo <= f64::EPSILON * t_max {
            break;
        }
        if gm.0 < lambda {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let n = evals;
    let out = done(best.0, best.1, n)?;
    if (out.score - lambda).abs() > tol {
        return Err(Error::ToleranceUnmet(crate::quadrature::Estimate {
            value: out.score,
            error_bound: (out.score - lambda).abs(),
            evaluations: n as u64,
        }));
    }
    Ok(out)
}

/// Finite capability set approximating the frontier of a 2D region: the
/// region's height sampled every `eps` along the first axis.
pub fn epsilon_net(region: &Region, eps: f64) -> Result<CapabilitySet> {
    check_dims(2, region.dims())?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Invalid(format!("net spacing {eps} must be positive")));
    }
    let shape = region.shape();
    let width = shape.extent().unwrap_or(0.0);
    let steps = (width / eps).ceil() as usize;
    if steps > 1_000_000 {
        return Err(Error::SizeGuard {
            what: "epsilon net",
            size: steps,
            limit: 1_000_000,
        });
    }
    let mut pts = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let x = (i as f64 * eps).min(width);
        let h = shape.slice(x).extent().unwrap_or(0.0);
        pts.push(Being::new(vec![x, h])?);
    }
    let set = CapabilitySet::points(pts)?;
    CapabilitySet::points(set.frontier())
}

/// Checks the continuity construction: score within `tol` of `lambda` and
/// `A ∩ C ⊆ B ⊆ A ∪ C` on random probes.
pub fn check_intermediate(
    ev: &Evaluator,
    a: &CapabilitySet,
    c: &CapabilitySet,
    lambda: f64,
    tol: f64,
    probes: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("continuity", tol);
    rep.tried = 1;
    let r = intermediate_set(ev, a, c, lambda, tol)?;
    if (r.score - lambda).abs() > tol {
        rep.fail(format!("A={} C={}: score {} != lambda {lambda}", show(a), show(c), r.score));
    }
    let (ra, rc) = (Region::dominance(a.clone()), Region::dominance(c.clone()));
    let inter = ra.clone().intersect(rc.clone());
    let uni = ra.union(rc);
    let bbox = uni.bounding_box();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..probes {
        let x: Vec<f64> = bbox.iter().map(|h| rng.random::<f64>() * h).collect();
        let inb = r.region.contains(&x);
        if (inter.contains(&x) && !inb) || (inb && !uni.contains(&x)) {
            rep.fail(format!("A={} C={}: containment fails at {x:?}", show(a), show(c)));
            break;
        }
    }
    Ok(rep)
}

/// Dominated points do not change the score: inclusion-exclusion over all
/// points equals the score of the frontier.
pub fn check_pareto_reduction(ev: &Evaluator, points: &[Being], tol: f64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("pareto-reduction", tol);
    rep.tried = 1;
    let all = CapabilitySet::points(points.to_vec())?;
    let front = CapabilitySet::points(all.frontier())?;
    let clipped: Vec<Being> = all
        .members()
        .iter()
        .filter(|b| b.coords().iter().all(|c| *c > 0.0))
        .cloned()
        .collect();
    let (raw, err) = crate::measures::ie_sum(
        &clipped,
        |lo, hi| box_integral(&ev.value, &ev.sensitivity, lo, hi),
        ev.exec,
    )?;
    let f = phi(ev, &front)?;
    let slack = tol * raw.abs().max(1.0) + err + f.error_bound;
    if (raw - f.score).abs() > slack {
        rep.fail(format!(
            "points={}: raw {raw} != frontier {}",
            show(&all),
            f.score
        ));
    }
    Ok(rep)
}

/// Seeded generator of random capability sets inside `[0, range]^dims`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StaircaseGen {
    pub seed: u64,
    pub max_points: usize,
    pub dims: usize,
    pub range: f64,
}

impl StaircaseGen {
    /// Independent stream for trial `trial`.
    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(trial);
        r
    }

    pub fn space(&self) -> CapabilitySpace {
        CapabilitySpace::new(Being::new(vec![self.range; self.dims]).expect("positive range"))
            .expect("positive range")
    }

    fn coord(&self, rng: &mut ChaCha8Rng) -> f64 {
        // (0, range]
        self.range * (1.0 - rng.random::<f64>())
    }

    /// An antichain: in 2D a staircase of 1..=max_points steps, otherwise the
    /// frontier of uniform points.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> CapabilitySet {
        let n = rng.random_range(1..=self.max_points);
        let pts: Vec<Being> = if self.dims == 2 {
            let mut xs: Vec<f64> = (0..n).map(|_| self.coord(rng)).collect();
            let mut ys: Vec<f64> = (0..n).map(|_| self.coord(rng)).collect();
            xs.sort_by(f64::total_cmp);
            ys.sort_by(|a, b| b.total_cmp(a));
            xs.into_iter().zip(ys).map(|(x, y)| Being::new(vec![x, y]).unwrap()).collect()
        } else {
            (0..n)
                .map(|_| Being::new((0..self.dims).map(|_| self.coord(rng)).collect()).unwrap())
                .collect()
        };
        let set = CapabilitySet::points(pts).expect("nonempty");
        CapabilitySet::points(set.frontier()).expect("nonempty")
    }

    /// Random points of the closure of `a`, each a member of `a` shrunk
    /// coordinatewise by factors in `[low, 1]`.
    pub fn sample_within(
        &self,
        a: &CapabilitySet,
        n: usize,
        low: f64,
        rng: &mut ChaCha8Rng,
    ) -> CapabilitySet {
        let m = a.members();
        let pts: Vec<Being> = (0..n.max(1))
            .map(|_| {
                let base = &m[rng.random_range(0..m.len())];
                let c = base
                    .coords()
                    .iter()
                    .map(|x| x * (low + (1.0 - low) * rng.random::<f64>()))
                    .collect();
                Being::new(c).unwrap()
            })
            .collect();
        CapabilitySet::points(pts).expect("nonempty")
    }
}

/// Parameters of the random axiom suite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_points: usize,
    /// Also draw 3D instances for the closed-form checks.
    pub three_d: bool,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 200,
            seed: 7,
            tol: 1e-9,
            max_points: 12,
            three_d: true,
            exec: Execution::default(),
        }
    }
}

/// Random value model and sensitivity for a trial.
fn random_model(dims: usize, rng: &mut ChaCha8Rng) -> (ValueModel, Sensitivity) {
    let w = (0..dims).map(|_| 0.5 + 1.5 * rng.random::<f64>()).collect();
    let phi = match rng.random_range(0..4) {
        0 => Sensitivity::Power(0.5),
        1 => Sensitivity::Power(1.0),
        2 => Sensitivity::Power(2.0),
        _ => Sensitivity::Constant(1.5),
    };
    (ValueModel::weighted_sum(w).expect("positive weights"), phi)
}

const SUITE_RANGE: f64 = 10.0;

fn trial_setup(cfg: &SuiteConfig, check: u64, trial: usize, allow_3d: bool) -> (StaircaseGen, ChaCha8Rng, Evaluator) {
    let dims = if allow_3d && cfg.three_d && trial % 4 == 3 { 3 } else { 2 };
    let gen = StaircaseGen {
        seed: cfg.seed ^ check.wrapping_mul(0x9E37_79B9_7F4A_7C15),
        max_points: if dims == 2 { cfg.max_points } else { cfg.max_points.min(8) },
        dims,
        range: SUITE_RANGE,
    };
    let mut rng = gen.rng(trial as u64);
    let (v, phi) = random_model(dims, &mut rng);
    let mut ev = Evaluator::new(gen.space(), v, phi).expect("matching dims");
    ev.exec = Execution::Sequential;
    (gen, rng, ev)
}

fn run_trials<F>(cfg: &SuiteConfig, name: &str, f: F) -> CheckReport
where
    F: Fn(usize) -> Result<CheckReport> + Sync + Send,
{
    let parts = map_indexed(cfg.exec, cfg.trials, |i| match f(i) {
        Ok(r) => r,
        Err(e) => {
            let mut r = CheckReport::new(name, cfg.tol);
            r.tried = 1;
            r.fail(format!("trial {i}: {e}"));
            r
        }
    });
    let mut rep = CheckReport::new(name, cfg.tol);
    for p in parts {
        rep.merge(p);
    }
    rep
}

pub fn random_indifference(cfg: &SuiteConfig) -> CheckReport {
    run_trials(cfg, "indifference", |i| {
        let (gen, mut rng, ev) = trial_setup(cfg, 1, i, true);
        let a = gen.sample(&mut rng);
        let n = rng.random_range(1..=6);
        let b = gen.sample_within(&a, n, 0.0, &mut rng);
        check_indifference(&ev, &a, &b, cfg.tol)
    })
}

pub fn random_strong_monotonicity(cfg: &SuiteConfig) -> CheckReport {
    run_trials(cfg, "strong-monotonicity", |i| {
        let (gen, mut rng, ev) = trial_setup(cfg, 2, i, true);
        let a = gen.sample(&mut rng);
        let n = a.members().len();
        // Alternate between strongly dominated subsets and sets that share
        // frontier members with A.
        let b = if i % 2 == 0 {
            gen.sample_within(&a, n, 0.3, &mut rng)
        } else {
            let shrunk = gen.sample_within(&a, n, 0.3, &mut rng);
            let keep = &a.members()[rng.random_range(0..n)];
            shrunk.union(&CapabilitySet::points(vec![keep.clone()])?)?
        };
        let mut rep = check_strong_monotonicity(&ev, &a, &b, cfg.tol)?;
        // And the reverse direction, where dominance usually fails.
        rep.merge(check_strong_monotonicity(&ev, &b, &a, cfg.tol)?);
        Ok(rep)
    })
}

pub fn random_scaling(cfg: &SuiteConfig) -> CheckReport {
    run_trials(cfg, "scaling", |i| {
        let (gen, mut rng, ev) = trial_setup(cfg, 3, i, true);
        let a = gen.sample(&mut rng);
        let b = gen.sample(&mut rng);
        let alpha: Vec<f64> = (0..gen.dims).map(|_| 0.25 + 3.75 * rng.random::<f64>()).collect();
        check_scaling(&ev, &a, &b, &alpha, cfg.tol)
    })
}

pub fn random_bounded(cfg: &SuiteConfig) -> CheckReport {
    run_trials(cfg, "bounded", |i| {
        let (gen, mut rng, ev) = trial_setup(cfg, 4, i, false);
        let a = gen.sample(&mut rng);
        check_bounded(&ev, &a, cfg.tol)
    })
}

pub fn random_pareto_reduction(cfg: &SuiteConfig) -> CheckReport {
    run_trials(cfg, "pareto-reduction", |i| {
        let (gen, mut rng, ev) = trial_setup(cfg, 5, i, true);
        let a = gen.sample(&mut rng);
        let extra = rng.random_range(1..=6);
        let b = gen.sample_within(&a, extra, 0.0, &mut rng);
        let mut pts = a.members().to_vec();
        pts.extend_from_slice(b.members());
        check_pareto_reduction(&ev, &pts, cfg.tol)
    })
}

/// One random `(A, C, lambda)` triple for the continuity construction, with
/// `score(A) > score(C)`.
pub fn random_continuity_triple(
    cfg: &SuiteConfig,
    trial: usize,
) -> Result<(Evaluator, CapabilitySet, CapabilitySet, f64)> {
    let (gen, mut rng, ev) = trial_setup(cfg, 6, trial, false);
    let gen = StaircaseGen {
        max_points: gen.max_points.min(6),
        ..gen
    };
    loop {
        let a = gen.sample(&mut rng);
        let c = gen.sample(&mut rng);
        let (pa, pc) = (phi(&ev, &a)?.score, phi(&ev, &c)?.score);
        if (pa - pc).abs() > 1e-3 * pa.abs().max(pc.abs()) {
            let (a, c, hi, lo) = if pa > pc { (a, c, pa, pc) } else { (c, a, pc, pa) };
            let lambda = lo + rng.random::<f64>() * (hi - lo);
            return Ok((ev, a, c, lambda));
        }
    }
}

pub fn random_continuity(cfg: &SuiteConfig, probes: usize) -> CheckReport {
    run_trials(cfg, "continuity", |i| {
        let (ev, a, c, lambda) = random_continuity_triple(cfg, i)?;
        let (pa, pc) = (phi(&ev, &a)?.score, phi(&ev, &c)?.score);
        let tol = cfg.tol.max(1e-4) * (pa - pc);
        let mut rep = check_intermediate(&ev, &a, &c, lambda, tol, probes, cfg.seed ^ i as u64)?;
        rep.tolerance = cfg.tol.max(1e-4);
        Ok(rep)
    })
}

/// Every random check, in a fixed order. Continuity runs on a tenth of the
/// trials since each instance needs dozens of region integrals.
pub fn random_suite(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let light = SuiteConfig {
        trials: cfg.trials.div_ceil(10),
        ..*cfg
    };
    vec![
        random_indifference(cfg),
        random_strong_monotonicity(cfg),
        random_scaling(cfg),
        random_bounded(cfg),
        random_pareto_reduction(cfg),
        random_continuity(&light, 1000),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(c: &[f64]) -> Being {
        Being::new(c.to_vec()).unwrap()
    }

    fn pts(c: &[[f64; 2]]) -> CapabilitySet {
        CapabilitySet::points(c.iter().map(|p| b(p)).collect()).unwrap()
    }

    fn ev(gamma: f64) -> Evaluator {
        let space = CapabilitySpace::new(b(&[10., 10.])).unwrap();
        Evaluator::new(space, ValueModel::sum(2), Sensitivity::power(gamma).unwrap()).unwrap()
    }

    #[test]
    fn indifference_examples() {
        let a = pts(&[[8., 3.], [5., 5.], [3., 7.]]);
        let inner = pts(&[[4., 2.], [1., 6.], [5., 5.]]);
        assert!(check_indifference(&ev(1.), &a, &inner, 1e-9).unwrap().passed());
        assert!(check_indifference(&ev(1.), &a, &a, 1e-9).unwrap().passed());
        let r = check_indifference(&ev(1.), &pts(&[[10., 3.]]), &pts(&[[2., 10.]]), 1e-9);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn monotonicity_examples() {
        let r = check_strong_monotonicity(&ev(1.), &pts(&[[2., 2.]]), &pts(&[[1., 1.]]), 1e-9).unwrap();
        assert!(r.passed() && r.tried == 1 && r.inconclusive == 0);
        let r = check_strong_monotonicity(&ev(1.), &pts(&[[1., 1.], [2., 0.]]), &pts(&[[1., 1.]]), 1e-9)
            .unwrap();
        assert!(r.passed());
    }

    #[test]
    fn scaling_example() {
        let e = ev(1.);
        let r = check_scaling(&e, &pts(&[[10., 3.]]), &pts(&[[2., 10.], [5., 5.]]), &[2., 3.], 1e-9).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let scaled = Evaluator {
            value: e.value.rescaled(&[2., 3.]).unwrap(),
            ..e.clone()
        };
        let s = phi(&scaled, &pts(&[[20., 9.]])).unwrap().score;
        assert!((s - 1170.0).abs() < 1e-9);
    }

    #[test]
    fn bounded_example3() {
        let e = ev(1.);
        let a = pts(&[[10., 3.]]);
        assert!(check_bounded(&e, &a, 1e-9).unwrap().passed());
        let lo = e.level(3.0, true, "x").unwrap().score;
        let hi = e.level(13.0, true, "x").unwrap().score;
        assert!((lo - 9.0).abs() < 1e-9 && (hi - 1873.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn intermediate_midpoint() {
        let e = ev(1.);
        let (a, c) = (pts(&[[10., 3.]]), pts(&[[5., 5.]]));
        let (pa, pc) = (195.0, 125.0);
        let lambda = 0.5 * (pa + pc);
        let tol = 1e-4 * (pa - pc);
        let r = intermediate_set(&e, &a, &c, lambda, tol).unwrap();
        assert!((r.score - lambda).abs() <= tol);
        assert!(check_intermediate(&e, &a, &c, lambda, tol, 2000, 1).unwrap().passed());
        let low = intermediate_set(&e, &a, &c, pc, tol).unwrap();
        assert!((low.score - pc).abs() <= tol);
        assert!(matches!(
            intermediate_set(&e, &a, &c, 300.0, tol),
            Err(Error::OutOfRange(_))
        ));
        let net = epsilon_net(&r.region, 0.05).unwrap();
        assert!(net.members().iter().all(|p| r.region.contains(p.coords())));
    }

    #[test]
    fn pareto_reduction_example() {
        let r = check_pareto_reduction(&ev(2.), &[b(&[5., 3.]), b(&[5., 9.])], 1e-9).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn small_random_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig {
            trials: 24,
            ..SuiteConfig::default()
        };
        let a = random_suite(&cfg);
        for r in &a {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
            assert!(r.tried > 0);
        }
        let seq = SuiteConfig {
            exec: Execution::Sequential,
            ..cfg
        };
        assert_eq!(a, random_suite(&seq));
    }
}
