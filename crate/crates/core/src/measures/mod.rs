//! Freedom measures over capability sets.

mod compromise;
mod extremes;
mod gx;
mod rank;
mod volume;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{CapabilitySet, CapabilitySpace};
use crate::par::Execution;
use crate::quadrature::{Estimate, QuadConfig};
use crate::valuation::{Sensitivity, ValueModel};

pub(crate) use compromise::ie_sum;
pub use compromise::{
    compromise_ie, compromise_ie_with, compromise_mc, compromise_region, compromise_sweep2d,
    IE_SIZE_GUARD,
};
pub use extremes::{level_region, phi_max, phi_min};
pub use gx::{gx_outcome, gx_score, GxConfig, GxOutcome, Metric, Variant};
pub use rank::{rank, RankEntry};
pub use volume::volume;

/// Score of one set under one measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureResult {
    pub score: f64,
    pub method: String,
    pub error_bound: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, Value>,
}

impl MeasureResult {
    pub fn exact(score: f64, method: &str) -> Self {
        MeasureResult {
            score,
            method: method.to_string(),
            error_bound: 0.0,
            diagnostics: BTreeMap::new(),
        }
    }

    pub(crate) fn from_estimate(e: Estimate, method: &str) -> Self {
        let mut r = MeasureResult::exact(e.value, method);
        r.error_bound = e.error_bound;
        r.note("evaluations", e.evaluations);
        r
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.diagnostics.insert(key.to_string(), value.into());
        self
    }
}

/// How the compromise integral is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Sweep in 2D, inclusion-exclusion otherwise, quadrature for polylines.
    #[default]
    Auto,
    InclusionExclusion,
    Sweep,
    Quadrature,
    MonteCarlo,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Algorithm::Auto,
            "ie" | "inclusion-exclusion" => Algorithm::InclusionExclusion,
            "sweep" => Algorithm::Sweep,
            "quadrature" => Algorithm::Quadrature,
            "mc" | "monte-carlo" => Algorithm::MonteCarlo,
            _ => return Err(Error::Invalid(format!("unknown algorithm '{s}'"))),
        })
    }
}

/// A measure selection.
#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    /// Reference-point score.
    Gx(GxConfig),
    /// Best value attained in the set.
    Max,
    /// Lowest value that cannot be attained.
    Min,
    /// Weighted integral over the closure of the set.
    Compromise(Algorithm),
    /// Weighted integral over the sublevel set at the best value.
    Instrumental { clip: bool },
    /// Weighted integral over the sublevel set at the lowest unattainable value.
    Intrinsic { clip: bool },
    /// Volume of the closure.
    Volume,
}

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::Gx(_) => "gx",
            Measure::Max => "max",
            Measure::Min => "min",
            Measure::Compromise(_) => "compromise",
            Measure::Instrumental { .. } => "instrumental",
            Measure::Intrinsic { .. } => "intrinsic",
            Measure::Volume => "volume",
        }
    }
}

/// Everything a measure needs besides the set itself.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub space: CapabilitySpace,
    pub value: ValueModel,
    pub sensitivity: Sensitivity,
    pub quad: QuadConfig,
    pub exec: Execution,
    /// Monte-Carlo sample count for [`Algorithm::MonteCarlo`].
    pub samples: usize,
}

impl Evaluator {
    pub fn new(space: CapabilitySpace, value: ValueModel, sensitivity: Sensitivity) -> Result<Self> {
        crate::error::check_dims(space.dims(), value.dims())?;
        Ok(Evaluator {
            space,
            value,
            sensitivity,
            quad: QuadConfig::default(),
            exec: Execution::default(),
            samples: 1_000_000,
        })
    }

    pub fn evaluate(&self, set: &CapabilitySet, measure: &Measure) -> Result<MeasureResult> {
        crate::error::check_dims(self.space.dims(), set.dims())?;
        let v = &self.value;
        match measure {
            Measure::Gx(cfg) => gx_score(set, cfg, &self.space),
            Measure::Max => phi_max(set, v),
            Measure::Min => phi_min(set, v, &self.space),
            Measure::Volume => volume(set),
            Measure::Compromise(alg) => self.compromise(set, *alg),
            Measure::Instrumental { clip } => {
                let t = phi_max(set, v)?.score;
                self.level(t, *clip, "instrumental")
            }
            Measure::Intrinsic { clip } => {
                let m = phi_min(set, v, &self.space)?;
                let mut r = self.level(m.score, *clip, "intrinsic")?;
                r.diagnostics.extend(m.diagnostics);
                Ok(r)
            }
        }
    }

    pub fn compromise(&self, set: &CapabilitySet, alg: Algorithm) -> Result<MeasureResult> {
        let (v, phi) = (&self.value, &self.sensitivity);
        match alg {
            Algorithm::Auto if set.is_polyline() => self.compromise(set, Algorithm::Quadrature),
            Algorithm::Auto if set.dims() == 2 => compromise_sweep2d(set, v, phi, &self.quad),
            Algorithm::Auto | Algorithm::InclusionExclusion => {
                compromise_ie_with(set, v, phi, self.exec)
            }
            Algorithm::Sweep => compromise_sweep2d(set, v, phi, &self.quad),
            Algorithm::Quadrature => {
                compromise_region(&crate::region::Region::dominance(set.clone()), v, phi, &self.quad)
            }
            Algorithm::MonteCarlo => compromise_mc(set, v, phi, self.samples, self.quad.seed, self.exec),
        }
    }

    /// Weighted integral over the sublevel set `{v <= t}`, optionally clipped
    /// to the capability space.
    pub fn level(&self, t: f64, clip: bool, method: &str) -> Result<MeasureResult> {
        let (v, phi) = (&self.value, &self.sensitivity);
        let mut r = if clip {
            let region = level_region(v, t, true, &self.space)?;
            let mut r = compromise_region(&region, v, phi, &self.quad)?;
            r.method = format!("{method}/clipped-quadrature");
            r
        } else {
            let val = crate::valuation::sublevel_integral(v, phi, t);
            let mut r = MeasureResult::exact(val, &format!("{method}/closed-form"));
            r.error_bound = 4.0 * f64::EPSILON * val.abs();
            r
        };
        r.note("level", t);
        Ok(r)
    }
}
