//! Reference-point scores: the signed radius of the ball around a reference
//! being that either reaches the set from above or fits inside it.

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::geometry::{complement_corners, contains_raw, geq, Being, CapabilitySet, CapabilitySpace};

use super::MeasureResult;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    #[default]
    Euclidean,
    WeightedEuclidean(Vec<f64>),
}

impl Metric {
    pub fn validate(&self, dims: usize) -> Result<()> {
        if let Metric::WeightedEuclidean(w) = self {
            check_dims(dims, w.len())?;
            if w.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
                return Err(Error::Invalid("metric weights must be positive".into()));
            }
        }
        Ok(())
    }

    /// Length of the difference vector `d`.
    pub fn norm(&self, d: impl Iterator<Item = f64>) -> f64 {
        match self {
            Metric::Euclidean => d.map(|x| x * x).sum::<f64>().sqrt(),
            Metric::WeightedEuclidean(w) => d.zip(w).map(|(x, w)| w * x * x).sum::<f64>().sqrt(),
        }
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        self.norm(a.iter().zip(b).map(|(x, y)| x - y))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Standard,
    Optimistic,
    Pessimistic,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Variant::Standard),
            "optimistic" => Ok(Variant::Optimistic),
            "pessimistic" => Ok(Variant::Pessimistic),
            _ => Err(Error::Invalid(format!("unknown variant '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GxConfig {
    pub k0: Being,
    #[serde(default)]
    pub metric: Metric,
    #[serde(default)]
    pub variant: Variant,
}

/// Score with the geometry behind it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GxOutcome {
    pub score: f64,
    /// Whether the reference being lies in the closure of the set.
    pub inside: bool,
    /// Point at which the radius is attained, if any.
    pub witness: Option<Vec<f64>>,
}

impl GxOutcome {
    pub fn radius(&self) -> f64 {
        self.score.abs()
    }
}

pub fn gx_score(set: &CapabilitySet, cfg: &GxConfig, space: &CapabilitySpace) -> Result<MeasureResult> {
    let o = gx_outcome(set, cfg, space)?;
    let mut r = MeasureResult::exact(o.score, "exact");
    r.note("branch", if o.inside { "positive" } else { "negative" });
    if let Some(w) = o.witness {
        r.note("witness", w);
    }
    Ok(r)
}

pub fn gx_outcome(set: &CapabilitySet, cfg: &GxConfig, space: &CapabilitySpace) -> Result<GxOutcome> {
    let k0 = cfg.k0.coords();
    check_dims(space.dims(), set.dims())?;
    check_dims(set.dims(), k0.len())?;
    cfg.metric.validate(k0.len())?;
    if !space.contains(&cfg.k0) {
        return Err(Error::OutOfRange(format!("reference being {} outside the space", cfg.k0)));
    }
    if set.is_polyline() {
        return Err(Error::Unsupported("reference-point scores on polyline sets".into()));
    }
    let m = &cfg.metric;
    let frontier = set.frontier();
    let inside = contains_raw(set, k0);
    let (score, witness) = match (inside, cfg.variant) {
        (false, Variant::Standard | Variant::Optimistic) => {
            // Closest point of the closure below k0 is the meet of some member with k0.
            let (d, w) = argmin(frontier.iter().map(|a| {
                let meet: Vec<f64> = a.coords().iter().zip(k0).map(|(x, k)| x.min(*k)).collect();
                (m.distance(k0, &meet), meet)
            }));
            (-d, w)
        }
        (false, Variant::Pessimistic) => {
            // Largest lower quarter-ball around k0 avoiding the closure.
            let corners = complement_corners(&frontier)?;
            let best = argmax(
                corners
                    .into_iter()
                    .filter(|c| c.iter().zip(k0).all(|(c, k)| c < k))
                    .map(|c| (m.distance(k0, &c), c)),
            );
            match best {
                Some((d, w)) => (-d, Some(w)),
                None => (0.0, None),
            }
        }
        (true, Variant::Standard | Variant::Pessimistic) => {
            // Largest upper quarter-ball around k0 inside the closure.
            let corners = complement_corners(&frontier)?;
            let (d, w) = argmin(corners.into_iter().map(|c| {
                let gap = c.iter().zip(k0).map(|(c, k)| (c - k).max(0.0));
                let d = m.norm(gap);
                let at: Vec<f64> = c.iter().zip(k0).map(|(c, k)| c.max(*k)).collect();
                (d, at)
            }));
            (d, w)
        }
        (true, Variant::Optimistic) => {
            let best = argmax(
                frontier
                    .iter()
                    .filter(|a| geq(a.coords(), k0))
                    .map(|a| (m.distance(k0, a.coords()), a.coords().to_vec())),
            );
            let (d, w) = best.expect("k0 is dominated by some frontier member");
            (d, Some(w))
        }
    };
    Ok(GxOutcome {
        score,
        inside,
        witness,
    })
}

fn argmin(it: impl Iterator<Item = (f64, Vec<f64>)>) -> (f64, Option<Vec<f64>>) {
    match it.min_by(|a, b| a.0.total_cmp(&b.0)) {
        Some((d, w)) => (d, Some(w)),
        None => (0.0, None),
    }
}

fn argmax(it: impl Iterator<Item = (f64, Vec<f64>)>) -> Option<(f64, Vec<f64>)> {
    it.max_by(|a, b| a.0.total_cmp(&b.0))
}
