use serde::Serialize;

use crate::error::{Error, Result};

use super::MeasureResult;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankEntry {
    /// 1-based position; tied entries share it.
    pub position: usize,
    pub name: String,
    pub score: f64,
    pub error_bound: f64,
    /// Whether this entry is tied with the one ranked just above it.
    pub tied: bool,
}

/// Orders scored sets by decreasing score. Neighbours whose scores differ by
/// no more than their combined error bounds are reported as tied (exact scores
/// tie only on equality); ties keep input order.
pub fn rank(scored: &[(String, MeasureResult)]) -> Result<Vec<RankEntry>> {
    if scored.is_empty() {
        return Err(Error::Empty("ranking"));
    }
    if let Some((name, _)) = scored.iter().find(|(_, r)| !r.score.is_finite()) {
        return Err(Error::Invalid(format!("score of '{name}' is not finite")));
    }
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&i, &j| scored[j].1.score.total_cmp(&scored[i].1.score));
    let mut out: Vec<RankEntry> = Vec::with_capacity(order.len());
    for (k, &i) in order.iter().enumerate() {
        let (name, r) = &scored[i];
        let tied = out.last().is_some_and(|p: &RankEntry| {
            (p.score - r.score).abs() <= p.error_bound + r.error_bound
        });
        let position = if tied { out[k - 1].position } else { k + 1 };
        out.push(RankEntry {
            position,
            name: name.clone(),
            score: r.score,
            error_bound: r.error_bound,
            tied,
        });
    }
    Ok(out)
}
