//! Dominance geometry on beings, finite capability sets and 2D polyline frontiers.
//!
//! Comparisons are exact on `f64` values. A dominance relation with slack would
//! stop being transitive, so none is used anywhere in this module.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};

/// A vector of non-negative functioning levels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Being(Vec<f64>);

impl Being {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("being coordinates"));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::Invalid(format!(
                "being coordinate {bad} is not a finite non-negative number"
            )));
        }
        Ok(Being(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dims(&self) -> usize {
        self.0.len()
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Being) -> Being {
        Being(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.min(*b))
                .collect(),
        )
    }

    /// Componentwise product with positive factors.
    pub fn scaled(&self, factors: &[f64]) -> Being {
        Being(self.0.iter().zip(factors).map(|(a, f)| a * f).collect())
    }
}

impl TryFrom<Vec<f64>> for Being {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Being::new(v)
    }
}

impl From<Being> for Vec<f64> {
    fn from(b: Being) -> Self {
        b.0
    }
}

impl fmt::Display for Being {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `a >= b` componentwise.
pub fn weak_dominates(a: &Being, b: &Being) -> Result<bool> {
    check_dims(a.dims(), b.dims())?;
    Ok(geq(a.coords(), b.coords()))
}

/// `a >= b` componentwise with at least one strict coordinate.
pub fn strict_dominates(a: &Being, b: &Being) -> Result<bool> {
    check_dims(a.dims(), b.dims())?;
    Ok(geq(a.coords(), b.coords()) && a != b)
}

pub(crate) fn geq(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// Box-shaped capability space `[0, upper]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapabilitySpace {
    upper: Being,
}

impl CapabilitySpace {
    pub fn new(upper: Being) -> Result<Self> {
        if upper.coords().iter().any(|u| *u <= 0.0) {
            return Err(Error::Invalid(format!(
                "capability space corner {upper} must be strictly positive"
            )));
        }
        Ok(CapabilitySpace { upper })
    }

    pub fn upper(&self) -> &Being {
        &self.upper
    }

    pub fn dims(&self) -> usize {
        self.upper.dims()
    }

    pub fn contains(&self, x: &Being) -> bool {
        x.dims() == self.dims() && geq(self.upper.coords(), x.coords())
    }

    /// Checks that every member of `set` lies inside the space.
    pub fn check_set(&self, set: &CapabilitySet) -> Result<()> {
        check_dims(self.dims(), set.dims())?;
        match set.members().iter().find(|m| !self.contains(m)) {
            Some(m) => Err(Error::Invalid(format!(
                "being {m} lies outside the capability space {}",
                self.upper
            ))),
            None => Ok(()),
        }
    }

    /// The whole space as a capability set.
    pub fn as_set(&self) -> CapabilitySet {
        CapabilitySet::Points(vec![self.upper.clone()])
    }
}

/// A finite point set or a 2D polyline frontier.
#[derive(Clone, Debug, PartialEq)]
pub enum CapabilitySet {
    Points(Vec<Being>),
    /// Vertices ordered by strictly increasing first and strictly decreasing
    /// second coordinate.
    Polyline2D(Vec<Being>),
}

impl CapabilitySet {
    /// Builds a finite set, dropping exact duplicates.
    pub fn points(points: Vec<Being>) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("capability set"))?;
        let dims = first.dims();
        let mut out: Vec<Being> = Vec::with_capacity(points.len());
        for p in points {
            check_dims(dims, p.dims())?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(CapabilitySet::Points(out))
    }

    /// Builds a 2D polyline, sorting vertices by the first coordinate.
    pub fn polyline(vertices: Vec<Being>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Empty("polyline"));
        }
        let mut v: Vec<Being> = Vec::with_capacity(vertices.len());
        for p in vertices {
            check_dims(2, p.dims())?;
            if !v.contains(&p) {
                v.push(p);
            }
        }
        v.sort_by(|a, b| a.x().total_cmp(&b.x()));
        for w in v.windows(2) {
            if !(w[0].x() < w[1].x() && w[0].y() > w[1].y()) {
                return Err(Error::Invalid(format!(
                    "polyline vertices {} and {} are not strictly monotone",
                    w[0], w[1]
                )));
            }
        }
        Ok(CapabilitySet::Polyline2D(v))
    }

    pub fn dims(&self) -> usize {
        self.members()[0].dims()
    }

    /// Point members, or polyline vertices.
    pub fn members(&self) -> &[Being] {
        match self {
            CapabilitySet::Points(p) | CapabilitySet::Polyline2D(p) => p,
        }
    }

    pub fn is_polyline(&self) -> bool {
        matches!(self, CapabilitySet::Polyline2D(_))
    }

    /// Pareto frontier of a point set; polyline vertices are returned as is.
    pub fn frontier(&self) -> Vec<Being> {
        match self {
            CapabilitySet::Points(p) => frontier_of(p),
            CapabilitySet::Polyline2D(v) => v.clone(),
        }
    }

    pub fn scaled(&self, factors: &[f64]) -> Result<Self> {
        check_dims(self.dims(), factors.len())?;
        if factors.iter().any(|f| !(*f > 0.0) || !f.is_finite()) {
            return Err(Error::Invalid("scaling factors must be positive".into()));
        }
        let m = self.members().iter().map(|b| b.scaled(factors)).collect();
        match self {
            CapabilitySet::Points(_) => CapabilitySet::points(m),
            CapabilitySet::Polyline2D(_) => CapabilitySet::polyline(m),
        }
    }

    /// Union of two point sets.
    pub fn union(&self, other: &CapabilitySet) -> Result<Self> {
        check_dims(self.dims(), other.dims())?;
        if self.is_polyline() || other.is_polyline() {
            return Err(Error::Unsupported("union of polyline sets".into()));
        }
        let mut all = self.members().to_vec();
        all.extend_from_slice(other.members());
        CapabilitySet::points(all)
    }
}

fn frontier_of(points: &[Being]) -> Vec<Being> {
    points
        .iter()
        .filter(|p| {
            !points
                .iter()
                .any(|q| geq(q.coords(), p.coords()) && q != *p)
        })
        .cloned()
        .collect()
}

/// Maximal subset under strict dominance, in input order without duplicates.
pub fn pareto_frontier(points: &[Being]) -> Result<Vec<Being>> {
    let set = CapabilitySet::points(points.to_vec())?;
    Ok(set.frontier())
}

/// Frontier of a 2D point set sorted by increasing first coordinate (so the
/// second coordinate strictly decreases).
pub fn staircase(points: &[Being]) -> Vec<Being> {
    let mut f = frontier_of(points);
    f.sort_by(|a, b| a.x().total_cmp(&b.x()).then(b.y().total_cmp(&a.y())));
    f
}

/// Upper envelope of a polyline at abscissa `x`, or `None` right of its last
/// vertex.
pub(crate) fn polyline_height(vertices: &[Being], x: f64) -> Option<f64> {
    let first = vertices.first()?;
    let last = vertices.last()?;
    if x > last.x() {
        return None;
    }
    if x <= first.x() {
        return Some(first.y());
    }
    let i = vertices.partition_point(|v| v.x() < x);
    let (a, b) = (&vertices[i - 1], &vertices[i]);
    if b.x() == x {
        return Some(b.y());
    }
    let s = (x - a.x()) / (b.x() - a.x());
    Some(a.y() + s * (b.y() - a.y()))
}

/// Membership of `x` in the positive domination closure of `set`.
pub fn pdc_contains(set: &CapabilitySet, x: &Being) -> Result<bool> {
    check_dims(set.dims(), x.dims())?;
    Ok(contains_raw(set, x.coords()))
}

pub(crate) fn contains_raw(set: &CapabilitySet, x: &[f64]) -> bool {
    match set {
        CapabilitySet::Points(p) => p.iter().any(|a| geq(a.coords(), x)),
        CapabilitySet::Polyline2D(v) => {
            polyline_height(v, x[0]).is_some_and(|h| x[1] <= h)
        }
    }
}

/// Open quadrants `{x > c}` whose union is the complement of a 2D staircase's
/// closure, as apex corners. Boundary quadrants use 0 for the free coordinate.
pub(crate) fn staircase_corners(stairs: &[Being]) -> Vec<[f64; 2]> {
    let mut c = Vec::with_capacity(stairs.len() + 1);
    c.push([0.0, stairs[0].y()]);
    for w in stairs.windows(2) {
        c.push([w[0].x(), w[1].y()]);
    }
    c.push([stairs[stairs.len() - 1].x(), 0.0]);
    c
}

/// Upper bound on the candidate grid walked by [`complement_corners`].
pub const CORNER_GRID_LIMIT: usize = 2_000_000;

/// Apexes `c` of open orthants `{x > c}` contained in the complement of the
/// closure of a finite set, with coordinates drawn from the frontier
/// coordinates and 0. Every minimal apex is included.
pub fn complement_corners(frontier: &[Being]) -> Result<Vec<Vec<f64>>> {
    let first = frontier.first().ok_or(Error::Empty("frontier"))?;
    let dims = first.dims();
    if dims == 2 {
        let stairs = staircase(frontier);
        return Ok(staircase_corners(&stairs)
            .into_iter()
            .map(|c| c.to_vec())
            .collect());
    }
    let axes: Vec<Vec<f64>> = (0..dims)
        .map(|h| {
            let mut vals: Vec<f64> = std::iter::once(0.0)
                .chain(frontier.iter().map(|a| a.coords()[h]))
                .collect();
            vals.sort_by(f64::total_cmp);
            vals.dedup();
            vals
        })
        .collect();
    let size = axes
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.len()))
        .unwrap_or(usize::MAX);
    if size > CORNER_GRID_LIMIT {
        return Err(Error::SizeGuard {
            what: "complement corner grid",
            size,
            limit: CORNER_GRID_LIMIT,
        });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; dims];
    let mut c = vec![0.0; dims];
    loop {
        for h in 0..dims {
            c[h] = axes[h][idx[h]];
        }
        // x slightly above c escapes every a iff each a has some c_h >= a_h
        let open = frontier
            .iter()
            .all(|a| c.iter().zip(a.coords()).any(|(ch, ah)| ch >= ah));
        if open {
            out.push(c.clone());
        }
        let mut h = 0;
        loop {
            if h == dims {
                return Ok(out);
            }
            idx[h] += 1;
            if idx[h] < axes[h].len() {
                break;
            }
            idx[h] = 0;
            h += 1;
        }
    }
}

/// `A >= B`: every member of `B` lies in the closure of `A`.
pub fn set_weak_dominates(a: &CapabilitySet, b: &CapabilitySet) -> Result<bool> {
    check_dims(a.dims(), b.dims())?;
    Ok(match b {
        CapabilitySet::Points(pts) => pts.iter().all(|p| contains_raw(a, p.coords())),
        CapabilitySet::Polyline2D(verts) => polyline_within(a, verts),
    })
}

fn polyline_within(a: &CapabilitySet, verts: &[Being]) -> bool {
    if !verts.iter().all(|p| contains_raw(a, p.coords())) {
        return false;
    }
    match a {
        CapabilitySet::Points(pts) => {
            // a segment leaves the staircase iff it enters some open notch quadrant
            let stairs = staircase(pts);
            let corners = staircase_corners(&stairs);
            let first = [f64::NEG_INFINITY, stairs[0].y()];
            let last = [stairs[stairs.len() - 1].x(), f64::NEG_INFINITY];
            let n = corners.len();
            let quads = std::iter::once(first)
                .chain(corners[1..n - 1].iter().copied())
                .chain(std::iter::once(last));
            let quads: Vec<[f64; 2]> = quads.collect();
            verts.windows(2).all(|w| {
                quads.iter().all(|c| {
                    if !(c[0] < w[1].x()) {
                        return true;
                    }
                    let xs = c[0].max(w[0].x());
                    let ys = polyline_height(w, xs).unwrap_or(f64::NEG_INFINITY);
                    !(ys > c[1])
                })
            })
        }
        CapabilitySet::Polyline2D(av) => {
            // both envelopes are piecewise linear: checking every breakpoint suffices
            let lo = verts[0].x();
            let hi = verts[verts.len() - 1].x();
            av.iter()
                .map(|p| p.x())
                .filter(|x| *x > lo && *x < hi)
                .all(|x| {
                    let yb = polyline_height(verts, x).unwrap_or(0.0);
                    polyline_height(av, x).is_some_and(|ya| yb <= ya)
                })
        }
    }
}

/// `A > B`: `A >= B` and some member of `A` escapes the closure of `B`.
pub fn set_strict_dominates(a: &CapabilitySet, b: &CapabilitySet) -> Result<bool> {
    Ok(set_weak_dominates(a, b)? && !set_weak_dominates(b, a)?)
}

/// Largest `eps` such that a cube `[a - eps, a]` with `a` in `P(A)` stays in
/// the orthant and misses the closure of `B`.
pub fn strong_gap(a: &CapabilitySet, b: &CapabilitySet) -> Result<f64> {
    check_dims(a.dims(), b.dims())?;
    if a.is_polyline() || b.is_polyline() {
        return Err(Error::Unsupported(
            "strong gap requires finite point sets".into(),
        ));
    }
    let fb = b.frontier();
    let gap = a
        .frontier()
        .iter()
        .map(|p| {
            let floor = p.coords().iter().copied().fold(f64::INFINITY, f64::min);
            let reach = fb
                .iter()
                .map(|q| {
                    p.coords()
                        .iter()
                        .zip(q.coords())
                        .map(|(x, y)| x - y)
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            floor.min(reach)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(gap.max(0.0))
}

/// `A >> B`: weak dominance with a strictly positive gap.
pub fn set_strong_dominates(a: &CapabilitySet, b: &CapabilitySet) -> Result<bool> {
    Ok(set_weak_dominates(a, b)? && strong_gap(a, b)? > 0.0)
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

    fn mixed_a() -> CapabilitySet {
        pts(&[[13., 2.], [11., 3.], [5., 9.]])
    }

    fn mixed_b() -> CapabilitySet {
        pts(&[[12., 1.], [10., 2.], [5., 3.], [4., 6.], [3.5, 7.5], [2., 8.]])
    }

    fn example3_b() -> CapabilitySet {
        pts(&(1..=8).map(|i| [i as f64, 9.0 - i as f64]).collect::<Vec<_>>())
    }

    #[test]
    fn point_dominance() {
        assert!(weak_dominates(&b(&[2., 3.]), &b(&[2., 3.])).unwrap());
        assert!(weak_dominates(&b(&[13., 2.]), &b(&[12., 1.])).unwrap());
        assert!(!weak_dominates(&b(&[10., 3.]), &b(&[2., 10.])).unwrap());
        assert!(!strict_dominates(&b(&[2., 3.]), &b(&[2., 3.])).unwrap());
        assert!(strict_dominates(&b(&[13., 2.]), &b(&[12., 1.])).unwrap());
        assert!(strict_dominates(&b(&[5., 9.]), &b(&[5., 3.])).unwrap());
        assert!(matches!(
            weak_dominates(&b(&[1., 2.]), &b(&[1., 2., 3.])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn being_rejects_negative_and_nan() {
        assert!(Being::new(vec![-1.0, 0.0]).is_err());
        assert!(Being::new(vec![f64::NAN]).is_err());
        assert!(Being::new(vec![]).is_err());
    }

    #[test]
    fn pdc_membership() {
        assert!(pdc_contains(&pts(&[[10., 3.]]), &b(&[4., 3.])).unwrap());
        // brute force: no member of B has x >= 1.2 and y >= 7.3
        let x = b(&[1.2, 7.3]);
        let brute = example3_b()
            .members()
            .iter()
            .any(|a| a.x() >= 1.2 && a.y() >= 7.3);
        assert!(!brute);
        assert_eq!(pdc_contains(&example3_b(), &x).unwrap(), brute);
        let poly =
            CapabilitySet::polyline(vec![b(&[9., 0.]), b(&[8., 7.5]), b(&[0., 8.5])]).unwrap();
        assert!(pdc_contains(&poly, &b(&[8., 7.5])).unwrap());
        assert!(pdc_contains(&poly, &b(&[4., 8.])).unwrap());
        assert!(!pdc_contains(&poly, &b(&[4., 8.1])).unwrap());
        assert!(!pdc_contains(&poly, &b(&[9.5, 0.])).unwrap());
    }

    #[test]
    fn frontier_examples() {
        assert_eq!(pareto_frontier(&[b(&[1., 1.])]).unwrap(), vec![b(&[1., 1.])]);
        assert_eq!(
            pareto_frontier(&[b(&[1., 1.]), b(&[2., 0.])]).unwrap(),
            vec![b(&[1., 1.]), b(&[2., 0.])]
        );
        assert_eq!(
            pareto_frontier(&[b(&[5., 3.]), b(&[5., 9.]), b(&[4., 4.])]).unwrap(),
            vec![b(&[5., 9.])]
        );
        assert!(matches!(pareto_frontier(&[]), Err(Error::Empty(_))));
    }

    #[test]
    fn set_dominance_mixed() {
        let (a, bb) = (mixed_a(), mixed_b());
        assert!(set_weak_dominates(&a, &bb).unwrap());
        assert!(!set_weak_dominates(&bb, &a).unwrap());
        assert!(set_weak_dominates(&a, &a).unwrap());
        assert!(set_strict_dominates(&a, &bb).unwrap());
    }

    #[test]
    fn strict_vs_strong_pair() {
        let one = pts(&[[1., 1.]]);
        let two = pts(&[[1., 1.], [2., 0.]]);
        assert!(set_strict_dominates(&two, &one).unwrap());
        assert!(!set_strict_dominates(&one, &one).unwrap());
        assert_eq!(strong_gap(&two, &one).unwrap(), 0.0);
        assert!(!set_strong_dominates(&two, &one).unwrap());
        let big = pts(&[[2., 2.]]);
        assert_eq!(strong_gap(&big, &one).unwrap(), 1.0);
        assert!(set_strong_dominates(&big, &one).unwrap());
        assert_eq!(strong_gap(&one, &one).unwrap(), 0.0);
        assert!(!set_strong_dominates(&one, &one).unwrap());
    }

    #[test]
    fn polyline_normalization() {
        let p = CapabilitySet::polyline(vec![b(&[9., 0.]), b(&[0., 8.5]), b(&[8., 7.5])]).unwrap();
        assert_eq!(p.members()[0], b(&[0., 8.5]));
        assert!(CapabilitySet::polyline(vec![b(&[1., 1.]), b(&[2., 2.])]).is_err());
        assert!(CapabilitySet::polyline(vec![b(&[1., 1., 1.])]).is_err());
    }

    #[test]
    fn polyline_set_dominance() {
        let poly =
            CapabilitySet::polyline(vec![b(&[9., 0.]), b(&[8., 7.5]), b(&[0., 8.5])]).unwrap();
        // vertices (0,8.5) and (8,7.5) sit under (9,9) but the segment does not cross any notch
        let box99 = pts(&[[9., 9.]]);
        assert!(set_weak_dominates(&box99, &poly).unwrap());
        // staircase with a notch at (4,7): segment from (0,8.5) to (8,7.5) passes (4,8)
        let notched = pts(&[[4., 9.], [9., 7.6]]);
        assert!(contains_raw(&notched, &[0., 8.5]));
        assert!(contains_raw(&notched, &[8., 7.5]));
        assert!(!contains_raw(&notched, &[4.5, 8.0]));
        assert!(!set_weak_dominates(&notched, &poly).unwrap());
        let inner =
            CapabilitySet::polyline(vec![b(&[0., 8.]), b(&[7., 7.]), b(&[8.5, 0.])]).unwrap();
        assert!(set_weak_dominates(&poly, &inner).unwrap());
        assert!(!set_weak_dominates(&inner, &poly).unwrap());
    }

    #[test]
    fn corners_match_staircase_in_3d_grid() {
        let f = vec![b(&[2., 1., 1.]), b(&[1., 2., 1.]), b(&[1., 1., 2.])];
        let corners = complement_corners(&f).unwrap();
        for c in &corners {
            let probe: Vec<f64> = c.iter().map(|x| x + 1e-9).collect();
            assert!(!f.iter().any(|a| geq(a.coords(), &probe)));
        }
        assert!(corners.contains(&vec![1., 1., 1.]));
    }
}
