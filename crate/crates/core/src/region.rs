//! Downward-closed integration domains: domination closures, sublevel sets of
//! a value model, and their unions and intersections.

use crate::error::{check_dims, Error, Result};
use crate::geometry::{contains_raw, staircase, CapabilitySet};
use crate::valuation::ValueModel;

/// Term algebra over downward-closed subsets of the non-negative orthant.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    /// Positive domination closure of a capability set.
    Dominance(CapabilitySet),
    /// `{x >= 0 : v(x) <= threshold}`
    Sublevel { model: ValueModel, threshold: f64 },
    Union(Box<Region>, Box<Region>),
    Intersection(Box<Region>, Box<Region>),
}

/// Position of an axis-aligned box relative to a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxClass {
    Inside,
    Outside,
    Straddling,
}

impl Region {
    pub fn dominance(set: CapabilitySet) -> Self {
        Region::Dominance(set)
    }

    pub fn sublevel(model: ValueModel, threshold: f64) -> Result<Self> {
        if !(threshold.is_finite() && threshold >= 0.0) {
            return Err(Error::Invalid(format!(
                "sublevel threshold {threshold} must be finite and non-negative"
            )));
        }
        Ok(Region::Sublevel { model, threshold })
    }

    pub fn union(self, other: Region) -> Self {
        Region::Union(Box::new(self), Box::new(other))
    }

    pub fn intersect(self, other: Region) -> Self {
        Region::Intersection(Box::new(self), Box::new(other))
    }

    pub fn dims(&self) -> usize {
        match self {
            Region::Dominance(s) => s.dims(),
            Region::Sublevel { model, .. } => model.dims(),
            Region::Union(a, _) | Region::Intersection(a, _) => a.dims(),
        }
    }

    /// Checks that every node agrees on the dimension.
    pub fn validate(&self) -> Result<()> {
        match self {
            Region::Union(a, b) | Region::Intersection(a, b) => {
                a.validate()?;
                b.validate()?;
                check_dims(a.dims(), b.dims())
            }
            _ => Ok(()),
        }
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Region::Dominance(s) => contains_raw(s, x),
            Region::Sublevel { model, threshold } => {
                x.iter().all(|c| *c >= 0.0) && model.eval_raw(x) <= *threshold
            }
            Region::Union(a, b) => a.contains(x) || b.contains(x),
            Region::Intersection(a, b) => a.contains(x) && b.contains(x),
        }
    }

    /// Upper corner of an axis-aligned box `[0, corner]` containing the region.
    pub fn bounding_box(&self) -> Vec<f64> {
        match self {
            Region::Dominance(s) => {
                let mut hi = vec![0.0f64; s.dims()];
                for m in s.members() {
                    for (h, c) in m.coords().iter().enumerate() {
                        hi[h] = hi[h].max(*c);
                    }
                }
                hi
            }
            Region::Sublevel { model, threshold } => {
                model.weights().iter().map(|w| threshold / w).collect()
            }
            Region::Union(a, b) => zip_with(a.bounding_box(), b.bounding_box(), f64::max),
            Region::Intersection(a, b) => {
                zip_with(a.bounding_box(), b.bounding_box(), f64::min)
            }
        }
    }

    /// Classifies `[lo, hi]` using downward closure: a box is inside iff its
    /// upper corner is, and outside iff its lower corner is not.
    pub fn classify_box(&self, lo: &[f64], hi: &[f64]) -> BoxClass {
        match self {
            Region::Union(a, b) => {
                match (a.classify_box(lo, hi), b.classify_box(lo, hi)) {
                    (BoxClass::Inside, _) | (_, BoxClass::Inside) => BoxClass::Inside,
                    (BoxClass::Outside, BoxClass::Outside) => BoxClass::Outside,
                    _ => BoxClass::Straddling,
                }
            }
            Region::Intersection(a, b) => {
                match (a.classify_box(lo, hi), b.classify_box(lo, hi)) {
                    (BoxClass::Outside, _) | (_, BoxClass::Outside) => BoxClass::Outside,
                    (BoxClass::Inside, BoxClass::Inside) => BoxClass::Inside,
                    _ => BoxClass::Straddling,
                }
            }
            leaf => {
                if leaf.contains(hi) {
                    BoxClass::Inside
                } else if !leaf.contains(lo) {
                    BoxClass::Outside
                } else {
                    BoxClass::Straddling
                }
            }
        }
    }

    pub(crate) fn shape(&self) -> Shape {
        match self {
            Region::Dominance(CapabilitySet::Points(p)) => {
                let f = CapabilitySet::Points(p.clone()).frontier();
                Shape::Points(f.into_iter().map(Vec::from).collect())
            }
            Region::Dominance(CapabilitySet::Polyline2D(v)) => {
                Shape::Poly(v.iter().map(|b| [b.x(), b.y()]).collect())
            }
            Region::Sublevel { model, threshold } => Shape::Sub {
                w: model.weights().to_vec(),
                t: *threshold,
            },
            Region::Union(a, b) => Shape::Union(vec![a.shape(), b.shape()]),
            Region::Intersection(a, b) => Shape::Inter(vec![a.shape(), b.shape()]),
        }
    }
}

fn zip_with(a: Vec<f64>, b: Vec<f64>, f: fn(f64, f64) -> f64) -> Vec<f64> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

/// Region restricted to the trailing coordinates after fixing leading ones.
#[derive(Clone, Debug)]
pub(crate) enum Shape {
    Empty,
    Points(Vec<Vec<f64>>),
    Poly(Vec<[f64; 2]>),
    Sub { w: Vec<f64>, t: f64 },
    Union(Vec<Shape>),
    Inter(Vec<Shape>),
}

/// Linear piece `y = a + b x` on `[lo, hi]` of a 2D section height.
#[derive(Clone, Copy, Debug)]
struct Piece {
    lo: f64,
    hi: f64,
    a: f64,
    b: f64,
}

impl Shape {
    /// Extent along the leading axis; `None` when empty.
    pub(crate) fn extent(&self) -> Option<f64> {
        match self {
            Shape::Empty => None,
            Shape::Points(p) => p.iter().map(|q| q[0]).reduce(f64::max),
            Shape::Poly(v) => v.last().map(|q| q[0]),
            Shape::Sub { w, t } => Some(t / w[0]),
            Shape::Union(c) => c.iter().filter_map(Shape::extent).reduce(f64::max),
            Shape::Inter(c) => {
                let mut out = f64::INFINITY;
                for s in c {
                    out = out.min(s.extent()?);
                }
                Some(out)
            }
        }
    }

    /// Section at leading coordinate `x`, dropping that axis.
    pub(crate) fn slice(&self, x: f64) -> Shape {
        match self {
            Shape::Empty => Shape::Empty,
            Shape::Points(p) => {
                let kept: Vec<Vec<f64>> =
                    p.iter().filter(|q| q[0] >= x).map(|q| q[1..].to_vec()).collect();
                if kept.is_empty() {
                    Shape::Empty
                } else {
                    Shape::Points(kept)
                }
            }
            Shape::Poly(v) => match poly_height(v, x) {
                Some(h) => Shape::Points(vec![vec![h]]),
                None => Shape::Empty,
            },
            Shape::Sub { w, t } => {
                let rest = t - w[0] * x;
                if rest < 0.0 {
                    Shape::Empty
                } else {
                    Shape::Sub {
                        w: w[1..].to_vec(),
                        t: rest,
                    }
                }
            }
            Shape::Union(c) => {
                let mut kids: Vec<Shape> = c
                    .iter()
                    .map(|s| s.slice(x))
                    .filter(|s| !matches!(s, Shape::Empty))
                    .collect();
                match kids.len() {
                    0 => Shape::Empty,
                    1 => kids.pop().unwrap(),
                    _ => Shape::Union(kids),
                }
            }
            Shape::Inter(c) => {
                let mut kids = Vec::with_capacity(c.len());
                for s in c {
                    match s.slice(x) {
                        Shape::Empty => return Shape::Empty,
                        k => kids.push(k),
                    }
                }
                if kids.len() == 1 {
                    kids.pop().unwrap()
                } else {
                    Shape::Inter(kids)
                }
            }
        }
    }

    /// Leading-axis abscissae where the section changes form.
    pub(crate) fn breaks(&self, dims: usize, out: &mut Vec<f64>) {
        self.leaf_breaks(out);
        if dims == 2 && matches!(self, Shape::Union(_) | Shape::Inter(_)) {
            let mut leaves = Vec::new();
            self.pieces(&mut leaves);
            for i in 0..leaves.len() {
                for j in i + 1..leaves.len() {
                    for p in &leaves[i] {
                        for q in &leaves[j] {
                            if let Some(x) = crossing(p, q) {
                                out.push(x);
                            }
                        }
                    }
                }
            }
        }
    }

    fn leaf_breaks(&self, out: &mut Vec<f64>) {
        match self {
            Shape::Empty => {}
            Shape::Points(p) => out.extend(p.iter().map(|q| q[0])),
            Shape::Poly(v) => out.extend(v.iter().map(|q| q[0])),
            Shape::Sub { w, t } => out.push(t / w[0]),
            Shape::Union(c) | Shape::Inter(c) => c.iter().for_each(|s| s.leaf_breaks(out)),
        }
    }

    fn pieces(&self, out: &mut Vec<Vec<Piece>>) {
        match self {
            Shape::Empty => {}
            Shape::Points(p) => {
                let beings: Vec<crate::geometry::Being> = p
                    .iter()
                    .map(|q| crate::geometry::Being::new(q.clone()).expect("validated point"))
                    .collect();
                let stairs = staircase(&beings);
                let mut lo = 0.0;
                let mut v = Vec::with_capacity(stairs.len());
                for s in stairs {
                    v.push(Piece {
                        lo,
                        hi: s.x(),
                        a: s.y(),
                        b: 0.0,
                    });
                    lo = s.x();
                }
                out.push(v);
            }
            Shape::Poly(vs) => {
                let mut v = vec![Piece {
                    lo: 0.0,
                    hi: vs[0][0],
                    a: vs[0][1],
                    b: 0.0,
                }];
                for w in vs.windows(2) {
                    let b = (w[1][1] - w[0][1]) / (w[1][0] - w[0][0]);
                    v.push(Piece {
                        lo: w[0][0],
                        hi: w[1][0],
                        a: w[0][1] - b * w[0][0],
                        b,
                    });
                }
                out.push(v);
            }
            Shape::Sub { w, t } => out.push(vec![Piece {
                lo: 0.0,
                hi: t / w[0],
                a: t / w[1],
                b: -w[0] / w[1],
            }]),
            Shape::Union(c) | Shape::Inter(c) => c.iter().for_each(|s| s.pieces(out)),
        }
    }
}

fn poly_height(v: &[[f64; 2]], x: f64) -> Option<f64> {
    let last = v.last()?;
    if x > last[0] {
        return None;
    }
    if x <= v[0][0] {
        return Some(v[0][1]);
    }
    let i = v.partition_point(|q| q[0] < x);
    let (a, b) = (v[i - 1], v[i]);
    if b[0] == x {
        return Some(b[1]);
    }
    Some(a[1] + (x - a[0]) / (b[0] - a[0]) * (b[1] - a[1]))
}

fn crossing(p: &Piece, q: &Piece) -> Option<f64> {
    if p.b == q.b {
        return None;
    }
    let x = (q.a - p.a) / (p.b - q.b);
    let lo = p.lo.max(q.lo);
    let hi = p.hi.min(q.hi);
    (x > lo && x < hi).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Being;

    fn set(c: &[[f64; 2]]) -> CapabilitySet {
        CapabilitySet::points(c.iter().map(|p| Being::new(p.to_vec()).unwrap()).collect()).unwrap()
    }

    #[test]
    fn membership_and_bbox() {
        let v = ValueModel::sum(2);
        let r = Region::dominance(set(&[[10., 3.]]))
            .intersect(Region::sublevel(v.clone(), 9.0).unwrap());
        assert!(r.contains(&[5., 3.]));
        assert!(!r.contains(&[7., 3.]));
        assert_eq!(r.bounding_box(), vec![9., 3.]);
        let u = Region::dominance(set(&[[10., 3.]])).union(Region::sublevel(v, 9.0).unwrap());
        assert_eq!(u.bounding_box(), vec![10., 9.]);
        assert!(u.contains(&[1., 8.]));
    }

    #[test]
    fn box_classification() {
        let r = Region::dominance(set(&[[4., 2.], [2., 4.]]));
        assert_eq!(r.classify_box(&[0., 0.], &[1., 1.]), BoxClass::Inside);
        assert_eq!(r.classify_box(&[3., 3.], &[5., 5.]), BoxClass::Outside);
        assert_eq!(r.classify_box(&[1., 1.], &[3., 3.]), BoxClass::Straddling);
    }

    #[test]
    fn slices_of_sublevel_and_staircase() {
        let v = ValueModel::sum(2);
        let r = Region::dominance(set(&[[10., 3.]]))
            .union(Region::sublevel(v, 9.0).unwrap())
            .shape();
        assert_eq!(r.extent(), Some(10.0));
        assert_eq!(r.slice(2.0).extent(), Some(7.0));
        assert_eq!(r.slice(8.0).extent(), Some(3.0));
        assert_eq!(r.slice(10.5).extent(), None);
        let mut b = Vec::new();
        r.breaks(2, &mut b);
        // line x + y = 9 meets level y = 3 at x = 6
        assert!(b.contains(&6.0));
    }

    #[test]
    fn mismatched_dims_rejected() {
        let r = Region::dominance(set(&[[1., 1.]]))
            .union(Region::sublevel(ValueModel::sum(3), 1.0).unwrap());
        assert!(r.validate().is_err());
    }
}
