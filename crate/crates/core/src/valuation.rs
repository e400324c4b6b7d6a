//! Value functions `v`, freedom-sensitivity functions `phi`, and closed-form
//! integrals of `phi(v(.))` for the weighted-sum / power family.

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::geometry::Being;
use crate::region::Region;

/// `v(a) = sum_h w_h a_h` with strictly positive weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawValueModel", into = "RawValueModel")]
pub struct ValueModel {
    weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawValueModel {
    weights: Vec<f64>,
}

impl TryFrom<RawValueModel> for ValueModel {
    type Error = Error;
    fn try_from(r: RawValueModel) -> Result<Self> {
        ValueModel::weighted_sum(r.weights)
    }
}

impl From<ValueModel> for RawValueModel {
    fn from(v: ValueModel) -> Self {
        RawValueModel { weights: v.weights }
    }
}

impl ValueModel {
    pub fn weighted_sum(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty("value weights"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::Invalid(format!(
                "value weights must be finite and strictly positive: {weights:?}"
            )));
        }
        Ok(ValueModel { weights })
    }

    /// Unit weights in `dims` dimensions.
    pub fn sum(dims: usize) -> Self {
        ValueModel {
            weights: vec![1.0; dims],
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dims(&self) -> usize {
        self.weights.len()
    }

    pub(crate) fn eval_raw(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, a)| w * a).sum()
    }

    /// Model `v'` with `v'(alpha * a) = v(a)`.
    pub fn rescaled(&self, alpha: &[f64]) -> Result<Self> {
        check_dims(self.dims(), alpha.len())?;
        ValueModel::weighted_sum(self.weights.iter().zip(alpha).map(|(w, a)| w / a).collect())
    }
}

pub fn eval_v(v: &ValueModel, a: &Being) -> Result<f64> {
    check_dims(v.dims(), a.dims())?;
    Ok(v.eval_raw(a.coords()))
}

/// Freedom-sensitivity function applied to well-being levels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", try_from = "RawSensitivity")]
pub enum Sensitivity {
    /// `phi(y) = y^gamma`
    Power(f64),
    /// `phi(y) = c`
    Constant(f64),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawSensitivity {
    Power(f64),
    Constant(f64),
}

impl TryFrom<RawSensitivity> for Sensitivity {
    type Error = Error;
    fn try_from(r: RawSensitivity) -> Result<Self> {
        match r {
            RawSensitivity::Power(g) => Sensitivity::power(g),
            RawSensitivity::Constant(c) => Sensitivity::constant(c),
        }
    }
}

impl Sensitivity {
    pub fn power(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Invalid(format!("exponent {gamma} must be positive")));
        }
        Ok(Sensitivity::Power(gamma))
    }

    pub fn constant(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Invalid(format!("constant {c} must be positive")));
        }
        Ok(Sensitivity::Constant(c))
    }

    pub fn apply(&self, y: f64) -> f64 {
        match *self {
            Sensitivity::Power(1.0) => y,
            Sensitivity::Power(2.0) => y * y,
            Sensitivity::Power(0.5) => y.sqrt(),
            Sensitivity::Power(g) => y.powf(g),
            Sensitivity::Constant(c) => c,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Sensitivity::Power(g) => format!("v^{g}"),
            Sensitivity::Constant(c) => format!("const {c}"),
        }
    }
}

pub fn eval_psi(v: &ValueModel, phi: &Sensitivity, a: &Being) -> Result<f64> {
    Ok(phi.apply(eval_v(v, a)?))
}

/// Integrand `psi = phi o v` as a plain closure over coordinates.
pub fn psi<'a>(v: &'a ValueModel, phi: &'a Sensitivity) -> impl Fn(&[f64]) -> f64 + Sync + 'a {
    move |x| phi.apply(v.eval_raw(x))
}

/// Integral of `(w1 x + w2 y)^gamma` over `[0, X] x [y0, y1]`.
pub fn rect_integral_2d(v: &ValueModel, gamma: f64, x: f64, y0: f64, y1: f64) -> Result<f64> {
    check_dims(2, v.dims())?;
    if !(gamma > 0.0) {
        return Err(Error::Invalid(format!("exponent {gamma} must be positive")));
    }
    if !(x >= 0.0 && y0 >= 0.0 && y0 <= y1) {
        return Err(Error::InvalidBounds(format!(
            "need X >= 0 and 0 <= y0 <= y1, got X={x}, y0={y0}, y1={y1}"
        )));
    }
    let (w1, w2) = (v.weights[0], v.weights[1]);
    let p = gamma + 2.0;
    let f = |s: f64| s.powf(p);
    let num = f(w1 * x + w2 * y1) - f(w2 * y1) - f(w1 * x + w2 * y0) + f(w2 * y0);
    Ok(num / (w1 * w2 * (gamma + 1.0) * p))
}

/// Exact integral of `phi(v(.))` over the box `[lo, hi]` together with a
/// floating-point rounding bound.
pub fn box_integral(v: &ValueModel, phi: &Sensitivity, lo: &[f64], hi: &[f64]) -> (f64, f64) {
    let h = lo.len();
    match *phi {
        Sensitivity::Constant(c) => {
            let vol: f64 = lo.iter().zip(hi).map(|(a, b)| b - a).product();
            let val = c * vol;
            (val, val.abs() * (h as f64 + 1.0) * f64::EPSILON)
        }
        Sensitivity::Power(g) => {
            let p = g + h as f64;
            let denom: f64 = v.weights.iter().product::<f64>()
                * (1..=h).map(|k| g + k as f64).product::<f64>();
            let mut sum = 0.0;
            let mut mag = 0.0;
            let mut corner = vec![0.0; h];
            for mask in 0..(1usize << h) {
                let mut lower = 0;
                for k in 0..h {
                    if mask >> k & 1 == 1 {
                        corner[k] = lo[k];
                        lower += 1;
                    } else {
                        corner[k] = hi[k];
                    }
                }
                let t = v.eval_raw(&corner).powf(p);
                if lower % 2 == 0 {
                    sum += t;
                } else {
                    sum -= t;
                }
                mag += t;
            }
            let val = sum / denom;
            (val, 8.0 * (h as f64 + 2.0) * f64::EPSILON * mag / denom)
        }
    }
}

/// Exact integral of `phi(v(.))` over the unclipped sublevel set
/// `{x >= 0 : v(x) <= t}`.
pub fn sublevel_integral(v: &ValueModel, phi: &Sensitivity, t: f64) -> f64 {
    let h = v.dims();
    let wprod: f64 = v.weights.iter().product();
    let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>();
    match *phi {
        Sensitivity::Constant(c) => c * t.powi(h as i32) / (fact(h) * wprod),
        Sensitivity::Power(g) => {
            t.powf(g + h as f64) / ((g + h as f64) * fact(h - 1) * wprod)
        }
    }
}

/// Maximum of `v` over a region. Exact for leaves and unions; for
/// intersections a certified upper bound.
pub fn vmax_on(region: &Region, v: &ValueModel) -> Result<f64> {
    check_dims(v.dims(), region.dims())?;
    Ok(vmax_raw(region, v))
}

fn vmax_raw(region: &Region, v: &ValueModel) -> f64 {
    match region {
        Region::Dominance(set) => set
            .frontier()
            .iter()
            .map(|a| v.eval_raw(a.coords()))
            .fold(0.0, f64::max),
        Region::Sublevel { threshold, .. } => {
            let corner = region.bounding_box();
            threshold.min(v.eval_raw(&corner))
        }
        Region::Union(a, b) => vmax_raw(a, v).max(vmax_raw(b, v)),
        Region::Intersection(a, b) => {
            let corner = region.bounding_box();
            vmax_raw(a, v).min(vmax_raw(b, v)).min(v.eval_raw(&corner))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CapabilitySet;
    use approx::assert_relative_eq;

    fn b(c: &[f64]) -> Being {
        Being::new(c.to_vec()).unwrap()
    }

    #[test]
    fn value_examples() {
        let v = ValueModel::sum(2);
        assert_eq!(eval_v(&v, &b(&[10., 3.])).unwrap(), 13.0);
        assert_eq!(eval_v(&v, &b(&[0., 0.])).unwrap(), 0.0);
        let w = ValueModel::weighted_sum(vec![2., 1.]).unwrap();
        assert_eq!(eval_v(&w, &b(&[3., 4.])).unwrap(), 10.0);
        assert!(eval_v(&w, &b(&[1., 2., 3.])).is_err());
        assert!(ValueModel::weighted_sum(vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn psi_examples() {
        let v = ValueModel::sum(2);
        let sq = Sensitivity::power(2.0).unwrap();
        let rt = Sensitivity::power(0.5).unwrap();
        let one = Sensitivity::constant(1.0).unwrap();
        assert_eq!(eval_psi(&v, &sq, &b(&[2., 1.])).unwrap(), 9.0);
        assert_eq!(eval_psi(&v, &rt, &b(&[4., 0.])).unwrap(), 2.0);
        assert_eq!(eval_psi(&v, &one, &b(&[7., 3.])).unwrap(), 1.0);
        assert!(Sensitivity::power(0.0).is_err());
        assert!(Sensitivity::constant(-1.0).is_err());
    }

    #[test]
    fn rect_integral_worked_values() {
        let v = ValueModel::sum(2);
        assert_relative_eq!(rect_integral_2d(&v, 1.0, 10., 0., 3.).unwrap(), 195.0, max_relative = 1e-14);
        assert_relative_eq!(rect_integral_2d(&v, 2.0, 10., 0., 3.).unwrap(), 1540.0, max_relative = 1e-14);
        let radical = 4.0 * (13f64.powf(2.5) - 10f64.powf(2.5) - 3f64.powf(2.5)) / 15.0;
        assert_relative_eq!(rect_integral_2d(&v, 0.5, 10., 0., 3.).unwrap(), radical, max_relative = 1e-14);
        assert!((radical - 74.006).abs() < 1e-3);
        assert!(matches!(
            rect_integral_2d(&v, 1.0, 10., 3., 0.),
            Err(Error::InvalidBounds(_))
        ));
    }

    #[test]
    fn box_integral_matches_rect() {
        let v = ValueModel::weighted_sum(vec![1.5, 0.7]).unwrap();
        let (val, err) = box_integral(&v, &Sensitivity::Power(3.0), &[0., 1.], &[4., 2.5]);
        let r = rect_integral_2d(&v, 3.0, 4., 1., 2.5).unwrap();
        assert_relative_eq!(val, r, max_relative = 1e-13);
        assert!(err < 1e-10 * val);
    }

    #[test]
    fn sublevel_closed_forms() {
        let v = ValueModel::sum(2);
        assert_relative_eq!(sublevel_integral(&v, &Sensitivity::Power(1.0), 3.0), 9.0);
        assert_relative_eq!(sublevel_integral(&v, &Sensitivity::Power(2.0), 13.0), 7140.25);
        assert_relative_eq!(
            sublevel_integral(&v, &Sensitivity::Power(0.5), 13.0),
            0.4 * 13f64.powf(2.5)
        );
        assert_relative_eq!(sublevel_integral(&v, &Sensitivity::Constant(1.0), 4.0), 8.0);
    }

    #[test]
    fn vmax_examples() {
        let v = ValueModel::sum(2);
        let dom = Region::dominance(CapabilitySet::points(vec![b(&[10., 3.])]).unwrap());
        assert_eq!(vmax_on(&dom, &v).unwrap(), 13.0);
        let space = CapabilitySet::points(vec![b(&[10., 10.])]).unwrap();
        let sub = Region::sublevel(v.clone(), 9.0)
            .unwrap()
            .intersect(Region::dominance(space));
        assert_eq!(vmax_on(&sub, &v).unwrap(), 9.0);
        assert_eq!(vmax_on(&dom.clone().union(sub), &v).unwrap(), 13.0);
    }
}
