use crate::error::{check_dims, Result};
use crate::geometry::{complement_corners, staircase, CapabilitySet, CapabilitySpace};
use crate::region::Region;
use crate::valuation::ValueModel;

use super::MeasureResult;

/// Best value attained in the set.
pub fn phi_max(set: &CapabilitySet, v: &ValueModel) -> Result<MeasureResult> {
    check_dims(v.dims(), set.dims())?;
    let (score, arg) = set
        .frontier()
        .into_iter()
        .map(|a| (v.eval_raw(a.coords()), a))
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .expect("capability sets are nonempty");
    let mut r = MeasureResult::exact(score, "exact");
    r.note("witness", arg.coords().to_vec());
    Ok(r)
}

/// Lowest value attained just outside the closure of the set, within the
/// capability space.
pub fn phi_min(set: &CapabilitySet, v: &ValueModel, space: &CapabilitySpace) -> Result<MeasureResult> {
    check_dims(v.dims(), set.dims())?;
    check_dims(space.dims(), set.dims())?;
    let upper = space.upper().coords();
    let candidates: Vec<Vec<f64>> = match set {
        CapabilitySet::Polyline2D(verts) => {
            let mut c: Vec<Vec<f64>> = verts.iter().map(|b| b.coords().to_vec()).collect();
            c.push(vec![0.0, verts[0].y()]);
            c.push(vec![verts[verts.len() - 1].x(), 0.0]);
            c
        }
        CapabilitySet::Points(p) if set.dims() == 2 => {
            let stairs = staircase(p);
            complement_corners(&stairs)?
        }
        CapabilitySet::Points(_) => complement_corners(&set.frontier())?,
    };
    let n = candidates.len();
    // An apex strictly below the upper corner has complement points of the
    // space arbitrarily close to it.
    let best = candidates
        .into_iter()
        .filter(|c| c.iter().zip(upper).all(|(a, u)| a < u))
        .map(|c| (v.eval_raw(&c), c))
        .min_by(|x, y| x.0.total_cmp(&y.0));
    let mut r = match best {
        Some((score, c)) => {
            let mut r = MeasureResult::exact(score, "exact");
            r.note("witness", c);
            r
        }
        None => MeasureResult::exact(v.eval_raw(upper), "space-saturated"),
    };
    r.note("candidates", n);
    Ok(r)
}

/// The sublevel set `{v <= t}`, intersected with the space when `clip`.
pub fn level_region(v: &ValueModel, t: f64, clip: bool, space: &CapabilitySpace) -> Result<Region> {
    check_dims(v.dims(), space.dims())?;
    let sub = Region::sublevel(v.clone(), t)?;
    Ok(if clip {
        sub.intersect(Region::dominance(space.as_set()))
    } else {
        sub
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Being;
    use crate::quadrature::{integrate_region, QuadConfig};
    use crate::valuation::{psi, Sensitivity};

    fn pts(c: &[[f64; 2]]) -> CapabilitySet {
        CapabilitySet::points(c.iter().map(|p| Being::new(p.to_vec()).unwrap()).collect()).unwrap()
    }

    fn example3() -> [CapabilitySet; 3] {
        let b: Vec<[f64; 2]> = (1..=8).map(|i| [i as f64, (9 - i) as f64]).collect();
        [pts(&[[10., 3.]]), pts(&b), pts(&[[2., 10.], [5., 5.]])]
    }

    fn space() -> CapabilitySpace {
        CapabilitySpace::new(Being::new(vec![10., 10.]).unwrap()).unwrap()
    }

    #[test]
    fn extremes_example3() {
        let v = ValueModel::sum(2);
        let maxes: Vec<f64> = example3().iter().map(|s| phi_max(s, &v).unwrap().score).collect();
        assert_eq!(maxes, vec![13.0, 9.0, 12.0]);
        let mins: Vec<f64> = example3()
            .iter()
            .map(|s| phi_min(s, &v, &space()).unwrap().score)
            .collect();
        assert_eq!(mins, vec![3.0, 8.0, 5.0]);
        assert_eq!(phi_max(&pts(&[[0., 0.]]), &v).unwrap().score, 0.0);
    }

    #[test]
    fn saturated_space() {
        let v = ValueModel::sum(2);
        let r = phi_min(&pts(&[[10., 10.]]), &v, &space()).unwrap();
        assert_eq!(r.score, 20.0);
        assert_eq!(r.method, "space-saturated");
    }

    #[test]
    fn polyline_min_uses_vertices() {
        let v = ValueModel::sum(2);
        let s = CapabilitySet::polyline(vec![
            Being::new(vec![1., 6.]).unwrap(),
            Being::new(vec![4., 1.]).unwrap(),
        ])
        .unwrap();
        assert_eq!(phi_min(&s, &v, &space()).unwrap().score, 4.0);
        assert_eq!(phi_max(&s, &v).unwrap().score, 7.0);
    }

    #[test]
    fn three_dimensional_min() {
        let v = ValueModel::sum(3);
        let s = CapabilitySet::points(vec![Being::new(vec![2., 2., 2.]).unwrap()]).unwrap();
        let sp = CapabilitySpace::new(Being::new(vec![5., 5., 5.]).unwrap()).unwrap();
        assert_eq!(phi_min(&s, &v, &sp).unwrap().score, 2.0);
    }

    #[test]
    fn level_regions() {
        let v = ValueModel::sum(2);
        let cfg = QuadConfig::default();
        let sq = Sensitivity::power(2.0).unwrap();
        let r = level_region(&v, 13.0, false, &space()).unwrap();
        let e = integrate_region(psi(&v, &sq), &r, &cfg).unwrap();
        assert!((e.value - 7140.25).abs() < 1e-6);
        let lin = Sensitivity::power(1.0).unwrap();
        for clip in [false, true] {
            let r = level_region(&v, 9.0, clip, &space()).unwrap();
            let e = integrate_region(psi(&v, &lin), &r, &cfg).unwrap();
            assert!((e.value - 243.0).abs() < 1e-6);
        }
        let r = level_region(&v, 13.0, true, &space()).unwrap();
        let e = integrate_region(psi(&v, &lin), &r, &cfg).unwrap();
        assert!((e.value - 1873.0 / 3.0).abs() < 1e-6);
        let r = level_region(&v, 0.0, false, &space()).unwrap();
        assert_eq!(integrate_region(psi(&v, &lin), &r, &cfg).unwrap().value, 0.0);
    }
}
