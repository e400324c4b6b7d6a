use crate::error::Result;
use crate::geometry::{staircase, CapabilitySet};
use crate::par::{pairwise_sum, Execution};

use super::compromise::ie_sum;
use super::MeasureResult;

/// Exact volume of the closure of a set.
pub fn volume(set: &CapabilitySet) -> Result<MeasureResult> {
    match set {
        CapabilitySet::Polyline2D(v) => {
            let mut parts = vec![v[0].x() * v[0].y()];
            for w in v.windows(2) {
                parts.push(0.5 * (w[1].x() - w[0].x()) * (w[0].y() + w[1].y()));
            }
            Ok(MeasureResult::exact(pairwise_sum(&parts), "trapezoids"))
        }
        CapabilitySet::Points(p) if set.dims() == 2 => {
            // Descending x gives ascending y.
            let stairs = staircase(p);
            let mut y0 = 0.0;
            let parts: Vec<f64> = stairs
                .iter()
                .rev()
                .map(|a| {
                    let s = a.x() * (a.y() - y0);
                    y0 = a.y();
                    s
                })
                .collect();
            Ok(MeasureResult::exact(pairwise_sum(&parts), "strips"))
        }
        CapabilitySet::Points(_) => {
            let front = set.frontier();
            let (val, _) = ie_sum(
                &front,
                |_, hi| (hi.iter().product(), 0.0),
                Execution::default(),
            )?;
            let mut r = MeasureResult::exact(val, "inclusion-exclusion");
            r.note("points", front.len());
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Being;

    fn b(c: &[f64]) -> Being {
        Being::new(c.to_vec()).unwrap()
    }

    #[test]
    fn worked_volumes() {
        let one = CapabilitySet::points(vec![b(&[1., 1.])]).unwrap();
        let pair = CapabilitySet::points(vec![b(&[1., 1.]), b(&[2., 0.])]).unwrap();
        assert_eq!(volume(&one).unwrap().score, 1.0);
        assert_eq!(volume(&pair).unwrap().score, 1.0);
        assert_eq!(volume(&CapabilitySet::points(vec![b(&[10., 3.])]).unwrap()).unwrap().score, 30.0);
        let stairs: Vec<Being> = (1..=8).map(|i| b(&[i as f64, (9 - i) as f64])).collect();
        assert_eq!(volume(&CapabilitySet::points(stairs).unwrap()).unwrap().score, 36.0);
    }

    #[test]
    fn polyline_and_3d() {
        let p = CapabilitySet::polyline(vec![b(&[1., 4.]), b(&[3., 0.])]).unwrap();
        assert_eq!(volume(&p).unwrap().score, 8.0);
        let s = CapabilitySet::points(vec![b(&[2., 1., 1.]), b(&[1., 2., 1.])]).unwrap();
        assert_eq!(volume(&s).unwrap().score, 3.0);
    }
}
