//! JSON instance files: a capability space, named sets, a value model and
//! measure parameters.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::geometry::{Being, CapabilitySet, CapabilitySpace};
use crate::measures::{Evaluator, GxConfig};
use crate::quadrature::QuadConfig;
use crate::valuation::{Sensitivity, ValueModel};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Points(Vec<Being>),
    Polyline(Vec<Being>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedSet {
    pub name: String,
    #[serde(flatten)]
    pub kind: SetKind,
}

impl NamedSet {
    pub fn build(&self) -> Result<CapabilitySet> {
        match &self.kind {
            SetKind::Points(p) => CapabilitySet::points(p.clone()),
            SetKind::Polyline(p) => CapabilitySet::polyline(p.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimensions: usize,
    /// Upper corner of the capability space.
    pub space: Being,
    pub sets: Vec<NamedSet>,
    /// Defaults to the unweighted sum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueModel>,
    /// Defaults to `power: 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<Sensitivity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gx: Option<GxConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<QuadConfig>,
    /// Level values to draw in plot exports.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<f64>,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self> {
        let inst: Instance = serde_json::from_str(text)?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Instance::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dimensions;
        if d == 0 {
            return Err(Error::Invalid("dimensions must be at least 1".into()));
        }
        check_dims(d, self.space.dims())?;
        let space = self.space()?;
        if self.sets.is_empty() {
            return Err(Error::Empty("instance sets"));
        }
        let mut names = BTreeSet::new();
        for s in &self.sets {
            if !names.insert(s.name.as_str()) {
                return Err(Error::Invalid(format!("duplicate set name '{}'", s.name)));
            }
            let set = s.build()?;
            check_dims(d, set.dims())?;
            space.check_set(&set)?;
        }
        check_dims(d, self.value_model().dims())?;
        if let Some(g) = &self.gx {
            check_dims(d, g.k0.dims())?;
            g.metric.validate(d)?;
            if !space.contains(&g.k0) {
                return Err(Error::OutOfRange(format!("reference being {} outside the space", g.k0)));
            }
        }
        if let Some(t) = &self.tolerance {
            t.validate()?;
        }
        if self.levels.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(Error::Invalid("levels must be finite and non-negative".into()));
        }
        Ok(())
    }

    pub fn space(&self) -> Result<CapabilitySpace> {
        CapabilitySpace::new(self.space.clone())
    }

    pub fn value_model(&self) -> ValueModel {
        self.value.clone().unwrap_or_else(|| ValueModel::sum(self.dimensions))
    }

    pub fn sensitivity(&self) -> Sensitivity {
        self.sensitivity.unwrap_or(Sensitivity::Power(1.0))
    }

    pub fn set(&self, name: &str) -> Result<CapabilitySet> {
        self.sets
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::Invalid(format!("no set named '{name}'")))?
            .build()
    }

    pub fn built_sets(&self) -> Result<Vec<(String, CapabilitySet)>> {
        self.sets.iter().map(|s| Ok((s.name.clone(), s.build()?))).collect()
    }

    pub fn evaluator(&self) -> Result<Evaluator> {
        let mut ev = Evaluator::new(self.space()?, self.value_model(), self.sensitivity())?;
        if let Some(t) = self.tolerance {
            ev.quad = t;
        }
        Ok(ev)
    }
}

/// Instances bundled with the library.
pub mod bundled {
    use super::Instance;

    /// Reference-point examples: four staircases around `k0 = (4, 4)`.
    pub const EXAMPLE1: &str = include_str!("../instances/example1.json");
    /// Three sets with known extremes and compromise values.
    pub const EXAMPLE3: &str = include_str!("../instances/example3.json");
    /// Two finite sets and a polyline frontier.
    pub const MIXED: &str = include_str!("../instances/mixed.json");
    /// Strict but not strong dominance: `{(1,1),(2,0)}` over `{(1,1)}`.
    pub const PAIR: &str = include_str!("../instances/pair.json");

    pub const ALL: [(&str, &str); 4] = [
        ("example1", EXAMPLE1),
        ("example3", EXAMPLE3),
        ("mixed", MIXED),
        ("pair", PAIR),
    ];

    pub fn load(text: &str) -> Instance {
        Instance::from_json(text).expect("bundled instances are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_instances_validate_and_round_trip() {
        for (name, text) in bundled::ALL {
            let inst = Instance::from_json(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let again = Instance::from_json(&inst.to_json().unwrap()).unwrap();
            assert_eq!(inst, again, "{name}");
        }
    }

    #[test]
    fn defaults_and_errors() {
        let text = r#"{"dimensions": 2, "space": [10, 10], "sets": [{"name": "A", "points": [[10, 3]]}]}"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.value_model(), ValueModel::sum(2));
        assert_eq!(inst.sensitivity(), Sensitivity::Power(1.0));
        assert!(inst.set("B").is_err());

        let outside = r#"{"dimensions": 2, "space": [5, 5], "sets": [{"name": "A", "points": [[10, 3]]}]}"#;
        assert!(Instance::from_json(outside).is_err());
        let dup = r#"{"dimensions": 2, "space": [10, 10], "sets": [{"name": "A", "points": [[1, 3]]}, {"name": "A", "points": [[2, 2]]}]}"#;
        assert!(Instance::from_json(dup).is_err());
        let neg = r#"{"dimensions": 2, "space": [10, 10], "sets": [{"name": "A", "points": [[-1, 3]]}]}"#;
        assert!(Instance::from_json(neg).is_err());
        let dims = r#"{"dimensions": 3, "space": [10, 10], "sets": [{"name": "A", "points": [[1, 3]]}]}"#;
        assert!(Instance::from_json(dims).is_err());
    }
}
