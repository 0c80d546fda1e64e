//! Instance files and generators.
//!
//! An instance is a JSON document:
//!
//! ```json
//! {
//!   "format": "matchoid-instance/1",
//!   "elements": [{ "id": 0, "weight": "2.5", "points": [0, 3] }],
//!   "matroids": [{ "kind": "uniform", "ground": [0], "rank": 1 }],
//!   "stream_order": [0],
//!   "universe_size": 4,
//!   "point_weights": { "3": "2" },
//!   "metadata": { "generator": "manual", "seed": null, "params": {} }
//! }
//! ```
//!
//! `stream_order` defaults to increasing id order; `points`,
//! `universe_size` and `point_weights` are only needed for coverage runs.
//! Matroid kinds are `uniform {ground, rank}`, `partition {blocks:
//! [{elements, capacity}]}`, `graphic {edges: [{element, u, v}]}` and
//! `explicit {ground, independent}`.

mod generate;

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coverage_oracle::CoverageInstance;
use crate::{
    Block, ElementId, ElementSet, Error, Matchoid, Matroid, PointId, Result, Weight, WeightFn,
};

pub use generate::{
    encode_independent_set, gen_coverage, gen_coverage_matchoid, gen_random_matchoid, Graph, Kind,
};

pub const FORMAT: &str = "matchoid-instance/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    pub id: ElementId,
    pub weight: Weight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub element: ElementId,
    pub u: u32,
    pub v: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform {
        ground: Vec<ElementId>,
        rank: usize,
    },
    Partition {
        blocks: Vec<Block>,
    },
    Graphic {
        edges: Vec<EdgeSpec>,
    },
    Explicit {
        ground: Vec<ElementId>,
        independent: Vec<Vec<ElementId>>,
    },
}

impl MatroidSpec {
    pub fn ground(&self) -> Vec<ElementId> {
        match self {
            MatroidSpec::Uniform { ground, .. } | MatroidSpec::Explicit { ground, .. } => {
                ground.clone()
            }
            MatroidSpec::Partition { blocks } => blocks
                .iter()
                .flat_map(|b| b.elements.iter().copied())
                .collect(),
            MatroidSpec::Graphic { edges } => edges.iter().map(|e| e.element).collect(),
        }
    }

    pub fn build(&self) -> Result<Matroid> {
        Ok(match self {
            MatroidSpec::Uniform { ground, rank } => {
                Matroid::uniform(ground.iter().copied().collect(), *rank)
            }
            MatroidSpec::Partition { blocks } => Matroid::partition(blocks.clone())?,
            MatroidSpec::Graphic { edges } => {
                Matroid::graphic(edges.iter().map(|e| (e.element, (e.u, e.v))).collect())
            }
            MatroidSpec::Explicit {
                ground,
                independent,
            } => Matroid::explicit(
                ground.iter().copied().collect(),
                independent
                    .iter()
                    .map(|s| s.iter().copied().collect())
                    .collect(),
            )?,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default)]
    pub generator: String,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub format: String,
    pub elements: Vec<ElementSpec>,
    pub matroids: Vec<MatroidSpec>,
    #[serde(default)]
    pub stream_order: Vec<ElementId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_weights: Option<BTreeMap<PointId, Weight>>,
    #[serde(default)]
    pub metadata: Metadata,
}

impl Instance {
    pub fn new(elements: Vec<ElementSpec>, matroids: Vec<MatroidSpec>) -> Self {
        let mut inst = Instance {
            format: FORMAT.into(),
            elements,
            matroids,
            stream_order: Vec::new(),
            universe_size: None,
            point_weights: None,
            metadata: Metadata::default(),
        };
        inst.stream_order = inst.ids_sorted();
        inst
    }

    fn ids_sorted(&self) -> Vec<ElementId> {
        let mut ids: Vec<ElementId> = self.elements.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids
    }

    pub fn ids(&self) -> ElementSet {
        self.elements.iter().map(|e| e.id).collect()
    }

    /// Checks the structural invariants; errors name the offending field.
    pub fn validate(&self) -> Result<()> {
        if self.format != FORMAT {
            return Err(Error::schema(
                "format",
                format!("expected \"{FORMAT}\", found \"{}\"", self.format),
            ));
        }
        let mut ids = BTreeSet::new();
        for (i, e) in self.elements.iter().enumerate() {
            if !ids.insert(e.id) {
                return Err(Error::schema(
                    format!("elements[{i}].id"),
                    format!("duplicate id {}", e.id.0),
                ));
            }
            if let (Some(points), Some(m)) = (&e.points, self.universe_size) {
                if let Some(p) = points.iter().find(|&&p| p as usize >= m) {
                    return Err(Error::schema(
                        format!("elements[{i}].points"),
                        format!("point {p} outside universe of size {m}"),
                    ));
                }
            }
            if e.points.is_some() && self.universe_size.is_none() {
                return Err(Error::schema(
                    "universe_size",
                    "required when elements carry points",
                ));
            }
        }
        let mut order = self.stream_order.clone();
        order.sort_unstable();
        if order != self.ids_sorted() {
            return Err(Error::schema(
                "stream_order",
                "must be a permutation of the element ids",
            ));
        }
        for (i, m) in self.matroids.iter().enumerate() {
            if let Some(e) = m.ground().into_iter().find(|e| !ids.contains(e)) {
                return Err(Error::schema(
                    format!("matroids[{i}]"),
                    format!("ground element {} is not an element", e.0),
                ));
            }
        }
        if let (Some(pw), Some(m)) = (&self.point_weights, self.universe_size) {
            if let Some((p, _)) = pw.iter().find(|(&p, _)| p as usize >= m) {
                return Err(Error::schema(
                    "point_weights",
                    format!("point {p} outside universe of size {m}"),
                ));
            }
            if let Some((p, w)) = pw.iter().find(|(_, w)| **w < Weight::zero()) {
                return Err(Error::schema(
                    "point_weights",
                    format!("point {p} has negative weight {w}"),
                ));
            }
        }
        Ok(())
    }

    pub fn to_matchoid(&self) -> Result<Matchoid> {
        let matroids = self
            .matroids
            .iter()
            .enumerate()
            .map(|(i, m)| {
                m.build()
                    .map_err(|e| Error::schema(format!("matroids[{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Matchoid::new(self.ids(), matroids)
    }

    /// Element weights, with arrival indices following `stream_order`.
    pub fn weights(&self) -> WeightFn {
        let by_id: BTreeMap<ElementId, Weight> =
            self.elements.iter().map(|e| (e.id, e.weight)).collect();
        WeightFn::from_ordered(self.stream_order.iter().map(|&e| (e, by_id[&e])))
    }

    pub fn coverage(&self) -> Result<CoverageInstance> {
        let m = self
            .universe_size
            .ok_or_else(|| Error::schema("universe_size", "coverage runs need a point universe"))?;
        let pointsets = self
            .elements
            .iter()
            .map(|e| (e.id, e.points.iter().flatten().copied().collect()))
            .collect();
        CoverageInstance::new(m, pointsets, self.point_weights.clone().unwrap_or_default())
    }

    pub fn from_reader(reader: impl Read) -> Result<Self> {
        let mut de = serde_json::Deserializer::from_reader(reader);
        let mut inst: Instance = serde_path_to_error::deserialize(&mut de).map_err(|err| {
            let path = err.path().to_string();
            let inner = err.into_inner();
            Error::schema(
                format!("{path} (line {}, column {})", inner.line(), inner.column()),
                inner.to_string(),
            )
        })?;
        if inst.stream_order.is_empty() {
            inst.stream_order = inst.ids_sorted();
        }
        inst.validate()?;
        Ok(inst)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_reader(text.as_bytes())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instances serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, mut writer: impl Write) -> Result<()> {
        writer.write_all(self.to_json().as_bytes())?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = r#"{
      "format": "matchoid-instance/1",
      "elements": [
        {"id": 0, "weight": "2"}, {"id": 1, "weight": "3"}, {"id": 2, "weight": "2"}
      ],
      "matroids": [
        {"kind": "uniform", "ground": [0, 1], "rank": 1},
        {"kind": "uniform", "ground": [1, 2], "rank": 1}
      ]
    }"#;

    #[test]
    fn missing_stream_order_defaults_to_ids() {
        let inst = Instance::from_json(P3).unwrap();
        assert_eq!(
            inst.stream_order,
            vec![ElementId(0), ElementId(1), ElementId(2)]
        );
        let mc = inst.to_matchoid().unwrap();
        assert_eq!(mc.ell(), 2);
        assert_eq!(inst.weights().weight(ElementId(1)), Weight::integer(3));
    }

    #[test]
    fn unknown_kind_is_a_schema_error() {
        let bad = P3.replacen("\"uniform\"", "\"hypergraph\"", 1);
        match Instance::from_json(&bad) {
            Err(Error::Schema { location, message }) => {
                assert!(location.starts_with("matroids[0]"), "{location}");
                assert!(location.contains("line"));
                assert!(message.contains("hypergraph"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structural_violations() {
        let dup = P3.replacen("\"id\": 1", "\"id\": 0", 1);
        assert!(matches!(
            Instance::from_json(&dup),
            Err(Error::Schema { .. })
        ));
        let order = P3.replacen("\"matroids\"", "\"stream_order\": [0, 1], \"matroids\"", 1);
        assert!(
            matches!(Instance::from_json(&order), Err(Error::Schema { location, .. }) if location == "stream_order")
        );
        let ground = P3.replacen("[1, 2]", "[1, 7]", 1);
        assert!(matches!(
            Instance::from_json(&ground),
            Err(Error::Schema { .. })
        ));
        let weight = P3.replacen("\"3\"", "\"x\"", 1);
        assert!(matches!(
            Instance::from_json(&weight),
            Err(Error::Schema { .. })
        ));
        let version = P3.replacen("/1", "/9", 1);
        assert!(
            matches!(Instance::from_json(&version), Err(Error::Schema { location, .. }) if location == "format")
        );
    }

    #[test]
    fn round_trip() {
        let inst = Instance::from_json(P3).unwrap();
        assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn coverage_view() {
        let mut inst = Instance::from_json(P3).unwrap();
        inst.universe_size = Some(3);
        inst.elements[0].points = Some(vec![0, 2]);
        inst.point_weights = Some([(2, Weight::integer(5))].into_iter().collect());
        let cov = inst.coverage().unwrap();
        assert_eq!(cov.points(ElementId(0)).len(), 2);
        assert!(cov.points(ElementId(1)).is_empty());
        assert_eq!(cov.point_weight(2), Weight::integer(5));
        assert_eq!(cov.point_weight(0), Weight::integer(1));
        inst.universe_size = None;
        assert!(inst.coverage().is_err());
    }
}
