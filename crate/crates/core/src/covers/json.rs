use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Cover;
use crate::error::{Error, Result};
use crate::graph::{parse_graph6, to_graph6, Label};

/// Interchange form of a cover: `{"graph": <graph6>, "members": [[...]]}`.
///
/// graph6 has no labels, so member entries are vertex positions `0..n` in
/// the ambient graph's label order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub graph: String,
    pub members: Vec<Vec<Label>>,
}

impl CoverJson {
    /// Sorted members, each sorted, duplicates dropped.
    pub fn from_cover(c: &Cover) -> CoverJson {
        let mut members: Vec<Vec<Label>> = c
            .members()
            .iter()
            .map(|m| m.ones().map(|v| v as Label).collect())
            .collect();
        members.sort();
        members.dedup();
        CoverJson {
            graph: to_graph6(c.ambient()),
            members,
        }
    }

    /// The cover with members in the order given.
    pub fn to_cover(&self) -> Result<Cover> {
        let g = parse_graph6(&self.graph)?;
        Cover::new(g, self.members.clone())
    }

    pub fn parse(text: &str) -> Result<Cover> {
        let j: CoverJson =
            serde_json::from_str(text).map_err(|e| Error::input(format!("cover JSON: {e}")))?;
        j.to_cover()
    }
}

impl Serialize for Cover {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoverJson::from_cover(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cover {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Cover, D::Error> {
        CoverJson::deserialize(d)?
            .to_cover()
            .map_err(serde::de::Error::custom)
    }
}
