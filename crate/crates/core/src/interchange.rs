//! External JSON formats: named complexes and persistence intervals.
//!
//! Complexes interchange as `{"vertices": [names], "facets": [[names]]}`.
//! Intervals interchange as `{dim, birth, death, representative?}` where
//! `death` is a level number or the string "inf".

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::persistence::Interval;
use crate::simplex::{Simplex, VertexId};

/// A complex whose vertex ids index into a label table.
#[derive(Clone, Debug)]
pub struct NamedComplex {
    labels: Vec<String>,
    complex: SimplicialComplex,
}

/// What the parser had to clean up; callers may surface this.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseNotes {
    /// Input facets that are duplicates or faces of other input facets.
    pub redundant_facets: usize,
    /// Listed vertices in no facet, kept as isolated points.
    pub isolated_vertices: usize,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
}

impl NamedComplex {
    /// Labels must be distinct and cover every vertex id of the complex.
    pub fn new(labels: Vec<String>, complex: SimplicialComplex) -> Result<NamedComplex> {
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::InvalidArgument(format!("duplicate vertex name {label:?}")));
            }
        }
        if let Some(v) = complex
            .vertex_set()
            .iter()
            .find(|v| v.0 as usize >= labels.len())
        {
            return Err(Error::InvalidArgument(format!("vertex {v:?} has no label")));
        }
        Ok(NamedComplex { labels, complex })
    }

    /// Parses the interchange object. Facet lists are closed downward;
    /// listed vertices missing from every facet become isolated points, so
    /// the result's vertex set equals the listed vertices.
    pub fn from_json(value: &serde_json::Value) -> Result<(NamedComplex, ParseNotes)> {
        let parsed: ComplexJson = serde_json::from_value(value.clone())?;
        if parsed.vertices.is_empty() {
            return Err(Error::InvalidArgument("complex lists no vertices".into()));
        }
        for (i, name) in parsed.vertices.iter().enumerate() {
            if parsed.vertices[..i].contains(name) {
                return Err(Error::InvalidArgument(format!("duplicate vertex name {name:?}")));
            }
        }
        let index_of = |name: &str| -> Result<u32> {
            parsed
                .vertices
                .iter()
                .position(|v| v == name)
                .map(|i| i as u32)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))
        };
        let mut input_facets = Vec::with_capacity(parsed.facets.len());
        for facet in &parsed.facets {
            if facet.is_empty() {
                return Err(Error::MalformedSimplex("facet with no vertices".into()));
            }
            let ids: Vec<u32> = facet
                .iter()
                .map(|name| index_of(name))
                .collect::<Result<_>>()?;
            input_facets.push(Simplex::from_ids(ids)?);
        }
        let mut used = vec![false; parsed.vertices.len()];
        for facet in &input_facets {
            for v in facet.vertices() {
                used[v.0 as usize] = true;
            }
        }
        let mut all_facets = input_facets.clone();
        let mut isolated = 0;
        for (i, flag) in used.iter().enumerate() {
            if !flag {
                all_facets.push(Simplex::from_ids([i as u32])?);
                isolated += 1;
            }
        }
        let complex = SimplicialComplex::closure(all_facets);
        let redundant = input_facets
            .iter()
            .filter(|f| !complex.facets().contains(f))
            .count();
        let named = NamedComplex::new(parsed.vertices, complex)?;
        Ok((
            named,
            ParseNotes { redundant_facets: redundant, isolated_vertices: isolated },
        ))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<String> = self
            .complex
            .vertex_set()
            .iter()
            .map(|v| self.labels[v.0 as usize].clone())
            .collect();
        let facets: Vec<Vec<String>> = self
            .complex
            .facets()
            .iter()
            .map(|f| self.simplex_names(f))
            .collect();
        serde_json::to_value(ComplexJson { vertices, facets }).expect("plain data serializes")
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name_of(&self, v: VertexId) -> &str {
        &self.labels[v.0 as usize]
    }

    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|v| self.name_of(*v).to_string()).collect()
    }
}

/// A death level: a number, or "inf" for essential classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelOrInf(pub Option<u32>);

impl Serialize for LevelOrInf {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(level) => serializer.serialize_u32(level),
            None => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for LevelOrInf {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Level(u32),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Level(v) => Ok(LevelOrInf(Some(v))),
            Raw::Text(s) if s == "inf" => Ok(LevelOrInf(None)),
            Raw::Text(s) => Err(D::Error::custom(format!("expected level or \"inf\", found {s:?}"))),
        }
    }
}

/// Interval interchange record with vertex names in the representative.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IntervalJson {
    pub dim: usize,
    pub birth: u32,
    pub death: LevelOrInf,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<Vec<Vec<String>>>,
}

impl IntervalJson {
    /// Converts a computed interval, naming vertices through `name_of`.
    /// The representative is carried over only when `include_representative`
    /// is set and one was computed.
    pub fn from_interval(
        interval: &Interval,
        include_representative: bool,
        mut name_of: impl FnMut(VertexId) -> String,
    ) -> IntervalJson {
        let representative = if include_representative {
            interval.representative.as_ref().map(|cycle| {
                cycle
                    .iter()
                    .map(|s| s.vertices().iter().map(|v| name_of(*v)).collect())
                    .collect()
            })
        } else {
            None
        };
        IntervalJson {
            dim: interval.dim,
            birth: interval.birth,
            death: LevelOrInf(interval.death),
            representative,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ids: &[u32]) -> Simplex {
        Simplex::from_ids(ids.iter().copied()).unwrap()
    }

    #[test]
    fn complex_round_trip() {
        let json = serde_json::json!({
            "vertices": ["a", "b", "c"],
            "facets": [["a", "b"], ["a", "c"], ["b", "c"]]
        });
        let (named, notes) = NamedComplex::from_json(&json).unwrap();
        assert_eq!(notes, ParseNotes::default());
        assert_eq!(named.complex().facets().len(), 3);
        assert_eq!(named.to_json(), json);
    }

    #[test]
    fn redundant_facets_are_counted() {
        let json = serde_json::json!({
            "vertices": ["a", "b", "c"],
            "facets": [["a", "b", "c"], ["a", "b"], ["c"]]
        });
        let (named, notes) = NamedComplex::from_json(&json).unwrap();
        assert_eq!(named.complex().facets(), &[s(&[0, 1, 2])]);
        assert_eq!(notes.redundant_facets, 2);
    }

    #[test]
    fn unused_vertices_become_points() {
        let json = serde_json::json!({
            "vertices": ["a", "b", "lonely"],
            "facets": [["a", "b"]]
        });
        let (named, notes) = NamedComplex::from_json(&json).unwrap();
        assert_eq!(notes.isolated_vertices, 1);
        assert_eq!(named.complex().vertex_set().len(), 3);
        assert!(named.complex().contains(&s(&[2])));
    }

    #[test]
    fn unknown_facet_name_is_an_error() {
        let json = serde_json::json!({
            "vertices": ["a"],
            "facets": [["a", "ghost"]]
        });
        match NamedComplex::from_json(&json) {
            Err(Error::UnknownVariable(name)) => assert_eq!(name, "ghost"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn death_serialization() {
        assert_eq!(serde_json::to_value(LevelOrInf(Some(2))).unwrap(), serde_json::json!(2));
        assert_eq!(serde_json::to_value(LevelOrInf(None)).unwrap(), serde_json::json!("inf"));
        let back: LevelOrInf = serde_json::from_value(serde_json::json!("inf")).unwrap();
        assert_eq!(back, LevelOrInf(None));
        let back: LevelOrInf = serde_json::from_value(serde_json::json!(7)).unwrap();
        assert_eq!(back, LevelOrInf(Some(7)));
        assert!(serde_json::from_value::<LevelOrInf>(serde_json::json!("nan")).is_err());
    }

    #[test]
    fn interval_json_carries_names() {
        let interval = Interval {
            dim: 1,
            birth: 1,
            death: None,
            representative: Some(vec![s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]),
        };
        let names = ["x", "y", "z"];
        let with = IntervalJson::from_interval(&interval, true, |v| names[v.0 as usize].into());
        assert_eq!(
            serde_json::to_value(&with).unwrap(),
            serde_json::json!({
                "dim": 1, "birth": 1, "death": "inf",
                "representative": [["x","y"],["y","z"],["x","z"]]
            })
        );
        let without = IntervalJson::from_interval(&interval, false, |v| names[v.0 as usize].into());
        assert!(without.representative.is_none());
    }
}
