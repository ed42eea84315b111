use serde::{Deserialize, Serialize};

use super::core::Matroid;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    Circuits,
    Hyperplanes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub kind: PresentationKind,
    pub sets: Vec<Vec<usize>>,
}

/// JSON description of a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ground_set: usize,
    pub rank: usize,
    pub presentation: Presentation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl MatroidSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn build(&self) -> Result<Matroid> {
        let m = match self.presentation.kind {
            PresentationKind::Circuits => {
                Matroid::from_circuits(self.ground_set, self.rank, &self.presentation.sets)?
            }
            PresentationKind::Hyperplanes => Matroid::paving_from_hyperplanes(
                self.ground_set,
                self.rank,
                &self.presentation.sets,
            )?,
        };
        Ok(match &self.name {
            Some(n) => m.with_name(n.clone()),
            None => m,
        })
    }

    /// Circuit presentation of a matroid on `{1, …, n}`.
    pub fn from_matroid(m: &Matroid) -> Result<Self> {
        let n = m.ground_size();
        if m.ground().last().unwrap_or(0) != n {
            return Err(Error::Schema(
                "ground set must be {1, …, n}; relabel first".into(),
            ));
        }
        Ok(Self {
            name: m.name().map(str::to_string),
            ground_set: n,
            rank: m.rank(),
            presentation: Presentation {
                kind: PresentationKind::Circuits,
                sets: m.circuits().iter().map(|c| c.to_vec()).collect(),
            },
            notes: None,
        })
    }
}

/// Parses and validates a matroid from JSON text.
pub fn matroid_from_json(text: &str) -> Result<Matroid> {
    MatroidSpec::from_json(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set;

    #[test]
    fn parses_both_presentations() {
        let a = matroid_from_json(
            r#"{"name":"t","ground_set":4,"rank":3,"presentation":{"kind":"circuits","sets":[[1,2,3]]}}"#,
        )
        .unwrap();
        let b = matroid_from_json(
            r#"{"ground_set":4,"rank":3,"presentation":{"kind":"hyperplanes","sets":[[1,2,3]]}}"#,
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.name(), Some("t"));
        assert_eq!(a.circuits(), &[set![1, 2, 3]]);
    }

    #[test]
    fn schema_errors_are_input_errors() {
        for bad in [
            "{",
            r#"{"ground_set":3}"#,
            r#"{"ground_set":3,"rank":2,"presentation":{"kind":"flats","sets":[]}}"#,
            r#"{"ground_set":3,"rank":2,"presentation":{"kind":"circuits","sets":[[1,2],[1,2,3]]}}"#,
        ] {
            assert!(
                matroid_from_json(bad).unwrap_err().is_input_error(),
                "{bad}"
            );
        }
    }

    #[test]
    fn round_trip_through_spec() {
        let m = matroid_from_json(
            r#"{"ground_set":4,"rank":2,"presentation":{"kind":"hyperplanes","sets":[[1,2,3]]}}"#,
        )
        .unwrap();
        let spec = MatroidSpec::from_matroid(&m).unwrap();
        assert_eq!(spec.build().unwrap(), m);
    }
}
