//! JSON matroid records: `{"n": 4, "independent": [[], [0], [1], [2]]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{Matroid, SubsetMask, MAX_GROUND_SET};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidRecord {
    pub n: usize,
    pub independent: Vec<Vec<usize>>,
}

impl MatroidRecord {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidRecord {
            n: m.n(),
            independent: m
                .independents()
                .iter()
                .map(|set| set.elements().collect())
                .collect(),
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        if self.n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge {
                n: self.n,
                limit: MAX_GROUND_SET,
            });
        }
        let mut family = Vec::with_capacity(self.independent.len());
        for set in &self.independent {
            if let Some(&element) = set.iter().find(|&&e| e >= self.n) {
                return Err(Error::BadElement { element, n: self.n });
            }
            family.push(SubsetMask::from_elements(set.iter().copied()));
        }
        Matroid::validate(self.n, family)
    }
}

pub fn parse_matroid(json: &str) -> Result<Matroid> {
    let record: MatroidRecord = serde_json::from_str(json)?;
    record.to_matroid()
}

pub fn to_json(m: &Matroid) -> String {
    serde_json::to_string(&MatroidRecord::from_matroid(m)).expect("records always serialize")
}

pub fn read_matroid_file(path: &Path) -> Result<Matroid> {
    let text = std::fs::read_to_string(path)?;
    parse_matroid(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_loop_example() {
        let m = parse_matroid(r#"{"n": 4, "independent": [[], [0], [1], [2]]}"#).unwrap();
        assert_eq!(m.independents().len(), 4);
        assert!(m.is_loop(3));
    }

    #[test]
    fn rejects_elements_outside_the_ground_set() {
        let err = parse_matroid(r#"{"n": 2, "independent": [[], [5]]}"#).unwrap_err();
        assert_eq!(err, Error::BadElement { element: 5, n: 2 });
    }

    #[test]
    fn reports_axiom_witnesses() {
        let err = parse_matroid(r#"{"n": 2, "independent": [[], [0, 1]]}"#).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
    }

    #[test]
    fn json_round_trip() {
        let m = Matroid::uniform(2, 3).unwrap();
        assert_eq!(to_json(&Matroid::uniform(1, 1).unwrap()), r#"{"n":1,"independent":[[],[0]]}"#);
        assert_eq!(parse_matroid(&to_json(&m)).unwrap(), m);
    }
}
