use serde::{Deserialize, Serialize};

use super::Matroid;
use crate::error::{Error, Result};

/// On-disk matroid encodings.
///
/// ```json
/// {"type":"uniform","rank":2,"n":4}
/// {"type":"graphic","vertices":3,"edges":[[1,2],[2,3],[1,3]]}
/// {"type":"linear","field":2,"matrix":[[1,0,1],[0,1,1]]}
/// {"type":"rank_table","n":2,"ranks":[0,1,1,1]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform { rank: usize, n: usize },
    Graphic { vertices: usize, edges: Vec<[usize; 2]> },
    Linear { field: u64, matrix: Vec<Vec<i64>> },
    RankTable { n: usize, ranks: Vec<i64> },
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Uniform { rank, n } => Matroid::uniform(*rank, *n),
            MatroidSpec::Graphic { vertices, edges } => {
                let edges: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
                Matroid::graphic(*vertices, &edges)
            }
            MatroidSpec::Linear { field, matrix } => Matroid::linear(*field, matrix),
            MatroidSpec::RankTable { n, ranks } => Matroid::from_rank_table(*n, ranks),
        }
    }
}

impl Matroid {
    /// Parses and builds a matroid from its JSON encoding. Parse errors carry
    /// the line and column reported by the JSON reader.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: MatroidSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("matroid specs always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_encoding() {
        let u = Matroid::from_json(r#"{"type":"uniform","rank":2,"n":4}"#).unwrap();
        assert_eq!(u.full_rank(), 2);
        let g = Matroid::from_json(r#"{"type":"graphic","vertices":3,"edges":[[1,2],[2,3],[1,3]]}"#)
            .unwrap();
        assert_eq!(g.rank_table(), &[0, 1, 1, 2, 1, 2, 2, 2]);
        let l = Matroid::from_json(r#"{"type":"linear","field":2,"matrix":[[1,0,3],[0,1,1]]}"#).unwrap();
        assert_eq!(l.rank_table(), g.rank_table());
        let t = Matroid::from_json(r#"{"type":"rank_table","n":1,"ranks":[0,1]}"#).unwrap();
        assert_eq!(t.n(), 1);
    }

    #[test]
    fn linear_entries_are_reduced_in_the_stored_spec() {
        let l = Matroid::from_json(r#"{"type":"linear","field":3,"matrix":[[4,-1]]}"#).unwrap();
        assert_eq!(
            l.to_spec(),
            MatroidSpec::Linear {
                field: 3,
                matrix: vec![vec![1, 2]]
            }
        );
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = Matroid::from_json("{\"type\":\"uniform\",\n\"rank\":}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(matches!(
            Matroid::from_json(r#"{"type":"rank_table","n":2,"ranks":[0,1,1,3]}"#),
            Err(Error::NotAMatroid(_))
        ));
    }

    #[test]
    fn spec_round_trip() {
        let g = Matroid::graphic(2, &[(1, 2), (2, 2)]).unwrap();
        let again = Matroid::from_json(&g.to_json()).unwrap();
        assert_eq!(again, g);
    }
}
