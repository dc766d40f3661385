//! JSON ingestion for graphs with subset families.
//!
//! ```json
//! {"vertices": ["a", "b"], "edges": [["a", "b"]],
//!  "families": [{"label": "Y0", "members": ["a", "b"]}]}
//! ```

use serde::{Deserialize, Serialize};

use super::graph::{Graph, Space, SubsetFamily};
use super::GraphError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub families: Vec<FamilyDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    #[serde(default)]
    pub label: String,
    pub members: Vec<String>,
}

impl GraphDoc {
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Schema(e.to_string()))
    }

    pub fn build(&self) -> Result<(Graph, SubsetFamily), GraphError> {
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let g = Graph::new(&self.vertices.iter().map(String::as_str).collect::<Vec<_>>(), &edges)?;
        let mut fam = SubsetFamily::new();
        for f in &self.families {
            let ids = f.members.iter().map(|m| g.id(m)).collect::<Result<Vec<_>, _>>()?;
            let label = (!f.label.is_empty()).then(|| f.label.clone());
            fam.push(label, ids)?;
        }
        Ok((g, fam))
    }

    /// Serialises a graph (and optional family) back into the document form.
    pub fn from_graph(g: &Graph, fam: Option<&SubsetFamily>) -> Self {
        GraphDoc {
            vertices: g.names().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|&(a, b)| [g.vertex_name(a).to_string(), g.vertex_name(b).to_string()])
                .collect(),
            families: fam
                .map(|f| {
                    f.members()
                        .iter()
                        .enumerate()
                        .map(|(i, m)| FamilyDoc {
                            label: f.label(i),
                            members: m.vertices.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
                        })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph document serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]],
            "families":[{"label":"Y","members":["a","c"]}]}"#;
        let doc = GraphDoc::parse(text).unwrap();
        let (g, fam) = doc.build().unwrap();
        assert_eq!(g.edges().len(), 2);
        assert_eq!(fam.label(0), "Y");
        assert_eq!(GraphDoc::from_graph(&g, Some(&fam)), doc);
    }

    #[test]
    fn schema_errors_carry_position() {
        let err = GraphDoc::parse("{\"vertices\": [\"a\"],\n \"edges\": [[\"a\"]]}").unwrap_err();
        match err {
            GraphError::Schema(msg) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let doc = GraphDoc::parse(r#"{"vertices":["a"],"edges":[],"families":[{"members":["zz"]}]}"#).unwrap();
        assert!(matches!(doc.build(), Err(GraphError::UnknownVertex(_))));
    }
}
