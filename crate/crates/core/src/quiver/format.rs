use serde::{Deserialize, Serialize};

use super::Quiver;
use crate::error::{Error, Result};

/// Wire form of a quiver: `{"n": 3, "arrows": [[source, target, multiplicity], ...]}`
/// with 1-based vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    pub n: usize,
    pub arrows: Vec<[i64; 3]>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        QuiverJson {
            n: q.n(),
            arrows: q.arrows().map(|(i, j, m)| [i as i64 + 1, j as i64 + 1, m]).collect(),
        }
    }
}

impl TryFrom<&QuiverJson> for Quiver {
    type Error = Error;

    fn try_from(j: &QuiverJson) -> Result<Quiver> {
        let n = j.n;
        let mut arrows = Vec::with_capacity(j.arrows.len());
        for &[s, t, m] in &j.arrows {
            for v in [s, t] {
                if v < 1 || v as u64 > n as u64 {
                    return Err(Error::VertexOutOfRange { vertex: v.max(0) as usize, n });
                }
            }
            arrows.push((s as usize - 1, t as usize - 1, m));
        }
        Quiver::from_arrows(n, &arrows)
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let j: QuiverJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    Quiver::try_from(&j)
}

pub fn serialize_quiver(q: &Quiver) -> String {
    serde_json::to_string(&QuiverJson::from(q)).expect("quiver JSON serialises")
}

/// Graphviz rendering with one edge line per arrow.
pub fn to_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in 1..=q.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (i, j, m) in q.arrows() {
        for _ in 0..m {
            out.push_str(&format!("  {} -> {};\n", i + 1, j + 1));
        }
    }
    out.push_str("}\n");
    out
}
