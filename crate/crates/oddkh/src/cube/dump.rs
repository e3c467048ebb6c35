use serde::{Deserialize, Serialize};

use super::{cell_name, ResolutionCube, Saddle, SignAssignment, Theory};

/// Diagnostic JSON view of a cube and, optionally, a sign assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeDump {
    pub crossings: usize,
    pub theory: Theory,
    pub vertices: Vec<VertexDump>,
    pub edges: Vec<EdgeDump>,
    pub faces: Vec<FaceDump>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDump {
    pub alpha: String,
    pub circles: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDump {
    pub edge: String,
    pub kind: String,
    pub from: String,
    pub to: String,
    /// Source circles touched, then target circles (ordered pair for splits).
    pub circles: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDump {
    pub face: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub sigma: i8,
}

impl ResolutionCube {
    pub fn dump(&self, theory: Theory, signs: Option<&SignAssignment>) -> CubeDump {
        let n = self.n();
        let vertices = self
            .vertices()
            .iter()
            .enumerate()
            .map(|(b, r)| VertexDump { alpha: cell_name(n, b as u64, &[]), circles: r.n_circles() })
            .collect();
        let edges = self
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let (kind, circles) = match e.saddle {
                    Saddle::Merge { c0, c1, c_new } => ("merge", vec![c0, c1, c_new]),
                    Saddle::Split { c, c0, c1 } => ("split", vec![c, c0, c1]),
                };
                EdgeDump {
                    edge: cell_name(n, e.from, &[e.crossing]),
                    kind: kind.into(),
                    from: cell_name(n, e.from, &[]),
                    to: cell_name(n, e.to(), &[]),
                    circles,
                    epsilon: signs.map(|s| s.sign(k)),
                }
            })
            .collect();
        let faces = self
            .faces()
            .iter()
            .map(|f| FaceDump {
                face: cell_name(n, f.base, &[f.i, f.j]),
                ty: f.ty.numeral().into(),
                sigma: f.ty.sigma(theory),
            })
            .collect();
        CubeDump { crossings: n, theory, vertices, edges, faces }
    }
}
