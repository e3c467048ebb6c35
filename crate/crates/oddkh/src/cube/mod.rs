//! The cube of resolutions: vertices, saddle edges, classified faces, and
//! sign assignments.

mod classify;
mod dump;
mod signs;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::linkdiag::{LinkDiagram, Planar, Resolution};
use crate::oddtqft;

pub use dump::CubeDump;
pub use signs::{coboundary, enumerate_sign_assignments, sign_change, SignAssignment};

/// Which of the two exceptional ladybug configurations commutes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    X,
    #[default]
    Y,
}

/// Per-crossing arrow choice. Bit `i` set means the arrow at crossing `i`
/// runs from the corner between slots 2 and 3 to the corner between slots
/// 0 and 1, instead of the other way round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Arrows(pub u64);

impl Arrows {
    pub fn flipped(self, i: usize) -> Arrows {
        Arrows(self.0 ^ 1 << i)
    }

    pub fn get(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Saddle {
    /// Circles `c0 < c1` of the source merge into `c_new` of the target.
    Merge { c0: usize, c1: usize, c_new: usize },
    /// Circle `c` of the source splits into the ordered pair `(c0, c1)`.
    Split { c: usize, c0: usize, c1: usize },
}

impl Saddle {
    pub fn is_merge(&self) -> bool {
        matches!(self, Saddle::Merge { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Source vertex; bit `crossing` is 0.
    pub from: u64,
    pub crossing: usize,
    pub saddle: Saddle,
}

impl Edge {
    pub fn to(&self) -> u64 {
        self.from | 1 << self.crossing
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
}

impl FaceType {
    pub fn numeral(self) -> &'static str {
        ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"][self as usize]
    }

    /// +1 when the face commutes, -1 when it anticommutes.
    pub fn sigma(self, theory: Theory) -> i8 {
        use FaceType::*;
        match (self, theory) {
            (I | II | III | IV | V, _) => 1,
            (VII | VIII | IX, _) => -1,
            (VI, Theory::Y) | (X, Theory::X) => 1,
            (VI, Theory::X) | (X, Theory::Y) => -1,
        }
    }

    pub fn is_ladybug(self) -> bool {
        matches!(self, FaceType::VI | FaceType::X)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceClass {
    pub ty: FaceType,
    pub sigma: i8,
}

/// A 2-face: `base` has bits `i < j` clear.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeFace {
    pub base: u64,
    pub i: usize,
    pub j: usize,
    pub ty: FaceType,
}

impl CubeFace {
    pub fn class(&self, theory: Theory) -> FaceClass {
        FaceClass { ty: self.ty, sigma: self.ty.sigma(theory) }
    }
}

/// Edge label like `01*0`: crossing 0 first, `*` at the moving crossing.
pub fn cell_name(n: usize, base: u64, stars: &[usize]) -> String {
    (0..n)
        .map(|k| {
            if stars.contains(&k) {
                '*'
            } else if base >> k & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ResolutionCube {
    n: usize,
    planar: Planar,
    arrows: Arrows,
    vertices: Vec<Resolution>,
    edges: Vec<Edge>,
    /// `edge_index[i << n | from]`
    edge_index: Vec<u32>,
    faces: Vec<CubeFace>,
}

/// Lexicographic rank of an edge over the alphabet 0 < 1 < *, crossing 0 first.
fn edge_key(n: usize, from: u64, i: usize) -> Vec<u8> {
    (0..n).map(|k| if k == i { 2 } else { (from >> k & 1) as u8 }).collect()
}

impl ResolutionCube {
    pub fn build(planar: &Planar, arrows: Arrows) -> Result<Self> {
        let n = planar.n_crossings();
        if n > 24 {
            return Err(Error::TooLarge { n, limit: 24 });
        }
        let vertices: Vec<Resolution> = (0..1u64 << n).into_par_iter().map(|b| Resolution::new(planar, b)).collect();
        let mut keys: Vec<(Vec<u8>, u64, usize)> = Vec::with_capacity(n << n.saturating_sub(1));
        for i in 0..n {
            for from in 0..1u64 << n {
                if from >> i & 1 == 0 {
                    keys.push((edge_key(n, from, i), from, i));
                }
            }
        }
        keys.par_sort_unstable();
        let edges: Vec<Edge> = keys
            .par_iter()
            .map(|(_, from, i)| {
                let saddle = classify::saddle(planar, &vertices, arrows, *from, *i)?;
                Ok(Edge { from: *from, crossing: *i, saddle })
            })
            .collect::<Result<_>>()?;
        let mut edge_index = vec![u32::MAX; n << n];
        for (k, e) in edges.iter().enumerate() {
            edge_index[e.crossing << n | e.from as usize] = k as u32;
        }
        let mut cube = ResolutionCube { n, planar: planar.clone(), arrows, vertices, edges, edge_index, faces: Vec::new() };
        let mut face_keys = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for base in 0..1u64 << n {
                    if base >> i & 1 == 0 && base >> j & 1 == 0 {
                        face_keys.push((base, i, j));
                    }
                }
            }
        }
        let faces: Vec<CubeFace> = face_keys
            .par_iter()
            .map(|&(base, i, j)| Ok(CubeFace { base, i, j, ty: classify::face_type(&cube, base, i, j)? }))
            .collect::<Result<_>>()?;
        cube.faces = faces;
        Ok(cube)
    }

    /// Cube of an oriented diagram with the given arrows.
    pub fn of(d: &LinkDiagram, arrows: Arrows) -> Result<Self> {
        Self::build(d.planar(), arrows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn planar(&self) -> &Planar {
        &self.planar
    }

    pub fn arrows(&self) -> Arrows {
        self.arrows
    }

    pub fn vertex(&self, bits: u64) -> &Resolution {
        &self.vertices[bits as usize]
    }

    pub fn vertices(&self) -> &[Resolution] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[CubeFace] {
        &self.faces
    }

    pub fn edge_id(&self, from: u64, i: usize) -> usize {
        let k = self.edge_index[i << self.n | from as usize];
        debug_assert!(k != u32::MAX);
        k as usize
    }

    pub fn edge(&self, from: u64, i: usize) -> &Edge {
        &self.edges[self.edge_id(from, i)]
    }

    pub fn classify_face(&self, k: usize, theory: Theory) -> FaceClass {
        self.faces[k].class(theory)
    }

    /// The unsigned TQFT map of an edge.
    pub fn edge_map(&self, e: &Edge) -> IntMatrix {
        let src = oddtqft::vertex_space(self.vertex(e.from));
        let dst = oddtqft::vertex_space(self.vertex(e.to()));
        match e.saddle {
            Saddle::Merge { c0, c1, c_new } => oddtqft::merge_map(&src, &dst, c0, c1, c_new),
            Saddle::Split { c, c0, c1 } => oddtqft::split_map(&src, &dst, c, c0, c1),
        }
        .expect("cube edges have consistent circle counts")
    }

    /// Edge maps for every edge, in edge order.
    pub fn edge_maps(&self) -> Vec<Arc<IntMatrix>> {
        self.edges.par_iter().map(|e| Arc::new(self.edge_map(e))).collect()
    }
}

#[cfg(test)]
mod tests;
