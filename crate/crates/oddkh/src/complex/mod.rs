//! The flattened, grading-shifted odd Khovanov complex, its homology, and
//! chain maps between such complexes.

mod homology;
mod maps;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cube::{ResolutionCube, SignAssignment, Theory};
use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix};
use crate::linkdiag::LinkDiagram;
use crate::oddtqft::{self, Monomial};
use crate::oracles::LaurentPolynomial;

pub use homology::{BigradedHomology, HomologyEntry, HomologyGroup, HomologyPresentation};
pub use maps::{homotopic_up_to_sign, ChainMap, Homotopy};

/// Which vertex and monomial a basis element comes from. Complexes built by
/// hand use vertex 0 and the running index as monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLabel {
    pub vertex: u64,
    pub monomial: Monomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainGroup {
    pub q: Vec<i32>,
    pub labels: Vec<GenLabel>,
}

impl ChainGroup {
    pub fn rank(&self) -> usize {
        self.q.len()
    }

    /// Basis indices grouped by quantum degree.
    pub fn q_blocks(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, &q) in self.q.iter().enumerate() {
            out.entry(q).or_default().push(i);
        }
        out
    }
}

/// Where each cube vertex sits inside its chain group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeLayout {
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub theory: Theory,
    vertex_offset: Vec<u32>,
    vertex_circles: Vec<u8>,
}

/// A bounded cochain complex `C_h -> C_{h+1}` of free abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    h_min: i32,
    groups: Vec<ChainGroup>,
    /// `diffs[k]` maps `groups[k]` to `groups[k + 1]`.
    diffs: Vec<IntMatrix>,
    layout: Option<CubeLayout>,
}

impl ChainComplex {
    /// A complex from explicit data; checks shapes, `d^2 = 0` and q-homogeneity.
    pub fn new(h_min: i32, groups: Vec<ChainGroup>, diffs: Vec<IntMatrix>) -> Result<Self> {
        let c = ChainComplex { h_min, groups, diffs, layout: None };
        c.check_shapes()?;
        c.check_d_squared()?;
        c.check_homogeneous()?;
        Ok(c)
    }

    /// Convenience: ranks per degree with every generator in q-degree 0.
    pub fn from_matrices(h_min: i32, diffs: Vec<IntMatrix>) -> Result<Self> {
        let mut ranks: Vec<usize> = diffs.iter().map(|d| d.cols()).collect();
        ranks.push(diffs.last().map_or(0, |d| d.rows()));
        let groups = ranks
            .into_iter()
            .map(|r| ChainGroup {
                q: vec![0; r],
                labels: (0..r as u64).map(|m| GenLabel { vertex: 0, monomial: m }).collect(),
            })
            .collect();
        Self::new(h_min, groups, diffs)
    }

    pub fn zero() -> Self {
        ChainComplex { h_min: 0, groups: Vec::new(), diffs: Vec::new(), layout: None }
    }

    fn check_shapes(&self) -> Result<()> {
        if self.diffs.len() != self.groups.len().saturating_sub(1) {
            return Err(Error::Dimension(format!("{} groups but {} differentials", self.groups.len(), self.diffs.len())));
        }
        for (k, d) in self.diffs.iter().enumerate() {
            if d.cols() != self.groups[k].rank() || d.rows() != self.groups[k + 1].rank() {
                return Err(Error::Dimension(format!(
                    "d at h = {} is {}x{}, expected {}x{}",
                    self.h_min + k as i32,
                    d.rows(),
                    d.cols(),
                    self.groups[k + 1].rank(),
                    self.groups[k].rank()
                )));
            }
        }
        for g in &self.groups {
            if g.q.len() != g.labels.len() {
                return Err(Error::Dimension("q-degrees and labels differ in length".into()));
            }
        }
        Ok(())
    }

    /// `d_{h+1} d_h = 0` for every `h`.
    pub fn check_d_squared(&self) -> Result<()> {
        let bad: Vec<i32> = (1..self.diffs.len())
            .into_par_iter()
            .filter(|&k| !self.diffs[k].mul(&self.diffs[k - 1]).is_zero())
            .map(|k| self.h_min + k as i32 - 1)
            .collect();
        match bad.first() {
            None => Ok(()),
            Some(h) => Err(Error::Invariant(format!("d^2 != 0 starting at h = {h}"))),
        }
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        for (k, d) in self.diffs.iter().enumerate() {
            for (r, c, _) in d.iter() {
                if self.groups[k + 1].q[r] != self.groups[k].q[c] {
                    return Err(Error::Invariant(format!(
                        "differential at h = {} is not q-homogeneous",
                        self.h_min + k as i32
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn h_min(&self) -> i32 {
        self.h_min
    }

    /// One past the top degree.
    pub fn h_end(&self) -> i32 {
        self.h_min + self.groups.len() as i32
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.h_min..self.h_end()
    }

    pub fn group(&self, h: i32) -> Option<&ChainGroup> {
        usize::try_from(h - self.h_min).ok().and_then(|k| self.groups.get(k))
    }

    pub fn rank(&self, h: i32) -> usize {
        self.group(h).map_or(0, |g| g.rank())
    }

    pub fn total_rank(&self) -> usize {
        self.groups.iter().map(|g| g.rank()).sum()
    }

    /// The differential out of degree `h`, as a `rank(h+1) x rank(h)` matrix.
    pub fn d(&self, h: i32) -> IntMatrix {
        match usize::try_from(h - self.h_min).ok().and_then(|k| self.diffs.get(k)) {
            Some(m) => m.clone(),
            None => IntMatrix::zero(self.rank(h + 1), self.rank(h)),
        }
    }

    pub(crate) fn d_ref(&self, h: i32) -> Option<&IntMatrix> {
        usize::try_from(h - self.h_min).ok().and_then(|k| self.diffs.get(k))
    }

    pub fn layout(&self) -> Option<&CubeLayout> {
        self.layout.as_ref()
    }

    /// Position `(h, index)` of a cube generator.
    pub fn position(&self, vertex: u64, m: Monomial) -> (i32, usize) {
        let l = self.layout.as_ref().expect("complex was not assembled from a cube");
        let h = vertex.count_ones() as i32 - l.n_minus as i32;
        let sp = oddtqft::space(l.vertex_circles[vertex as usize] as usize);
        (h, l.vertex_offset[vertex as usize] as usize + sp.index_of(m))
    }

    /// First index of `vertex` inside its chain group.
    pub fn vertex_offset(&self, vertex: u64) -> usize {
        self.layout.as_ref().expect("complex was not assembled from a cube").vertex_offset[vertex as usize] as usize
    }

    /// Sum of `(-1)^h q^{q-degree}` over the basis.
    pub fn graded_euler_characteristic(&self) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for h in self.degrees() {
            let s = if h.rem_euclid(2) == 0 { 1 } else { -1 };
            for &q in &self.group(h).unwrap().q {
                p.add_term(q, s);
            }
        }
        p
    }
}

/// Assembles the complex of `d` from its cube and a valid sign assignment.
pub fn assemble_complex(d: &LinkDiagram, cube: &ResolutionCube, signs: &SignAssignment) -> Result<ChainComplex> {
    let c = assemble_unchecked(d, cube, signs)?;
    c.check_d_squared()?;
    Ok(c)
}

/// Assembly without the `d^2` check; the check is the caller's business.
pub fn assemble_unchecked(d: &LinkDiagram, cube: &ResolutionCube, signs: &SignAssignment) -> Result<ChainComplex> {
    if cube.n() != d.n_crossings() {
        return Err(Error::Dimension("cube and diagram have different crossing counts".into()));
    }
    let all: Vec<usize> = (0..cube.n()).collect();
    assemble_slice(cube, signs, &all, 0, d.n_plus(), d.n_minus())
}

/// The complex of the subcube where the crossings outside `free` are frozen
/// at the bits of `fixed`. Slice vertex bit `j` is crossing `free[j]`.
pub fn assemble_slice(
    cube: &ResolutionCube,
    signs: &SignAssignment,
    free: &[usize],
    fixed: u64,
    n_plus: usize,
    n_minus: usize,
) -> Result<ChainComplex> {
    signs.validate(cube)?;
    let n = free.len();
    if free.iter().any(|&c| c >= cube.n() || fixed >> c & 1 == 1) {
        return Err(Error::Dimension("slice crossings out of range or frozen".into()));
    }
    let deposit = |v: u64| -> u64 {
        free.iter().enumerate().fold(fixed, |acc, (j, &c)| acc | (v >> j & 1) << c)
    };
    let nv = 1usize << n;
    let mut vertex_offset = vec![0u32; nv];
    let mut vertex_circles = vec![0u8; nv];
    let mut groups: Vec<ChainGroup> = vec![ChainGroup::default(); n + 1];
    let mut by_degree: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for v in 0..nv as u64 {
        by_degree[v.count_ones() as usize].push(v);
    }
    for (deg, vs) in by_degree.iter().enumerate() {
        let g = &mut groups[deg];
        for &v in vs {
            let r = cube.vertex(deposit(v));
            let sp = oddtqft::vertex_space(r);
            vertex_offset[v as usize] = g.rank() as u32;
            vertex_circles[v as usize] = r.n_circles() as u8;
            let base = r.n_circles() as i32 + deg as i32 + n_plus as i32 - 2 * n_minus as i32;
            for &m in sp.basis() {
                g.q.push(base - 2 * m.count_ones() as i32);
                g.labels.push(GenLabel { vertex: v, monomial: m });
            }
        }
    }
    let diffs: Vec<IntMatrix> = (0..n)
        .into_par_iter()
        .map(|deg| {
            let mut trip: Vec<(usize, usize, Int)> = Vec::new();
            for &v in &by_degree[deg] {
                for (j, &c) in free.iter().enumerate() {
                    if v >> j & 1 == 1 {
                        continue;
                    }
                    let e = cube.edge_id(deposit(v), c);
                    let m = cube.edge_map(&cube.edges()[e]);
                    let to = v | 1 << j;
                    let (r0, c0) = (vertex_offset[to as usize] as usize, vertex_offset[v as usize] as usize);
                    let neg = signs.negative[e];
                    for (r, c, x) in m.iter() {
                        trip.push((r0 + r, c0 + c, if neg { -x } else { x.clone() }));
                    }
                }
            }
            IntMatrix::from_triplets(groups[deg + 1].rank(), groups[deg].rank(), trip)
        })
        .collect();
    let layout = CubeLayout { n, n_plus, n_minus, theory: signs.theory, vertex_offset, vertex_circles };
    Ok(ChainComplex { h_min: -(n_minus as i32), groups, diffs, layout: Some(layout) })
}

/// The odd complex with default arrows and the canonical sign assignment.
pub fn odd_complex(d: &LinkDiagram, theory: Theory) -> Result<ChainComplex> {
    let cube = ResolutionCube::of(d, Default::default())?;
    let signs = cube.solve_sign_assignment(theory)?;
    assemble_complex(d, &cube, &signs)
}

/// Cube and canonical signs together, for callers that need both.
pub fn odd_complex_with_cube(d: &LinkDiagram, theory: Theory) -> Result<(ResolutionCube, SignAssignment, ChainComplex)> {
    let cube = ResolutionCube::of(d, Default::default())?;
    let signs = cube.solve_sign_assignment(theory)?;
    let c = assemble_complex(d, &cube, &signs)?;
    Ok((cube, signs, c))
}

#[cfg(test)]
mod tests;
