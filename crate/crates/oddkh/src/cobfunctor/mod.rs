//! Chain maps for elementary link cobordisms and their composites.
//!
//! Every map goes between complexes built with the canonical sign
//! assignment of their diagrams, wrapped in a [`Host`].

mod chronology;
mod movie;
mod relations;
mod rmoves;

use std::sync::Arc;

use crate::complex::{assemble_complex, ChainComplex, ChainMap};
use crate::cube::{Arrows, ResolutionCube, SignAssignment, Theory};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::linkdiag::{saddle_construction, ArcId, LinkDiagram, Resolution, SaddleSite, SmoothedSaddle};
use crate::oddtqft::{self, merge_with, ExteriorSpace};

pub use chronology::{death_pair, death_saddle_pair, saddle_square, ChronologyPair};
pub use movie::{evaluate_combination, evaluate_movie, MovieEvent, MovieResult, MovieScript};
pub use relations::{
    coloring_relations, dot_slide, hecke_swap, movie_move_11, movie_move_12, relation_map, ColoringRelation, Comparison,
    HeckeCheck,
};
pub use rmoves::{
    isotopy_map, r1_map, r2_map, solve_block_signs, structural_arc_map, Block, Direction, R1Variant, R2Variant,
};

/// A diagram with its cube, canonical signs and complex.
#[derive(Clone, Debug)]
pub struct Host {
    pub diagram: LinkDiagram,
    pub cube: ResolutionCube,
    pub signs: SignAssignment,
    pub complex: Arc<ChainComplex>,
}

impl Host {
    pub fn new(d: &LinkDiagram, theory: Theory) -> Result<Self> {
        let cube = ResolutionCube::of(d, Arrows::default())?;
        let signs = cube.solve_sign_assignment(theory)?;
        Self::with_signs(d, cube, signs)
    }

    pub fn with_signs(d: &LinkDiagram, cube: ResolutionCube, signs: SignAssignment) -> Result<Self> {
        let complex = Arc::new(assemble_complex(d, &cube, &signs)?);
        Ok(Host { diagram: d.clone(), cube, signs, complex })
    }

    pub fn theory(&self) -> Theory {
        self.signs.theory
    }

    pub fn n(&self) -> usize {
        self.cube.n()
    }

    pub fn vertex(&self, alpha: u64) -> &Resolution {
        self.cube.vertex(alpha)
    }

    pub fn s_value(&self, alpha: u64) -> i64 {
        s_of(self.vertex(alpha).n_circles(), self.vertex(0).n_circles(), alpha)
    }

    /// Basis of the summand at a vertex.
    pub fn space(&self, alpha: u64) -> Arc<ExteriorSpace> {
        oddtqft::vertex_space(self.vertex(alpha))
    }
}

fn s_of(c_alpha: usize, c_zeta: usize, alpha: u64) -> i64 {
    let total = c_alpha + c_zeta + alpha.count_ones() as usize;
    debug_assert!(total.is_multiple_of(2), "circle parity");
    (total / 2) as i64
}

/// `S(L, α) = (c(α) + c(ζ) + deg α) / 2`.
pub fn s_value(d: &LinkDiagram, alpha: u64) -> Result<i64> {
    if d.n_crossings() < 64 && alpha >> d.n_crossings() != 0 {
        return Err(Error::AlphaLength { expected: d.n_crossings(), got: 64 - alpha.leading_zeros() as usize });
    }
    let c = Resolution::new(d.planar(), alpha).n_circles();
    let z = Resolution::new(d.planar(), 0).n_circles();
    Ok(s_of(c, z, alpha))
}

fn sign_of(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Circle correspondence induced by pairs of arcs. Circles that no pair
/// reaches stay `usize::MAX`.
pub(crate) fn transport<I>(src: &Resolution, dst: &Resolution, pairs: I) -> Result<Vec<usize>>
where
    I: IntoIterator<Item = (ArcId, ArcId)>,
{
    let mut corr = vec![usize::MAX; src.n_circles()];
    for (a, b) in pairs {
        let (Some(i), Some(j)) = (src.circle_of(a), dst.circle_of(b)) else { continue };
        if corr[i] == usize::MAX {
            corr[i] = j;
        } else if corr[i] != j {
            return Err(Error::Invariant(format!("arc {a} lands on two circles")));
        }
    }
    Ok(corr)
}

/// Checks that every circle except `skip` is sent somewhere, injectively.
pub(crate) fn check_corr(corr: &[usize], skip: &[usize]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for (i, &j) in corr.iter().enumerate() {
        if skip.contains(&i) {
            continue;
        }
        if j == usize::MAX || !seen.insert(j) {
            return Err(Error::Invariant("circle correspondence is not injective".into()));
        }
    }
    Ok(())
}

/// The algebra isomorphism of a bijective circle correspondence.
pub(crate) fn transport_matrix(src: &ExteriorSpace, dst: &ExteriorSpace, corr: &[usize]) -> Result<IntMatrix> {
    check_corr(corr, &[])?;
    if src.n_circles() != dst.n_circles() {
        return Err(Error::Invariant("transport between different circle counts".into()));
    }
    Ok(merge_with(src, dst, corr))
}

fn same_arcs(d: &LinkDiagram) -> impl Iterator<Item = (ArcId, ArcId)> + '_ {
    d.arcs().iter().map(|&a| (a, a))
}

/// `d` with one more crossing-free circle; returns the new arc id.
pub fn birth_diagram(d: &LinkDiagram) -> Result<(LinkDiagram, ArcId)> {
    let a = d.planar().max_arc() + 1;
    let mut free = d.free_circles().to_vec();
    free.push(a);
    Ok((LinkDiagram::from_crossings(d.crossings(), free)?, a))
}

/// `d` without the crossing-free circle `arc`.
pub fn death_diagram(d: &LinkDiagram, arc: ArcId) -> Result<LinkDiagram> {
    if !d.has_arc(arc) {
        return Err(Error::UnknownArc(arc));
    }
    if !d.free_circles().contains(&arc) {
        return Err(Error::Move(format!("arc {arc} is not a crossing-free circle")));
    }
    let free: Vec<ArcId> = d.free_circles().iter().copied().filter(|&f| f != arc).collect();
    LinkDiagram::from_crossings(d.crossings(), free)
}

fn check_same_crossings(src: &Host, tgt: &Host) -> Result<()> {
    if src.diagram.crossings() != tgt.diagram.crossings() {
        return Err(Error::Move("the two diagrams differ away from the free circles".into()));
    }
    Ok(())
}

/// Birth of the circle `arc` of `tgt`; no signs.
pub fn birth_map(src: &Host, tgt: &Host, arc: ArcId) -> Result<ChainMap> {
    check_same_crossings(src, tgt)?;
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << src.n() {
        let (r0, r1) = (src.vertex(alpha), tgt.vertex(alpha));
        let corr = transport(r0, r1, same_arcs(&src.diagram))?;
        check_corr(&corr, &[])?;
        if corr.contains(&r1.circle_of(arc).unwrap()) {
            return Err(Error::Invariant("newborn circle already present".into()));
        }
        blocks.push((alpha, alpha, merge_with(&src.space(alpha), &tgt.space(alpha), &corr)));
    }
    ChainMap::from_vertex_blocks(src.complex.clone(), tgt.complex.clone(), blocks)
}

/// Death of the crossing-free circle `arc` of `src`, clockwise, with sign `(-1)^{S(src, α)}`.
pub fn death_map(src: &Host, tgt: &Host, arc: ArcId) -> Result<ChainMap> {
    check_same_crossings(src, tgt)?;
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << src.n() {
        let (r0, r1) = (src.vertex(alpha), tgt.vertex(alpha));
        let dying = r0.circle_of(arc).ok_or(Error::UnknownArc(arc))?;
        let corr = transport(r0, r1, same_arcs(&tgt.diagram))?;
        check_corr(&corr, &[dying])?;
        let m = oddtqft::death_with(&src.space(alpha), &tgt.space(alpha), dying, &corr);
        blocks.push((alpha, alpha, m.scale(&sign_of(src.s_value(alpha) % 2 == 1).into())));
    }
    ChainMap::from_vertex_blocks(src.complex.clone(), tgt.complex.clone(), blocks)
}

/// A dot on the circle through `arc`, with sign `(-1)^{S(L, α)}`.
pub fn dot_map(host: &Host, arc: ArcId) -> Result<ChainMap> {
    if !host.diagram.has_arc(arc) {
        return Err(Error::UnknownArc(arc));
    }
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << host.n() {
        let c = host.vertex(alpha).circle_of(arc).unwrap();
        let m = oddtqft::dot_map(&host.space(alpha), c)?;
        blocks.push((alpha, alpha, m.scale(&sign_of(host.s_value(alpha) % 2 == 1).into())));
    }
    ChainMap::from_vertex_blocks(host.complex.clone(), host.complex.clone(), blocks)
}

/// The enlarged cube of a saddle with the sign assignment extended from the
/// canonical ones of the two ends.
pub(crate) fn saddle_cube(src: &Host, tgt: &Host, ss: &SmoothedSaddle) -> Result<(ResolutionCube, SignAssignment)> {
    let x = ss.x;
    if x != src.n() || tgt.n() != src.n() {
        return Err(Error::Invariant("saddle crossing is not the last one".into()));
    }
    let cube = ResolutionCube::build(&ss.lprime, Arrows::default())?;
    let mut partial = SignAssignment { negative: vec![false; cube.edges().len()], theory: src.theory() };
    let mut on_sub = vec![false; cube.edges().len()];
    for (k, e) in cube.edges().iter().enumerate() {
        if e.crossing == x {
            continue;
        }
        let beta = e.from & !(1 << x);
        let end = if e.from >> x & 1 == 0 { src } else { tgt };
        partial.negative[k] = end.signs.negative[end.cube.edge_id(beta, e.crossing)];
        on_sub[k] = true;
    }
    let ext = cube.extend_sign_assignment(&on_sub, &partial)?;
    Ok((cube, ext))
}

/// The saddle map before normalization: `(-1)^{deg α} ε'(α⋆) F(α⋆)`,
/// transported to the complexes of the two ends.
pub fn saddle_map_raw(src: &Host, tgt: &Host, ss: &SmoothedSaddle) -> Result<ChainMap> {
    let (cube, ext) = saddle_cube(src, tgt, ss)?;
    let x = ss.x;
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << src.n() {
        let e = cube.edge_id(alpha, x);
        let f = cube.edge_map(&cube.edges()[e]);
        let (rp0, rp1) = (cube.vertex(alpha), cube.vertex(alpha | 1 << x));
        let c0 = transport(src.vertex(alpha), rp0, same_arcs(&src.diagram))?;
        let c1 = transport(rp1, tgt.vertex(alpha), ss.to_l1.iter().map(|(&a, &b)| (a, b)))?;
        let t0 = transport_matrix(&src.space(alpha), &oddtqft::vertex_space(rp0), &c0)?;
        let t1 = transport_matrix(&oddtqft::vertex_space(rp1), &tgt.space(alpha), &c1)?;
        let s = sign_of(alpha.count_ones() % 2 == 1) * i64::from(ext.sign(e));
        blocks.push((alpha, alpha, t1.mul(&f).mul(&t0).scale(&s.into())));
    }
    let map = ChainMap::from_vertex_blocks(src.complex.clone(), tgt.complex.clone(), blocks)?;
    if !map.is_chain_map() {
        return Err(Error::Invariant("saddle map is not a chain map".into()));
    }
    Ok(map)
}

/// The resulting diagram of a saddle together with its construction.
pub fn saddle_diagram(d: &LinkDiagram, site: &SaddleSite) -> Result<SmoothedSaddle> {
    saddle_construction(d, site)
}

/// The normalized saddle map.
pub fn saddle_map(src: &Host, tgt: &Host, ss: &SmoothedSaddle) -> Result<ChainMap> {
    Ok(saddle_map_raw(src, tgt, ss)?.normalized().0)
}

/// Per-vertex maps of a saddle between two hosts given directly, for the
/// explicit merge and split formulas.
pub fn explicit_saddle_blocks(src: &Host, tgt: &Host, ss: &SmoothedSaddle, with_s_sign: bool) -> Result<ChainMap> {
    let cube = ResolutionCube::build(&ss.lprime, Arrows::default())?;
    let x = ss.x;
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << src.n() {
        let f = cube.edge_map(cube.edge(alpha, x));
        let (rp0, rp1) = (cube.vertex(alpha), cube.vertex(alpha | 1 << x));
        let c0 = transport(src.vertex(alpha), rp0, same_arcs(&src.diagram))?;
        let c1 = transport(rp1, tgt.vertex(alpha), ss.to_l1.iter().map(|(&a, &b)| (a, b)))?;
        let t0 = transport_matrix(&src.space(alpha), &oddtqft::vertex_space(rp0), &c0)?;
        let t1 = transport_matrix(&oddtqft::vertex_space(rp1), &tgt.space(alpha), &c1)?;
        let s = if with_s_sign { sign_of(src.s_value(alpha) % 2 == 1) } else { 1 };
        blocks.push((alpha, alpha, t1.mul(&f).mul(&t0).scale(&s.into())));
    }
    ChainMap::from_vertex_blocks(src.complex.clone(), tgt.complex.clone(), blocks)
}

#[cfg(test)]
mod tests;
