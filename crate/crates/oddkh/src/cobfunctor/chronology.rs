//! Exchanging the order of two distant cobordisms. Each check returns both
//! composites and the sign relating them.

use std::sync::Arc;

use super::rmoves::structural_arc_map;
use super::{death_diagram, death_map, saddle_map_raw, transport, transport_matrix, Host};
use crate::complex::{assemble_slice, ChainComplex, ChainMap};
use crate::cube::{Arrows, ResolutionCube, SignAssignment, Theory};
use crate::error::{Error, Result};
use crate::linkdiag::{double_saddle, saddle_construction, ArcId, LinkDiagram, SaddleSite};

#[derive(Clone, Debug)]
pub struct ChronologyPair {
    pub left: ChainMap,
    pub right: ChainMap,
    /// `left = sign * right`, if the two agree up to sign.
    pub sign: Option<i8>,
    /// The sign the odd theory predicts.
    pub expected: i8,
}

impl ChronologyPair {
    fn new(left: ChainMap, right: ChainMap, expected: i8) -> Self {
        let sign = left.equal_up_to_sign(&right);
        ChronologyPair { left, right, sign, expected }
    }

    pub fn holds(&self) -> bool {
        self.sign == Some(self.expected) && !self.left.is_zero()
    }
}

/// Unsigned renaming of arcs between two diagrams whose cubes agree; the
/// canonical sign assignments then agree too, so no signs are needed.
fn relabel(src: &Host, tgt: &Host) -> Result<ChainMap> {
    let arcs = structural_arc_map(&src.diagram, &tgt.diagram)?;
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << src.n() {
        let corr = transport(src.vertex(alpha), tgt.vertex(alpha), arcs.iter().map(|(&a, &b)| (a, b)))?;
        blocks.push((alpha, alpha, transport_matrix(&src.space(alpha), &tgt.space(alpha), &corr)?));
    }
    let map = ChainMap::from_vertex_blocks(src.complex.clone(), tgt.complex.clone(), blocks)?;
    if !map.is_chain_map() {
        return Err(Error::Invariant("renaming arcs does not give a chain map".into()));
    }
    Ok(map)
}

/// Two deaths of crossing-free circles `a` and `b`, in both orders.
pub fn death_pair(d: &LinkDiagram, a: ArcId, b: ArcId, theory: Theory) -> Result<ChronologyPair> {
    let h0 = Host::new(d, theory)?;
    let ha = Host::new(&death_diagram(d, a)?, theory)?;
    let hb = Host::new(&death_diagram(d, b)?, theory)?;
    let hab = Host::new(&death_diagram(&ha.diagram, b)?, theory)?;
    let left = death_map(&h0, &ha, a)?.then(&death_map(&ha, &hab, b)?)?;
    let right = death_map(&h0, &hb, b)?.then(&death_map(&hb, &hab, a)?)?;
    Ok(ChronologyPair::new(left, right, -1))
}

/// A death of the crossing-free circle `arc` and a saddle away from it, in
/// both orders. Deaths commute with saddles that split the all-zero
/// resolution and anticommute with saddles that merge it.
pub fn death_saddle_pair(d: &LinkDiagram, site: &SaddleSite, arc: ArcId, theory: Theory) -> Result<ChronologyPair> {
    if site.p == arc || site.q == arc {
        return Err(Error::Move("the saddle touches the dying circle".into()));
    }
    let h0 = Host::new(d, theory)?;
    // saddle first, then death
    let ss = saddle_construction(d, site)?;
    let h1 = Host::new(&ss.l1, theory)?;
    let h1d = Host::new(&death_diagram(&ss.l1, arc)?, theory)?;
    let right = saddle_map_raw(&h0, &h1, &ss)?.then(&death_map(&h1, &h1d, arc)?)?;
    // death first, then saddle
    let hd = Host::new(&death_diagram(d, arc)?, theory)?;
    let ssd = saddle_construction(&hd.diagram, site)?;
    let hd1 = Host::new(&ssd.l1, theory)?;
    let left = death_map(&h0, &hd, arc)?.then(&saddle_map_raw(&hd, &hd1, &ssd)?)?;
    let left = left.then(&relabel(&hd1, &h1d)?)?;
    let zeta = crate::linkdiag::Resolution::new(&ss.lprime, 0).n_circles();
    let zeta1 = crate::linkdiag::Resolution::new(&ss.lprime, 1 << ss.x).n_circles();
    Ok(ChronologyPair::new(left, right, if zeta1 > zeta { 1 } else { -1 }))
}

struct Slice {
    complex: Arc<ChainComplex>,
    fixed: u64,
}

fn slice_map(cube: &ResolutionCube, signs: &SignAssignment, from: &Slice, to: &Slice, x: usize, n: usize) -> Result<ChainMap> {
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << n {
        let e = cube.edge_id(alpha | from.fixed, x);
        let f = cube.edge_map(&cube.edges()[e]);
        let s = if alpha.count_ones() % 2 == 1 { -1 } else { 1 } * i64::from(signs.sign(e));
        blocks.push((alpha, alpha, f.scale(&s.into())));
    }
    debug_assert_eq!(from.fixed | 1 << x, to.fixed);
    let map = ChainMap::from_vertex_blocks(from.complex.clone(), to.complex.clone(), blocks)?;
    if !map.is_chain_map() {
        return Err(Error::Invariant("saddle slice map is not a chain map".into()));
    }
    Ok(map)
}

/// Two distant saddles in both orders, with all four saddle maps read off
/// one sign assignment of the diagram carrying both saddle crossings.
pub fn saddle_square(d: &LinkDiagram, s1: &SaddleSite, s2: &SaddleSite, theory: Theory) -> Result<ChronologyPair> {
    let (planar, x1, x2) = double_saddle(d, s1, s2)?;
    let cube = ResolutionCube::build(&planar, Arrows::default())?;
    let signs = cube.solve_sign_assignment(theory)?;
    let n = d.n_crossings();
    let free: Vec<usize> = (0..n).collect();
    let slice = |fixed: u64| -> Result<Slice> {
        let c = assemble_slice(&cube, &signs, &free, fixed, d.n_plus(), d.n_minus())?;
        c.check_d_squared()?;
        Ok(Slice { complex: Arc::new(c), fixed })
    };
    let (q00, q10, q01, q11) = (slice(0)?, slice(1 << x1)?, slice(1 << x2)?, slice(1 << x1 | 1 << x2)?);
    let left = slice_map(&cube, &signs, &q00, &q10, x1, n)?.then(&slice_map(&cube, &signs, &q10, &q11, x2, n)?)?;
    let right = slice_map(&cube, &signs, &q00, &q01, x2, n)?.then(&slice_map(&cube, &signs, &q01, &q11, x1, n)?)?;
    Ok(ChronologyPair::new(left, right, -1))
}
