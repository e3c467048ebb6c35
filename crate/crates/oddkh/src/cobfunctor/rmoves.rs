//! Reidemeister I/II maps and isotopies. Each is given by unsigned blocks
//! between cube vertices; the relative block signs are the unique ones (up
//! to one overall sign) making the result a chain map.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_corr, transport, transport_matrix, Host};
use crate::complex::ChainMap;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::linkdiag::{ArcId, KinkSite, LinkDiagram, R2Config};
use crate::oddtqft::{death_with, merge_with, split_with};

/// One summand of a chain map: `m` from vertex `src` to vertex `tgt`.
#[derive(Clone, Debug)]
pub struct Block {
    pub src: u64,
    pub tgt: u64,
    pub m: IntMatrix,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Do,
    Undo,
}

pub type R1Variant = Direction;
pub type R2Variant = Direction;

struct Parity {
    parent: Vec<usize>,
    odd: Vec<bool>,
}

impl Parity {
    fn new(n: usize) -> Self {
        Parity { parent: (0..n).collect(), odd: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut odd = false;
        let mut r = x;
        while self.parent[r] != r {
            odd ^= self.odd[r];
            r = self.parent[r];
        }
        // path compression
        let (mut y, mut acc) = (x, odd);
        while self.parent[y] != y {
            let next = self.parent[y];
            let here = self.odd[y];
            self.parent[y] = r;
            self.odd[y] = acc;
            acc ^= here;
            y = next;
        }
        (r, odd)
    }

    fn union(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == odd;
        }
        self.parent[ra] = rb;
        self.odd[ra] = pa ^ pb ^ odd;
        true
    }
}

/// Signs the blocks so that their sum is a chain map `src -> tgt`, then
/// normalizes. Every commuting square must involve at most two nonzero
/// composites, which then have to agree up to sign.
pub fn solve_block_signs(src: &Host, tgt: &Host, blocks: Vec<Block>) -> Result<ChainMap> {
    let mut eqs: BTreeMap<(u64, u64), Vec<(usize, i64, IntMatrix)>> = BTreeMap::new();
    let src_maps = src.cube.edge_maps();
    let tgt_maps = tgt.cube.edge_maps();
    for (b, blk) in blocks.iter().enumerate() {
        for i in 0..tgt.n() {
            if blk.tgt >> i & 1 == 1 {
                continue;
            }
            let e = tgt.cube.edge_id(blk.tgt, i);
            let m = tgt_maps[e].mul(&blk.m);
            if !m.is_zero() {
                eqs.entry((blk.src, blk.tgt | 1 << i)).or_default().push((b, i64::from(tgt.signs.sign(e)), m));
            }
        }
        for i in 0..src.n() {
            if blk.src >> i & 1 == 0 {
                continue;
            }
            let from = blk.src & !(1 << i);
            let e = src.cube.edge_id(from, i);
            let m = blk.m.mul(&src_maps[e]);
            if !m.is_zero() {
                eqs.entry((from, blk.tgt)).or_default().push((b, -i64::from(src.signs.sign(e)), m));
            }
        }
    }
    let mut uf = Parity::new(blocks.len());
    for ((a, g), terms) in &eqs {
        match terms.as_slice() {
            [(b1, k1, m1), (b2, k2, m2)] => {
                let r = m1
                    .equal_up_to_sign(m2)
                    .ok_or_else(|| Error::Invariant(format!("square at vertices {a} -> {g} cannot be made to commute")))?;
                let odd = -(k1 * k2 * i64::from(r)) < 0;
                if !uf.union(*b1, *b2, odd) {
                    return Err(Error::Invariant(format!("inconsistent block signs at vertices {a} -> {g}")));
                }
            }
            _ => {
                return Err(Error::Invariant(format!(
                    "{} nonzero composites at vertices {a} -> {g}",
                    terms.len()
                )))
            }
        }
    }
    let signed: Vec<(u64, u64, IntMatrix)> = blocks
        .into_iter()
        .enumerate()
        .map(|(b, blk)| {
            let m = if uf.find(b).1 { blk.m.neg() } else { blk.m };
            (blk.src, blk.tgt, m)
        })
        .collect();
    let map = ChainMap::from_vertex_blocks(src.complex.clone(), tgt.complex.clone(), signed)?;
    if !map.is_chain_map() {
        return Err(Error::Invariant("signed blocks do not form a chain map".into()));
    }
    Ok(map.normalized().0)
}

/// Inserts bit `b` at position `pos`.
pub(crate) fn insert_bit(v: u64, pos: usize, b: u64) -> u64 {
    let low = v & ((1u64 << pos) - 1);
    ((v >> pos) << (pos + 1)) | b << pos | low
}

/// Vertex of the big cube with `x` and `y` set to `bx`, `by`.
fn insert_two(v: u64, x: usize, bx: u64, y: usize, by: u64) -> u64 {
    if x < y {
        insert_bit(insert_bit(v, x, bx), y, by)
    } else {
        insert_bit(insert_bit(v, y, by), x, bx)
    }
}

fn lone_circle(r: &crate::linkdiag::Resolution, arcs: &[ArcId]) -> Result<usize> {
    let c = r.circle_of(arcs[0]).ok_or(Error::UnknownArc(arcs[0]))?;
    let mut want: Vec<ArcId> = arcs.to_vec();
    want.sort_unstable();
    want.dedup();
    let mut have = r.circles()[c].clone();
    have.sort_unstable();
    if have != want {
        return Err(Error::Invariant("expected a small circle in the move region".into()));
    }
    Ok(c)
}

/// Reidemeister I. The positive kink's map lives on the 0-smoothing of the
/// kink (where the loop is its own circle), the negative one's on the
/// 1-smoothing.
pub fn r1_map(small: &Host, big: &Host, site: &KinkSite, dir: Direction) -> Result<ChainMap> {
    let (k, ell, p1) = (site.k, site.ell, site.p1);
    let layer = if site.sign > 0 { 0 } else { 1 };
    let small_arcs: Vec<(ArcId, ArcId)> = small.diagram.arcs().iter().map(|&a| (a, a)).collect();
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << small.n() {
        let beta = insert_bit(alpha, k, layer);
        let (rs, rb) = (small.vertex(alpha), big.vertex(beta));
        let (ss, sb) = (small.space(alpha), big.space(beta));
        let e = lone_circle(rb, &[ell])?;
        let m = match (site.sign > 0, dir) {
            (true, Direction::Do) => {
                // m ↦ (c' - e) ∧ m
                let corr = transport(rs, rb, small_arcs.iter().copied())?;
                check_corr(&corr, &[])?;
                let cp = rb.circle_of(p1).unwrap();
                split_with(&ss, &sb, &corr, cp, e)
            }
            (true, Direction::Undo) => {
                let corr = transport(rb, rs, small_arcs.iter().copied())?;
                check_corr(&corr, &[e])?;
                death_with(&sb, &ss, e, &corr)
            }
            (false, Direction::Do) => {
                let corr = transport(rs, rb, small_arcs.iter().copied())?;
                check_corr(&corr, &[])?;
                merge_with(&ss, &sb, &corr)
            }
            (false, Direction::Undo) => {
                let corr = transport(rb, rs, small_arcs.iter().copied().chain([(ell, p1)]))?;
                merge_with(&sb, &ss, &corr)
            }
        };
        blocks.push(match dir {
            Direction::Do => Block { src: alpha, tgt: beta, m },
            Direction::Undo => Block { src: beta, tgt: alpha, m },
        });
    }
    match dir {
        Direction::Do => solve_block_signs(small, big, blocks),
        Direction::Undo => solve_block_signs(big, small, blocks),
    }
}

/// Reidemeister II by Gaussian elimination of the bigon circle: the
/// inclusion lands on the `(x,y) = (1,0)` layer with a correction on
/// `(0,1)`; the retraction reads `(1,0)` and corrects from `(0,1)`.
pub fn r2_map(small: &Host, big: &Host, cfg: &R2Config, dir: Direction) -> Result<ChainMap> {
    let (x, y) = (cfg.x, cfg.y);
    let small_arcs: Vec<(ArcId, ArcId)> = small.diagram.arcs().iter().map(|&a| (a, a)).collect();
    let outside: Vec<(ArcId, ArcId)> =
        big.diagram.arcs().iter().filter(|&&a| a != cfg.o2 && a != cfg.u2).map(|&a| (a, a)).collect();
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << small.n() {
        let v = |bx, by| insert_two(alpha, x, bx, y, by);
        let (v00, v10, v01, v11) = (v(0, 0), v(1, 0), v(0, 1), v(1, 1));
        let rs = small.vertex(alpha);
        let (r00, r10, r01, r11) = (big.vertex(v00), big.vertex(v10), big.vertex(v01), big.vertex(v11));
        let ss = small.space(alpha);
        let (s00, s10, s01, s11) = (big.space(v00), big.space(v10), big.space(v01), big.space(v11));
        let b = lone_circle(r01, &[cfg.o2, cfg.u2])?;
        match dir {
            Direction::Do => {
                let c = transport(rs, r10, small_arcs.iter().copied())?;
                let inc = transport_matrix(&ss, &s10, &c)?;
                let c11 = transport(r11, r01, outside.iter().copied())?;
                check_corr(&c11, &[])?;
                let lift = merge_with(&s11, &s01, &c11);
                let d = big.cube.edge_map(big.cube.edge(v10, y));
                blocks.push(Block { src: alpha, tgt: v10, m: inc.clone() });
                blocks.push(Block { src: alpha, tgt: v01, m: lift.mul(&d).mul(&inc) });
            }
            Direction::Undo => {
                let c = transport(r10, rs, small_arcs.iter().copied())?;
                let proj = transport_matrix(&s10, &ss, &c)?;
                let c01 = transport(r01, r00, outside.iter().copied())?;
                check_corr(&c01, &[b])?;
                let kill = death_with(&s01, &s00, b, &c01);
                let d = big.cube.edge_map(big.cube.edge(v00, x));
                blocks.push(Block { src: v10, tgt: alpha, m: proj.clone() });
                blocks.push(Block { src: v01, tgt: alpha, m: proj.mul(&d).mul(&kill) });
            }
        }
    }
    match dir {
        Direction::Do => solve_block_signs(small, big, blocks),
        Direction::Undo => solve_block_signs(big, small, blocks),
    }
}

/// The arc bijection between two diagrams with the same crossings in the
/// same order, read off slot by slot; free circles are matched in order.
pub fn structural_arc_map(a: &LinkDiagram, b: &LinkDiagram) -> Result<BTreeMap<ArcId, ArcId>> {
    let mismatch = || Error::Move("the diagrams are not isotopic crossing by crossing".into());
    if a.n_crossings() != b.n_crossings() || a.free_circles().len() != b.free_circles().len() {
        return Err(mismatch());
    }
    let mut map = BTreeMap::new();
    let mut back = BTreeMap::new();
    for (ca, cb) in a.crossings().iter().zip(b.crossings()) {
        if ca.sign != cb.sign {
            return Err(mismatch());
        }
        for (&x, &y) in ca.slots.iter().zip(&cb.slots) {
            if *map.entry(x).or_insert(y) != y || *back.entry(y).or_insert(x) != x {
                return Err(mismatch());
            }
        }
    }
    for (&x, &y) in a.free_circles().iter().zip(b.free_circles()) {
        map.insert(x, y);
    }
    Ok(map)
}

/// The map of a planar isotopy that renames arcs by `arcs` and keeps the crossings.
pub fn isotopy_map(src: &Host, tgt: &Host, arcs: &BTreeMap<ArcId, ArcId>) -> Result<ChainMap> {
    if src.n() != tgt.n() {
        return Err(Error::Move("an isotopy keeps the crossings".into()));
    }
    let mut blocks = Vec::new();
    for alpha in 0..1u64 << src.n() {
        let corr = transport(src.vertex(alpha), tgt.vertex(alpha), arcs.iter().map(|(&a, &b)| (a, b)))?;
        let m = transport_matrix(&src.space(alpha), &tgt.space(alpha), &corr)?;
        blocks.push(Block { src: alpha, tgt: alpha, m });
    }
    solve_block_signs(src, tgt, blocks)
}
