//! Relations among cobordism maps that the odd theory predicts: two movie
//! moves, dot slides, the coloring action and the quadratic strand-swap
//! relation on a cable of the unknot.

use super::rmoves::{isotopy_map, r1_map, r2_map, structural_arc_map};
use super::{birth_diagram, birth_map, dot_map, saddle_map, Host, Direction};
use crate::complex::{homotopic_up_to_sign, ChainMap, Homotopy};
use crate::cube::Theory;
use crate::error::{Error, Result};
use crate::linkdiag::{kink, r2_insert, r2_removal_at, saddle_construction, ArcId, LinkDiagram, R2Site, SaddleSite, Side};

/// Two chain maps between the same complexes and the sign relating them.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub left: ChainMap,
    pub right: ChainMap,
    /// `left = sign * right` on the nose.
    pub sign: Option<i8>,
}

impl Comparison {
    pub fn new(left: ChainMap, right: ChainMap) -> Self {
        let sign = left.equal_up_to_sign(&right);
        Comparison { left, right, sign }
    }
}

/// A birth followed by a saddle merging the new circle into `arc`, then the
/// planar isotopy back to `d`. The pruning relation says this is `±id`.
pub fn movie_move_11(d: &LinkDiagram, arc: ArcId, theory: Theory) -> Result<Comparison> {
    let h0 = Host::new(d, theory)?;
    let (d1, a) = birth_diagram(d)?;
    let h1 = Host::new(&d1, theory)?;
    let ss = saddle_construction(&d1, &SaddleSite { p: arc, q: a, side: Side::Left })?;
    let h2 = Host::new(&ss.l1, theory)?;
    let back = isotopy_map(&h2, &h0, &structural_arc_map(&ss.l1, d)?)?;
    let left = birth_map(&h0, &h1, a)?.then(&saddle_map(&h1, &h2, &ss)?)?.then(&back)?;
    Ok(Comparison::new(left, ChainMap::identity(h0.complex.clone())))
}

/// A birth followed by a kink of the given sign on the new circle, once with
/// the loop on the left and once on the right; the right-hand result is
/// carried to the left-hand diagram by a planar isotopy.
pub fn movie_move_12(d: &LinkDiagram, sign: i8, theory: Theory) -> Result<Comparison> {
    let h0 = Host::new(d, theory)?;
    let (d1, a) = birth_diagram(d)?;
    let h1 = Host::new(&d1, theory)?;
    let born = birth_map(&h0, &h1, a)?;
    let mut sides = Vec::new();
    for side in [Side::Left, Side::Right] {
        let site = kink(&d1, a, sign, side)?;
        let hb = Host::new(&site.big, theory)?;
        sides.push((born.then(&r1_map(&h1, &hb, &site, Direction::Do)?)?, hb));
    }
    let (right, hr) = sides.pop().unwrap();
    let (left, hl) = sides.pop().unwrap();
    let iso = isotopy_map(&hr, &hl, &structural_arc_map(&hr.diagram, &hl.diagram)?)?;
    Ok(Comparison::new(left, right.then(&iso)?))
}

/// The two dot maps on the over-strand pieces of crossing `k`, and the
/// homotopy relating them if one exists.
pub fn dot_slide(d: &LinkDiagram, k: usize, theory: Theory) -> Result<(ChainMap, ChainMap, Option<Homotopy>)> {
    let c = d.crossings().get(k).ok_or_else(|| Error::Move(format!("no crossing {k}")))?;
    let h = Host::new(d, theory)?;
    let a = dot_map(&h, c.slots[1])?;
    let b = dot_map(&h, c.slots[3])?;
    let w = homotopic_up_to_sign(&a, &b)?;
    Ok((a, b, w))
}

/// One relation of the coloring group, as integer weights on arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringRelation {
    pub crossing: usize,
    pub terms: Vec<(i64, ArcId)>,
}

/// Per crossing: the two over-strand pieces agree, and twice the over arc
/// equals the sum of the two under arcs.
pub fn coloring_relations(d: &LinkDiagram) -> Vec<ColoringRelation> {
    let mut out = Vec::new();
    for (k, c) in d.crossings().iter().enumerate() {
        let [u0, o1, u2, o3] = c.slots;
        out.push(ColoringRelation { crossing: k, terms: vec![(1, o1), (-1, o3)] });
        out.push(ColoringRelation { crossing: k, terms: vec![(2, o1), (-1, u0), (-1, u2)] });
    }
    out
}

/// The dotted combination of a relation, as a chain map on `host`.
pub fn relation_map(host: &Host, rel: &ColoringRelation) -> Result<ChainMap> {
    let mut acc = ChainMap::zero(host.complex.clone(), host.complex.clone());
    for &(w, arc) in &rel.terms {
        acc = acc.add(&dot_map(host, arc)?.scale(w))?;
    }
    Ok(acc)
}

/// The strand swap on the 2-cable of the 0-framed unknot.
#[derive(Clone, Debug)]
pub struct HeckeCheck {
    pub g: ChainMap,
    /// The sign `s` for which `(s g + 1)^2` induces zero on homology.
    pub sign: Option<i8>,
}

/// Builds `g` from a Reidemeister II move pushing one circle over the
/// other, its removal across the opposite bigon face, and the planar isotopy
/// back to the two parallel circles, then tests `g² + 2g + 1 ≃ 0` for `±g`.
///
/// The swept crossing carries each strand to the other's position, so the
/// closing isotopy exchanges the two circles. Identifying each circle with
/// itself instead gives an involution that is not `±1` plus a nilpotent.
pub fn hecke_swap(theory: Theory) -> Result<HeckeCheck> {
    let cable = LinkDiagram::unlink(2);
    let h0 = Host::new(&cable, theory)?;
    let (a, b) = (cable.free_circles()[0], cable.free_circles()[1]);
    let cfg = r2_insert(&cable, &R2Site::new(a, b, Side::Left))?;
    let hb = Host::new(&cfg.big, theory)?;
    let up = r2_map(&h0, &hb, &cfg, Direction::Do)?;
    // the original ids sit on the outer pieces, which bound the other face
    let off = r2_removal_at(&cfg.big, cfg.x, cfg.y, Some((a, b)))?;
    let hs = Host::new(&off.small, theory)?;
    let down = r2_map(&hs, &hb, &off, Direction::Undo)?;
    // the removal keeps the lens pieces: o2 lies on the over circle, u2 on the under one
    let mut kept = [cfg.o2, cfg.u2];
    kept.sort_unstable();
    if off.small.free_circles() != kept {
        return Err(Error::Invariant("unexpected circles after the swap".into()));
    }
    let back = isotopy_map(&hs, &h0, &[(cfg.o2, b), (cfg.u2, a)].into_iter().collect())?;
    let g = up.then(&down)?.then(&back)?;
    let id = ChainMap::identity(h0.complex.clone());
    let mut sign = None;
    for s in [1i8, -1] {
        let t = g.scale(s.into()).add(&id)?;
        if t.then(&t)?.induces_zero()? {
            sign = Some(s);
            break;
        }
    }
    Ok(HeckeCheck { g, sign })
}
