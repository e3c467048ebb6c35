use super::{cell_name, Arrows, FaceType, ResolutionCube, Saddle};
use crate::error::{Error, Result};
use crate::linkdiag::{Planar, Resolution, Slot};

fn circles_at(p: &Planar, r: &Resolution, k: usize) -> [usize; 4] {
    [0, 1, 2, 3].map(|s| r.circle_of_index(p.slot_arc(k, s)))
}

/// The saddle at crossing `i` leaving vertex `from`.
pub(super) fn saddle(p: &Planar, vertices: &[Resolution], arrows: Arrows, from: u64, i: usize) -> Result<Saddle> {
    let src = &vertices[from as usize];
    let dst = &vertices[(from | 1 << i) as usize];
    let s = circles_at(p, src, i);
    let t = circles_at(p, dst, i);
    let name = || cell_name(p.n_crossings(), from, &[i]);
    if dst.n_circles() + 1 == src.n_circles() {
        let (c0, c1) = (s[0].min(s[2]), s[0].max(s[2]));
        if c0 == c1 || t[0] != t[1] {
            return Err(Error::Invariant(format!("edge {}: inconsistent merge", name())));
        }
        Ok(Saddle::Merge { c0, c1, c_new: t[0] })
    } else if dst.n_circles() == src.n_circles() + 1 {
        // target 1-smoothing joins (0,3) and (1,2)
        let (a, b) = (t[0], t[1]);
        if a == b || s[0] != s[2] {
            return Err(Error::Invariant(format!("edge {}: inconsistent split", name())));
        }
        let (c0, c1) = if arrows.get(i) { (b, a) } else { (a, b) };
        Ok(Saddle::Split { c: s[0], c0, c1 })
    } else {
        Err(Error::Invariant(format!("edge {}: circle count changes by more than one", name())))
    }
}

fn touched(s: &Saddle) -> Vec<usize> {
    match *s {
        Saddle::Merge { c0, c1, .. } => vec![c0, c1],
        Saddle::Split { c, .. } => vec![c],
    }
}

pub(super) fn face_type(cube: &ResolutionCube, base: u64, i: usize, j: usize) -> Result<FaceType> {
    let ei = cube.edge(base, i).saddle;
    let ej = cube.edge(base, j).saddle;
    let c = cube.vertex(base).n_circles();
    let c11 = cube.vertex(base | 1 << i | 1 << j).n_circles();
    let si = touched(&ei);
    let sj = touched(&ej);
    let disjoint = si.iter().all(|x| !sj.contains(x));
    let name = || cell_name(cube.n, base, &[i, j]);
    let fail = |msg: &str| Error::Classify { face: name(), msg: msg.into() };
    let expect = |want: usize, ty: FaceType| if c11 == want { Ok(ty) } else { Err(fail("unexpected circle count")) };
    match (ei.is_merge(), ej.is_merge()) {
        (true, true) if disjoint => expect(c - 2, FaceType::I),
        (true, false) | (false, true) if disjoint => expect(c, FaceType::IV),
        (false, false) if disjoint => expect(c + 2, FaceType::VII),
        (true, true) => {
            let mut a = si.clone();
            let mut b = sj.clone();
            a.sort();
            b.sort();
            if a == b {
                // both saddles bridge the same two circles
                let sj_top = cube.edge(base | 1 << i, j).saddle;
                let si_top = cube.edge(base | 1 << j, i).saddle;
                match (sj_top, si_top) {
                    (Saddle::Split { c0: x, .. }, Saddle::Split { c0: y, .. }) => {
                        if c11 != c {
                            return Err(fail("unexpected circle count"));
                        }
                        Ok(if x == y { FaceType::V } else { FaceType::VIII })
                    }
                    _ => Err(fail("double bridge without splits")),
                }
            } else {
                expect(c - 2, FaceType::II)
            }
        }
        (true, false) | (false, true) => expect(c, FaceType::III),
        (false, false) => {
            if c11 == c + 2 {
                Ok(FaceType::IX)
            } else if c11 == c {
                ladybug(cube, base, i, j)
            } else {
                Err(fail("unexpected circle count"))
            }
        }
    }
}

/// Orders the two ladybug configurations. Start at the tail corner of the
/// arrow at `i` and walk along the circle with that saddle on the left; the
/// face is type vi when the first corner of `j` reached is its arrow head.
fn ladybug(cube: &ResolutionCube, base: u64, i: usize, j: usize) -> Result<FaceType> {
    let first_is_head = ladybug_walk(cube, base, i, j)?;
    let back = ladybug_walk(cube, base, j, i)?;
    if first_is_head != back {
        return Err(Error::Classify {
            face: cell_name(cube.n, base, &[i, j]),
            msg: "ladybug walk is not symmetric".into(),
        });
    }
    Ok(if first_is_head { FaceType::VI } else { FaceType::X })
}

fn partner(bit: bool, pos: u8) -> u8 {
    if !bit {
        pos ^ 1
    } else {
        3 - pos
    }
}

fn ladybug_walk(cube: &ResolutionCube, base: u64, a: usize, b: usize) -> Result<bool> {
    let p = &cube.planar;
    // corners at a 0-smoothed crossing: {0,1} and {2,3}; the arrow tail is
    // {0,1} unless the arrow bit is set
    let tail_a: u8 = if cube.arrows.get(a) { 2 } else { 0 };
    let head_b: u8 = if cube.arrows.get(b) { 0 } else { 2 };
    // leaving through the second slot of the tail corner keeps the crossing on the left
    let mut out = Slot::new(a, tail_a + 1);
    let limit = 4 * p.n_crossings() + 4;
    for _ in 0..limit {
        let arrive = p.other_end(out);
        let k = arrive.crossing as usize;
        if k == b {
            return Ok(arrive.pos / 2 * 2 == head_b);
        }
        let bit = base >> k & 1 == 1;
        out = Slot { crossing: arrive.crossing, pos: partner(bit, arrive.pos) };
    }
    Err(Error::Classify { face: cell_name(cube.n, base, &[a, b]), msg: "ladybug walk did not meet the second saddle".into() })
}
