//! Local diagram surgery: kinks, Reidemeister II fingers, saddles, braid
//! closures and cables.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::faces::face_left_of;
use super::{ArcId, Crossing, Fallback, LinkDiagram, Planar, Slot};
use crate::error::{Error, Result};

/// Which side of an oriented arc a construction happens on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Left,
    Right,
}

/// Mutable slot data used while editing a diagram.
#[derive(Clone, Debug)]
pub(crate) struct Raw {
    pub crossings: Vec<[ArcId; 4]>,
    /// Crossing signs; 0 for the unoriented crossings of saddle constructions.
    pub signs: Vec<i8>,
    pub free: Vec<ArcId>,
    pub heads: HashMap<ArcId, Slot>,
    pub next: ArcId,
}

impl Raw {
    pub fn of(d: &LinkDiagram) -> Raw {
        Raw {
            crossings: d.pd_code(),
            signs: d.signs(),
            free: d.free_circles().to_vec(),
            heads: d.head_map(),
            next: d.planar().max_arc() + 1,
        }
    }

    pub fn planar(&self) -> Result<Planar> {
        Planar::new(self.crossings.clone(), self.free.clone())
    }

    fn fresh(&mut self) -> ArcId {
        self.next += 1;
        self.next - 1
    }

    fn set(&mut self, s: Slot, a: ArcId) {
        self.crossings[s.crossing as usize][s.pos as usize] = a;
    }

    fn push(&mut self, c: [ArcId; 4], sign: i8) -> usize {
        self.crossings.push(c);
        self.signs.push(sign);
        self.crossings.len() - 1
    }

    /// Cuts `arc` at `cuts` points. For an ordinary arc, `dart` is its end in
    /// the direction of traversal and `along` says whether that agrees with
    /// the arc's orientation. Returns the pieces in traversal order; for a
    /// free circle the first and last piece are the circle itself. The piece
    /// at the orientation tail keeps the original id.
    fn cut(&mut self, p: &Planar, arc: ArcId, dart: Option<Slot>, along: bool, cuts: usize) -> Vec<ArcId> {
        let n = cuts + 1;
        let Some(to) = dart else {
            self.free.retain(|&f| f != arc);
            let mut v = vec![arc];
            for _ in 1..cuts {
                let f = self.fresh();
                v.push(f);
            }
            v.push(arc);
            return v;
        };
        let from = p.other_end(to);
        let mut v: Vec<ArcId> = Vec::with_capacity(n);
        for i in 0..n {
            let keep = if along { i == 0 } else { i == n - 1 };
            v.push(if keep { arc } else { self.fresh() });
        }
        if v[0] != arc {
            self.set(from, v[0]);
        }
        if v[n - 1] != arc {
            self.set(to, v[n - 1]);
        }
        self.heads.remove(&arc);
        if along {
            self.heads.insert(v[n - 1], to);
        } else {
            self.heads.insert(v[0], from);
        }
        v
    }

    fn orient(&self) -> Result<LinkDiagram> {
        LinkDiagram::orient(self.crossings.clone(), self.free.clone(), &self.heads, Fallback::Fail)
    }
}

/// Finds the face on `side` of `a` (or of `b` if `a` is a free circle) and
/// returns, for each arc, the end it runs towards when the face boundary is
/// traversed with the face on the left. Free circles get `None`.
fn common_face(
    p: &Planar,
    heads: &HashMap<ArcId, Slot>,
    a: ArcId,
    b: ArcId,
    side: Side,
) -> Result<(Option<Slot>, Option<Slot>)> {
    let dart_of = |x: ArcId| -> Result<Option<Slot>> {
        if p.arc_index(x).is_none() {
            return Err(Error::UnknownArc(x));
        }
        if p.is_free(x) {
            return Ok(None);
        }
        let h = *heads.get(&x).ok_or_else(|| Error::Invariant(format!("arc {x} has no orientation")))?;
        Ok(Some(match side {
            Side::Left => h,
            Side::Right => p.other_end(h),
        }))
    };
    let da = dart_of(a)?;
    let db = dart_of(b)?;
    let (anchor, anchor_dart, other) = match (da, db) {
        (Some(d), _) => (a, d, b),
        (None, Some(d)) => (b, d, a),
        (None, None) => return Ok((None, None)),
    };
    let face = face_left_of(p, anchor, anchor_dart);
    let other_dart = if p.is_free(other) {
        None
    } else if other == anchor {
        Some(anchor_dart)
    } else {
        let d = face
            .darts
            .iter()
            .find(|d| d.arc == other)
            .ok_or_else(|| Error::Move(format!("arcs {a} and {b} do not share a face on that side")))?;
        Some(d.to)
    };
    Ok(if anchor == a { (Some(anchor_dart), other_dart) } else { (other_dart, Some(anchor_dart)) })
}

// ---------------------------------------------------------------- kinks

/// A Reidemeister I kink: `big` is `small` with the extra crossing `k`.
/// Arcs of `small` keep their ids in `big`; `ell` is the loop arc.
#[derive(Clone, Debug)]
pub struct KinkSite {
    pub small: LinkDiagram,
    pub big: LinkDiagram,
    pub k: usize,
    pub sign: i8,
    pub side: Side,
    pub ell: ArcId,
    /// The arc entering the kink.
    pub p1: ArcId,
}

fn kink_layout(sign: i8, side: Side, p1: ArcId, p2: ArcId, l: ArcId) -> ([ArcId; 4], u8) {
    match (sign > 0, side) {
        (true, Side::Left) => ([p1, p2, l, l], 0),
        (true, Side::Right) => ([l, l, p2, p1], 3),
        (false, Side::Left) => ([l, p1, p2, l], 1),
        (false, Side::Right) => ([p1, l, l, p2], 0),
    }
}

/// Adds a kink of the given sign on `arc`, with the loop on `side`.
pub fn kink(d: &LinkDiagram, arc: ArcId, sign: i8, side: Side) -> Result<KinkSite> {
    if !d.has_arc(arc) {
        return Err(Error::UnknownArc(arc));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Move(format!("kink sign must be +1 or -1, got {sign}")));
    }
    let mut raw = Raw::of(d);
    let k = d.n_crossings();
    let (p2, ell);
    if let Some(h) = d.head(arc) {
        p2 = raw.fresh();
        ell = raw.fresh();
        raw.set(h, p2);
        raw.heads.remove(&arc);
        raw.heads.insert(p2, h);
    } else {
        raw.free.retain(|&f| f != arc);
        p2 = arc;
        ell = raw.fresh();
    }
    let (slots, p1_pos) = kink_layout(sign, side, arc, p2, ell);
    raw.push(slots, sign);
    if p2 == arc {
        raw.heads.insert(arc, Slot::new(k, p1_pos));
    }
    let big = raw.orient()?;
    if big.crossings()[k].sign != sign || big.crossings()[k].slots != slots {
        return Err(Error::Invariant("kink produced an unexpected crossing".into()));
    }
    Ok(KinkSite { small: d.clone(), big, k, sign, side, ell, p1: arc })
}

/// Adds a kink with the loop on the left of `arc`.
pub fn insert_kink(d: &LinkDiagram, arc: ArcId, sign: i8) -> Result<LinkDiagram> {
    Ok(kink(d, arc, sign, Side::Left)?.big)
}

/// Recognizes crossing `k` of `big` as a kink and removes it.
pub fn kink_removal(big: &LinkDiagram, k: usize) -> Result<KinkSite> {
    let c = big.crossings().get(k).ok_or_else(|| Error::Move(format!("no crossing {k}")))?;
    let s = c.slots;
    // (adjacent loop positions, sign, side, p1 position, p2 position)
    let patterns = [
        ((2, 3), 1, Side::Left, 0, 1),
        ((0, 1), 1, Side::Right, 3, 2),
        ((3, 0), -1, Side::Left, 1, 2),
        ((1, 2), -1, Side::Right, 0, 3),
    ];
    let found = patterns
        .iter()
        .filter(|((i, j), sign, ..)| s[*i] == s[*j] && *sign == c.sign)
        .max_by_key(|((i, _), ..)| s[*i])
        .ok_or_else(|| Error::Move(format!("crossing {k} is not a kink")))?;
    let ((li, _), sign, side, pi, qi) = *found;
    let (ell, p1, p2) = (s[li], s[pi], s[qi]);
    let mut crossings = big.pd_code();
    crossings.remove(k);
    let mut free = big.free_circles().to_vec();
    let mut heads = big.head_map();
    heads.remove(&ell);
    heads.remove(&p2);
    heads.remove(&p1);
    let mut p1_head = None;
    if p1 == p2 {
        free.push(p1);
    } else {
        let mut h = big.head(p2).unwrap();
        if h.crossing as usize > k {
            h.crossing -= 1;
        }
        crossings[h.crossing as usize][h.pos as usize] = p1;
        p1_head = Some(h);
    }
    let mut heads: HashMap<ArcId, Slot> = heads
        .into_iter()
        .map(|(a, mut sl)| {
            if sl.crossing as usize > k {
                sl.crossing -= 1;
            }
            (a, sl)
        })
        .collect();
    if let Some(h) = p1_head {
        heads.insert(p1, h);
    }
    let small = LinkDiagram::orient(crossings, free, &heads, Fallback::Fail)?;
    Ok(KinkSite { small, big: big.clone(), k, sign, side, ell, p1 })
}

// ---------------------------------------------------------------- R2

/// Where to push a finger of `over` across `under`. The face is taken on
/// `side` of `over` (or of `under` if `over` is a crossing-free circle).
/// The `*_along` flags orient crossing-free circles relative to the face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct R2Site {
    pub over: ArcId,
    pub under: ArcId,
    #[serde(default)]
    pub side: Side,
    #[serde(default = "yes")]
    pub over_along: bool,
    #[serde(default = "yes")]
    pub under_along: bool,
}

fn yes() -> bool {
    true
}

impl R2Site {
    pub fn new(over: ArcId, under: ArcId, side: Side) -> Self {
        R2Site { over, under, side, over_along: true, under_along: true }
    }
}

/// A Reidemeister II configuration: `big` is `small` plus crossings `x` and
/// `y`. In `big`, bits (x,y) = (1,0) give a copy of `small`'s resolution and
/// (0,1) contain the bigon circle through `o2` and `u2`. Arcs of `small`
/// keep their ids in `big`.
#[derive(Clone, Debug)]
pub struct R2Config {
    pub small: LinkDiagram,
    pub big: LinkDiagram,
    pub x: usize,
    pub y: usize,
    pub o2: ArcId,
    pub u2: ArcId,
}

pub fn r2_insert(d: &LinkDiagram, site: &R2Site) -> Result<R2Config> {
    let (o, u) = (site.over, site.under);
    if o == u {
        return Err(Error::Move("Reidemeister II needs two different arcs".into()));
    }
    let p = d.planar();
    let heads = d.head_map();
    let (dart_o, dart_u) = common_face(p, &heads, o, u, site.side)?;
    let along = |a: ArcId, dart: Option<Slot>, flag: bool| match dart {
        Some(t) => heads.get(&a) == Some(&t),
        None => flag,
    };
    let (oa, ua) = (along(o, dart_o, site.over_along), along(u, dart_u, site.under_along));
    let mut raw = Raw::of(d);
    let op = raw.cut(p, o, dart_o, oa, 2);
    let up = raw.cut(p, u, dart_u, ua, 2);
    let n = d.n_crossings();
    let (x, y) = (n, n + 1);
    raw.push([up[1], op[1], up[2], op[0]], 0);
    raw.push([up[0], op[1], up[1], op[2]], 0);
    if dart_o.is_none() {
        raw.heads.insert(o, if oa { Slot::new(x, 3) } else { Slot::new(y, 3) });
    }
    if dart_u.is_none() {
        raw.heads.insert(u, if ua { Slot::new(y, 0) } else { Slot::new(x, 2) });
    }
    let big = raw.orient()?;
    Ok(R2Config { small: d.clone(), big, x, y, o2: op[1], u2: up[1] })
}

/// Recognizes crossings `i` and `j` of `big` as a Reidemeister II bigon and removes them.
pub fn r2_removal(big: &LinkDiagram, i: usize, j: usize) -> Result<R2Config> {
    r2_removal_at(big, i, j, None)
}

/// Like [`r2_removal`], but across the bigon bounded by the given
/// `(over, under)` arcs when two crossings bound several bigons.
pub fn r2_removal_at(big: &LinkDiagram, i: usize, j: usize, face: Option<(ArcId, ArcId)>) -> Result<R2Config> {
    let n = big.n_crossings();
    if i == j || i >= n || j >= n {
        return Err(Error::Move(format!("crossings {i} and {j} do not form a bigon")));
    }
    let ci = big.crossings()[i].slots;
    let cj = big.crossings()[j].slots;
    let faces = big.faces();
    let mut found = None;
    for (x, y, cx, cy) in [(i, j, ci, cj), (j, i, cj, ci)] {
        for pu in 0..4 {
            let u2 = cx[pu];
            let o2 = cx[(pu + 1) % 4];
            // u2 under at x; o2 over at x
            if pu % 2 != 0 || face.is_some_and(|f| f != (o2, u2)) {
                continue;
            }
            let Some(po) = (0..4).find(|&q| cy[q] == o2 && q % 2 == 1) else { continue };
            if cy[(po + 1) % 4] != u2 {
                continue;
            }
            let ends_ok = |a: ArcId| {
                big.planar().ends(a).is_some_and(|[e0, e1]| {
                    let mut cs = [e0.crossing as usize, e1.crossing as usize];
                    cs.sort();
                    let mut want = [x, y];
                    want.sort();
                    cs == want
                })
            };
            if !ends_ok(o2) || !ends_ok(u2) {
                continue;
            }
            let bigon = faces.iter().any(|f| {
                f.darts.len() == 2 && f.contains_arc(o2) && f.contains_arc(u2)
            });
            if bigon {
                found = Some((x, y, cx, cy, pu, po));
                break;
            }
        }
        if found.is_some() {
            break;
        }
    }
    let (x, y, cx, cy, pu, po) = found.ok_or_else(|| Error::Move(format!("crossings {i} and {j} do not form a bigon")))?;
    let (o2, u2) = (cx[(pu + 1) % 4], cx[pu]);
    let o1 = cx[(pu + 3) % 4];
    let u3 = cx[(pu + 2) % 4];
    let u1 = cy[(po + 3) % 4];
    let o3 = cy[(po + 2) % 4];
    let heads = big.head_map();
    // the id kept for each strand is the one of the piece at the orientation tail
    let o_along = heads.get(&o1) == Some(&Slot::new(x, ((pu + 3) % 4) as u8));
    let u_along = heads.get(&u1) == Some(&Slot::new(y, ((po + 3) % 4) as u8));
    let (o_keep, o_drop) = if o_along { (o1, o3) } else { (o3, o1) };
    let (u_keep, u_drop) = if u_along { (u1, u3) } else { (u3, u1) };

    let remap = |s: Slot| -> Slot {
        let c = s.crossing as usize;
        let shift = (c > x) as u32 + (c > y) as u32;
        Slot { crossing: s.crossing - shift, pos: s.pos }
    };
    let mut crossings: Vec<[ArcId; 4]> =
        big.pd_code().into_iter().enumerate().filter(|(k, _)| *k != x && *k != y).map(|(_, c)| c).collect();
    let mut free = big.free_circles().to_vec();
    let mut new_heads: HashMap<ArcId, Slot> = HashMap::new();
    for (a, s) in &heads {
        let c = s.crossing as usize;
        if c != x && c != y {
            new_heads.insert(*a, remap(*s));
        }
    }
    for (keep, drop) in [(o_keep, o_drop), (u_keep, u_drop)] {
        new_heads.remove(&drop);
        if keep == drop {
            if !free.contains(&keep) {
                free.push(keep);
            }
            new_heads.remove(&keep);
            continue;
        }
        // the dropped piece's far end now belongs to the kept one
        let ends = big.planar().ends(drop).unwrap();
        for e in ends {
            let c = e.crossing as usize;
            if c != x && c != y {
                let r = remap(e);
                crossings[r.crossing as usize][r.pos as usize] = keep;
                if heads.get(&drop) == Some(&e) {
                    new_heads.insert(keep, r);
                }
            }
        }
    }
    // pieces shared between the two strands (o1 == u3 and the like) collapse into free circles
    let used: BTreeSet<ArcId> = crossings.iter().flatten().copied().collect();
    for a in [o_keep, u_keep] {
        if !used.contains(&a) && !free.contains(&a) {
            free.push(a);
        }
    }
    free.retain(|a| !used.contains(a));
    free.sort_unstable();
    free.dedup();
    new_heads.retain(|a, _| used.contains(a));
    let small = LinkDiagram::orient(crossings, free, &new_heads, Fallback::Fail)?;
    Ok(R2Config { small, big: big.clone(), x, y, o2, u2 })
}

// ---------------------------------------------------------------- saddles

/// An oriented saddle joining arcs `p` and `q` across the face on `side` of `p`
/// (of `q` if `p` is a crossing-free circle). `p == q` splits off a circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaddleSite {
    pub p: ArcId,
    pub q: ArcId,
    #[serde(default)]
    pub side: Side,
}

/// The enlarged diagram `lprime` carries one extra, unoriented crossing `x`
/// whose 0-smoothing gives back the original diagram and whose 1-smoothing
/// gives `l1`. Every arc of the original keeps its id in `lprime`;
/// `to_l1` sends arcs of `lprime` to arcs of `l1`.
#[derive(Clone, Debug)]
pub struct SmoothedSaddle {
    pub lprime: Planar,
    pub x: usize,
    pub l1: LinkDiagram,
    pub to_l1: BTreeMap<ArcId, ArcId>,
}

/// Appends the saddle crossing for `site` to `raw`. Returns its index.
pub(crate) fn saddle_raw(raw: &mut Raw, site: &SaddleSite) -> Result<usize> {
    let p = raw.planar()?;
    let (dp, dq) = common_face(&p, &raw.heads, site.p, site.q, site.side)?;
    let along_of = |a: ArcId, d: Option<Slot>| d.map(|t| raw.heads.get(&a) == Some(&t));
    let (pa, qa) = match (along_of(site.p, dp), along_of(site.q, dq)) {
        (Some(x), Some(y)) => (x, y),
        (Some(x), None) => (x, x),
        (None, Some(y)) => (y, y),
        (None, None) => (true, true),
    };
    if pa != qa {
        return Err(Error::Move(format!("the saddle between arcs {} and {} is not orientable", site.p, site.q)));
    }
    let x = raw.crossings.len();
    if site.p == site.q {
        let v = raw.cut(&p, site.p, dp, pa, 2);
        raw.push([v[0], v[1], v[1], v[2]], 0);
        if dp.is_none() {
            raw.heads.insert(v[0], Slot::new(x, if pa { 0 } else { 3 }));
        }
        raw.heads.insert(v[1], Slot::new(x, if pa { 2 } else { 1 }));
    } else {
        let vp = raw.cut(&p, site.p, dp, pa, 1);
        let vq = raw.cut(&p, site.q, dq, qa, 1);
        raw.push([vp[0], vp[1], vq[0], vq[1]], 0);
        if dp.is_none() {
            raw.heads.insert(site.p, Slot::new(x, if pa { 0 } else { 1 }));
        }
        if dq.is_none() {
            raw.heads.insert(site.q, Slot::new(x, if qa { 2 } else { 3 }));
        }
    }
    Ok(x)
}

/// Builds the enlarged diagram of a saddle together with the resulting diagram.
pub fn saddle_construction(l0: &LinkDiagram, site: &SaddleSite) -> Result<SmoothedSaddle> {
    let mut raw = Raw::of(l0);
    let x = saddle_raw(&mut raw, site)?;
    let lprime = raw.planar()?;
    // 1-smoothing of x: join (slot 0, slot 3) and (slot 1, slot 2)
    let xs = raw.crossings[x];
    let mut label: BTreeMap<ArcId, ArcId> = lprime.arcs().iter().map(|&a| (a, a)).collect();
    let find = |label: &BTreeMap<ArcId, ArcId>, mut a: ArcId| {
        while label[&a] != a {
            a = label[&a];
        }
        a
    };
    for (s, t) in [(xs[0], xs[3]), (xs[1], xs[2])] {
        let (rs, rt) = (find(&label, s), find(&label, t));
        let (lo, hi) = (rs.min(rt), rs.max(rt));
        label.insert(hi, lo);
    }
    let to_l1: BTreeMap<ArcId, ArcId> = lprime.arcs().iter().map(|&a| (a, find(&label, a))).collect();
    let crossings: Vec<Crossing> = raw.crossings[..x]
        .iter()
        .zip(&raw.signs)
        .map(|(c, &sign)| Crossing { slots: c.map(|a| to_l1[&a]), sign })
        .collect();
    let used: BTreeSet<ArcId> = crossings.iter().flat_map(|c| c.slots).collect();
    let free: BTreeSet<ArcId> = to_l1.values().copied().filter(|a| !used.contains(a)).collect();
    let l1 = LinkDiagram::from_crossings(&crossings, free.into_iter().collect())
        .map_err(|_| Error::Move(format!("the saddle between arcs {} and {} is not orientable", site.p, site.q)))?;
    Ok(SmoothedSaddle { lprime, x, l1, to_l1 })
}

/// Two saddles applied one after the other to `l0`, both as unoriented crossings.
pub fn double_saddle(l0: &LinkDiagram, s1: &SaddleSite, s2: &SaddleSite) -> Result<(Planar, usize, usize)> {
    let mut raw = Raw::of(l0);
    let x1 = saddle_raw(&mut raw, s1)?;
    let x2 = saddle_raw(&mut raw, s2)?;
    Ok((raw.planar()?, x1, x2))
}

// ---------------------------------------------------------------- braids and cables

/// Appends braid generators to `raw`. `pos[j]` is the arc currently at
/// strand position `j`; strands run upwards and `±i` crosses positions
/// `i-1` and `i`.
fn braid_block(raw: &mut Raw, pos: &mut [ArcId], word: &[i32]) -> Result<()> {
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= pos.len() {
            return Err(Error::Move(format!("generator {g} out of range for {} strands", pos.len())));
        }
        let (al, ar) = (pos[i - 1], pos[i]);
        let (nl, nr) = (raw.fresh(), raw.fresh());
        if g > 0 {
            raw.push([ar, nr, nl, al], 1);
        } else {
            raw.push([al, ar, nr, nl], -1);
        }
        pos[i - 1] = nl;
        pos[i] = nr;
    }
    Ok(())
}

fn substitute(crossings: &mut [[ArcId; 4]], from: ArcId, to: ArcId) {
    for c in crossings.iter_mut() {
        for a in c.iter_mut() {
            if *a == from {
                *a = to;
            }
        }
    }
}

fn renumber(crossings: &mut [[ArcId; 4]], free: &mut [ArcId]) {
    let mut ids: Vec<ArcId> = crossings.iter().flatten().chain(free.iter()).copied().collect();
    ids.sort_unstable();
    ids.dedup();
    let map = |a: ArcId| ids.binary_search(&a).unwrap() as ArcId + 1;
    for c in crossings.iter_mut() {
        for a in c.iter_mut() {
            *a = map(*a);
        }
    }
    for a in free.iter_mut() {
        *a = map(*a);
    }
}

fn build_signed(crossings: Vec<[ArcId; 4]>, signs: &[i8], free: Vec<ArcId>) -> Result<LinkDiagram> {
    let cs: Vec<Crossing> = crossings.into_iter().zip(signs).map(|(slots, &sign)| Crossing { slots, sign }).collect();
    LinkDiagram::from_crossings(&cs, free)
}

/// Closure of a braid on `strands` strands; `±i` is the generator crossing
/// positions `i-1` and `i` (1-based), positive for `+i`.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram> {
    if strands == 0 {
        return Err(Error::Move("a braid needs at least one strand".into()));
    }
    let mut raw = Raw {
        crossings: Vec::new(),
        signs: Vec::new(),
        free: Vec::new(),
        heads: HashMap::new(),
        next: strands as ArcId + 1,
    };
    let start: Vec<ArcId> = (1..=strands as ArcId).collect();
    let mut pos = start.clone();
    braid_block(&mut raw, &mut pos, word)?;
    let mut free = Vec::new();
    for (j, &a) in pos.iter().enumerate() {
        if a == start[j] {
            free.push(a);
        } else {
            substitute(&mut raw.crossings, a, start[j]);
        }
    }
    renumber(&mut raw.crossings, &mut free);
    build_signed(raw.crossings, &raw.signs, free)
}

/// The blackboard `n`-cable of a knot diagram, with `framing - writhe` full
/// twists inserted on the smallest arc so that the cable has the requested
/// framing. Each crossing becomes an `n x n` grid of crossings of the same sign.
pub fn cable(d: &LinkDiagram, n: usize, framing: i64) -> Result<LinkDiagram> {
    if n < 1 {
        return Err(Error::Move("cable needs n >= 1".into()));
    }
    if d.n_components() != 1 {
        return Err(Error::Move(format!("cable needs a knot, got {} components", d.n_components())));
    }
    let arcs = d.arcs().to_vec();
    let copy = |a: ArcId, j: usize| -> ArcId {
        (arcs.binary_search(&a).unwrap() * n + j + 1) as ArcId
    };
    let mut raw = Raw {
        crossings: Vec::new(),
        signs: Vec::new(),
        free: Vec::new(),
        heads: HashMap::new(),
        next: (arcs.len() * n + 1) as ArcId,
    };
    for c in d.crossings() {
        let [a, b, cc, dd] = c.slots;
        let row_copy = |y: usize| if c.sign > 0 { n - 1 - y } else { y };
        let mut useg = vec![vec![0; n + 1]; n];
        for (i, seg) in useg.iter_mut().enumerate() {
            seg[0] = copy(a, i);
            seg[n] = copy(cc, i);
            for s in seg.iter_mut().take(n).skip(1) {
                *s = raw.fresh();
            }
        }
        let mut oseg = vec![vec![0; n + 1]; n];
        for (y, seg) in oseg.iter_mut().enumerate() {
            seg[0] = copy(dd, row_copy(y));
            seg[n] = copy(b, row_copy(y));
            for s in seg.iter_mut().take(n).skip(1) {
                *s = raw.fresh();
            }
        }
        for y in 0..n {
            for i in 0..n {
                raw.push([useg[i][y], oseg[y][i + 1], useg[i][y + 1], oseg[y][i]], c.sign);
            }
        }
    }
    let twists = framing - d.writhe();
    let x = arcs[0];
    let is_free = d.free_circles().contains(&x);
    if is_free {
        raw.free.extend((0..n).map(|j| copy(x, j)));
    }
    if twists != 0 && n > 1 {
        let g: i32 = if twists > 0 { 1 } else { -1 };
        let word: Vec<i32> = (0..twists.unsigned_abs() as usize * n).flat_map(|_| (1..n as i32).map(move |i| g * i)).collect();
        // the slot where each copy of x currently ends
        let mut head_slots = Vec::new();
        if !is_free {
            for j in 0..n {
                let cj = copy(x, j);
                let s = raw
                    .crossings
                    .iter()
                    .enumerate()
                    .find_map(|(k, cr)| {
                        let inc = if raw.signs[k] > 0 { 3 } else { 1 };
                        [0, inc].into_iter().find(|&p| cr[p] == cj).map(|p| Slot::new(k, p as u8))
                    })
                    .ok_or_else(|| Error::Invariant("cable copy has no head".into()))?;
                head_slots.push(s);
            }
        }
        let mut pos: Vec<ArcId> = (0..n).map(|j| copy(x, j)).collect();
        braid_block(&mut raw, &mut pos, &word)?;
        if is_free {
            raw.free.clear();
            for (j, &a) in pos.iter().enumerate() {
                substitute(&mut raw.crossings, a, copy(x, j));
            }
        } else {
            for (j, s) in head_slots.into_iter().enumerate() {
                raw.set(s, pos[j]);
            }
        }
    }
    for &f in d.free_circles() {
        if f != x {
            raw.free.extend((0..n).map(|j| copy(f, j)));
        }
    }
    let mut free = raw.free.clone();
    renumber(&mut raw.crossings, &mut free);
    build_signed(raw.crossings, &raw.signs, free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::parse_pd;

    fn trefoil() -> LinkDiagram {
        parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap()
    }

    #[test]
    fn kinks_change_writhe() {
        let u = LinkDiagram::unlink(1);
        let k1 = insert_kink(&u, 1, 1).unwrap();
        assert_eq!((k1.n_crossings(), k1.writhe()), (1, 1));
        let k2 = insert_kink(&k1, 1, -1).unwrap();
        assert_eq!((k2.n_crossings(), k2.writhe(), k2.n_components()), (2, 0, 1));
        let t = insert_kink(&trefoil(), 1, -1).unwrap();
        assert_eq!((t.n_crossings(), t.writhe()), (4, -4));
    }

    #[test]
    fn kink_round_trip() {
        let t = trefoil();
        for sign in [1, -1] {
            for side in [Side::Left, Side::Right] {
                for &a in t.arcs() {
                    let s = kink(&t, a, sign, side).unwrap();
                    assert!(s.big.is_planar());
                    let back = kink_removal(&s.big, s.k).unwrap();
                    assert_eq!(back.small, t);
                }
            }
        }
    }

    #[test]
    fn r2_round_trip() {
        let t = trefoil();
        let mut count = 0;
        for &o in t.arcs() {
            for &u in t.arcs() {
                for side in [Side::Left, Side::Right] {
                    let Ok(c) = r2_insert(&t, &R2Site::new(o, u, side)) else { continue };
                    count += 1;
                    assert!(c.big.is_planar());
                    assert_eq!(c.big.writhe(), t.writhe());
                    let back = r2_removal(&c.big, c.x, c.y).unwrap();
                    assert_eq!(back.small, t);
                }
            }
        }
        assert!(count >= 12);
    }

    #[test]
    fn r2_on_free_circles() {
        let u = LinkDiagram::unlink(2);
        let c = r2_insert(&u, &R2Site::new(1, 2, Side::Left)).unwrap();
        assert_eq!(c.big.n_crossings(), 2);
        assert_eq!(c.big.writhe(), 0);
        let back = r2_removal(&c.big, 0, 1).unwrap();
        assert_eq!(back.small.n_crossings(), 0);
        assert_eq!(back.small.n_components(), 2);
    }

    #[test]
    fn braids_and_cables() {
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!((t.n_crossings(), t.n_components(), t.writhe()), (3, 1, 3));
        assert!(t.is_planar());
        let u2 = cable(&LinkDiagram::unlink(1), 2, 0).unwrap();
        assert_eq!((u2.n_crossings(), u2.n_components()), (0, 2));
        let u21 = cable(&LinkDiagram::unlink(1), 2, 1).unwrap();
        assert_eq!((u21.n_crossings(), u21.n_components(), u21.writhe()), (2, 2, 2));
        let tr = trefoil();
        let c = cable(&tr, 2, tr.writhe()).unwrap();
        assert_eq!((c.n_crossings(), c.n_components()), (12, 2));
        assert!(c.is_planar());
        assert!(cable(&tr, 1, tr.writhe()).unwrap().isomorphic_in_order(&tr));
        let c3 = cable(&tr, 2, 0).unwrap();
        assert_eq!(c3.n_crossings(), 12 + 6);
        assert!(c3.is_planar());
    }

    #[test]
    fn saddles() {
        let u = LinkDiagram::unlink(2);
        let s = saddle_construction(&u, &SaddleSite { p: 1, q: 2, side: Side::Left }).unwrap();
        assert_eq!(s.l1.n_components(), 1);
        let s = saddle_construction(&LinkDiagram::unlink(1), &SaddleSite { p: 1, q: 1, side: Side::Left }).unwrap();
        assert_eq!(s.l1.n_components(), 2);
        let t = trefoil();
        let mut ok = 0;
        for &p in t.arcs() {
            for &q in t.arcs() {
                if let Ok(s) = saddle_construction(&t, &SaddleSite { p, q, side: Side::Left }) {
                    ok += 1;
                    assert_eq!(s.lprime.n_crossings(), 4);
                }
            }
        }
        assert!(ok > 0);
    }
}
