//! Oriented link diagrams in PD form, their resolutions, and diagram surgery.
//!
//! A crossing lists its four arcs counterclockwise starting from the incoming
//! under-strand, so the under-strand runs from slot 0 to slot 2 and the
//! over-strand joins slots 1 and 3. The crossing is positive when the
//! over-strand enters at slot 3.

mod faces;
mod pd;
mod resolution;
mod surgery;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{elementary_divisors, Int, IntMatrix};

pub use faces::{Dart, Face};
pub use pd::{parse_pd, parse_spec, PdSpec};
pub use resolution::Resolution;
pub use surgery::{
    braid_closure, cable, double_saddle, insert_kink, kink, kink_removal, r2_insert, r2_removal, r2_removal_at,
    saddle_construction, KinkSite, R2Config, R2Site, SaddleSite, Side, SmoothedSaddle,
};

pub type ArcId = u32;

/// A position at a crossing: crossing index and slot `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: u32,
    pub pos: u8,
}

impl Slot {
    pub fn new(crossing: usize, pos: u8) -> Self {
        Slot { crossing: crossing as u32, pos }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [ArcId; 4],
    pub sign: i8,
}

/// The unoriented combinatorics needed to resolve a diagram: crossing slot
/// lists plus crossing-free circles. Also used for the enlarged diagrams of
/// saddle constructions, which carry no orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planar {
    pub crossings: Vec<[ArcId; 4]>,
    /// Arc ids of crossing-free circles.
    pub free: Vec<ArcId>,
    /// All arc ids, sorted.
    arcs: Vec<ArcId>,
    /// `slot_arc[k][p]` is the dense index of the arc in slot `p` of crossing `k`.
    slot_arc: Vec<[u32; 4]>,
    /// Both ends of every arc (dense index); meaningless for free circles.
    ends: Vec<[Slot; 2]>,
}

impl Planar {
    pub fn new(crossings: Vec<[ArcId; 4]>, free: Vec<ArcId>) -> Result<Self> {
        let mut count: HashMap<ArcId, Vec<Slot>> = HashMap::new();
        for (k, c) in crossings.iter().enumerate() {
            for (p, &a) in c.iter().enumerate() {
                if a == 0 {
                    return Err(Error::Diagram(format!("crossing {k}: arc ids must be positive")));
                }
                count.entry(a).or_default().push(Slot::new(k, p as u8));
            }
        }
        for (a, occ) in &count {
            if occ.len() != 2 {
                return Err(Error::Diagram(format!("arc {a} is used {} times, expected 2", occ.len())));
            }
        }
        let mut seen = BTreeSet::new();
        for &f in &free {
            if f == 0 {
                return Err(Error::Diagram("arc ids must be positive".into()));
            }
            if count.contains_key(&f) || !seen.insert(f) {
                return Err(Error::Diagram(format!("free circle arc {f} is used elsewhere")));
            }
        }
        let mut arcs: Vec<ArcId> = count.keys().copied().chain(free.iter().copied()).collect();
        arcs.sort_unstable();
        let index = |a: ArcId| arcs.binary_search(&a).unwrap() as u32;
        let slot_arc = crossings.iter().map(|c| [index(c[0]), index(c[1]), index(c[2]), index(c[3])]).collect();
        let dummy = [Slot::new(0, 0); 2];
        let ends = arcs
            .iter()
            .map(|a| match count.get(a) {
                Some(occ) => [occ[0], occ[1]],
                None => dummy,
            })
            .collect();
        Ok(Planar { crossings, free, arcs, slot_arc, ends })
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_index(&self, a: ArcId) -> Option<usize> {
        self.arcs.binary_search(&a).ok()
    }

    pub fn arc_id(&self, idx: usize) -> ArcId {
        self.arcs[idx]
    }

    pub fn slot_arc(&self, k: usize, p: usize) -> usize {
        self.slot_arc[k][p] as usize
    }

    pub fn is_free(&self, a: ArcId) -> bool {
        self.free.contains(&a)
    }

    /// Both ends of a (non-free) arc.
    pub fn ends(&self, a: ArcId) -> Option<[Slot; 2]> {
        let i = self.arc_index(a)?;
        (!self.is_free(a)).then(|| self.ends[i])
    }

    /// The other end of the arc sitting at `s`.
    pub fn other_end(&self, s: Slot) -> Slot {
        let a = self.slot_arc(s.crossing as usize, s.pos as usize);
        let [e0, e1] = self.ends[a];
        if e0 == s {
            e1
        } else {
            e0
        }
    }

    pub fn max_arc(&self) -> ArcId {
        self.arcs.last().copied().unwrap_or(0)
    }

    /// Number of connected pieces of the underlying 4-valent graph, counting
    /// each free circle separately.
    pub fn graph_components(&self) -> usize {
        let n = self.crossings.len();
        let mut uf: Vec<usize> = (0..n).collect();
        fn root(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if self.free.contains(a) {
                continue;
            }
            let [e0, e1] = self.ends[i];
            let (r0, r1) = (root(&mut uf, e0.crossing as usize), root(&mut uf, e1.crossing as usize));
            uf[r0] = r1;
        }
        let roots: BTreeSet<usize> = (0..n).map(|x| root(&mut uf, x)).collect();
        roots.len() + self.free.len()
    }
}

/// An oriented link diagram.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    planar: Planar,
    /// Per dense arc index: the slot where the arc ends (it enters that crossing).
    head: Vec<Slot>,
    components: Vec<Vec<ArcId>>,
    component_of: Vec<u32>,
    n_plus: usize,
    n_minus: usize,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.planar.free == other.planar.free
    }
}

/// How to orient components that have no orientation hint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Fallback {
    /// Follow increasing arc numbers from the smallest arc.
    Numbering,
    Fail,
}

impl LinkDiagram {
    /// Orients a diagram given as counterclockwise slot lists whose under-strand
    /// occupies positions 0 and 2 (either end first). `heads` names, for some
    /// arcs, the slot the arc runs into. Each crossing is rotated so slot 0 is
    /// the incoming under-strand and the sign is computed.
    pub(crate) fn orient(
        raw: Vec<[ArcId; 4]>,
        free: Vec<ArcId>,
        heads: &HashMap<ArcId, Slot>,
        fallback: Fallback,
    ) -> Result<Self> {
        let planar = Planar::new(raw.clone(), free)?;
        let n_arcs = planar.n_arcs();
        let mut head: Vec<Option<Slot>> = vec![None; n_arcs];
        let mut component_of = vec![u32::MAX; n_arcs];
        let mut components: Vec<Vec<ArcId>> = Vec::new();

        for start in 0..n_arcs {
            if component_of[start] != u32::MAX {
                continue;
            }
            let start_id = planar.arc_id(start);
            let cid = components.len() as u32;
            if planar.is_free(start_id) {
                component_of[start] = cid;
                components.push(vec![start_id]);
                continue;
            }
            // walk with a tentative direction: enter the start arc's second end
            let mut walk: Vec<(usize, Slot)> = Vec::new();
            let mut a = start;
            let mut enter = planar.ends[start][1];
            loop {
                walk.push((a, enter));
                component_of[a] = cid;
                let exit = Slot { crossing: enter.crossing, pos: enter.pos ^ 2 };
                a = planar.slot_arc(exit.crossing as usize, exit.pos as usize);
                let [e0, e1] = planar.ends[a];
                enter = if e0 == exit { e1 } else { e0 };
                if a == start && enter == walk[0].1 {
                    break;
                }
            }
            // decide the direction from hints
            let mut dir: Option<bool> = None;
            for &(ai, h) in &walk {
                if let Some(hint) = heads.get(&planar.arc_id(ai)) {
                    let fwd = *hint == h;
                    let [e0, e1] = planar.ends[ai];
                    let tail = if e0 == h { e1 } else { e0 };
                    if !fwd && *hint != tail {
                        return Err(Error::Orientation(format!(
                            "arc {} has no end at crossing {} slot {}",
                            planar.arc_id(ai),
                            hint.crossing,
                            hint.pos
                        )));
                    }
                    if let Some(d) = dir {
                        if d != fwd {
                            return Err(Error::Orientation(format!(
                                "component through arc {} is traversed both ways",
                                start_id
                            )));
                        }
                    }
                    dir = Some(fwd);
                }
            }
            let fwd = match (dir, fallback) {
                (Some(d), _) => d,
                (None, Fallback::Numbering) => {
                    let ids: Vec<ArcId> = walk.iter().map(|(ai, _)| planar.arc_id(*ai)).collect();
                    let m = ids.iter().enumerate().min_by_key(|(_, v)| **v).unwrap().0;
                    let len = ids.len();
                    let next = ids[(m + 1) % len];
                    let prev = ids[(m + len - 1) % len];
                    !(prev == ids[m] + 1 && next != ids[m] + 1)
                }
                (None, Fallback::Fail) => {
                    return Err(Error::Orientation(format!("no orientation known for the component of arc {start_id}")))
                }
            };
            let mut order: Vec<ArcId> = Vec::with_capacity(walk.len());
            for &(ai, h) in &walk {
                let [e0, e1] = planar.ends[ai];
                let hd = if fwd { h } else if e0 == h { e1 } else { e0 };
                head[ai] = Some(hd);
                order.push(planar.arc_id(ai));
            }
            if !fwd {
                order.reverse();
            }
            let m = order.iter().enumerate().min_by_key(|(_, v)| **v).unwrap().0;
            order.rotate_left(m);
            components.push(order);
        }

        let mut crossings = Vec::with_capacity(raw.len());
        let (mut n_plus, mut n_minus) = (0, 0);
        for (k, c) in raw.iter().enumerate() {
            let a0 = planar.slot_arc(k, 0);
            let rot = if head[a0] == Some(Slot::new(k, 0)) { 0 } else { 2 };
            let slots = [c[rot], c[(rot + 1) % 4], c[(rot + 2) % 4], c[(rot + 3) % 4]];
            let d_arc = planar.slot_arc(k, (rot + 3) % 4);
            let sign = if head[d_arc] == Some(Slot::new(k, ((rot + 3) % 4) as u8)) { 1 } else { -1 };
            if sign > 0 {
                n_plus += 1;
            } else {
                n_minus += 1;
            }
            crossings.push(Crossing { slots, sign });
        }
        // re-index with the rotated slot lists
        let final_raw: Vec<[ArcId; 4]> = crossings.iter().map(|c| c.slots).collect();
        let planar = Planar::new(final_raw, planar.free.clone())?;
        let mut head_final = vec![Slot::new(0, 0); n_arcs];
        for (k, c) in crossings.iter().enumerate() {
            // slot 0 is entered by its arc, slot 2 is left; over-strand by sign
            head_final[planar.slot_arc(k, 0)] = Slot::new(k, 0);
            let p_in = if c.sign > 0 { 3 } else { 1 };
            head_final[planar.slot_arc(k, p_in)] = Slot::new(k, p_in as u8);
        }
        let mut comps = components;
        comps.sort_by_key(|c| c[0]);
        let mut component_of = vec![0u32; n_arcs];
        for (ci, comp) in comps.iter().enumerate() {
            for a in comp {
                component_of[planar.arc_index(*a).unwrap()] = ci as u32;
            }
        }
        Ok(LinkDiagram { crossings, planar, head: head_final, components: comps, component_of, n_plus, n_minus })
    }

    /// Builds a diagram whose crossings already start at the incoming
    /// under-strand, orienting over-only components from the given signs.
    pub fn from_crossings(crossings: &[Crossing], free: Vec<ArcId>) -> Result<Self> {
        let mut heads = HashMap::new();
        for (k, c) in crossings.iter().enumerate() {
            heads.insert(c.slots[0], Slot::new(k, 0));
        }
        let mut over_hints = HashMap::new();
        for (k, c) in crossings.iter().enumerate() {
            let p = if c.sign > 0 { 3 } else { 1 };
            over_hints.insert(c.slots[p], Slot::new(k, p as u8));
        }
        for (a, s) in over_hints {
            heads.entry(a).or_insert(s);
        }
        let raw = crossings.iter().map(|c| c.slots).collect();
        let d = Self::orient(raw, free, &heads, Fallback::Numbering)?;
        for (k, (c, e)) in d.crossings.iter().zip(crossings).enumerate() {
            if c != e {
                return Err(Error::Orientation(format!("crossing {k} is inconsistent with its sign")));
            }
        }
        Ok(d)
    }

    /// The mirror image: every crossing changes sign.
    pub fn mirror(&self) -> Result<Self> {
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.slots;
                let slots = if c.sign > 0 { [d, a, b, cc] } else { [b, cc, d, a] };
                Crossing { slots, sign: -c.sign }
            })
            .collect();
        Self::from_crossings(&crossings, self.planar.free.clone())
    }

    /// The 0-crossing unlink with `k` components.
    pub fn unlink(k: usize) -> Self {
        Self::orient(Vec::new(), (1..=k as u32).collect(), &HashMap::new(), Fallback::Fail).unwrap()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn planar(&self) -> &Planar {
        &self.planar
    }

    pub fn arcs(&self) -> &[ArcId] {
        self.planar.arcs()
    }

    pub fn free_circles(&self) -> &[ArcId] {
        &self.planar.free
    }

    pub fn components(&self) -> &[Vec<ArcId>] {
        &self.components
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, a: ArcId) -> Option<usize> {
        self.planar.arc_index(a).map(|i| self.component_of[i] as usize)
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn has_arc(&self, a: ArcId) -> bool {
        self.planar.arc_index(a).is_some()
    }

    /// The slot this arc runs into. `None` for free circles.
    pub fn head(&self, a: ArcId) -> Option<Slot> {
        let i = self.planar.arc_index(a)?;
        (!self.planar.is_free(a)).then(|| self.head[i])
    }

    /// The slot this arc leaves from. `None` for free circles.
    pub fn tail(&self, a: ArcId) -> Option<Slot> {
        let h = self.head(a)?;
        Some(self.planar.other_end(h))
    }

    /// Arc orientation hints for every non-free arc, as used by [`Self::orient`].
    pub(crate) fn head_map(&self) -> HashMap<ArcId, Slot> {
        self.arcs()
            .iter()
            .filter_map(|&a| self.head(a).map(|h| (a, h)))
            .collect()
    }

    /// True if no crossing involves this component together with another one.
    pub fn is_split_component(&self, comp: usize) -> bool {
        self.crossings.iter().all(|c| {
            let mine: Vec<bool> = c.slots.iter().map(|&a| self.component_of(a) == Some(comp)).collect();
            mine.iter().all(|&m| m) || mine.iter().all(|&m| !m)
        })
    }

    /// Euler-characteristic test: a connected plane 4-valent graph with `n`
    /// vertices has `n + 2` faces, and each further connected piece adds two.
    pub fn is_planar(&self) -> bool {
        let n = self.n_crossings();
        if n == 0 {
            return true;
        }
        let pieces = self.planar.graph_components() - self.planar.free.len();
        self.faces().len() == n + 2 * pieces
    }

    pub fn faces(&self) -> Vec<Face> {
        faces::faces(&self.planar)
    }

    /// PD code in the `[[a,b,c,d],...]` form.
    pub fn pd_code(&self) -> Vec<[ArcId; 4]> {
        self.crossings.iter().map(|c| c.slots).collect()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.crossings.iter().map(|c| c.sign).collect()
    }

    pub fn spec(&self) -> PdSpec {
        PdSpec {
            pd: self.pd_code(),
            signs: Some(self.signs()),
            free_circles: Some(self.free_circles().len()),
            free_arcs: Some(self.free_circles().to_vec()),
        }
    }

    /// Resolves the diagram at `alpha` ('0'/'1' per crossing).
    pub fn resolve(&self, alpha: &str) -> Result<Resolution> {
        let n = self.n_crossings();
        if alpha.chars().count() != n {
            return Err(Error::AlphaLength { expected: n, got: alpha.chars().count() });
        }
        let mut bits = 0u64;
        for (i, ch) in alpha.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse { pos: i, msg: format!("expected 0 or 1, found {ch:?}") }),
            }
        }
        Ok(Resolution::new(&self.planar, bits))
    }

    /// The crossing-local isomorphism test used for cabling checks: same
    /// crossing list and signs up to a bijective renaming of arcs.
    pub fn isomorphic_in_order(&self, other: &LinkDiagram) -> bool {
        if self.n_crossings() != other.n_crossings()
            || self.free_circles().len() != other.free_circles().len()
        {
            return false;
        }
        let mut fwd: HashMap<ArcId, ArcId> = HashMap::new();
        let mut bwd: HashMap<ArcId, ArcId> = HashMap::new();
        for (c, d) in self.crossings.iter().zip(&other.crossings) {
            if c.sign != d.sign {
                return false;
            }
            for (a, b) in c.slots.iter().zip(&d.slots) {
                if *fwd.entry(*a).or_insert(*b) != *b || *bwd.entry(*b).or_insert(*a) != *a {
                    return false;
                }
            }
        }
        true
    }
}

impl LinkDiagram {
    /// Relations of the coloring group: per crossing `e_b - e_d` (the two
    /// halves of the over-arc) and `2 e_b - e_a - e_c`. Columns follow `arcs()`.
    pub fn coloring_matrix(&self) -> IntMatrix {
        let p = &self.planar;
        let mut rows = Vec::new();
        for k in 0..self.n_crossings() {
            let [a, b, c, d] = [0, 1, 2, 3].map(|i| p.slot_arc(k, i) as u32);
            rows.push(vec![(b, Int::ONE), (d, Int::from(-1))]);
            rows.push(vec![(b, Int::from(2)), (a, Int::from(-1)), (c, Int::from(-1))]);
        }
        IntMatrix::from_rows(p.n_arcs(), rows)
    }

    /// Knot determinant, the order of the torsion of the coloring group.
    /// Zero when that group has more than one free summand.
    pub fn determinant(&self) -> Int {
        let m = self.coloring_matrix();
        let divs = elementary_divisors(&m);
        if divs.len() + 1 < m.cols() {
            return Int::ZERO;
        }
        divs.iter().fold(Int::ONE, |acc, d| acc * d)
    }
}
