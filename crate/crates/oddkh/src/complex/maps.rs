use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{solve_sparse, Int, IntMatrix};

/// A degree-0 map of complexes, stored as one block per homological degree.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Arc<ChainComplex>,
    pub target: Arc<ChainComplex>,
    blocks: BTreeMap<i32, IntMatrix>,
}

fn same(a: &Arc<ChainComplex>, b: &Arc<ChainComplex>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl ChainMap {
    pub fn new(source: Arc<ChainComplex>, target: Arc<ChainComplex>, blocks: BTreeMap<i32, IntMatrix>) -> Result<Self> {
        for (&h, m) in &blocks {
            if m.rows() != target.rank(h) || m.cols() != source.rank(h) {
                return Err(Error::Dimension(format!(
                    "block at h = {h} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(h),
                    source.rank(h)
                )));
            }
        }
        let blocks = blocks.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(ChainMap { source, target, blocks })
    }

    /// Assembles a map from `(h, row, col, value)` entries.
    pub fn from_entries<I>(source: Arc<ChainComplex>, target: Arc<ChainComplex>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, usize, usize, Int)>,
    {
        let mut per: BTreeMap<i32, Vec<(usize, usize, Int)>> = BTreeMap::new();
        for (h, r, c, v) in entries {
            if r >= target.rank(h) || c >= source.rank(h) {
                return Err(Error::Dimension(format!("entry ({r}, {c}) out of range at h = {h}")));
            }
            per.entry(h).or_default().push((r, c, v));
        }
        let blocks = per
            .into_iter()
            .map(|(h, t)| (h, IntMatrix::from_triplets(target.rank(h), source.rank(h), t)))
            .collect();
        Self::new(source, target, blocks)
    }

    /// Places per-vertex blocks `target_vertex x source_vertex` of two cube complexes.
    pub fn from_vertex_blocks<I>(source: Arc<ChainComplex>, target: Arc<ChainComplex>, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64, IntMatrix)>,
    {
        let sl = source.layout().ok_or_else(|| Error::Dimension("source is not a cube complex".into()))?.n_minus as i32;
        let tl = target.layout().ok_or_else(|| Error::Dimension("target is not a cube complex".into()))?.n_minus as i32;
        let mut entries = Vec::new();
        for (sv, tv, m) in blocks {
            let h = sv.count_ones() as i32 - sl;
            if tv.count_ones() as i32 - tl != h {
                return Err(Error::Dimension(format!("vertex block changes homological degree at h = {h}")));
            }
            let (r0, c0) = (target.vertex_offset(tv), source.vertex_offset(sv));
            for (r, c, v) in m.iter() {
                entries.push((h, r0 + r, c0 + c, v.clone()));
            }
        }
        Self::from_entries(source, target, entries)
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Self {
        ChainMap { source, target, blocks: BTreeMap::new() }
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let blocks = c.degrees().map(|h| (h, IntMatrix::identity(c.rank(h)))).collect();
        ChainMap { source: c.clone(), target: c, blocks }
    }

    /// The map `(-1)^{eta(v)}` on each vertex summand; realizes a change of
    /// sign assignment when `d(eta)` is the difference of the two assignments.
    pub fn vertex_signs(source: Arc<ChainComplex>, target: Arc<ChainComplex>, eta: &[bool]) -> Result<Self> {
        let mut entries = Vec::new();
        for h in source.degrees() {
            let g = source.group(h).unwrap();
            for (i, l) in g.labels.iter().enumerate() {
                let (th, j) = target.position(l.vertex, l.monomial);
                debug_assert_eq!(th, h);
                entries.push((h, j, i, if eta[l.vertex as usize] { Int::NEG_ONE } else { Int::ONE }));
            }
        }
        Self::from_entries(source, target, entries)
    }

    /// The block at degree `h` (zero if absent).
    pub fn block(&self, h: i32) -> IntMatrix {
        self.blocks.get(&h).cloned().unwrap_or_else(|| IntMatrix::zero(self.target.rank(h), self.source.rank(h)))
    }

    pub fn blocks(&self) -> &BTreeMap<i32, IntMatrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    fn degrees(&self) -> BTreeSet<i32> {
        self.source.degrees().chain(self.target.degrees()).collect()
    }

    /// `d' f = f d` in every degree.
    pub fn is_chain_map(&self) -> bool {
        self.degrees().into_iter().all(|h| {
            let lhs = self.target.d(h).mul(&self.block(h));
            let rhs = self.block(h + 1).mul(&self.source.d(h));
            lhs == rhs
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        if !same(&self.target, &next.source) {
            return Err(Error::Dimension("composed maps do not share a complex".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .filter_map(|(h, m)| next.blocks.get(h).map(|n| (*h, n.mul(m))))
            .collect();
        ChainMap::new(self.source.clone(), next.target.clone(), blocks)
    }

    fn combine(&self, a: &Int, other: &ChainMap, b: &Int) -> Result<ChainMap> {
        if !same(&self.source, &other.source) || !same(&self.target, &other.target) {
            return Err(Error::Dimension("maps have different source or target".into()));
        }
        let hs: BTreeSet<i32> = self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        let blocks = hs.into_iter().map(|h| (h, self.block(h).lin_comb(a, &other.block(h), b))).collect();
        ChainMap::new(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(&Int::ONE, other, &Int::ONE)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(&Int::ONE, other, &Int::NEG_ONE)
    }

    pub fn scale(&self, s: i64) -> ChainMap {
        let s = Int::from(s);
        let blocks = self.blocks.iter().map(|(h, m)| (*h, m.scale(&s))).filter(|(_, m)| !m.is_zero()).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(-1)
    }

    /// `Some(s)` when `self = s * other`.
    pub fn equal_up_to_sign(&self, other: &ChainMap) -> Option<i8> {
        if !same(&self.source, &other.source) || !same(&self.target, &other.target) {
            return None;
        }
        let hs: BTreeSet<i32> = self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        let mut sign: Option<i8> = None;
        for h in hs {
            let (a, b) = (self.block(h), other.block(h));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let s = a.equal_up_to_sign(&b)?;
            if sign.is_some_and(|t| t != s) {
                return None;
            }
            sign = Some(s);
        }
        Some(sign.unwrap_or(1))
    }

    /// The quantum degree shifts occurring in nonzero entries.
    pub fn q_shifts(&self) -> BTreeSet<i32> {
        let mut out = BTreeSet::new();
        for (&h, m) in &self.blocks {
            let (s, t) = (self.source.group(h).unwrap(), self.target.group(h).unwrap());
            for (r, c, _) in m.iter() {
                out.insert(t.q[r] - s.q[c]);
            }
        }
        out
    }

    /// Rescales so that the first nonzero entry (lowest degree, then row-major) is positive.
    pub fn normalized(&self) -> (ChainMap, i8) {
        let first = self.blocks.values().find_map(|m| m.first_nonzero().map(|(_, _, v)| v.clone()));
        match first {
            Some(v) if v < Int::ZERO => (self.neg(), -1),
            _ => (self.clone(), 1),
        }
    }

    /// The induced map on homology, one matrix per source bidegree with
    /// nonzero homology, in the generators of the two presentations.
    pub fn induced_map_on_homology(&self) -> Result<BTreeMap<(i32, i32), IntMatrix>> {
        if !self.is_chain_map() {
            return Err(Error::Invariant("induced map requested for a non-chain map".into()));
        }
        let shifts = self.q_shifts();
        if shifts.len() > 1 {
            return Err(Error::Dimension("map is not homogeneous in q".into()));
        }
        let t = shifts.into_iter().next().unwrap_or(0);
        let mut out = BTreeMap::new();
        for (h, q, _) in self.source.blocks() {
            let ps = self.source.presentation(h, q);
            if ps.n_generators() == 0 {
                continue;
            }
            let pt = self.target.presentation(h, q + t);
            let f = self.block(h);
            let mut trip = Vec::new();
            for (j, g) in ps.generators.iter().enumerate() {
                let mut full = vec![Int::ZERO; self.source.rank(h)];
                for (k, &i) in ps.indices.iter().enumerate() {
                    full[i] = g[k].clone();
                }
                let image = f.mul_vec(&full);
                let local: Vec<Int> = pt.indices.iter().map(|&i| image[i].clone()).collect();
                for (i, v) in pt.coordinates(&local).into_iter().enumerate() {
                    trip.push((i, j, v));
                }
            }
            out.insert((h, q), IntMatrix::from_triplets(pt.n_generators(), ps.n_generators(), trip));
        }
        Ok(out)
    }

    /// True when the map is zero on homology.
    pub fn induces_zero(&self) -> Result<bool> {
        Ok(self.induced_map_on_homology()?.values().all(|m| m.is_zero()))
    }

    /// An integral null-homotopy `H` with `self = d' H + H d`, if one exists.
    pub fn null_homotopy(&self) -> Option<BTreeMap<i32, IntMatrix>> {
        let shifts = self.q_shifts();
        if self.is_zero() {
            return Some(BTreeMap::new());
        }
        // group generators by the key each block is homogeneous in
        let t = if shifts.len() == 1 { shifts.into_iter().next() } else { None };
        let skey = |q: i32| t.map_or(0, |_| q);
        let tkey = |q: i32| t.map_or(0, |t| q - t);
        let mut keys: BTreeSet<i32> = BTreeSet::new();
        for h in self.source.degrees() {
            keys.extend(self.source.group(h).unwrap().q.iter().map(|&q| skey(q)));
        }
        let mut hmap: BTreeMap<i32, Vec<(usize, usize, Int)>> = BTreeMap::new();
        for key in keys {
            let sub = |c: &ChainComplex, h: i32, f: &dyn Fn(i32) -> i32| -> Vec<usize> {
                c.group(h).map(|g| (0..g.rank()).filter(|&i| f(g.q[i]) == key).collect()).unwrap_or_default()
            };
            let lo = self.source.h_min().min(self.target.h_min());
            let hi = self.source.h_end().max(self.target.h_end());
            let s_idx: HashMap<i32, Vec<usize>> = (lo - 1..=hi).map(|h| (h, sub(&self.source, h, &skey))).collect();
            let t_idx: HashMap<i32, Vec<usize>> = (lo - 1..=hi).map(|h| (h, sub(&self.target, h, &tkey))).collect();
            // unknowns: H_h is t_idx[h-1] x s_idx[h]
            let mut var_base: HashMap<i32, usize> = HashMap::new();
            let mut n_vars = 0;
            for h in lo..=hi {
                var_base.insert(h, n_vars);
                n_vars += t_idx[&(h - 1)].len() * s_idx[&h].len();
            }
            let var = |h: i32, a: usize, b: usize| var_base[&h] + a * s_idx[&h].len() + b;
            let mut rows: Vec<Vec<(u32, Int)>> = Vec::new();
            let mut rhs: Vec<Int> = Vec::new();
            for h in lo..hi {
                let (ti, si) = (&t_idx[&h], &s_idx[&h]);
                if ti.is_empty() || si.is_empty() {
                    continue;
                }
                let f = self.block(h).select(ti, si);
                // d'_{h-1} restricted: ti x t_idx[h-1]
                let dt = self.target.d(h - 1).select(ti, &t_idx[&(h - 1)]);
                // d_h restricted: s_idx[h+1] x si
                let ds = self.source.d(h).select(&s_idx[&(h + 1)], si);
                let dst = ds.transpose();
                let fm = f.to_map();
                for a in 0..ti.len() {
                    for b in 0..si.len() {
                        let mut row: Vec<(u32, Int)> = Vec::new();
                        for (c, v) in dt.row(a) {
                            row.push((var(h, c, b) as u32, v.clone()));
                        }
                        for (c, v) in dst.row(b) {
                            row.push((var(h + 1, a, c) as u32, v.clone()));
                        }
                        let want = fm.get(&(a, b)).cloned().unwrap_or(Int::ZERO);
                        if row.is_empty() {
                            if want != Int::ZERO {
                                return None;
                            }
                            continue;
                        }
                        row.sort_by_key(|e| e.0);
                        rows.push(row);
                        rhs.push(want);
                    }
                }
            }
            if rows.is_empty() {
                continue;
            }
            let a = IntMatrix::from_rows(n_vars, rows);
            let x = solve_sparse(&a, &rhs)?;
            for h in lo..=hi {
                let (ti, si) = (&t_idx[&(h - 1)], &s_idx[&h]);
                for (ai, &r) in ti.iter().enumerate() {
                    for (bi, &c) in si.iter().enumerate() {
                        let v = &x[var(h, ai, bi)];
                        if *v != Int::ZERO {
                            hmap.entry(h).or_default().push((r, c, v.clone()));
                        }
                    }
                }
            }
        }
        let h: BTreeMap<i32, IntMatrix> = hmap
            .into_iter()
            .map(|(h, t)| (h, IntMatrix::from_triplets(self.target.rank(h - 1), self.source.rank(h), t)))
            .collect();
        debug_assert!(Homotopy { sign: 1, h: h.clone() }.witnesses(self, &ChainMap::zero(self.source.clone(), self.target.clone())));
        Some(h)
    }
}

/// A witness for `f ≃ sign * g`: degree -1 maps with `f - sign*g = d'H + Hd`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub sign: i8,
    pub h: BTreeMap<i32, IntMatrix>,
}

impl Homotopy {
    fn at(&self, f: &ChainMap, h: i32) -> IntMatrix {
        self.h.get(&h).cloned().unwrap_or_else(|| IntMatrix::zero(f.target.rank(h - 1), f.source.rank(h)))
    }

    /// Exact check of the homotopy relation.
    pub fn witnesses(&self, f: &ChainMap, g: &ChainMap) -> bool {
        let Ok(diff) = (if self.sign > 0 { f.sub(g) } else { f.add(g) }) else { return false };
        let lo = f.source.h_min().min(f.target.h_min());
        let hi = f.source.h_end().max(f.target.h_end());
        (lo..hi).all(|h| {
            let dh = f.target.d(h - 1).mul(&self.at(f, h));
            let hd = self.at(f, h + 1).mul(&f.source.d(h));
            dh.add(&hd) == diff.block(h)
        })
    }
}

/// Decides `f ≃ ±g`, trying `+` first; the witness is verified before returning.
pub fn homotopic_up_to_sign(f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
    for sign in [1i8, -1] {
        let diff = if sign > 0 { f.sub(g)? } else { f.add(g)? };
        if let Some(h) = diff.null_homotopy() {
            let w = Homotopy { sign, h };
            if !w.witnesses(f, g) {
                return Err(Error::Invariant("homotopy witness failed verification".into()));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}
