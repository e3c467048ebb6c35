use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{elementary_divisors, is_prime, rank_mod_p, smith_normal_form, to_i64, Int, IntMatrix};

/// One bigraded group: free rank plus torsion coefficients `d1 | d2 | ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// A row of the JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub h: i32,
    pub q: i32,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

/// Nonzero groups only, keyed by `(h, q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedHomology {
    pub groups: BTreeMap<(i32, i32), HomologyGroup>,
}

impl BigradedHomology {
    pub fn get(&self, h: i32, q: i32) -> HomologyGroup {
        self.groups.get(&(h, q)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.rank).sum()
    }

    pub fn entries(&self) -> Vec<HomologyEntry> {
        self.groups
            .iter()
            .map(|(&(h, q), g)| HomologyEntry { h, q, rank: g.rank, torsion: g.torsion.clone() })
            .collect()
    }

    pub fn from_entries(entries: &[HomologyEntry]) -> Self {
        let mut out = BigradedHomology::default();
        for e in entries {
            let g = HomologyGroup { rank: e.rank, torsion: e.torsion.clone() };
            if !g.is_zero() {
                out.groups.insert((e.h, e.q), g);
            }
        }
        out
    }

    /// Dimensions over GF(p) by universal coefficients: free rank, plus one
    /// for each torsion coefficient divisible by p here and one degree up.
    pub fn mod_p_dims(&self, p: u64) -> BTreeMap<(i32, i32), usize> {
        let mut out: BTreeMap<(i32, i32), usize> = BTreeMap::new();
        for (&(h, q), g) in &self.groups {
            let t = g.torsion.iter().filter(|&&d| d % p == 0).count();
            *out.entry((h, q)).or_default() += g.rank + t;
            if t > 0 {
                *out.entry((h - 1, q)).or_default() += t;
            }
        }
        out.retain(|_, v| *v > 0);
        out
    }

    /// Aligned text table: one line per group.
    pub fn table(&self) -> String {
        let mut s = String::new();
        for (&(h, q), g) in &self.groups {
            let mut parts = Vec::new();
            if g.rank > 0 {
                parts.push(if g.rank == 1 { "Z".to_string() } else { format!("Z^{}", g.rank) });
            }
            for d in &g.torsion {
                parts.push(format!("Z/{d}"));
            }
            s.push_str(&format!("h={h:>3} q={q:>4}  {}\n", parts.join(" + ")));
        }
        s
    }
}

impl Serialize for BigradedHomology {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigradedHomology {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let e = Vec::<HomologyEntry>::deserialize(d)?;
        Ok(BigradedHomology::from_entries(&e))
    }
}

fn small(v: &Int) -> u64 {
    u64::try_from(to_i64(v)).expect("positive divisor")
}

impl ChainComplex {
    /// `(h, q, basis indices)` for every nonempty block.
    pub(crate) fn blocks(&self) -> Vec<(i32, i32, Vec<usize>)> {
        let mut out = Vec::new();
        for h in self.degrees() {
            for (q, idx) in self.group(h).unwrap().q_blocks() {
                out.push((h, q, idx));
            }
        }
        out
    }

    pub(crate) fn block_indices(&self, h: i32, q: i32) -> Vec<usize> {
        self.group(h)
            .map(|g| (0..g.rank()).filter(|&i| g.q[i] == q).collect())
            .unwrap_or_default()
    }

    /// The differential restricted to quantum degree `q`, out of degree `h`.
    pub(crate) fn d_block(&self, h: i32, q: i32, cols: &[usize]) -> IntMatrix {
        let rows = self.block_indices(h + 1, q);
        match self.d_ref(h) {
            Some(d) => d.select(&rows, cols),
            None => IntMatrix::zero(rows.len(), cols.len()),
        }
    }

    fn d_block_in(&self, h: i32, q: i32, rows: &[usize]) -> IntMatrix {
        let cols = self.block_indices(h - 1, q);
        match self.d_ref(h - 1) {
            Some(d) => d.select(rows, &cols),
            None => IntMatrix::zero(rows.len(), cols.len()),
        }
    }

    /// Bigraded integral homology.
    pub fn homology(&self) -> BigradedHomology {
        let groups: Vec<((i32, i32), HomologyGroup)> = self
            .blocks()
            .into_par_iter()
            .map(|(h, q, idx)| {
                let out = elementary_divisors(&self.d_block(h, q, &idx));
                let inc = elementary_divisors(&self.d_block_in(h, q, &idx));
                let rank = idx.len() - out.len() - inc.len();
                let torsion = inc.iter().filter(|d| **d != Int::ONE).map(small).collect();
                ((h, q), HomologyGroup { rank, torsion })
            })
            .filter(|(_, g)| !g.is_zero())
            .collect();
        BigradedHomology { groups: groups.into_iter().collect() }
    }

    /// Homology dimensions over GF(p), computed directly from ranks mod p.
    pub fn reduce_coefficients(&self, p: u64) -> Result<BTreeMap<(i32, i32), usize>> {
        if !is_prime(p) {
            return Err(Error::Dimension(format!("{p} is not prime")));
        }
        let dims: Vec<((i32, i32), usize)> = self
            .blocks()
            .into_par_iter()
            .map(|(h, q, idx)| {
                let out = rank_mod_p(&self.d_block(h, q, &idx), p);
                let inc = rank_mod_p(&self.d_block_in(h, q, &idx), p);
                ((h, q), idx.len() - out - inc)
            })
            .filter(|(_, d)| *d > 0)
            .collect();
        Ok(dims.into_iter().collect())
    }

    /// Rational Betti numbers.
    pub fn rational_homology(&self) -> BTreeMap<(i32, i32), usize> {
        self.homology().groups.into_iter().filter(|(_, g)| g.rank > 0).map(|(k, g)| (k, g.rank)).collect()
    }

    /// Explicit generators of the homology at `(h, q)` with a projection from
    /// cycles to coordinates.
    pub fn presentation(&self, h: i32, q: i32) -> HomologyPresentation {
        let idx = self.block_indices(h, q);
        let m = idx.len();
        let a = self.d_block(h, q, &idx);
        let s1 = smith_normal_form(&a);
        let r = s1.rank();
        // kernel basis: last m - r columns of V; coordinates via rows of V^{-1}
        let kernel_rows: Vec<usize> = (r..m).collect();
        let all: Vec<usize> = (0..m).collect();
        let p1 = s1.v_inv.select(&kernel_rows, &all);
        let k_basis = s1.v.select(&all, &kernel_rows);
        let b = self.d_block_in(h, q, &idx);
        let c = p1.mul(&b);
        let s2 = smith_normal_form(&c);
        let k = m - r;
        let mut orders = Vec::new();
        let mut keep = Vec::new();
        for i in 0..k {
            match s2.divisors.get(i) {
                Some(d) if *d == Int::ONE => {}
                Some(d) => {
                    orders.push(small(d));
                    keep.push(i);
                }
                None => {
                    orders.push(0);
                    keep.push(i);
                }
            }
        }
        let gens_m = k_basis.mul(&s2.u_inv.select(&(0..k).collect::<Vec<_>>(), &keep));
        let generators = (0..keep.len())
            .map(|j| {
                let mut v = vec![Int::ZERO; m];
                for (row, col, x) in gens_m.iter() {
                    if col == j {
                        v[row] = x.clone();
                    }
                }
                v
            })
            .collect();
        let proj = s2.u.select(&keep, &(0..k).collect::<Vec<_>>()).mul(&p1);
        HomologyPresentation { h, q, indices: idx, orders, generators, proj }
    }
}

/// Homology at one bidegree as `Z^a + sum Z/d`, with explicit cycles.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub h: i32,
    pub q: i32,
    /// Basis indices of the block inside `C_h`.
    pub indices: Vec<usize>,
    /// Order of each generator; 0 means infinite order.
    pub orders: Vec<u64>,
    /// Cycles in block coordinates.
    pub generators: Vec<Vec<Int>>,
    proj: IntMatrix,
}

impl HomologyPresentation {
    pub fn n_generators(&self) -> usize {
        self.orders.len()
    }

    /// Coordinates of the class of a cycle given in block coordinates, with
    /// torsion coordinates reduced into `[0, d)`.
    pub fn coordinates(&self, cycle: &[Int]) -> Vec<Int> {
        let mut y = self.proj.mul_vec(cycle);
        for (v, &d) in y.iter_mut().zip(&self.orders) {
            if d > 0 {
                let dd = Int::from(d);
                *v = ((&*v % &dd) + &dd) % &dd;
            }
        }
        y
    }
}
