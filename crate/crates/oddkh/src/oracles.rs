//! Independent cross-checks. Nothing here touches the cube, the TQFT or the
//! integer Smith form; each oracle traces resolutions and reduces matrices on
//! its own.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::complex::{BigradedHomology, ChainComplex, HomologyGroup};
use crate::error::{Error, Result};
use crate::linalg::to_i64;
use crate::linkdiag::{ArcId, LinkDiagram};

/// Integer Laurent polynomial in `q`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let e = self.terms.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i32, i64> {
        &self.terms
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (&e, &c) in &other.terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &other.terms {
                p.add_term(a + b, x * y);
            }
        }
        p
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::monomial(0, 1), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, c)| format!("{c}q^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Circles of the state `bits`, traced from the raw PD slots. Returns the
/// circle label of every arc and the number of circles.
fn trace_state(pd: &[[ArcId; 4]], free: usize, bits: u64) -> (HashMap<ArcId, usize>, usize) {
    let mut parent: HashMap<ArcId, ArcId> = HashMap::new();
    fn find(p: &mut HashMap<ArcId, ArcId>, x: ArcId) -> ArcId {
        let mut r = x;
        while let Some(&y) = p.get(&r) {
            if y == r {
                break;
            }
            r = y;
        }
        p.insert(x, r);
        r
    }
    for x in pd.iter().flatten() {
        parent.entry(*x).or_insert(*x);
    }
    for (k, x) in pd.iter().enumerate() {
        let joins = if bits >> k & 1 == 0 { [(x[0], x[1]), (x[2], x[3])] } else { [(x[0], x[3]), (x[1], x[2])] };
        for (a, b) in joins {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent.insert(ra.max(rb), ra.min(rb));
            }
        }
    }
    let mut arcs: Vec<ArcId> = parent.keys().copied().collect();
    arcs.sort_unstable();
    let mut label: HashMap<ArcId, usize> = HashMap::new();
    let mut of = HashMap::new();
    for a in arcs {
        let r = find(&mut parent, a);
        let n = label.len();
        let l = *label.entry(r).or_insert(n);
        of.insert(a, l);
    }
    let n = label.len() + free;
    (of, n)
}

/// Unnormalized Jones polynomial by the state sum, with the same grading
/// shifts as the odd complex.
pub fn kauffman_bracket(d: &LinkDiagram) -> LaurentPolynomial {
    let pd = d.pd_code();
    let free = d.free_circles().len();
    let n = pd.len();
    let (np, nm) = d.signs().iter().fold((0i32, 0i32), |(p, m), &s| if s > 0 { (p + 1, m) } else { (p, m + 1) });
    let circle = LaurentPolynomial::monomial(1, 1).add(&LaurentPolynomial::monomial(-1, 1));
    let mut total = LaurentPolynomial::zero();
    for bits in 0..1u64 << n {
        let (_, c) = trace_state(&pd, free, bits);
        let r = bits.count_ones() as i32;
        let sign = if r % 2 == 0 { 1 } else { -1 };
        total = total.add(&circle.pow(c).mul(&LaurentPolynomial::monomial(r, sign)));
    }
    let shift = LaurentPolynomial::monomial(np - 2 * nm, if nm % 2 == 0 { 1 } else { -1 });
    total.mul(&shift)
}

/// Row reduction over GF(2) on rows stored as `u64` words.
fn rank_bits(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, |r| r.len());
    for col in 0..words * 64 {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][w] >> b & 1 == 1 {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Even Khovanov homology with GF(2) coefficients: dimensions per `(h, q)`.
/// Generators label every circle `1` or `x` (bit set); merges multiply,
/// splits comultiply.
pub fn even_khovanov_mod2(d: &LinkDiagram) -> BTreeMap<(i32, i32), usize> {
    let pd = d.pd_code();
    let free = d.free_circles().len();
    let n = pd.len();
    let nm = d.signs().iter().filter(|&&s| s < 0).count() as i32;
    let np = n as i32 - nm;
    let states: Vec<(HashMap<ArcId, usize>, usize)> = (0..1u64 << n).map(|b| trace_state(&pd, free, b)).collect();
    // generator index per (state, labelling) inside each (h, q) block
    let qdeg = |s: u64, lab: u64| -> i32 {
        states[s as usize].1 as i32 - 2 * lab.count_ones() as i32 + s.count_ones() as i32 + np - 2 * nm
    };
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut sizes: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for s in 0..1u64 << n {
        let h = s.count_ones() as i32 - nm;
        for lab in 0..1u64 << states[s as usize].1 {
            let sz = sizes.entry((h, qdeg(s, lab))).or_default();
            index.insert((s, lab), *sz);
            *sz += 1;
        }
    }
    // differential rows (source generator -> image bitset) per block
    let mut dmat: BTreeMap<(i32, i32), Vec<Vec<u64>>> = BTreeMap::new();
    for s in 0..1u64 << n {
        let h = s.count_ones() as i32 - nm;
        let (src_of, cs) = &states[s as usize];
        for i in 0..n {
            if s >> i & 1 == 1 {
                continue;
            }
            let t = s | 1 << i;
            let (tgt_of, ct) = &states[t as usize];
            // circle correspondence through shared arcs
            let mut map_fwd: Vec<Vec<usize>> = vec![Vec::new(); *cs];
            for (a, &c) in src_of {
                let tc = tgt_of[a];
                if !map_fwd[c].contains(&tc) {
                    map_fwd[c].push(tc);
                }
            }
            // free circles carry no arcs and sit last in both states
            for k in 0..free {
                map_fwd[cs - free + k].push(ct - free + k);
            }
            let x = pd[i];
            let touched: Vec<usize> = {
                let mut v: Vec<usize> = x.iter().map(|a| src_of[a]).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            for lab in 0..1u64 << cs {
                let q = qdeg(s, lab);
                let mut images: Vec<u64> = Vec::new();
                let mut base = 0u64;
                for c in 0..*cs {
                    if touched.contains(&c) {
                        continue;
                    }
                    if lab >> c & 1 == 1 {
                        base |= 1 << map_fwd[c][0];
                    }
                }
                if *ct + 1 == *cs {
                    let (a, b) = (touched[0], touched[1]);
                    let tc = map_fwd[a][0];
                    match (lab >> a & 1, lab >> b & 1) {
                        (1, 1) => {}
                        (0, 0) => images.push(base),
                        _ => images.push(base | 1 << tc),
                    }
                } else {
                    let c = touched[0];
                    let (t1, t2) = (map_fwd[c][0], map_fwd[c][1]);
                    if lab >> c & 1 == 1 {
                        images.push(base | 1 << t1 | 1 << t2);
                    } else {
                        images.push(base | 1 << t1);
                        images.push(base | 1 << t2);
                    }
                }
                let rows = sizes.get(&(h + 1, q)).copied().unwrap_or(0);
                let block = dmat.entry((h, q)).or_insert_with(|| {
                    let cols = sizes[&(h, q)];
                    vec![vec![0u64; rows.div_ceil(64).max(1)]; cols]
                });
                let col = index[&(s, lab)];
                for img in images {
                    let r = index[&(t, img)];
                    block[col][r / 64] ^= 1 << (r % 64);
                }
            }
        }
    }
    let rank_of = |k: &(i32, i32)| dmat.get(k).map_or(0, |rows| rank_bits(rows.clone()));
    let mut out = BTreeMap::new();
    for (&(h, q), &m) in &sizes {
        let dim = m - rank_of(&(h, q)) - rank_of(&(h - 1, q));
        if dim > 0 {
            out.insert((h, q), dim);
        }
    }
    out
}

fn dense_block(c: &ChainComplex, h: i32, q: i32) -> (Vec<Vec<i128>>, usize, usize) {
    let src: Vec<usize> = c.group(h).map(|g| (0..g.rank()).filter(|&i| g.q[i] == q).collect()).unwrap_or_default();
    let tgt: Vec<usize> = c.group(h + 1).map(|g| (0..g.rank()).filter(|&i| g.q[i] == q).collect()).unwrap_or_default();
    let d = c.d(h);
    let mut m = vec![vec![0i128; src.len()]; tgt.len()];
    for (i, &r) in tgt.iter().enumerate() {
        for (j, &s) in src.iter().enumerate() {
            m[i][j] = to_i64(&d.get(r, s)) as i128;
        }
    }
    (m, tgt.len(), src.len())
}

/// Elementary divisors by repeated gcd elimination on a dense matrix.
fn divisors_i128(mut a: Vec<Vec<i128>>, rows: usize, cols: usize) -> Vec<i128> {
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let f = a[i][t] / p;
                if f != 0 {
                    for j in t..cols {
                        a[i][j] -= f * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let f = a[t][j] / p;
                if f != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= f * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // pivot must divide the rest; otherwise fold a row in
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                    }
                }
            }
            // move the smallest entry of row/column t onto the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Homology by dense elimination, for complexes of total rank at most 64.
pub fn brute_force_homology(c: &ChainComplex) -> Result<BigradedHomology> {
    if c.total_rank() > 64 {
        return Err(Error::TooLarge { n: c.total_rank(), limit: 64 });
    }
    let mut out = BigradedHomology::default();
    for h in c.degrees() {
        let mut qs: Vec<i32> = c.group(h).unwrap().q.clone();
        qs.sort_unstable();
        qs.dedup();
        for q in qs {
            let (a, r, s) = dense_block(c, h, q);
            let rank_out = divisors_i128(a, r, s).len();
            let (b, r2, s2) = dense_block(c, h - 1, q);
            let inc = divisors_i128(b, r2, s2);
            let g = HomologyGroup {
                rank: s - rank_out - inc.len(),
                torsion: inc.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect(),
            };
            if !g.is_zero() {
                out.groups.insert((h, q), g);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{odd_complex, ChainComplex};
    use crate::cube::Theory;
    use crate::linalg::int_matrix;
    use crate::linkdiag::parse_pd;

    fn circle() -> LaurentPolynomial {
        LaurentPolynomial::monomial(1, 1).add(&LaurentPolynomial::monomial(-1, 1))
    }

    #[test]
    fn brackets_of_unlinks() {
        assert_eq!(kauffman_bracket(&LinkDiagram::unlink(1)), circle());
        assert_eq!(kauffman_bracket(&LinkDiagram::unlink(2)), circle().pow(2));
    }

    #[test]
    fn trefoil_bracket() {
        let t = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        let j = kauffman_bracket(&t);
        assert_eq!(j.terms().len(), 4);
        // left-handed trefoil: -q^-9 + q^-5 + q^-3 + q^-1
        let want: BTreeMap<i32, i64> = [(-9, -1), (-5, 1), (-3, 1), (-1, 1)].into_iter().collect();
        assert_eq!(j.terms(), &want);
    }

    #[test]
    fn mod2_unknot_and_products() {
        let u = even_khovanov_mod2(&LinkDiagram::unlink(1));
        assert_eq!(u, [((0, -1), 1), ((0, 1), 1)].into_iter().collect());
        let u2: usize = even_khovanov_mod2(&LinkDiagram::unlink(2)).values().sum();
        assert_eq!(u2, 4);
    }

    #[test]
    fn brute_force_small() {
        assert!(brute_force_homology(&ChainComplex::zero()).unwrap().is_zero());
        let c = ChainComplex::from_matrices(0, vec![int_matrix(&[&[2]])]).unwrap();
        let h = brute_force_homology(&c).unwrap();
        assert_eq!(h.groups.len(), 1);
        assert_eq!(h.get(1, 0), HomologyGroup { rank: 0, torsion: vec![2] });
        let m = int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let c = ChainComplex::from_matrices(0, vec![m]).unwrap();
        assert_eq!(brute_force_homology(&c).unwrap().get(1, 0).torsion, vec![2, 6, 12]);
    }

    #[test]
    fn hopf_agrees() {
        let hopf = parse_pd("[[1,3,2,4],[3,1,4,2]]").unwrap();
        let c = odd_complex(&hopf, Theory::Y).unwrap();
        assert_eq!(brute_force_homology(&c).unwrap(), c.homology());
        assert_eq!(even_khovanov_mod2(&hopf), c.reduce_coefficients(2).unwrap());
    }
}
